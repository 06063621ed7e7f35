#include "cli.hpp"

#include <chrono>
#include <ctime>
#include <fstream>
#include <iomanip>
#include <sstream>
#include <stdexcept>

#include "CLI11.hpp"
#include "spliceca/classifier.hpp"
#include "spliceca/clonal.hpp"
#include "spliceca/latency.hpp"
#include "spliceca/metrics.hpp"
#include "spliceca/model_io.hpp"
#include "spliceca/scan.hpp"
#include "spliceca/seqio.hpp"

namespace spliceca::cli {

namespace {

struct SplitOptions {
  double test_fraction = 0.2;
  std::uint64_t split_seed = 42;
  std::string partition = "test";
};

std::ifstream open_input(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open '" + path + "' for reading");
  return in;
}

std::vector<seqio::LabeledInstance> read_dataset(const std::string& path) {
  auto in = open_input(path);
  return seqio::parse_splice_records(in);
}

model_io::Model read_model(const std::string& path, std::ostream& err) {
  auto in = open_input(path);
  std::vector<std::string> warnings;
  auto model = model_io::load_model(in, &warnings);
  for (const auto& w : warnings) err << "warning: " << path << ": " << w << "\n";
  return model;
}

std::vector<seqio::LabeledInstance> select_partition(std::vector<seqio::LabeledInstance> all,
                                                     const SplitOptions& opt) {
  if (opt.partition == "all") return all;
  auto split = seqio::stratified_split(all, opt.test_fraction, opt.split_seed);
  return opt.partition == "train" ? std::move(split.train) : std::move(split.test);
}

std::string utc_now() {
  const auto now = std::chrono::system_clock::to_time_t(std::chrono::system_clock::now());
  std::tm tm{};
  gmtime_r(&now, &tm);
  std::ostringstream s;
  s << std::put_time(&tm, "%Y-%m-%dT%H:%M:%SZ");
  return s.str();
}

void print_counts(std::ostream& out, const char* name, const metrics::ConfusionCounts& c) {
  out << name << "\tTP=" << c.tp << "\tFP=" << c.fp << "\tTN=" << c.tn << "\tFN=" << c.fn;
  try {
    const auto d = metrics::derive(c);
    out << "\tAP=" << d.actual_positives << "\tAN=" << d.actual_negatives
        << "\tPP=" << d.predicted_positives << "\tPN=" << d.predicted_negatives << std::fixed
        << std::setprecision(4) << "\tSN=" << d.sensitivity.value() << "\tSP=" << d.specificity.value();
    out.unsetf(std::ios::fixed);
  } catch (const metrics::UndefinedMetricError& e) {
    out << "\t" << e.what();
  }
  out << "\n";
}

void add_split_options(CLI::App* cmd, SplitOptions& opt, bool with_partition) {
  cmd->add_option("--test-fraction", opt.test_fraction, "Held-out fraction of each class")
      ->check(CLI::Range(0.0, 0.999999));
  cmd->add_option("--split-seed", opt.split_seed, "Seed of the stratified split");
  if (with_partition) {
    cmd->add_option("--partition", opt.partition, "Records to use: test, train or all")
        ->check(CLI::IsMember({"test", "train", "all"}));
  }
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Fuzzy multiple-attractor CA splice-site classifier", "spliceca"};
  app.require_subcommand(1);

  // train
  std::string data_path, model_path, out_path;
  clonal::TrainerConfig cfg;
  cfg.seed = 42;
  int levels = 4;
  int replacements = -1;
  std::string fitness = "leave-one-out";
  bool stamp = false;
  bool quiet = false;
  SplitOptions train_split;
  train_split.partition = "train";
  auto* train = app.add_subcommand("train", "Train a donor/acceptor tree");
  train->add_option("--data", data_path, "UCI splice-junction records")->required();
  train->add_option("--out", out_path, "Model file to write")->required();
  train->add_option("--seed", cfg.seed, "Trainer seed");
  train->add_option("--population", cfg.population_size, "Population size")->check(CLI::PositiveNumber);
  train->add_option("--gmax", cfg.max_generations, "Generation cap")->check(CLI::NonNegativeNumber);
  train->add_option("--beta", cfg.selection_fraction, "Fraction of the population cloned");
  train->add_option("--clone-factor", cfg.clone_factor, "Clone multiplier");
  train->add_option("--pmax", cfg.max_mutation_rate, "Mutation rate at fitness 0");
  train->add_option("--decay", cfg.mutation_decay, "Mutation decay with fitness");
  train->add_option("--replacements", replacements, "Fresh rules per generation (default 5%)");
  train->add_option("--fitness", fitness, "Fitness: leave-one-out or resubstitution")
      ->check(CLI::IsMember({"leave-one-out", "loo", "resubstitution", "resub"}));
  train->add_option("--levels", levels, "Fuzzy levels of the nucleotide encoding")->check(CLI::Range(4, 1 << 20));
  train->add_option("--quant-levels", cfg.evolution.quant_levels, "Attractor quantization levels");
  train->add_option("--max-steps", cfg.evolution.max_steps, "Evolution step cap");
  train->add_option("--epsilon", cfg.evolution.epsilon, "Convergence tolerance");
  train->add_option("--threads", cfg.threads, "Fitness worker threads (0 = all cores)");
  train->add_flag("--timestamp", stamp, "Record the creation time in the model");
  train->add_flag("-q,--quiet", quiet, "No per-generation progress");
  add_split_options(train, train_split, false);

  // eval
  SplitOptions eval_split;
  auto* eval = app.add_subcommand("eval", "Score a model on a dataset partition");
  eval->add_option("--model", model_path, "Model file")->required();
  eval->add_option("--data", data_path, "UCI splice-junction records")->required();
  add_split_options(eval, eval_split, true);

  // predict
  std::string seq_text, seq_file;
  auto* predict = app.add_subcommand("predict", "Classify 60-base sequences");
  predict->add_option("--model", model_path, "Model file")->required();
  auto* seq_opt = predict->add_option("--seq", seq_text, "One 60-base sequence");
  auto* file_opt = predict->add_option("--file", seq_file, "FASTA file of 60-base sequences");
  seq_opt->excludes(file_opt);
  file_opt->excludes(seq_opt);

  // scan
  std::string fasta_path, strand_name = "both";
  double threshold = 0.5;
  auto* scan_cmd = app.add_subcommand("scan", "Scan genomic sequences for splice sites");
  scan_cmd->add_option("--model", model_path, "Model file")->required();
  scan_cmd->add_option("--fasta", fasta_path, "FASTA input")->required();
  scan_cmd->add_option("--threshold", threshold, "Minimum score of a reported site")->check(CLI::Range(0.0, 1.0));
  scan_cmd->add_option("--strand", strand_name, "direct, reverse or both")
      ->check(CLI::IsMember({"direct", "reverse", "both"}));

  // bench
  int reps = 10;
  std::size_t limit = 0;
  SplitOptions bench_split;
  bench_split.partition = "all";
  auto* bench = app.add_subcommand("bench", "Per-prediction latency");
  bench->add_option("--model", model_path, "Model file")->required();
  bench->add_option("--data", data_path, "UCI splice-junction records")->required();
  bench->add_option("--reps", reps, "Repetitions over the instances");
  bench->add_option("--limit", limit, "Use only the first N records (0 = all)");

  std::vector<const char*> argv{"spliceca"};
  for (const auto& a : args) argv.push_back(a.c_str());
  try {
    app.parse(static_cast<int>(argv.size()), argv.data());
  } catch (const CLI::ParseError& e) {
    return app.exit(e, out, err);
  }

  try {
    if (*train) {
      cfg.fitness_mode = *classifier::fitness_mode_from_string(fitness);
      if (replacements >= 0) cfg.replacement_count = replacements;
      cfg.validate();
      auto records = select_partition(read_dataset(data_path), train_split);
      if (records.empty()) throw std::runtime_error("no training records");
      const seqio::FuzzyEncoder encoder(levels);
      auto progress = [&](const char* stage, const clonal::GenerationStats& s) {
        if (!quiet) {
          err << stage << " generation " << s.generation << " best " << s.best_fitness << " mean "
              << s.mean_fitness << "\n";
        }
      };
      auto trained = clonal::train_tree(records, encoder, cfg, progress);

      model_io::Model model;
      model.tree = std::move(trained.tree);
      model.metadata = {cfg.seed,
                        trained.donor_seed,
                        trained.acceptor_seed,
                        trained.donor.generations,
                        trained.acceptor.generations,
                        records.size(),
                        stamp ? std::optional<std::string>(utc_now()) : std::nullopt};
      model.donor_info.fitness_mode = model.acceptor_info.fitness_mode = classifier::to_string(cfg.fitness_mode);
      std::ofstream file(out_path, std::ios::binary);
      if (!file) throw std::runtime_error("cannot open '" + out_path + "' for writing");
      model_io::save_model(file, model);
      if (!file) throw std::runtime_error("failed writing '" + out_path + "'");
      out << "donor\tfitness=" << model.tree.donor_stage.fitness()
          << "\tgenerations=" << trained.donor.generations
          << "\tbasins=" << model.tree.donor_stage.basins().size() << "\n";
      out << "acceptor\tfitness=" << model.tree.acceptor_stage.fitness()
          << "\tgenerations=" << trained.acceptor.generations
          << "\tbasins=" << model.tree.acceptor_stage.basins().size() << "\n";
      return 0;
    }

    if (*eval) {
      const auto model = read_model(model_path, err);
      const auto records = select_partition(read_dataset(data_path), eval_split);
      if (records.empty()) throw std::runtime_error("partition '" + eval_split.partition + "' is empty");
      classifier::TreeClassifier classify(model.tree);
      std::vector<metrics::LabelPair> pairs;
      std::size_t correct = 0;
      for (const auto& r : records) {
        const auto p = classify(r.sequence);
        pairs.push_back({p.label, r.label});
        correct += p.label == r.label;
      }
      const auto counts = metrics::tally(pairs);
      out << "partition\t" << eval_split.partition << "\nrecords\t" << records.size() << "\n";
      print_counts(out, "donor", counts.donor);
      print_counts(out, "acceptor", counts.acceptor);
      out << "accuracy\t" << std::fixed << std::setprecision(4)
          << static_cast<double>(correct) / static_cast<double>(records.size()) << "\n\n";
      out.unsetf(std::ios::fixed);
      out << metrics::comparison_report(metrics::derive(counts.donor), metrics::derive(counts.acceptor));
      return 0;
    }

    if (*predict) {
      const auto model = read_model(model_path, err);
      classifier::TreeClassifier classify(model.tree);
      auto emit = [&](const seqio::Sequence& seq) {
        const auto p = classify(seq);
        out << to_string(p.label) << '\t' << std::fixed << std::setprecision(4) << p.score << "\n";
        out.unsetf(std::ios::fixed);
      };
      if (!seq_text.empty()) {
        emit(seqio::parse_sequence(seq_text));
      } else if (!seq_file.empty()) {
        auto in = open_input(seq_file);
        for (const auto& rec : seqio::parse_fasta(in)) {
          out << rec.name << '\t';
          emit(rec.bases);
        }
      } else {
        throw std::invalid_argument("predict needs --seq or --file");
      }
      return 0;
    }

    if (*scan_cmd) {
      const auto model = read_model(model_path, err);
      auto in = open_input(fasta_path);
      const auto strands = *scan::strand_selection_from_string(strand_name);
      for (const auto& genome : seqio::parse_fasta(in)) {
        scan::write_report(out, scan::scan(genome, model.tree, threshold, strands));
      }
      return 0;
    }

    if (*bench) {
      const auto model = read_model(model_path, err);
      auto records = read_dataset(data_path);
      if (limit > 0 && limit < records.size()) records.resize(limit);
      out << latency::format_report(latency::measure(model.tree, records, reps));
      return 0;
    }
  } catch (const std::exception& e) {
    err << "error: " << e.what() << "\n";
    return 1;
  }
  return 1;
}

}  // namespace spliceca::cli
