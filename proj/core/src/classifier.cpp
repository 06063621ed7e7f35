#include "spliceca/classifier.hpp"

#include <algorithm>
#include <stdexcept>
#include <string_view>
#include <unordered_map>

namespace spliceca::classifier {

const char* to_string(FitnessMode mode) noexcept {
  return mode == FitnessMode::kLeaveOneOut ? "leave-one-out" : "resubstitution";
}

std::optional<FitnessMode> fitness_mode_from_string(std::string_view name) noexcept {
  if (name == "leave-one-out" || name == "loo") return FitnessMode::kLeaveOneOut;
  if (name == "resubstitution" || name == "resub") return FitnessMode::kResubstitution;
  return std::nullopt;
}

TrainingSet TrainingSet::from_instances(std::span<const seqio::LabeledInstance> instances,
                                        const seqio::FuzzyEncoder& encoder,
                                        const std::function<bool(ClassLabel)>& dichotomy) {
  TrainingSet set(seqio::kWindow);
  std::vector<double> cells(seqio::kWindow);
  for (const auto& inst : instances) {
    encoder.encode_into(inst.sequence, cells);
    set.add(cells, dichotomy(inst.label));
  }
  return set;
}

void TrainingSet::add(std::span<const double> cells, bool positive) {
  if (cells.size() != length_) {
    throw fca::DimensionError("training configuration has length " + std::to_string(cells.size()) +
                              ", expected " + std::to_string(length_));
  }
  cells_.insert(cells_.end(), cells.begin(), cells.end());
  targets_.push_back(positive ? 1 : 0);
}

std::size_t TrainingSet::positives() const noexcept {
  return static_cast<std::size_t>(std::count(targets_.begin(), targets_.end(), 1));
}

namespace {

struct Tally {
  std::size_t positive = 0;
  std::size_t negative = 0;
};

struct Grouping {
  std::vector<std::uint8_t> levels;  // size() * length, row-major
  std::unordered_map<std::string_view, Tally> tallies;
  std::size_t truncated = 0;
};

Grouping group_by_basin(const fca::CaRule& rule, const TrainingSet& set,
                        const fca::EvolutionParams& params) {
  if (set.empty()) throw std::invalid_argument("training set is empty");
  if (rule.length() != set.length()) {
    throw fca::DimensionError("rule length " + std::to_string(rule.length()) +
                              " != training length " + std::to_string(set.length()));
  }
  const std::size_t n = set.size();
  const std::size_t len = set.length();
  Grouping g;
  g.levels.resize(n * len);
  g.tallies.reserve(n);
  fca::Evolver evolver(rule, params);
  for (std::size_t i = 0; i < n; ++i) {
    std::span<std::uint8_t> out(g.levels.data() + i * len, len);
    if (evolver.run(set.cells(i), out).kind == fca::AttractorKind::kTruncated) ++g.truncated;
  }
  for (std::size_t i = 0; i < n; ++i) {
    std::string_view key(reinterpret_cast<const char*>(g.levels.data() + i * len), len);
    auto& t = g.tallies[key];
    (set.target(i) ? t.positive : t.negative) += 1;
  }
  return g;
}

bool votes_positive(std::size_t positive, std::size_t negative) { return positive > negative; }

std::size_t resubstitution_hits(const Tally& t) {
  return votes_positive(t.positive, t.negative) ? t.positive : t.negative;
}

std::size_t leave_one_out_hits(const Tally& t) {
  std::size_t hits = 0;
  if (t.positive > 0 && votes_positive(t.positive - 1, t.negative)) hits += t.positive;
  if (t.negative > 0 && !votes_positive(t.positive, t.negative - 1)) hits += t.negative;
  return hits;
}

double score(const Grouping& g, std::size_t n, FitnessMode mode) {
  std::size_t hits = 0;
  for (const auto& [key, t] : g.tallies) {
    hits += mode == FitnessMode::kLeaveOneOut ? leave_one_out_hits(t) : resubstitution_hits(t);
  }
  return static_cast<double>(hits) / static_cast<double>(n);
}

}  // namespace

BasinFit fit_basins(const fca::CaRule& rule, const TrainingSet& set,
                    const fca::EvolutionParams& params, FitnessMode mode) {
  const auto g = group_by_basin(rule, set, params);
  BasinFit fit;
  for (const auto& [key, t] : g.tallies) {
    const bool positive = votes_positive(t.positive, t.negative);
    const double total = static_cast<double>(t.positive + t.negative);
    const double majority = static_cast<double>(positive ? t.positive : t.negative);
    std::span<const std::uint8_t> levels(reinterpret_cast<const std::uint8_t*>(key.data()), key.size());
    fit.basins.emplace(fca::format_key(levels), BasinVote{positive, majority / total});
  }
  fit.fitness = score(g, set.size(), mode);
  fit.training_accuracy = score(g, set.size(), FitnessMode::kResubstitution);
  fit.truncated = g.truncated;
  return fit;
}

double evaluate_fitness(const fca::CaRule& rule, const TrainingSet& set,
                        const fca::EvolutionParams& params, FitnessMode mode) {
  return score(group_by_basin(rule, set, params), set.size(), mode);
}

FmacaChromosome::FmacaChromosome(fca::CaRule rule, BasinMap basins, double fitness,
                                 double training_accuracy)
    : rule_(std::move(rule)), basins_(std::move(basins)), fitness_(fitness),
      training_accuracy_(training_accuracy) {
  if (!(fitness >= 0.0 && fitness <= 1.0)) throw std::invalid_argument("fitness outside [0,1]");
  for (const auto& [key, vote] : basins_) {
    if (!(vote.confidence >= 0.5 && vote.confidence <= 1.0)) {
      throw std::invalid_argument("basin '" + key + "' has confidence outside [0.5,1]");
    }
  }
}

const BasinMap& FmacaChromosome::basins() const {
  if (!fitted()) throw std::logic_error("chromosome is not fitted");
  return basins_;
}

double FmacaChromosome::fitness() const {
  if (!fitted()) throw std::logic_error("chromosome is not fitted");
  return *fitness_;
}

void FmacaChromosome::fit(const TrainingSet& set, const fca::EvolutionParams& params,
                          FitnessMode mode) {
  auto result = fit_basins(rule_, set, params, mode);
  basins_ = std::move(result.basins);
  fitness_ = result.fitness;
  training_accuracy_ = result.training_accuracy;
}

StageResult classify_stage(const FmacaChromosome& chromosome, const fca::FuzzyConfiguration& config,
                           const fca::EvolutionParams& params) {
  const auto& basins = chromosome.basins();
  const auto tr = fca::evolve(chromosome.rule(), config, params);
  StageResult r;
  r.kind = tr.status;
  if (auto it = basins.find(tr.id.key); it != basins.end()) {
    r.seen = true;
    r.positive = it->second.positive;
    r.confidence = it->second.confidence;
  }
  return r;
}

Prediction combine_stages(const StageResult& donor, const StageResult& acceptor) {
  if (donor.positive) return {ClassLabel::kDonor, donor.confidence};
  const double score = std::min(donor.confidence, acceptor.confidence);
  return {acceptor.positive ? ClassLabel::kAcceptor : ClassLabel::kNeither, score};
}

void MacaCcTree::validate() const {
  if (!donor_stage.fitted() || !acceptor_stage.fitted()) {
    throw std::invalid_argument("both tree stages must be fitted");
  }
  if (donor_stage.rule().length() != seqio::kWindow ||
      acceptor_stage.rule().length() != seqio::kWindow) {
    throw std::invalid_argument("tree stages must have length " + std::to_string(seqio::kWindow));
  }
  evolution.validate();
}

Prediction classify(const MacaCcTree& tree, std::span<const seqio::Nucleotide> sequence) {
  TreeClassifier classifier(tree);
  return classifier(sequence);
}

TreeClassifier::TreeClassifier(const MacaCcTree& tree)
    : tree_(tree),
      donor_evolver_((tree.validate(), tree.donor_stage.rule()), tree.evolution),
      acceptor_evolver_(tree.acceptor_stage.rule(), tree.evolution),
      cells_(seqio::kWindow),
      levels_(seqio::kWindow) {}

StageResult TreeClassifier::run_stage(fca::Evolver& evolver, const BasinMap& basins) {
  StageResult r;
  r.kind = evolver.run(cells_, levels_).kind;
  key_ = fca::format_key(levels_);
  if (auto it = basins.find(key_); it != basins.end()) {
    r.seen = true;
    r.positive = it->second.positive;
    r.confidence = it->second.confidence;
  }
  return r;
}

Prediction TreeClassifier::operator()(std::span<const seqio::Nucleotide> sequence) {
  if (sequence.size() != seqio::kWindow) {
    throw std::invalid_argument("sequence has " + std::to_string(sequence.size()) +
                                " bases, expected " + std::to_string(seqio::kWindow));
  }
  tree_.encoder.encode_into(sequence, cells_);
  donor_ = run_stage(donor_evolver_, tree_.donor_stage.basins());
  if (donor_.positive) {
    acceptor_ = {};
    return combine_stages(donor_, acceptor_);
  }
  acceptor_ = run_stage(acceptor_evolver_, tree_.acceptor_stage.basins());
  return combine_stages(donor_, acceptor_);
}

}  // namespace spliceca::classifier
