#include "spliceca/clonal.hpp"

#include <algorithm>
#include <cmath>
#include <exception>
#include <mutex>
#include <numeric>
#include <stdexcept>
#include <thread>
#include <unordered_set>

namespace spliceca::clonal {

namespace {

// Stream purposes mixed into the per-member RNG seeds.
constexpr std::uint64_t kFreshStream = 0;
constexpr std::uint64_t kCloneStream = 1;

std::uint64_t stream_tag(int generation, std::uint64_t purpose) {
  return (static_cast<std::uint64_t>(generation) << 1) | purpose;
}

}  // namespace

int TrainerConfig::replacements() const {
  if (replacement_count) return *replacement_count;
  return static_cast<int>(std::lround(0.05 * population_size));
}

void TrainerConfig::validate() const {
  if (population_size < 1) throw std::invalid_argument("population_size must be >= 1");
  if (max_generations < 0) throw std::invalid_argument("max_generations must be >= 0");
  if (!(selection_fraction > 0.0 && selection_fraction <= 1.0)) {
    throw std::invalid_argument("selection_fraction must lie in (0,1]");
  }
  if (!(clone_factor > 0.0)) throw std::invalid_argument("clone_factor must be > 0");
  if (!(max_mutation_rate >= 0.0 && max_mutation_rate <= 1.0)) {
    throw std::invalid_argument("max_mutation_rate must lie in [0,1]");
  }
  if (!(mutation_decay >= 0.0)) throw std::invalid_argument("mutation_decay must be >= 0");
  const int d = replacements();
  if (d < 0 || d >= population_size) {
    throw std::invalid_argument("replacement_count must lie in [0, population_size)");
  }
  evolution.validate();
}

fca::CaRule random_rule(std::size_t length, Rng& rng) {
  std::vector<std::uint8_t> masks(length);
  std::vector<std::uint8_t> bits(length);
  std::uint8_t subsets[7];
  for (std::size_t i = 0; i < length; ++i) {
    const auto allowed = fca::DependencyMatrix::allowed_mask(i, length);
    int count = 0;
    for (std::uint8_t m = 1; m < 8; ++m) {
      if ((m & ~allowed) == 0) subsets[count++] = m;
    }
    masks[i] = subsets[uniform_below(rng, static_cast<std::uint64_t>(count))];
  }
  for (auto& b : bits) b = static_cast<std::uint8_t>(rng() >> 63);
  return {fca::DependencyMatrix(std::move(masks)), fca::ComplementVector(std::move(bits))};
}

fca::CaRule hypermutate(const fca::CaRule& rule, double rate, Rng& rng) {
  const std::size_t length = rule.length();
  std::vector<std::uint8_t> masks(rule.dependencies().masks().begin(), rule.dependencies().masks().end());
  std::vector<std::uint8_t> bits(rule.complement().bits().begin(), rule.complement().bits().end());
  for (std::size_t i = 0; i < length; ++i) {
    const auto allowed = fca::DependencyMatrix::allowed_mask(i, length);
    for (std::uint8_t b : {fca::kLeft, fca::kSelf, fca::kRight}) {
      if ((allowed & b) && bernoulli(rng, rate)) masks[i] ^= b;
    }
    if (masks[i] == 0) masks[i] = fca::kSelf;
  }
  for (auto& b : bits) {
    if (bernoulli(rng, rate)) b ^= 1;
  }
  return {fca::DependencyMatrix(std::move(masks)), fca::ComplementVector(std::move(bits))};
}

std::string rule_signature(const fca::CaRule& rule) {
  std::string sig;
  sig.reserve(rule.length());
  for (std::size_t i = 0; i < rule.length(); ++i) {
    sig.push_back(static_cast<char>(rule.dependencies().mask(i) | (rule.complement()[i] ? 8 : 0)));
  }
  return sig;
}

double mutation_rate(double fitness, const TrainerConfig& config) {
  return config.max_mutation_rate * std::exp(-config.mutation_decay * fitness);
}

int clone_count(int rank, int selected, double clone_factor) {
  return std::max(1, static_cast<int>(std::lround(clone_factor * selected / rank)));
}

Population init_population(std::size_t length, const TrainerConfig& config) {
  if (length == 0) throw std::invalid_argument("rule length must be >= 1");
  config.validate();
  Population pop;
  pop.reserve(static_cast<std::size_t>(config.population_size));
  for (int k = 0; k < config.population_size; ++k) {
    Rng rng(stream_seed(config.seed, stream_tag(0, kFreshStream), static_cast<std::uint64_t>(k)));
    pop.push_back({random_rule(length, rng), std::nullopt});
  }
  return pop;
}

void evaluate(Population& population, const classifier::TrainingSet& set,
              const TrainerConfig& config) {
  std::vector<std::size_t> todo;
  for (std::size_t i = 0; i < population.size(); ++i) {
    if (!population[i].fitness) todo.push_back(i);
  }
  if (todo.empty()) return;
  if (set.empty()) throw std::invalid_argument("training set is empty");

  auto work = [&](std::size_t begin, std::size_t stride) {
    for (std::size_t k = begin; k < todo.size(); k += stride) {
      auto& member = population[todo[k]];
      member.fitness = classifier::evaluate_fitness(member.rule, set, config.evolution,
                                                    config.fitness_mode);
    }
  };

  unsigned threads = config.threads ? config.threads : std::thread::hardware_concurrency();
  threads = std::max(1u, std::min<unsigned>(threads, static_cast<unsigned>(todo.size())));
  if (threads == 1) {
    work(0, 1);
    return;
  }
  std::exception_ptr failure;
  std::mutex failure_mutex;
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 0; w < threads; ++w) {
      pool.emplace_back([&, w] {
        try {
          work(w, threads);
        } catch (...) {
          std::lock_guard lock(failure_mutex);
          if (!failure) failure = std::current_exception();
        }
      });
    }
  }
  if (failure) std::rethrow_exception(failure);
}

void sort_by_fitness(Population& population) {
  std::stable_sort(population.begin(), population.end(), [](const ScoredRule& a, const ScoredRule& b) {
    return a.fitness.value_or(-1.0) > b.fitness.value_or(-1.0);
  });
}

Population evolve_generation(const Population& current, const classifier::TrainingSet& set,
                             const TrainerConfig& config, int generation) {
  config.validate();
  if (current.empty()) throw std::invalid_argument("population is empty");
  for (const auto& m : current) {
    if (!m.fitness) throw std::invalid_argument("population has unevaluated members");
  }
  const std::size_t length = current.front().rule.length();
  const int size = static_cast<int>(current.size());
  const int selected = std::min(size, static_cast<int>(std::ceil(config.selection_fraction * size)));

  std::unordered_set<std::string> seen;
  for (const auto& m : current) seen.insert(rule_signature(m.rule));

  Population clones;
  std::uint64_t clone_index = 0;
  for (int rank = 1; rank <= selected; ++rank) {
    const auto& parent = current[static_cast<std::size_t>(rank - 1)];
    const double rate = mutation_rate(*parent.fitness, config);
    const int count = clone_count(rank, selected, config.clone_factor);
    for (int j = 0; j < count; ++j) {
      Rng rng(stream_seed(config.seed, stream_tag(generation, kCloneStream), clone_index++));
      auto child = hypermutate(parent.rule, rate, rng);
      if (seen.insert(rule_signature(child)).second) clones.push_back({std::move(child), std::nullopt});
    }
  }
  evaluate(clones, set, config);

  Population merged = current;
  merged.insert(merged.end(), std::make_move_iterator(clones.begin()), std::make_move_iterator(clones.end()));
  sort_by_fitness(merged);

  const int keep = size - config.replacements();
  Population next(std::make_move_iterator(merged.begin()), std::make_move_iterator(merged.begin() + keep));
  Population fresh;
  for (int k = 0; k < config.replacements(); ++k) {
    Rng rng(stream_seed(config.seed, stream_tag(generation, kFreshStream), static_cast<std::uint64_t>(k)));
    fresh.push_back({random_rule(length, rng), std::nullopt});
  }
  evaluate(fresh, set, config);
  next.insert(next.end(), std::make_move_iterator(fresh.begin()), std::make_move_iterator(fresh.end()));
  sort_by_fitness(next);
  return next;
}

namespace {

GenerationStats summarize(const Population& pop, int generation) {
  GenerationStats s;
  s.generation = generation;
  s.best_fitness = *pop.front().fitness;
  double sum = 0.0;
  for (const auto& m : pop) sum += *m.fitness;
  s.mean_fitness = sum / static_cast<double>(pop.size());
  return s;
}

}  // namespace

TrainingResult train(const classifier::TrainingSet& set, const TrainerConfig& config,
                     const ProgressFn& progress) {
  config.validate();
  if (set.empty()) throw std::invalid_argument("training set is empty");

  TrainingState state;
  Population pop = init_population(set.length(), config);
  evaluate(pop, set, config);
  sort_by_fitness(pop);
  state.history.push_back(summarize(pop, 0));
  if (progress) progress(state.history.back());

  while (*pop.front().fitness < 1.0 && state.generations < config.max_generations) {
    ++state.generations;
    pop = evolve_generation(pop, set, config, state.generations);
    state.history.push_back(summarize(pop, state.generations));
    if (progress) progress(state.history.back());
  }
  state.perfect = *pop.front().fitness >= 1.0;

  classifier::FmacaChromosome best(pop.front().rule);
  best.fit(set, config.evolution, config.fitness_mode);
  return {std::move(best), std::move(state)};
}

std::uint64_t acceptor_seed(std::uint64_t seed) noexcept { return mix64(seed ^ 0xacce9702ULL); }

TreeTraining train_tree(std::span<const seqio::LabeledInstance> instances,
                        const seqio::FuzzyEncoder& encoder, const TrainerConfig& config,
                        const std::function<void(const char*, const GenerationStats&)>& progress) {
  std::vector<seqio::LabeledInstance> non_donor;
  for (const auto& inst : instances) {
    if (inst.label != ClassLabel::kDonor) non_donor.push_back(inst);
  }
  const auto donor_set = classifier::TrainingSet::from_instances(
      instances, encoder, [](ClassLabel l) { return l == ClassLabel::kDonor; });
  const auto acceptor_set = classifier::TrainingSet::from_instances(
      non_donor, encoder, [](ClassLabel l) { return l == ClassLabel::kAcceptor; });

  auto report = [&](const char* stage) -> ProgressFn {
    if (!progress) return {};
    return [&progress, stage](const GenerationStats& s) { progress(stage, s); };
  };

  TreeTraining out;
  out.donor_seed = config.seed;
  out.acceptor_seed = acceptor_seed(config.seed);

  auto donor = train(donor_set, config, report("donor"));
  TrainerConfig acceptor_config = config;
  acceptor_config.seed = out.acceptor_seed;
  auto acceptor = train(acceptor_set, acceptor_config, report("acceptor"));

  out.tree = {std::move(donor.best), std::move(acceptor.best), encoder, config.evolution};
  out.donor = std::move(donor.state);
  out.acceptor = std::move(acceptor.state);
  return out;
}

}  // namespace spliceca::clonal
