#pragma once

// Clonal-selection training of CA rules.
//
// Each generation the top ceil(beta * size) rules are cloned in numbers that
// fall off with rank, the clones are hypermutated at a rate that decays with
// parent fitness, and the next population is the best (size - d) of parents
// and clones plus d fresh random rules. The best member is never displaced.
// Training stops as soon as a rule classifies its training set perfectly or
// the generation cap is reached.

#include <cstdint>
#include <functional>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spliceca/classifier.hpp"
#include "spliceca/fca.hpp"
#include "spliceca/random.hpp"
#include "spliceca/seqio.hpp"

namespace spliceca::clonal {

struct TrainerConfig {
  int population_size = 500;
  /// Generation cap.
  int max_generations = 100;
  double selection_fraction = 0.2;
  double clone_factor = 1.0;
  double max_mutation_rate = 0.1;
  double mutation_decay = 5.0;
  /// Fresh random rules per generation; defaults to 5% of the population.
  std::optional<int> replacement_count;
  std::uint64_t seed = 0;
  classifier::FitnessMode fitness_mode = classifier::FitnessMode::kLeaveOneOut;
  fca::EvolutionParams evolution;
  /// Worker threads for fitness evaluation; 0 picks the hardware count.
  unsigned threads = 0;

  int replacements() const;
  /// Throws std::invalid_argument on out-of-range settings.
  void validate() const;
};

/// A population member; fitness is empty until evaluated.
struct ScoredRule {
  fca::CaRule rule;
  std::optional<double> fitness;
};

using Population = std::vector<ScoredRule>;

struct GenerationStats {
  int generation = 0;
  double best_fitness = 0.0;
  double mean_fitness = 0.0;
};

struct TrainingState {
  /// Generations run after the initial population (GC).
  int generations = 0;
  bool perfect = false;
  std::vector<GenerationStats> history;
};

struct TrainingResult {
  classifier::FmacaChromosome best;
  TrainingState state;
};

using ProgressFn = std::function<void(const GenerationStats&)>;

/// Uniform draw: each row from the non-empty subsets of its neighbourhood,
/// each complement bit a fair coin.
fca::CaRule random_rule(std::size_t length, Rng& rng);

/// Flips each neighbourhood bit and complement bit with probability `rate`;
/// a row left empty regains its self-dependency.
fca::CaRule hypermutate(const fca::CaRule& rule, double rate, Rng& rng);

/// Compact byte signature; equal signatures mean equal rules.
std::string rule_signature(const fca::CaRule& rule);

double mutation_rate(double fitness, const TrainerConfig& config = {});

/// Number of clones for the member at 1-based `rank` when `selected` members
/// are cloned.
int clone_count(int rank, int selected, double clone_factor);

Population init_population(std::size_t length, const TrainerConfig& config);

/// Scores every unevaluated member; deterministic regardless of thread count.
void evaluate(Population& population, const classifier::TrainingSet& set,
              const TrainerConfig& config);

/// Stable sort by descending fitness.
void sort_by_fitness(Population& population);

/// Forms the next population from an evaluated, sorted one. Throws
/// std::invalid_argument when a member is unevaluated.
Population evolve_generation(const Population& current, const classifier::TrainingSet& set,
                             const TrainerConfig& config, int generation);

/// Runs the full loop and refits the best rule's basins on `set`. Throws
/// std::invalid_argument on an empty set.
TrainingResult train(const classifier::TrainingSet& set, const TrainerConfig& config,
                     const ProgressFn& progress = {});

struct TreeTraining {
  classifier::MacaCcTree tree;
  TrainingState donor;
  TrainingState acceptor;
  std::uint64_t donor_seed = 0;
  std::uint64_t acceptor_seed = 0;
};

/// Seed of the acceptor stage's independent run.
std::uint64_t acceptor_seed(std::uint64_t seed) noexcept;

/// Trains the donor stage (donor vs rest, all data) and the acceptor stage
/// (acceptor vs neither, non-donor data) as two independent runs.
TreeTraining train_tree(std::span<const seqio::LabeledInstance> instances,
                        const seqio::FuzzyEncoder& encoder, const TrainerConfig& config,
                        const std::function<void(const char* stage, const GenerationStats&)>& progress = {});

}  // namespace spliceca::clonal
