#pragma once

// Basin-labelled CA classifiers and the two-stage donor/acceptor tree.

#include <functional>
#include <map>
#include <optional>
#include <span>
#include <string>
#include <vector>

#include "spliceca/fca.hpp"
#include "spliceca/seqio.hpp"

namespace spliceca::classifier {

struct BasinVote {
  bool positive = false;
  /// Majority fraction of the training hits, >= 0.5.
  double confidence = 0.5;

  friend bool operator==(const BasinVote&, const BasinVote&) = default;
};

using BasinMap = std::map<std::string, BasinVote>;

/// How a rule's fitness is measured on its training set.
///
/// kResubstitution: fraction of instances whose basin vote (computed with
/// the instance included) matches its target.
///
/// kLeaveOneOut: the same vote with the instance itself removed from its
/// basin's tally, so a basin holding a single instance votes "unseen"
/// (negative). Rules that give every sequence a private basin score only
/// the negative rate instead of 1.
enum class FitnessMode { kResubstitution, kLeaveOneOut };

const char* to_string(FitnessMode mode) noexcept;
std::optional<FitnessMode> fitness_mode_from_string(std::string_view name) noexcept;

/// Encoded binary-labelled configurations of a common length, stored
/// row-major.
class TrainingSet {
 public:
  explicit TrainingSet(std::size_t length) : length_(length) {}

  static TrainingSet from_instances(std::span<const seqio::LabeledInstance> instances,
                                    const seqio::FuzzyEncoder& encoder,
                                    const std::function<bool(ClassLabel)>& dichotomy);

  void add(std::span<const double> cells, bool positive);
  void add(const fca::FuzzyConfiguration& config, bool positive) { add(config.cells(), positive); }

  std::size_t length() const noexcept { return length_; }
  std::size_t size() const noexcept { return targets_.size(); }
  bool empty() const noexcept { return targets_.empty(); }
  std::span<const double> cells(std::size_t i) const {
    return {cells_.data() + i * length_, length_};
  }
  bool target(std::size_t i) const { return targets_[i] != 0; }
  std::size_t positives() const noexcept;

 private:
  std::size_t length_;
  std::vector<double> cells_;
  std::vector<std::uint8_t> targets_;
};

struct BasinFit {
  BasinMap basins;
  /// Fitness under the requested mode.
  double fitness = 0.0;
  /// Resubstitution accuracy of `basins` on the training set.
  double training_accuracy = 0.0;
  std::size_t truncated = 0;
};

/// Evolves every training configuration, labels each reached basin by
/// majority vote (ties negative, confidence 0.5) and scores the rule.
/// Throws std::invalid_argument on an empty set and fca::DimensionError on a
/// length mismatch.
BasinFit fit_basins(const fca::CaRule& rule, const TrainingSet& set,
                    const fca::EvolutionParams& params = {},
                    FitnessMode mode = FitnessMode::kResubstitution);

/// Same fitness as fit_basins without materialising the basin map.
double evaluate_fitness(const fca::CaRule& rule, const TrainingSet& set,
                        const fca::EvolutionParams& params = {},
                        FitnessMode mode = FitnessMode::kResubstitution);

/// A rule together with its fitted basin labels.
class FmacaChromosome {
 public:
  FmacaChromosome() = default;
  explicit FmacaChromosome(fca::CaRule rule) : rule_(std::move(rule)) {}
  FmacaChromosome(fca::CaRule rule, BasinMap basins, double fitness, double training_accuracy = 0.0);

  const fca::CaRule& rule() const noexcept { return rule_; }
  bool fitted() const noexcept { return fitness_.has_value(); }
  /// Throws std::logic_error when unfitted.
  const BasinMap& basins() const;
  double fitness() const;
  double training_accuracy() const noexcept { return training_accuracy_; }

  void fit(const TrainingSet& set, const fca::EvolutionParams& params = {},
           FitnessMode mode = FitnessMode::kResubstitution);

 private:
  fca::CaRule rule_;
  BasinMap basins_;
  std::optional<double> fitness_;
  double training_accuracy_ = 0.0;
};

struct StageResult {
  bool positive = false;
  double confidence = 0.0;
  /// False when the attractor was never reached during fitting.
  bool seen = false;
  fca::AttractorKind kind = fca::AttractorKind::kFixedPoint;
};

StageResult classify_stage(const FmacaChromosome& chromosome, const fca::FuzzyConfiguration& config,
                           const fca::EvolutionParams& params = {});

struct Prediction {
  ClassLabel label = ClassLabel::kNeither;
  double score = 0.0;
};

/// Routing rule of the tree given both stage outcomes.
Prediction combine_stages(const StageResult& donor, const StageResult& acceptor);

/// Donor-vs-rest stage followed by acceptor-vs-neither.
struct MacaCcTree {
  FmacaChromosome donor_stage;
  FmacaChromosome acceptor_stage;
  seqio::FuzzyEncoder encoder;
  fca::EvolutionParams evolution;

  /// Throws std::invalid_argument unless both stages are fitted and of
  /// length kWindow.
  void validate() const;
};

/// Throws std::invalid_argument unless the sequence is kWindow bases long.
Prediction classify(const MacaCcTree& tree, std::span<const seqio::Nucleotide> sequence);

/// Reusable per-thread classifier holding evolution scratch space.
class TreeClassifier {
 public:
  explicit TreeClassifier(const MacaCcTree& tree);
  Prediction operator()(std::span<const seqio::Nucleotide> sequence);
  /// Stage outcomes of the last call.
  const StageResult& donor() const noexcept { return donor_; }
  const StageResult& acceptor() const noexcept { return acceptor_; }

 private:
  StageResult run_stage(fca::Evolver& evolver, const BasinMap& basins);

  const MacaCcTree& tree_;
  fca::Evolver donor_evolver_;
  fca::Evolver acceptor_evolver_;
  std::vector<double> cells_;
  std::vector<std::uint8_t> levels_;
  std::string key_;
  StageResult donor_;
  StageResult acceptor_;
};

}  // namespace spliceca::classifier
