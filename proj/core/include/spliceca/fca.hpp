#pragma once

// Fuzzy cellular automaton core: rule representation, synchronous evolution,
// attractor identification and exhaustive basin enumeration.
//
// A rule is a pair (T, F). T lists, for every cell, which of its neighbours
// {i-1, i, i+1} it reads (non-periodic boundary). F marks cells whose averaged
// value is complemented. One step computes
//
//   s'_i = mean{ s_j : j in dep(i) },  then s'_i <- 1 - s'_i if F_i = 1.

#include <cstdint>
#include <map>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

namespace spliceca::fca {

class DimensionError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

/// Cell values in [0,1], one per sequence position.
class FuzzyConfiguration {
 public:
  FuzzyConfiguration() = default;
  /// Throws std::invalid_argument if a cell lies outside [0,1] or is NaN.
  explicit FuzzyConfiguration(std::vector<double> cells);

  std::size_t size() const noexcept { return cells_.size(); }
  double operator[](std::size_t i) const { return cells_[i]; }
  std::span<const double> cells() const noexcept { return cells_; }

  friend bool operator==(const FuzzyConfiguration&, const FuzzyConfiguration&) = default;

 private:
  std::vector<double> cells_;
};

/// Bit layout of a dependency row.
enum NeighbourBit : std::uint8_t {
  kLeft = 1u << 0,
  kSelf = 1u << 1,
  kRight = 1u << 2,
};

/// Tridiagonal dependency structure T.
class DependencyMatrix {
 public:
  DependencyMatrix() = default;
  /// One mask per cell; throws std::invalid_argument for an empty row or a
  /// dependency that falls off the array.
  explicit DependencyMatrix(std::vector<std::uint8_t> masks);

  static DependencyMatrix identity(std::size_t length);
  /// Builds from explicit 0-based dependency index lists.
  static DependencyMatrix from_indices(const std::vector<std::vector<std::size_t>>& rows);

  std::size_t size() const noexcept { return masks_.size(); }
  std::uint8_t mask(std::size_t i) const { return masks_[i]; }
  std::span<const std::uint8_t> masks() const noexcept { return masks_; }
  /// Neighbour bits row i may legally use given the boundary.
  static std::uint8_t allowed_mask(std::size_t i, std::size_t length) noexcept;
  std::vector<std::size_t> dependencies(std::size_t i) const;

  friend bool operator==(const DependencyMatrix&, const DependencyMatrix&) = default;

 private:
  std::vector<std::uint8_t> masks_;
};

/// Complement vector F.
class ComplementVector {
 public:
  ComplementVector() = default;
  /// Every entry must be 0 or 1.
  explicit ComplementVector(std::vector<std::uint8_t> bits);
  static ComplementVector zeros(std::size_t length);
  static ComplementVector ones(std::size_t length);

  std::size_t size() const noexcept { return bits_.size(); }
  bool operator[](std::size_t i) const { return bits_[i] != 0; }
  std::span<const std::uint8_t> bits() const noexcept { return bits_; }

  friend bool operator==(const ComplementVector&, const ComplementVector&) = default;

 private:
  std::vector<std::uint8_t> bits_;
};

/// A complete CA rule (T, F) of length L.
class CaRule {
 public:
  CaRule() = default;
  /// Throws DimensionError when T and F disagree on L.
  CaRule(DependencyMatrix deps, ComplementVector complement);

  std::size_t length() const noexcept { return deps_.size(); }
  const DependencyMatrix& dependencies() const noexcept { return deps_; }
  const ComplementVector& complement() const noexcept { return complement_; }

  friend bool operator==(const CaRule&, const CaRule&) = default;

 private:
  DependencyMatrix deps_;
  ComplementVector complement_;
};

struct EvolutionParams {
  int max_steps = 256;
  double epsilon = 1e-9;
  int quant_levels = 8;

  /// Throws std::invalid_argument unless max_steps >= 1, 0 < epsilon < 1 and
  /// 2 <= quant_levels <= 256.
  void validate() const;
};

enum class AttractorKind { kFixedPoint, kPeriodTwo, kTruncated };

const char* to_string(AttractorKind kind) noexcept;

/// Basin identity: the K-level quantization of an attractor. Equality and
/// ordering look at the key only; kind is diagnostic.
struct AttractorId {
  std::string key;
  AttractorKind kind = AttractorKind::kFixedPoint;

  friend bool operator==(const AttractorId& a, const AttractorId& b) { return a.key == b.key; }
  friend auto operator<=>(const AttractorId& a, const AttractorId& b) { return a.key <=> b.key; }
};

struct Trajectory {
  FuzzyConfiguration final_state;
  AttractorId id;
  int steps = 0;
  AttractorKind status = AttractorKind::kFixedPoint;
};

/// Nearest-level index for every cell, level k standing for k/(K-1); ties
/// round up.
std::vector<std::uint8_t> quantize(std::span<const double> cells, int levels);
std::string format_key(std::span<const std::uint8_t> levels);
AttractorId attractor_id(const FuzzyConfiguration& s, int levels);

FuzzyConfiguration step(const CaRule& rule, const FuzzyConfiguration& s);
Trajectory evolve(const CaRule& rule, const FuzzyConfiguration& s0,
                  const EvolutionParams& params = {});

/// Allocation-free evolution used by the classifier hot paths. Reusable
/// scratch buffers live in the Evolver; the result is the quantized
/// attractor (the lexicographically smaller member for a 2-cycle).
class Evolver {
 public:
  explicit Evolver(const CaRule& rule, const EvolutionParams& params = {});

  struct Outcome {
    AttractorKind kind;
    int steps;
  };

  /// Evolves `initial` and writes the attractor levels to `levels_out`.
  Outcome run(std::span<const double> initial, std::span<std::uint8_t> levels_out);
  /// Final configuration of the last run().
  std::span<const double> last_state() const noexcept { return final_; }

  std::size_t length() const noexcept { return length_; }

 private:
  std::size_t length_;
  EvolutionParams params_;
  std::vector<double> wl_, ws_, wr_, count_, offset_, sign_;
  std::vector<double> prev_, cur_, next_, final_;
  std::vector<std::uint8_t> scratch_;
};

/// Value j/(n-1) of grid level j.
inline double grid_value(int level, int n) { return static_cast<double>(level) / (n - 1); }

struct Basin {
  AttractorKind kind = AttractorKind::kFixedPoint;
  /// Mixed-radix ordinals of member grid configurations, cell 0 least
  /// significant.
  std::vector<std::uint32_t> members;
};

using BasinPartition = std::map<std::string, Basin>;

inline constexpr std::uint64_t kMaxEnumeratedConfigurations = 65536;

/// Decodes a grid ordinal into its configuration.
FuzzyConfiguration grid_configuration(std::uint32_t ordinal, std::size_t length, int n);

/// Evolves every configuration of the n^L grid and groups them by attractor.
/// Throws std::invalid_argument when n^L exceeds kMaxEnumeratedConfigurations.
BasinPartition enumerate_basins(const CaRule& rule, std::size_t length, int n,
                                const EvolutionParams& params = {});

}  // namespace spliceca::fca
