#include "spliceca/fca.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <sstream>

namespace spliceca::fca {

FuzzyConfiguration::FuzzyConfiguration(std::vector<double> cells) : cells_(std::move(cells)) {
  for (std::size_t i = 0; i < cells_.size(); ++i) {
    if (!(cells_[i] >= 0.0 && cells_[i] <= 1.0)) {
      throw std::invalid_argument("cell " + std::to_string(i) + " outside [0,1]");
    }
  }
}

std::uint8_t DependencyMatrix::allowed_mask(std::size_t i, std::size_t length) noexcept {
  std::uint8_t m = kSelf;
  if (i > 0) m |= kLeft;
  if (i + 1 < length) m |= kRight;
  return m;
}

DependencyMatrix::DependencyMatrix(std::vector<std::uint8_t> masks) : masks_(std::move(masks)) {
  for (std::size_t i = 0; i < masks_.size(); ++i) {
    if (masks_[i] == 0) {
      throw std::invalid_argument("dependency row " + std::to_string(i) + " is empty");
    }
    if ((masks_[i] & ~allowed_mask(i, masks_.size())) != 0) {
      throw std::invalid_argument("dependency row " + std::to_string(i) +
                                  " reaches outside the 3-neighbourhood");
    }
  }
}

DependencyMatrix DependencyMatrix::identity(std::size_t length) {
  return DependencyMatrix(std::vector<std::uint8_t>(length, kSelf));
}

DependencyMatrix DependencyMatrix::from_indices(
    const std::vector<std::vector<std::size_t>>& rows) {
  std::vector<std::uint8_t> masks(rows.size(), 0);
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j : rows[i]) {
      if (j + 1 == i) {
        masks[i] |= kLeft;
      } else if (j == i) {
        masks[i] |= kSelf;
      } else if (j == i + 1) {
        masks[i] |= kRight;
      } else {
        throw std::invalid_argument("dependency row " + std::to_string(i) + " names cell " +
                                    std::to_string(j) + " outside the 3-neighbourhood");
      }
    }
  }
  return DependencyMatrix(std::move(masks));
}

std::vector<std::size_t> DependencyMatrix::dependencies(std::size_t i) const {
  std::vector<std::size_t> out;
  const auto m = masks_.at(i);
  if (m & kLeft) out.push_back(i - 1);
  if (m & kSelf) out.push_back(i);
  if (m & kRight) out.push_back(i + 1);
  return out;
}

ComplementVector::ComplementVector(std::vector<std::uint8_t> bits) : bits_(std::move(bits)) {
  for (std::size_t i = 0; i < bits_.size(); ++i) {
    if (bits_[i] > 1) {
      throw std::invalid_argument("complement bit " + std::to_string(i) + " is not 0/1");
    }
  }
}

ComplementVector ComplementVector::zeros(std::size_t length) {
  return ComplementVector(std::vector<std::uint8_t>(length, 0));
}

ComplementVector ComplementVector::ones(std::size_t length) {
  return ComplementVector(std::vector<std::uint8_t>(length, 1));
}

CaRule::CaRule(DependencyMatrix deps, ComplementVector complement)
    : deps_(std::move(deps)), complement_(std::move(complement)) {
  if (deps_.size() != complement_.size()) {
    throw DimensionError("T has " + std::to_string(deps_.size()) + " rows but F has " +
                         std::to_string(complement_.size()) + " bits");
  }
}

void EvolutionParams::validate() const {
  if (max_steps < 1) throw std::invalid_argument("max_steps must be >= 1");
  if (!(epsilon > 0.0 && epsilon < 1.0)) throw std::invalid_argument("epsilon must lie in (0,1)");
  if (quant_levels < 2 || quant_levels > 256) {
    throw std::invalid_argument("quant_levels must lie in [2,256]");
  }
}

const char* to_string(AttractorKind kind) noexcept {
  switch (kind) {
    case AttractorKind::kFixedPoint: return "fixed-point";
    case AttractorKind::kPeriodTwo: return "period-2-cycle";
    case AttractorKind::kTruncated: return "truncated";
  }
  return "unknown";
}

namespace {

inline std::uint8_t quantize_cell(double x, double scale, int top) {
  const auto level = static_cast<int>(std::floor(x * scale + 0.5));
  return static_cast<std::uint8_t>(std::clamp(level, 0, top));
}

void quantize_into(std::span<const double> cells, int levels, std::span<std::uint8_t> out) {
  const double scale = levels - 1;
  for (std::size_t i = 0; i < cells.size(); ++i) out[i] = quantize_cell(cells[i], scale, levels - 1);
}

}  // namespace

std::vector<std::uint8_t> quantize(std::span<const double> cells, int levels) {
  if (levels < 2 || levels > 256) throw std::invalid_argument("quant_levels must lie in [2,256]");
  std::vector<std::uint8_t> out(cells.size());
  quantize_into(cells, levels, out);
  return out;
}

std::string format_key(std::span<const std::uint8_t> levels) {
  std::string key;
  key.reserve(levels.size() * 2);
  for (std::size_t i = 0; i < levels.size(); ++i) {
    if (i) key.push_back('|');
    key += std::to_string(levels[i]);
  }
  return key;
}

AttractorId attractor_id(const FuzzyConfiguration& s, int levels) {
  return {format_key(quantize(s.cells(), levels)), AttractorKind::kFixedPoint};
}

Evolver::Evolver(const CaRule& rule, const EvolutionParams& params)
    : length_(rule.length()), params_(params) {
  params_.validate();
  const std::size_t padded = length_ + 2;
  wl_.assign(length_, 0.0);
  ws_.assign(length_, 0.0);
  wr_.assign(length_, 0.0);
  count_.assign(length_, 1.0);
  offset_.assign(length_, 0.0);
  sign_.assign(length_, 1.0);
  for (std::size_t i = 0; i < length_; ++i) {
    const auto m = rule.dependencies().mask(i);
    wl_[i] = (m & kLeft) ? 1.0 : 0.0;
    ws_[i] = (m & kSelf) ? 1.0 : 0.0;
    wr_[i] = (m & kRight) ? 1.0 : 0.0;
    count_[i] = std::popcount(m);
    if (rule.complement()[i]) {
      offset_[i] = 1.0;
      sign_[i] = -1.0;
    }
  }
  prev_.assign(padded, 0.0);
  cur_.assign(padded, 0.0);
  next_.assign(padded, 0.0);
  final_.assign(length_, 0.0);
  scratch_.assign(length_, 0);
}

Evolver::Outcome Evolver::run(std::span<const double> initial, std::span<std::uint8_t> levels_out) {
  if (initial.size() != length_ || levels_out.size() != length_) {
    throw DimensionError("configuration length " + std::to_string(initial.size()) +
                         " does not match rule length " + std::to_string(length_));
  }
  const std::size_t n = length_;
  const double eps = params_.epsilon;
  const int levels = params_.quant_levels;

  double* prev = prev_.data();
  double* cur = cur_.data();
  double* next = next_.data();
  std::copy(initial.begin(), initial.end(), cur + 1);

  const double* wl = wl_.data();
  const double* ws = ws_.data();
  const double* wr = wr_.data();
  const double* cnt = count_.data();
  const double* off = offset_.data();
  const double* sg = sign_.data();

  bool have_prev = false;
  for (int t = 0;; ++t) {
    double d_cur = 0.0;
    double d_prev = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      // Masked terms contribute an exact +0, so the sum and quotient round
      // exactly like summing the dependents in index order.
      const double avg = (wl[i] * cur[i] + ws[i] * cur[i + 1] + wr[i] * cur[i + 2]) / cnt[i];
      const double v = off[i] + sg[i] * avg;
      next[i + 1] = v;
      d_cur = std::max(d_cur, std::abs(v - cur[i + 1]));
      d_prev = std::max(d_prev, std::abs(v - prev[i + 1]));
    }

    if (d_cur <= eps) {
      std::copy(cur + 1, cur + 1 + n, final_.begin());
      quantize_into(final_, levels, levels_out);
      return {AttractorKind::kFixedPoint, t};
    }
    if (have_prev && d_prev <= eps) {
      std::copy(next + 1, next + 1 + n, final_.begin());
      quantize_into({cur + 1, n}, levels, scratch_);
      quantize_into(final_, levels, levels_out);
      if (std::lexicographical_compare(scratch_.begin(), scratch_.end(), levels_out.begin(),
                                       levels_out.end())) {
        std::copy(scratch_.begin(), scratch_.end(), levels_out.begin());
      }
      return {AttractorKind::kPeriodTwo, t + 1};
    }
    if (t + 1 >= params_.max_steps) {
      std::copy(next + 1, next + 1 + n, final_.begin());
      quantize_into(final_, levels, levels_out);
      return {AttractorKind::kTruncated, params_.max_steps};
    }
    double* recycled = prev;
    prev = cur;
    cur = next;
    next = recycled;
    have_prev = true;
  }
}

FuzzyConfiguration step(const CaRule& rule, const FuzzyConfiguration& s) {
  if (s.size() != rule.length()) {
    throw DimensionError("configuration length " + std::to_string(s.size()) +
                         " does not match rule length " + std::to_string(rule.length()));
  }
  const std::size_t n = s.size();
  std::vector<double> out(n);
  for (std::size_t i = 0; i < n; ++i) {
    const auto deps = rule.dependencies().dependencies(i);
    double sum = 0.0;
    for (auto j : deps) sum += s[j];
    const double avg = sum / static_cast<double>(deps.size());
    out[i] = rule.complement()[i] ? 1.0 - avg : avg;
  }
  return FuzzyConfiguration(std::move(out));
}

Trajectory evolve(const CaRule& rule, const FuzzyConfiguration& s0, const EvolutionParams& params) {
  Evolver evolver(rule, params);
  std::vector<std::uint8_t> levels(rule.length());
  const auto outcome = evolver.run(s0.cells(), levels);
  auto last = evolver.last_state();
  Trajectory tr;
  tr.final_state = FuzzyConfiguration(std::vector<double>(last.begin(), last.end()));
  tr.id = {format_key(levels), outcome.kind};
  tr.steps = outcome.steps;
  tr.status = outcome.kind;
  return tr;
}

FuzzyConfiguration grid_configuration(std::uint32_t ordinal, std::size_t length, int n) {
  std::vector<double> cells(length);
  for (std::size_t i = 0; i < length; ++i) {
    cells[i] = grid_value(static_cast<int>(ordinal % n), n);
    ordinal /= n;
  }
  return FuzzyConfiguration(std::move(cells));
}

BasinPartition enumerate_basins(const CaRule& rule, std::size_t length, int n,
                                const EvolutionParams& params) {
  if (n < 2) throw std::invalid_argument("need at least 2 grid levels");
  if (length == 0) throw std::invalid_argument("length must be >= 1");
  if (rule.length() != length) {
    throw DimensionError("rule length " + std::to_string(rule.length()) + " != " +
                         std::to_string(length));
  }
  std::uint64_t total = 1;
  for (std::size_t i = 0; i < length; ++i) {
    total *= static_cast<std::uint64_t>(n);
    if (total > kMaxEnumeratedConfigurations) {
      throw std::invalid_argument("grid of " + std::to_string(n) + "^" + std::to_string(length) +
                                  " configurations is too large to enumerate");
    }
  }

  Evolver evolver(rule, params);
  std::vector<std::uint8_t> levels(length);
  BasinPartition basins;
  for (std::uint32_t ord = 0; ord < total; ++ord) {
    const auto config = grid_configuration(ord, length, n);
    const auto outcome = evolver.run(config.cells(), levels);
    auto [it, inserted] = basins.try_emplace(format_key(levels));
    if (inserted) it->second.kind = outcome.kind;
    it->second.members.push_back(ord);
  }
  return basins;
}

}  // namespace spliceca::fca
