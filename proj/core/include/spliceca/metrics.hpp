#pragma once

// Per-site-type confusion accounting (set 1 = donor, set 2 = acceptor),
// sensitivity/specificity, and the comparison table against published
// splice-site predictors.

#include <cstdint>
#include <span>
#include <stdexcept>
#include <string>
#include <utility>

#include "spliceca/seqio.hpp"

namespace spliceca::metrics {

struct ConfusionCounts {
  std::uint64_t tp = 0;
  std::uint64_t fp = 0;
  std::uint64_t tn = 0;
  std::uint64_t fn = 0;

  std::uint64_t total() const noexcept { return tp + fp + tn + fn; }
  friend bool operator==(const ConfusionCounts&, const ConfusionCounts&) = default;
};

/// Reduced non-negative fraction.
struct Ratio {
  std::uint64_t num = 0;
  std::uint64_t den = 1;

  static Ratio of(std::uint64_t num, std::uint64_t den);
  double value() const noexcept { return static_cast<double>(num) / static_cast<double>(den); }
  friend bool operator==(const Ratio&, const Ratio&) = default;
};

struct DerivedMetrics {
  std::uint64_t actual_positives = 0;     // AP = TP + FN
  std::uint64_t actual_negatives = 0;     // AN = TN + FP
  std::uint64_t predicted_positives = 0;  // TP + FP
  std::uint64_t predicted_negatives = 0;  // PN = TN + FN
  Ratio sensitivity;                      // TP / (TP + FN)
  Ratio specificity;                      // TN / (TN + FP)
};

/// Raised when SN or SP has a zero denominator.
class UndefinedMetricError : public std::domain_error {
 public:
  explicit UndefinedMetricError(std::string metric);
  const std::string& metric() const noexcept { return metric_; }

 private:
  std::string metric_;
};

struct LabelPair {
  ClassLabel predicted;
  ClassLabel actual;
};

struct SiteCounts {
  ConfusionCounts donor;
  ConfusionCounts acceptor;
};

/// For each site type an instance is positive iff its label equals that
/// type. Throws std::invalid_argument on an empty list.
SiteCounts tally(std::span<const LabelPair> pairs);

DerivedMetrics derive(const ConfusionCounts& counts);

struct ComparisonRow {
  std::string method;
  /// Percentages as printed.
  std::string sensitivity;
  std::string specificity;
};

/// Published figures for the other predictors and the original MACA-MCC
/// result.
std::span<const ComparisonRow> reference_rows() noexcept;

/// Percentage with one decimal, e.g. 0.86 -> "86.0".
std::string percent(double fraction);

/// Aligned Method/Sensitivity/Specificity table: the reference rows, then the
/// measured donor and acceptor rows.
std::string comparison_report(const DerivedMetrics& donor, const DerivedMetrics& acceptor);

}  // namespace spliceca::metrics
