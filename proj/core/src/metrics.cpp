#include "spliceca/metrics.hpp"

#include <algorithm>
#include <array>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <vector>

namespace spliceca::metrics {

Ratio Ratio::of(std::uint64_t num, std::uint64_t den) {
  if (den == 0) throw std::domain_error("zero denominator");
  const auto g = std::gcd(num, den);
  return g ? Ratio{num / g, den / g} : Ratio{0, 1};
}

UndefinedMetricError::UndefinedMetricError(std::string metric)
    : std::domain_error(metric + " is undefined: zero denominator"), metric_(std::move(metric)) {}

SiteCounts tally(std::span<const LabelPair> pairs) {
  if (pairs.empty()) throw std::invalid_argument("tally needs at least one prediction");
  SiteCounts out;
  auto count = [](ConfusionCounts& c, bool predicted, bool actual) {
    if (predicted && actual) ++c.tp;
    else if (predicted) ++c.fp;
    else if (actual) ++c.fn;
    else ++c.tn;
  };
  for (const auto& p : pairs) {
    count(out.donor, p.predicted == ClassLabel::kDonor, p.actual == ClassLabel::kDonor);
    count(out.acceptor, p.predicted == ClassLabel::kAcceptor, p.actual == ClassLabel::kAcceptor);
  }
  return out;
}

DerivedMetrics derive(const ConfusionCounts& c) {
  DerivedMetrics m;
  m.actual_positives = c.tp + c.fn;
  m.actual_negatives = c.tn + c.fp;
  m.predicted_positives = c.tp + c.fp;
  m.predicted_negatives = c.tn + c.fn;
  if (m.actual_positives == 0) throw UndefinedMetricError("SN");
  if (m.actual_negatives == 0) throw UndefinedMetricError("SP");
  m.sensitivity = Ratio::of(c.tp, m.actual_positives);
  m.specificity = Ratio::of(c.tn, m.actual_negatives);
  return m;
}

namespace {

const std::array<ComparisonRow, 5> kReference = {{
    {"NNsplice", "66.3", "67.4"},
    {"GENIO", "69.36", "72.2"},
    {"HSPL", "73.3", "76.5"},
    {"SpliceView", "82.3", "84.3"},
    {"MACA-MCC (published)", "88.6", "90.3"},
}};

}  // namespace

std::span<const ComparisonRow> reference_rows() noexcept { return kReference; }

std::string percent(double fraction) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.1f", fraction * 100.0);
  return buf;
}

std::string comparison_report(const DerivedMetrics& donor, const DerivedMetrics& acceptor) {
  std::vector<ComparisonRow> rows(kReference.begin(), kReference.end());
  rows.push_back({"MACA-CC donor (measured)", percent(donor.sensitivity.value()),
                  percent(donor.specificity.value())});
  rows.push_back({"MACA-CC acceptor (measured)", percent(acceptor.sensitivity.value()),
                  percent(acceptor.specificity.value())});

  std::size_t width = std::string_view("Method").size();
  for (const auto& r : rows) width = std::max(width, r.method.size());

  std::ostringstream out;
  auto line = [&](const std::string& a, const std::string& b, const std::string& c) {
    out << a << std::string(width - a.size() + 2, ' ');
    out << b << std::string(b.size() < 13 ? 13 - b.size() : 1, ' ') << c << '\n';
  };
  line("Method", "Sensitivity", "Specificity");
  for (const auto& r : rows) line(r.method, r.sensitivity, r.specificity);
  return out.str();
}

}  // namespace spliceca::metrics
