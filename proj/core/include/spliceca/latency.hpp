#pragma once

// Wall-clock cost of single-window classification.

#include <cstddef>
#include <span>
#include <string>

#include "spliceca/classifier.hpp"
#include "spliceca/seqio.hpp"

namespace spliceca::latency {

/// Per-prediction latency the original MACA-MCC work reports, in ms.
inline constexpr double kPublishedMillis = 0.02;

struct LatencyStats {
  std::size_t count = 0;
  double mean_ms = 0.0;
  double median_ms = 0.0;
  double p95_ms = 0.0;
};

/// Times every classification of `instances` x `repetitions` individually.
/// Throws std::invalid_argument when repetitions < 1 or instances is empty.
LatencyStats measure(const classifier::MacaCcTree& tree,
                     std::span<const seqio::LabeledInstance> instances, int repetitions);

/// Summary statistics of raw per-call timings (ms); nearest-rank p95.
LatencyStats summarize(std::span<const double> samples_ms);

/// Three significant digits, e.g. "0.00812".
std::string format_ms(double ms);

std::string format_report(const LatencyStats& stats);

}  // namespace spliceca::latency
