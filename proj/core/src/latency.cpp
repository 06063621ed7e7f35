#include "spliceca/latency.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <numeric>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace spliceca::latency {

LatencyStats summarize(std::span<const double> samples_ms) {
  if (samples_ms.empty()) throw std::invalid_argument("no latency samples");
  std::vector<double> sorted(samples_ms.begin(), samples_ms.end());
  std::sort(sorted.begin(), sorted.end());
  const std::size_t n = sorted.size();
  LatencyStats s;
  s.count = n;
  s.mean_ms = std::accumulate(sorted.begin(), sorted.end(), 0.0) / static_cast<double>(n);
  s.median_ms = n % 2 ? sorted[n / 2] : 0.5 * (sorted[n / 2 - 1] + sorted[n / 2]);
  const auto rank = static_cast<std::size_t>(std::ceil(0.95 * static_cast<double>(n)));
  s.p95_ms = sorted[std::max<std::size_t>(rank, 1) - 1];
  return s;
}

LatencyStats measure(const classifier::MacaCcTree& tree,
                     std::span<const seqio::LabeledInstance> instances, int repetitions) {
  if (repetitions < 1) throw std::invalid_argument("repetitions must be >= 1");
  if (instances.empty()) throw std::invalid_argument("no instances to time");
  classifier::TreeClassifier classify(tree);
  std::vector<double> samples;
  samples.reserve(instances.size() * static_cast<std::size_t>(repetitions));
  volatile double sink = 0.0;
  for (int r = 0; r < repetitions; ++r) {
    for (const auto& inst : instances) {
      const auto t0 = std::chrono::steady_clock::now();
      const auto p = classify(inst.sequence);
      const auto t1 = std::chrono::steady_clock::now();
      sink = sink + p.score;
      samples.push_back(std::chrono::duration<double, std::milli>(t1 - t0).count());
    }
  }
  return summarize(samples);
}

std::string format_ms(double ms) {
  char buf[32];
  std::snprintf(buf, sizeof buf, "%.3g", ms);
  return buf;
}

std::string format_report(const LatencyStats& stats) {
  std::ostringstream out;
  out << "predictions\t" << stats.count << "\n"
      << "mean_ms\t" << format_ms(stats.mean_ms) << "\n"
      << "median_ms\t" << format_ms(stats.median_ms) << "\n"
      << "p95_ms\t" << format_ms(stats.p95_ms) << "\n"
      << "published_ms\t" << format_ms(kPublishedMillis) << "\n";
  return out.str();
}

}  // namespace spliceca::latency
