#pragma once

// Sliding-window genome scan with a fitted tree.

#include <cstddef>
#include <optional>
#include <ostream>
#include <string>
#include <string_view>
#include <vector>

#include "spliceca/classifier.hpp"
#include "spliceca/seqio.hpp"

namespace spliceca::scan {

enum class Strand { kDirect, kReverse };
enum class StrandSelection { kDirect, kReverse, kBoth };

std::optional<StrandSelection> strand_selection_from_string(std::string_view name) noexcept;

struct ScanRow {
  /// 1-based forward-strand coordinates, start <= end.
  std::size_t start = 0;
  std::size_t end = 0;
  double score = 0.0;
  /// Window as read on the scanned strand, lowercase.
  std::string sequence;

  friend bool operator==(const ScanRow&, const ScanRow&) = default;
};

struct ScanSection {
  Strand strand = Strand::kDirect;
  ClassLabel site = ClassLabel::kDonor;
  std::vector<ScanRow> rows;
};

struct ScanReport {
  std::string name;
  std::size_t length = 0;
  double threshold = 0.0;
  /// Donor then acceptor section for each scanned strand, direct first.
  std::vector<ScanSection> sections;

  const ScanSection* find(Strand strand, ClassLabel site) const;
};

/// Classifies every window of kWindow bases (step 1). Windows called Donor or
/// Acceptor with score >= threshold become rows, sorted by start. The reverse
/// strand is the reverse complement, with coordinates mapped back to the
/// forward strand. Throws std::invalid_argument when the genome is shorter
/// than one window or the threshold lies outside [0,1].
ScanReport scan(const seqio::GenomicSequence& genome, const classifier::MacaCcTree& tree,
                double threshold, StrandSelection strands = StrandSelection::kBoth);

void write_report(std::ostream& out, const ScanReport& report);

}  // namespace spliceca::scan
