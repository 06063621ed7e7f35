#include "spliceca/scan.hpp"

#include <algorithm>
#include <cctype>
#include <cstdio>
#include <stdexcept>

namespace spliceca::scan {

std::optional<StrandSelection> strand_selection_from_string(std::string_view name) noexcept {
  if (name == "direct") return StrandSelection::kDirect;
  if (name == "reverse") return StrandSelection::kReverse;
  if (name == "both") return StrandSelection::kBoth;
  return std::nullopt;
}

const ScanSection* ScanReport::find(Strand strand, ClassLabel site) const {
  for (const auto& s : sections) {
    if (s.strand == strand && s.site == site) return &s;
  }
  return nullptr;
}

namespace {

std::string lowercase(std::span<const seqio::Nucleotide> window) {
  std::string s = seqio::to_string(window);
  for (auto& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

void scan_strand(const seqio::Sequence& bases, Strand strand, double threshold,
                 classifier::TreeClassifier& classify, ScanSection& donor, ScanSection& acceptor) {
  const std::size_t g = bases.size();
  const std::size_t w = seqio::kWindow;
  for (std::size_t k = 0; k + w <= g; ++k) {
    std::span<const seqio::Nucleotide> window(bases.data() + k, w);
    const auto p = classify(window);
    if (p.label == ClassLabel::kNeither || p.score < threshold) continue;
    ScanRow row;
    if (strand == Strand::kDirect) {
      row.start = k + 1;
      row.end = k + w;
    } else {
      row.start = g - k - w + 1;
      row.end = g - k;
    }
    row.score = p.score;
    row.sequence = lowercase(window);
    (p.label == ClassLabel::kDonor ? donor : acceptor).rows.push_back(std::move(row));
  }
  for (auto* section : {&donor, &acceptor}) {
    std::stable_sort(section->rows.begin(), section->rows.end(),
                     [](const ScanRow& a, const ScanRow& b) { return a.start < b.start; });
  }
}

}  // namespace

ScanReport scan(const seqio::GenomicSequence& genome, const classifier::MacaCcTree& tree,
                double threshold, StrandSelection strands) {
  if (genome.bases.size() < seqio::kWindow) {
    throw std::invalid_argument("sequence '" + genome.name + "' has " + std::to_string(genome.bases.size()) +
                                " bases; scanning needs at least " + std::to_string(seqio::kWindow));
  }
  if (!(threshold >= 0.0 && threshold <= 1.0)) throw std::invalid_argument("threshold must lie in [0,1]");

  classifier::TreeClassifier classify(tree);
  ScanReport report;
  report.name = genome.name;
  report.length = genome.bases.size();
  report.threshold = threshold;

  auto run = [&](Strand strand, const seqio::Sequence& bases) {
    ScanSection donor{strand, ClassLabel::kDonor, {}};
    ScanSection acceptor{strand, ClassLabel::kAcceptor, {}};
    scan_strand(bases, strand, threshold, classify, donor, acceptor);
    report.sections.push_back(std::move(donor));
    report.sections.push_back(std::move(acceptor));
  };
  if (strands != StrandSelection::kReverse) run(Strand::kDirect, genome.bases);
  if (strands != StrandSelection::kDirect) run(Strand::kReverse, seqio::reverse_complement(genome.bases));
  return report;
}

void write_report(std::ostream& out, const ScanReport& report) {
  char score[32];
  std::snprintf(score, sizeof score, "%.2f", report.threshold);
  out << "Sequence: " << report.name << " (" << report.length << " bp), threshold " << score << "\n";
  std::optional<Strand> current;
  for (const auto& section : report.sections) {
    if (current != section.strand) {
      out << (section.strand == Strand::kDirect ? "Direct chain." : "Reverse chain.") << "\n";
      current = section.strand;
    }
    out << (section.site == ClassLabel::kDonor ? "Donor site predictions" : "Acceptor site predictions")
        << "\n";
    out << "Start\tEnd\tScore\tSequence\n";
    for (const auto& row : section.rows) {
      std::snprintf(score, sizeof score, "%.4f", row.score);
      out << row.start << '\t' << row.end << '\t' << score << '\t' << row.sequence << "\n";
    }
  }
}

}  // namespace spliceca::scan
