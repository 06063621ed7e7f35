#pragma once

// Sequence input: the UCI splice-junction record format, FASTA, and the
// nucleotide -> fuzzy cell encoding.

#include <array>
#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <utility>
#include <vector>

#include "spliceca/fca.hpp"

namespace spliceca {

enum class ClassLabel : std::uint8_t { kDonor, kAcceptor, kNeither };

/// "Donor", "Acceptor", "Neither".
const char* to_string(ClassLabel label) noexcept;
std::optional<ClassLabel> label_from_string(std::string_view name) noexcept;

}  // namespace spliceca

namespace spliceca::seqio {

/// Dataset window width.
inline constexpr std::size_t kWindow = 60;

/// The accepted alphabet: four bases plus the ambiguity codes found in the
/// UCI data (D = A/G/T, N = any, S = C/G, R = A/G).
enum class Nucleotide : std::uint8_t { kA, kC, kG, kT, kD, kN, kS, kR };

inline constexpr std::size_t kAlphabetSize = 8;

/// Case-insensitive.
std::optional<Nucleotide> nucleotide_from_char(char c) noexcept;
char to_char(Nucleotide n) noexcept;
/// Watson-Crick complement; R and D have no code for their complement set and
/// map to N.
Nucleotide complement(Nucleotide n) noexcept;

using Sequence = std::vector<Nucleotide>;

/// Throws std::invalid_argument on an unknown code.
Sequence parse_sequence(std::string_view text);
std::string to_string(std::span<const Nucleotide> seq);
Sequence reverse_complement(std::span<const Nucleotide> seq);

struct LabeledInstance {
  ClassLabel label = ClassLabel::kNeither;
  std::string id;
  Sequence sequence;
};

struct GenomicSequence {
  std::string name;
  Sequence bases;
};

/// Parse failure tied to a 1-based input line.
class ParseError : public std::runtime_error {
 public:
  ParseError(std::size_t line, const std::string& what);
  std::size_t line() const noexcept { return line_; }

 private:
  std::size_t line_;
};

/// Reads `CLASS,IDENTIFIER,SEQUENCE` records (EI -> Donor, IE -> Acceptor,
/// N -> Neither). Whitespace around fields and inside the sequence is
/// ignored; blank lines are skipped.
std::vector<LabeledInstance> parse_splice_records(std::istream& in);
void write_splice_records(std::ostream& out, std::span<const LabeledInstance> records);

std::vector<GenomicSequence> parse_fasta(std::istream& in);

class FuzzyEncoder {
 public:
  /// Grid of `levels` values j/(levels-1); A, C, G, T take j = 0..3 and the
  /// ambiguity codes the mean of their constituent bases. Requires
  /// levels >= 4.
  explicit FuzzyEncoder(int levels = 4);
  /// Explicit code table indexed by Nucleotide; every code must lie in [0,1].
  FuzzyEncoder(int levels, const std::array<double, kAlphabetSize>& codes);

  int levels() const noexcept { return levels_; }
  double code(Nucleotide n) const noexcept { return codes_[static_cast<std::size_t>(n)]; }
  const std::array<double, kAlphabetSize>& codes() const noexcept { return codes_; }

  fca::FuzzyConfiguration encode(std::span<const Nucleotide> seq) const;
  void encode_into(std::span<const Nucleotide> seq, std::span<double> out) const;

  friend bool operator==(const FuzzyEncoder&, const FuzzyEncoder&) = default;

 private:
  int levels_;
  std::array<double, kAlphabetSize> codes_;
};

inline fca::FuzzyConfiguration encode(std::span<const Nucleotide> seq, const FuzzyEncoder& enc) {
  return enc.encode(seq);
}

struct Split {
  std::vector<LabeledInstance> train;
  std::vector<LabeledInstance> test;
};

/// Per-class shuffled split; each class contributes round(fraction * count)
/// records to the test side. Both sides keep input order. Throws
/// std::invalid_argument unless 0 <= test_fraction < 1.
Split stratified_split(std::span<const LabeledInstance> instances, double test_fraction,
                       std::uint64_t seed);

}  // namespace spliceca::seqio
