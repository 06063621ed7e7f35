#include "spliceca/seqio.hpp"

#include <algorithm>
#include <cctype>
#include <cmath>
#include <numeric>

#include "spliceca/random.hpp"

namespace spliceca {

const char* to_string(ClassLabel label) noexcept {
  switch (label) {
    case ClassLabel::kDonor: return "Donor";
    case ClassLabel::kAcceptor: return "Acceptor";
    case ClassLabel::kNeither: return "Neither";
  }
  return "?";
}

std::optional<ClassLabel> label_from_string(std::string_view name) noexcept {
  if (name == "Donor") return ClassLabel::kDonor;
  if (name == "Acceptor") return ClassLabel::kAcceptor;
  if (name == "Neither") return ClassLabel::kNeither;
  return std::nullopt;
}

}  // namespace spliceca

namespace spliceca::seqio {

namespace {

constexpr char kLetters[kAlphabetSize] = {'A', 'C', 'G', 'T', 'D', 'N', 'S', 'R'};

std::string_view trim(std::string_view s) {
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.front()))) s.remove_prefix(1);
  while (!s.empty() && std::isspace(static_cast<unsigned char>(s.back()))) s.remove_suffix(1);
  return s;
}

bool is_blank(std::string_view s) { return trim(s).empty(); }

}  // namespace

std::optional<Nucleotide> nucleotide_from_char(char c) noexcept {
  switch (std::toupper(static_cast<unsigned char>(c))) {
    case 'A': return Nucleotide::kA;
    case 'C': return Nucleotide::kC;
    case 'G': return Nucleotide::kG;
    case 'T': return Nucleotide::kT;
    case 'D': return Nucleotide::kD;
    case 'N': return Nucleotide::kN;
    case 'S': return Nucleotide::kS;
    case 'R': return Nucleotide::kR;
    default: return std::nullopt;
  }
}

char to_char(Nucleotide n) noexcept { return kLetters[static_cast<std::size_t>(n)]; }

Nucleotide complement(Nucleotide n) noexcept {
  switch (n) {
    case Nucleotide::kA: return Nucleotide::kT;
    case Nucleotide::kC: return Nucleotide::kG;
    case Nucleotide::kG: return Nucleotide::kC;
    case Nucleotide::kT: return Nucleotide::kA;
    case Nucleotide::kS: return Nucleotide::kS;
    case Nucleotide::kN:
    case Nucleotide::kD:
    case Nucleotide::kR: return Nucleotide::kN;
  }
  return Nucleotide::kN;
}

Sequence parse_sequence(std::string_view text) {
  Sequence out;
  out.reserve(text.size());
  for (char c : text) {
    if (std::isspace(static_cast<unsigned char>(c))) continue;
    auto n = nucleotide_from_char(c);
    if (!n) throw std::invalid_argument(std::string("unknown nucleotide code '") + c + "'");
    out.push_back(*n);
  }
  return out;
}

std::string to_string(std::span<const Nucleotide> seq) {
  std::string s;
  s.reserve(seq.size());
  for (auto n : seq) s.push_back(to_char(n));
  return s;
}

Sequence reverse_complement(std::span<const Nucleotide> seq) {
  Sequence out(seq.size());
  std::transform(seq.rbegin(), seq.rend(), out.begin(), [](Nucleotide n) { return complement(n); });
  return out;
}

ParseError::ParseError(std::size_t line, const std::string& what)
    : std::runtime_error("line " + std::to_string(line) + ": " + what), line_(line) {}

std::vector<LabeledInstance> parse_splice_records(std::istream& in) {
  std::vector<LabeledInstance> out;
  std::string line;
  std::size_t lineno = 0;
  while (std::getline(in, line)) {
    ++lineno;
    if (is_blank(line)) continue;

    std::vector<std::string_view> fields;
    std::string_view rest(line);
    for (std::size_t pos; (pos = rest.find(',')) != std::string_view::npos;) {
      fields.push_back(rest.substr(0, pos));
      rest.remove_prefix(pos + 1);
    }
    fields.push_back(rest);
    if (fields.size() != 3) {
      throw ParseError(lineno, "expected 3 comma-separated fields, found " +
                                   std::to_string(fields.size()));
    }

    LabeledInstance rec;
    const auto cls = trim(fields[0]);
    if (cls == "EI") {
      rec.label = ClassLabel::kDonor;
    } else if (cls == "IE") {
      rec.label = ClassLabel::kAcceptor;
    } else if (cls == "N") {
      rec.label = ClassLabel::kNeither;
    } else {
      throw ParseError(lineno, "unknown class token '" + std::string(cls) + "'");
    }
    rec.id = std::string(trim(fields[1]));
    try {
      rec.sequence = parse_sequence(fields[2]);
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
    if (rec.sequence.size() != kWindow) {
      throw ParseError(lineno, "sequence has " + std::to_string(rec.sequence.size()) +
                                   " bases, expected " + std::to_string(kWindow));
    }
    out.push_back(std::move(rec));
  }
  return out;
}

void write_splice_records(std::ostream& out, std::span<const LabeledInstance> records) {
  for (const auto& r : records) {
    const char* cls = r.label == ClassLabel::kDonor      ? "EI"
                      : r.label == ClassLabel::kAcceptor ? "IE"
                                                         : "N";
    out << cls << ',' << r.id << ',' << to_string(r.sequence) << '\n';
  }
}

std::vector<GenomicSequence> parse_fasta(std::istream& in) {
  std::vector<GenomicSequence> out;
  std::size_t header_line = 0;
  std::string line;
  std::size_t lineno = 0;

  auto close_record = [&] {
    if (!out.empty() && out.back().bases.empty()) {
      throw ParseError(header_line, "no sequence under header '" + out.back().name + "'");
    }
  };

  while (std::getline(in, line)) {
    ++lineno;
    const auto text = trim(line);
    if (text.empty()) continue;
    if (text.front() == '>') {
      close_record();
      auto header = trim(text.substr(1));
      const auto end = std::find_if(header.begin(), header.end(),
                                    [](char c) { return std::isspace(static_cast<unsigned char>(c)); });
      std::string name(header.begin(), end);
      if (name.empty()) throw ParseError(lineno, "empty FASTA header");
      out.push_back({std::move(name), {}});
      header_line = lineno;
      continue;
    }
    if (out.empty()) throw ParseError(lineno, "sequence data before any '>' header");
    try {
      auto bases = parse_sequence(text);
      auto& dst = out.back().bases;
      dst.insert(dst.end(), bases.begin(), bases.end());
    } catch (const std::invalid_argument& e) {
      throw ParseError(lineno, e.what());
    }
  }
  close_record();
  return out;
}

FuzzyEncoder::FuzzyEncoder(int levels) : levels_(levels), codes_{} {
  if (levels < 4) throw std::invalid_argument("encoder needs at least 4 levels, got " + std::to_string(levels));
  const double a = fca::grid_value(0, levels);
  const double c = fca::grid_value(1, levels);
  const double g = fca::grid_value(2, levels);
  const double t = fca::grid_value(3, levels);
  codes_ = {a, c, g, t, (a + g + t) / 3.0, (a + c + g + t) / 4.0, (c + g) / 2.0, (a + g) / 2.0};
}

FuzzyEncoder::FuzzyEncoder(int levels, const std::array<double, kAlphabetSize>& codes)
    : levels_(levels), codes_(codes) {
  if (levels < 2) throw std::invalid_argument("encoder needs at least 2 levels");
  for (std::size_t i = 0; i < kAlphabetSize; ++i) {
    if (!(codes_[i] >= 0.0 && codes_[i] <= 1.0)) {
      throw std::invalid_argument(std::string("code for '") + kLetters[i] + "' outside [0,1]");
    }
  }
}

void FuzzyEncoder::encode_into(std::span<const Nucleotide> seq, std::span<double> out) const {
  if (seq.size() != out.size()) throw std::invalid_argument("encode_into: length mismatch");
  for (std::size_t i = 0; i < seq.size(); ++i) out[i] = code(seq[i]);
}

fca::FuzzyConfiguration FuzzyEncoder::encode(std::span<const Nucleotide> seq) const {
  std::vector<double> cells(seq.size());
  encode_into(seq, cells);
  return fca::FuzzyConfiguration(std::move(cells));
}

Split stratified_split(std::span<const LabeledInstance> instances, double test_fraction,
                       std::uint64_t seed) {
  if (!(test_fraction >= 0.0 && test_fraction < 1.0)) {
    throw std::invalid_argument("test_fraction must lie in [0,1)");
  }
  std::vector<char> in_test(instances.size(), 0);
  for (auto cls : {ClassLabel::kDonor, ClassLabel::kAcceptor, ClassLabel::kNeither}) {
    std::vector<std::size_t> idx;
    for (std::size_t i = 0; i < instances.size(); ++i) {
      if (instances[i].label == cls) idx.push_back(i);
    }
    Rng rng(stream_seed(seed, static_cast<std::uint64_t>(cls), 0));
    for (std::size_t i = idx.size(); i > 1; --i) {
      std::swap(idx[i - 1], idx[uniform_below(rng, i)]);
    }
    const auto take = static_cast<std::size_t>(std::llround(test_fraction * static_cast<double>(idx.size())));
    for (std::size_t k = 0; k < take; ++k) in_test[idx[k]] = 1;
  }
  Split split;
  for (std::size_t i = 0; i < instances.size(); ++i) {
    (in_test[i] ? split.test : split.train).push_back(instances[i]);
  }
  return split;
}

}  // namespace spliceca::seqio
