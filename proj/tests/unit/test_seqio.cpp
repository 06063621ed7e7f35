#include <gtest/gtest.h>

#include <fstream>
#include <map>
#include <set>
#include <sstream>

#include "spliceca/seqio.hpp"

using namespace spliceca;
using namespace spliceca::seqio;

namespace {

const std::vector<LabeledInstance>& uci() {
  static const auto records = [] {
    std::ifstream in(SPLICECA_DATA_FILE);
    return parse_splice_records(in);
  }();
  return records;
}

std::string window(char c = 'A') { return std::string(kWindow, c); }

std::map<ClassLabel, std::size_t> class_counts(const std::vector<LabeledInstance>& v) {
  std::map<ClassLabel, std::size_t> out;
  for (const auto& r : v) ++out[r.label];
  return out;
}

}  // namespace

TEST(Labels, RoundTrip) {
  for (auto l : {ClassLabel::kDonor, ClassLabel::kAcceptor, ClassLabel::kNeither}) {
    EXPECT_EQ(label_from_string(to_string(l)), l);
  }
  EXPECT_FALSE(label_from_string("EI").has_value());
}

TEST(Nucleotides, ComplementAndCase) {
  EXPECT_EQ(nucleotide_from_char('a'), Nucleotide::kA);
  EXPECT_EQ(nucleotide_from_char('T'), Nucleotide::kT);
  EXPECT_FALSE(nucleotide_from_char('X').has_value());
  EXPECT_EQ(complement(Nucleotide::kA), Nucleotide::kT);
  EXPECT_EQ(complement(Nucleotide::kC), Nucleotide::kG);
  EXPECT_EQ(complement(Nucleotide::kS), Nucleotide::kS);
  EXPECT_EQ(complement(Nucleotide::kN), Nucleotide::kN);
  EXPECT_EQ(to_string(reverse_complement(parse_sequence("AACGT"))), "ACGTT");
  EXPECT_THROW(parse_sequence("ACGU"), std::invalid_argument);
}

TEST(SpliceRecords, UciFileLoads) {
  const auto& records = uci();
  ASSERT_EQ(records.size(), 3190u);
  EXPECT_EQ(records.front().label, ClassLabel::kDonor);
  EXPECT_EQ(to_string(records.front().sequence),
            "AGACCCGCCGGGAGGCGGAGGACCTGCAGGGTGAGCCCCACCGCCCCTCCGTGCCCCCGC");
  const auto counts = class_counts(records);
  EXPECT_EQ(counts.at(ClassLabel::kDonor), 767u);
  EXPECT_EQ(counts.at(ClassLabel::kAcceptor), 768u);
  EXPECT_EQ(counts.at(ClassLabel::kNeither), 1655u);
}

TEST(SpliceRecords, EmptyStreamGivesNoRecords) {
  std::istringstream in("");
  EXPECT_TRUE(parse_splice_records(in).empty());
  std::istringstream blank("\n  \n");
  EXPECT_TRUE(parse_splice_records(blank).empty());
}

TEST(SpliceRecords, WhitespaceTolerated) {
  std::istringstream in(" IE , x1 , " + window('C').substr(0, 30) + "  " + window('G').substr(0, 30) + "\n");
  const auto r = parse_splice_records(in);
  ASSERT_EQ(r.size(), 1u);
  EXPECT_EQ(r[0].label, ClassLabel::kAcceptor);
  EXPECT_EQ(r[0].id, "x1");
  EXPECT_EQ(r[0].sequence.size(), kWindow);
}

TEST(SpliceRecords, ShortSequenceReportsLine) {
  std::istringstream in("N,a," + window() + "\nEI,b," + window().substr(1) + "\n");
  try {
    parse_splice_records(in);
    FAIL() << "expected ParseError";
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
    EXPECT_NE(std::string(e.what()).find("59"), std::string::npos);
  }
}

TEST(SpliceRecords, RejectsBadClassCodeAndFieldCount) {
  std::istringstream bad_class("XX,a," + window() + "\n");
  EXPECT_THROW(parse_splice_records(bad_class), ParseError);
  std::istringstream bad_code("EI,a," + window().substr(1) + "Z\n");
  EXPECT_THROW(parse_splice_records(bad_code), ParseError);
  std::istringstream fields("EI," + window() + "\n");
  EXPECT_THROW(parse_splice_records(fields), ParseError);
}

TEST(SpliceRecords, WriteParseRoundTrip) {
  std::vector<LabeledInstance> head(uci().begin(), uci().begin() + 50);
  std::stringstream buf;
  write_splice_records(buf, head);
  const auto back = parse_splice_records(buf);
  ASSERT_EQ(back.size(), head.size());
  for (std::size_t i = 0; i < head.size(); ++i) {
    EXPECT_EQ(back[i].label, head[i].label);
    EXPECT_EQ(back[i].id, head[i].id);
    EXPECT_EQ(back[i].sequence, head[i].sequence);
  }
}

TEST(Fasta, MultiRecord) {
  std::istringstream in(">chr1 first contig\nACGT\nacgt\n\n>chr2\nNNNN\n");
  const auto recs = parse_fasta(in);
  ASSERT_EQ(recs.size(), 2u);
  EXPECT_EQ(recs[0].name, "chr1");
  EXPECT_EQ(to_string(recs[0].bases), "ACGTACGT");
  EXPECT_EQ(recs[1].name, "chr2");
  EXPECT_EQ(recs[1].bases.size(), 4u);
}

TEST(Fasta, Errors) {
  std::istringstream orphan("ACGT\n>x\nA\n");
  EXPECT_THROW(parse_fasta(orphan), ParseError);
  std::istringstream empty_header(">\nACGT\n");
  EXPECT_THROW(parse_fasta(empty_header), ParseError);
  std::istringstream empty_record(">a\n>b\nAC\n");
  EXPECT_THROW(parse_fasta(empty_record), ParseError);
  std::istringstream bad_code(">a\nACXT\n");
  try {
    parse_fasta(bad_code);
    FAIL();
  } catch (const ParseError& e) {
    EXPECT_EQ(e.line(), 2u);
  }
}

TEST(Encoder, BaseCodesAreGridPoints) {
  const FuzzyEncoder enc;
  const auto c = enc.encode(parse_sequence("ACGT"));
  EXPECT_DOUBLE_EQ(c[0], 0.0);
  EXPECT_DOUBLE_EQ(c[1], 1.0 / 3);
  EXPECT_DOUBLE_EQ(c[2], 2.0 / 3);
  EXPECT_DOUBLE_EQ(c[3], 1.0);
}

TEST(Encoder, AmbiguityCodesAreMeans) {
  const FuzzyEncoder enc;
  EXPECT_DOUBLE_EQ(enc.code(Nucleotide::kN), 0.5);
  EXPECT_DOUBLE_EQ(enc.code(Nucleotide::kD), 5.0 / 9);
  EXPECT_DOUBLE_EQ(enc.code(Nucleotide::kS), 0.5);
  EXPECT_DOUBLE_EQ(enc.code(Nucleotide::kR), 1.0 / 3);
}

TEST(Encoder, WiderGridAndValidation) {
  const FuzzyEncoder enc(7);
  EXPECT_DOUBLE_EQ(enc.code(Nucleotide::kT), 0.5);
  EXPECT_THROW(FuzzyEncoder(3), std::invalid_argument);
  std::array<double, kAlphabetSize> codes{0, 0.25, 0.5, 1, 0.5, 0.5, 0.5, 0.5};
  EXPECT_NO_THROW(FuzzyEncoder(5, codes));
  codes[3] = 1.5;
  EXPECT_THROW(FuzzyEncoder(5, codes), std::invalid_argument);
}

TEST(Encoder, ConcatenationProperty) {
  const FuzzyEncoder enc;
  const auto& a = uci()[0].sequence;
  const auto& b = uci()[1].sequence;
  Sequence ab(a);
  ab.insert(ab.end(), b.begin(), b.end());
  const auto ea = enc.encode(a), eb = enc.encode(b), eab = enc.encode(ab);
  ASSERT_EQ(eab.size(), ea.size() + eb.size());
  for (std::size_t i = 0; i < ea.size(); ++i) EXPECT_EQ(eab[i], ea[i]);
  for (std::size_t i = 0; i < eb.size(); ++i) EXPECT_EQ(eab[ea.size() + i], eb[i]);
}

TEST(Split, UciSeed42Sizes) {
  const auto split = stratified_split(uci(), 0.2, 42);
  EXPECT_EQ(split.test.size(), 638u);
  EXPECT_EQ(split.train.size(), 2552u);
  const auto t = class_counts(split.test);
  EXPECT_EQ(t.at(ClassLabel::kDonor), 153u);
  EXPECT_EQ(t.at(ClassLabel::kAcceptor), 154u);
  EXPECT_EQ(t.at(ClassLabel::kNeither), 331u);
}

TEST(Split, DisjointCoveringAndDeterministic) {
  const auto a = stratified_split(uci(), 0.2, 42);
  const auto b = stratified_split(uci(), 0.2, 42);
  const auto c = stratified_split(uci(), 0.2, 43);
  std::set<std::string> ids;
  for (const auto& r : a.train) ids.insert(r.id);
  for (const auto& r : a.test) EXPECT_TRUE(ids.insert(r.id).second);
  EXPECT_EQ(ids.size(), uci().size());
  ASSERT_EQ(a.test.size(), b.test.size());
  for (std::size_t i = 0; i < a.test.size(); ++i) EXPECT_EQ(a.test[i].id, b.test[i].id);
  bool differs = false;
  for (std::size_t i = 0; i < a.test.size(); ++i) differs |= a.test[i].id != c.test[i].id;
  EXPECT_TRUE(differs);
}

TEST(Split, EdgeFractions) {
  const auto none = stratified_split(uci(), 0.0, 1);
  EXPECT_TRUE(none.test.empty());
  EXPECT_EQ(none.train.size(), uci().size());
  EXPECT_THROW(stratified_split(uci(), 1.0, 1), std::invalid_argument);
  EXPECT_THROW(stratified_split(uci(), -0.1, 1), std::invalid_argument);
}
