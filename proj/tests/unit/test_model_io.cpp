#include <gtest/gtest.h>

#include <sstream>

#include "fixtures.hpp"
#include "json.hpp"
#include "spliceca/model_io.hpp"

using namespace spliceca;
using namespace spliceca::model_io;
using Json = nlohmann::ordered_json;

namespace {

Model sample_model() {
  const auto& t = fixtures::small_tree();
  Model m;
  m.tree = t.tree;
  m.metadata = {7, t.donor_seed, t.acceptor_seed, t.donor.generations, t.acceptor.generations, 638, std::nullopt};
  return m;
}

std::string expect_format_error(const std::string& text) {
  try {
    load_model_text(text);
  } catch (const ModelFormatError& e) {
    return e.what();
  }
  ADD_FAILURE() << "expected ModelFormatError";
  return {};
}

}  // namespace

TEST(ModelIo, RoundTripPreservesTreeAndPredictions) {
  const auto model = sample_model();
  const auto text = to_json_text(model);
  std::vector<std::string> warnings;
  const auto back = load_model_text(text, &warnings);
  EXPECT_TRUE(warnings.empty());
  EXPECT_EQ(back.tree.donor_stage.rule(), model.tree.donor_stage.rule());
  EXPECT_EQ(back.tree.acceptor_stage.rule(), model.tree.acceptor_stage.rule());
  EXPECT_EQ(back.tree.donor_stage.basins(), model.tree.donor_stage.basins());
  EXPECT_EQ(back.tree.acceptor_stage.basins(), model.tree.acceptor_stage.basins());
  EXPECT_EQ(back.tree.donor_stage.fitness(), model.tree.donor_stage.fitness());
  EXPECT_EQ(back.tree.encoder, model.tree.encoder);
  EXPECT_EQ(back.metadata, model.metadata);
  EXPECT_EQ(to_json_text(back), text);

  classifier::TreeClassifier a(model.tree), b(back.tree);
  for (std::size_t i = 0; i < 200; ++i) {
    const auto& seq = fixtures::uci()[i * 7].sequence;
    const auto pa = a(seq), pb = b(seq);
    EXPECT_EQ(pa.label, pb.label);
    EXPECT_EQ(pa.score, pb.score);
  }
}

TEST(ModelIo, StreamInterface) {
  std::stringstream buf;
  save_model(buf, sample_model());
  EXPECT_NO_THROW(load_model(buf));
}

TEST(ModelIo, UnfittedTreeNotSaved) {
  Model m;
  EXPECT_THROW(to_json_text(m), std::invalid_argument);
}

TEST(ModelIo, RejectsOtherVersions) {
  auto doc = Json::parse(to_json_text(sample_model()));
  doc["version"] = 999;
  EXPECT_NE(expect_format_error(doc.dump()).find("999"), std::string::npos);
}

TEST(ModelIo, RejectsTruncatedDocument) {
  const auto text = to_json_text(sample_model());
  EXPECT_NE(expect_format_error(text.substr(0, text.size() / 2)).find("malformed"), std::string::npos);
  EXPECT_FALSE(expect_format_error("[1,2]").empty());
}

TEST(ModelIo, MissingFieldIsNamed) {
  auto doc = Json::parse(to_json_text(sample_model()));
  doc["stages"]["donor"].erase("complement");
  EXPECT_NE(expect_format_error(doc.dump()).find("stages.donor.complement"), std::string::npos);

  doc = Json::parse(to_json_text(sample_model()));
  doc["training"].erase("seed");
  EXPECT_NE(expect_format_error(doc.dump()).find("training.seed"), std::string::npos);
}

TEST(ModelIo, UnknownFieldsWarn) {
  auto doc = Json::parse(to_json_text(sample_model()));
  doc["comment"] = "hand edited";
  doc["stages"]["acceptor"]["note"] = 1;
  std::vector<std::string> warnings;
  EXPECT_NO_THROW(load_model_text(doc.dump(), &warnings));
  ASSERT_EQ(warnings.size(), 2u);
  EXPECT_NE(warnings[0].find("comment"), std::string::npos);
  EXPECT_NE(warnings[1].find("stages.acceptor.note"), std::string::npos);
}

TEST(ModelIo, RejectsInvalidRule) {
  auto doc = Json::parse(to_json_text(sample_model()));
  doc["stages"]["donor"]["dependencies"][0] = Json::array({0, 2});
  EXPECT_THROW(load_model_text(doc.dump()), ModelFormatError);
}

TEST(ModelIo, CreatedStampOptional) {
  auto m = sample_model();
  m.metadata.created = "2024-01-01T00:00:00Z";
  EXPECT_EQ(load_model_text(to_json_text(m)).metadata.created, m.metadata.created);
}
