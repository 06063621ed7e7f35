#include <gtest/gtest.h>

#include <filesystem>
#include <fstream>
#include <regex>
#include <sstream>

#include <unistd.h>

#include "cli.hpp"
#include "fixtures.hpp"
#include "spliceca/model_io.hpp"

namespace fs = std::filesystem;
using namespace spliceca;

namespace {

struct Result {
  int status;
  std::string out;
  std::string err;
};

Result run(const std::vector<std::string>& args) {
  std::ostringstream out, err;
  const int status = cli::run(args, out, err);
  return {status, out.str(), err.str()};
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  return {std::istreambuf_iterator<char>(in), {}};
}

class CliTest : public ::testing::Test {
 protected:
  static void SetUpTestSuite() {
    dir_ = fs::temp_directory_path() / ("spliceca_cli_" + std::to_string(::getpid()));
    fs::create_directories(dir_);
    // A 400-record slice keeps training quick.
    std::vector<seqio::LabeledInstance> slice;
    for (std::size_t i = 0; i < fixtures::uci().size(); i += 8) slice.push_back(fixtures::uci()[i]);
    std::ofstream data(dir_ / "slice.data");
    seqio::write_splice_records(data, slice);
    data.close();
    const auto r = run(train_args(dir_ / "model.json", 1));
    ASSERT_EQ(r.status, 0) << r.err;
  }
  static void TearDownTestSuite() { fs::remove_all(dir_); }

  static std::vector<std::string> train_args(const fs::path& out, int threads) {
    return {"train", "--data", (dir_ / "slice.data").string(), "--out", out.string(), "--seed", "5",
            "--population", "12", "--gmax", "2", "--threads", std::to_string(threads), "-q"};
  }

  static fs::path dir_;
};

fs::path CliTest::dir_;

}  // namespace

TEST_F(CliTest, TrainIsByteReproducible) {
  ASSERT_EQ(run(train_args(dir_ / "again.json", 3)).status, 0);
  EXPECT_EQ(slurp(dir_ / "model.json"), slurp(dir_ / "again.json"));
}

TEST_F(CliTest, TrainReportsStages) {
  const auto r = run(train_args(dir_ / "third.json", 1));
  EXPECT_NE(r.out.find("donor\tfitness="), std::string::npos);
  EXPECT_NE(r.out.find("acceptor\tfitness="), std::string::npos);
  EXPECT_TRUE(r.err.empty());
}

TEST_F(CliTest, PredictSequence) {
  const auto seq = seqio::to_string(fixtures::uci()[0].sequence);
  const auto r = run({"predict", "--model", (dir_ / "model.json").string(), "--seq", seq});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_TRUE(std::regex_match(r.out, std::regex("(Donor|Acceptor|Neither)\t[01]\\.\\d{4}\n"))) << r.out;
}

TEST_F(CliTest, PredictFastaAndRejectsShortWindow) {
  {
    std::ofstream fa(dir_ / "w.fa");
    fa << ">w1\n" << seqio::to_string(fixtures::uci()[1].sequence) << "\n>w2\n"
       << seqio::to_string(fixtures::uci()[2].sequence) << "\n";
  }
  auto r = run({"predict", "--model", (dir_ / "model.json").string(), "--file", (dir_ / "w.fa").string()});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.rfind("w1\t", 0), 0u);
  EXPECT_NE(r.out.find("\nw2\t"), std::string::npos);

  r = run({"predict", "--model", (dir_ / "model.json").string(), "--seq", "ACGT"});
  EXPECT_NE(r.status, 0);
  EXPECT_NE(r.err.find("error:"), std::string::npos);
}

TEST_F(CliTest, EvalOnTrainingPartitionMatchesStoredAccuracy) {
  std::ifstream in(dir_ / "model.json");
  const auto model = model_io::load_model(in);
  const auto r = run({"eval", "--model", (dir_ / "model.json").string(), "--data",
                      (dir_ / "slice.data").string(), "--partition", "train"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("MACA-CC donor (measured)"), std::string::npos);

  // Donor-vs-rest accuracy on the training partition is the stage's resubstitution accuracy.
  std::smatch m;
  ASSERT_TRUE(std::regex_search(r.out, m, std::regex("donor\tTP=(\\d+)\tFP=(\\d+)\tTN=(\\d+)\tFN=(\\d+)")));
  const double tp = std::stod(m[1]), fp = std::stod(m[2]), tn = std::stod(m[3]), fn = std::stod(m[4]);
  EXPECT_DOUBLE_EQ((tp + tn) / (tp + fp + tn + fn), model.tree.donor_stage.training_accuracy());
}

TEST_F(CliTest, ScanAndBench) {
  {
    std::ofstream fa(dir_ / "g.fa");
    fa << ">g\n" << seqio::to_string(fixtures::uci()[3].sequence) << seqio::to_string(fixtures::uci()[4].sequence)
       << "\n";
  }
  auto r = run({"scan", "--model", (dir_ / "model.json").string(), "--fasta", (dir_ / "g.fa").string(),
                "--threshold", "0"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_EQ(r.out.rfind("Sequence: g (120 bp)", 0), 0u);

  r = run({"bench", "--model", (dir_ / "model.json").string(), "--data", (dir_ / "slice.data").string(),
           "--reps", "1", "--limit", "10"});
  ASSERT_EQ(r.status, 0) << r.err;
  EXPECT_NE(r.out.find("predictions\t10"), std::string::npos) << r.out;
}

TEST(Cli, UsageErrors) {
  EXPECT_NE(run({}).status, 0);
  EXPECT_NE(run({"frobnicate"}).status, 0);
  EXPECT_NE(run({"train", "--data", "x"}).status, 0);
  const auto missing = run({"eval", "--model", "/nonexistent/m.json", "--data", "/nonexistent/d"});
  EXPECT_EQ(missing.status, 1);
  EXPECT_NE(missing.err.find("cannot open"), std::string::npos);
  EXPECT_EQ(run({"--help"}).status, 0);
}
