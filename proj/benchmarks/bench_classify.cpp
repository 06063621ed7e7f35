#include <benchmark/benchmark.h>

#include <fstream>
#include <vector>

#include "spliceca/classifier.hpp"
#include "spliceca/clonal.hpp"
#include "spliceca/random.hpp"
#include "spliceca/seqio.hpp"

namespace {

using namespace spliceca;

const std::vector<seqio::LabeledInstance>& dataset() {
  static const auto records = [] {
    std::ifstream in(SPLICECA_DATA_FILE);
    return seqio::parse_splice_records(in);
  }();
  return records;
}

const classifier::MacaCcTree& small_tree() {
  static const auto tree = [] {
    clonal::TrainerConfig cfg;
    cfg.population_size = 20;
    cfg.max_generations = 3;
    cfg.seed = 7;
    return clonal::train_tree(dataset(), seqio::FuzzyEncoder{}, cfg).tree;
  }();
  return tree;
}

void BM_Evolve(benchmark::State& state) {
  Rng rng(1);
  const auto rule = clonal::random_rule(seqio::kWindow, rng);
  const seqio::FuzzyEncoder enc;
  const auto config = enc.encode(dataset().front().sequence);
  fca::Evolver evolver(rule);
  std::vector<std::uint8_t> levels(seqio::kWindow);
  for (auto _ : state) {
    auto outcome = evolver.run(config.cells(), levels);
    benchmark::DoNotOptimize(outcome);
  }
}
BENCHMARK(BM_Evolve);

void BM_FitnessEvaluation(benchmark::State& state) {
  const auto set = classifier::TrainingSet::from_instances(
      dataset(), seqio::FuzzyEncoder{}, [](ClassLabel l) { return l == ClassLabel::kDonor; });
  Rng rng(2);
  const auto rule = clonal::random_rule(seqio::kWindow, rng);
  for (auto _ : state) {
    benchmark::DoNotOptimize(classifier::evaluate_fitness(rule, set, {}, classifier::FitnessMode::kLeaveOneOut));
  }
  state.SetItemsProcessed(state.iterations() * static_cast<std::int64_t>(set.size()));
}
BENCHMARK(BM_FitnessEvaluation)->Unit(benchmark::kMillisecond);

void BM_TreeClassify(benchmark::State& state) {
  classifier::TreeClassifier classify(small_tree());
  const auto& records = dataset();
  std::size_t i = 0;
  for (auto _ : state) {
    auto p = classify(records[i++ % records.size()].sequence);
    benchmark::DoNotOptimize(p);
  }
}
BENCHMARK(BM_TreeClassify)->Unit(benchmark::kMicrosecond);

}  // namespace

BENCHMARK_MAIN();
