#pragma once

#include <fstream>
#include <vector>

#include "spliceca/clonal.hpp"
#include "spliceca/seqio.hpp"

namespace fixtures {

inline const std::vector<spliceca::seqio::LabeledInstance>& uci() {
  static const auto records = [] {
    std::ifstream in(SPLICECA_DATA_FILE);
    return spliceca::seqio::parse_splice_records(in);
  }();
  return records;
}

/// Small tree trained on a slice of the dataset; cheap enough for unit tests.
inline const spliceca::clonal::TreeTraining& small_tree() {
  static const auto trained = [] {
    spliceca::clonal::TrainerConfig cfg;
    cfg.population_size = 20;
    cfg.max_generations = 3;
    cfg.seed = 7;
    cfg.threads = 1;
    const auto split = spliceca::seqio::stratified_split(uci(), 0.8, 3);
    return spliceca::clonal::train_tree(split.train, spliceca::seqio::FuzzyEncoder{}, cfg);
  }();
  return trained;
}

}  // namespace fixtures
