#pragma once

// Versioned JSON model documents.

#include <cstdint>
#include <istream>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <string>
#include <vector>

#include "spliceca/classifier.hpp"

namespace spliceca::model_io {

inline constexpr int kModelVersion = 1;

class ModelFormatError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

struct TrainingMetadata {
  std::uint64_t seed = 0;
  std::uint64_t donor_seed = 0;
  std::uint64_t acceptor_seed = 0;
  int donor_generations = 0;
  int acceptor_generations = 0;
  std::uint64_t training_records = 0;
  /// Free-form creation stamp; left empty so repeated runs write identical
  /// files unless the caller opts in.
  std::optional<std::string> created;

  friend bool operator==(const TrainingMetadata&, const TrainingMetadata&) = default;
};

struct StageInfo {
  std::string fitness_mode = "leave-one-out";

  friend bool operator==(const StageInfo&, const StageInfo&) = default;
};

struct Model {
  classifier::MacaCcTree tree;
  TrainingMetadata metadata;
  StageInfo donor_info;
  StageInfo acceptor_info;
};

/// Throws std::invalid_argument when the tree is not fitted.
void save_model(std::ostream& out, const Model& model);
std::string to_json_text(const Model& model);

/// Throws ModelFormatError on malformed input, a version other than
/// kModelVersion, or a missing field (the message names the field). Unknown
/// fields are reported through `warnings` and otherwise ignored.
Model load_model(std::istream& in, std::vector<std::string>* warnings = nullptr);
Model load_model_text(const std::string& text, std::vector<std::string>* warnings = nullptr);

}  // namespace spliceca::model_io
