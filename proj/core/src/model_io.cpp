#include "spliceca/model_io.hpp"

#include <initializer_list>
#include <sstream>

#include "json.hpp"

namespace spliceca::model_io {

using Json = nlohmann::ordered_json;

namespace {

constexpr const char* kFormatName = "spliceca-model";
constexpr char kSymbols[] = {'A', 'C', 'G', 'T', 'D', 'N', 'S', 'R'};

Json encode_stage(const classifier::FmacaChromosome& stage, const StageInfo& info) {
  const auto& rule = stage.rule();
  Json deps = Json::array();
  for (std::size_t i = 0; i < rule.length(); ++i) deps.push_back(rule.dependencies().dependencies(i));
  Json bits = Json::array();
  for (auto b : rule.complement().bits()) bits.push_back(static_cast<int>(b));
  Json basins = Json::array();
  for (const auto& [key, vote] : stage.basins()) basins.push_back(Json::array({key, vote.positive, vote.confidence}));

  Json j;
  j["dependencies"] = std::move(deps);
  j["complement"] = std::move(bits);
  j["fitness"] = stage.fitness();
  j["fitness_mode"] = info.fitness_mode;
  j["training_accuracy"] = stage.training_accuracy();
  j["basins"] = std::move(basins);
  return j;
}

class Reader {
 public:
  explicit Reader(std::vector<std::string>* warnings) : warnings_(warnings) {}

  const Json& require(const Json& obj, const char* key, const std::string& path) const {
    const auto full = path.empty() ? std::string(key) : path + "." + key;
    if (!obj.is_object() || !obj.contains(key)) {
      throw ModelFormatError("missing required field '" + full + "'");
    }
    return obj.at(key);
  }

  template <typename T>
  T get(const Json& obj, const char* key, const std::string& path) const {
    const auto& v = require(obj, key, path);
    try {
      return v.get<T>();
    } catch (const Json::exception&) {
      throw ModelFormatError("field '" + (path.empty() ? std::string(key) : path + "." + key) +
                             "' has the wrong type");
    }
  }

  void check_known(const Json& obj, std::initializer_list<const char*> known, const std::string& path) const {
    if (!obj.is_object()) throw ModelFormatError("field '" + path + "' must be an object");
    for (const auto& [key, value] : obj.items()) {
      bool ok = false;
      for (const char* k : known) ok = ok || key == k;
      if (!ok && warnings_) {
        warnings_->push_back("ignoring unknown field '" + (path.empty() ? key : path + "." + key) + "'");
      }
    }
  }

  classifier::FmacaChromosome stage(const Json& root, const char* name, StageInfo& info) const {
    const std::string path = std::string("stages.") + name;
    const auto& j = require(require(root, "stages", ""), name, "stages");
    check_known(j, {"dependencies", "complement", "fitness", "fitness_mode", "training_accuracy", "basins"}, path);

    const auto rows = get<std::vector<std::vector<std::size_t>>>(j, "dependencies", path);
    const auto bits = get<std::vector<std::uint8_t>>(j, "complement", path);
    const auto fitness = get<double>(j, "fitness", path);
    info.fitness_mode = get<std::string>(j, "fitness_mode", path);
    const auto accuracy = j.contains("training_accuracy") ? get<double>(j, "training_accuracy", path) : 0.0;

    classifier::BasinMap basins;
    const auto& entries = require(j, "basins", path);
    if (!entries.is_array()) throw ModelFormatError("field '" + path + ".basins' must be an array");
    for (const auto& e : entries) {
      if (!e.is_array() || e.size() != 3 || !e[0].is_string() || !e[1].is_boolean() || !e[2].is_number()) {
        throw ModelFormatError("field '" + path + ".basins' has a malformed entry");
      }
      basins.emplace(e[0].get<std::string>(), classifier::BasinVote{e[1].get<bool>(), e[2].get<double>()});
    }
    try {
      fca::CaRule rule(fca::DependencyMatrix::from_indices(rows), fca::ComplementVector(bits));
      return {std::move(rule), std::move(basins), fitness, accuracy};
    } catch (const std::invalid_argument& e) {
      throw ModelFormatError(path + ": " + e.what());
    }
  }

 private:
  std::vector<std::string>* warnings_;
};

}  // namespace

std::string to_json_text(const Model& model) {
  const auto& tree = model.tree;
  tree.validate();

  Json codes;
  for (std::size_t i = 0; i < seqio::kAlphabetSize; ++i) {
    codes[std::string(1, kSymbols[i])] = tree.encoder.codes()[i];
  }

  Json doc;
  doc["format"] = kFormatName;
  doc["version"] = kModelVersion;
  doc["window"] = seqio::kWindow;
  doc["encoder"] = {{"levels", tree.encoder.levels()}, {"codes", std::move(codes)}};
  doc["evolution"] = {{"max_steps", tree.evolution.max_steps},
                      {"epsilon", tree.evolution.epsilon},
                      {"quant_levels", tree.evolution.quant_levels}};
  doc["stages"]["donor"] = encode_stage(tree.donor_stage, model.donor_info);
  doc["stages"]["acceptor"] = encode_stage(tree.acceptor_stage, model.acceptor_info);

  const auto& meta = model.metadata;
  Json training = {{"seed", meta.seed},
                   {"donor_seed", meta.donor_seed},
                   {"acceptor_seed", meta.acceptor_seed},
                   {"generations", {{"donor", meta.donor_generations}, {"acceptor", meta.acceptor_generations}}},
                   {"records", meta.training_records}};
  if (meta.created) training["created"] = *meta.created;
  doc["training"] = std::move(training);
  return doc.dump(1) + "\n";
}

void save_model(std::ostream& out, const Model& model) { out << to_json_text(model); }

Model load_model_text(const std::string& text, std::vector<std::string>* warnings) {
  Json doc;
  try {
    doc = Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw ModelFormatError(std::string("malformed model document: ") + e.what());
  }
  Reader r(warnings);
  if (!doc.is_object()) throw ModelFormatError("model document must be a JSON object");

  const auto version = r.get<int>(doc, "version", "");
  if (version != kModelVersion) {
    throw ModelFormatError("unsupported model version " + std::to_string(version) + " (expected " +
                           std::to_string(kModelVersion) + ")");
  }
  r.check_known(doc, {"format", "version", "window", "encoder", "evolution", "stages", "training"}, "");
  if (r.get<std::string>(doc, "format", "") != kFormatName) {
    throw ModelFormatError("field 'format' is not '" + std::string(kFormatName) + "'");
  }
  if (r.get<std::size_t>(doc, "window", "") != seqio::kWindow) {
    throw ModelFormatError("field 'window' must be " + std::to_string(seqio::kWindow));
  }

  Model model;
  const auto& enc = r.require(doc, "encoder", "");
  r.check_known(enc, {"levels", "codes"}, "encoder");
  const auto& codes_json = r.require(enc, "codes", "encoder");
  r.check_known(codes_json, {"A", "C", "G", "T", "D", "N", "S", "R"}, "encoder.codes");
  std::array<double, seqio::kAlphabetSize> codes{};
  for (std::size_t i = 0; i < seqio::kAlphabetSize; ++i) {
    const std::string sym(1, kSymbols[i]);
    codes[i] = r.get<double>(codes_json, sym.c_str(), "encoder.codes");
  }

  const auto& evo = r.require(doc, "evolution", "");
  r.check_known(evo, {"max_steps", "epsilon", "quant_levels"}, "evolution");
  fca::EvolutionParams params;
  params.max_steps = r.get<int>(evo, "max_steps", "evolution");
  params.epsilon = r.get<double>(evo, "epsilon", "evolution");
  params.quant_levels = r.get<int>(evo, "quant_levels", "evolution");

  r.check_known(r.require(doc, "stages", ""), {"donor", "acceptor"}, "stages");
  auto donor = r.stage(doc, "donor", model.donor_info);
  auto acceptor = r.stage(doc, "acceptor", model.acceptor_info);

  const auto& training = r.require(doc, "training", "");
  r.check_known(training, {"seed", "donor_seed", "acceptor_seed", "generations", "records", "created"}, "training");
  auto& meta = model.metadata;
  meta.seed = r.get<std::uint64_t>(training, "seed", "training");
  meta.donor_seed = r.get<std::uint64_t>(training, "donor_seed", "training");
  meta.acceptor_seed = r.get<std::uint64_t>(training, "acceptor_seed", "training");
  const auto& gens = r.require(training, "generations", "training");
  r.check_known(gens, {"donor", "acceptor"}, "training.generations");
  meta.donor_generations = r.get<int>(gens, "donor", "training.generations");
  meta.acceptor_generations = r.get<int>(gens, "acceptor", "training.generations");
  meta.training_records = r.get<std::uint64_t>(training, "records", "training");
  if (training.contains("created")) meta.created = r.get<std::string>(training, "created", "training");

  try {
    model.tree = {std::move(donor), std::move(acceptor),
                  seqio::FuzzyEncoder(r.get<int>(enc, "levels", "encoder"), codes), params};
    model.tree.validate();
  } catch (const std::invalid_argument& e) {
    throw ModelFormatError(std::string("invalid model: ") + e.what());
  }
  return model;
}

Model load_model(std::istream& in, std::vector<std::string>* warnings) {
  std::ostringstream buf;
  buf << in.rdbuf();
  return load_model_text(buf.str(), warnings);
}

}  // namespace spliceca::model_io
