#include "deid/train/checkpoint.hpp"

#include "deid/common/error.hpp"
#include "deid/corpus/corpus_io.hpp"

namespace deid::train {

namespace {

nlohmann::json tensor_to_json(const Eigen::MatrixXd& m) {
  std::vector<double> data;
  data.reserve(static_cast<std::size_t>(m.size()));
  for (Eigen::Index r = 0; r < m.rows(); ++r)
    for (Eigen::Index c = 0; c < m.cols(); ++c) data.push_back(m(r, c));
  return {{"rows", m.rows()}, {"cols", m.cols()}, {"data", data}};
}

void tensor_from_json(const nlohmann::json& j, const std::string& name, Eigen::MatrixXd& out) {
  const auto rows = j.at("rows").get<Eigen::Index>();
  const auto cols = j.at("cols").get<Eigen::Index>();
  if (rows != out.rows() || cols != out.cols())
    throw ParseError("checkpoint tensor " + name + " has shape " + std::to_string(rows) + "x" + std::to_string(cols) +
                     ", expected " + std::to_string(out.rows()) + "x" + std::to_string(out.cols()));
  const auto& data = j.at("data");
  if (static_cast<Eigen::Index>(data.size()) != rows * cols)
    throw ParseError("checkpoint tensor " + name + " has the wrong number of values");
  std::size_t k = 0;
  for (Eigen::Index r = 0; r < rows; ++r)
    for (Eigen::Index c = 0; c < cols; ++c) out(r, c) = data[k++].get<double>();
}

}  // namespace

nlohmann::json checkpoint_to_json(const ModelParams& model) {
  ModelParams m = model;
  nlohmann::json tensors = nlohmann::json::object();
  for (const auto& t : named_tensors(m)) tensors[t.name] = tensor_to_json(*t.value);
  std::vector<std::string> types;
  for (auto t : model.tags.types()) types.emplace_back(corpus::to_string(t));
  std::vector<std::uint32_t> chars(model.chars.chars().begin(), model.chars.chars().end());
  const auto& l = model.layout;
  return {{"format_version", kCheckpointVersion},
          {"config", to_json(model.config)},
          {"layout",
           {{"contextual", l.contextual}, {"word", l.word}, {"character", l.character}, {"pos", l.pos}, {"casing", l.casing}}},
          {"tag_types", types},
          {"chars", chars},
          {"tensors", tensors}};
}

ModelParams checkpoint_from_json(const nlohmann::json& j) {
  try {
    if (j.at("format_version").get<int>() != kCheckpointVersion)
      throw ParseError("unsupported checkpoint format_version " + j.at("format_version").dump());
    const TrainConfig config = train_config_from_json(j.at("config"));
    const auto& jl = j.at("layout");
    embeddings::InputLayout layout;
    layout.contextual = jl.at("contextual").get<std::size_t>();
    layout.word = jl.at("word").get<std::size_t>();
    layout.character = jl.at("character").get<std::size_t>();
    layout.pos = jl.at("pos").get<std::size_t>();
    layout.casing = jl.at("casing").get<std::size_t>();
    std::vector<corpus::PhiType> types;
    for (const auto& s : j.at("tag_types")) {
      auto t = corpus::parse_phi_type(s.get<std::string>());
      if (!t) throw ParseError("checkpoint names unknown PHI type " + s.dump());
      types.push_back(*t);
    }
    std::vector<char32_t> chars;
    for (const auto& c : j.at("chars")) chars.push_back(static_cast<char32_t>(c.get<std::uint32_t>()));

    // Shapes come from a fresh initialisation; values are then overwritten.
    Rng scratch(0);
    ModelParams m = init_model(config, layout, embeddings::CharVocab(chars), corpus::TagSet(types), scratch);
    const auto& tensors = j.at("tensors");
    for (const auto& t : named_tensors(m)) {
      if (!tensors.contains(t.name)) throw ParseError("checkpoint is missing tensor " + t.name);
      tensor_from_json(tensors.at(t.name), t.name, *t.value);
    }
    return m;
  } catch (const nlohmann::json::exception& e) {
    throw ParseError(std::string("malformed checkpoint: ") + e.what());
  }
}

void save_checkpoint(const ModelParams& model, const std::filesystem::path& path) {
  corpus::write_file(path, checkpoint_to_json(model).dump());
}

ModelParams load_checkpoint(const std::filesystem::path& path) {
  if (!std::filesystem::exists(path)) throw ValidationError("model file not found: " + path.string());
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(corpus::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
  return checkpoint_from_json(j);
}

}  // namespace deid::train
