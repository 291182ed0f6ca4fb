#include "deid/train/config.hpp"

#include "deid/common/error.hpp"

namespace deid::train {

void TrainConfig::validate() const {
  if (max_epochs == 0) throw ConfigError("max_epochs must be positive");
  if (patience == 0 || patience > max_epochs)
    throw ConfigError("patience must be in [1, max_epochs], got " + std::to_string(patience));
  if (batch_size == 0) throw ConfigError("batch_size must be positive");
  if (!(dropout >= 0.0 && dropout < 1.0)) throw ConfigError("dropout must satisfy 0 <= p < 1");
  if (!(learning_rate > 0.0)) throw ConfigError("learning_rate must be positive");
  if (!(beta1 >= 0.0 && beta1 < 1.0) || !(beta2 >= 0.0 && beta2 < 1.0)) throw ConfigError("Adam betas must lie in [0, 1)");
  if (!(epsilon > 0.0)) throw ConfigError("epsilon must be positive");
  if (clip_norm < 0.0) throw ConfigError("clip_norm must be >= 0");
  if (!(validation_fraction >= 0.0 && validation_fraction < 1.0))
    throw ConfigError("validation_fraction must lie in [0, 1)");
  if (hidden == 0) throw ConfigError("hidden must be positive");
  if (use_char && (char_hidden == 0 || char_dim == 0)) throw ConfigError("char_hidden and char_dim must be positive");
  if (use_casing && casing_dim == 0) throw ConfigError("casing_dim must be positive");
  if (!(use_contextual || use_word || use_char || use_pos || use_casing))
    throw ConfigError("at least one embedding source must be enabled");
}

network::DropoutMode parse_dropout_mode(std::string_view s) {
  if (s == "variational") return network::DropoutMode::Variational;
  if (s == "naive") return network::DropoutMode::Naive;
  throw ConfigError("unknown dropout_mode \"" + std::string(s) + "\"");
}

std::string_view to_string(network::DropoutMode mode) {
  return mode == network::DropoutMode::Variational ? "variational" : "naive";
}

namespace {

template <class T>
void read(const nlohmann::json& j, const char* key, T& out) {
  if (auto it = j.find(key); it != j.end()) {
    try {
      out = it->get<T>();
    } catch (const nlohmann::json::exception&) {
      throw ConfigError(std::string("config key \"") + key + "\" has the wrong type");
    }
  }
}

}  // namespace

TrainConfig train_config_from_json(const nlohmann::json& j, TrainConfig c) {
  if (!j.is_object()) throw ConfigError("training config must be a JSON object");
  const nlohmann::json known = to_json(c);
  for (const auto& [key, _] : j.items())
    if (!known.contains(key)) throw ConfigError("unknown config key \"" + key + "\"");
  read(j, "max_epochs", c.max_epochs);
  read(j, "patience", c.patience);
  read(j, "batch_size", c.batch_size);
  read(j, "dropout", c.dropout);
  read(j, "seed", c.seed);
  read(j, "learning_rate", c.learning_rate);
  read(j, "beta1", c.beta1);
  read(j, "beta2", c.beta2);
  read(j, "epsilon", c.epsilon);
  read(j, "clip_norm", c.clip_norm);
  read(j, "validation_fraction", c.validation_fraction);
  read(j, "hidden", c.hidden);
  read(j, "char_hidden", c.char_hidden);
  read(j, "char_dim", c.char_dim);
  read(j, "casing_dim", c.casing_dim);
  read(j, "use_contextual", c.use_contextual);
  read(j, "use_word", c.use_word);
  read(j, "use_char", c.use_char);
  read(j, "use_pos", c.use_pos);
  read(j, "use_casing", c.use_casing);
  read(j, "input_dropout", c.input_dropout);
  read(j, "bio_constraints", c.bio_constraints);
  read(j, "word_vectors", c.word_vectors);
  read(j, "contextual", c.contextual);
  if (auto it = j.find("dropout_mode"); it != j.end()) {
    if (!it->is_string()) throw ConfigError("config key \"dropout_mode\" has the wrong type");
    c.dropout_mode = parse_dropout_mode(it->get<std::string>());
  }
  return c;
}

nlohmann::json to_json(const TrainConfig& c) {
  return {{"max_epochs", c.max_epochs},
          {"patience", c.patience},
          {"batch_size", c.batch_size},
          {"dropout", c.dropout},
          {"seed", c.seed},
          {"learning_rate", c.learning_rate},
          {"beta1", c.beta1},
          {"beta2", c.beta2},
          {"epsilon", c.epsilon},
          {"clip_norm", c.clip_norm},
          {"validation_fraction", c.validation_fraction},
          {"hidden", c.hidden},
          {"char_hidden", c.char_hidden},
          {"char_dim", c.char_dim},
          {"casing_dim", c.casing_dim},
          {"use_contextual", c.use_contextual},
          {"use_word", c.use_word},
          {"use_char", c.use_char},
          {"use_pos", c.use_pos},
          {"use_casing", c.use_casing},
          {"dropout_mode", to_string(c.dropout_mode)},
          {"input_dropout", c.input_dropout},
          {"bio_constraints", c.bio_constraints},
          {"word_vectors", c.word_vectors},
          {"contextual", c.contextual}};
}

}  // namespace deid::train
