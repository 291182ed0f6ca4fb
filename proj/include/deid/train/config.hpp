#pragma once

#include <cstdint>
#include <string>

#include <nlohmann/json.hpp>

#include "deid/network/dropout.hpp"

namespace deid::train {

struct TrainConfig {
  std::size_t max_epochs = 40;
  std::size_t patience = 5;    // epochs without validation improvement before stopping
  std::size_t batch_size = 8;  // sentences per optimizer step
  double dropout = 0.5;
  std::uint64_t seed = 0;

  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  double clip_norm = 0.0;  // 0 disables global-norm clipping
  double validation_fraction = 0.1;

  std::size_t hidden = 100;
  std::size_t char_hidden = 25;
  std::size_t char_dim = 25;
  std::size_t casing_dim = 20;

  bool use_contextual = true;
  bool use_word = true;
  bool use_char = true;
  bool use_pos = true;
  bool use_casing = true;
  network::DropoutMode dropout_mode = network::DropoutMode::Variational;
  bool input_dropout = false;
  bool bio_constraints = true;

  std::string word_vectors;  // GloVe text file
  std::string contextual;    // JSON-lines contextual vectors

  /// Throws ConfigError on a broken invariant.
  void validate() const;
  friend bool operator==(const TrainConfig&, const TrainConfig&) = default;
};

/// Keys mirror the field names; "dropout_mode" is "variational" or "naive".
/// Unknown keys are rejected. Missing keys keep the value from `base`.
TrainConfig train_config_from_json(const nlohmann::json& j, TrainConfig base = {});
nlohmann::json to_json(const TrainConfig& config);

network::DropoutMode parse_dropout_mode(std::string_view s);
std::string_view to_string(network::DropoutMode mode);

}  // namespace deid::train
