#pragma once

#include <filesystem>

#include <nlohmann/json.hpp>

#include "deid/train/model.hpp"

namespace deid::train {

inline constexpr int kCheckpointVersion = 1;

/// Config, input layout, character vocabulary, tag types and every tensor as a
/// row-major array. Doubles are written in shortest round-trip form, so a load
/// reproduces the parameters bit for bit.
nlohmann::json checkpoint_to_json(const ModelParams& model);
ModelParams checkpoint_from_json(const nlohmann::json& j);

void save_checkpoint(const ModelParams& model, const std::filesystem::path& path);
/// Throws ValidationError naming the path when it does not exist, ParseError when
/// it is malformed.
ModelParams load_checkpoint(const std::filesystem::path& path);

}  // namespace deid::train
