#pragma once

#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deid/corpus/document.hpp"
#include "deid/train/trainer.hpp"

namespace deid::train {

struct AblationVariant {
  std::string name;
  TrainConfig config;
};

/// full, no_contextual, no_word, no_char, no_pos, no_casing, naive_dropout: each
/// switches one thing off relative to `base`. Variants that would leave no
/// embedding source are omitted.
std::vector<AblationVariant> default_ablation_grid(const TrainConfig& base);

/// {"base": {train config}, "variants": [name | {"name": str, "overrides": {...}}]}.
/// Names from the default grid may be given as bare strings; "variants" defaults to
/// the whole default grid.
std::vector<AblationVariant> ablation_grid_from_json(const nlohmann::json& j, const TrainConfig& defaults = {});

struct AblationRow {
  std::string name;
  std::size_t input_dim = 0;
  std::size_t best_epoch = 0;
  std::size_t epochs_run = 0;
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;  // binary token F1 on the evaluation documents
};

/// One train + evaluation per variant. Every variant uses its own config seed
/// (the grid copies the base seed). Evaluation uses `test_docs` when non-empty,
/// otherwise each variant's validation split.
std::vector<AblationRow> run_ablation(const std::vector<AblationVariant>& grid, const std::vector<corpus::Document>& train_docs,
                                      const std::vector<corpus::Document>& test_docs, const EmbeddingSources& sources);

std::string ablation_table(const std::vector<AblationRow>& rows);
nlohmann::json to_json(const std::vector<AblationRow>& rows);

}  // namespace deid::train
