#include "deid/train/ablation.hpp"

#include <algorithm>
#include <cstdio>

#include <spdlog/spdlog.h>

#include "deid/common/error.hpp"
#include "deid/eval/report.hpp"

namespace deid::train {

std::vector<AblationVariant> default_ablation_grid(const TrainConfig& base) {
  std::vector<AblationVariant> grid{{"full", base}};
  auto off = [&](const char* name, bool TrainConfig::*flag) {
    TrainConfig c = base;
    c.*flag = false;
    bool any = c.use_contextual || c.use_word || c.use_char || c.use_pos || c.use_casing;
    if (base.*flag && any) grid.push_back({name, c});
  };
  off("no_contextual", &TrainConfig::use_contextual);
  off("no_word", &TrainConfig::use_word);
  off("no_char", &TrainConfig::use_char);
  off("no_pos", &TrainConfig::use_pos);
  off("no_casing", &TrainConfig::use_casing);
  TrainConfig naive = base;
  naive.dropout_mode = network::DropoutMode::Naive;
  grid.push_back({"naive_dropout", naive});
  return grid;
}

std::vector<AblationVariant> ablation_grid_from_json(const nlohmann::json& j, const TrainConfig& defaults) {
  if (!j.is_object()) throw ConfigError("ablation grid must be a JSON object");
  for (const auto& [key, _] : j.items())
    if (key != "base" && key != "variants") throw ConfigError("unknown ablation grid key \"" + key + "\"");
  const TrainConfig base = j.contains("base") ? train_config_from_json(j.at("base"), defaults) : defaults;
  const auto standard = default_ablation_grid(base);
  if (!j.contains("variants")) return standard;

  std::vector<AblationVariant> grid;
  for (const auto& v : j.at("variants")) {
    if (v.is_string()) {
      const auto name = v.get<std::string>();
      auto it = std::find_if(standard.begin(), standard.end(), [&](const AblationVariant& a) { return a.name == name; });
      if (it == standard.end()) throw ConfigError("unknown ablation variant \"" + name + "\"");
      grid.push_back(*it);
    } else if (v.is_object() && v.contains("name") && v.at("name").is_string()) {
      const nlohmann::json overrides = v.value("overrides", nlohmann::json::object());
      grid.push_back({v.at("name").get<std::string>(), train_config_from_json(overrides, base)});
    } else {
      throw ConfigError("ablation variant must be a name or {\"name\", \"overrides\"}");
    }
  }
  for (const auto& g : grid) g.config.validate();
  return grid;
}

std::vector<AblationRow> run_ablation(const std::vector<AblationVariant>& grid, const std::vector<corpus::Document>& train_docs,
                                      const std::vector<corpus::Document>& test_docs, const EmbeddingSources& sources) {
  std::vector<AblationRow> rows;
  for (const auto& variant : grid) {
    spdlog::info("ablation: training variant {}", variant.name);
    const TrainingData data = prepare_training_data(variant.config, train_docs, sources);
    const TrainResult result = train(variant.config, data);
    AblationRow row;
    row.name = variant.name;
    row.input_dim = data.layout.total();
    row.best_epoch = result.history.best_epoch;
    row.epochs_run = result.history.epochs.size();
    if (!test_docs.empty()) {
      std::vector<corpus::Document> predicted;
      for (const auto& d : test_docs) {
        corpus::Document p = d;
        p.spans = tag_document(result.model, d, sources);
        predicted.push_back(std::move(p));
      }
      const auto s = eval::score(eval::evaluate_documents(predicted, test_docs, eval::MetricMode::Binary).binary);
      row.precision = s.precision;
      row.recall = s.recall;
      row.f1 = s.f1;
    } else {
      const auto& best = result.history.epochs[result.history.best_epoch - 1];
      row.precision = best.val_precision;
      row.recall = best.val_recall;
      row.f1 = best.val_f1;
    }
    rows.push_back(row);
  }
  return rows;
}

std::string ablation_table(const std::vector<AblationRow>& rows) {
  std::string out;
  char line[160];
  std::snprintf(line, sizeof line, "%-16s %6s %6s %6s %10s %10s %10s\n", "Variant", "d_in", "Best", "Epochs", "Precision",
                "Recall", "F1");
  out += line;
  for (const auto& r : rows) {
    std::snprintf(line, sizeof line, "%-16s %6zu %6zu %6zu %10.4f %10.4f %10.4f\n", r.name.c_str(), r.input_dim,
                  r.best_epoch, r.epochs_run, r.precision, r.recall, r.f1);
    out += line;
  }
  return out;
}

nlohmann::json to_json(const std::vector<AblationRow>& rows) {
  nlohmann::json out = nlohmann::json::array();
  for (const auto& r : rows)
    out.push_back({{"variant", r.name},
                   {"input_dim", r.input_dim},
                   {"best_epoch", r.best_epoch},
                   {"epochs_run", r.epochs_run},
                   {"precision", r.precision},
                   {"recall", r.recall},
                   {"f1", r.f1}});
  return out;
}

}  // namespace deid::train
