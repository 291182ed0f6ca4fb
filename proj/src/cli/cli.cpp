#include "deid/cli/cli.hpp"

#include <filesystem>
#include <iostream>
#include <memory>
#include <optional>

#include <CLI11.hpp>
#include <spdlog/spdlog.h>

#include "deid/common/error.hpp"
#include "deid/common/log.hpp"
#include "deid/corpus/corpus_io.hpp"
#include "deid/corpus/surrogate.hpp"
#include "deid/corpus/synth.hpp"
#include "deid/eval/report.hpp"
#include "deid/train/ablation.hpp"
#include "deid/train/checkpoint.hpp"
#include "deid/train/grad_check.hpp"
#include "deid/train/trainer.hpp"

namespace deid::cli {

namespace fs = std::filesystem;

namespace {

nlohmann::json read_json(const fs::path& path) {
  if (!fs::exists(path)) throw ValidationError("file not found: " + path.string());
  try {
    return nlohmann::json::parse(corpus::read_file(path));
  } catch (const nlohmann::json::parse_error& e) {
    throw ParseError(path.string() + ": " + e.what());
  }
}

std::vector<corpus::Document> load_input(const fs::path& path, const std::string& format) {
  if (!fs::exists(path)) throw ValidationError("input not found: " + path.string());
  return corpus::load_corpus(path, corpus::parse_corpus_format(format));
}

/// Writes `text` to `out`, or to stdout when `out` is empty.
void emit(const std::string& out, const std::string& text) {
  if (out.empty()) {
    std::cout << text;
    std::cout.flush();
  } else {
    corpus::write_file(out, text);
  }
}

/// Paths inside a config file are taken relative to the file's directory.
std::string resolve(const std::string& path, const fs::path& base_dir) {
  if (path.empty()) return path;
  fs::path p(path);
  if (p.is_relative()) p = base_dir / p;
  return fs::absolute(p).lexically_normal().string();
}

struct LoadedSources {
  std::unique_ptr<embeddings::WordEmbeddingTable> words;
  std::unique_ptr<embeddings::ContextualStore> contextual;
  train::EmbeddingSources view() const { return {words.get(), contextual.get()}; }
};

LoadedSources load_sources(const train::TrainConfig& config) {
  LoadedSources s;
  if (config.use_word) {
    if (config.word_vectors.empty()) throw ConfigError("word vectors are enabled but no word_vectors path is set");
    if (!fs::exists(config.word_vectors)) throw ValidationError("word vector file not found: " + config.word_vectors);
    s.words = std::make_unique<embeddings::WordEmbeddingTable>(embeddings::load_word_embeddings(config.word_vectors));
  }
  if (config.use_contextual) {
    if (config.contextual.empty()) throw ConfigError("contextual vectors are enabled but no contextual path is set");
    if (!fs::exists(config.contextual)) throw ValidationError("contextual vector file not found: " + config.contextual);
    s.contextual = std::make_unique<embeddings::ContextualStore>(embeddings::load_contextual(config.contextual));
  }
  return s;
}

struct ConfigFlags {
  std::string config;
  std::optional<std::uint64_t> seed;
  std::string words, contextual;
  std::optional<std::size_t> max_epochs, patience;
  std::optional<double> dropout;

  void add(CLI::App* cmd, const std::string& config_flag, const std::string& config_help) {
    cmd->add_option(config_flag, config, config_help)->required(config_flag == "--grid");
    cmd->add_option("--seed", seed, "Random seed (overrides the config)");
    cmd->add_option("--words", words, "Word vector file (overrides the config)");
    cmd->add_option("--contextual", contextual, "Contextual vector file (overrides the config)");
    cmd->add_option("--max-epochs", max_epochs, "Maximum epochs");
    cmd->add_option("--patience", patience, "Early-stopping patience");
    cmd->add_option("--dropout", dropout, "Dropout probability");
  }

  /// Config from a JSON object whose relative paths are resolved against `dir`,
  /// then the flag overrides. A seed is required from one of the two.
  train::TrainConfig resolve_config(const nlohmann::json& body, const fs::path& dir) const {
    if (!seed && !(body.is_object() && body.contains("seed")))
      throw ConfigError("a seed is required: pass --seed or set \"seed\" in the config");
    train::TrainConfig c = train::train_config_from_json(body);
    c.word_vectors = resolve(c.word_vectors, dir);
    c.contextual = resolve(c.contextual, dir);
    apply(c);
    return c;
  }

  train::TrainConfig resolve_config() const {
    if (config.empty()) return resolve_config(nlohmann::json::object(), fs::current_path());
    return resolve_config(read_json(config), fs::path(config).parent_path());
  }

  void apply(train::TrainConfig& c) const {
    if (seed) c.seed = *seed;
    if (!words.empty()) c.word_vectors = fs::absolute(words).string();
    if (!contextual.empty()) c.contextual = fs::absolute(contextual).string();
    if (max_epochs) c.max_epochs = *max_epochs;
    if (patience) c.patience = *patience;
    if (dropout) c.dropout = *dropout;
    c.validate();
  }
};

int cmd_train(const ConfigFlags& flags, const std::string& corpus_path, const std::string& format, const std::string& out,
              std::string history_path) {
  const train::TrainConfig config = flags.resolve_config();
  const auto docs = load_input(corpus_path, format);
  const LoadedSources sources = load_sources(config);
  const train::TrainingData data = train::prepare_training_data(config, docs, sources.view());
  spdlog::info("training on {} sentences, validating on {}, input width {}", data.train.size(), data.validation.size(),
               data.layout.total());
  const train::TrainResult result = train::train(config, data);
  train::save_checkpoint(result.model, out);
  if (history_path.empty()) history_path = out + ".history.json";
  corpus::write_file(history_path, train::to_json(result.history).dump(2) + "\n");
  const auto& best = result.history.epochs[result.history.best_epoch - 1];
  spdlog::info("best epoch {} (validation F1 {:.4f}) of {}", result.history.best_epoch, best.val_f1,
               result.history.epochs.size());
  return kExitOk;
}

/// Loads a checkpoint plus the embedding files it names (or the overrides).
struct LoadedModel {
  train::ModelParams model;
  LoadedSources sources;
};

LoadedModel load_model(const std::string& path, const std::string& words, const std::string& contextual) {
  LoadedModel m{train::load_checkpoint(path), {}};
  if (!words.empty()) m.model.config.word_vectors = words;
  if (!contextual.empty()) m.model.config.contextual = contextual;
  m.sources = load_sources(m.model.config);
  if (m.model.layout.word > 0 && m.sources.words->dim() != m.model.layout.word)
    throw ConfigError("word vectors have width " + std::to_string(m.sources.words->dim()) + ", model expects " +
                      std::to_string(m.model.layout.word));
  if (m.model.layout.contextual > 0 && m.sources.contextual->dim() != m.model.layout.contextual)
    throw ConfigError("contextual vectors have width " + std::to_string(m.sources.contextual->dim()) +
                      ", model expects " + std::to_string(m.model.layout.contextual));
  return m;
}

/// One output file per document in a directory, or a single document as a file/stdout.
void write_per_document(const std::vector<std::pair<std::string, nlohmann::json>>& outputs, bool input_is_dir,
                        const std::string& out) {
  if (input_is_dir) {
    if (out.empty()) throw ConfigError("--out DIR is required when --in is a directory");
    fs::create_directories(out);
    for (const auto& [id, j] : outputs) corpus::write_file(fs::path(out) / (id + ".json"), j.dump(2) + "\n");
  } else if (outputs.size() == 1) {
    emit(out, outputs.front().second.dump(2) + "\n");
  } else {
    nlohmann::json all = nlohmann::json::array();
    for (const auto& [id, j] : outputs) all.push_back(j);
    emit(out, all.dump(2) + "\n");
  }
}

int cmd_tag(const std::string& model_path, const std::string& in, const std::string& format, const std::string& out,
            const std::string& words, const std::string& contextual) {
  const LoadedModel m = load_model(model_path, words, contextual);
  const auto docs = load_input(in, format);
  std::vector<std::pair<std::string, nlohmann::json>> outputs;
  for (const auto& d : docs)
    outputs.emplace_back(d.doc_id, corpus::document_to_json(d, train::tag_document(m.model, d, m.sources.view())));
  if (m.sources.contextual && m.sources.contextual->missing_count() > 0)
    spdlog::warn("{} tokens had no contextual vector and used zeros", m.sources.contextual->missing_count());
  write_per_document(outputs, fs::is_directory(in), out);
  return kExitOk;
}

int cmd_replace(const std::string& model_path, const std::string& in, const std::string& format, const std::string& out,
                std::uint64_t seed, const std::string& words, const std::string& contextual) {
  const LoadedModel m = load_model(model_path, words, contextual);
  const auto docs = load_input(in, format);
  std::vector<std::pair<std::string, nlohmann::json>> outputs;
  for (const auto& d : docs) {
    auto spans = train::tag_document(m.model, d, m.sources.view());
    outputs.emplace_back(d.doc_id, corpus::to_json(corpus::replace_phi(d, std::move(spans), seed)));
  }
  write_per_document(outputs, fs::is_directory(in), out);
  return kExitOk;
}

int cmd_eval(const std::string& pred, const std::string& gold, const std::string& mode, const std::string& format,
             const std::string& out, std::optional<double> min_f1) {
  const auto metric_mode = eval::parse_metric_mode(mode);
  const auto report_format = eval::parse_report_format(format);
  const auto predicted = load_input(pred, "native-json");
  const auto reference = load_input(gold, "native-json");
  const auto report = eval::finalize(eval::evaluate_documents(predicted, reference, metric_mode));
  emit(out, eval::emit_report(report, report_format));
  if (min_f1 && report.binary().scores.f1 < *min_f1) {
    spdlog::error("binary F1 {:.4f} is below --min-f1 {:.4f}", report.binary().scores.f1, *min_f1);
    return kExitThreshold;
  }
  return kExitOk;
}

int cmd_synth(const std::string& config_path, std::uint64_t seed, const std::string& out) {
  corpus::SynthConfig config = corpus::SynthConfig::standard();
  if (!config_path.empty()) config = corpus::synth_config_from_json(read_json(config_path));
  const auto docs = corpus::generate_synthetic(config, seed);
  const std::size_t n_test = static_cast<std::size_t>(config.test_fraction * static_cast<double>(docs.size()) + 0.5);
  const std::size_t n_train = docs.size() - std::min(n_test, docs.size());
  const fs::path dir(out);
  fs::create_directories(dir / "train");
  fs::create_directories(dir / "test");
  corpus::save_corpus({docs.begin(), docs.begin() + static_cast<std::ptrdiff_t>(n_train)}, dir / "train");
  corpus::save_corpus({docs.begin() + static_cast<std::ptrdiff_t>(n_train), docs.end()}, dir / "test");

  std::map<std::string, std::vector<double>> vectors;
  for (const auto& w : corpus::synthetic_vocabulary(docs))
    vectors.emplace(w, corpus::synthetic_word_vector(w, config.word_dim, seed));
  embeddings::write_word_embeddings(dir / "words.txt", vectors);
  const auto store = embeddings::pseudo_contextual(docs, config.contextual_dim, [&](std::string_view w) {
    return corpus::synthetic_word_vector(ascii_lower(w), config.contextual_dim, seed ^ 0x9e3779b97f4a7c15ULL);
  });
  embeddings::write_contextual(store, dir / "contextual.jsonl");

  train::TrainConfig tc;
  tc.seed = seed;
  tc.word_vectors = "words.txt";
  tc.contextual = "contextual.jsonl";
  corpus::write_file(dir / "train_config.json", train::to_json(tc).dump(2) + "\n");
  corpus::write_file(dir / "synth_config.json", corpus::to_json(config).dump(2) + "\n");
  spdlog::info("wrote {} training and {} test documents to {}", n_train, docs.size() - n_train, dir.string());
  return kExitOk;
}

int cmd_gradcheck(std::uint64_t seed, double epsilon, double threshold, double dropout, bool constraints,
                  const std::string& out) {
  train::ToyProblem toy = train::make_toy_problem(seed, constraints);
  std::vector<network::VariationalMasks> masks;
  if (dropout > 0.0) {
    toy.model.config.dropout = dropout;
    Rng rng = make_stream(seed, "dropout");
    for (const auto& s : toy.sentences) masks.push_back(train::draw_masks(toy.model, s.tokens.size(), rng));
  }
  const auto report = train::grad_check(toy.model, toy.sentences, epsilon, threshold, masks);
  emit(out, train::to_json(report).dump(2) + "\n");
  for (const auto& t : report.tensors)
    if (!t.passed) spdlog::error("gradient check failed for {}: relative error {:.3e}", t.name, t.relative_error);
  return report.passed() ? kExitOk : kExitThreshold;
}

int cmd_ablate(const ConfigFlags& flags, const std::string& corpus_path, const std::string& test_path,
               const std::string& format, const std::string& out, const std::string& report_format) {
  nlohmann::json grid_json = read_json(flags.config);
  const nlohmann::json base = grid_json.is_object() && grid_json.contains("base") ? grid_json.at("base") : nlohmann::json::object();
  const train::TrainConfig defaults = flags.resolve_config(base, fs::path(flags.config).parent_path());
  nlohmann::json grid_only = grid_json;
  if (grid_only.is_object()) grid_only.erase("base");
  const auto grid = train::ablation_grid_from_json(grid_only, defaults);

  train::TrainConfig union_config = defaults;
  for (const auto& v : grid) {
    union_config.use_word = union_config.use_word || v.config.use_word;
    union_config.use_contextual = union_config.use_contextual || v.config.use_contextual;
  }
  const LoadedSources sources = load_sources(union_config);
  const auto docs = load_input(corpus_path, format);
  const auto test = test_path.empty() ? std::vector<corpus::Document>{} : load_input(test_path, format);
  const auto rows = train::run_ablation(grid, docs, test, sources.view());
  emit(out, report_format == "json" ? train::to_json(rows).dump(2) + "\n" : train::ablation_table(rows));
  return kExitOk;
}

}  // namespace

int run(int argc, const char* const* argv) {
  init_logging();
  CLI::App app{"Clinical text de-identification with a character-aware Bi-LSTM-CRF tagger", "deid"};
  app.require_subcommand(1);

  ConfigFlags train_flags;
  std::string corpus_path, format = "native-json", out, history;
  auto* train_cmd = app.add_subcommand("train", "Train a tagger and write a checkpoint plus training history");
  train_flags.add(train_cmd, "--config", "Training config (JSON)");
  train_cmd->add_option("--corpus", corpus_path, "Training corpus file or directory")->required();
  train_cmd->add_option("--format", format, "Corpus format: native-json, i2b2-xml, plain-text");
  train_cmd->add_option("--out", out, "Checkpoint path")->required();
  train_cmd->add_option("--history", history, "History path (default: <out>.history.json)");

  std::string model, in, words, contextual;
  std::uint64_t seed = 0;
  auto* tag_cmd = app.add_subcommand("tag", "Predict PHI spans; writes native-json documents");
  tag_cmd->add_option("--model", model, "Checkpoint path")->required();
  tag_cmd->add_option("--in", in, "Input file or directory")->required();
  tag_cmd->add_option("--format", format, "Input format: native-json, i2b2-xml, plain-text");
  tag_cmd->add_option("--out", out, "Output file (directory when --in is one); default stdout");
  tag_cmd->add_option("--words", words, "Word vector file (overrides the checkpoint)");
  tag_cmd->add_option("--contextual", contextual, "Contextual vector file (overrides the checkpoint)");

  auto* replace_cmd = app.add_subcommand("replace", "Replace predicted PHI with surrogates");
  replace_cmd->add_option("--model", model, "Checkpoint path")->required();
  replace_cmd->add_option("--in", in, "Input file or directory")->required();
  replace_cmd->add_option("--format", format, "Input format: native-json, i2b2-xml, plain-text");
  replace_cmd->add_option("--seed", seed, "Surrogate seed")->required();
  replace_cmd->add_option("--out", out, "Output file (directory when --in is one); default stdout");
  replace_cmd->add_option("--words", words, "Word vector file (overrides the checkpoint)");
  replace_cmd->add_option("--contextual", contextual, "Contextual vector file (overrides the checkpoint)");

  std::string pred, gold, mode = "binary", report_format = "table";
  std::optional<double> min_f1;
  auto* eval_cmd = app.add_subcommand("eval", "Token-level precision, recall and F1 of predictions against gold");
  eval_cmd->add_option("--pred", pred, "Predicted native-json file or directory")->required();
  eval_cmd->add_option("--gold", gold, "Gold native-json file or directory")->required();
  eval_cmd->add_option("--mode", mode, "binary, type, hipaa or all");
  eval_cmd->add_option("--report-format", report_format, "table, json or csv");
  eval_cmd->add_option("--out", out, "Report path; default stdout");
  eval_cmd->add_option("--min-f1", min_f1, "Exit with status 4 when binary F1 is lower");

  std::string synth_config;
  auto* synth_cmd = app.add_subcommand("synth", "Generate a labelled synthetic corpus with companion vector files");
  synth_cmd->add_option("--config", synth_config, "Generator config (JSON); default: 8 PHI types");
  synth_cmd->add_option("--seed", seed, "Random seed")->required();
  synth_cmd->add_option("--out", out, "Output directory")->required();

  double epsilon = 1e-5, threshold = 1e-5, gc_dropout = 0.0;
  bool constraints = false;
  auto* gc_cmd = app.add_subcommand("gradcheck", "Compare analytic gradients with finite differences on a toy model");
  gc_cmd->add_option("--seed", seed, "Random seed")->required();
  gc_cmd->add_option("--epsilon", epsilon, "Finite-difference step");
  gc_cmd->add_option("--threshold", threshold, "Maximum relative error per tensor");
  gc_cmd->add_option("--dropout", gc_dropout, "Check with one fixed dropout mask draw per sentence");
  gc_cmd->add_flag("--bio-constraints", constraints, "Apply BIO transition constraints");
  gc_cmd->add_option("--out", out, "Report path; default stdout");

  ConfigFlags ablate_flags;
  std::string test_path;
  auto* ablate_cmd = app.add_subcommand("ablate", "Train and score one model per ablation variant");
  ablate_flags.add(ablate_cmd, "--grid", "Ablation grid (JSON): {\"base\": config, \"variants\": [...]}");
  ablate_cmd->add_option("--corpus", corpus_path, "Training corpus file or directory")->required();
  ablate_cmd->add_option("--test", test_path, "Held-out corpus; default: each variant's validation split");
  ablate_cmd->add_option("--format", format, "Corpus format: native-json, i2b2-xml, plain-text");
  ablate_cmd->add_option("--report-format", report_format, "table or json");
  ablate_cmd->add_option("--out", out, "Report path; default stdout");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitUsage;
  }

  try {
    if (*train_cmd) return cmd_train(train_flags, corpus_path, format, out, history);
    if (*tag_cmd) return cmd_tag(model, in, format, out, words, contextual);
    if (*replace_cmd) return cmd_replace(model, in, format, out, seed, words, contextual);
    if (*eval_cmd) return cmd_eval(pred, gold, mode, report_format, out, min_f1);
    if (*synth_cmd) return cmd_synth(synth_config, seed, out);
    if (*gc_cmd) return cmd_gradcheck(seed, epsilon, threshold, gc_dropout, constraints, out);
    if (*ablate_cmd) return cmd_ablate(ablate_flags, corpus_path, test_path, format, out, report_format);
  } catch (const ConfigError& e) {
    spdlog::error("{}", e.what());
    return kExitUsage;
  } catch (const NumericError& e) {
    spdlog::error("{}", e.what());
    return kExitNumeric;
  } catch (const Error& e) {
    spdlog::error("{}", e.what());
    return kExitData;
  } catch (const fs::filesystem_error& e) {
    spdlog::error("{}", e.what());
    return kExitData;
  }
  return kExitUsage;
}

}  // namespace deid::cli
