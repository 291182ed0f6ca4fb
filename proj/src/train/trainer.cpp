#include "deid/train/trainer.hpp"

#include <cmath>
#include <limits>
#include <numeric>

#include <spdlog/spdlog.h>

#include "deid/common/error.hpp"
#include "deid/eval/metrics.hpp"

namespace deid::train {

nlohmann::json to_json(const TrainHistory& h) {
  nlohmann::json epochs = nlohmann::json::array();
  for (const auto& e : h.epochs)
    epochs.push_back({{"epoch", e.epoch},
                      {"train_loss", e.train_loss},
                      {"val_loss", e.val_loss},
                      {"val_precision", e.val_precision},
                      {"val_recall", e.val_recall},
                      {"val_f1", e.val_f1}});
  return {{"epochs", epochs}, {"best_epoch", h.best_epoch}, {"stopped_early", h.stopped_early}};
}

TrainingData prepare_training_data(const TrainConfig& config, const std::vector<corpus::Document>& docs,
                                   const EmbeddingSources& sources) {
  config.validate();
  TrainingData data;
  data.chars = embeddings::CharVocab::build(docs);
  data.tags = tag_set_for(docs);
  data.layout = layout_for(config, sources);
  std::vector<SentenceFeatures> all;
  for (const auto& d : docs) {
    auto f = featurize(d, data.layout, sources, &data.tags);
    std::move(f.begin(), f.end(), std::back_inserter(all));
  }
  if (all.size() < 2) throw ValidationError("training needs at least two sentences to hold one out for validation");

  std::vector<std::size_t> order(all.size());
  std::iota(order.begin(), order.end(), 0);
  Rng rng = make_stream(config.seed, "split");
  for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[uniform_index(rng, i + 1)]);
  auto n_val = static_cast<std::size_t>(std::round(config.validation_fraction * static_cast<double>(all.size())));
  n_val = std::clamp<std::size_t>(n_val, 1, all.size() - 1);
  std::vector<bool> is_val(all.size(), false);
  for (std::size_t i = 0; i < n_val; ++i) is_val[order[i]] = true;
  for (std::size_t i = 0; i < all.size(); ++i) (is_val[i] ? data.validation : data.train).push_back(std::move(all[i]));
  return data;
}

Evaluation evaluate_sentences(const ModelParams& model, const std::vector<SentenceFeatures>& sentences) {
  Evaluation ev;
  eval::ConfusionCounts counts;
  for (const auto& s : sentences) {
    ev.loss += sentence_nll(model, s);
    std::vector<corpus::BioTag> pred, gold;
    for (std::size_t k : predict_tags(model, s)) pred.push_back(model.tags.tag(k));
    for (std::size_t k : s.gold) gold.push_back(model.tags.tag(k));
    counts += eval::token_metrics(pred, gold, eval::MetricMode::Binary, s.id);
  }
  if (!sentences.empty()) ev.loss /= static_cast<double>(sentences.size());
  const eval::Scores sc = eval::score(counts.binary);
  ev.precision = sc.precision;
  ev.recall = sc.recall;
  ev.f1 = sc.f1;
  return ev;
}

TrainResult train(const TrainConfig& config, const TrainingData& data) {
  config.validate();
  if (data.train.empty() || data.validation.empty()) throw ValidationError("training and validation splits must be non-empty");

  Rng init_rng = make_stream(config.seed, "init");
  Rng shuffle_rng = make_stream(config.seed, "shuffle");
  Rng dropout_rng = make_stream(config.seed, "dropout");

  ModelParams model = init_model(config, data.layout, data.chars, data.tags, init_rng);
  ModelParams grads = zeros_like(model);
  const std::vector<NamedTensor> params = named_tensors(model);
  const std::vector<NamedTensor> grad_views = named_tensors(grads);
  AdamState adam;
  adam.learning_rate = config.learning_rate;
  adam.beta1 = config.beta1;
  adam.beta2 = config.beta2;
  adam.epsilon = config.epsilon;

  TrainResult result{model, {}};
  double best_f1 = -1.0;
  double best_val_loss = std::numeric_limits<double>::infinity();
  std::size_t stale = 0;

  std::vector<std::size_t> order(data.train.size());
  std::iota(order.begin(), order.end(), 0);
  for (std::size_t epoch = 1; epoch <= config.max_epochs; ++epoch) {
    for (std::size_t i = order.size() - 1; i > 0; --i) std::swap(order[i], order[uniform_index(shuffle_rng, i + 1)]);

    double total = 0.0;
    for (std::size_t begin = 0; begin < order.size(); begin += config.batch_size) {
      const std::size_t end = std::min(order.size(), begin + config.batch_size);
      for (const auto& g : grad_views) g.value->setZero();
      for (std::size_t i = begin; i < end; ++i) {
        const SentenceFeatures& s = data.train[order[i]];
        double loss;
        if (config.dropout > 0.0) {
          const network::VariationalMasks masks = draw_masks(model, s.tokens.size(), dropout_rng);
          loss = sentence_nll(model, s, &masks, &grads);
        } else {
          loss = sentence_nll(model, s, nullptr, &grads);
        }
        if (!std::isfinite(loss))
          throw NumericError("non-finite loss at epoch " + std::to_string(epoch) + ", sentence " + s.id);
        total += loss;
      }
      const double scale = 1.0 / static_cast<double>(end - begin);
      for (const auto& g : grad_views) *g.value *= scale;
      if (config.clip_norm > 0.0) clip_global_norm(grad_views, config.clip_norm);
      adam_step(params, grad_views, adam);
    }

    const Evaluation val = evaluate_sentences(model, data.validation);
    EpochRecord rec{epoch, total / static_cast<double>(order.size()), val.loss, val.precision, val.recall, val.f1};
    result.history.epochs.push_back(rec);
    spdlog::info("epoch {}: train loss {:.4f}, val loss {:.4f}, val P {:.4f} R {:.4f} F1 {:.4f}", epoch, rec.train_loss,
                 rec.val_loss, rec.val_precision, rec.val_recall, rec.val_f1);

    if (val.f1 > best_f1 || (val.f1 == best_f1 && val.loss < best_val_loss)) {
      best_f1 = val.f1;
      best_val_loss = val.loss;
      result.model = model;
      result.history.best_epoch = epoch;
      stale = 0;
    } else if (++stale >= config.patience) {
      result.history.stopped_early = true;
      break;
    }
  }
  return result;
}

}  // namespace deid::train
