#pragma once

#include <vector>

#include <nlohmann/json.hpp>

#include "deid/corpus/document.hpp"
#include "deid/train/model.hpp"

namespace deid::train {

struct EpochRecord {
  std::size_t epoch = 0;     // 1-based
  double train_loss = 0.0;   // mean NLL per training sentence, with dropout
  double val_loss = 0.0;     // mean NLL per validation sentence, without dropout
  double val_precision = 0.0;
  double val_recall = 0.0;
  double val_f1 = 0.0;       // binary token F1
  friend bool operator==(const EpochRecord&, const EpochRecord&) = default;
};

struct TrainHistory {
  std::vector<EpochRecord> epochs;
  std::size_t best_epoch = 0;
  bool stopped_early = false;
  friend bool operator==(const TrainHistory&, const TrainHistory&) = default;
};

nlohmann::json to_json(const TrainHistory& history);

struct TrainingData {
  embeddings::CharVocab chars;
  corpus::TagSet tags;
  embeddings::InputLayout layout;
  std::vector<SentenceFeatures> train;
  std::vector<SentenceFeatures> validation;
};

/// Featurizes `docs` and holds out config.validation_fraction of the sentences
/// (at least one, drawn with the "split" stream) for validation. Vocabularies come
/// from all of `docs`.
TrainingData prepare_training_data(const TrainConfig& config, const std::vector<corpus::Document>& docs,
                                   const EmbeddingSources& sources);

struct TrainResult {
  ModelParams model;  // parameters of the best epoch
  TrainHistory history;
};

/// Adam over mini-batches of config.batch_size sentences, visiting the training
/// sentences in a fresh shuffled order each epoch. The kept model maximises
/// validation binary F1; equal F1 is broken by lower validation NLL. Training stops
/// after config.patience epochs without such an improvement, or at max_epochs.
/// Random streams "init", "shuffle" and "dropout" derive from config.seed.
/// Throws NumericError naming the epoch and sentence on a non-finite loss.
TrainResult train(const TrainConfig& config, const TrainingData& data);

struct Evaluation {
  double loss = 0.0;  // mean NLL
  double precision = 0.0;
  double recall = 0.0;
  double f1 = 0.0;
};

/// Binary token metrics and mean NLL over labelled sentences, without dropout.
Evaluation evaluate_sentences(const ModelParams& model, const std::vector<SentenceFeatures>& sentences);

}  // namespace deid::train
