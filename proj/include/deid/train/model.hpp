#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

#include "deid/corpus/bio.hpp"
#include "deid/corpus/casing.hpp"
#include "deid/corpus/pos.hpp"
#include "deid/crf/crf.hpp"
#include "deid/embeddings/char_lstm.hpp"
#include "deid/embeddings/contextual.hpp"
#include "deid/embeddings/features.hpp"
#include "deid/embeddings/word_table.hpp"
#include "deid/network/bilstm.hpp"
#include "deid/network/projection.hpp"
#include "deid/train/adam.hpp"
#include "deid/train/config.hpp"

namespace deid::train {

/// Frozen lookups. A null source is only allowed when its component is disabled.
struct EmbeddingSources {
  const embeddings::WordEmbeddingTable* words = nullptr;
  const embeddings::ContextualStore* contextual = nullptr;
};

/// Component widths for a config: frozen widths come from the sources.
embeddings::InputLayout layout_for(const TrainConfig& config, const EmbeddingSources& sources);

struct ModelParams {
  TrainConfig config;
  embeddings::InputLayout layout;
  embeddings::CharVocab chars;
  corpus::TagSet tags;

  embeddings::CharLstmParams char_lstm;  // empty when use_char is off
  embeddings::FeatureTables features;    // empty when use_casing is off
  network::BiLstmParams encoder;
  network::ProjectionParams projection;
  crf::CrfParams crf;
};

/// Draw order from `rng`: char LSTM, casing table, encoder, projection. CRF scores
/// start at zero, with BIO-forbidden entries set when config.bio_constraints is on.
ModelParams init_model(const TrainConfig& config, const embeddings::InputLayout& layout, embeddings::CharVocab chars,
                       corpus::TagSet tags, Rng& rng);

/// Same vocabularies and shapes, every tensor zero.
ModelParams zeros_like(const ModelParams& model);

/// Every trainable tensor in a fixed order; disabled components are skipped.
std::vector<NamedTensor> named_tensors(ModelParams& model);

/// Per-sentence inputs that do not depend on trainable parameters.
struct SentenceFeatures {
  std::string id;  // "<doc_id>#<sentence>"
  std::vector<std::string> tokens;
  Eigen::MatrixXd frozen;  // (contextual + word) x T
  std::vector<corpus::CoarsePos> pos;
  std::vector<corpus::CasingCategory> casing;
  std::vector<std::size_t> gold;  // tag indices; empty for unlabeled text
};

/// One entry per sentence. With `tags`, gold spans are encoded; spans of a type
/// outside the tag set are treated as O.
std::vector<SentenceFeatures> featurize(const corpus::Document& doc, const embeddings::InputLayout& layout,
                                        const EmbeddingSources& sources, const corpus::TagSet* tags);

struct ForwardCache {
  std::vector<embeddings::CharCache> chars;
  network::BiLstmCache encoder;
  Eigen::MatrixXd hidden;     // 2h x T
  Eigen::MatrixXd emissions;  // T x K
};

/// Dropout masks for one sentence of length `steps`, following config.dropout,
/// dropout_mode and input_dropout.
network::VariationalMasks draw_masks(const ModelParams& model, std::size_t steps, Rng& rng);

Eigen::MatrixXd compute_emissions(const ModelParams& model, const SentenceFeatures& sentence,
                                  const network::VariationalMasks* masks = nullptr, ForwardCache* cache = nullptr);

/// CRF negative log-likelihood of the gold tags. With `grads`, adds the gradient of
/// the NLL with respect to every trainable tensor into it.
double sentence_nll(const ModelParams& model, const SentenceFeatures& sentence,
                    const network::VariationalMasks* masks = nullptr, ModelParams* grads = nullptr);

/// Viterbi tag indices without dropout.
std::vector<std::size_t> predict_tags(const ModelParams& model, const SentenceFeatures& sentence);

/// Predicted spans for a document.
std::vector<corpus::Span> tag_document(const ModelParams& model, const corpus::Document& doc,
                                       const EmbeddingSources& sources);

/// Tag types seen in the spans of `docs`.
corpus::TagSet tag_set_for(const std::vector<corpus::Document>& docs);

}  // namespace deid::train
