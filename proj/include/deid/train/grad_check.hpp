#pragma once

#include <memory>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "deid/corpus/document.hpp"
#include "deid/embeddings/contextual.hpp"
#include "deid/embeddings/word_table.hpp"
#include "deid/train/model.hpp"

namespace deid::train {

struct TensorCheck {
  std::string name;
  std::size_t size = 0;
  double max_abs_error = 0.0;
  /// max |analytic - numeric| / max(max |analytic|, max |numeric|); 0 when both vanish.
  double relative_error = 0.0;
  bool passed = false;
};

struct GradCheckReport {
  std::vector<TensorCheck> tensors;
  bool passed() const;
};

nlohmann::json to_json(const GradCheckReport& report);

/// Compares analytic gradients of the summed NLL over `sentences` with central
/// differences for every entry of every tensor. `masks` (one per sentence, or empty
/// for no dropout) stay fixed across all evaluations.
GradCheckReport grad_check(const ModelParams& model, const std::vector<SentenceFeatures>& sentences, double epsilon,
                           double threshold, const std::vector<network::VariationalMasks>& masks = {});

/// A toy problem: two synthetic sentences with one PHI type (3 tags), hidden size
/// 4, character LSTM 3+3 over 4-dim character vectors, 3-dim casing vectors and
/// small word/contextual tables, with random CRF scores. Owns its embedding tables.
struct ToyProblem {
  std::unique_ptr<embeddings::WordEmbeddingTable> words;
  std::unique_ptr<embeddings::ContextualStore> contextual;
  ModelParams model;
  std::vector<SentenceFeatures> sentences;
};

ToyProblem make_toy_problem(std::uint64_t seed, bool bio_constraints = false);

}  // namespace deid::train
