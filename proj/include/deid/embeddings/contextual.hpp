#pragma once

#include <atomic>
#include <filesystem>
#include <functional>
#include <map>
#include <string>
#include <tuple>
#include <vector>

#include <Eigen/Dense>

#include "deid/corpus/document.hpp"

namespace deid::embeddings {

/// Precomputed per-token contextual vectors keyed by (doc_id, sentence, token).
class ContextualStore {
 public:
  using Key = std::tuple<std::string, std::size_t, std::size_t>;

  explicit ContextualStore(std::size_t dim = 0) : dim_(dim) {}
  ContextualStore(const ContextualStore& o) : dim_(o.dim_), vectors_(o.vectors_), missing_(o.missing_.load()) {}
  ContextualStore& operator=(const ContextualStore& o) {
    dim_ = o.dim_;
    vectors_ = o.vectors_;
    missing_ = o.missing_.load();
    return *this;
  }

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }

  /// Throws ConfigError on a width mismatch.
  void insert(const std::string& doc, std::size_t sentence, std::size_t token, Eigen::VectorXd v);

  /// Stored vector, or zeros (and a bump of missing_count) for an absent key.
  Eigen::VectorXd get(const std::string& doc, std::size_t sentence, std::size_t token) const;
  std::size_t missing_count() const { return missing_.load(); }

  const std::map<Key, Eigen::VectorXd>& entries() const { return vectors_; }

 private:
  std::size_t dim_;
  std::map<Key, Eigen::VectorXd> vectors_;
  mutable std::atomic<std::size_t> missing_{0};
};

/// JSON lines: {"doc": str, "s": int, "t": int, "v": [float x d]}.
ContextualStore load_contextual(const std::filesystem::path& path);
void write_contextual(const ContextualStore& store, const std::filesystem::path& path);

/// Stand-in for a contextual encoder: each token's vector blends its own word vector
/// (weight 0.6) with those of its left and right neighbours (0.2 each).
ContextualStore pseudo_contextual(const std::vector<corpus::Document>& docs, std::size_t dim,
                                  const std::function<std::vector<double>(std::string_view)>& word_vector);

}  // namespace deid::embeddings
