#pragma once

#include <filesystem>
#include <map>
#include <string>
#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

namespace deid::embeddings {

/// Fixed pre-trained word vectors with an UNK fallback (componentwise mean of the vocabulary).
class WordEmbeddingTable {
 public:
  WordEmbeddingTable() = default;
  /// Throws ConfigError on an empty vocabulary or inconsistent widths.
  WordEmbeddingTable(std::size_t dim, std::unordered_map<std::string, Eigen::VectorXd> vectors);

  std::size_t dim() const { return dim_; }
  std::size_t size() const { return vectors_.size(); }
  bool contains(std::string_view word) const { return vectors_.count(std::string(word)) > 0; }

  /// Exact match, then ASCII-lowercased match, then UNK.
  const Eigen::VectorXd& lookup(std::string_view token) const;
  const Eigen::VectorXd& unk() const { return unk_; }

 private:
  std::size_t dim_ = 0;
  std::unordered_map<std::string, Eigen::VectorXd> vectors_;
  Eigen::VectorXd unk_;
};

/// GloVe text format: "token f1 ... fd" per line. The first line fixes d. Blank lines
/// are skipped; the first occurrence of a repeated token wins.
WordEmbeddingTable load_word_embeddings(const std::filesystem::path& path);

void write_word_embeddings(const std::filesystem::path& path, const std::map<std::string, std::vector<double>>& vectors);

}  // namespace deid::embeddings
