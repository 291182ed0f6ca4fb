#pragma once

#include <string_view>
#include <unordered_map>
#include <vector>

#include <Eigen/Dense>

#include "deid/corpus/document.hpp"
#include "deid/network/lstm.hpp"

namespace deid::embeddings {

inline constexpr std::size_t kMaxTokenChars = 25;

/// Character inventory frozen at training time. Id 0 is the unknown character.
class CharVocab {
 public:
  CharVocab() = default;
  explicit CharVocab(std::vector<char32_t> chars);

  static CharVocab build(const std::vector<corpus::Document>& docs);

  std::size_t size() const { return chars_.size() + 1; }
  std::size_t id(char32_t c) const;
  const std::vector<char32_t>& chars() const { return chars_; }

  friend bool operator==(const CharVocab& a, const CharVocab& b) { return a.chars_ == b.chars_; }

 private:
  std::vector<char32_t> chars_;  // sorted
  std::unordered_map<char32_t, std::size_t> index_;
};

/// Character embeddings plus a forward and a backward LSTM; the token embedding is
/// [last forward state ; last backward state].
struct CharLstmParams {
  Eigen::MatrixXd table;  // d_char x |vocab|
  network::LstmParams forward;
  network::LstmParams backward;

  std::size_t output_dim() const { return forward.hidden() + backward.hidden(); }

  static CharLstmParams zeros(std::size_t vocab_size, std::size_t char_dim, std::size_t hidden);
  static CharLstmParams init(std::size_t vocab_size, std::size_t char_dim, std::size_t hidden, Rng& rng);
};

struct CharCache {
  std::vector<std::size_t> ids;
  network::LstmCache forward, backward;
};

/// Truncates to kMaxTokenChars scalars. An empty token yields zeros.
Eigen::VectorXd char_embed_forward(const CharLstmParams& params, const CharVocab& vocab, std::string_view token,
                                   CharCache* cache = nullptr);

/// Adds this token's gradients into `grads` (same shapes as params).
void char_embed_backward(const CharLstmParams& params, const CharCache& cache, const Eigen::VectorXd& grad_output,
                         CharLstmParams& grads);

}  // namespace deid::embeddings
