#include "deid/embeddings/char_lstm.hpp"

#include <algorithm>
#include <cmath>
#include <set>

#include "deid/common/error.hpp"
#include "deid/common/text.hpp"

namespace deid::embeddings {

CharVocab::CharVocab(std::vector<char32_t> chars) : chars_(std::move(chars)) {
  std::sort(chars_.begin(), chars_.end());
  chars_.erase(std::unique(chars_.begin(), chars_.end()), chars_.end());
  for (std::size_t i = 0; i < chars_.size(); ++i) index_.emplace(chars_[i], i + 1);
}

CharVocab CharVocab::build(const std::vector<corpus::Document>& docs) {
  std::set<char32_t> seen;
  for (const auto& d : docs)
    for (const auto& s : d.sentences)
      for (const auto& t : s)
        for (char32_t c : d.text.substr(t.start, t.end - t.start)) seen.insert(c);
  return CharVocab(std::vector<char32_t>(seen.begin(), seen.end()));
}

std::size_t CharVocab::id(char32_t c) const {
  auto it = index_.find(c);
  return it == index_.end() ? 0 : it->second;
}

CharLstmParams CharLstmParams::zeros(std::size_t vocab_size, std::size_t char_dim, std::size_t hidden) {
  return {Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(char_dim), static_cast<Eigen::Index>(vocab_size)),
          network::LstmParams::zeros(char_dim, hidden), network::LstmParams::zeros(char_dim, hidden)};
}

CharLstmParams CharLstmParams::init(std::size_t vocab_size, std::size_t char_dim, std::size_t hidden, Rng& rng) {
  CharLstmParams p = zeros(vocab_size, char_dim, hidden);
  const double limit = std::sqrt(3.0 / static_cast<double>(char_dim));
  std::uniform_real_distribution<double> u(-limit, limit);
  for (Eigen::Index c = 0; c < p.table.cols(); ++c)
    for (Eigen::Index r = 0; r < p.table.rows(); ++r) p.table(r, c) = u(rng);
  p.forward = network::LstmParams::glorot(char_dim, hidden, rng);
  p.backward = network::LstmParams::glorot(char_dim, hidden, rng);
  return p;
}

Eigen::VectorXd char_embed_forward(const CharLstmParams& params, const CharVocab& vocab, std::string_view token,
                                   CharCache* cache) {
  const Eigen::Index hf = static_cast<Eigen::Index>(params.forward.hidden());
  const Eigen::Index hb = static_cast<Eigen::Index>(params.backward.hidden());
  std::u32string chars = utf8_decode(token);
  if (chars.size() > kMaxTokenChars) chars.resize(kMaxTokenChars);

  std::vector<std::size_t> ids;
  ids.reserve(chars.size());
  for (char32_t c : chars) ids.push_back(std::min(vocab.id(c), static_cast<std::size_t>(params.table.cols() - 1)));
  Eigen::VectorXd out = Eigen::VectorXd::Zero(hf + hb);
  if (cache) cache->ids = ids;
  if (ids.empty()) return out;

  Eigen::MatrixXd x(params.table.rows(), static_cast<Eigen::Index>(ids.size()));
  for (std::size_t l = 0; l < ids.size(); ++l) x.col(static_cast<Eigen::Index>(l)) = params.table.col(static_cast<Eigen::Index>(ids[l]));
  const Eigen::MatrixXd f = network::lstm_forward(params.forward, x, network::Direction::Forward, nullptr,
                                                  cache ? &cache->forward : nullptr);
  const Eigen::MatrixXd b = network::lstm_forward(params.backward, x, network::Direction::Backward, nullptr,
                                                  cache ? &cache->backward : nullptr);
  out.head(hf) = f.col(f.cols() - 1);
  out.tail(hb) = b.col(0);
  return out;
}

void char_embed_backward(const CharLstmParams& params, const CharCache& cache, const Eigen::VectorXd& grad_output,
                         CharLstmParams& grads) {
  const Eigen::Index hf = static_cast<Eigen::Index>(params.forward.hidden());
  const Eigen::Index hb = static_cast<Eigen::Index>(params.backward.hidden());
  require(grad_output.size() == hf + hb, "char_embed_backward: gradient width does not match output");
  require(grads.table.rows() == params.table.rows() && grads.table.cols() == params.table.cols(),
          "char_embed_backward: gradient table shape");
  if (cache.ids.empty()) return;
  const Eigen::Index L = static_cast<Eigen::Index>(cache.ids.size());
  require(cache.forward.gates.cols() == L, "char_embed_backward: cache does not match forward call");

  Eigen::MatrixXd gf = Eigen::MatrixXd::Zero(hf, L);
  Eigen::MatrixXd gb = Eigen::MatrixXd::Zero(hb, L);
  gf.col(L - 1) = grad_output.head(hf);
  gb.col(0) = grad_output.tail(hb);
  const network::LstmGradients f = network::lstm_backward(params.forward, cache.forward, gf);
  const network::LstmGradients b = network::lstm_backward(params.backward, cache.backward, gb);
  grads.forward += f.params;
  grads.backward += b.params;
  for (Eigen::Index l = 0; l < L; ++l)
    grads.table.col(static_cast<Eigen::Index>(cache.ids[static_cast<std::size_t>(l)])) += f.inputs.col(l) + b.inputs.col(l);
}

}  // namespace deid::embeddings
