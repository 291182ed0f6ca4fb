#include "deid/network/lstm.hpp"

#include <cmath>

#include "deid/common/error.hpp"

namespace deid::network {

LstmParams LstmParams::zeros(std::size_t input_dim, std::size_t hidden) {
  const auto d = static_cast<Eigen::Index>(input_dim);
  const auto h = static_cast<Eigen::Index>(hidden);
  return {MatrixXd::Zero(4 * h, d), MatrixXd::Zero(4 * h, h), MatrixXd::Zero(4 * h, 1)};
}

LstmParams LstmParams::glorot(std::size_t input_dim, std::size_t hidden, Rng& rng) {
  LstmParams p = zeros(input_dim, hidden);
  auto fill = [&](MatrixXd& m) {
    const double limit = std::sqrt(6.0 / static_cast<double>(m.rows() + m.cols()));
    std::uniform_real_distribution<double> u(-limit, limit);
    for (Eigen::Index c = 0; c < m.cols(); ++c)
      for (Eigen::Index r = 0; r < m.rows(); ++r) m(r, c) = u(rng);
  };
  fill(p.W);
  fill(p.U);
  const auto h = static_cast<Eigen::Index>(hidden);
  p.b.block(h, 0, h, 1).setOnes();
  return p;
}

LstmParams& LstmParams::operator+=(const LstmParams& o) {
  W += o.W;
  U += o.U;
  b += o.b;
  return *this;
}

MatrixXd lstm_forward(const LstmParams& params, const MatrixXd& inputs, Direction direction, const LstmMasks* masks,
                      LstmCache* cache) {
  const Eigen::Index h = params.U.cols();
  const Eigen::Index T = inputs.cols();
  require(T == 0 || inputs.rows() == params.W.cols(), "lstm_forward: input dimension does not match W");
  const bool in_mask = masks && masks->input.size() > 0;
  const bool rec_mask = masks && masks->recurrent.size() > 0;
  if (in_mask) require(masks->input.rows() == inputs.rows() && masks->input.cols() == T, "lstm_forward: input mask shape");
  if (rec_mask) require(masks->recurrent.rows() == h && masks->recurrent.cols() == T, "lstm_forward: recurrent mask shape");

  const MatrixXd x = in_mask ? MatrixXd(inputs.cwiseProduct(masks->input)) : inputs;
  MatrixXd pre = params.W * x;  // 4h x T
  pre.colwise() += params.b.col(0);

  MatrixXd gates(4 * h, T), cells(h, T), cells_tanh(h, T), prev_cells(h, T), prev_hidden(h, T), hidden(h, T);
  Eigen::VectorXd h_prev = Eigen::VectorXd::Zero(h);
  Eigen::VectorXd c_prev = Eigen::VectorXd::Zero(h);
  for (Eigen::Index s = 0; s < T; ++s) {
    const Eigen::Index t = direction == Direction::Forward ? s : T - 1 - s;
    Eigen::VectorXd hp = rec_mask ? Eigen::VectorXd(h_prev.cwiseProduct(masks->recurrent.col(t))) : h_prev;
    Eigen::VectorXd a = pre.col(t) + params.U * hp;
    for (Eigen::Index r = 0; r < h; ++r) {
      a(r) = sigmoid(a(r));
      a(h + r) = sigmoid(a(h + r));
      a(2 * h + r) = std::tanh(a(2 * h + r));
      a(3 * h + r) = sigmoid(a(3 * h + r));
    }
    Eigen::VectorXd c = a.segment(h, h).cwiseProduct(c_prev) + a.segment(0, h).cwiseProduct(a.segment(2 * h, h));
    Eigen::VectorXd ct = c.array().tanh().matrix();
    hidden.col(t) = a.segment(3 * h, h).cwiseProduct(ct);
    gates.col(t) = a;
    cells.col(t) = c;
    cells_tanh.col(t) = ct;
    prev_cells.col(t) = c_prev;
    prev_hidden.col(t) = hp;
    h_prev = hidden.col(t);
    c_prev = c;
  }
  if (cache) {
    cache->direction = direction;
    cache->inputs = x;
    cache->input_mask = in_mask ? masks->input : MatrixXd();
    cache->recurrent_mask = rec_mask ? masks->recurrent : MatrixXd();
    cache->gates = std::move(gates);
    cache->cells = std::move(cells);
    cache->cells_tanh = std::move(cells_tanh);
    cache->prev_cells = std::move(prev_cells);
    cache->prev_hidden = std::move(prev_hidden);
  }
  return hidden;
}

LstmGradients lstm_backward(const LstmParams& params, const LstmCache& cache, const MatrixXd& grad_hidden) {
  const Eigen::Index h = params.U.cols();
  const Eigen::Index T = cache.gates.cols();
  require(grad_hidden.rows() == h && grad_hidden.cols() == T, "lstm_backward: gradient shape does not match cache");

  LstmGradients out{LstmParams::zeros(params.input_dim(), params.hidden()), MatrixXd::Zero(params.W.cols(), T)};
  if (T == 0) return out;
  MatrixXd d_pre(4 * h, T);
  Eigen::VectorXd dh_next = Eigen::VectorXd::Zero(h);
  Eigen::VectorXd dc_next = Eigen::VectorXd::Zero(h);
  for (Eigen::Index s = T - 1; s >= 0; --s) {
    const Eigen::Index t = cache.direction == Direction::Forward ? s : T - 1 - s;
    const auto gi = cache.gates.col(t).segment(0, h);
    const auto gf = cache.gates.col(t).segment(h, h);
    const auto gg = cache.gates.col(t).segment(2 * h, h);
    const auto go = cache.gates.col(t).segment(3 * h, h);
    const auto ct = cache.cells_tanh.col(t);

    const Eigen::VectorXd dh = grad_hidden.col(t) + dh_next;
    const Eigen::ArrayXd d_o = dh.array() * ct.array();
    const Eigen::ArrayXd dc = dc_next.array() + dh.array() * go.array() * (1.0 - ct.array().square());
    const Eigen::ArrayXd d_i = dc * gg.array();
    const Eigen::ArrayXd d_g = dc * gi.array();
    const Eigen::ArrayXd d_f = dc * cache.prev_cells.col(t).array();

    d_pre.col(t).segment(0, h) = (d_i * gi.array() * (1.0 - gi.array())).matrix();
    d_pre.col(t).segment(h, h) = (d_f * gf.array() * (1.0 - gf.array())).matrix();
    d_pre.col(t).segment(2 * h, h) = (d_g * (1.0 - gg.array().square())).matrix();
    d_pre.col(t).segment(3 * h, h) = (d_o * go.array() * (1.0 - go.array())).matrix();

    dh_next = params.U.transpose() * d_pre.col(t);
    if (cache.recurrent_mask.size() > 0) dh_next = dh_next.cwiseProduct(cache.recurrent_mask.col(t));
    dc_next = (dc * gf.array()).matrix();
  }
  out.params.W.noalias() = d_pre * cache.inputs.transpose();
  out.params.U.noalias() = d_pre * cache.prev_hidden.transpose();
  out.params.b = d_pre.rowwise().sum();
  out.inputs.noalias() = params.W.transpose() * d_pre;
  if (cache.input_mask.size() > 0) out.inputs = out.inputs.cwiseProduct(cache.input_mask);
  return out;
}

}  // namespace deid::network
