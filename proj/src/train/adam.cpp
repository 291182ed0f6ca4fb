#include "deid/train/adam.hpp"

#include <cmath>

#include "deid/common/error.hpp"

namespace deid::train {

void adam_step(const std::vector<NamedTensor>& params, const std::vector<NamedTensor>& grads, AdamState& state) {
  require(params.size() == grads.size(), "adam_step: parameter and gradient lists differ in length");
  for (std::size_t i = 0; i < params.size(); ++i) {
    const auto& p = *params[i].value;
    const auto& g = *grads[i].value;
    require(params[i].name == grads[i].name, "adam_step: tensor order mismatch at " + params[i].name);
    require(p.rows() == g.rows() && p.cols() == g.cols(), "adam_step: shape mismatch for " + params[i].name);
    if (!g.allFinite()) throw NumericError("non-finite gradient in tensor " + grads[i].name);
  }
  if (state.m.empty()) {
    for (const auto& p : params) {
      state.m.push_back(Eigen::MatrixXd::Zero(p.value->rows(), p.value->cols()));
      state.v.push_back(Eigen::MatrixXd::Zero(p.value->rows(), p.value->cols()));
    }
  }
  require(state.m.size() == params.size(), "adam_step: state was built for a different tensor list");

  ++state.t;
  const double c1 = 1.0 - std::pow(state.beta1, static_cast<double>(state.t));
  const double c2 = 1.0 - std::pow(state.beta2, static_cast<double>(state.t));
  for (std::size_t i = 0; i < params.size(); ++i) {
    auto& theta = *params[i].value;
    const auto& g = *grads[i].value;
    auto& m = state.m[i];
    auto& v = state.v[i];
    m = state.beta1 * m + (1.0 - state.beta1) * g;
    v = state.beta2 * v + (1.0 - state.beta2) * g.cwiseProduct(g);
    theta.array() -= state.learning_rate * (m.array() / c1) / ((v.array() / c2).sqrt() + state.epsilon);
  }
}

double clip_global_norm(const std::vector<NamedTensor>& grads, double max_norm) {
  double sq = 0.0;
  for (const auto& g : grads) sq += g.value->squaredNorm();
  const double norm = std::sqrt(sq);
  if (max_norm > 0.0 && norm > max_norm) {
    const double scale = max_norm / norm;
    for (const auto& g : grads) *g.value *= scale;
  }
  return norm;
}

}  // namespace deid::train
