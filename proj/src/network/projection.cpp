#include "deid/network/projection.hpp"

#include <cmath>

#include "deid/common/error.hpp"

namespace deid::network {

ProjectionParams ProjectionParams::zeros(std::size_t input_dim, std::size_t n_tags) {
  return {Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(input_dim), static_cast<Eigen::Index>(n_tags)),
          Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(n_tags), 1)};
}

ProjectionParams ProjectionParams::glorot(std::size_t input_dim, std::size_t n_tags, Rng& rng) {
  ProjectionParams p = zeros(input_dim, n_tags);
  const double limit = std::sqrt(6.0 / static_cast<double>(input_dim + n_tags));
  std::uniform_real_distribution<double> u(-limit, limit);
  for (Eigen::Index c = 0; c < p.W.cols(); ++c)
    for (Eigen::Index r = 0; r < p.W.rows(); ++r) p.W(r, c) = u(rng);
  return p;
}

Eigen::MatrixXd project(const ProjectionParams& params, const Eigen::MatrixXd& hidden) {
  require(hidden.rows() == params.W.rows(), "project: hidden dimension does not match projection");
  Eigen::MatrixXd e = hidden.transpose() * params.W;
  e.rowwise() += params.b.col(0).transpose();
  return e;
}

ProjectionGradients project_backward(const ProjectionParams& params, const Eigen::MatrixXd& hidden,
                                     const Eigen::MatrixXd& grad_emissions) {
  require(grad_emissions.rows() == hidden.cols() && grad_emissions.cols() == params.W.cols(),
          "project_backward: gradient shape");
  ProjectionGradients g;
  g.params.W = hidden * grad_emissions;
  g.params.b = grad_emissions.colwise().sum().transpose();
  g.hidden = params.W * grad_emissions.transpose();
  return g;
}

}  // namespace deid::network
