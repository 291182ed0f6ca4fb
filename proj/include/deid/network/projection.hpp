#pragma once

#include <Eigen/Dense>

#include "deid/common/rng.hpp"

namespace deid::network {

/// Affine map from encoder states to per-tag emission scores.
struct ProjectionParams {
  Eigen::MatrixXd W;  // d_hidden x n_tags
  Eigen::MatrixXd b;  // n_tags x 1

  static ProjectionParams zeros(std::size_t input_dim, std::size_t n_tags);
  static ProjectionParams glorot(std::size_t input_dim, std::size_t n_tags, Rng& rng);
};

/// hidden: d_hidden x T. Returns emissions T x n_tags.
Eigen::MatrixXd project(const ProjectionParams& params, const Eigen::MatrixXd& hidden);

struct ProjectionGradients {
  ProjectionParams params;
  Eigen::MatrixXd hidden;  // d_hidden x T
};

ProjectionGradients project_backward(const ProjectionParams& params, const Eigen::MatrixXd& hidden,
                                     const Eigen::MatrixXd& grad_emissions);

}  // namespace deid::network
