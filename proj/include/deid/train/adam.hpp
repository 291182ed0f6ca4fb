#pragma once

#include <string>
#include <vector>

#include <Eigen/Dense>

namespace deid::train {

struct NamedTensor {
  std::string name;
  Eigen::MatrixXd* value;
};

struct AdamState {
  double learning_rate = 1e-3;
  double beta1 = 0.9;
  double beta2 = 0.999;
  double epsilon = 1e-8;
  std::vector<Eigen::MatrixXd> m;  // first moments, one per tensor
  std::vector<Eigen::MatrixXd> v;  // second moments
  std::size_t t = 0;
};

/// One bias-corrected Adam update of `params` with `grads` (same names and shapes,
/// same order). Moments are allocated on the first call. A non-finite gradient
/// throws NumericError naming the tensor before anything is modified.
void adam_step(const std::vector<NamedTensor>& params, const std::vector<NamedTensor>& grads, AdamState& state);

/// Rescales `grads` in place so that their joint L2 norm is at most `max_norm`.
/// Returns the norm before scaling.
double clip_global_norm(const std::vector<NamedTensor>& grads, double max_norm);

}  // namespace deid::train
