#pragma once

#include <Eigen/Dense>

#include "deid/common/rng.hpp"

namespace deid::network {

enum class DropoutMode {
  Variational,  // one draw per sentence, reused at every time step
  Naive,        // fresh draw at every time step
};

struct MaskDims {
  std::size_t input = 0;   // d_in; 0 disables the input mask
  std::size_t hidden = 0;  // per-direction hidden size
  std::size_t steps = 0;   // sentence length T
};

/// Dropout multipliers for one sentence through the Bi-LSTM: for each direction a
/// recurrent mask (on h_prev) and an output mask (on emitted h_t), plus optional
/// input masks. Each matrix has one column per time step; kept units carry 1/(1-p).
struct VariationalMasks {
  double p = 0.0;
  Eigen::MatrixXd forward_input, backward_input;
  Eigen::MatrixXd forward_recurrent, backward_recurrent;
  Eigen::MatrixXd forward_output, backward_output;
};

/// Throws ConfigError unless 0 <= p < 1.
VariationalMasks sample_masks(double p, const MaskDims& dims, Rng& rng, DropoutMode mode = DropoutMode::Variational);

/// True when every column of `mask` is bit-identical to the first.
bool columns_identical(const Eigen::MatrixXd& mask);

}  // namespace deid::network
