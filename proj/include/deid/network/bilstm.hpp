#pragma once

#include "deid/network/dropout.hpp"
#include "deid/network/lstm.hpp"

namespace deid::network {

struct BiLstmParams {
  LstmParams forward;
  LstmParams backward;

  std::size_t hidden() const { return forward.hidden(); }
  std::size_t output_dim() const { return 2 * forward.hidden(); }
};

struct BiLstmCache {
  LstmCache forward, backward;
  Eigen::MatrixXd forward_output_mask, backward_output_mask;
};

/// Output rows are [forward_t ; backward_t] for each column t. With masks, the
/// recurrent/input masks feed the cells and the output masks scale the emitted states.
Eigen::MatrixXd bilstm_forward(const BiLstmParams& layer, const Eigen::MatrixXd& inputs,
                               const VariationalMasks* masks = nullptr, BiLstmCache* cache = nullptr);

struct BiLstmGradients {
  BiLstmParams params;
  Eigen::MatrixXd inputs;
};

BiLstmGradients bilstm_backward(const BiLstmParams& layer, const BiLstmCache& cache, const Eigen::MatrixXd& grad_output);

}  // namespace deid::network
