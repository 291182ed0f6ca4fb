#pragma once

#include <cmath>

#include <Eigen/Dense>

#include "deid/common/rng.hpp"

namespace deid::network {

using Eigen::MatrixXd;

/// Gate blocks are stacked [input; forget; cell; output], each `hidden` rows.
struct LstmParams {
  MatrixXd W;  // 4h x d_in
  MatrixXd U;  // 4h x h
  MatrixXd b;  // 4h x 1

  std::size_t hidden() const { return static_cast<std::size_t>(U.cols()); }
  std::size_t input_dim() const { return static_cast<std::size_t>(W.cols()); }

  static LstmParams zeros(std::size_t input_dim, std::size_t hidden);
  /// Glorot-uniform weights, zero biases, forget-gate bias 1.
  static LstmParams glorot(std::size_t input_dim, std::size_t hidden, Rng& rng);

  LstmParams& operator+=(const LstmParams& o);
};

enum class Direction { Forward, Backward };

/// Per-time-step dropout multipliers, columns indexed in input order. Empty
/// matrices mean "no mask".
struct LstmMasks {
  MatrixXd input;      // d_in x T
  MatrixXd recurrent;  // h x T, applied to h_{prev} feeding step t
};

struct LstmCache {
  Direction direction = Direction::Forward;
  MatrixXd inputs;      // masked inputs, d_in x T
  MatrixXd input_mask;  // copy of LstmMasks::input (possibly empty)
  MatrixXd gates;       // activated gates, 4h x T
  MatrixXd cells;       // c_t, h x T
  MatrixXd cells_tanh;  // tanh(c_t)
  MatrixXd prev_cells;  // c_{prev} per step
  MatrixXd prev_hidden; // masked h_{prev} per step
  MatrixXd recurrent_mask;
};

/// Runs the cell over the columns of `inputs` in the given direction. Hidden states
/// come back in input order (h x T). An empty sequence yields an empty result.
MatrixXd lstm_forward(const LstmParams& params, const MatrixXd& inputs, Direction direction,
                      const LstmMasks* masks = nullptr, LstmCache* cache = nullptr);

struct LstmGradients {
  LstmParams params;
  MatrixXd inputs;  // d_in x T
};

/// Backpropagation through time for one lstm_forward call.
LstmGradients lstm_backward(const LstmParams& params, const LstmCache& cache, const MatrixXd& grad_hidden);

inline double sigmoid(double x) { return 1.0 / (1.0 + std::exp(-x)); }

}  // namespace deid::network
