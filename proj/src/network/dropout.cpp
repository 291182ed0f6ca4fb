#include "deid/network/dropout.hpp"

#include "deid/common/error.hpp"

namespace deid::network {

namespace {

Eigen::MatrixXd draw(std::size_t rows, std::size_t steps, double p, Rng& rng, DropoutMode mode) {
  const auto r = static_cast<Eigen::Index>(rows);
  const auto T = static_cast<Eigen::Index>(steps);
  Eigen::MatrixXd m(r, T);
  if (r == 0 || T == 0) return m;
  const double keep_scale = 1.0 / (1.0 - p);
  auto column = [&] {
    Eigen::VectorXd c(r);
    for (Eigen::Index i = 0; i < r; ++i) c(i) = (p == 0.0 || uniform01(rng) >= p) ? keep_scale : 0.0;
    return c;
  };
  if (mode == DropoutMode::Variational) {
    const Eigen::VectorXd c = column();
    for (Eigen::Index t = 0; t < T; ++t) m.col(t) = c;
  } else {
    for (Eigen::Index t = 0; t < T; ++t) m.col(t) = column();
  }
  return m;
}

}  // namespace

VariationalMasks sample_masks(double p, const MaskDims& dims, Rng& rng, DropoutMode mode) {
  if (!(p >= 0.0 && p < 1.0)) throw ConfigError("dropout probability must satisfy 0 <= p < 1, got " + std::to_string(p));
  VariationalMasks m;
  m.p = p;
  m.forward_input = draw(dims.input, dims.steps, p, rng, mode);
  m.backward_input = draw(dims.input, dims.steps, p, rng, mode);
  m.forward_recurrent = draw(dims.hidden, dims.steps, p, rng, mode);
  m.backward_recurrent = draw(dims.hidden, dims.steps, p, rng, mode);
  m.forward_output = draw(dims.hidden, dims.steps, p, rng, mode);
  m.backward_output = draw(dims.hidden, dims.steps, p, rng, mode);
  return m;
}

bool columns_identical(const Eigen::MatrixXd& mask) {
  for (Eigen::Index t = 1; t < mask.cols(); ++t)
    for (Eigen::Index r = 0; r < mask.rows(); ++r)
      if (mask(r, t) != mask(r, 0)) return false;
  return true;
}

}  // namespace deid::network
