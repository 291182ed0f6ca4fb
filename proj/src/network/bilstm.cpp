#include "deid/network/bilstm.hpp"

#include "deid/common/error.hpp"

namespace deid::network {

Eigen::MatrixXd bilstm_forward(const BiLstmParams& layer, const Eigen::MatrixXd& inputs, const VariationalMasks* masks,
                               BiLstmCache* cache) {
  const Eigen::Index h = static_cast<Eigen::Index>(layer.hidden());
  LstmMasks fm, bm;
  if (masks) {
    fm = {masks->forward_input, masks->forward_recurrent};
    bm = {masks->backward_input, masks->backward_recurrent};
  }
  Eigen::MatrixXd hf = lstm_forward(layer.forward, inputs, Direction::Forward, masks ? &fm : nullptr,
                                    cache ? &cache->forward : nullptr);
  Eigen::MatrixXd hb = lstm_forward(layer.backward, inputs, Direction::Backward, masks ? &bm : nullptr,
                                    cache ? &cache->backward : nullptr);
  if (masks && masks->forward_output.size() > 0) {
    require(masks->forward_output.cols() == inputs.cols(), "bilstm_forward: output mask length");
    hf = hf.cwiseProduct(masks->forward_output);
    hb = hb.cwiseProduct(masks->backward_output);
  }
  if (cache) {
    cache->forward_output_mask = masks ? masks->forward_output : Eigen::MatrixXd();
    cache->backward_output_mask = masks ? masks->backward_output : Eigen::MatrixXd();
  }
  Eigen::MatrixXd out(2 * h, inputs.cols());
  out.topRows(h) = hf;
  out.bottomRows(h) = hb;
  return out;
}

BiLstmGradients bilstm_backward(const BiLstmParams& layer, const BiLstmCache& cache, const Eigen::MatrixXd& grad_output) {
  const Eigen::Index h = static_cast<Eigen::Index>(layer.hidden());
  require(grad_output.rows() == 2 * h, "bilstm_backward: gradient has wrong row count");
  Eigen::MatrixXd gf = grad_output.topRows(h);
  Eigen::MatrixXd gb = grad_output.bottomRows(h);
  if (cache.forward_output_mask.size() > 0) {
    gf = gf.cwiseProduct(cache.forward_output_mask);
    gb = gb.cwiseProduct(cache.backward_output_mask);
  }
  LstmGradients f = lstm_backward(layer.forward, cache.forward, gf);
  LstmGradients b = lstm_backward(layer.backward, cache.backward, gb);
  return {{std::move(f.params), std::move(b.params)}, f.inputs + b.inputs};
}

}  // namespace deid::network
