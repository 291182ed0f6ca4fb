#include "deid/embeddings/features.hpp"

#include <cmath>

#include "deid/common/error.hpp"

namespace deid::embeddings {

FeatureTables FeatureTables::zeros(std::size_t casing_dim) {
  return {Eigen::MatrixXd::Zero(static_cast<Eigen::Index>(casing_dim), static_cast<Eigen::Index>(corpus::kCasingCount))};
}

FeatureTables FeatureTables::init(std::size_t casing_dim, Rng& rng) {
  FeatureTables t = zeros(casing_dim);
  const double limit = std::sqrt(3.0 / static_cast<double>(std::max<std::size_t>(casing_dim, 1)));
  std::uniform_real_distribution<double> u(-limit, limit);
  for (Eigen::Index c = 0; c < t.casing.cols(); ++c)
    for (Eigen::Index r = 0; r < t.casing.rows(); ++r) t.casing(r, c) = u(rng);
  return t;
}

Eigen::VectorXd pos_one_hot(corpus::CoarsePos pos) {
  Eigen::VectorXd v = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(corpus::kCoarsePosCount));
  v(static_cast<Eigen::Index>(pos)) = 1.0;
  return v;
}

Eigen::VectorXd assemble_input(const InputParts& parts, const InputLayout& layout) {
  struct Component {
    const char* name;
    const Eigen::VectorXd* v;
    std::size_t width;
  };
  const Component comps[] = {{"contextual", &parts.contextual, layout.contextual},
                             {"word", &parts.word, layout.word},
                             {"character", &parts.character, layout.character},
                             {"pos", &parts.pos, layout.pos},
                             {"casing", &parts.casing, layout.casing}};
  Eigen::VectorXd out(static_cast<Eigen::Index>(layout.total()));
  Eigen::Index offset = 0;
  for (const auto& c : comps) {
    if (static_cast<std::size_t>(c.v->size()) != c.width)
      throw ConfigError(std::string(c.name) + " component has width " + std::to_string(c.v->size()) + ", layout expects " +
                        std::to_string(c.width));
    out.segment(offset, c.v->size()) = *c.v;
    offset += c.v->size();
  }
  return out;
}

}  // namespace deid::embeddings
