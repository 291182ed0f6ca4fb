#pragma once

#include <string>

#include <Eigen/Dense>

#include "deid/common/rng.hpp"
#include "deid/corpus/casing.hpp"
#include "deid/corpus/pos.hpp"

namespace deid::embeddings {

/// Width of each input component; 0 switches a component off. Concatenation order is
/// [contextual | word | char | pos | casing].
struct InputLayout {
  std::size_t contextual = 1024;
  std::size_t word = 300;
  std::size_t character = 50;
  std::size_t pos = corpus::kCoarsePosCount;
  std::size_t casing = 20;

  std::size_t total() const { return contextual + word + character + pos + casing; }
  std::size_t offset_char() const { return contextual + word; }
  std::size_t offset_pos() const { return contextual + word + character; }
  std::size_t offset_casing() const { return contextual + word + character + pos; }

  friend bool operator==(const InputLayout&, const InputLayout&) = default;
};

/// Trainable casing embeddings: one column per CasingCategory.
struct FeatureTables {
  Eigen::MatrixXd casing;  // casing_dim x kCasingCount

  static FeatureTables zeros(std::size_t casing_dim);
  static FeatureTables init(std::size_t casing_dim, Rng& rng);
};

Eigen::VectorXd pos_one_hot(corpus::CoarsePos pos);

struct InputParts {
  Eigen::VectorXd contextual;
  Eigen::VectorXd word;
  Eigen::VectorXd character;
  Eigen::VectorXd pos;
  Eigen::VectorXd casing;
};

/// Concatenates the enabled components. A disabled component (width 0) must be
/// passed empty. Throws ConfigError naming the first mismatching component.
Eigen::VectorXd assemble_input(const InputParts& parts, const InputLayout& layout);

}  // namespace deid::embeddings
