#include <cmath>

#include "deid/common/error.hpp"
#include "deid/crf/crf.hpp"

namespace deid::crf {

namespace {

// Calls fn(tags) for every sequence. The last position is the most significant
// digit, so enumeration order is "compare from the end".
template <typename Fn>
void enumerate(const MatrixXd& emissions, const CrfParams& params, Fn&& fn) {
  require(emissions.rows() >= 1, "brute force: empty sentence");
  require(emissions.cols() == static_cast<Eigen::Index>(params.n_tags()), "brute force: tag count mismatch");
  const auto T = static_cast<std::size_t>(emissions.rows());
  const auto K = static_cast<std::size_t>(emissions.cols());
  if (std::pow(static_cast<double>(K), static_cast<double>(T)) > kBruteForceLimit)
    throw ContractViolation("brute force: K^T = " + std::to_string(K) + "^" + std::to_string(T) +
                            " exceeds the enumeration limit");
  std::vector<std::size_t> tags(T, 0);
  while (true) {
    fn(tags);
    std::size_t pos = 0;
    while (pos < T && ++tags[pos] == K) tags[pos++] = 0;
    if (pos == T) break;
  }
}

}  // namespace

double brute_force_partition(const MatrixXd& emissions, const CrfParams& params) {
  std::vector<double> scores;
  enumerate(emissions, params, [&](const std::vector<std::size_t>& y) { scores.push_back(score_sequence(emissions, params, y)); });
  Eigen::Map<const Eigen::VectorXd> v(scores.data(), static_cast<Eigen::Index>(scores.size()));
  return log_sum_exp(v);
}

ViterbiResult brute_force_viterbi(const MatrixXd& emissions, const CrfParams& params) {
  ViterbiResult best;
  bool have = false;
  enumerate(emissions, params, [&](const std::vector<std::size_t>& y) {
    const double s = score_sequence(emissions, params, y);
    if (!have || s > best.score) {
      best.tags = y;
      best.score = s;
      have = true;
    }
  });
  return best;
}

}  // namespace deid::crf
