#pragma once

#include <span>
#include <vector>

#include <Eigen/Dense>

#include "deid/common/rng.hpp"
#include "deid/corpus/bio.hpp"

namespace deid::crf {

using Eigen::MatrixXd;

/// Score used for forbidden transitions; finite so log-sum-exp never sees -inf.
inline constexpr double kForbidden = -1e30;

/// Linear-chain CRF with explicit start/end scores.
struct CrfParams {
  MatrixXd transitions;  // K x K, [from, to]
  MatrixXd start;        // K x 1
  MatrixXd end;          // K x 1

  std::size_t n_tags() const { return static_cast<std::size_t>(transitions.rows()); }

  static CrfParams zeros(std::size_t n_tags);
};

/// Sets O->I-X, B-X/I-X -> I-Y (X != Y) and start -> I-X to kForbidden.
void apply_bio_constraints(CrfParams& params, const corpus::TagSet& tags);

/// emissions: T x K.
double score_sequence(const MatrixXd& emissions, const CrfParams& params, std::span<const std::size_t> tags);

/// Forward and backward log-messages. alpha(t, k) includes the emission at t;
/// beta(t, k) covers positions after t including the end score.
struct TagLattice {
  MatrixXd alpha;  // T x K
  MatrixXd beta;   // T x K
  double log_z = 0.0;
};

TagLattice forward_backward(const MatrixXd& emissions, const CrfParams& params);

double log_partition(const MatrixXd& emissions, const CrfParams& params);

double nll(const MatrixXd& emissions, const CrfParams& params, std::span<const std::size_t> gold);

struct Marginals {
  MatrixXd node;              // T x K
  std::vector<MatrixXd> edge;  // T-1 slices of K x K, [from, to]
  double log_z = 0.0;
};

Marginals marginals(const MatrixXd& emissions, const CrfParams& params);

struct CrfGradients {
  MatrixXd emissions;  // T x K
  CrfParams params;
};

/// Gradient of nll: expected minus observed sufficient statistics.
CrfGradients nll_backward(const Marginals& marginals, std::span<const std::size_t> gold);

struct ViterbiResult {
  std::vector<std::size_t> tags;
  double score = 0.0;
};

/// Highest-scoring path. Ties go to the lowest tag index, resolved from the last
/// position backwards (the final tag first, then each back-pointer).
ViterbiResult viterbi(const MatrixXd& emissions, const CrfParams& params);

/// Exhaustive oracles; refuse (ContractViolation) when K^T exceeds kBruteForceLimit.
inline constexpr double kBruteForceLimit = 1e6;
double brute_force_partition(const MatrixXd& emissions, const CrfParams& params);
/// Same tie-break as viterbi: among maximal paths, the one that is smallest when
/// compared from the last position backwards.
ViterbiResult brute_force_viterbi(const MatrixXd& emissions, const CrfParams& params);

double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& v);

}  // namespace deid::crf
