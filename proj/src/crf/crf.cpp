#include "deid/crf/crf.hpp"

#include <cmath>

#include "deid/common/error.hpp"

namespace deid::crf {

namespace {

void check_shapes(const MatrixXd& emissions, const CrfParams& params) {
  require(emissions.rows() >= 1, "CRF: empty sentence");
  require(emissions.cols() == params.transitions.rows() && params.transitions.rows() == params.transitions.cols() &&
              params.start.rows() == emissions.cols() && params.end.rows() == emissions.cols(),
          "CRF: emission/parameter tag counts disagree");
}

}  // namespace

CrfParams CrfParams::zeros(std::size_t n_tags) {
  const auto k = static_cast<Eigen::Index>(n_tags);
  return {MatrixXd::Zero(k, k), MatrixXd::Zero(k, 1), MatrixXd::Zero(k, 1)};
}

void apply_bio_constraints(CrfParams& params, const corpus::TagSet& tags) {
  const std::size_t k = tags.size();
  require(params.n_tags() == k, "apply_bio_constraints: tag set size mismatch");
  for (std::size_t to = 0; to < k; ++to) {
    if (!tags.allowed_start(to)) params.start(static_cast<Eigen::Index>(to), 0) = kForbidden;
    for (std::size_t from = 0; from < k; ++from)
      if (!tags.allowed_transition(from, to))
        params.transitions(static_cast<Eigen::Index>(from), static_cast<Eigen::Index>(to)) = kForbidden;
  }
}

double log_sum_exp(const Eigen::Ref<const Eigen::VectorXd>& v) {
  const double m = v.maxCoeff();
  return m + std::log((v.array() - m).exp().sum());
}

double score_sequence(const MatrixXd& emissions, const CrfParams& params, std::span<const std::size_t> tags) {
  check_shapes(emissions, params);
  require(tags.size() == static_cast<std::size_t>(emissions.rows()), "score_sequence: tag count != token count");
  const auto at = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
  double s = params.start(at(tags[0]), 0);
  for (std::size_t t = 0; t < tags.size(); ++t) {
    s += emissions(at(t), at(tags[t]));
    if (t + 1 < tags.size()) s += params.transitions(at(tags[t]), at(tags[t + 1]));
  }
  return s + params.end(at(tags.back()), 0);
}

TagLattice forward_backward(const MatrixXd& emissions, const CrfParams& params) {
  check_shapes(emissions, params);
  const Eigen::Index T = emissions.rows();
  const Eigen::Index K = emissions.cols();
  TagLattice lat{MatrixXd(T, K), MatrixXd(T, K), 0.0};
  lat.alpha.row(0) = params.start.col(0).transpose() + emissions.row(0);
  Eigen::VectorXd tmp(K);
  for (Eigen::Index t = 1; t < T; ++t) {
    for (Eigen::Index j = 0; j < K; ++j) {
      tmp = lat.alpha.row(t - 1).transpose() + params.transitions.col(j);
      lat.alpha(t, j) = log_sum_exp(tmp) + emissions(t, j);
    }
  }
  lat.beta.row(T - 1) = params.end.col(0).transpose();
  for (Eigen::Index t = T - 2; t >= 0; --t) {
    for (Eigen::Index i = 0; i < K; ++i) {
      tmp = params.transitions.row(i).transpose() + emissions.row(t + 1).transpose() + lat.beta.row(t + 1).transpose();
      lat.beta(t, i) = log_sum_exp(tmp);
    }
  }
  tmp = lat.alpha.row(T - 1).transpose() + params.end.col(0);
  lat.log_z = log_sum_exp(tmp);
  return lat;
}

double log_partition(const MatrixXd& emissions, const CrfParams& params) {
  check_shapes(emissions, params);
  const Eigen::Index T = emissions.rows();
  const Eigen::Index K = emissions.cols();
  Eigen::VectorXd alpha = params.start.col(0) + emissions.row(0).transpose();
  Eigen::VectorXd next(K), tmp(K);
  for (Eigen::Index t = 1; t < T; ++t) {
    for (Eigen::Index j = 0; j < K; ++j) {
      tmp = alpha + params.transitions.col(j);
      next(j) = log_sum_exp(tmp) + emissions(t, j);
    }
    alpha.swap(next);
  }
  return log_sum_exp(alpha + params.end.col(0));
}

double nll(const MatrixXd& emissions, const CrfParams& params, std::span<const std::size_t> gold) {
  return log_partition(emissions, params) - score_sequence(emissions, params, gold);
}

Marginals marginals(const MatrixXd& emissions, const CrfParams& params) {
  const TagLattice lat = forward_backward(emissions, params);
  const Eigen::Index T = emissions.rows();
  const Eigen::Index K = emissions.cols();
  Marginals m;
  m.log_z = lat.log_z;
  m.node = ((lat.alpha + lat.beta).array() - lat.log_z).exp().matrix();
  m.edge.reserve(static_cast<std::size_t>(T > 0 ? T - 1 : 0));
  for (Eigen::Index t = 0; t + 1 < T; ++t) {
    MatrixXd e(K, K);
    for (Eigen::Index i = 0; i < K; ++i)
      for (Eigen::Index j = 0; j < K; ++j)
        e(i, j) = std::exp(lat.alpha(t, i) + params.transitions(i, j) + emissions(t + 1, j) + lat.beta(t + 1, j) - lat.log_z);
    m.edge.push_back(std::move(e));
  }
  return m;
}

CrfGradients nll_backward(const Marginals& marginals, std::span<const std::size_t> gold) {
  const Eigen::Index T = marginals.node.rows();
  const Eigen::Index K = marginals.node.cols();
  require(gold.size() == static_cast<std::size_t>(T), "nll_backward: gold length != token count");
  const auto at = [](std::size_t i) { return static_cast<Eigen::Index>(i); };
  CrfGradients g{marginals.node, CrfParams::zeros(static_cast<std::size_t>(K))};
  for (Eigen::Index t = 0; t < T; ++t) g.emissions(t, at(gold[static_cast<std::size_t>(t)])) -= 1.0;
  for (const auto& e : marginals.edge) g.params.transitions += e;
  for (Eigen::Index t = 0; t + 1 < T; ++t)
    g.params.transitions(at(gold[static_cast<std::size_t>(t)]), at(gold[static_cast<std::size_t>(t + 1)])) -= 1.0;
  g.params.start.col(0) = marginals.node.row(0).transpose();
  g.params.start(at(gold.front()), 0) -= 1.0;
  g.params.end.col(0) = marginals.node.row(T - 1).transpose();
  g.params.end(at(gold.back()), 0) -= 1.0;
  return g;
}

ViterbiResult viterbi(const MatrixXd& emissions, const CrfParams& params) {
  check_shapes(emissions, params);
  const Eigen::Index T = emissions.rows();
  const Eigen::Index K = emissions.cols();
  MatrixXd delta(T, K);
  Eigen::Matrix<Eigen::Index, Eigen::Dynamic, Eigen::Dynamic> back(T, K);
  delta.row(0) = params.start.col(0).transpose() + emissions.row(0);
  for (Eigen::Index t = 1; t < T; ++t) {
    for (Eigen::Index j = 0; j < K; ++j) {
      Eigen::Index best = 0;
      double best_score = delta(t - 1, 0) + params.transitions(0, j);
      for (Eigen::Index i = 1; i < K; ++i) {
        const double s = delta(t - 1, i) + params.transitions(i, j);
        if (s > best_score) {
          best_score = s;
          best = i;
        }
      }
      delta(t, j) = best_score + emissions(t, j);
      back(t, j) = best;
    }
  }
  Eigen::Index last = 0;
  double best_score = delta(T - 1, 0) + params.end(0, 0);
  for (Eigen::Index j = 1; j < K; ++j) {
    const double s = delta(T - 1, j) + params.end(j, 0);
    if (s > best_score) {
      best_score = s;
      last = j;
    }
  }
  ViterbiResult r;
  r.tags.resize(static_cast<std::size_t>(T));
  r.tags.back() = static_cast<std::size_t>(last);
  for (Eigen::Index t = T - 1; t > 0; --t)
    r.tags[static_cast<std::size_t>(t - 1)] = static_cast<std::size_t>(back(t, static_cast<Eigen::Index>(r.tags[static_cast<std::size_t>(t)])));
  r.score = best_score;
  return r;
}

}  // namespace deid::crf
