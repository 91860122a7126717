// SPDX-License-Identifier: Apache-2.0

#include "subsetx/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numeric>
#include <stdexcept>

namespace subsetx {
namespace baselines {

namespace {
constexpr double kInf = std::numeric_limits<double>::infinity();
}

Eigen::VectorXd univariable_scores(const Dataset& d) {
  if ((d.y.array() > 0).count() == 0 || (d.y.array() < 0).count() == 0)
    throw std::invalid_argument("univariable scores require both classes");
  Eigen::VectorXd scores(d.cols());
  FitConfig cfg;
  cfg.newton_tol = 1e-8;
  cfg.max_newton_iters = 100;
  for (Eigen::Index n = 0; n < d.cols(); ++n) {
    Eigen::MatrixXd col = d.X.col(n);
    // Separability guard: the unregularized loss has infimum 0 exactly when
    // the single feature separates the classes, and the slope runs away.
    FitOutcome fit = detail::newton_fit(col, d.y, 0.0, cfg, 1e3);
    bool separable = fit.diverged || fit.obj.loss_sum <= 1e-8;
    scores[n] = separable ? kInf : std::abs(fit.params.theta[0]);
  }
  return scores;
}

namespace {

std::vector<int> order_by_score(const Eigen::VectorXd& scores) {
  std::vector<int> idx(static_cast<std::size_t>(scores.size()));
  std::iota(idx.begin(), idx.end(), 0);
  std::stable_sort(idx.begin(), idx.end(), [&](int a, int b) {
    if (scores[a] != scores[b]) return scores[a] > scores[b];
    return a < b;
  });
  return idx;
}

}  // namespace

std::vector<int> greedy_topk(const Dataset& d, int k) {
  if (k < 1 || k > d.cols()) throw std::invalid_argument("k out of range");
  Eigen::VectorXd scores = univariable_scores(d);
  std::vector<int> idx = order_by_score(scores);
  idx.resize(static_cast<std::size_t>(k));
  std::sort(idx.begin(), idx.end());
  return idx;
}

std::vector<int> greedy_budget(const Dataset& d, double b) {
  if (!d.has_costs()) throw std::invalid_argument("greedy_budget requires costs");
  if (b < 0) throw std::invalid_argument("budget must be nonnegative");
  Eigen::VectorXd scores = univariable_scores(d);
  Eigen::VectorXd ratio(d.cols());
  for (Eigen::Index n = 0; n < d.cols(); ++n) ratio[n] = scores[n] / d.costs[n];
  std::vector<int> idx = order_by_score(ratio);
  std::vector<int> selected;
  double used = 0.0;
  for (int n : idx) {
    if (used + d.costs[n] <= b) {
      selected.push_back(n);
      used += d.costs[n];
    }
  }
  std::sort(selected.begin(), selected.end());
  return selected;
}

bnb::SolveResult exhaustive_best_subset(const Dataset& d, const SelectionConstraint& constraint,
                                        double lambda, const FitConfig& cfg) {
  const int N = static_cast<int>(d.cols());
  if (N > 20) throw std::invalid_argument("exhaustive enumeration limited to N <= 20");
  Eigen::VectorXd costs =
      constraint.is_budget() ? d.costs : Eigen::VectorXd::Ones(N);
  if (constraint.is_budget() && !d.has_costs())
    throw std::invalid_argument("budget constraint requires costs");

  bnb::SolveResult best;
  best.status = bnb::SolveStatus::Infeasible;
  if (constraint.limit < 0) {
    best.params.theta = Eigen::VectorXd::Zero(N);
    return best;
  }

  for (std::uint32_t mask = 0; mask < (1u << N); ++mask) {
    double cost = 0.0;
    std::vector<int> support;
    for (int n = 0; n < N; ++n)
      if (mask & (1u << n)) {
        cost += costs[n];
        support.push_back(n);
      }
    if (cost > constraint.limit + 1e-9) continue;
    FitOutcome fit = fit_support(d, support, lambda, cfg);
    ++best.nodes_explored;
    if (fit.obj.total < best.objective) {
      best.objective = fit.obj.total;
      best.support = support;
      best.params = fit.params;
    }
  }
  best.lower_bound = best.objective;
  best.rel_gap = 0.0;
  best.status = bnb::SolveStatus::Optimal;
  return best;
}

}  // namespace baselines
}  // namespace subsetx
