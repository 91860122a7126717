// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSETX_LOGISTIC_HPP
#define SUBSETX_LOGISTIC_HPP

#include <cmath>
#include <utility>
#include <vector>

#include "subsetx/dataset.hpp"

namespace subsetx {

struct ModelParams {
  Eigen::VectorXd theta;
  double theta0 = 0.0;
};

struct Objective {
  double loss_sum = 0.0;  // sum of per-example softplus terms
  double reg = 0.0;       // (lambda/2) * ||theta||^2
  double total = 0.0;
};

/// log(1 + exp(-margin)), overflow-free for extreme margins.
inline double softplus(double margin) {
  double a = margin < 0 ? -margin : 0.0;
  double e = std::exp(-(margin < 0 ? -margin : margin));
  return a + std::log1p(e);
}

/// 1 / (1 + exp(-t)) without overflow.
inline double sigmoid(double t) {
  if (t >= 0) return 1.0 / (1.0 + std::exp(-t));
  double e = std::exp(t);
  return e / (1.0 + e);
}

Objective objective(const Dataset& d, const ModelParams& p, double lambda);

std::pair<Eigen::VectorXd, double> gradient(const Dataset& d, const ModelParams& p,
                                            double lambda);

double predict_proba(const ModelParams& p, const Eigen::VectorXd& x);

struct FitOutcome {
  ModelParams params;
  Objective obj;
  bool converged = false;
  int iterations = 0;
  double grad_norm = 0.0;
  bool diverged = false;  // unbounded unregularized fit on separable data
};

/// Newton fit of the lambda-regularized softplus objective restricted to
/// `support`; coefficients outside the support are exactly zero.  The
/// intercept is free and never penalized.
FitOutcome fit_support(const Dataset& d, const std::vector<int>& support, double lambda,
                       const FitConfig& cfg);

namespace detail {

/// Core Newton solver on a dense design (columns already restricted).
/// `divergence_norm` > 0 aborts with diverged=true once ||theta|| exceeds it.
FitOutcome newton_fit(const Eigen::MatrixXd& Xs, const Eigen::VectorXd& y, double lambda,
                      const FitConfig& cfg, double divergence_norm = 0.0);

}  // namespace detail

}  // namespace subsetx

#endif
