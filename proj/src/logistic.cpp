// SPDX-License-Identifier: Apache-2.0

#include "subsetx/logistic.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

namespace subsetx {

Objective objective(const Dataset& d, const ModelParams& p, double lambda) {
  if (p.theta.size() != d.cols()) throw std::invalid_argument("theta dimension mismatch");
  Eigen::VectorXd margins = d.y.array() * (d.X * p.theta).array() + d.y.array() * p.theta0;
  Objective o;
  for (Eigen::Index m = 0; m < margins.size(); ++m) o.loss_sum += softplus(margins[m]);
  o.reg = 0.5 * lambda * p.theta.squaredNorm();
  o.total = o.loss_sum + o.reg;
  return o;
}

std::pair<Eigen::VectorXd, double> gradient(const Dataset& d, const ModelParams& p,
                                            double lambda) {
  if (p.theta.size() != d.cols()) throw std::invalid_argument("theta dimension mismatch");
  Eigen::VectorXd margins = d.y.array() * (d.X * p.theta).array() + d.y.array() * p.theta0;
  // d softplus(m)/dm = -sigmoid(-m)
  Eigen::VectorXd w(margins.size());
  for (Eigen::Index m = 0; m < margins.size(); ++m) w[m] = -sigmoid(-margins[m]) * d.y[m];
  Eigen::VectorXd g = d.X.transpose() * w + lambda * p.theta;
  return {g, w.sum()};
}

double predict_proba(const ModelParams& p, const Eigen::VectorXd& x) {
  if (p.theta.size() != x.size()) throw std::invalid_argument("dimension mismatch");
  return sigmoid(p.theta.dot(x) + p.theta0);
}

namespace detail {

namespace {

double eval_loss(const Eigen::MatrixXd& Xs, const Eigen::VectorXd& y,
                 const Eigen::VectorXd& w, double w0, double lambda) {
  Eigen::VectorXd margins = y.array() * (Xs * w).array() + y.array() * w0;
  double loss = 0.0;
  for (Eigen::Index m = 0; m < margins.size(); ++m) loss += softplus(margins[m]);
  return loss + 0.5 * lambda * w.squaredNorm();
}

}  // namespace

FitOutcome newton_fit(const Eigen::MatrixXd& Xs, const Eigen::VectorXd& y, double lambda,
                      const FitConfig& cfg, double divergence_norm) {
  const Eigen::Index M = Xs.rows();
  const Eigen::Index S = Xs.cols();
  FitOutcome out;

  double pos = static_cast<double>((y.array() > 0).count());
  double neg = static_cast<double>(M) - pos;
  Eigen::VectorXd w = Eigen::VectorXd::Zero(S);
  double w0 = (pos > 0 && neg > 0) ? std::log(pos / neg) : (pos > 0 ? 15.0 : -15.0);

  double f = eval_loss(Xs, y, w, w0, lambda);
  Eigen::VectorXd g(S + 1);
  Eigen::MatrixXd H(S + 1, S + 1);

  for (int it = 0; it < cfg.max_newton_iters; ++it) {
    Eigen::VectorXd margins = y.array() * (Xs * w).array() + y.array() * w0;
    Eigen::VectorXd gm(M), hm(M);
    for (Eigen::Index m = 0; m < M; ++m) {
      double s = sigmoid(-margins[m]);
      gm[m] = -s * y[m];
      hm[m] = s * (1.0 - s);
    }
    g.head(S) = Xs.transpose() * gm + lambda * w;
    g[S] = gm.sum();
    out.grad_norm = g.norm();
    out.iterations = it;
    if (out.grad_norm <= cfg.newton_tol) {
      out.converged = true;
      break;
    }

    H.topLeftCorner(S, S) = Xs.transpose() * hm.asDiagonal() * Xs;
    H.topLeftCorner(S, S).diagonal().array() += lambda;
    H.block(0, S, S, 1) = Xs.transpose() * hm;
    H.block(S, 0, 1, S) = H.block(0, S, S, 1).transpose();
    H(S, S) = hm.sum();

    Eigen::VectorXd step;
    double ridge = 0.0;
    for (;;) {
      Eigen::MatrixXd Hr = H;
      if (ridge > 0) Hr.diagonal().array() += ridge;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(Hr);
      step = ldlt.solve(-g);
      if (ldlt.info() == Eigen::Success && step.allFinite() && g.dot(step) < 0) break;
      ridge = ridge == 0.0 ? 1e-10 : ridge * 100.0;
      if (ridge > 1e6) {
        step = -g;  // gradient fallback
        break;
      }
    }

    double slope = g.dot(step);
    double t = 1.0;
    const double c1 = 1e-4;
    double f_new = f;
    for (;;) {
      Eigen::VectorXd w_try = w + t * step.head(S);
      double w0_try = w0 + t * step[S];
      f_new = eval_loss(Xs, y, w_try, w0_try, lambda);
      if (f_new <= f + c1 * t * slope || t < 1e-14) {
        w = w_try;
        w0 = w0_try;
        break;
      }
      t *= 0.5;
    }
    f = f_new;

    if (divergence_norm > 0 && w.norm() > divergence_norm) {
      out.diverged = true;
      break;
    }
    if (lambda == 0.0 && w.norm() > 1e8) {
      out.diverged = true;
      break;
    }
  }

  out.params.theta = w;
  out.params.theta0 = w0;
  out.obj.loss_sum = eval_loss(Xs, y, w, w0, 0.0);
  out.obj.reg = 0.5 * lambda * w.squaredNorm();
  out.obj.total = out.obj.loss_sum + out.obj.reg;
  return out;
}

}  // namespace detail

FitOutcome fit_support(const Dataset& d, const std::vector<int>& support, double lambda,
                       const FitConfig& cfg) {
  std::vector<int> s = support;
  std::sort(s.begin(), s.end());
  if (!s.empty() && (s.front() < 0 || s.back() >= d.cols()))
    throw std::invalid_argument("support index out of range");
  if (std::adjacent_find(s.begin(), s.end()) != s.end())
    throw std::invalid_argument("duplicate support index");

  Eigen::MatrixXd Xs(d.rows(), static_cast<Eigen::Index>(s.size()));
  for (std::size_t j = 0; j < s.size(); ++j) Xs.col(static_cast<Eigen::Index>(j)) = d.X.col(s[j]);

  FitOutcome fit = detail::newton_fit(Xs, d.y, lambda, cfg);
  Eigen::VectorXd theta = Eigen::VectorXd::Zero(d.cols());
  for (std::size_t j = 0; j < s.size(); ++j) theta[s[j]] = fit.params.theta[static_cast<Eigen::Index>(j)];
  fit.params.theta = theta;
  return fit;
}

}  // namespace subsetx
