// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "subsetx/logistic.hpp"

using namespace subsetx;

TEST_SUITE("logistic") {

TEST_CASE("softplus and sigmoid identities across extreme arguments") {
  for (double t : {-800.0, -40.0, -2.0, 0.0, 3.0, 40.0, 800.0}) {
    CHECK(std::isfinite(softplus(t)));
    CHECK(softplus(t) >= 0.0);
    // softplus(t) - softplus(-t) = -t
    CHECK(softplus(t) - softplus(-t) == doctest::Approx(-t).epsilon(1e-12));
    double s = sigmoid(t);
    CHECK(s >= 0.0);
    CHECK(s <= 1.0);
    CHECK(s + sigmoid(-t) == doctest::Approx(1.0).epsilon(1e-12));
  }
  CHECK(softplus(0.0) == doctest::Approx(std::log(2.0)));
}

TEST_CASE("objective decomposes into loss and regularizer") {
  Dataset d = testutil::random_instance(25, 4, 11);
  ModelParams p;
  p.theta = Eigen::VectorXd::LinSpaced(4, -0.5, 1.0);
  p.theta0 = 0.3;
  Objective o = objective(d, p, 0.1);
  double loss = 0.0;
  for (int m = 0; m < 25; ++m) loss += softplus(d.y(m) * (d.X.row(m).dot(p.theta) + p.theta0));
  CHECK(o.loss_sum == doctest::Approx(loss).epsilon(1e-12));
  CHECK(o.reg == doctest::Approx(0.05 * p.theta.squaredNorm()).epsilon(1e-12));
  CHECK(o.total == doctest::Approx(o.loss_sum + o.reg).epsilon(1e-12));
}

TEST_CASE("analytic gradient matches central finite differences") {
  // Independent oracle: two-sided differences of the objective.
  std::mt19937_64 rng(5);
  std::normal_distribution<double> gauss(0.0, 0.5);
  const double h = 1e-6;
  for (int inst = 0; inst < 20; ++inst) {
    Dataset d = testutil::random_instance(30, 5, 100 + inst);
    double lambda = inst % 2 == 0 ? 0.1 : 0.004;
    for (int pt = 0; pt < 5; ++pt) {
      ModelParams p;
      p.theta = Eigen::VectorXd::NullaryExpr(5, [&](Eigen::Index) { return gauss(rng); });
      p.theta0 = gauss(rng);
      auto [g, g0] = gradient(d, p, lambda);
      for (int j = 0; j < 5; ++j) {
        ModelParams hi = p, lo = p;
        hi.theta(j) += h;
        lo.theta(j) -= h;
        double fd = (objective(d, hi, lambda).total - objective(d, lo, lambda).total) / (2 * h);
        CHECK(g(j) == doctest::Approx(fd).epsilon(1e-5));
      }
      ModelParams hi = p, lo = p;
      hi.theta0 += h;
      lo.theta0 -= h;
      double fd0 = (objective(d, hi, lambda).total - objective(d, lo, lambda).total) / (2 * h);
      CHECK(g0 == doctest::Approx(fd0).epsilon(1e-5));
    }
  }
}

TEST_CASE("fit_support reaches a stationary point with zeros off support") {
  Dataset d = testutil::random_instance(60, 6, 12);
  std::vector<int> support{0, 2, 5};
  FitConfig cfg;
  FitOutcome out = fit_support(d, support, 0.02, cfg);
  CHECK(out.converged);
  CHECK(out.params.theta(1) == 0.0);
  CHECK(out.params.theta(3) == 0.0);
  CHECK(out.params.theta(4) == 0.0);
  auto [g, g0] = gradient(d, out.params, 0.02);
  for (int j : support) CHECK(std::abs(g(j)) < 1e-6);
  CHECK(std::abs(g0) < 1e-6);
}

TEST_CASE("fit_support objective is optimal against a grid perturbation") {
  Dataset d = testutil::random_instance(40, 3, 13);
  FitConfig cfg;
  FitOutcome out = fit_support(d, {0, 1, 2}, 0.1, cfg);
  std::mt19937_64 rng(77);
  std::normal_distribution<double> gauss(0.0, 0.05);
  for (int trial = 0; trial < 50; ++trial) {
    ModelParams q = out.params;
    for (int j = 0; j < 3; ++j) q.theta(j) += gauss(rng);
    q.theta0 += gauss(rng);
    CHECK(objective(d, q, 0.1).total >= out.obj.total - 1e-10);
  }
}

TEST_CASE("intercept is not penalized") {
  // Huge lambda crushes theta to near zero but leaves theta0 free, so the
  // loss approaches the intercept-only fit instead of the all-zero model.
  Dataset d = testutil::random_instance(30, 2, 14);
  FitConfig cfg;
  FitOutcome with_all = fit_support(d, {0, 1}, 1000.0, cfg);
  CHECK(with_all.converged);
  CHECK(with_all.params.theta.norm() < 1e-2);
  FitOutcome intercept_only = fit_support(d, {}, 1000.0, cfg);
  CHECK(with_all.obj.loss_sum ==
        doctest::Approx(intercept_only.obj.loss_sum).epsilon(1e-2));
}

TEST_CASE("predict_proba matches sigmoid of the linear score") {
  Dataset d = testutil::random_instance(5, 3, 15);
  ModelParams p;
  p.theta = Eigen::VectorXd::Constant(3, 0.4);
  p.theta0 = -0.2;
  for (int m = 0; m < 5; ++m) {
    Eigen::VectorXd x = d.X.row(m);
    CHECK(predict_proba(p, x) ==
          doctest::Approx(sigmoid(x.dot(p.theta) + p.theta0)).epsilon(1e-12));
  }
}

TEST_CASE("newton_fit flags divergence on separable unregularized data") {
  // Tiny feature scale forces the separating slope past the norm guard.
  Dataset d = testutil::random_instance(20, 1, 16);
  for (int m = 0; m < 20; ++m) d.y(m) = d.X(m, 0) > 0 ? 1.0 : -1.0;
  d.X *= 1e-3;
  FitConfig cfg;
  cfg.lambda = 0.0;
  FitOutcome out = detail::newton_fit(d.X, d.y, 0.0, cfg, 1e3);
  CHECK(out.diverged);
}

}  // TEST_SUITE
