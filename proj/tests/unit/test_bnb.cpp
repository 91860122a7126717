// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <random>

#include "helpers.hpp"
#include "subsetx/baselines.hpp"
#include "subsetx/bnb.hpp"

using namespace subsetx;

TEST_SUITE("bnb") {

TEST_CASE("solver matches exhaustive enumeration on random instances") {
  // The oracle refits every feasible support independently of the
  // branch-and-bound machinery.
  std::mt19937_64 rng(9000);
  for (int inst = 0; inst < 40; ++inst) {
    int n = 5 + static_cast<int>(rng() % 4);  // 5..8
    Dataset d = testutil::random_instance(40, n, 9000 + inst);
    double lambda = std::vector<double>{0.1, 0.02, 0.004}[inst % 3];
    SelectionConstraint c = SelectionConstraint::cardinality(1 + static_cast<int>(rng() % 4));
    if (inst % 3 == 1) {
      d.costs = testutil::random_integer_costs(n, inst);
      c = SelectionConstraint::budget(3.0 + static_cast<double>(rng() % 8));
    }
    FitConfig cfg;
    cfg.rel_gap_tol = 1e-8;
    cfg.abs_gap_tol = 1e-10;
    bnb::SolveResult got = bnb::solve(d, c, lambda, cfg);
    bnb::SolveResult ref = baselines::exhaustive_best_subset(d, c, lambda, cfg);
    REQUIRE(got.status != bnb::SolveStatus::Infeasible);
    CHECK(got.objective == doctest::Approx(ref.objective).epsilon(1e-6));
    CHECK(got.lower_bound <= ref.objective + 1e-6 * (1.0 + std::abs(ref.objective)));
  }
}

TEST_CASE("cardinality k equals unit-cost budget b = k") {
  for (int inst = 0; inst < 15; ++inst) {
    Dataset d = testutil::random_instance(35, 6, 9500 + inst);
    int k = 1 + inst % 4;
    FitConfig cfg;
    cfg.rel_gap_tol = 1e-8;
    bnb::SolveResult a = bnb::solve(d, SelectionConstraint::cardinality(k), 0.02, cfg);
    Dataset du = d;
    du.costs = Eigen::VectorXd::Ones(6);
    bnb::SolveResult b = bnb::solve(du, SelectionConstraint::budget(k), 0.02, cfg);
    CHECK(a.objective == doctest::Approx(b.objective).epsilon(1e-6));
  }
}

TEST_CASE("node lower bound never exceeds a feasible completion") {
  std::mt19937_64 rng(41);
  Dataset d = testutil::random_instance(30, 6, 41);
  d.costs = testutil::random_integer_costs(6, 41);
  SelectionConstraint c = SelectionConstraint::budget(9.0);
  FitConfig cfg;
  for (int trial = 0; trial < 20; ++trial) {
    bnb::Node node;
    for (int j = 0; j < 6; ++j) {
      int r = static_cast<int>(rng() % 3);
      if (r == 0) node.fixed_in.push_back(j);
      if (r == 1) node.fixed_out.push_back(j);
    }
    double spent = 0.0;
    for (int j : node.fixed_in) spent += d.costs(j);
    if (spent > 9.0) continue;
    double lb = bnb::node_lower_bound(d, node, c, 0.1, cfg);
    // Oracle: the fixed_in support itself is a feasible completion.
    FitOutcome fit = fit_support(d, node.fixed_in, 0.1, cfg);
    CHECK(lb <= fit.obj.total + 1e-7 * (1.0 + std::abs(fit.obj.total)));
  }
}

TEST_CASE("incumbent heuristic returns a feasible support and true objective") {
  Dataset d = testutil::random_instance(30, 7, 42);
  d.costs = testutil::random_integer_costs(7, 42);
  SelectionConstraint c = SelectionConstraint::budget(10.0);
  FitConfig cfg;
  bnb::Node root;
  auto [support, obj] = bnb::incumbent_heuristic(d, root, c, 0.1, cfg);
  double spent = 0.0;
  for (int j : support) spent += d.costs(j);
  CHECK(spent <= 10.0 + 1e-9);
  FitOutcome refit = fit_support(d, support, 0.1, cfg);
  CHECK(obj.total == doctest::Approx(refit.obj.total).epsilon(1e-8));
}

TEST_CASE("branch_select picks the largest ridge contribution, ties to low index") {
  bnb::Node node;
  node.fixed_in = {1};
  node.fixed_out = {3};
  Eigen::VectorXd theta(5);
  theta << 0.5, 9.0, -0.7, 9.0, 0.7;
  // Free coordinates are 0, 2, 4; |theta| ties between 2 and 4.
  CHECK(bnb::branch_select(node, theta) == 2);
  theta(0) = 2.0;
  CHECK(bnb::branch_select(node, theta) == 0);
}

TEST_CASE("status reporting: infeasible, node limit, optimal") {
  Dataset d = testutil::random_instance(20, 4, 43);
  d.costs = Eigen::VectorXd::Constant(4, 5.0);
  FitConfig cfg;
  bnb::SolveResult inf = bnb::solve(d, SelectionConstraint::budget(2.0), 0.1, cfg);
  // Empty support is always feasible, so a tiny budget still solves.
  CHECK(inf.status == bnb::SolveStatus::Optimal);
  CHECK(inf.support.empty());

  FitConfig limited;
  limited.max_nodes = 1;
  limited.rel_gap_tol = 1e-12;
  limited.abs_gap_tol = 1e-14;
  Dataset big = testutil::random_instance(40, 10, 44);
  bnb::SolveResult nl = bnb::solve(big, SelectionConstraint::cardinality(4), 0.004, limited);
  CHECK(nl.status == bnb::SolveStatus::NodeLimit);
  CHECK(nl.rel_gap > 0.0);

  bnb::SolveResult ok = bnb::solve(d, SelectionConstraint::cardinality(2), 0.1, cfg);
  CHECK(ok.status == bnb::SolveStatus::Optimal);
  CHECK(ok.support.size() == 2);
}

TEST_CASE("certified gap brackets the optimum") {
  Dataset d = testutil::random_instance(50, 8, 45);
  FitConfig cfg;
  cfg.rel_gap_tol = 1e-2;
  bnb::SolveResult res = bnb::solve(d, SelectionConstraint::cardinality(3), 0.02, cfg);
  FitConfig tight;
  tight.rel_gap_tol = 1e-9;
  tight.abs_gap_tol = 1e-12;
  bnb::SolveResult exact = baselines::exhaustive_best_subset(
      d, SelectionConstraint::cardinality(3), 0.02, tight);
  CHECK(res.lower_bound <= exact.objective + 1e-9 * (1.0 + exact.objective));
  CHECK(res.objective + 1e-12 >= exact.objective - 1e-9 * (1.0 + exact.objective));
  CHECK((res.objective - res.lower_bound) / std::max(1e-12, std::abs(res.objective)) <=
        1e-2 + 1e-9);
}

TEST_CASE("deterministic across repeated solves") {
  Dataset d = testutil::random_instance(45, 9, 46);
  FitConfig cfg;
  bnb::SolveResult a = bnb::solve(d, SelectionConstraint::cardinality(3), 0.02, cfg);
  bnb::SolveResult b = bnb::solve(d, SelectionConstraint::cardinality(3), 0.02, cfg);
  CHECK(a.objective == b.objective);
  CHECK(a.support == b.support);
  CHECK(a.nodes_explored == b.nodes_explored);
  CHECK(a.params.theta == b.params.theta);
}

TEST_CASE("exact knapsack fathoming keeps integral-budget solutions optimal") {
  // Costs and budget integral: interior rounding must not cut the optimum.
  for (int inst = 0; inst < 10; ++inst) {
    Dataset d = testutil::random_instance(30, 6, 47 + inst);
    d.costs = testutil::random_integer_costs(6, 47 + inst);
    FitConfig cfg;
    cfg.rel_gap_tol = 1e-8;
    SelectionConstraint c = SelectionConstraint::budget(6.0);
    bnb::SolveResult got = bnb::solve(d, c, 0.02, cfg);
    bnb::SolveResult ref = baselines::exhaustive_best_subset(d, c, 0.02, cfg);
    CHECK(got.objective == doctest::Approx(ref.objective).epsilon(1e-6));
  }
}

}  // TEST_SUITE
