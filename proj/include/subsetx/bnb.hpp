// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSETX_BNB_HPP
#define SUBSETX_BNB_HPP

#include <iosfwd>
#include <vector>

#include "subsetx/dataset.hpp"
#include "subsetx/logistic.hpp"

namespace subsetx {
namespace bnb {

struct Node {
  std::vector<int> fixed_in;   // z_n = 1
  std::vector<int> fixed_out;  // z_n = 0
  double lower_bound = -std::numeric_limits<double>::infinity();
  int depth = 0;
};

enum class SolveStatus { Optimal, GapReached, NodeLimit, Infeasible };

const char* to_string(SolveStatus s);

struct SolveResult {
  ModelParams params;
  std::vector<int> support;
  double objective = std::numeric_limits<double>::infinity();
  double lower_bound = -std::numeric_limits<double>::infinity();
  double rel_gap = std::numeric_limits<double>::infinity();
  long nodes_explored = 0;
  SolveStatus status = SolveStatus::Infeasible;
};

/// Certifiably optimal best-subset search for the L2-regularized softplus
/// objective under a cardinality or budget constraint.  Branches on the
/// selection variables, bounds nodes through a Lagrangian relaxation of the
/// budget row with a reverse-Huber perspective penalty, and refines
/// incumbents with fixed-support Newton refits.  Deterministic for fixed
/// inputs.
SolveResult solve(const Dataset& d, const SelectionConstraint& constraint, double lambda,
                  const FitConfig& cfg, std::ostream* trace = nullptr);

/// Valid lower bound on every integer-feasible completion of `node`.
double node_lower_bound(const Dataset& d, const Node& node,
                        const SelectionConstraint& constraint, double lambda,
                        const FitConfig& cfg);

/// Greedy rounding of the node relaxation followed by a fixed-support refit;
/// the returned objective is a valid upper bound.
std::pair<std::vector<int>, Objective> incumbent_heuristic(const Dataset& d, const Node& node,
                                                           const SelectionConstraint& constraint,
                                                           double lambda, const FitConfig& cfg);

/// Free index with the largest lambda*theta^2/2 contribution in the
/// relaxation solution; ties break toward the lowest index.
int branch_select(const Node& node, const Eigen::VectorXd& relaxation_theta);

namespace detail {

/// Cumulative inner-solver counters for performance diagnosis; not part of
/// the stable interface and not thread-safe.
struct SolveStats {
  long newton_calls = 0;
  long newton_iters = 0;
  long newton_failures = 0;
  long mu_evals = 0;
};
SolveStats& stats();

}  // namespace detail

}  // namespace bnb
}  // namespace subsetx

#endif
