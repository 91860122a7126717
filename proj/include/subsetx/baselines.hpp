// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSETX_BASELINES_HPP
#define SUBSETX_BASELINES_HPP

#include <vector>

#include "subsetx/bnb.hpp"
#include "subsetx/dataset.hpp"

namespace subsetx {
namespace baselines {

/// |slope| of the unregularized univariable logistic fit per feature.
/// Separable single features score +inf.
Eigen::VectorXd univariable_scores(const Dataset& d);

/// Indices of the k largest univariable scores, ties toward lower index.
std::vector<int> greedy_topk(const Dataset& d, int k);

/// Scan features by decreasing score/cost ratio and keep every feature that
/// still fits the remaining budget (skipped features do not stop the scan).
std::vector<int> greedy_budget(const Dataset& d, double b);

/// Exhaustive enumeration over all feasible supports with a fixed-support
/// refit each; guards against N > 20.
bnb::SolveResult exhaustive_best_subset(const Dataset& d, const SelectionConstraint& constraint,
                                        double lambda, const FitConfig& cfg);

}  // namespace baselines
}  // namespace subsetx

#endif
