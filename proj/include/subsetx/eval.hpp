// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSETX_EVAL_HPP
#define SUBSETX_EVAL_HPP

#include <cstdint>
#include <string>
#include <vector>

#include "subsetx/bnb.hpp"
#include "subsetx/dataset.hpp"

namespace subsetx {
namespace eval {

/// Mann-Whitney AUC: probability that a random positive outscores a random
/// negative, ties counted as 1/2.  Throws on single-class labels.
double auc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels);

/// Fraction of correct decisions with the threshold at p = 0.5.
double accuracy_at_half(const Eigen::VectorXd& probs, const Eigen::VectorXd& labels);

struct FoldSplit {
  std::vector<int> train;
  std::vector<int> test;
};

/// Stratified k-fold partition: per-class round robin after a seeded
/// shuffle, so per-fold class counts differ by at most one.
std::vector<FoldSplit> stratified_kfold(const Eigen::VectorXd& y, int folds, std::uint64_t seed);

enum class Metric { Auc, Accuracy };

struct SelectorSpec {
  enum class Kind { BnbCardinality, BnbBudget, GreedyTopK, GreedyBudget, None };
  Kind kind = Kind::None;
  double limit = 0.0;  // k for cardinality kinds, b for budget kinds

  static SelectorSpec bnb_cardinality(int k);
  static SelectorSpec bnb_budget(double b);
  static SelectorSpec greedy_topk(int k);
  static SelectorSpec greedy_budget(double b);
  static SelectorSpec none();
};

const char* to_string(SelectorSpec::Kind k);

struct NestedCvOptions {
  std::vector<double> lambda_grid{0.1, 0.02, 0.004};
  int folds = 3;
  Metric metric = Metric::Auc;
  bool spline_expand = false;
  std::uint64_t seed = 0;
};

struct NestedCvResult {
  double mean_metric = 0.0;
  std::vector<double> fold_metrics;
  std::vector<double> chosen_lambda;            // per outer fold
  std::vector<std::vector<int>> fold_supports;  // input-feature indices
};

/// Outer loop estimates the test metric; the inner loop tunes lambda on
/// validation AUC (ties break toward larger lambda).  Scaling, spline
/// knots, and selection are all refit inside each training partition.
NestedCvResult nested_cv(const Dataset& d, const SelectorSpec& sel, const NestedCvOptions& opt,
                         const FitConfig& cfg);

struct SelectionStats {
  bool has_fractions = false;
  double frac_informative = 0.0;
  double frac_redundant = 0.0;
  double frac_uninformative = 0.0;
  double modal_support_freq = 0.0;
  std::vector<double> feature_frequency;
};

SelectionStats selection_stats(const std::vector<std::vector<int>>& supports,
                               const std::vector<FeatureClass>& classes);

struct BootstrapOptions {
  int replicates = 399;
  std::uint64_t seed = 0;
  int workers = 1;
  NestedCvOptions cv;
};

struct EvalReport {
  double mean_test_metric = 0.0;
  double ci_low = 0.0;
  double ci_high = 0.0;
  std::vector<double> replicate_metrics;
  std::vector<std::vector<int>> supports;  // per replicate, union over outer folds
  SelectionStats stats;
  int bootstrap_count = 0;
};

/// Nonparametric bootstrap around the whole nested CV.  Replicates use
/// derived per-replicate seeds and merge by index, so the report is
/// identical for any worker count.
EvalReport bootstrap_eval(const Dataset& d, const SelectorSpec& sel, const BootstrapOptions& opt,
                          const FitConfig& cfg);

/// Nearest-rank empirical quantile: the ceil(p*R)-th order statistic.
double nearest_rank_quantile(std::vector<double> values, double p);

std::string report_to_json(const EvalReport& report);

namespace detail {
std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream);
std::vector<int> run_selector(const Dataset& train, const SelectorSpec& sel, double lambda,
                              const FitConfig& cfg);
}  // namespace detail

}  // namespace eval
}  // namespace subsetx

#endif
