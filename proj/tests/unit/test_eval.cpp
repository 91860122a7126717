// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <algorithm>
#include <set>

#include "helpers.hpp"
#include "subsetx/datagen.hpp"
#include "subsetx/eval.hpp"

using namespace subsetx;

TEST_SUITE("eval") {

TEST_CASE("auc equals the brute-force pair count") {
  Eigen::VectorXd scores(8), labels(8);
  scores << 0.1, 0.9, 0.4, 0.4, 0.8, 0.2, 0.6, 0.4;
  labels << -1, 1, 1, -1, 1, -1, -1, 1;
  double wins = 0.0;
  int pairs = 0;
  for (int i = 0; i < 8; ++i)
    for (int j = 0; j < 8; ++j) {
      if (labels(i) <= 0 || labels(j) >= 0) continue;
      ++pairs;
      if (scores(i) > scores(j)) wins += 1.0;
      else if (scores(i) == scores(j)) wins += 0.5;
    }
  CHECK(eval::auc(scores, labels) == doctest::Approx(wins / pairs).epsilon(1e-12));

  Eigen::VectorXd one = Eigen::VectorXd::Ones(8);
  CHECK_THROWS_AS(eval::auc(scores, one), std::invalid_argument);
}

TEST_CASE("auc is 1 for perfect ranking and 1/2 for constant scores") {
  Eigen::VectorXd labels(6);
  labels << 1, 1, 1, -1, -1, -1;
  Eigen::VectorXd perfect(6);
  perfect << 0.9, 0.8, 0.7, 0.3, 0.2, 0.1;
  CHECK(eval::auc(perfect, labels) == 1.0);
  CHECK(eval::auc(Eigen::VectorXd::Constant(6, 0.5), labels) == 0.5);
}

TEST_CASE("accuracy at half counts correct threshold decisions") {
  Eigen::VectorXd probs(4), labels(4);
  probs << 0.9, 0.2, 0.7, 0.4;
  labels << 1, 1, -1, -1;
  CHECK(eval::accuracy_at_half(probs, labels) == doctest::Approx(0.5));
}

TEST_CASE("stratified folds partition indices and balance classes") {
  Eigen::VectorXd y(17);
  for (int i = 0; i < 17; ++i) y(i) = i < 5 ? 1.0 : -1.0;
  auto folds = eval::stratified_kfold(y, 3, 42);
  REQUIRE(folds.size() == 3);
  std::set<int> seen;
  for (const auto& f : folds) {
    for (int i : f.test) seen.insert(i);
    // train = complement of test
    CHECK(f.train.size() + f.test.size() == 17);
    for (int i : f.train) CHECK(std::find(f.test.begin(), f.test.end(), i) == f.test.end());
    int pos = 0;
    for (int i : f.test)
      if (y(i) > 0) ++pos;
    CHECK(pos >= 1);  // 5 positives over 3 folds: 1 or 2 each
    CHECK(pos <= 2);
  }
  CHECK(seen.size() == 17);
  // Seeded: same seed reproduces, different seed shuffles.
  auto again = eval::stratified_kfold(y, 3, 42);
  CHECK(again[0].test == folds[0].test);
}

TEST_CASE("nearest rank quantile returns the ceil(pR) order statistic") {
  std::vector<double> v{5.0, 1.0, 3.0, 2.0, 4.0};
  CHECK(eval::nearest_rank_quantile(v, 0.025) == 1.0);  // ceil(0.125) = 1st
  CHECK(eval::nearest_rank_quantile(v, 0.5) == 3.0);
  CHECK(eval::nearest_rank_quantile(v, 0.975) == 5.0);
  CHECK(eval::nearest_rank_quantile(v, 0.2) == 1.0);    // ceil(1.0) = 1st
  CHECK(eval::nearest_rank_quantile(v, 0.21) == 2.0);
}

TEST_CASE("selection stats fractions and modal support frequency") {
  std::vector<std::vector<int>> supports{{0, 1}, {0, 1}, {0, 2}};
  std::vector<FeatureClass> classes{FeatureClass::Informative, FeatureClass::Redundant,
                                    FeatureClass::Uninformative};
  eval::SelectionStats st = eval::selection_stats(supports, classes);
  CHECK(st.has_fractions);
  // Per class: mean selection frequency of that class's features.
  CHECK(st.frac_informative == doctest::Approx(1.0));
  CHECK(st.frac_redundant == doctest::Approx(2.0 / 3.0));
  CHECK(st.frac_uninformative == doctest::Approx(1.0 / 3.0));
  CHECK(st.modal_support_freq == doctest::Approx(2.0 / 3.0));
  REQUIRE(st.feature_frequency.size() == 3);
  CHECK(st.feature_frequency[0] == doctest::Approx(1.0));
  CHECK(st.feature_frequency[2] == doctest::Approx(1.0 / 3.0));
}

TEST_CASE("nested cv reports per-fold metrics and input-space supports") {
  datagen::ScenarioConfig cfg;
  cfg.seed = 21;
  Dataset d = datagen::generate(cfg);
  eval::NestedCvOptions opt;
  opt.seed = 4;
  FitConfig fc;
  fc.rel_gap_tol = 1e-2;
  eval::NestedCvResult r = eval::nested_cv(d, eval::SelectorSpec::greedy_topk(5), opt, fc);
  CHECK(r.fold_metrics.size() == 3);
  CHECK(r.chosen_lambda.size() == 3);
  for (double l : r.chosen_lambda)
    CHECK((l == 0.1 || l == 0.02 || l == 0.004));
  for (const auto& s : r.fold_supports) {
    CHECK(s.size() <= 5);
    for (int j : s) CHECK(j < 14);
  }
  CHECK(r.mean_metric > 0.5);  // informative signal present

  // Spline expansion maps supports back to input features.
  opt.spline_expand = true;
  eval::NestedCvResult rs = eval::nested_cv(d, eval::SelectorSpec::greedy_topk(5), opt, fc);
  for (const auto& s : rs.fold_supports)
    for (int j : s) CHECK(j < 14);
}

TEST_CASE("bootstrap report is identical for any worker count") {
  datagen::ScenarioConfig cfg;
  cfg.seed = 22;
  Dataset d = datagen::generate(cfg);
  eval::BootstrapOptions opt;
  opt.replicates = 6;
  opt.seed = 9;
  FitConfig fc;
  fc.rel_gap_tol = 1e-2;
  eval::SelectorSpec sel = eval::SelectorSpec::greedy_topk(4);
  opt.workers = 1;
  eval::EvalReport r1 = eval::bootstrap_eval(d, sel, opt, fc);
  opt.workers = 4;
  eval::EvalReport r4 = eval::bootstrap_eval(d, sel, opt, fc);
  CHECK(r1.replicate_metrics == r4.replicate_metrics);
  CHECK(r1.supports == r4.supports);
  CHECK(eval::report_to_json(r1) == eval::report_to_json(r4));
  CHECK(r1.bootstrap_count == 6);
  CHECK(r1.ci_low <= r1.mean_test_metric);
  CHECK(r1.ci_high >= r1.mean_test_metric);
}

TEST_CASE("report json carries the schema-relevant keys") {
  eval::EvalReport r;
  r.mean_test_metric = 0.75;
  r.ci_low = 0.7;
  r.ci_high = 0.8;
  r.replicate_metrics = {0.7, 0.8};
  r.supports = {{0}, {1}};
  r.bootstrap_count = 2;
  std::string js = eval::report_to_json(r);
  CHECK(js.find("\"mean_test_metric\"") != std::string::npos);
  CHECK(js.find("\"ci_low\"") != std::string::npos);
  CHECK(js.find("\"selection\"") != std::string::npos);
  CHECK(js.find("\"supports\"") != std::string::npos);
}

}  // TEST_SUITE
