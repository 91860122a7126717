// SPDX-License-Identifier: Apache-2.0

#include "subsetx/eval.hpp"

#include <algorithm>
#include <atomic>
#include <cmath>
#include <map>
#include <mutex>
#include <random>
#include <set>
#include <stdexcept>
#include <thread>

#include <json.hpp>

#include "subsetx/baselines.hpp"

namespace subsetx {
namespace eval {

double auc(const Eigen::VectorXd& scores, const Eigen::VectorXd& labels) {
  if (scores.size() != labels.size()) throw std::invalid_argument("auc size mismatch");
  std::vector<double> pos, neg;
  for (Eigen::Index i = 0; i < labels.size(); ++i)
    (labels[i] > 0 ? pos : neg).push_back(scores[i]);
  if (pos.empty() || neg.empty()) throw std::invalid_argument("auc requires both classes");
  double wins = 0.0;
  for (double p : pos)
    for (double n : neg) {
      if (p > n)
        wins += 1.0;
      else if (p == n)
        wins += 0.5;
    }
  return wins / (static_cast<double>(pos.size()) * static_cast<double>(neg.size()));
}

double accuracy_at_half(const Eigen::VectorXd& probs, const Eigen::VectorXd& labels) {
  if (probs.size() != labels.size()) throw std::invalid_argument("accuracy size mismatch");
  if (probs.size() == 0) throw std::invalid_argument("accuracy on empty input");
  Eigen::Index correct = 0;
  for (Eigen::Index i = 0; i < probs.size(); ++i) {
    double pred = probs[i] >= 0.5 ? 1.0 : -1.0;
    if (pred == labels[i]) ++correct;
  }
  return static_cast<double>(correct) / static_cast<double>(probs.size());
}

std::vector<FoldSplit> stratified_kfold(const Eigen::VectorXd& y, int folds, std::uint64_t seed) {
  if (folds < 2) throw std::invalid_argument("folds must be >= 2");
  const int M = static_cast<int>(y.size());
  if (M < folds) throw std::invalid_argument("fewer examples than folds");
  std::vector<int> pos, neg;
  for (int i = 0; i < M; ++i) (y[i] > 0 ? pos : neg).push_back(i);
  std::mt19937_64 rng(seed);
  std::shuffle(pos.begin(), pos.end(), rng);
  std::shuffle(neg.begin(), neg.end(), rng);

  std::vector<std::vector<int>> test(static_cast<std::size_t>(folds));
  for (std::size_t i = 0; i < pos.size(); ++i) test[i % folds].push_back(pos[i]);
  for (std::size_t i = 0; i < neg.size(); ++i) test[i % folds].push_back(neg[i]);

  std::vector<FoldSplit> out(static_cast<std::size_t>(folds));
  for (int f = 0; f < folds; ++f) {
    std::sort(test[f].begin(), test[f].end());
    out[f].test = test[f];
    std::vector<bool> held(M, false);
    for (int i : test[f]) held[static_cast<std::size_t>(i)] = true;
    for (int i = 0; i < M; ++i)
      if (!held[static_cast<std::size_t>(i)]) out[f].train.push_back(i);
  }
  return out;
}

SelectorSpec SelectorSpec::bnb_cardinality(int k) {
  return {Kind::BnbCardinality, static_cast<double>(k)};
}
SelectorSpec SelectorSpec::bnb_budget(double b) { return {Kind::BnbBudget, b}; }
SelectorSpec SelectorSpec::greedy_topk(int k) { return {Kind::GreedyTopK, static_cast<double>(k)}; }
SelectorSpec SelectorSpec::greedy_budget(double b) { return {Kind::GreedyBudget, b}; }
SelectorSpec SelectorSpec::none() { return {Kind::None, 0.0}; }

const char* to_string(SelectorSpec::Kind k) {
  switch (k) {
    case SelectorSpec::Kind::BnbCardinality: return "bnb-cardinality";
    case SelectorSpec::Kind::BnbBudget: return "bnb-budget";
    case SelectorSpec::Kind::GreedyTopK: return "greedy-topk";
    case SelectorSpec::Kind::GreedyBudget: return "greedy-budget";
    case SelectorSpec::Kind::None: return "none";
  }
  return "none";
}

namespace detail {

std::uint64_t derive_seed(std::uint64_t seed, std::uint64_t stream) {
  std::uint64_t z = seed + 0x9e3779b97f4a7c15ULL * (stream + 1);
  z = (z ^ (z >> 30)) * 0xbf58476d1ce4e5b9ULL;
  z = (z ^ (z >> 27)) * 0x94d049bb133111ebULL;
  return z ^ (z >> 31);
}

std::vector<int> run_selector(const Dataset& train, const SelectorSpec& sel, double lambda,
                              const FitConfig& cfg) {
  const int N = static_cast<int>(train.cols());
  switch (sel.kind) {
    case SelectorSpec::Kind::None: {
      std::vector<int> all(static_cast<std::size_t>(N));
      for (int n = 0; n < N; ++n) all[static_cast<std::size_t>(n)] = n;
      return all;
    }
    case SelectorSpec::Kind::GreedyTopK: {
      int k = std::min(static_cast<int>(std::lround(sel.limit)), N);
      return baselines::greedy_topk(train, k);
    }
    case SelectorSpec::Kind::GreedyBudget:
      return baselines::greedy_budget(train, sel.limit);
    case SelectorSpec::Kind::BnbCardinality:
    case SelectorSpec::Kind::BnbBudget: {
      FitConfig solve_cfg = cfg;
      solve_cfg.lambda = lambda;
      SelectionConstraint c = sel.kind == SelectorSpec::Kind::BnbCardinality
                                  ? SelectionConstraint::cardinality(
                                        std::min(static_cast<double>(N), sel.limit))
                                  : SelectionConstraint::budget(sel.limit);
      bnb::SolveResult res = bnb::solve(train, c, lambda, solve_cfg);
      if (res.status == bnb::SolveStatus::Infeasible)
        throw std::runtime_error("selection subproblem infeasible");
      return res.support;
    }
  }
  throw std::logic_error("unknown selector kind");
}

}  // namespace detail

namespace {

struct Prepped {
  Dataset train;
  Dataset test;
  std::vector<int> out_to_in;
};

Prepped preprocess(const Dataset& d, const std::vector<int>& train_idx,
                   const std::vector<int>& test_idx, bool spline) {
  Prepped p;
  p.train = d.subset_rows(train_idx);
  p.test = d.subset_rows(test_idx);
  MinMaxScaler scaler = MinMaxScaler::fit(p.train.X);
  p.train.X = scaler.apply(p.train.X);
  p.test.X = scaler.apply(p.test.X);
  const int N = static_cast<int>(d.cols());
  p.out_to_in.resize(static_cast<std::size_t>(N));
  for (int n = 0; n < N; ++n) p.out_to_in[static_cast<std::size_t>(n)] = n;

  if (spline) {
    SplineBasis basis = SplineBasis::fit(p.train.X);
    p.out_to_in = basis.output_to_input();
    Dataset etrain, etest;
    etrain.X = basis.apply(p.train.X);
    etest.X = basis.apply(p.test.X);
    etrain.y = p.train.y;
    etest.y = p.test.y;
    if (!d.feature_names.empty()) {
      etrain.feature_names = basis.expand_names(p.train.feature_names);
      etest.feature_names = etrain.feature_names;
    }
    // Expanded columns inherit the source feature's metadata: selecting
    // any basis term means measuring that feature.
    if (d.has_classes()) {
      for (int j : p.out_to_in) {
        etrain.feature_class.push_back(d.feature_class[static_cast<std::size_t>(j)]);
      }
      etest.feature_class = etrain.feature_class;
    }
    if (d.has_costs()) {
      etrain.costs.resize(static_cast<Eigen::Index>(p.out_to_in.size()));
      for (std::size_t i = 0; i < p.out_to_in.size(); ++i)
        etrain.costs[static_cast<Eigen::Index>(i)] = d.costs[p.out_to_in[i]];
      etest.costs = etrain.costs;
    }
    p.train = std::move(etrain);
    p.test = std::move(etest);
  }
  return p;
}

double score_fold(const Dataset& train, const Dataset& test, const std::vector<int>& support,
                  double lambda, const FitConfig& cfg, Metric metric) {
  FitOutcome fit = fit_support(train, support, lambda, cfg);
  Eigen::VectorXd margins = test.X * fit.params.theta;
  margins.array() += fit.params.theta0;
  if (metric == Metric::Auc) return auc(margins, test.y);
  Eigen::VectorXd probs(margins.size());
  for (Eigen::Index i = 0; i < margins.size(); ++i) probs[i] = sigmoid(margins[i]);
  return accuracy_at_half(probs, test.y);
}

bool both_classes(const Eigen::VectorXd& y) {
  return (y.array() > 0).any() && (y.array() < 0).any();
}

}  // namespace

NestedCvResult nested_cv(const Dataset& d, const SelectorSpec& sel, const NestedCvOptions& opt,
                         const FitConfig& cfg) {
  if (opt.lambda_grid.empty()) throw std::invalid_argument("lambda grid must be nonempty");
  NestedCvResult out;
  std::vector<FoldSplit> outer = stratified_kfold(d.y, opt.folds, opt.seed);
  for (std::size_t o = 0; o < outer.size(); ++o) {
    Dataset train_d = d.subset_rows(outer[o].train);
    if (!both_classes(train_d.y))
      throw std::runtime_error("training partition lacks both classes");

    double best_lambda = opt.lambda_grid.front();
    double best_score = -1.0;
    std::vector<FoldSplit> inner =
        stratified_kfold(train_d.y, opt.folds, detail::derive_seed(opt.seed, 101 + o));
    for (double lambda : opt.lambda_grid) {
      double sum = 0.0;
      int counted = 0;
      for (const FoldSplit& f : inner) {
        Prepped p = preprocess(train_d, f.train, f.test, opt.spline_expand);
        if (!both_classes(p.train.y) || !both_classes(p.test.y)) continue;
        std::vector<int> support = detail::run_selector(p.train, sel, lambda, cfg);
        FitOutcome fit = fit_support(p.train, support, lambda, cfg);
        Eigen::VectorXd margins = p.test.X * fit.params.theta;
        margins.array() += fit.params.theta0;
        sum += auc(margins, p.test.y);
        ++counted;
      }
      if (counted == 0) throw std::runtime_error("no usable inner validation fold");
      double score = sum / counted;
      if (score > best_score || (score == best_score && lambda > best_lambda)) {
        best_score = score;
        best_lambda = lambda;
      }
    }

    Prepped p = preprocess(d, outer[o].train, outer[o].test, opt.spline_expand);
    std::vector<int> support = detail::run_selector(p.train, sel, best_lambda, cfg);
    std::set<int> input_support;
    for (int j : support) input_support.insert(p.out_to_in[static_cast<std::size_t>(j)]);
    out.fold_supports.emplace_back(input_support.begin(), input_support.end());
    out.chosen_lambda.push_back(best_lambda);
    if (opt.metric == Metric::Auc && !both_classes(p.test.y)) continue;
    out.fold_metrics.push_back(score_fold(p.train, p.test, support, best_lambda, cfg, opt.metric));
  }
  if (out.fold_metrics.empty()) throw std::runtime_error("no usable outer test fold");
  double sum = 0.0;
  for (double m : out.fold_metrics) sum += m;
  out.mean_metric = sum / static_cast<double>(out.fold_metrics.size());
  return out;
}

SelectionStats selection_stats(const std::vector<std::vector<int>>& supports,
                               const std::vector<FeatureClass>& classes) {
  SelectionStats s;
  if (supports.empty()) return s;
  const double R = static_cast<double>(supports.size());

  std::map<std::vector<int>, int> counts;
  for (const auto& sup : supports) ++counts[sup];
  int modal = 0;
  for (const auto& [sup, c] : counts) modal = std::max(modal, c);
  s.modal_support_freq = modal / R;

  if (!classes.empty()) {
    int max_index = 0;
    for (const auto& sup : supports)
      for (int n : sup) max_index = std::max(max_index, n);
    if (max_index >= static_cast<int>(classes.size()))
      throw std::invalid_argument("support index outside class tags");
    s.has_fractions = true;
    s.feature_frequency.assign(classes.size(), 0.0);
    double n_inf = 0, n_red = 0, n_unf = 0;
    for (FeatureClass c : classes) {
      if (c == FeatureClass::Informative) ++n_inf;
      if (c == FeatureClass::Redundant) ++n_red;
      if (c == FeatureClass::Uninformative) ++n_unf;
    }
    for (const auto& sup : supports) {
      double k_inf = 0, k_red = 0, k_unf = 0;
      for (int n : sup) {
        s.feature_frequency[static_cast<std::size_t>(n)] += 1.0 / R;
        FeatureClass c = classes[static_cast<std::size_t>(n)];
        if (c == FeatureClass::Informative) ++k_inf;
        if (c == FeatureClass::Redundant) ++k_red;
        if (c == FeatureClass::Uninformative) ++k_unf;
      }
      if (n_inf > 0) s.frac_informative += k_inf / n_inf / R;
      if (n_red > 0) s.frac_redundant += k_red / n_red / R;
      if (n_unf > 0) s.frac_uninformative += k_unf / n_unf / R;
    }
  }
  return s;
}

double nearest_rank_quantile(std::vector<double> values, double p) {
  if (values.empty()) throw std::invalid_argument("quantile of empty sample");
  if (p < 0.0 || p > 1.0) throw std::invalid_argument("quantile level outside [0,1]");
  std::sort(values.begin(), values.end());
  const auto R = static_cast<double>(values.size());
  auto rank = static_cast<std::size_t>(std::ceil(p * R));
  if (rank < 1) rank = 1;
  if (rank > values.size()) rank = values.size();
  return values[rank - 1];
}

EvalReport bootstrap_eval(const Dataset& d, const SelectorSpec& sel, const BootstrapOptions& opt,
                          const FitConfig& cfg) {
  if (opt.replicates < 1) throw std::invalid_argument("replicates must be >= 1");
  const int R = opt.replicates;
  const int M = static_cast<int>(d.rows());
  if (!both_classes(d.y)) throw std::invalid_argument("bootstrap requires both classes");

  EvalReport report;
  report.replicate_metrics.assign(static_cast<std::size_t>(R), 0.0);
  report.supports.resize(static_cast<std::size_t>(R));
  report.bootstrap_count = R;

  auto run_replicate = [&](int r) {
    std::uint64_t rs = detail::derive_seed(opt.seed, static_cast<std::uint64_t>(r));
    std::mt19937_64 rng(rs);
    std::uniform_int_distribution<int> pick(0, M - 1);
    std::vector<int> rows(static_cast<std::size_t>(M));
    bool ok = false;
    for (int attempt = 0; attempt < 100 && !ok; ++attempt) {
      for (int& row : rows) row = pick(rng);
      bool pos = false, neg = false;
      for (int row : rows) (d.y[row] > 0 ? pos : neg) = true;
      ok = pos && neg;
    }
    if (!ok) throw std::runtime_error("bootstrap replicate kept collapsing to one class");
    Dataset boot = d.subset_rows(rows);
    NestedCvOptions cv = opt.cv;
    cv.seed = detail::derive_seed(rs, 7);
    NestedCvResult res = nested_cv(boot, sel, cv, cfg);
    report.replicate_metrics[static_cast<std::size_t>(r)] = res.mean_metric;
    std::set<int> uni;
    for (const auto& sup : res.fold_supports) uni.insert(sup.begin(), sup.end());
    report.supports[static_cast<std::size_t>(r)].assign(uni.begin(), uni.end());
  };

  const int workers = std::max(1, opt.workers);
  if (workers == 1) {
    for (int r = 0; r < R; ++r) run_replicate(r);
  } else {
    std::atomic<int> next{0};
    std::exception_ptr first_error;
    std::mutex error_mutex;
    auto worker = [&] {
      for (;;) {
        int r = next.fetch_add(1);
        if (r >= R) return;
        try {
          run_replicate(r);
        } catch (...) {
          std::lock_guard<std::mutex> lock(error_mutex);
          if (!first_error) first_error = std::current_exception();
          return;
        }
      }
    };
    std::vector<std::thread> pool;
    for (int w = 0; w < workers; ++w) pool.emplace_back(worker);
    for (std::thread& t : pool) t.join();
    if (first_error) std::rethrow_exception(first_error);
  }

  double sum = 0.0;
  for (double m : report.replicate_metrics) sum += m;
  report.mean_test_metric = sum / R;
  report.ci_low = nearest_rank_quantile(report.replicate_metrics, 0.025);
  report.ci_high = nearest_rank_quantile(report.replicate_metrics, 0.975);
  report.stats = selection_stats(report.supports, d.feature_class);
  return report;
}

std::string report_to_json(const EvalReport& report) {
  nlohmann::json j;
  j["mean_test_metric"] = report.mean_test_metric;
  j["ci_low"] = report.ci_low;
  j["ci_high"] = report.ci_high;
  j["bootstrap_count"] = report.bootstrap_count;
  j["replicate_metrics"] = report.replicate_metrics;
  j["supports"] = report.supports;
  nlohmann::json s;
  s["modal_support_freq"] = report.stats.modal_support_freq;
  s["feature_frequency"] = report.stats.feature_frequency;
  if (report.stats.has_fractions) {
    s["frac_informative"] = report.stats.frac_informative;
    s["frac_redundant"] = report.stats.frac_redundant;
    s["frac_uninformative"] = report.stats.frac_uninformative;
  }
  j["selection"] = s;
  return j.dump(2);
}

}  // namespace eval
}  // namespace subsetx
