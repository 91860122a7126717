// SPDX-License-Identifier: Apache-2.0

#include <algorithm>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <iostream>
#include <map>
#include <random>
#include <set>
#include <sstream>
#include <string>
#include <vector>

#include <CLI11.hpp>
#include <json.hpp>

#include "subsetx/baselines.hpp"
#include "subsetx/bnb.hpp"
#include "subsetx/conic.hpp"
#include "subsetx/datagen.hpp"
#include "subsetx/dataset.hpp"
#include "subsetx/eval.hpp"
#include "subsetx/logistic.hpp"
#include "svgchart.hpp"

namespace fs = std::filesystem;
using nlohmann::json;
using namespace subsetx;

namespace {

constexpr int kExitUsage = 2;
constexpr int kExitNumerical = 3;
constexpr int kExitGuard = 4;

struct CliExit {
  int code;
  std::string message;
};

std::string fmt17(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

void write_text(const std::string& path, const std::string& content) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << content;
}

int worker_count(int flag_value) {
  if (flag_value > 0) return flag_value;
  if (const char* env = std::getenv("SUBSETX_WORKERS")) {
    int w = std::atoi(env);
    if (w > 0) return w;
  }
  return 1;
}

/// JSON config file: keys mirror long flag names (dashes stripped to
/// underscores); command-line flags win over config values.
struct ConfigBinding {
  std::string flag;  // e.g. "--lambda"
  std::function<void(const json&)> apply;
};

void apply_config(CLI::App* sub, const std::string& path,
                  const std::vector<ConfigBinding>& bindings) {
  if (path.empty()) return;
  std::ifstream in(path);
  if (!in) throw std::invalid_argument("cannot read config file " + path);
  json cfg = json::parse(in);
  for (const auto& b : bindings) {
    std::string key = b.flag.substr(2);
    std::replace(key.begin(), key.end(), '-', '_');
    if (cfg.contains(key) && sub->count(b.flag) == 0) b.apply(cfg[key]);
  }
}

Eigen::VectorXd read_costs(const std::string& spec, int n) {
  if (spec.rfind("uniform:", 0) == 0) {
    std::uint64_t seed = std::stoull(spec.substr(8));
    return datagen::sample_costs(n, seed);
  }
  std::ifstream in(spec);
  if (!in) throw std::invalid_argument("cannot read costs file " + spec);
  std::vector<double> values;
  std::string token;
  bool first = true;
  while (in) {
    char c = static_cast<char>(in.get());
    bool sep = c == ',' || c == '\n' || c == '\r' || c == ' ' || c == '\t' || !in;
    if (!sep) {
      token += c;
      continue;
    }
    if (token.empty()) continue;
    try {
      values.push_back(std::stod(token));
    } catch (const std::exception&) {
      if (!first) throw std::invalid_argument("non-numeric cost entry: " + token);
    }
    first = false;
    token.clear();
  }
  if (static_cast<int>(values.size()) != n)
    throw std::invalid_argument("expected " + std::to_string(n) + " costs, got " +
                                std::to_string(values.size()));
  Eigen::VectorXd costs(n);
  for (int i = 0; i < n; ++i) costs[i] = values[static_cast<std::size_t>(i)];
  return costs;
}

json solve_result_json(const bnb::SolveResult& res, const Dataset& d, double lambda) {
  json j;
  j["status"] = bnb::to_string(res.status);
  j["lambda"] = lambda;
  if (d.has_costs())
    j["costs"] = std::vector<double>(d.costs.data(), d.costs.data() + d.costs.size());
  j["objective"] = res.objective;
  j["lower_bound"] = res.lower_bound;
  j["rel_gap"] = res.rel_gap;
  j["nodes_explored"] = res.nodes_explored;
  j["support"] = res.support;
  j["theta"] = std::vector<double>(res.params.theta.data(),
                                   res.params.theta.data() + res.params.theta.size());
  j["theta0"] = res.params.theta0;
  if (!d.feature_names.empty()) {
    std::vector<std::string> names;
    for (int n : res.support) names.push_back(d.feature_names[static_cast<std::size_t>(n)]);
    j["selected_names"] = names;
  }
  return j;
}

json scenario_json(const datagen::ScenarioConfig& cfg, const Dataset& d) {
  json j;
  j["m_examples"] = cfg.m_examples;
  j["n_features"] = cfg.n_features;
  j["n_informative"] = cfg.n_informative;
  j["n_redundant"] = cfg.n_redundant;
  j["label_noise"] = cfg.label_noise;
  j["minority_fraction"] = cfg.minority_fraction;
  j["class_sep"] = cfg.class_sep;
  j["seed"] = cfg.seed;
  j["epv"] = epv(d);
  return j;
}

std::vector<int> parse_index_list(const std::string& spec, int max_exclusive) {
  std::vector<int> out;
  if (spec.empty()) {
    for (int i = 0; i < max_exclusive; ++i) out.push_back(i);
    return out;
  }
  std::stringstream ss(spec);
  std::string item;
  while (std::getline(ss, item, ',')) {
    int v = std::stoi(item);
    if (v < 0 || v >= max_exclusive)
      throw std::invalid_argument("index " + item + " out of range");
    out.push_back(v);
  }
  return out;
}

// ---------------------------------------------------------------- solve

int cmd_solve(const std::string& data_path, const std::string& label_column,
              const std::string& positive_label, int k, double budget, bool has_k,
              bool has_budget, const std::string& costs_spec, double lambda, double gap,
              double abs_gap, long max_nodes, bool scale, const std::string& out_path,
              const std::string& cbf_path) {
  if (has_k == has_budget)
    throw CliExit{kExitUsage, "exactly one of --k and --budget is required"};
  Dataset d = load_csv(data_path, label_column, positive_label);
  if (!costs_spec.empty()) {
    d.costs = read_costs(costs_spec, static_cast<int>(d.cols()));
    d.validate();
  }
  if (has_budget && !d.has_costs())
    throw CliExit{kExitUsage, "--budget requires --costs"};
  if (scale) d = minmax_scale(d);

  SelectionConstraint constraint = has_k ? SelectionConstraint::cardinality(k)
                                         : SelectionConstraint::budget(budget);
  FitConfig cfg;
  cfg.lambda = lambda;
  cfg.rel_gap_tol = gap;
  cfg.abs_gap_tol = abs_gap;
  cfg.max_nodes = max_nodes;

  bnb::SolveResult res = bnb::solve(d, constraint, lambda, cfg);
  if (!cbf_path.empty()) export_cbf(build_program(d, constraint, lambda), cbf_path);

  std::string text = solve_result_json(res, d, lambda).dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);

  bool ok = res.status == bnb::SolveStatus::Optimal || res.status == bnb::SolveStatus::GapReached;
  return ok ? 0 : kExitNumerical;
}

// ---------------------------------------------------------------- synth

int cmd_synth(const std::string& scenario, std::uint64_t seed, const std::string& out_dir) {
  fs::create_directories(out_dir);
  std::vector<datagen::ScenarioConfig> grid = datagen::scenario_grid(seed);
  std::vector<int> indices =
      parse_index_list(scenario == "all" ? "" : scenario, static_cast<int>(grid.size()));
  for (int i : indices) {
    Dataset d = datagen::generate(grid[static_cast<std::size_t>(i)]);
    std::string stem = out_dir + "/scenario_" + std::to_string(i);
    write_csv(d, stem + ".csv");
    write_text(stem + ".json",
               scenario_json(grid[static_cast<std::size_t>(i)], d).dump(2) + "\n");
  }
  return 0;
}

// ---------------------------------------------------------------- experiment

struct CellResult {
  int scenario = 0;
  int run = 0;
  std::string selector;
  double epv = 0.0;
  double noise = 0.0;
  int m = 0, n = 0;
  eval::EvalReport report;
  std::vector<double> repl_frac_inf, repl_frac_red, repl_frac_unf;
};

std::vector<double> replicate_class_fractions(const eval::EvalReport& report,
                                              const std::vector<FeatureClass>& classes,
                                              FeatureClass which) {
  double total = 0;
  for (FeatureClass c : classes)
    if (c == which) ++total;
  std::vector<double> out;
  for (const auto& sup : report.supports) {
    double hit = 0;
    for (int n : sup)
      if (classes[static_cast<std::size_t>(n)] == which) ++hit;
    out.push_back(total > 0 ? hit / total : 0.0);
  }
  return out;
}

int cmd_experiment(const std::string& suite, const std::string& scale, int replicates,
                   const std::string& out_dir, std::uint64_t seed, int workers_flag, double gap,
                   bool yes_expensive, const std::string& scenarios_spec,
                   const std::string& runs_spec) {
  if (suite != "cardinality" && suite != "budget")
    throw CliExit{kExitUsage, "--suite must be cardinality or budget"};
  if (scale != "desk" && scale != "paper")
    throw CliExit{kExitUsage, "--scale must be desk or paper"};
  if (scale == "paper" && !yes_expensive)
    throw CliExit{kExitGuard,
                  "paper-scale suite is expensive; pass --yes-expensive to confirm"};
  if (replicates <= 0) replicates = scale == "paper" ? 399 : 49;
  const int workers = worker_count(workers_flag);
  const bool cardinality = suite == "cardinality";
  const int run_count = cardinality ? 4 : 5;

  fs::create_directories(out_dir);
  std::vector<datagen::ScenarioConfig> grid = datagen::scenario_grid(seed);
  std::vector<int> scenario_idx = parse_index_list(scenarios_spec, static_cast<int>(grid.size()));
  std::vector<int> run_idx = parse_index_list(runs_spec, run_count);

  FitConfig cfg;
  cfg.rel_gap_tol = gap;

  std::vector<CellResult> cells;
  for (int s : scenario_idx) {
    for (int j : run_idx) {
      datagen::ScenarioConfig scen = grid[static_cast<std::size_t>(s)];
      if (cardinality) {
        scen.n_informative = 2 + j;
        scen.seed = eval::detail::derive_seed(scen.seed, static_cast<std::uint64_t>(j));
      }
      Dataset d = datagen::generate(scen);
      if (!cardinality)
        d.costs = datagen::sample_costs(
            static_cast<int>(d.cols()),
            eval::detail::derive_seed(seed, 1000 + static_cast<std::uint64_t>(s) * 16 + j));

      std::vector<eval::SelectorSpec> selectors;
      if (cardinality) {
        selectors.push_back(eval::SelectorSpec::bnb_cardinality(scen.n_informative));
        selectors.push_back(eval::SelectorSpec::greedy_topk(scen.n_informative));
      } else {
        selectors.push_back(eval::SelectorSpec::bnb_budget(10.0));
        selectors.push_back(eval::SelectorSpec::greedy_budget(10.0));
      }

      for (std::size_t sel = 0; sel < selectors.size(); ++sel) {
        eval::BootstrapOptions opt;
        opt.replicates = replicates;
        opt.workers = workers;
        opt.seed = eval::detail::derive_seed(
            seed, (cardinality ? 0u : 1000000u) + static_cast<std::uint64_t>(s) * 10000 +
                      static_cast<std::uint64_t>(j) * 100 + sel);
        opt.cv.metric = eval::Metric::Auc;

        CellResult cell;
        cell.scenario = s;
        cell.run = j;
        cell.selector = to_string(selectors[sel].kind);
        cell.epv = scen.design_epv();
        cell.noise = scen.label_noise;
        cell.m = scen.m_examples;
        cell.n = scen.n_features;
        cell.report = eval::bootstrap_eval(d, selectors[sel], opt, cfg);
        cell.repl_frac_inf =
            replicate_class_fractions(cell.report, d.feature_class, FeatureClass::Informative);
        cell.repl_frac_red =
            replicate_class_fractions(cell.report, d.feature_class, FeatureClass::Redundant);
        cell.repl_frac_unf =
            replicate_class_fractions(cell.report, d.feature_class, FeatureClass::Uninformative);

        json j_out = json::parse(eval::report_to_json(cell.report));
        j_out["suite"] = suite;
        j_out["scenario"] = s;
        j_out["run"] = j;
        j_out["selector"] = cell.selector;
        j_out["epv"] = cell.epv;
        j_out["label_noise"] = cell.noise;
        write_text(out_dir + "/" + suite + "_s" + std::to_string(s) + "_run" + std::to_string(j) +
                       "_" + cell.selector + ".json",
                   j_out.dump(2) + "\n");
        cells.push_back(std::move(cell));
      }
    }
  }

  // Summary CSV: one row per (scenario, run, selector) cell.
  std::string csv =
      "suite,scenario,run,selector,m,n,label_noise,epv,mean_auc,ci_low,ci_high,"
      "frac_informative,frac_redundant,frac_uninformative,modal_support_freq\n";
  for (const CellResult& c : cells) {
    csv += suite + "," + std::to_string(c.scenario) + "," + std::to_string(c.run) + "," +
           c.selector + "," + std::to_string(c.m) + "," + std::to_string(c.n) + "," +
           fmt17(c.noise) + "," + fmt17(c.epv) + "," + fmt17(c.report.mean_test_metric) + "," +
           fmt17(c.report.ci_low) + "," + fmt17(c.report.ci_high) + "," +
           fmt17(c.report.stats.frac_informative) + "," + fmt17(c.report.stats.frac_redundant) +
           "," + fmt17(c.report.stats.frac_uninformative) + "," +
           fmt17(c.report.stats.modal_support_freq) + "\n";
  }
  write_text(out_dir + "/summary.csv", csv);

  // Figures: per noise level and feature class, mean selected fraction per
  // EPV level with 95% bootstrap error bars, optimal vs greedy.
  std::set<double> epv_set;
  for (const CellResult& c : cells) epv_set.insert(c.epv);
  std::vector<double> epvs(epv_set.begin(), epv_set.end());
  std::set<double> noise_set;
  for (const CellResult& c : cells) noise_set.insert(c.noise);

  struct ClassPick {
    const char* name;
    std::vector<double> CellResult::* replicate;
    double eval::SelectionStats::* mean;
  };
  const std::vector<ClassPick> picks = {
      {"informative", &CellResult::repl_frac_inf, &eval::SelectionStats::frac_informative},
      {"redundant", &CellResult::repl_frac_red, &eval::SelectionStats::frac_redundant},
      {"uninformative", &CellResult::repl_frac_unf, &eval::SelectionStats::frac_uninformative},
  };

  std::string fig_csv = "suite,label_noise,feature_class,epv,selector,mean_fraction,ci_low,ci_high\n";
  for (double noise : noise_set) {
    for (const ClassPick& pick : picks) {
      std::vector<std::string> groups;
      svgchart::BarSeries optimal{cardinality ? "optimal (cardinality)" : "optimal (budget)",
                                  "#4878a8", {}, {}, {}};
      svgchart::BarSeries greedy{"greedy", "#d8884a", {}, {}, {}};
      for (double e : epvs) {
        groups.push_back("EPV " + svgchart::num(e));
        for (svgchart::BarSeries* series : {&optimal, &greedy}) {
          bool is_greedy = series == &greedy;
          double mean_sum = 0.0;
          int mean_count = 0;
          std::vector<double> pooled;
          for (const CellResult& c : cells) {
            bool greedy_cell = c.selector.rfind("greedy", 0) == 0;
            if (c.noise != noise || c.epv != e || greedy_cell != is_greedy) continue;
            mean_sum += c.report.stats.*(pick.mean);
            ++mean_count;
            const std::vector<double>& rep = c.*(pick.replicate);
            pooled.insert(pooled.end(), rep.begin(), rep.end());
          }
          double mean = mean_count > 0 ? mean_sum / mean_count : 0.0;
          double lo = pooled.empty() ? 0.0 : eval::nearest_rank_quantile(pooled, 0.025);
          double hi = pooled.empty() ? 0.0 : eval::nearest_rank_quantile(pooled, 0.975);
          series->value.push_back(mean);
          series->lo.push_back(lo);
          series->hi.push_back(hi);
          fig_csv += suite + "," + fmt17(noise) + "," + pick.name + "," + fmt17(e) + "," +
                     (is_greedy ? "greedy" : "optimal") + "," + fmt17(mean) + "," + fmt17(lo) +
                     "," + fmt17(hi) + "\n";
        }
      }
      int noise_pct = static_cast<int>(std::lround(noise * 100));
      std::string title = std::string(pick.name) + " fraction, " + suite + ", noise " +
                          std::to_string(noise_pct) + "%";
      write_text(out_dir + "/fractions_" + suite + "_noise" + std::to_string(noise_pct) + "_" +
                     pick.name + ".svg",
                 svgchart::grouped_bar_chart(title, "selected fraction", groups,
                                             {optimal, greedy}));
    }
  }
  write_text(out_dir + "/figures.csv", fig_csv);
  return 0;
}

// ---------------------------------------------------------------- verify

struct CheckRow {
  std::string name;
  int passed = 0;
  int total = 0;
};

int cmd_verify(int oracle_max_n, int instances, std::uint64_t seed) {
  std::vector<CheckRow> rows;
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_int_distribution<int> pick_n(3, std::max(3, oracle_max_n));
  std::uniform_int_distribution<int> pick_cost(1, 10);
  std::uniform_real_distribution<double> unif(0.0, 1.0);

  auto random_instance = [&](int m, int n) {
    Dataset d;
    d.X.resize(m, n);
    d.y.resize(m);
    for (int i = 0; i < m; ++i) {
      for (int jj = 0; jj < n; ++jj) d.X(i, jj) = normal(rng);
      d.y[i] = i % 2 == 0 ? 1.0 : -1.0;
    }
    d.costs.resize(n);
    for (int jj = 0; jj < n; ++jj) d.costs[jj] = pick_cost(rng);
    return d;
  };

  // Gradient vs central finite differences.
  {
    CheckRow row{"gradient vs finite differences", 0, 0};
    for (int i = 0; i < instances; ++i) {
      Dataset d = random_instance(30, pick_n(rng));
      ModelParams p;
      p.theta.resize(d.cols());
      for (Eigen::Index n = 0; n < d.cols(); ++n) p.theta[n] = normal(rng);
      p.theta0 = normal(rng);
      double lambda = 0.1;
      auto [g, g0] = gradient(d, p, lambda);
      const double h = 1e-6;
      bool ok = true;
      for (Eigen::Index n = 0; n < d.cols() && ok; ++n) {
        ModelParams hi = p, lo = p;
        hi.theta[n] += h;
        lo.theta[n] -= h;
        double fd = (objective(d, hi, lambda).total - objective(d, lo, lambda).total) / (2 * h);
        if (std::abs(fd - g[n]) > 1e-5 * (1 + std::abs(fd))) ok = false;
      }
      row.total++;
      if (ok) row.passed++;
    }
    rows.push_back(row);
  }

  // Branch and bound vs exhaustive enumeration.
  {
    CheckRow row{"bnb vs exhaustive enumeration", 0, 0};
    FitConfig cfg;
    cfg.rel_gap_tol = 1e-8;
    cfg.abs_gap_tol = 1e-9;
    for (int i = 0; i < instances; ++i) {
      int n = pick_n(rng);
      Dataset d = random_instance(40, n);
      double lambda = 0.1;
      SelectionConstraint c =
          unif(rng) < 0.5
              ? SelectionConstraint::cardinality(1 + static_cast<int>(unif(rng) * (n - 1)))
              : SelectionConstraint::budget(3 + static_cast<int>(unif(rng) * 8));
      bnb::SolveResult got = bnb::solve(d, c, lambda, cfg);
      bnb::SolveResult want = baselines::exhaustive_best_subset(d, c, lambda, cfg);
      bool ok = std::abs(got.objective - want.objective) <= 1e-6 * (1 + std::abs(want.objective)) &&
                got.lower_bound <= want.objective + 1e-6;
      row.total++;
      if (ok) row.passed++;
    }
    rows.push_back(row);
  }

  // CBF round trips and conic witness feasibility.
  {
    CheckRow cbf{"cbf export/parse round trip", 0, 0};
    CheckRow wit{"conic witness feasibility", 0, 0};
    FitConfig cfg;
    for (int i = 0; i < instances; ++i) {
      int n = pick_n(rng);
      Dataset d = random_instance(15, n);
      SelectionConstraint c = SelectionConstraint::budget(5.0);
      ConicProgram p = build_program(d, c, 0.1);
      std::string text = cbf_string(p);
      ConicProgram q = parse_cbf_string(text);
      cbf.total++;
      if (cbf_string(q) == text && q == p) cbf.passed++;

      bnb::SolveResult res = bnb::solve(d, c, 0.1, cfg);
      ConicWitness w = make_witness(d, res.params, res.support, 0.1);
      wit.total++;
      if (w.max_exp_violation <= 1e-9 && w.max_uv_violation <= 1e-9 &&
          w.max_rq_violation <= 1e-9 &&
          std::abs(w.objective - res.objective) <= 1e-9 * (1 + std::abs(res.objective)))
        wit.passed++;
    }
    rows.push_back(cbf);
    rows.push_back(wit);
  }

  bool all_ok = true;
  std::printf("%-36s %8s %8s %8s\n", "check", "passed", "total", "status");
  for (const CheckRow& row : rows) {
    bool ok = row.passed == row.total;
    all_ok = all_ok && ok;
    std::printf("%-36s %8d %8d %8s\n", row.name.c_str(), row.passed, row.total,
                ok ? "ok" : "FAIL");
  }
  return all_ok ? 0 : kExitNumerical;
}

// ---------------------------------------------------------------- evaluate

int cmd_evaluate(const std::string& data_path, const std::string& label_column,
                 const std::string& positive_label, int k, bool splines, int replicates,
                 const std::string& metric_name, double gap, std::uint64_t seed, int workers_flag,
                 const std::string& out_path, const std::string& raw_csv) {
  Dataset d = load_csv(data_path, label_column, positive_label);
  eval::BootstrapOptions opt;
  opt.replicates = replicates;
  opt.seed = seed;
  opt.workers = worker_count(workers_flag);
  opt.cv.spline_expand = splines;
  if (metric_name == "accuracy")
    opt.cv.metric = eval::Metric::Accuracy;
  else if (metric_name == "auc")
    opt.cv.metric = eval::Metric::Auc;
  else
    throw CliExit{kExitUsage, "--metric must be accuracy or auc"};

  FitConfig cfg;
  cfg.rel_gap_tol = gap;
  eval::EvalReport report =
      eval::bootstrap_eval(d, eval::SelectorSpec::bnb_cardinality(k), opt, cfg);

  json j = json::parse(eval::report_to_json(report));
  j["metric"] = metric_name;
  j["k"] = k;
  if (!d.feature_names.empty()) {
    std::map<std::string, double> freq;
    for (std::size_t r = 0; r < report.supports.size(); ++r)
      for (int n : report.supports[r])
        freq[d.feature_names[static_cast<std::size_t>(n)]] +=
            1.0 / static_cast<double>(report.supports.size());
    j["feature_selection_frequency"] = freq;
  }
  std::string text = j.dump(2) + "\n";
  if (out_path.empty())
    std::cout << text;
  else
    write_text(out_path, text);

  if (!raw_csv.empty()) {
    std::string csv = "replicate,metric,support\n";
    for (std::size_t r = 0; r < report.replicate_metrics.size(); ++r) {
      csv += std::to_string(r) + "," + fmt17(report.replicate_metrics[r]) + ",";
      for (std::size_t i = 0; i < report.supports[r].size(); ++i) {
        if (i) csv += ";";
        csv += std::to_string(report.supports[r][i]);
      }
      csv += "\n";
    }
    write_text(raw_csv, csv);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Budget-constrained best subset selection for logistic regression"};
  app.require_subcommand(1);

  // solve
  auto* solve = app.add_subcommand("solve", "Solve one selection problem from a CSV");
  std::string s_data, s_label = "label", s_pos = "1", s_costs, s_out, s_cbf, s_config;
  int s_k = 0;
  double s_budget = 0, s_lambda = 0.1, s_gap = 1e-4, s_absgap = 1e-6;
  long s_max_nodes = -1;
  bool s_scale = false;
  solve->add_option("--data", s_data, "input CSV")->required();
  solve->add_option("--label-column", s_label, "label column name");
  solve->add_option("--positive-label", s_pos, "positive class value");
  auto* opt_k = solve->add_option("--k", s_k, "cardinality limit");
  auto* opt_b = solve->add_option("--budget", s_budget, "budget limit");
  solve->add_option("--costs", s_costs, "costs file or uniform:SEED");
  solve->add_option("--lambda", s_lambda, "regularization strength");
  solve->add_option("--gap", s_gap, "relative optimality gap tolerance");
  solve->add_option("--abs-gap", s_absgap, "absolute gap tolerance");
  solve->add_option("--max-nodes", s_max_nodes, "node limit (<0 unlimited)");
  solve->add_flag("--scale", s_scale, "min-max scale features first");
  solve->add_option("--out", s_out, "output JSON path (default stdout)");
  solve->add_option("--export-cbf", s_cbf, "also export the conic program");
  solve->add_option("--config", s_config, "JSON config file");

  // synth
  auto* synth = app.add_subcommand("synth", "Generate synthetic scenario datasets");
  std::string y_scenario = "all", y_out, y_config;
  std::uint64_t y_seed = 1;
  synth->add_option("--scenario", y_scenario, "scenario index or 'all'");
  synth->add_option("--seed", y_seed, "base seed");
  synth->add_option("--out", y_out, "output directory")->required();
  synth->add_option("--config", y_config, "JSON config file");

  // experiment
  auto* exp = app.add_subcommand("experiment", "Run an evaluation suite over the scenario grid");
  std::string e_suite, e_scale = "desk", e_out, e_scen, e_runs, e_config;
  int e_repl = 0, e_workers = 0;
  double e_gap = 1e-2;
  std::uint64_t e_seed = 1;
  bool e_yes = false;
  exp->add_option("--suite", e_suite, "cardinality or budget")->required();
  exp->add_option("--scale", e_scale, "desk or paper");
  exp->add_option("--replicates", e_repl, "bootstrap replicates (0 = scale default)");
  exp->add_option("--out", e_out, "output directory")->required();
  exp->add_option("--seed", e_seed, "base seed");
  exp->add_option("--workers", e_workers, "worker threads (default SUBSETX_WORKERS or 1)");
  exp->add_option("--gap", e_gap, "solver relative gap tolerance");
  exp->add_flag("--yes-expensive", e_yes, "confirm paper-scale runtime");
  exp->add_option("--scenarios", e_scen, "comma-separated scenario indices");
  exp->add_option("--runs", e_runs, "comma-separated run indices");
  exp->add_option("--config", e_config, "JSON config file");

  // verify
  auto* verify = app.add_subcommand("verify", "Run the cross-oracle battery");
  int v_max_n = 8, v_instances = 25;
  std::uint64_t v_seed = 7;
  verify->add_option("--oracle-max-n", v_max_n, "max feature count for oracle checks");
  verify->add_option("--instances", v_instances, "instances per check");
  verify->add_option("--seed", v_seed, "rng seed");

  // evaluate
  auto* ev = app.add_subcommand("evaluate", "Bootstrap-evaluate selection on an external CSV");
  std::string x_data, x_label = "label", x_pos = "1", x_metric = "accuracy", x_out, x_raw,
              x_config;
  int x_k = 4, x_repl = 49, x_workers = 0;
  double x_gap = 1e-2;
  std::uint64_t x_seed = 1;
  bool x_splines = true;
  ev->add_option("--data", x_data, "input CSV")->required();
  ev->add_option("--label-column", x_label, "label column name");
  ev->add_option("--positive-label", x_pos, "positive class value");
  ev->add_option("--k", x_k, "cardinality limit");
  ev->add_flag("--splines,!--no-splines", x_splines, "cubic spline basis expansion");
  ev->add_option("--replicates", x_repl, "bootstrap replicates");
  ev->add_option("--metric", x_metric, "accuracy or auc");
  ev->add_option("--gap", x_gap, "solver relative gap tolerance");
  ev->add_option("--seed", x_seed, "rng seed");
  ev->add_option("--workers", x_workers, "worker threads");
  ev->add_option("--out", x_out, "output JSON path (default stdout)");
  ev->add_option("--raw-csv", x_raw, "replicate-level raw table");
  ev->add_option("--config", x_config, "JSON config file");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (solve->parsed()) {
      bool has_k = opt_k->count() > 0;
      bool has_b = opt_b->count() > 0;
      apply_config(solve, s_config,
                   {{"--lambda", [&](const json& v) { s_lambda = v.get<double>(); }},
                    {"--gap", [&](const json& v) { s_gap = v.get<double>(); }},
                    {"--abs-gap", [&](const json& v) { s_absgap = v.get<double>(); }},
                    {"--max-nodes", [&](const json& v) { s_max_nodes = v.get<long>(); }},
                    {"--k",
                     [&](const json& v) {
                       s_k = v.get<int>();
                       has_k = true;
                     }},
                    {"--budget",
                     [&](const json& v) {
                       s_budget = v.get<double>();
                       has_b = true;
                     }},
                    {"--costs", [&](const json& v) { s_costs = v.get<std::string>(); }},
                    {"--scale", [&](const json& v) { s_scale = v.get<bool>(); }}});
      return cmd_solve(s_data, s_label, s_pos, s_k, s_budget, has_k, has_b, s_costs, s_lambda,
                       s_gap, s_absgap, s_max_nodes, s_scale, s_out, s_cbf);
    }
    if (synth->parsed()) {
      apply_config(synth, y_config,
                   {{"--scenario", [&](const json& v) { y_scenario = v.get<std::string>(); }},
                    {"--seed", [&](const json& v) { y_seed = v.get<std::uint64_t>(); }}});
      return cmd_synth(y_scenario, y_seed, y_out);
    }
    if (exp->parsed()) {
      apply_config(exp, e_config,
                   {{"--replicates", [&](const json& v) { e_repl = v.get<int>(); }},
                    {"--seed", [&](const json& v) { e_seed = v.get<std::uint64_t>(); }},
                    {"--workers", [&](const json& v) { e_workers = v.get<int>(); }},
                    {"--gap", [&](const json& v) { e_gap = v.get<double>(); }},
                    {"--scale", [&](const json& v) { e_scale = v.get<std::string>(); }},
                    {"--scenarios", [&](const json& v) { e_scen = v.get<std::string>(); }},
                    {"--runs", [&](const json& v) { e_runs = v.get<std::string>(); }}});
      return cmd_experiment(e_suite, e_scale, e_repl, e_out, e_seed, e_workers, e_gap, e_yes,
                            e_scen, e_runs);
    }
    if (verify->parsed()) return cmd_verify(v_max_n, v_instances, v_seed);
    if (ev->parsed()) {
      apply_config(ev, x_config,
                   {{"--k", [&](const json& v) { x_k = v.get<int>(); }},
                    {"--replicates", [&](const json& v) { x_repl = v.get<int>(); }},
                    {"--metric", [&](const json& v) { x_metric = v.get<std::string>(); }},
                    {"--gap", [&](const json& v) { x_gap = v.get<double>(); }},
                    {"--seed", [&](const json& v) { x_seed = v.get<std::uint64_t>(); }},
                    {"--workers", [&](const json& v) { x_workers = v.get<int>(); }},
                    {"--splines", [&](const json& v) { x_splines = v.get<bool>(); }}});
      return cmd_evaluate(x_data, x_label, x_pos, x_k, x_splines, x_repl, x_metric, x_gap, x_seed,
                          x_workers, x_out, x_raw);
    }
  } catch (const CliExit& e) {
    std::cerr << "error: " << e.message << "\n";
    return e.code;
  } catch (const std::invalid_argument& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitUsage;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitNumerical;
  }
  return kExitUsage;
}
