// SPDX-License-Identifier: Apache-2.0

#include <pybind11/eigen.h>
#include <pybind11/pybind11.h>
#include <pybind11/stl.h>

#include "subsetx/baselines.hpp"
#include "subsetx/bnb.hpp"
#include "subsetx/conic.hpp"
#include "subsetx/datagen.hpp"
#include "subsetx/dataset.hpp"
#include "subsetx/eval.hpp"
#include "subsetx/logistic.hpp"

namespace py = pybind11;
using namespace subsetx;

PYBIND11_MODULE(_subsetx, m) {
  m.doc() = "Exact budget-constrained best subset selection for logistic regression";

  py::enum_<FeatureClass>(m, "FeatureClass")
      .value("Informative", FeatureClass::Informative)
      .value("Redundant", FeatureClass::Redundant)
      .value("Uninformative", FeatureClass::Uninformative);

  py::class_<Dataset>(m, "Dataset")
      .def(py::init<>())
      .def_readwrite("X", &Dataset::X)
      .def_readwrite("y", &Dataset::y)
      .def_readwrite("feature_names", &Dataset::feature_names)
      .def_readwrite("feature_class", &Dataset::feature_class)
      .def_readwrite("costs", &Dataset::costs)
      .def("validate", &Dataset::validate)
      .def("subset_rows", &Dataset::subset_rows)
      .def("subset_cols", &Dataset::subset_cols)
      .def_property_readonly("rows", &Dataset::rows)
      .def_property_readonly("cols", &Dataset::cols);

  py::class_<SelectionConstraint>(m, "SelectionConstraint")
      .def_static("cardinality", &SelectionConstraint::cardinality)
      .def_static("budget", &SelectionConstraint::budget)
      .def_readonly("limit", &SelectionConstraint::limit)
      .def("is_budget", &SelectionConstraint::is_budget);

  py::class_<FitConfig>(m, "FitConfig")
      .def(py::init<>())
      .def_readwrite("lambda_", &FitConfig::lambda)
      .def_readwrite("newton_tol", &FitConfig::newton_tol)
      .def_readwrite("max_newton_iters", &FitConfig::max_newton_iters)
      .def_readwrite("rel_gap_tol", &FitConfig::rel_gap_tol)
      .def_readwrite("abs_gap_tol", &FitConfig::abs_gap_tol)
      .def_readwrite("max_nodes", &FitConfig::max_nodes)
      .def_readwrite("seed", &FitConfig::seed);

  py::class_<ModelParams>(m, "ModelParams")
      .def(py::init<>())
      .def_readwrite("theta", &ModelParams::theta)
      .def_readwrite("theta0", &ModelParams::theta0);

  py::class_<Objective>(m, "Objective")
      .def_readonly("loss_sum", &Objective::loss_sum)
      .def_readonly("reg", &Objective::reg)
      .def_readonly("total", &Objective::total);

  py::class_<FitOutcome>(m, "FitOutcome")
      .def_readonly("params", &FitOutcome::params)
      .def_readonly("obj", &FitOutcome::obj)
      .def_readonly("converged", &FitOutcome::converged)
      .def_readonly("iterations", &FitOutcome::iterations)
      .def_readonly("grad_norm", &FitOutcome::grad_norm);

  m.def("softplus", &softplus);
  m.def("sigmoid", &sigmoid);
  m.def("objective", &objective);
  m.def("gradient", &gradient);
  m.def("predict_proba", &predict_proba);
  m.def("fit_support", &fit_support, py::arg("dataset"), py::arg("support"), py::arg("lambda_"),
        py::arg("config") = FitConfig{});

  m.def("minmax_scale", &minmax_scale);
  m.def("spline_expand", &spline_expand);
  m.def("epv", &epv);
  m.def("load_csv", &load_csv, py::arg("path"), py::arg("label_column") = "label",
        py::arg("positive_label") = "1");
  m.def("write_csv", &write_csv, py::arg("dataset"), py::arg("path"),
        py::arg("label_column") = "label");

  py::enum_<bnb::SolveStatus>(m, "SolveStatus")
      .value("Optimal", bnb::SolveStatus::Optimal)
      .value("GapReached", bnb::SolveStatus::GapReached)
      .value("NodeLimit", bnb::SolveStatus::NodeLimit)
      .value("Infeasible", bnb::SolveStatus::Infeasible);

  py::class_<bnb::SolveResult>(m, "SolveResult")
      .def_readonly("params", &bnb::SolveResult::params)
      .def_readonly("support", &bnb::SolveResult::support)
      .def_readonly("objective", &bnb::SolveResult::objective)
      .def_readonly("lower_bound", &bnb::SolveResult::lower_bound)
      .def_readonly("rel_gap", &bnb::SolveResult::rel_gap)
      .def_readonly("nodes_explored", &bnb::SolveResult::nodes_explored)
      .def_readonly("status", &bnb::SolveResult::status);

  m.def(
      "solve",
      [](const Dataset& d, const SelectionConstraint& c, double lambda, const FitConfig& cfg) {
        return bnb::solve(d, c, lambda, cfg);
      },
      py::arg("dataset"), py::arg("constraint"), py::arg("lambda_"),
      py::arg("config") = FitConfig{}, py::call_guard<py::gil_scoped_release>());

  m.def("univariable_scores", &baselines::univariable_scores);
  m.def("greedy_topk", &baselines::greedy_topk);
  m.def("greedy_budget", &baselines::greedy_budget);
  m.def("exhaustive_best_subset", &baselines::exhaustive_best_subset, py::arg("dataset"),
        py::arg("constraint"), py::arg("lambda_"), py::arg("config") = FitConfig{});

  py::class_<ConicProgram>(m, "ConicProgram")
      .def_readonly("M", &ConicProgram::M)
      .def_readonly("N", &ConicProgram::N)
      .def_readonly("lambda_", &ConicProgram::lambda)
      .def_readonly("budget", &ConicProgram::budget)
      .def_readonly("costs", &ConicProgram::costs)
      .def("num_continuous_vars", &ConicProgram::num_continuous_vars)
      .def("num_binary_vars", &ConicProgram::num_binary_vars)
      .def("num_exp_cones", &ConicProgram::num_exp_cones)
      .def("num_rotated_cones", &ConicProgram::num_rotated_cones)
      .def("num_linear_rows", &ConicProgram::num_linear_rows)
      .def("__eq__", [](const ConicProgram& a, const ConicProgram& b) { return a == b; });

  m.def("build_program", &build_program);
  m.def("cbf_string", &cbf_string);
  m.def("export_cbf", &export_cbf);
  m.def("parse_cbf", &parse_cbf);
  m.def("parse_cbf_string", &parse_cbf_string);

  py::class_<ConicWitness>(m, "ConicWitness")
      .def_readonly("t", &ConicWitness::t)
      .def_readonly("u", &ConicWitness::u)
      .def_readonly("v", &ConicWitness::v)
      .def_readonly("r", &ConicWitness::r)
      .def_readonly("z", &ConicWitness::z)
      .def_readonly("objective", &ConicWitness::objective)
      .def_readonly("max_exp_violation", &ConicWitness::max_exp_violation)
      .def_readonly("max_uv_violation", &ConicWitness::max_uv_violation)
      .def_readonly("max_rq_violation", &ConicWitness::max_rq_violation);

  m.def("make_witness", &make_witness);

  py::class_<datagen::ScenarioConfig>(m, "ScenarioConfig")
      .def(py::init<>())
      .def_readwrite("m_examples", &datagen::ScenarioConfig::m_examples)
      .def_readwrite("n_features", &datagen::ScenarioConfig::n_features)
      .def_readwrite("n_informative", &datagen::ScenarioConfig::n_informative)
      .def_readwrite("n_redundant", &datagen::ScenarioConfig::n_redundant)
      .def_readwrite("label_noise", &datagen::ScenarioConfig::label_noise)
      .def_readwrite("minority_fraction", &datagen::ScenarioConfig::minority_fraction)
      .def_readwrite("clusters_per_class", &datagen::ScenarioConfig::clusters_per_class)
      .def_readwrite("class_sep", &datagen::ScenarioConfig::class_sep)
      .def_readwrite("seed", &datagen::ScenarioConfig::seed)
      .def("validate", &datagen::ScenarioConfig::validate)
      .def("design_epv", &datagen::ScenarioConfig::design_epv);

  m.def("generate", &datagen::generate);
  m.def("sample_costs", &datagen::sample_costs);
  m.def("scenario_grid", &datagen::scenario_grid, py::arg("base_seed") = 1);

  py::class_<eval::FoldSplit>(m, "FoldSplit")
      .def_readonly("train", &eval::FoldSplit::train)
      .def_readonly("test", &eval::FoldSplit::test);

  py::enum_<eval::Metric>(m, "Metric")
      .value("Auc", eval::Metric::Auc)
      .value("Accuracy", eval::Metric::Accuracy);

  py::class_<eval::SelectorSpec>(m, "SelectorSpec")
      .def_static("bnb_cardinality", &eval::SelectorSpec::bnb_cardinality)
      .def_static("bnb_budget", &eval::SelectorSpec::bnb_budget)
      .def_static("greedy_topk", &eval::SelectorSpec::greedy_topk)
      .def_static("greedy_budget", &eval::SelectorSpec::greedy_budget)
      .def_static("none", &eval::SelectorSpec::none);

  py::class_<eval::NestedCvOptions>(m, "NestedCvOptions")
      .def(py::init<>())
      .def_readwrite("lambda_grid", &eval::NestedCvOptions::lambda_grid)
      .def_readwrite("folds", &eval::NestedCvOptions::folds)
      .def_readwrite("metric", &eval::NestedCvOptions::metric)
      .def_readwrite("spline_expand", &eval::NestedCvOptions::spline_expand)
      .def_readwrite("seed", &eval::NestedCvOptions::seed);

  py::class_<eval::NestedCvResult>(m, "NestedCvResult")
      .def_readonly("mean_metric", &eval::NestedCvResult::mean_metric)
      .def_readonly("fold_metrics", &eval::NestedCvResult::fold_metrics)
      .def_readonly("chosen_lambda", &eval::NestedCvResult::chosen_lambda)
      .def_readonly("fold_supports", &eval::NestedCvResult::fold_supports);

  py::class_<eval::SelectionStats>(m, "SelectionStats")
      .def_readonly("has_fractions", &eval::SelectionStats::has_fractions)
      .def_readonly("frac_informative", &eval::SelectionStats::frac_informative)
      .def_readonly("frac_redundant", &eval::SelectionStats::frac_redundant)
      .def_readonly("frac_uninformative", &eval::SelectionStats::frac_uninformative)
      .def_readonly("modal_support_freq", &eval::SelectionStats::modal_support_freq)
      .def_readonly("feature_frequency", &eval::SelectionStats::feature_frequency);

  py::class_<eval::BootstrapOptions>(m, "BootstrapOptions")
      .def(py::init<>())
      .def_readwrite("replicates", &eval::BootstrapOptions::replicates)
      .def_readwrite("seed", &eval::BootstrapOptions::seed)
      .def_readwrite("workers", &eval::BootstrapOptions::workers)
      .def_readwrite("cv", &eval::BootstrapOptions::cv);

  py::class_<eval::EvalReport>(m, "EvalReport")
      .def_readonly("mean_test_metric", &eval::EvalReport::mean_test_metric)
      .def_readonly("ci_low", &eval::EvalReport::ci_low)
      .def_readonly("ci_high", &eval::EvalReport::ci_high)
      .def_readonly("replicate_metrics", &eval::EvalReport::replicate_metrics)
      .def_readonly("supports", &eval::EvalReport::supports)
      .def_readonly("stats", &eval::EvalReport::stats)
      .def_readonly("bootstrap_count", &eval::EvalReport::bootstrap_count);

  m.def("auc", &eval::auc);
  m.def("accuracy_at_half", &eval::accuracy_at_half);
  m.def("stratified_kfold", &eval::stratified_kfold);
  m.def("nested_cv", &eval::nested_cv, py::arg("dataset"), py::arg("selector"),
        py::arg("options") = eval::NestedCvOptions{}, py::arg("config") = FitConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("selection_stats", &eval::selection_stats);
  m.def("bootstrap_eval", &eval::bootstrap_eval, py::arg("dataset"), py::arg("selector"),
        py::arg("options") = eval::BootstrapOptions{}, py::arg("config") = FitConfig{},
        py::call_guard<py::gil_scoped_release>());
  m.def("nearest_rank_quantile", &eval::nearest_rank_quantile);
  m.def("report_to_json", &eval::report_to_json);
}
