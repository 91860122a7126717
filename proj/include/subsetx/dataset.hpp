// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSETX_DATASET_HPP
#define SUBSETX_DATASET_HPP

#include <Eigen/Dense>
#include <array>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace subsetx {

enum class FeatureClass { Informative, Redundant, Uninformative };

const char* to_string(FeatureClass c);
FeatureClass feature_class_from_string(const std::string& s);

/// A fixed design matrix with ±1 labels and optional per-feature metadata.
/// Immutable by convention: transforms return new datasets.
struct Dataset {
  Eigen::MatrixXd X;
  Eigen::VectorXd y;  // entries in {-1, +1}
  std::vector<std::string> feature_names;
  std::vector<FeatureClass> feature_class;  // empty, or one tag per feature
  Eigen::VectorXd costs;                    // empty, or one positive cost per feature

  Eigen::Index rows() const { return X.rows(); }
  Eigen::Index cols() const { return X.cols(); }
  bool has_classes() const { return !feature_class.empty(); }
  bool has_costs() const { return costs.size() > 0; }

  /// Throws std::invalid_argument on any violated invariant.
  void validate() const;

  /// Row subset (with repetition allowed, for bootstrap resamples).
  Dataset subset_rows(const std::vector<int>& idx) const;

  /// Column subset; metadata follows the selected columns.
  Dataset subset_cols(const std::vector<int>& idx) const;
};

struct SelectionConstraint {
  enum class Kind { Cardinality, Budget };
  Kind kind = Kind::Cardinality;
  double limit = 1.0;  // k for Cardinality, b for Budget

  static SelectionConstraint cardinality(double k);
  static SelectionConstraint budget(double b);
  bool is_budget() const { return kind == Kind::Budget; }
};

struct FitConfig {
  double lambda = 0.1;
  double newton_tol = 1e-8;
  int max_newton_iters = 100;
  double rel_gap_tol = 1e-4;
  double abs_gap_tol = 1e-6;
  long max_nodes = -1;  // < 0 means unlimited
  std::uint64_t seed = 0;

  void validate() const;
};

/// Per-column affine map to [0,1] fitted on training data.  Constant
/// columns map to all-zeros.
struct MinMaxScaler {
  Eigen::VectorXd lo;
  Eigen::VectorXd range;  // hi - lo; 0 marks a constant column

  static MinMaxScaler fit(const Eigen::MatrixXd& X);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const;
};

/// Truncated-power cubic spline basis: each expandable feature x becomes
/// {x, (x-Q1)^3_+, (x-Q2)^3_+, (x-Q3)^3_+} with knots at the empirical
/// quartiles of the training column.  Features with fewer than 4 distinct
/// values pass through unexpanded.
struct SplineBasis {
  std::vector<bool> expanded;                // per input feature
  std::vector<std::array<double, 3>> knots;  // quartile knots (unused slots zero)

  static SplineBasis fit(const Eigen::MatrixXd& X);
  Eigen::MatrixXd apply(const Eigen::MatrixXd& X) const;
  std::vector<std::string> expand_names(const std::vector<std::string>& names) const;
  /// Maps an output column back to its source input feature.
  std::vector<int> output_to_input() const;
};

Dataset minmax_scale(const Dataset& d);
Dataset spline_expand(const Dataset& d);

/// Outcome events per variable: minority-class count divided by the number
/// of features.  Throws on single-class data.
double epv(const Dataset& d);

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& positive_label);
void write_csv(const Dataset& d, const std::string& path,
               const std::string& label_column = "label");

}  // namespace subsetx

#endif
