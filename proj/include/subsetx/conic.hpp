// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSETX_CONIC_HPP
#define SUBSETX_CONIC_HPP

#include <string>

#include "subsetx/dataset.hpp"
#include "subsetx/logistic.hpp"

namespace subsetx {

/// Explicit mixed-integer conic program for the L0/budget-constrained
/// logistic regression objective:
///
///   min  sum_m t_m + lambda * sum_n r_n
///   s.t. [u_m, 1, -y_m(theta.x_m + theta0) - t_m] in K_exp
///        [v_m, 1, -t_m]                           in K_exp
///        u_m + v_m <= 1
///        [z_n, r_n, theta_n]                      in Q_R^3
///        sum_n c_n z_n <= b
///        z binary
///
/// The program is stored in structured form; the CBF writer lays it out
/// row by row.  Variable order: theta (N), theta0, t (M), u (M), v (M),
/// r (N), z (N).
struct ConicProgram {
  int M = 0;
  int N = 0;
  double lambda = 0.0;
  Eigen::MatrixXd X;
  Eigen::VectorXd y;
  Eigen::VectorXd costs;  // all-ones for a cardinality constraint
  double budget = 0.0;

  // Variable index helpers.
  int var_theta(int n) const { return n; }
  int var_theta0() const { return N; }
  int var_t(int m) const { return N + 1 + m; }
  int var_u(int m) const { return N + 1 + M + m; }
  int var_v(int m) const { return N + 1 + 2 * M + m; }
  int var_r(int n) const { return N + 1 + 3 * M + n; }
  int var_z(int n) const { return 2 * N + 1 + 3 * M + n; }

  int num_continuous_vars() const { return 2 * N + 1 + 3 * M; }
  int num_binary_vars() const { return N; }
  int num_exp_cones() const { return 2 * M; }
  int num_rotated_cones() const { return N; }
  /// Structural linear rows: u_m + v_m <= 1 and the budget row.  The CBF
  /// file additionally carries N bound rows z_n <= 1.
  int num_linear_rows() const { return M + 1; }

  bool operator==(const ConicProgram& o) const;
};

ConicProgram build_program(const Dataset& d, const SelectionConstraint& constraint,
                           double lambda);

/// Writes the program in Conic Benchmark Format version 3.  Byte output is
/// deterministic for a fixed program.
void export_cbf(const ConicProgram& p, const std::string& path);
std::string cbf_string(const ConicProgram& p);

/// Inverse of export_cbf on its image.  Throws on malformed input or
/// unsupported cone types.
ConicProgram parse_cbf(const std::string& path);
ConicProgram parse_cbf_string(const std::string& text);

/// Feasible cone-variable assignment derived from a fitted model:
/// t_m = softplus(margin_m), u_m = exp(-margin_m - t_m), v_m = exp(-t_m),
/// r_n = theta_n^2 / 2, z_n = support indicator.
struct ConicWitness {
  Eigen::VectorXd t, u, v, r, z;
  double objective = 0.0;         // sum t + lambda * sum r
  double max_exp_violation = 0.0; // exp-cone membership residual
  double max_uv_violation = 0.0;  // max(u_m + v_m - 1, 0)
  double max_rq_violation = 0.0;  // rotated-cone residual theta^2/2 - z*r
};

ConicWitness make_witness(const Dataset& d, const ModelParams& p,
                          const std::vector<int>& support, double lambda);

}  // namespace subsetx

#endif
