// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSETX_TESTS_HELPERS_HPP
#define SUBSETX_TESTS_HELPERS_HPP

#include <cstdint>
#include <random>

#include "subsetx/dataset.hpp"

namespace testutil {

/// Small dense instance with a planted linear signal, labels in {-1,+1}.
inline subsetx::Dataset random_instance(int m, int n, std::uint64_t seed,
                                        double signal = 1.0) {
  std::mt19937_64 rng(seed);
  std::normal_distribution<double> gauss(0.0, 1.0);
  subsetx::Dataset d;
  d.X.resize(m, n);
  d.y.resize(m);
  Eigen::VectorXd w(n);
  for (int j = 0; j < n; ++j) w(j) = gauss(rng);
  for (int i = 0; i < m; ++i) {
    for (int j = 0; j < n; ++j) d.X(i, j) = gauss(rng);
    double t = signal * d.X.row(i).dot(w) + gauss(rng);
    d.y(i) = t >= 0 ? 1.0 : -1.0;
  }
  // Guard against degenerate single-class draws.
  d.y(0) = 1.0;
  d.y(1) = -1.0;
  for (int j = 0; j < n; ++j) d.feature_names.push_back("x" + std::to_string(j));
  return d;
}

inline Eigen::VectorXd random_integer_costs(int n, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> u(1, 10);
  Eigen::VectorXd c(n);
  for (int j = 0; j < n; ++j) c(j) = u(rng);
  return c;
}

}  // namespace testutil

#endif
