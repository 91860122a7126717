// SPDX-License-Identifier: Apache-2.0

#include "subsetx/datagen.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <random>
#include <stdexcept>
#include <string>

namespace subsetx {
namespace datagen {

void ScenarioConfig::validate() const {
  if (m_examples < 2) throw std::invalid_argument("m_examples must be >= 2");
  if (n_features < 1) throw std::invalid_argument("n_features must be >= 1");
  if (n_informative < 1) throw std::invalid_argument("n_informative must be >= 1");
  if (n_redundant < 0) throw std::invalid_argument("n_redundant must be >= 0");
  if (n_informative + n_redundant > n_features)
    throw std::invalid_argument("n_informative + n_redundant exceeds n_features");
  if (label_noise < 0.0 || label_noise >= 0.5)
    throw std::invalid_argument("label_noise must lie in [0, 0.5)");
  if (minority_fraction <= 0.0 || minority_fraction >= 0.5)
    throw std::invalid_argument("minority_fraction must lie in (0, 0.5)");
  if (clusters_per_class != 1)
    throw std::invalid_argument("only one cluster per class is supported");
  if (class_sep <= 0.0) throw std::invalid_argument("class_sep must be positive");
}

Dataset generate(const ScenarioConfig& cfg) {
  cfg.validate();
  const int M = cfg.m_examples;
  const int N = cfg.n_features;
  const int NI = cfg.n_informative;
  const int NR = cfg.n_redundant;
  std::mt19937_64 rng(cfg.seed);
  std::normal_distribution<double> normal(0.0, 1.0);

  const int minority = static_cast<int>(std::ceil(cfg.minority_fraction * M));
  Eigen::VectorXd y(M);
  for (int m = 0; m < M; ++m) y[m] = m < minority ? 1.0 : -1.0;
  {
    std::vector<int> perm(M);
    std::iota(perm.begin(), perm.end(), 0);
    std::shuffle(perm.begin(), perm.end(), rng);
    Eigen::VectorXd shuffled(M);
    for (int m = 0; m < M; ++m) shuffled[m] = y[perm[m]];
    y = shuffled;
  }

  // Informative block: one normal cluster per class, centered at
  // +/- class_sep on every informative coordinate.
  Eigen::MatrixXd X(M, N);
  for (int m = 0; m < M; ++m)
    for (int n = 0; n < NI; ++n) X(m, n) = y[m] * cfg.class_sep + normal(rng);

  // Redundant block: exact linear combinations of the informative block.
  for (int r = 0; r < NR; ++r) {
    Eigen::VectorXd w(NI);
    for (int n = 0; n < NI; ++n) w[n] = normal(rng);
    X.col(NI + r) = X.leftCols(NI) * w;
  }

  for (int m = 0; m < M; ++m)
    for (int n = NI + NR; n < N; ++n) X(m, n) = normal(rng);

  const int flips = static_cast<int>(std::lround(cfg.label_noise * M));
  if (flips > 0) {
    std::vector<int> rows(M);
    std::iota(rows.begin(), rows.end(), 0);
    std::shuffle(rows.begin(), rows.end(), rng);
    for (int f = 0; f < flips; ++f) y[rows[f]] = -y[rows[f]];
  }

  std::vector<FeatureClass> classes;
  std::vector<std::string> names;
  classes.reserve(N);
  names.reserve(N);
  for (int n = 0; n < NI; ++n) {
    classes.push_back(FeatureClass::Informative);
    names.push_back("inf" + std::to_string(n + 1));
  }
  for (int r = 0; r < NR; ++r) {
    classes.push_back(FeatureClass::Redundant);
    names.push_back("red" + std::to_string(r + 1));
  }
  for (int n = NI + NR; n < N; ++n) {
    classes.push_back(FeatureClass::Uninformative);
    names.push_back("rnd" + std::to_string(n - NI - NR + 1));
  }

  std::vector<int> col_perm(N);
  std::iota(col_perm.begin(), col_perm.end(), 0);
  std::shuffle(col_perm.begin(), col_perm.end(), rng);

  Dataset d;
  d.X.resize(M, N);
  d.y = y;
  d.feature_names.resize(N);
  d.feature_class.resize(N);
  for (int n = 0; n < N; ++n) {
    d.X.col(n) = X.col(col_perm[n]);
    d.feature_names[n] = names[col_perm[n]];
    d.feature_class[n] = classes[col_perm[n]];
  }
  d.validate();
  return d;
}

Eigen::VectorXd sample_costs(int n, std::uint64_t seed) {
  if (n < 1) throw std::invalid_argument("cost vector length must be >= 1");
  std::mt19937_64 rng(seed);
  std::uniform_int_distribution<int> unif(1, 10);
  Eigen::VectorXd costs(n);
  for (int i = 0; i < n; ++i) costs[i] = static_cast<double>(unif(rng));
  return costs;
}

std::vector<ScenarioConfig> scenario_grid(std::uint64_t base_seed) {
  std::vector<ScenarioConfig> grid;
  std::uint64_t seed = base_seed;
  for (int m : {82, 1090})
    for (int n : {14, 53})
      for (double noise : {0.0, 0.05}) {
        ScenarioConfig cfg;
        cfg.m_examples = m;
        cfg.n_features = n;
        cfg.n_informative = 5;
        cfg.label_noise = noise;
        cfg.seed = seed++;
        grid.push_back(cfg);
      }
  return grid;
}

}  // namespace datagen
}  // namespace subsetx
