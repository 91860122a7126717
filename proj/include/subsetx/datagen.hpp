// SPDX-License-Identifier: Apache-2.0

#ifndef SUBSETX_DATAGEN_HPP
#define SUBSETX_DATAGEN_HPP

#include <cstdint>
#include <vector>

#include "subsetx/dataset.hpp"

namespace subsetx {
namespace datagen {

/// Synthetic prognostic-data scenario: normal clusters at opposite
/// hypercube vertices in the informative subspace, one exactly redundant
/// linear-combination feature, Gaussian noise features, class imbalance,
/// and optional label flips.
struct ScenarioConfig {
  int m_examples = 82;
  int n_features = 14;
  int n_informative = 5;
  int n_redundant = 1;
  double label_noise = 0.0;
  double minority_fraction = 0.23;
  int clusters_per_class = 1;
  double class_sep = 1.0;
  std::uint64_t seed = 0;

  void validate() const;
  /// Design events-per-variable: minority_fraction * M / N.
  double design_epv() const { return minority_fraction * m_examples / n_features; }
};

Dataset generate(const ScenarioConfig& cfg);

/// I.i.d. integer costs uniform on {1..10}.
Eigen::VectorXd sample_costs(int n, std::uint64_t seed);

/// The 2x2x2 grid {82,1090} x {14,53} x {0,0.05} with n_informative = 5.
std::vector<ScenarioConfig> scenario_grid(std::uint64_t base_seed = 1);

}  // namespace datagen
}  // namespace subsetx

#endif
