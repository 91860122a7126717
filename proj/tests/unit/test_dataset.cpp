// SPDX-License-Identifier: Apache-2.0

#include <doctest.h>

#include <cstdio>
#include <filesystem>
#include <set>

#include "helpers.hpp"
#include "subsetx/dataset.hpp"

using namespace subsetx;

namespace {

std::string temp_path(const char* stem) {
  return (std::filesystem::temp_directory_path() / stem).string();
}

}  // namespace

TEST_SUITE("dataset") {

TEST_CASE("validate rejects broken invariants") {
  Dataset d = testutil::random_instance(10, 3, 1);
  CHECK_NOTHROW(d.validate());

  Dataset bad = d;
  bad.y(0) = 0.5;
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = d;
  bad.feature_names.pop_back();
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = d;
  bad.costs = Eigen::VectorXd::Constant(3, -1.0);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);

  bad = d;
  bad.costs = Eigen::VectorXd::Ones(2);
  CHECK_THROWS_AS(bad.validate(), std::invalid_argument);
}

TEST_CASE("subset_rows allows repetition and keeps metadata") {
  Dataset d = testutil::random_instance(6, 2, 2);
  d.costs = Eigen::VectorXd::Ones(2);
  Dataset s = d.subset_rows({0, 0, 3});
  CHECK(s.rows() == 3);
  CHECK(s.X.row(0) == s.X.row(1));
  CHECK(s.y(2) == d.y(3));
  CHECK(s.feature_names == d.feature_names);
  CHECK(s.costs.size() == 2);
}

TEST_CASE("subset_cols reorders metadata with the columns") {
  Dataset d = testutil::random_instance(5, 4, 3);
  d.costs = testutil::random_integer_costs(4, 3);
  d.feature_class = {FeatureClass::Informative, FeatureClass::Redundant,
                     FeatureClass::Uninformative, FeatureClass::Informative};
  Dataset s = d.subset_cols({3, 1});
  CHECK(s.cols() == 2);
  CHECK(s.feature_names[0] == d.feature_names[3]);
  CHECK(s.feature_class[1] == FeatureClass::Redundant);
  CHECK(s.costs(0) == d.costs(3));
  CHECK(s.X.col(1) == d.X.col(1));
}

TEST_CASE("minmax scaler maps train columns to [0,1] and is affine") {
  Dataset d = testutil::random_instance(30, 4, 4);
  d.X.col(2).setConstant(7.0);  // constant column edge case
  MinMaxScaler sc = MinMaxScaler::fit(d.X);
  Eigen::MatrixXd Z = sc.apply(d.X);
  for (int j = 0; j < 4; ++j) {
    CHECK(Z.col(j).minCoeff() >= -1e-12);
    CHECK(Z.col(j).maxCoeff() <= 1.0 + 1e-12);
  }
  CHECK(Z.col(2).cwiseAbs().maxCoeff() == 0.0);
  // Affine: apply to fresh data can leave [0,1] but must stay affine.
  Eigen::MatrixXd W = Eigen::MatrixXd::Random(3, 4);
  Eigen::MatrixXd A = sc.apply(W);
  Eigen::MatrixXd B = sc.apply(2.0 * W);
  Eigen::MatrixXd C = sc.apply(Eigen::MatrixXd::Zero(3, 4));
  CHECK((B - 2.0 * A + C).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("spline basis expands continuous columns by 4 and passes binaries through") {
  Dataset d = testutil::random_instance(40, 3, 5);
  for (int i = 0; i < 40; ++i) d.X(i, 1) = i % 2;  // two distinct values
  SplineBasis sb = SplineBasis::fit(d.X);
  CHECK(sb.expanded[0]);
  CHECK_FALSE(sb.expanded[1]);
  CHECK(sb.expanded[2]);
  Eigen::MatrixXd Z = sb.apply(d.X);
  CHECK(Z.cols() == 4 + 1 + 4);
  std::vector<int> back = sb.output_to_input();
  CHECK(back.size() == 9);
  CHECK(back[0] == 0);
  CHECK(back[4] == 1);
  CHECK(back[5] == 2);
  // Identity column leads each expanded block.
  CHECK(Z.col(0) == d.X.col(0));
  CHECK(Z.col(4) == d.X.col(1));
  // Truncated powers are nonnegative and zero below the knot.
  CHECK(Z.col(1).minCoeff() >= 0.0);
}

TEST_CASE("spline expand inherits per-source metadata and costs") {
  Dataset d = testutil::random_instance(40, 2, 6);
  d.feature_class = {FeatureClass::Informative, FeatureClass::Uninformative};
  d.costs = Eigen::VectorXd::Zero(2);
  d.costs << 3.0, 5.0;
  Dataset e = spline_expand(d);
  CHECK(e.cols() == 8);
  CHECK(e.feature_class[3] == FeatureClass::Informative);
  CHECK(e.feature_class[4] == FeatureClass::Uninformative);
  CHECK(e.costs(2) == 3.0);
  CHECK(e.costs(7) == 5.0);
}

TEST_CASE("epv is minority count over features") {
  Dataset d = testutil::random_instance(10, 4, 7);
  d.y.setConstant(1.0);
  d.y(0) = -1.0;
  d.y(1) = -1.0;
  d.y(2) = -1.0;
  CHECK(epv(d) == doctest::Approx(3.0 / 4.0));
  d.y.setConstant(1.0);
  CHECK_THROWS_AS(epv(d), std::invalid_argument);
}

TEST_CASE("csv round trip preserves data and names exactly") {
  Dataset d = testutil::random_instance(12, 3, 8);
  std::string path = temp_path("subsetx_roundtrip.csv");
  write_csv(d, path);
  Dataset back = load_csv(path, "label", "1");
  CHECK(back.rows() == d.rows());
  CHECK(back.feature_names == d.feature_names);
  CHECK((back.X - d.X).cwiseAbs().maxCoeff() == 0.0);
  CHECK(back.y == d.y);
  std::remove(path.c_str());
}

TEST_CASE("load_csv maps positive label and rejects unknown columns") {
  std::string path = temp_path("subsetx_labels.csv");
  {
    FILE* f = std::fopen(path.c_str(), "w");
    std::fputs("a,b,outcome\n1.5,2,yes\n0.5,1,no\n", f);
    std::fclose(f);
  }
  Dataset d = load_csv(path, "outcome", "yes");
  CHECK(d.rows() == 2);
  CHECK(d.y(0) == 1.0);
  CHECK(d.y(1) == -1.0);
  CHECK_THROWS_AS(load_csv(path, "missing", "yes"), std::runtime_error);
  std::remove(path.c_str());
}

}  // TEST_SUITE
