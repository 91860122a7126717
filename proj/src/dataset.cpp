// SPDX-License-Identifier: Apache-2.0

#include "subsetx/dataset.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <sstream>
#include <stdexcept>

namespace subsetx {

const char* to_string(FeatureClass c) {
  switch (c) {
    case FeatureClass::Informative: return "informative";
    case FeatureClass::Redundant: return "redundant";
    case FeatureClass::Uninformative: return "uninformative";
  }
  return "uninformative";
}

FeatureClass feature_class_from_string(const std::string& s) {
  if (s == "informative") return FeatureClass::Informative;
  if (s == "redundant") return FeatureClass::Redundant;
  if (s == "uninformative") return FeatureClass::Uninformative;
  throw std::invalid_argument("unknown feature class: " + s);
}

void Dataset::validate() const {
  if (X.rows() < 1 || X.cols() < 1)
    throw std::invalid_argument("dataset must have at least one row and one column");
  if (y.size() != X.rows())
    throw std::invalid_argument("label length does not match row count");
  for (Eigen::Index m = 0; m < y.size(); ++m)
    if (y[m] != 1.0 && y[m] != -1.0)
      throw std::invalid_argument("labels must be -1 or +1");
  if (!feature_names.empty() && static_cast<Eigen::Index>(feature_names.size()) != X.cols())
    throw std::invalid_argument("feature_names length mismatch");
  if (!feature_class.empty() && static_cast<Eigen::Index>(feature_class.size()) != X.cols())
    throw std::invalid_argument("feature_class length mismatch");
  if (costs.size() > 0) {
    if (costs.size() != X.cols()) throw std::invalid_argument("costs length mismatch");
    if ((costs.array() <= 0.0).any())
      throw std::invalid_argument("costs must be strictly positive");
  }
}

Dataset Dataset::subset_rows(const std::vector<int>& idx) const {
  Dataset out;
  out.X.resize(static_cast<Eigen::Index>(idx.size()), X.cols());
  out.y.resize(static_cast<Eigen::Index>(idx.size()));
  for (std::size_t i = 0; i < idx.size(); ++i) {
    out.X.row(static_cast<Eigen::Index>(i)) = X.row(idx[i]);
    out.y[static_cast<Eigen::Index>(i)] = y[idx[i]];
  }
  out.feature_names = feature_names;
  out.feature_class = feature_class;
  out.costs = costs;
  return out;
}

Dataset Dataset::subset_cols(const std::vector<int>& idx) const {
  Dataset out;
  out.X.resize(X.rows(), static_cast<Eigen::Index>(idx.size()));
  for (std::size_t j = 0; j < idx.size(); ++j)
    out.X.col(static_cast<Eigen::Index>(j)) = X.col(idx[j]);
  out.y = y;
  for (int j : idx) {
    if (!feature_names.empty()) out.feature_names.push_back(feature_names[j]);
    if (!feature_class.empty()) out.feature_class.push_back(feature_class[j]);
  }
  if (costs.size() > 0) {
    out.costs.resize(static_cast<Eigen::Index>(idx.size()));
    for (std::size_t j = 0; j < idx.size(); ++j) out.costs[static_cast<Eigen::Index>(j)] = costs[idx[j]];
  }
  return out;
}

SelectionConstraint SelectionConstraint::cardinality(double k) {
  if (k <= 0) throw std::invalid_argument("cardinality bound must be positive");
  return {Kind::Cardinality, k};
}

SelectionConstraint SelectionConstraint::budget(double b) {
  if (b < 0) throw std::invalid_argument("budget must be nonnegative");
  return {Kind::Budget, b};
}

void FitConfig::validate() const {
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  if (newton_tol <= 0 || rel_gap_tol <= 0 || abs_gap_tol <= 0)
    throw std::invalid_argument("tolerances must be strictly positive");
  if (max_newton_iters < 1) throw std::invalid_argument("max_newton_iters must be >= 1");
}

MinMaxScaler MinMaxScaler::fit(const Eigen::MatrixXd& X) {
  MinMaxScaler s;
  s.lo = X.colwise().minCoeff();
  Eigen::VectorXd hi = X.colwise().maxCoeff();
  s.range = hi - s.lo;
  return s;
}

Eigen::MatrixXd MinMaxScaler::apply(const Eigen::MatrixXd& X) const {
  if (X.cols() != lo.size()) throw std::invalid_argument("scaler dimension mismatch");
  Eigen::MatrixXd out(X.rows(), X.cols());
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    if (range[j] == 0.0)
      out.col(j).setZero();
    else
      out.col(j) = (X.col(j).array() - lo[j]) / range[j];
  }
  return out;
}

Dataset minmax_scale(const Dataset& d) {
  Dataset out = d;
  out.X = MinMaxScaler::fit(d.X).apply(d.X);
  return out;
}

namespace {

double quantile_sorted(const std::vector<double>& v, double p) {
  // Linear interpolation between order statistics.
  if (v.empty()) return 0.0;
  double pos = p * (static_cast<double>(v.size()) - 1.0);
  std::size_t i = static_cast<std::size_t>(pos);
  if (i + 1 >= v.size()) return v.back();
  double frac = pos - static_cast<double>(i);
  return v[i] * (1.0 - frac) + v[i + 1] * frac;
}

inline double cube_pos(double t) { return t > 0 ? t * t * t : 0.0; }

}  // namespace

SplineBasis SplineBasis::fit(const Eigen::MatrixXd& X) {
  if (X.rows() == 0 || X.cols() == 0) throw std::invalid_argument("empty dataset");
  SplineBasis b;
  b.expanded.resize(static_cast<std::size_t>(X.cols()));
  b.knots.resize(static_cast<std::size_t>(X.cols()), {0.0, 0.0, 0.0});
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    std::vector<double> col(X.col(j).data(), X.col(j).data() + X.rows());
    std::sort(col.begin(), col.end());
    std::size_t distinct = col.empty() ? 0 : 1;
    for (std::size_t i = 1; i < col.size(); ++i)
      if (col[i] != col[i - 1]) ++distinct;
    if (distinct < 4) {
      b.expanded[static_cast<std::size_t>(j)] = false;
      continue;
    }
    b.expanded[static_cast<std::size_t>(j)] = true;
    b.knots[static_cast<std::size_t>(j)] = {quantile_sorted(col, 0.25),
                                            quantile_sorted(col, 0.50),
                                            quantile_sorted(col, 0.75)};
  }
  return b;
}

Eigen::MatrixXd SplineBasis::apply(const Eigen::MatrixXd& X) const {
  if (static_cast<std::size_t>(X.cols()) != expanded.size())
    throw std::invalid_argument("spline basis dimension mismatch");
  Eigen::Index ncols = 0;
  for (bool e : expanded) ncols += e ? 4 : 1;
  Eigen::MatrixXd out(X.rows(), ncols);
  Eigen::Index c = 0;
  for (Eigen::Index j = 0; j < X.cols(); ++j) {
    out.col(c++) = X.col(j);
    if (!expanded[static_cast<std::size_t>(j)]) continue;
    const auto& k = knots[static_cast<std::size_t>(j)];
    for (int q = 0; q < 3; ++q) {
      for (Eigen::Index m = 0; m < X.rows(); ++m)
        out(m, c) = cube_pos(X(m, j) - k[static_cast<std::size_t>(q)]);
      ++c;
    }
  }
  return out;
}

std::vector<std::string> SplineBasis::expand_names(const std::vector<std::string>& names) const {
  std::vector<std::string> out;
  for (std::size_t j = 0; j < expanded.size(); ++j) {
    std::string base = j < names.size() ? names[j] : "f" + std::to_string(j);
    out.push_back(base);
    if (expanded[j])
      for (int q = 1; q <= 3; ++q) out.push_back(base + "_s" + std::to_string(q));
  }
  return out;
}

std::vector<int> SplineBasis::output_to_input() const {
  std::vector<int> map;
  for (std::size_t j = 0; j < expanded.size(); ++j) {
    int reps = expanded[j] ? 4 : 1;
    for (int q = 0; q < reps; ++q) map.push_back(static_cast<int>(j));
  }
  return map;
}

Dataset spline_expand(const Dataset& d) {
  SplineBasis basis = SplineBasis::fit(d.X);
  Dataset out;
  out.X = basis.apply(d.X);
  out.y = d.y;
  out.feature_names = basis.expand_names(d.feature_names);
  if (!d.feature_class.empty())
    for (int src : basis.output_to_input()) out.feature_class.push_back(d.feature_class[src]);
  if (d.costs.size() > 0) {
    auto map = basis.output_to_input();
    out.costs.resize(static_cast<Eigen::Index>(map.size()));
    for (std::size_t j = 0; j < map.size(); ++j)
      out.costs[static_cast<Eigen::Index>(j)] = d.costs[map[j]];
  }
  return out;
}

double epv(const Dataset& d) {
  Eigen::Index pos = (d.y.array() > 0).count();
  Eigen::Index neg = d.y.size() - pos;
  if (pos == 0 || neg == 0) throw std::invalid_argument("epv requires both classes");
  return static_cast<double>(std::min(pos, neg)) / static_cast<double>(d.cols());
}

namespace {

std::vector<std::string> split_csv_line(const std::string& line) {
  std::vector<std::string> fields;
  std::string cur;
  for (char ch : line) {
    if (ch == ',') {
      fields.push_back(cur);
      cur.clear();
    } else if (ch != '\r') {
      cur.push_back(ch);
    }
  }
  fields.push_back(cur);
  return fields;
}

}  // namespace

Dataset load_csv(const std::string& path, const std::string& label_column,
                 const std::string& positive_label) {
  std::ifstream in(path);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::string line;
  if (!std::getline(in, line)) throw std::runtime_error("empty file: " + path);
  std::vector<std::string> header = split_csv_line(line);
  int label_idx = -1;
  for (std::size_t j = 0; j < header.size(); ++j)
    if (header[j] == label_column) label_idx = static_cast<int>(j);
  if (label_idx < 0) throw std::runtime_error("label column not found: " + label_column);

  std::vector<std::vector<double>> rows;
  std::vector<std::string> raw_labels;
  while (std::getline(in, line)) {
    if (line.empty()) continue;
    std::vector<std::string> fields = split_csv_line(line);
    if (fields.size() != header.size())
      throw std::runtime_error("row with wrong field count in " + path);
    std::vector<double> row;
    for (std::size_t j = 0; j < fields.size(); ++j) {
      if (static_cast<int>(j) == label_idx) {
        raw_labels.push_back(fields[j]);
        continue;
      }
      try {
        std::size_t used = 0;
        double v = std::stod(fields[j], &used);
        if (used != fields[j].size()) throw std::invalid_argument(fields[j]);
        row.push_back(v);
      } catch (const std::exception&) {
        throw std::runtime_error("non-numeric feature value '" + fields[j] + "' in column " +
                                 header[j]);
      }
    }
    rows.push_back(std::move(row));
  }
  if (rows.size() < 2) throw std::runtime_error("need at least 2 data rows");

  std::vector<std::string> distinct;
  for (const auto& l : raw_labels)
    if (std::find(distinct.begin(), distinct.end(), l) == distinct.end()) distinct.push_back(l);
  if (distinct.size() != 2)
    throw std::runtime_error("label column must have exactly two distinct values, got " +
                             std::to_string(distinct.size()));
  if (std::find(distinct.begin(), distinct.end(), positive_label) == distinct.end())
    throw std::runtime_error("positive label '" + positive_label + "' not present");

  Dataset d;
  d.X.resize(static_cast<Eigen::Index>(rows.size()),
             static_cast<Eigen::Index>(header.size() - 1));
  d.y.resize(static_cast<Eigen::Index>(rows.size()));
  for (std::size_t i = 0; i < rows.size(); ++i) {
    for (std::size_t j = 0; j < rows[i].size(); ++j)
      d.X(static_cast<Eigen::Index>(i), static_cast<Eigen::Index>(j)) = rows[i][j];
    d.y[static_cast<Eigen::Index>(i)] = raw_labels[i] == positive_label ? 1.0 : -1.0;
  }
  for (std::size_t j = 0; j < header.size(); ++j)
    if (static_cast<int>(j) != label_idx) d.feature_names.push_back(header[j]);
  d.validate();
  return d;
}

void write_csv(const Dataset& d, const std::string& path, const std::string& label_column) {
  std::ofstream out(path);
  if (!out) throw std::runtime_error("cannot write " + path);
  for (Eigen::Index j = 0; j < d.cols(); ++j) {
    std::string name = d.feature_names.empty() ? "f" + std::to_string(j) : d.feature_names[j];
    out << name << ",";
  }
  out << label_column << "\n";
  char buf[40];
  for (Eigen::Index m = 0; m < d.rows(); ++m) {
    for (Eigen::Index j = 0; j < d.cols(); ++j) {
      std::snprintf(buf, sizeof(buf), "%.17g", d.X(m, j));
      out << buf << ",";
    }
    out << (d.y[m] > 0 ? "1" : "-1") << "\n";
  }
}

}  // namespace subsetx
