// SPDX-License-Identifier: Apache-2.0

#include "subsetx/conic.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <fstream>
#include <map>
#include <sstream>
#include <stdexcept>
#include <vector>

namespace subsetx {

namespace {

std::string fmt(double v) {
  char buf[40];
  std::snprintf(buf, sizeof(buf), "%.17g", v);
  return buf;
}

}  // namespace

bool ConicProgram::operator==(const ConicProgram& o) const {
  return M == o.M && N == o.N && lambda == o.lambda && budget == o.budget &&
         X == o.X && y == o.y && costs == o.costs;
}

ConicProgram build_program(const Dataset& d, const SelectionConstraint& constraint,
                           double lambda) {
  if (lambda < 0) throw std::invalid_argument("lambda must be nonnegative");
  if (constraint.is_budget() && !d.has_costs())
    throw std::invalid_argument("budget constraint requires per-feature costs");
  ConicProgram p;
  p.M = static_cast<int>(d.rows());
  p.N = static_cast<int>(d.cols());
  p.lambda = lambda;
  p.X = d.X;
  p.y = d.y;
  p.costs = constraint.is_budget() ? d.costs : Eigen::VectorXd::Ones(p.N);
  p.budget = constraint.limit;
  return p;
}

std::string cbf_string(const ConicProgram& p) {
  const int M = p.M, N = p.N;
  std::ostringstream os;
  os << "VER\n3\n\n";
  os << "OBJSENSE\nMIN\n\n";

  os << "VAR\n" << (p.num_continuous_vars() + N) << " 3\n";
  os << "F " << (N + 1 + 3 * M) << "\n";
  os << "L+ " << N << "\n";
  os << "F " << N << "\n\n";

  os << "INT\n" << N << "\n";
  for (int n = 0; n < N; ++n) os << p.var_z(n) << "\n";
  os << "\n";

  os << "OBJACOORD\n" << (M + N) << "\n";
  for (int m = 0; m < M; ++m) os << p.var_t(m) << " 1\n";
  for (int n = 0; n < N; ++n) os << p.var_r(n) << " " << fmt(p.lambda) << "\n";
  os << "\n";

  os << "CON\n" << (6 * M + 3 * N + M + N + 1) << " " << (2 * M + N + 3) << "\n";
  for (int c = 0; c < 2 * M; ++c) os << "EXP 3\n";
  for (int n = 0; n < N; ++n) os << "QR 3\n";
  os << "L- " << M << "\n";
  os << "L- " << N << "\n";
  os << "L- 1\n\n";

  struct Entry {
    int row, col;
    double val;
  };
  std::vector<Entry> a;
  std::vector<std::pair<int, double>> b;
  const int row_rq = 6 * M;
  const int row_uv = 6 * M + 3 * N;
  const int row_zb = row_uv + M;
  const int row_budget = row_zb + N;

  for (int m = 0; m < M; ++m) {
    a.push_back({3 * m, p.var_u(m), 1.0});
    b.push_back({3 * m + 1, 1.0});
    for (int n = 0; n < N; ++n) {
      double v = -p.y[m] * p.X(m, n);
      if (v != 0.0) a.push_back({3 * m + 2, p.var_theta(n), v});
    }
    a.push_back({3 * m + 2, p.var_theta0(), -p.y[m]});
    a.push_back({3 * m + 2, p.var_t(m), -1.0});
  }
  for (int m = 0; m < M; ++m) {
    a.push_back({3 * M + 3 * m, p.var_v(m), 1.0});
    b.push_back({3 * M + 3 * m + 1, 1.0});
    a.push_back({3 * M + 3 * m + 2, p.var_t(m), -1.0});
  }
  for (int n = 0; n < N; ++n) {
    a.push_back({row_rq + 3 * n, p.var_z(n), 1.0});
    a.push_back({row_rq + 3 * n + 1, p.var_r(n), 1.0});
    a.push_back({row_rq + 3 * n + 2, p.var_theta(n), 1.0});
  }
  for (int m = 0; m < M; ++m) {
    a.push_back({row_uv + m, p.var_u(m), 1.0});
    a.push_back({row_uv + m, p.var_v(m), 1.0});
    b.push_back({row_uv + m, -1.0});
  }
  for (int n = 0; n < N; ++n) {
    a.push_back({row_zb + n, p.var_z(n), 1.0});
    b.push_back({row_zb + n, -1.0});
  }
  for (int n = 0; n < N; ++n) a.push_back({row_budget, p.var_z(n), p.costs[n]});
  b.push_back({row_budget, -p.budget});

  std::stable_sort(a.begin(), a.end(), [](const Entry& l, const Entry& r) {
    return l.row != r.row ? l.row < r.row : l.col < r.col;
  });
  std::stable_sort(b.begin(), b.end(),
                   [](const auto& l, const auto& r) { return l.first < r.first; });

  os << "ACOORD\n" << a.size() << "\n";
  for (const auto& e : a) os << e.row << " " << e.col << " " << fmt(e.val) << "\n";
  os << "\n";
  os << "BCOORD\n" << b.size() << "\n";
  for (const auto& e : b) os << e.first << " " << fmt(e.second) << "\n";
  return os.str();
}

void export_cbf(const ConicProgram& p, const std::string& path) {
  std::ofstream out(path, std::ios::binary);
  if (!out) throw std::runtime_error("cannot write " + path);
  out << cbf_string(p);
}

namespace {

struct RawCbf {
  int version = 0;
  std::string objsense;
  std::vector<std::pair<std::string, int>> var_groups;
  int num_vars = 0;
  std::vector<int> integers;
  std::map<int, double> obj;
  std::vector<std::pair<std::string, int>> con_groups;
  int num_rows = 0;
  std::map<std::pair<int, int>, double> acoord;
  std::map<int, double> bcoord;
};

RawCbf read_raw(std::istream& in) {
  RawCbf r;
  std::string line;
  auto next_line = [&](std::string& out) -> bool {
    while (std::getline(in, line)) {
      if (!line.empty() && line.back() == '\r') line.pop_back();
      if (line.empty() || line[0] == '#') continue;
      out = line;
      return true;
    }
    return false;
  };
  std::string tok;
  while (next_line(tok)) {
    if (tok == "VER") {
      std::string v;
      if (!next_line(v)) throw std::runtime_error("cbf: truncated VER");
      r.version = std::stoi(v);
    } else if (tok == "OBJSENSE") {
      if (!next_line(r.objsense)) throw std::runtime_error("cbf: truncated OBJSENSE");
    } else if (tok == "VAR") {
      std::string hdr;
      if (!next_line(hdr)) throw std::runtime_error("cbf: truncated VAR");
      int total, groups;
      std::istringstream(hdr) >> total >> groups;
      r.num_vars = total;
      for (int g = 0; g < groups; ++g) {
        std::string gl;
        if (!next_line(gl)) throw std::runtime_error("cbf: truncated VAR group");
        std::string dom;
        int count;
        std::istringstream(gl) >> dom >> count;
        r.var_groups.emplace_back(dom, count);
      }
    } else if (tok == "INT") {
      std::string hdr;
      if (!next_line(hdr)) throw std::runtime_error("cbf: truncated INT");
      int count = std::stoi(hdr);
      for (int i = 0; i < count; ++i) {
        std::string il;
        if (!next_line(il)) throw std::runtime_error("cbf: truncated INT list");
        r.integers.push_back(std::stoi(il));
      }
    } else if (tok == "OBJACOORD") {
      std::string hdr;
      if (!next_line(hdr)) throw std::runtime_error("cbf: truncated OBJACOORD");
      int count = std::stoi(hdr);
      for (int i = 0; i < count; ++i) {
        std::string el;
        if (!next_line(el)) throw std::runtime_error("cbf: truncated OBJACOORD entry");
        int idx;
        double val;
        std::istringstream(el) >> idx >> val;
        r.obj[idx] = val;
      }
    } else if (tok == "CON") {
      std::string hdr;
      if (!next_line(hdr)) throw std::runtime_error("cbf: truncated CON");
      int total, groups;
      std::istringstream(hdr) >> total >> groups;
      r.num_rows = total;
      for (int g = 0; g < groups; ++g) {
        std::string gl;
        if (!next_line(gl)) throw std::runtime_error("cbf: truncated CON group");
        std::string dom;
        int count;
        std::istringstream(gl) >> dom >> count;
        if (dom != "EXP" && dom != "QR" && dom != "L-" && dom != "L+" && dom != "L=" &&
            dom != "F")
          throw std::runtime_error("cbf: unsupported cone type " + dom);
        r.con_groups.emplace_back(dom, count);
      }
    } else if (tok == "ACOORD") {
      std::string hdr;
      if (!next_line(hdr)) throw std::runtime_error("cbf: truncated ACOORD");
      long count = std::stol(hdr);
      for (long i = 0; i < count; ++i) {
        std::string el;
        if (!next_line(el)) throw std::runtime_error("cbf: truncated ACOORD entry");
        int row, col;
        double val;
        std::istringstream(el) >> row >> col >> val;
        r.acoord[{row, col}] = val;
      }
    } else if (tok == "BCOORD") {
      std::string hdr;
      if (!next_line(hdr)) throw std::runtime_error("cbf: truncated BCOORD");
      long count = std::stol(hdr);
      for (long i = 0; i < count; ++i) {
        std::string el;
        if (!next_line(el)) throw std::runtime_error("cbf: truncated BCOORD entry");
        int row;
        double val;
        std::istringstream(el) >> row >> val;
        r.bcoord[row] = val;
      }
    } else {
      throw std::runtime_error("cbf: unsupported section " + tok);
    }
  }
  return r;
}

}  // namespace

ConicProgram parse_cbf_string(const std::string& text) {
  std::istringstream in(text);
  RawCbf r = read_raw(in);
  if (r.version != 3) throw std::runtime_error("cbf: expected version 3");
  if (r.objsense != "MIN") throw std::runtime_error("cbf: expected MIN objective");
  if (r.var_groups.size() != 3 || r.var_groups[0].first != "F" ||
      r.var_groups[1].first != "L+" || r.var_groups[2].first != "F")
    throw std::runtime_error("cbf: unexpected variable layout");
  const int N = r.var_groups[1].second;
  if (r.var_groups[2].second != N) throw std::runtime_error("cbf: unexpected z block");
  const int first = r.var_groups[0].second;
  if ((first - N - 1) % 3 != 0) throw std::runtime_error("cbf: unexpected variable count");
  const int M = (first - N - 1) / 3;
  if (M < 1 || N < 1) throw std::runtime_error("cbf: empty program");

  ConicProgram p;
  p.M = M;
  p.N = N;
  if (static_cast<int>(r.integers.size()) != N)
    throw std::runtime_error("cbf: expected N integer variables");
  for (int n = 0; n < N; ++n)
    if (r.integers[n] != p.var_z(n)) throw std::runtime_error("cbf: unexpected integer index");

  // Objective: t coefficients must be 1, r coefficients carry lambda.
  for (int m = 0; m < M; ++m) {
    auto it = r.obj.find(p.var_t(m));
    if (it == r.obj.end() || it->second != 1.0)
      throw std::runtime_error("cbf: unexpected objective on t");
  }
  auto itr = r.obj.find(p.var_r(0));
  if (itr == r.obj.end()) throw std::runtime_error("cbf: missing objective on r");
  p.lambda = itr->second;

  const int row_uv = 6 * M + 3 * N;
  const int row_budget = row_uv + M + N;
  auto acoef = [&](int row, int col) {
    auto it = r.acoord.find({row, col});
    return it == r.acoord.end() ? 0.0 : it->second;
  };

  p.X.resize(M, N);
  p.y.resize(M);
  for (int m = 0; m < M; ++m) {
    double ytheta0 = acoef(3 * m + 2, p.var_theta0());
    if (ytheta0 != 1.0 && ytheta0 != -1.0)
      throw std::runtime_error("cbf: unexpected label coefficient");
    p.y[m] = -ytheta0;
    if (acoef(3 * m, p.var_u(m)) != 1.0 || acoef(3 * m + 2, p.var_t(m)) != -1.0 ||
        acoef(3 * M + 3 * m, p.var_v(m)) != 1.0 ||
        acoef(3 * M + 3 * m + 2, p.var_t(m)) != -1.0)
      throw std::runtime_error("cbf: unexpected softplus cone layout");
    for (int n = 0; n < N; ++n) p.X(m, n) = acoef(3 * m + 2, p.var_theta(n)) / (-p.y[m]);
  }
  p.costs.resize(N);
  for (int n = 0; n < N; ++n) p.costs[n] = acoef(row_budget, p.var_z(n));
  auto itb = r.bcoord.find(row_budget);
  if (itb == r.bcoord.end()) throw std::runtime_error("cbf: missing budget constant");
  p.budget = -itb->second;
  return p;
}

ConicProgram parse_cbf(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw std::runtime_error("cannot open " + path);
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_cbf_string(buf.str());
}

ConicWitness make_witness(const Dataset& d, const ModelParams& p,
                          const std::vector<int>& support, double lambda) {
  const Eigen::Index M = d.rows();
  const Eigen::Index N = d.cols();
  ConicWitness w;
  w.t.resize(M);
  w.u.resize(M);
  w.v.resize(M);
  w.r = Eigen::VectorXd::Zero(N);
  w.z = Eigen::VectorXd::Zero(N);
  for (int n : support) w.z[n] = 1.0;

  Eigen::VectorXd margins = d.y.array() * (d.X * p.theta).array() + d.y.array() * p.theta0;
  for (Eigen::Index m = 0; m < M; ++m) {
    double t = softplus(margins[m]);
    w.t[m] = t;
    // -margin - t <= 0 and -t <= 0, so both exponentials are overflow-free.
    w.u[m] = std::exp(-margins[m] - t);
    w.v[m] = std::exp(-t);
    w.max_exp_violation = std::max(w.max_exp_violation,
                                   std::exp(-margins[m] - t) - w.u[m]);
    w.max_exp_violation = std::max(w.max_exp_violation, std::exp(-t) - w.v[m]);
    w.max_uv_violation = std::max(w.max_uv_violation, w.u[m] + w.v[m] - 1.0);
  }
  for (Eigen::Index n = 0; n < N; ++n) {
    if (w.z[n] > 0) w.r[n] = 0.5 * p.theta[n] * p.theta[n];
    w.max_rq_violation =
        std::max(w.max_rq_violation, 0.5 * p.theta[n] * p.theta[n] - w.z[n] * w.r[n]);
  }
  w.objective = w.t.sum() + lambda * w.r.sum();
  return w;
}

}  // namespace subsetx
