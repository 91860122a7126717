// SPDX-License-Identifier: Apache-2.0

#include "subsetx/bnb.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <ostream>
#include <queue>
#include <stdexcept>

namespace subsetx {
namespace bnb {

namespace detail {
SolveStats g_stats;
SolveStats& stats() { return g_stats; }
}  // namespace detail

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

const char* status_names[] = {"Optimal", "GapReached", "NodeLimit", "Infeasible"};

struct Ctx {
  const Dataset* d = nullptr;
  double lambda = 0.0;
  FitConfig cfg;
  Eigen::VectorXd costs;
  double budget = 0.0;
  bool integral = false;  // exact knapsack arithmetic when costs and budget are integers
  std::vector<long long> icosts;
  long long ibudget = 0;
};

Ctx make_ctx(const Dataset& d, const SelectionConstraint& constraint, double lambda,
             const FitConfig& cfg) {
  Ctx ctx;
  ctx.d = &d;
  ctx.lambda = lambda;
  ctx.cfg = cfg;
  if (constraint.is_budget()) {
    if (!d.has_costs()) throw std::invalid_argument("budget constraint requires costs");
    ctx.costs = d.costs;
  } else {
    ctx.costs = Eigen::VectorXd::Ones(d.cols());
  }
  ctx.budget = constraint.limit;
  ctx.integral = true;
  for (Eigen::Index n = 0; n < ctx.costs.size(); ++n) {
    double r = std::round(ctx.costs[n]);
    if (std::abs(ctx.costs[n] - r) > 1e-9) ctx.integral = false;
  }
  if (ctx.integral) {
    for (Eigen::Index n = 0; n < ctx.costs.size(); ++n)
      ctx.icosts.push_back(static_cast<long long>(std::llround(ctx.costs[n])));
    ctx.ibudget = static_cast<long long>(std::floor(ctx.budget + 1e-9));
  }
  return ctx;
}

double cost_of(const Ctx& ctx, const std::vector<int>& idx) {
  double c = 0.0;
  for (int n : idx) c += ctx.costs[n];
  return c;
}

/// Exact feasibility of a candidate selection cost.
bool cost_fits(const Ctx& ctx, const std::vector<int>& idx, int extra = -1) {
  if (ctx.integral) {
    long long c = 0;
    for (int n : idx) c += ctx.icosts[n];
    if (extra >= 0) c += ctx.icosts[extra];
    return c <= ctx.ibudget;
  }
  double c = cost_of(ctx, idx);
  if (extra >= 0) c += ctx.costs[extra];
  return c <= ctx.budget;
}

// Smoothed reverse-Huber penalty on free coordinates: a Huberized |.|
// segment below the crossover s, the exact quadratic branch above it.  The
// smoothing underestimates the true perspective penalty, so inner minima
// remain valid Lagrangian bound terms.
struct PenSpec {
  bool berhu = false;
  double a = 0.0, s = 0.0, delta = 0.0, lam = 0.0, muc = 0.0;

  static PenSpec quad(double lam) {
    PenSpec p;
    p.lam = lam;
    return p;
  }
  static PenSpec reverse_huber(double lam, double mu, double c) {
    PenSpec p;
    p.berhu = true;
    p.lam = lam;
    p.muc = mu * c;
    p.a = std::sqrt(2.0 * lam * mu * c);
    p.s = std::sqrt(2.0 * mu * c / lam);
    p.delta = 1e-3 * p.s;
    return p;
  }
  double value(double th) const {
    double t = std::abs(th);
    if (!berhu) return 0.5 * lam * th * th;
    if (t <= delta) return delta > 0 ? 0.5 * a * t * t / delta : 0.0;
    if (t <= s) return a * t - 0.5 * a * delta;
    return 0.5 * lam * th * th + muc - 0.5 * a * delta;
  }
  double d1(double th) const {
    double t = std::abs(th);
    if (!berhu) return lam * th;
    if (t <= delta) return delta > 0 ? a * th / delta : 0.0;
    if (t <= s) return th > 0 ? a : -a;
    return lam * th;
  }
  double d2(double th) const {
    double t = std::abs(th);
    if (!berhu) return lam;
    if (t <= delta) return delta > 0 ? a / delta : 0.0;
    if (t <= s) return 0.0;
    return lam;
  }
};

double penalized_value(const Eigen::MatrixXd& Xa, const Eigen::VectorXd& y,
                       const std::vector<PenSpec>& pen, const Eigen::VectorXd& w, double w0) {
  Eigen::VectorXd margins = y.array() * (Xa * w).array() + y.array() * w0;
  double f = 0.0;
  for (Eigen::Index m = 0; m < margins.size(); ++m) f += softplus(margins[m]);
  for (Eigen::Index j = 0; j < w.size(); ++j) f += pen[static_cast<std::size_t>(j)].value(w[j]);
  return f;
}

/// Damped Newton minimization of softplus loss + separable penalties.
/// Returns the attained raw value; `converged_out` reports whether the
/// gradient tolerance was met.
double newton_penalized(const Eigen::MatrixXd& Xa, const Eigen::VectorXd& y,
                        const std::vector<PenSpec>& pen, Eigen::VectorXd& w, double& w0,
                        bool* converged_out = nullptr) {
  const Eigen::Index M = Xa.rows();
  const Eigen::Index S = Xa.cols();
  double f = penalized_value(Xa, y, pen, w, w0);
  Eigen::VectorXd g(S + 1);
  Eigen::MatrixXd H(S + 1, S + 1);
  bool converged = false;
  ++detail::g_stats.newton_calls;

  for (int it = 0; it < 80; ++it) {
    ++detail::g_stats.newton_iters;
    Eigen::VectorXd margins = y.array() * (Xa * w).array() + y.array() * w0;
    Eigen::VectorXd gm(M), hm(M);
    for (Eigen::Index m = 0; m < M; ++m) {
      double s = sigmoid(-margins[m]);
      gm[m] = -s * y[m];
      hm[m] = s * (1.0 - s);
    }
    g.head(S) = Xa.transpose() * gm;
    for (Eigen::Index j = 0; j < S; ++j) g[j] += pen[static_cast<std::size_t>(j)].d1(w[j]);
    g[S] = gm.sum();
    if (g.norm() <= 1e-9 * (1.0 + std::abs(f))) {
      converged = true;
      break;
    }

    H.topLeftCorner(S, S) = Xa.transpose() * hm.asDiagonal() * Xa;
    for (Eigen::Index j = 0; j < S; ++j) H(j, j) += pen[static_cast<std::size_t>(j)].d2(w[j]);
    H.block(0, S, S, 1) = Xa.transpose() * hm;
    H.block(S, 0, 1, S) = H.block(0, S, S, 1).transpose();
    H(S, S) = hm.sum();

    Eigen::VectorXd step;
    double ridge = 1e-12;
    for (;;) {
      Eigen::MatrixXd Hr = H;
      Hr.diagonal().array() += ridge;
      Eigen::LDLT<Eigen::MatrixXd> ldlt(Hr);
      step = ldlt.solve(-g);
      if (ldlt.info() == Eigen::Success && step.allFinite() && g.dot(step) < 0) break;
      ridge *= 100.0;
      if (ridge > 1e8) {
        step = -g;
        break;
      }
    }

    double slope = g.dot(step);
    double t = 1.0;
    for (;;) {
      Eigen::VectorXd w_try = w + t * step.head(S);
      double w0_try = w0 + t * step[S];
      double f_try = penalized_value(Xa, y, pen, w_try, w0_try);
      if (f_try <= f + 1e-4 * t * slope || t < 1e-14) {
        w = w_try;
        w0 = w0_try;
        f = f_try;
        break;
      }
      t *= 0.5;
    }
  }
  if (!converged) ++detail::g_stats.newton_failures;
  if (converged_out) *converged_out = converged;
  return f;
}

/// Bound-side safety margin compensating for finite solver tolerance.
inline double bound_slack(double f) { return 1e-9 * (1.0 + std::abs(f)); }

struct RelaxOut {
  double bound = -kInf;
  Eigen::VectorXd theta;  // full length, zeros on fixed coordinates
  double theta0 = 0.0;
  bool exact_full = false;   // bound is the exact optimum of the subtree
  double exact_value = kInf; // raw fit value when exact_full
  double best_mu = 0.0;      // dual multiplier attaining the bound
};

/// Lagrangian/perspective relaxation bound for a node: max over a
/// golden-section sweep of the dual multiplier, with exact Newton anchors
/// at mu = 0 and at the multiplier that deactivates all free coordinates.
/// `threshold` allows an early exit once the bound suffices to fathom the
/// node; `warm`/`warm0` seed the inner Newton solves (full-length theta).
RelaxOut relax_node(const Ctx& ctx, const Node& node, double threshold = kInf,
                    const Eigen::VectorXd* warm = nullptr, double warm0 = 0.0,
                    double parent_mu = 0.0) {
  const Eigen::Index N = ctx.d->cols();
  std::vector<int> role(static_cast<std::size_t>(N), 2);  // 0 out, 1 in, 2 free
  for (int n : node.fixed_out) role[static_cast<std::size_t>(n)] = 0;
  for (int n : node.fixed_in) role[static_cast<std::size_t>(n)] = 1;

  std::vector<int> active;  // in + free, sorted
  for (int n = 0; n < N; ++n)
    if (role[static_cast<std::size_t>(n)] != 0) active.push_back(n);

  double cost_in = cost_of(ctx, node.fixed_in);
  double b_rem = ctx.budget - cost_in;

  RelaxOut out;
  out.theta = Eigen::VectorXd::Zero(N);

  Eigen::MatrixXd Xa(ctx.d->rows(), static_cast<Eigen::Index>(active.size()));
  for (std::size_t j = 0; j < active.size(); ++j)
    Xa.col(static_cast<Eigen::Index>(j)) = ctx.d->X.col(active[j]);

  auto scatter = [&](const Eigen::VectorXd& w) {
    Eigen::VectorXd full = Eigen::VectorXd::Zero(N);
    for (std::size_t j = 0; j < active.size(); ++j) full[active[j]] = w[static_cast<Eigen::Index>(j)];
    return full;
  };

  // Whole subtree affordable: the constraint is inactive and the plain
  // regularized fit over in+free is the exact subtree optimum.
  bool affordable;
  if (ctx.integral) {
    long long c = 0;
    for (int n : active) c += ctx.icosts[n];
    affordable = c <= ctx.ibudget;
  } else {
    double c = 0;
    for (int n : active) c += ctx.costs[n];
    affordable = c <= ctx.budget;
  }

  std::vector<PenSpec> pen_quad(active.size(), PenSpec::quad(ctx.lambda));
  Eigen::VectorXd w = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(active.size()));
  double w0 = 0.0;
  if (warm && warm->size() == N) {
    for (std::size_t j = 0; j < active.size(); ++j)
      w[static_cast<Eigen::Index>(j)] = (*warm)[active[j]];
    w0 = warm0;
  }
  bool conv0 = false;
  double v0 = newton_penalized(Xa, ctx.d->y, pen_quad, w, w0, &conv0);
  out.theta = scatter(w);
  out.theta0 = w0;
  out.bound = conv0 ? v0 - bound_slack(v0) : -kInf;
  if (affordable && conv0) {
    out.exact_full = true;
    out.exact_value = v0;
    return out;
  }
  if (out.bound >= threshold) return out;  // anchor already fathoms the node
  Eigen::VectorXd w_full = w;  // warm-start source for the dual sweep
  double w0_full = w0;

  // Restricted fit (free coordinates pinned to zero) gives the exact dual
  // value at the multiplier where every free coordinate turns off.
  std::vector<int> free_pos;
  std::vector<PenSpec> pen_restricted = pen_quad;
  for (std::size_t j = 0; j < active.size(); ++j)
    if (role[static_cast<std::size_t>(active[j])] == 2) free_pos.push_back(static_cast<int>(j));

  Eigen::MatrixXd Xi(ctx.d->rows(), static_cast<Eigen::Index>(node.fixed_in.size()));
  {
    Eigen::Index c = 0;
    for (int n : node.fixed_in) Xi.col(c++) = ctx.d->X.col(n);
  }
  std::vector<PenSpec> pen_in(node.fixed_in.size(), PenSpec::quad(ctx.lambda));
  Eigen::VectorXd wi = Eigen::VectorXd::Zero(static_cast<Eigen::Index>(node.fixed_in.size()));
  double wi0 = 0.0;
  bool conv_r = false;
  double fr_raw = newton_penalized(Xi, ctx.d->y, pen_in, wi, wi0, &conv_r);
  if (!conv_r) return out;  // keep the mu = 0 bound
  double fr = fr_raw - bound_slack(fr_raw);

  // Leaf node: the restricted fit is the exact (and only) completion.
  if (free_pos.empty()) {
    out.bound = std::max(out.bound, fr);
    Eigen::VectorXd full = Eigen::VectorXd::Zero(N);
    for (std::size_t j = 0; j < node.fixed_in.size(); ++j)
      full[node.fixed_in[j]] = wi[static_cast<Eigen::Index>(j)];
    out.theta = full;
    out.theta0 = wi0;
    out.exact_full = true;
    out.exact_value = fr_raw;
    return out;
  }

  // Gradient of the loss at the restricted fit over free coordinates.
  Eigen::VectorXd margins = ctx.d->y.array() * (Xi * wi).array() + ctx.d->y.array() * wi0;
  Eigen::VectorXd gm(margins.size());
  for (Eigen::Index m = 0; m < margins.size(); ++m)
    gm[m] = -sigmoid(-margins[m]) * ctx.d->y[m];
  double mu_up = 0.0;
  for (int j : free_pos) {
    double gf = Xa.col(j).dot(gm);
    int n = active[static_cast<std::size_t>(j)];
    mu_up = std::max(mu_up, gf * gf / (2.0 * ctx.lambda * ctx.costs[n]));
  }
  if (mu_up <= 0.0) {
    out.bound = std::max(out.bound, fr);
    return out;
  }
  if (fr - mu_up * b_rem > out.bound) {
    out.bound = fr - mu_up * b_rem;
    out.best_mu = mu_up;
  }
  if (out.bound >= threshold) return out;

  // Evaluates the dual at mu; also returns a supergradient so the outer
  // bisection can steer.  The slope only guides the search, the bound is
  // valid at any mu >= 0.
  auto eval_mu = [&](double mu) -> std::pair<double, double> {
    ++detail::g_stats.mu_evals;
    std::vector<PenSpec> pen = pen_quad;
    for (int j : free_pos) {
      int n = active[static_cast<std::size_t>(j)];
      pen[static_cast<std::size_t>(j)] =
          PenSpec::reverse_huber(ctx.lambda, mu, ctx.costs[n]);
    }
    bool conv = false;
    double v = newton_penalized(Xa, ctx.d->y, pen, w, w0, &conv);
    if (!conv) return {-kInf, 0.0};
    double slope = -b_rem;
    for (int j : free_pos) {
      int n = active[static_cast<std::size_t>(j)];
      double c = ctx.costs[n];
      double t = std::abs(w[static_cast<Eigen::Index>(j)]);
      double s = std::sqrt(2.0 * mu * c / ctx.lambda);
      if (t > s)
        slope += c;
      else if (mu > 0.0)
        slope += std::sqrt(ctx.lambda * c / (2.0 * mu)) * t;
    }
    return {v - bound_slack(v) - mu * b_rem, slope};
  };

  // Slope-guided bisection on the concave dual; every evaluated multiplier
  // yields a valid bound.  The parent's maximizing multiplier seeds the
  // search, so a fathomable node often exits after a single solve.
  w = w_full;
  w0 = w0_full;
  // The reported theta stays at the mu = 0 fit: branching and rounding
  // work better from the dense relaxation than from a near-thresholded one.
  auto improve = [&](double f, double mu) {
    if (f > out.bound) {
      out.bound = f;
      out.best_mu = mu;
    }
    return out.bound >= threshold;
  };
  double lo = 0.0, hi = mu_up;
  double mu = (parent_mu > 0.0 && parent_mu < mu_up) ? parent_mu : 0.5 * mu_up;
  for (int it = 0; it < 8; ++it) {
    auto [f, slope] = eval_mu(mu);
    if (f == -kInf) break;
    if (improve(f, mu)) return out;
    if (slope > 0.0)
      lo = mu;
    else
      hi = mu;
    mu = 0.5 * (lo + hi);
  }
  return out;
}

struct Candidate {
  std::vector<int> support;
  double objective = kInf;
  ModelParams params;
};

/// Greedy rounding of a relaxation solution into a budget-feasible support,
/// followed by a fixed-support refit.
Candidate round_and_refit(const Ctx& ctx, const Node& node, const Eigen::VectorXd& theta) {
  std::vector<int> free_idx;
  std::vector<int> role(static_cast<std::size_t>(ctx.d->cols()), 2);
  for (int n : node.fixed_out) role[static_cast<std::size_t>(n)] = 0;
  for (int n : node.fixed_in) role[static_cast<std::size_t>(n)] = 1;
  for (int n = 0; n < ctx.d->cols(); ++n)
    if (role[static_cast<std::size_t>(n)] == 2) free_idx.push_back(n);

  std::stable_sort(free_idx.begin(), free_idx.end(), [&](int a, int b) {
    double ra = std::abs(theta[a]) / ctx.costs[a];
    double rb = std::abs(theta[b]) / ctx.costs[b];
    if (ra != rb) return ra > rb;
    return a < b;
  });

  std::vector<int> selected = node.fixed_in;
  for (int n : free_idx)
    if (cost_fits(ctx, selected, n)) selected.push_back(n);
  std::sort(selected.begin(), selected.end());

  Candidate c;
  FitOutcome fit = fit_support(*ctx.d, selected, ctx.lambda, ctx.cfg);
  c.support = selected;
  c.objective = fit.obj.total;
  c.params = fit.params;
  return c;
}

struct QueueEntry {
  double lb;
  long seq;
  std::size_t idx;  // index into node store
  bool operator>(const QueueEntry& o) const {
    if (lb != o.lb) return lb > o.lb;
    return seq > o.seq;
  }
};

struct StoredNode {
  Node node;
  Eigen::VectorXd theta;
  double theta0 = 0.0;
  double best_mu = 0.0;
};

}  // namespace

const char* to_string(SolveStatus s) { return status_names[static_cast<int>(s)]; }

double node_lower_bound(const Dataset& d, const Node& node,
                        const SelectionConstraint& constraint, double lambda,
                        const FitConfig& cfg) {
  Ctx ctx = make_ctx(d, constraint, lambda, cfg);
  if (!cost_fits(ctx, node.fixed_in)) throw std::invalid_argument("node infeasible");
  return relax_node(ctx, node).bound;
}

std::pair<std::vector<int>, Objective> incumbent_heuristic(const Dataset& d, const Node& node,
                                                           const SelectionConstraint& constraint,
                                                           double lambda, const FitConfig& cfg) {
  Ctx ctx = make_ctx(d, constraint, lambda, cfg);
  if (!cost_fits(ctx, node.fixed_in)) throw std::invalid_argument("node infeasible");
  RelaxOut rel = relax_node(ctx, node);
  Candidate c = round_and_refit(ctx, node, rel.theta);
  Objective o;
  o.total = c.objective;
  o.reg = 0.5 * lambda * c.params.theta.squaredNorm();
  o.loss_sum = o.total - o.reg;
  return {c.support, o};
}

int branch_select(const Node& node, const Eigen::VectorXd& relaxation_theta) {
  std::vector<bool> fixed(static_cast<std::size_t>(relaxation_theta.size()), false);
  for (int n : node.fixed_in) fixed[static_cast<std::size_t>(n)] = true;
  for (int n : node.fixed_out) fixed[static_cast<std::size_t>(n)] = true;
  int best = -1;
  double best_contrib = -1.0;
  for (int n = 0; n < relaxation_theta.size(); ++n) {
    if (fixed[static_cast<std::size_t>(n)]) continue;
    double contrib = 0.5 * relaxation_theta[n] * relaxation_theta[n];
    if (contrib > best_contrib) {
      best_contrib = contrib;
      best = n;
    }
  }
  if (best < 0) throw std::invalid_argument("no free coordinate to branch on");
  return best;
}

SolveResult solve(const Dataset& d, const SelectionConstraint& constraint, double lambda,
                  const FitConfig& cfg, std::ostream* trace) {
  d.validate();
  cfg.validate();
  if (lambda <= 0.0)
    throw std::invalid_argument("exact solver requires lambda > 0");

  SolveResult res;
  if (constraint.limit < 0) {
    res.status = SolveStatus::Infeasible;
    res.params.theta = Eigen::VectorXd::Zero(d.cols());
    return res;
  }
  Ctx ctx = make_ctx(d, constraint, lambda, cfg);

  // Initial incumbent: intercept-only model, always feasible for b >= 0.
  FitOutcome empty_fit = fit_support(d, {}, lambda, cfg);
  Candidate incumbent;
  incumbent.support = {};
  incumbent.objective = empty_fit.obj.total;
  incumbent.params = empty_fit.params;

  long nodes_explored = 0;
  double fathom_min = kInf;  // min bound over fathomed subtrees
  std::vector<StoredNode> store;
  std::priority_queue<QueueEntry, std::vector<QueueEntry>, std::greater<QueueEntry>> queue;
  long seq = 0;

  auto stop_eps = [&]() {
    return std::max(cfg.abs_gap_tol,
                    cfg.rel_gap_tol * std::max(1.0, std::abs(incumbent.objective)));
  };

  auto offer_incumbent = [&](const Candidate& c) {
    if (c.objective < incumbent.objective - 1e-12) incumbent = c;
  };

  // Bound a node, update the incumbent, and either enqueue or fathom it.
  auto process = [&](Node&& node, double parent_lb, const Eigen::VectorXd* warm, double warm0,
                     double parent_mu) {
    ++nodes_explored;
    double threshold = incumbent.objective - stop_eps();
    RelaxOut rel = relax_node(ctx, node, threshold, warm, warm0, parent_mu);
    double lb = std::max(rel.bound, parent_lb);
    if (rel.exact_full) {
      Candidate c;
      for (int n = 0; n < d.cols(); ++n)
        if (rel.theta[n] != 0.0) c.support.push_back(n);
      c.objective = rel.exact_value;
      c.params.theta = rel.theta;
      c.params.theta0 = rel.theta0;
      offer_incumbent(c);
      fathom_min = std::min(fathom_min, lb);
      return;
    }
    if (lb >= threshold) {
      // Fathomed by bound; the rounding heuristic cannot pay off here.
      fathom_min = std::min(fathom_min, lb);
      return;
    }
    Candidate cand = round_and_refit(ctx, node, rel.theta);
    offer_incumbent(cand);
    bool leaf = node.fixed_in.size() + node.fixed_out.size() ==
                static_cast<std::size_t>(d.cols());
    if (leaf) {
      // No branching left; the refit on fixed_in is the exact completion.
      fathom_min = std::min(
          fathom_min, std::max(lb, cand.objective - bound_slack(cand.objective)));
      return;
    }
    if (lb >= incumbent.objective - stop_eps()) {
      fathom_min = std::min(fathom_min, lb);
      return;
    }
    node.lower_bound = lb;
    store.push_back({std::move(node), rel.theta, rel.theta0, rel.best_mu});
    queue.push({lb, seq++, store.size() - 1});
  };

  process(Node{}, -kInf, nullptr, 0.0, 0.0);

  double global_lb = -kInf;
  res.status = SolveStatus::Optimal;
  while (!queue.empty()) {
    if (cfg.max_nodes >= 0 && nodes_explored >= cfg.max_nodes) {
      res.status = SolveStatus::NodeLimit;
      global_lb = std::min(queue.top().lb, fathom_min);
      break;
    }
    QueueEntry top = queue.top();
    queue.pop();
    const StoredNode& sn = store[top.idx];
    global_lb = std::max(global_lb, top.lb);

    if (top.lb >= incumbent.objective - stop_eps()) {
      // Every remaining open node is dominated.
      fathom_min = std::min(fathom_min, top.lb);
      res.status = SolveStatus::GapReached;
      break;
    }

    if (trace) {
      double gap = (incumbent.objective - top.lb) /
                   std::max(1.0, std::abs(incumbent.objective));
      *trace << "{\"depth\":" << sn.node.depth << ",\"bound\":" << top.lb
             << ",\"incumbent\":" << incumbent.objective << ",\"gap\":" << gap << "}\n";
    }

    int n_star = branch_select(sn.node, sn.theta);
    Eigen::VectorXd parent_theta = sn.theta;
    double parent_theta0 = sn.theta0;
    double parent_mu = sn.best_mu;
    Node child_in = sn.node;
    Node child_out = sn.node;
    child_in.fixed_in.push_back(n_star);
    std::sort(child_in.fixed_in.begin(), child_in.fixed_in.end());
    child_in.depth = sn.node.depth + 1;
    child_out.fixed_out.push_back(n_star);
    std::sort(child_out.fixed_out.begin(), child_out.fixed_out.end());
    child_out.depth = sn.node.depth + 1;

    double parent_lb = top.lb;
    if (cost_fits(ctx, child_in.fixed_in))
      process(std::move(child_in), parent_lb, &parent_theta, parent_theta0, parent_mu);
    process(std::move(child_out), parent_lb, &parent_theta, parent_theta0, parent_mu);
  }

  if (queue.empty() && res.status == SolveStatus::Optimal) {
    global_lb = std::min(fathom_min, incumbent.objective);
  } else if (res.status == SolveStatus::GapReached) {
    global_lb = std::min(global_lb, fathom_min);
  }

  res.params = incumbent.params;
  res.support = incumbent.support;
  res.objective = incumbent.objective;
  res.lower_bound = std::min(global_lb, incumbent.objective);
  res.rel_gap = std::max(0.0, res.objective - res.lower_bound) /
                std::max(1.0, std::abs(res.objective));
  res.nodes_explored = nodes_explored;
  return res;
}

}  // namespace bnb
}  // namespace subsetx
