#include "cb/problem.hpp"

#include <atomic>
#include <cmath>
#include <limits>

#include "cb/channel.hpp"
#include "cb/energy.hpp"

namespace cb {
namespace {

std::atomic<std::uint64_t> g_eval_count{0};
std::atomic<std::uint64_t> g_dom_count{0};

// Per-dimension bounds in segment order (relay X,Y,Z,I then jammer X,Y,Z,I).
void fill_bounds(const ScenarioConfig& c, Eigen::VectorXd& lb, Eigen::VectorXd& ub) {
  const SolutionLayout lay{c.n_ur, c.n_uj};
  lb.resize(lay.dim());
  ub.resize(lay.dim());
  const auto seg = [&](int start, int n, double lo, double hi) {
    lb.segment(start, n).setConstant(lo);
    ub.segment(start, n).setConstant(hi);
  };
  const Box& rb = c.geometry.relay_box;
  const Box& jb = c.geometry.jammer_box;
  seg(lay.relay_x(), c.n_ur, rb.lo[0], rb.hi[0]);
  seg(lay.relay_y(), c.n_ur, rb.lo[1], rb.hi[1]);
  seg(lay.relay_z(), c.n_ur, rb.lo[2], rb.hi[2]);
  seg(lay.relay_i(), c.n_ur, 0.0, 1.0);
  seg(lay.jammer_x(), c.n_uj, jb.lo[0], jb.hi[0]);
  seg(lay.jammer_y(), c.n_uj, jb.lo[1], jb.hi[1]);
  seg(lay.jammer_z(), c.n_uj, jb.lo[2], jb.hi[2]);
  seg(lay.jammer_i(), c.n_uj, 0.0, 1.0);
}

std::vector<double> pair_deficits(const std::vector<Vec3>& pts, double d_min) {
  std::vector<double> out;
  out.reserve(pts.size() * (pts.size() - 1) / 2);
  for (std::size_t i = 0; i + 1 < pts.size(); ++i)
    for (std::size_t j = i + 1; j < pts.size(); ++j)
      out.push_back(std::max(0.0, d_min - (pts[i] - pts[j]).norm()));
  return out;
}

// Minimum-cost perfect matching via shortest augmenting paths with potentials
// (O(n^3), handles negative costs). Returns match[row] = column.
std::vector<int> min_cost_assignment(const Eigen::MatrixXd& cost) {
  const int n = static_cast<int>(cost.rows());
  constexpr double kInf = std::numeric_limits<double>::infinity();
  std::vector<double> u(n + 1, 0.0), v(n + 1, 0.0);
  std::vector<int> p(n + 1, 0), way(n + 1, 0);  // p[col] = matched row, 1-based
  for (int i = 1; i <= n; ++i) {
    p[0] = i;
    int j0 = 0;
    std::vector<double> minv(n + 1, kInf);
    std::vector<char> used(n + 1, 0);
    do {
      used[j0] = 1;
      const int i0 = p[j0];
      double delta = kInf;
      int j1 = 0;
      for (int j = 1; j <= n; ++j) {
        if (used[j]) continue;
        const double cur = cost(i0 - 1, j - 1) - u[i0] - v[j];
        if (cur < minv[j]) {
          minv[j] = cur;
          way[j] = j0;
        }
        if (minv[j] < delta) {
          delta = minv[j];
          j1 = j;
        }
      }
      for (int j = 0; j <= n; ++j) {
        if (used[j]) {
          u[p[j]] += delta;
          v[j] -= delta;
        } else {
          minv[j] -= delta;
        }
      }
      j0 = j1;
    } while (p[j0] != 0);
    do {
      const int j1 = way[j0];
      p[j0] = p[j1];
      j0 = j1;
    } while (j0 != 0);
  }
  std::vector<int> match(n, 0);
  for (int j = 1; j <= n; ++j)
    if (p[j] > 0) match[p[j] - 1] = j - 1;
  return match;
}

}  // namespace

bool dominates(const ObjectiveVector& a, const ObjectiveVector& b) {
  g_dom_count.fetch_add(1, std::memory_order_relaxed);
  const bool fa = a.feasible(), fb = b.feasible();
  if (fa != fb) return fa;
  if (!fa) return a.violation_m < b.violation_m;
  // Minimization on (-f1, f2, f3).
  const double am[3] = {-a.f1_db, a.f2_db, a.f3_j};
  const double bm[3] = {-b.f1_db, b.f2_db, b.f3_j};
  bool strict = false;
  for (int k = 0; k < 3; ++k) {
    if (am[k] > bm[k]) return false;
    if (am[k] < bm[k]) strict = true;
  }
  return strict;
}

ProblemContext make_context(const ScenarioConfig& config, const HoverPoints& hover) {
  ProblemContext ctx;
  ctx.config = config;
  ctx.hover = hover;
  ctx.layout = SolutionLayout{config.n_ur, config.n_uj};
  fill_bounds(config, ctx.lb, ctx.ub);
  ctx.n_theta = config.opt.n_theta_opt;
  ctx.n_phi = config.opt.n_phi_opt;
  ctx.grid_levels = config.opt.grid_levels;
  return ctx;
}

Eigen::VectorXd pack_solution(const SolutionLayout& lay, const std::vector<Vec3>& relay_pos,
                              const Eigen::VectorXd& relay_i, const std::vector<Vec3>& jammer_pos,
                              const Eigen::VectorXd& jammer_i) {
  Eigen::VectorXd sol(lay.dim());
  for (int m = 0; m < lay.n_ur; ++m) {
    sol[lay.relay_x() + m] = relay_pos[m].x();
    sol[lay.relay_y() + m] = relay_pos[m].y();
    sol[lay.relay_z() + m] = relay_pos[m].z();
    sol[lay.relay_i() + m] = relay_i[m];
  }
  for (int n = 0; n < lay.n_uj; ++n) {
    sol[lay.jammer_x() + n] = jammer_pos[n].x();
    sol[lay.jammer_y() + n] = jammer_pos[n].y();
    sol[lay.jammer_z() + n] = jammer_pos[n].z();
    sol[lay.jammer_i() + n] = jammer_i[n];
  }
  return sol;
}

std::vector<Vec3> relay_positions(const Eigen::VectorXd& sol, const SolutionLayout& lay) {
  std::vector<Vec3> pts(lay.n_ur);
  for (int m = 0; m < lay.n_ur; ++m)
    pts[m] = Vec3(sol[lay.relay_x() + m], sol[lay.relay_y() + m], sol[lay.relay_z() + m]);
  return pts;
}

std::vector<Vec3> jammer_positions(const Eigen::VectorXd& sol, const SolutionLayout& lay) {
  std::vector<Vec3> pts(lay.n_uj);
  for (int n = 0; n < lay.n_uj; ++n)
    pts[n] = Vec3(sol[lay.jammer_x() + n], sol[lay.jammer_y() + n], sol[lay.jammer_z() + n]);
  return pts;
}

double ConstraintReport::total_violation() const {
  double v = 0.0;
  for (double d : relay_pair_deficit) v += d;
  for (double d : jammer_pair_deficit) v += d;
  return v;
}

bool ConstraintReport::feasible() const {
  return total_violation() == 0.0 && (box_clip.array() == 0.0).all();
}

ConstraintReport constraint_report(const Eigen::VectorXd& sol, const ProblemContext& ctx) {
  ConstraintReport r;
  const double d_min = ctx.config.rf.d_min;
  r.relay_pair_deficit = pair_deficits(relay_positions(sol, ctx.layout), d_min);
  r.jammer_pair_deficit = pair_deficits(jammer_positions(sol, ctx.layout), d_min);
  r.box_clip = (sol - sol.cwiseMax(ctx.lb).cwiseMin(ctx.ub)).cwiseAbs();
  return r;
}

Eigen::VectorXd repair(Eigen::VectorXd sol, const ProblemContext& ctx) {
  sol = sol.cwiseMax(ctx.lb).cwiseMin(ctx.ub);
  if (ctx.grid_levels > 1) {
    const double levels = ctx.grid_levels - 1;
    for (Eigen::Index d = 0; d < sol.size(); ++d) {
      const double step = (ctx.ub[d] - ctx.lb[d]) / levels;
      const double idx = std::round((sol[d] - ctx.lb[d]) / step);
      sol[d] = ctx.lb[d] + idx * step;
    }
  }
  return sol;
}

Eigen::VectorXd min_transit_assignment(Eigen::VectorXd sol, const ProblemContext& ctx) {
  const auto& lay = ctx.layout;
  const auto reorder = [&](int x0, int y0, int z0, int i0, int n, const std::vector<Vec3>& hover) {
    if (n < 2) return;
    Eigen::MatrixXd cost(n, n);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        cost(i, j) = flight_energy(
            FlightLeg{hover[i], Vec3(sol[x0 + j], sol[y0 + j], sol[z0 + j]),
                      ctx.config.energy.v_f},
            ctx.config.energy);
    const std::vector<int> match = min_cost_assignment(cost);
    const Eigen::VectorXd old = sol;
    for (int i = 0; i < n; ++i) {
      const int j = match[i];
      sol[x0 + i] = old[x0 + j];
      sol[y0 + i] = old[y0 + j];
      sol[z0 + i] = old[z0 + j];
      sol[i0 + i] = old[i0 + j];
    }
  };
  reorder(lay.relay_x(), lay.relay_y(), lay.relay_z(), lay.relay_i(), lay.n_ur,
          ctx.hover.relay);
  reorder(lay.jammer_x(), lay.jammer_y(), lay.jammer_z(), lay.jammer_i(), lay.n_uj,
          ctx.hover.jammer);
  return sol;
}

ObjectiveVector evaluate(const Eigen::VectorXd& sol, const ProblemContext& ctx) {
  g_eval_count.fetch_add(1, std::memory_order_relaxed);
  const auto& cfg = ctx.config;
  const double wl = cfg.rf.wavelength();
  const auto r_pos = relay_positions(sol, ctx.layout);
  const auto j_pos = jammer_positions(sol, ctx.layout);
  const ArraySpec relay =
      make_array_spec(r_pos, sol.segment(ctx.layout.relay_i(), cfg.n_ur), wl);
  const ArraySpec jammer =
      make_array_spec(j_pos, sol.segment(ctx.layout.jammer_i(), cfg.n_uj), wl);

  const double d_r = array_power_integral(relay, ctx.n_theta, ctx.n_phi);
  const double d_j = (jammer.currents.array() == 0.0).all()
                         ? 0.0
                         : array_power_integral(jammer, ctx.n_theta, ctx.n_phi);
  ObjectiveVector f;
  f.f1_db = sinr_db(relay, jammer, cfg.geometry.bob_pos, cfg.rf, cfg.n_ur, cfg.n_uj, d_r, d_j);
  f.f2_db =
      sinr_db(relay, jammer, cfg.geometry.willie_pos, cfg.rf, cfg.n_ur, cfg.n_uj, d_r, d_j);

  std::vector<FlightLeg> r_legs(cfg.n_ur), j_legs(cfg.n_uj);
  for (int m = 0; m < cfg.n_ur; ++m)
    r_legs[m] = FlightLeg{ctx.hover.relay[m], r_pos[m], cfg.energy.v_f};
  for (int n = 0; n < cfg.n_uj; ++n)
    j_legs[n] = FlightLeg{ctx.hover.jammer[n], j_pos[n], cfg.energy.v_f};
  f.f3_j = fleet_energy(r_legs, j_legs, cfg.energy);

  const double d_min = cfg.rf.d_min;
  double viol = 0.0;
  for (double d : pair_deficits(r_pos, d_min)) viol += d;
  for (double d : pair_deficits(j_pos, d_min)) viol += d;
  f.violation_m = viol;
  return f;
}

std::uint64_t evaluation_count() { return g_eval_count.load(std::memory_order_relaxed); }
std::uint64_t dominance_comparisons() { return g_dom_count.load(std::memory_order_relaxed); }

}  // namespace cb
