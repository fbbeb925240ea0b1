#include "cb/optimizer.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <numbers>
#include <numeric>
#include <thread>

#include "cb/channel.hpp"

namespace cb {
namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

double u01(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(0.0, 1.0)(rng);
}

double u11(std::mt19937_64& rng) {
  return std::uniform_real_distribution<double>(-1.0, 1.0)(rng);
}

// Zero-power candidates become a sentinel dominated by every real candidate.
const ObjectiveVector kSentinel{0.0, 0.0, 0.0, 1e300};

// One WOA equation applied to sol[start, start+n): shrink (p < 0.5) or spiral branch.
// eq25_shrink replaces the own-position term inside |.| by the base, as printed for the
// jammer current update.
void woa_segment(Eigen::VectorXd& sol, int start, int n, const std::vector<double>& base,
                 double a, double b, std::mt19937_64& rng, bool eq25_shrink) {
  const double p = u01(rng);
  if (p < 0.5) {
    const double r = u01(rng);
    const double l = woa_l(a, r);
    const double r2 = u01(rng);
    for (int u = 0; u < n; ++u) {
      const double x = sol[start + u], bs = base[u];
      sol[start + u] =
          eq25_shrink ? x + bs - l * std::abs(2.0 * r2 * bs - bs) : woa_shrink(x, bs, l, r2);
    }
  } else {
    const double lp = u11(rng);
    const double h = woa_spiral_h(b, lp);
    for (int u = 0; u < n; ++u) sol[start + u] = woa_spiral(sol[start + u], base[u], h);
  }
}

}  // namespace

double tent_next(double z, double a) { return z <= a ? z / a : (1.0 - z) / (1.0 - a); }

double zeta(int t, int t_max) {
  const double frac = static_cast<double>(t) / t_max;
  return t < t_max / 2.0 ? 0.5 - frac : frac - 0.5;
}

double moa(int t, int t_max, double min_v, double max_v) {
  return min_v + t * ((max_v - min_v) / t_max);
}

double mop(int t, int t_max, double alpha) {
  return 1.0 - std::pow(static_cast<double>(t) / t_max, 1.0 / alpha);
}

std::vector<Eigen::VectorXd> chaotic_init(const ProblemContext& ctx, int n_pop,
                                          std::mt19937_64& rng) {
  const int dim = ctx.layout.dim();
  const double a = ctx.config.opt.tent_a;
  Eigen::VectorXd z(dim);
  for (int d = 0; d < dim; ++d) z[d] = u01(rng);
  std::vector<Eigen::VectorXd> pop(n_pop, Eigen::VectorXd(dim));
  for (int i = 0; i < n_pop; ++i)
    for (int d = 0; d < dim; ++d) {
      z[d] = tent_next(z[d], a);
      if (z[d] == 0.0 || z[d] == 1.0) z[d] = u01(rng);  // reseed degenerate iterates
      pop[i][d] = ctx.lb[d] + z[d] * (ctx.ub[d] - ctx.lb[d]);
    }
  return pop;
}

std::vector<Eigen::VectorXd> uniform_init(const ProblemContext& ctx, int n_pop,
                                          std::mt19937_64& rng) {
  const int dim = ctx.layout.dim();
  std::vector<Eigen::VectorXd> pop(n_pop, Eigen::VectorXd(dim));
  for (int i = 0; i < n_pop; ++i)
    for (int d = 0; d < dim; ++d) pop[i][d] = ctx.lb[d] + u01(rng) * (ctx.ub[d] - ctx.lb[d]);
  return pop;
}

std::vector<double> crowding_distances(const std::vector<ObjectiveVector>& objs) {
  const std::size_t n = objs.size();
  std::vector<double> dist(n, 0.0);
  if (n == 0) return dist;
  if (n <= 2) {
    std::fill(dist.begin(), dist.end(), kInf);
    return dist;
  }
  const auto key = [&](std::size_t i, int k) {
    return k == 0 ? objs[i].f1_db : (k == 1 ? objs[i].f2_db : objs[i].f3_j);
  };
  std::vector<std::size_t> idx(n);
  for (int k = 0; k < 3; ++k) {
    std::iota(idx.begin(), idx.end(), 0);
    std::stable_sort(idx.begin(), idx.end(), [&](std::size_t a, std::size_t b) {
      return key(a, k) < key(b, k);
    });
    dist[idx.front()] = kInf;
    dist[idx.back()] = kInf;
    const double range = key(idx.back(), k) - key(idx.front(), k);
    if (range <= 0.0) continue;
    for (std::size_t r = 1; r + 1 < n; ++r)
      if (dist[idx[r]] != kInf)
        dist[idx[r]] += (key(idx[r + 1], k) - key(idx[r - 1], k)) / range;
  }
  return dist;
}

void ParetoArchive::update(const std::vector<ArchiveEntry>& candidates) {
  for (const auto& cand : candidates) {
    bool skip = false;
    for (const auto& e : entries_)
      if (e.f == cand.f) {  // duplicate objectives add no front information
        skip = true;
        break;
      }
    if (skip) continue;
    for (const auto& e : entries_)
      if (dominates(e.f, cand.f)) {
        skip = true;
        break;
      }
    if (skip) continue;
    std::erase_if(entries_, [&](const ArchiveEntry& e) { return dominates(cand.f, e.f); });
    entries_.push_back(cand);
    while (entries_.size() > capacity_) {
      std::vector<ObjectiveVector> objs(entries_.size());
      for (std::size_t i = 0; i < entries_.size(); ++i) objs[i] = entries_[i].f;
      const auto cd = crowding_distances(objs);
      std::size_t worst = 0;
      for (std::size_t i = 1; i < cd.size(); ++i)
        if (cd[i] <= cd[worst]) worst = i;  // ties drop the newest
      entries_.erase(entries_.begin() + static_cast<std::ptrdiff_t>(worst));
    }
  }
}

std::vector<double> ParetoArchive::crowding() const {
  std::vector<ObjectiveVector> objs(entries_.size());
  for (std::size_t i = 0; i < entries_.size(); ++i) objs[i] = entries_[i].f;
  return crowding_distances(objs);
}

std::size_t roulette_pick(const std::vector<double>& weights, double u01v) {
  double total = 0.0;
  for (double w : weights) total += w;
  if (!(total > 0.0)) return std::min<std::size_t>(
      static_cast<std::size_t>(u01v * static_cast<double>(weights.size())), weights.size() - 1);
  const double target = u01v * total;
  double cum = 0.0;
  for (std::size_t i = 0; i < weights.size(); ++i) {
    cum += weights[i];
    if (cum > target) return i;
  }
  return weights.size() - 1;
}

namespace {

// Crowding-derived roulette weights; boundary entries get twice the largest finite
// distance. The archive is immutable between updates, so callers that draw many
// elites per iteration compute this once and reuse it — the picks are identical.
std::vector<double> elite_weights(const ParetoArchive& archive) {
  auto cd = archive.crowding();
  double finite_max = 0.0;
  for (double c : cd)
    if (std::isfinite(c)) finite_max = std::max(finite_max, c);
  const double clamp_v = finite_max > 0.0 ? 2.0 * finite_max : 1.0;
  for (double& c : cd)
    if (!std::isfinite(c)) c = clamp_v;
  return cd;
}

}  // namespace

const ArchiveEntry& roulette_elite(const ParetoArchive& archive, std::mt19937_64& rng) {
  if (archive.size() == 0) throw std::invalid_argument("roulette_elite: empty archive");
  return archive.entries()[roulette_pick(elite_weights(archive), u01(rng))];
}

namespace {

std::string solution_key(const Eigen::VectorXd& x) {
  return std::string(reinterpret_cast<const char*>(x.data()), x.size() * sizeof(double));
}

}  // namespace

std::vector<ObjectiveVector> evaluate_batch(const std::vector<Eigen::VectorXd>& xs,
                                            const ProblemContext& ctx, int threads,
                                            EvalCache* cache) {
  std::vector<ObjectiveVector> out(xs.size());

  // Indices still needing a real evaluation: without a cache, all of them; with one,
  // the first occurrence of each uncached key. Hits and same-batch twins are replays
  // of a pure function, so copying is bit-identical to re-evaluating.
  std::vector<std::size_t> todo;
  std::vector<std::pair<std::size_t, std::size_t>> twins;  // (copy destination, source)
  if (cache == nullptr) {
    todo.resize(xs.size());
    for (std::size_t i = 0; i < xs.size(); ++i) todo[i] = i;
  } else {
    std::unordered_map<std::string, std::size_t> first;
    for (std::size_t i = 0; i < xs.size(); ++i) {
      std::string key = solution_key(xs[i]);
      if (const auto hit = cache->find(key); hit != cache->end()) {
        out[i] = hit->second;
      } else if (const auto [it, fresh] = first.emplace(std::move(key), i); fresh) {
        todo.push_back(i);
      } else {
        twins.emplace_back(i, it->second);
      }
    }
  }

  const auto work = [&](std::size_t k) {
    const std::size_t i = todo[k];
    try {
      out[i] = evaluate(xs[i], ctx);
    } catch (const zero_power_error&) {
      out[i] = kSentinel;
    }
  };
  if (threads <= 1 || todo.size() < 2) {
    for (std::size_t k = 0; k < todo.size(); ++k) work(k);
  } else {
    const int nt = std::min<int>(threads, static_cast<int>(todo.size()));
    std::vector<std::thread> pool;
    pool.reserve(nt);
    for (int t = 0; t < nt; ++t)
      pool.emplace_back([&, t] {
        for (std::size_t k = static_cast<std::size_t>(t); k < todo.size(); k += nt) work(k);
      });
    for (auto& th : pool) th.join();
  }

  if (cache != nullptr) {
    for (const std::size_t i : todo) cache->emplace(solution_key(xs[i]), out[i]);
    for (const auto& [dst, src] : twins) out[dst] = out[src];
  }
  return out;
}

void mayfly_step(std::vector<Mayfly>& pop, const ParetoArchive& archive,
                 const ProblemContext& ctx, std::mt19937_64& rng, EvalCache* cache) {
  if (archive.size() == 0) throw std::invalid_argument("mayfly_step: empty archive");
  const auto& op = ctx.config.opt;
  const int n = static_cast<int>(pop.size());
  const int half = n / 2;
  const Eigen::VectorXd range = ctx.ub - ctx.lb;
  const int dim = ctx.layout.dim();

  std::vector<Eigen::VectorXd> pre(n);
  for (int i = 0; i < n; ++i) pre[i] = pop[i].x;

  // Lowest-index male not dominated by any other male performs the nuptial dance.
  int best = 0;
  for (int m = 0; m < half; ++m) {
    bool dominated = false;
    for (int o = 0; o < half && !dominated; ++o)
      if (o != m && dominates(pop[o].f, pop[m].f)) dominated = true;
    if (!dominated) {
      best = m;
      break;
    }
  }

  const std::vector<double> ew = elite_weights(archive);
  for (int m = 0; m < half; ++m) {
    Mayfly& mf = pop[m];
    if (m == best) {
      for (int d = 0; d < dim; ++d)
        mf.v[d] = op.g_inertia * mf.v[d] + op.dance_d * range[d] * u11(rng);
    } else {
      const ArchiveEntry& gbest = archive.entries()[roulette_pick(ew, u01(rng))];
      const double rp2 = (pre[m] - mf.pbest_x).squaredNorm();
      const double rg2 = (pre[m] - gbest.x).squaredNorm();
      mf.v = op.g_inertia * mf.v + op.a1 * std::exp(-op.beta * rp2) * (mf.pbest_x - pre[m]) +
             op.a2 * std::exp(-op.beta * rg2) * (gbest.x - pre[m]);
    }
    mf.x = pre[m] + mf.v;
  }

  for (int fI = half; fI < n; ++fI) {
    Mayfly& fe = pop[fI];
    const int pm = fI - half;
    if (dominates(pop[pm].f, fe.f)) {
      const double rmf2 = (pre[fI] - pre[pm]).squaredNorm();
      fe.v = op.g_inertia * fe.v + op.a3 * std::exp(-op.beta * rmf2) * (pre[pm] - pre[fI]);
    } else {
      for (int d = 0; d < dim; ++d)
        fe.v[d] = op.g_inertia * fe.v[d] + op.walk_fl * range[d] * u11(rng);
    }
    fe.x = pre[fI] + fe.v;
  }

  for (int i = 0; i < n; ++i) pop[i].x = repair(std::move(pop[i].x), ctx);

  // Per-dimension uniform crossover; offspring1 challenges the male parent, offspring2
  // the female.
  std::vector<Eigen::VectorXd> off(2 * half, Eigen::VectorXd(dim));
  for (int p = 0; p < half; ++p) {
    const Eigen::VectorXd& xm = pop[p].x;
    const Eigen::VectorXd& xf = pop[half + p].x;
    for (int d = 0; d < dim; ++d) {
      const double L = u01(rng);
      off[2 * p][d] = L * xm[d] + (1.0 - L) * xf[d];
      off[2 * p + 1][d] = (1.0 - L) * xm[d] + L * xf[d];
    }
    off[2 * p] = repair(std::move(off[2 * p]), ctx);
    off[2 * p + 1] = repair(std::move(off[2 * p + 1]), ctx);
  }
  const auto off_f = evaluate_batch(off, ctx, op.eval_threads, cache);
  for (int p = 0; p < half; ++p) {
    const int targets[2] = {p, half + p};
    for (int s = 0; s < 2; ++s) {
      const auto& of = off_f[2 * p + s];
      Mayfly& parent = pop[targets[s]];
      if (dominates(of, parent.f)) {
        parent.x = off[2 * p + s];
        parent.v.setZero();
        parent.f = of;
        parent.pbest_x = parent.x;
        parent.pbest_f = of;
      }
    }
  }
}

double woa_l(double a, double r) { return 2.0 * a * r - a; }

double woa_spiral_h(double b, double lprime) {
  return std::exp(b * lprime) * std::cos(2.0 * std::numbers::pi * lprime);
}

double woa_shrink(double x, double base, double l, double r2) {
  return x + base - l * std::abs(2.0 * r2 * base - x);
}

double woa_spiral(double x, double base, double h) { return x + std::abs(base - x) * h + base; }

double aoa_div(double base, double mop_v, double scale, double eps) {
  return base / (mop_v * scale + eps);
}

double aoa_mul(double base, double mop_v, double scale) { return base * mop_v * scale; }

double aoa_addsub(double base, double mop_v, double scale, bool add) {
  return add ? base + mop_v * scale : base - mop_v * scale;
}

void woa_update_jammer(Eigen::VectorXd& sol, const Eigen::VectorXd& elite, int t, int t_max,
                       double zeta_val, double r1, const ProblemContext& ctx,
                       std::mt19937_64& rng) {
  const auto& lay = ctx.layout;
  const auto& op = ctx.config.opt;
  const int nj = lay.n_uj;
  const double a = 2.0 * (1.0 - static_cast<double>(t) / t_max);

  std::vector<double> base_z(nj);
  for (int u = 0; u < nj; ++u) base_z[u] = elite[lay.jammer_z() + u];
  woa_segment(sol, lay.jammer_z(), nj, base_z, a, op.woa_b, rng, false);

  if (t < t_max / 2.0) {
    if (r1 < zeta_val) {
      const double cx = sol.segment(lay.jammer_x(), nj).mean();
      const double cy = sol.segment(lay.jammer_y(), nj).mean();
      std::vector<double> base_xy(2 * nj);
      for (int u = 0; u < nj; ++u) {
        base_xy[u] = cx;
        base_xy[nj + u] = cy;
      }
      woa_segment(sol, lay.jammer_x(), 2 * nj, base_xy, a, op.woa_b, rng, false);
    }
  } else if (r1 < zeta_val) {
    sol.segment(lay.jammer_x(), 3 * nj) = elite.segment(lay.jammer_x(), 3 * nj);
    std::vector<double> base_i(nj);
    for (int u = 0; u < nj; ++u) base_i[u] = elite[lay.jammer_i() + u];
    woa_segment(sol, lay.jammer_i(), nj, base_i, a, op.woa_b, rng, true);
  }
}

void aoa_update_relay(Eigen::VectorXd& sol, const Eigen::VectorXd& elite, int t, int t_max,
                      double zeta_val, double moa_val, double r1, double r3, double r4,
                      const ProblemContext& ctx) {
  const auto& lay = ctx.layout;
  const auto& op = ctx.config.opt;
  const int nr = lay.n_ur;
  const double mop_v = mop(t, t_max, op.aoa_alpha);
  const auto seg_scale = [&](int start) {
    return (ctx.ub[start] - ctx.lb[start]) * op.aoa_mu + ctx.lb[start];
  };
  const auto apply = [&](double base, double scale) {
    if (r1 > moa_val)
      return r3 < 0.5 ? aoa_div(base, mop_v, scale, op.aoa_eps) : aoa_mul(base, mop_v, scale);
    return aoa_addsub(base, mop_v, scale, r4 >= 0.5);
  };

  const double scale_z = seg_scale(lay.relay_z());
  for (int u = 0; u < nr; ++u)
    sol[lay.relay_z() + u] = apply(elite[lay.relay_z() + u], scale_z);

  if (t < t_max / 2.0) {
    if (r1 < zeta_val) {
      // Scalar centroid collapses the horizontal coordinates onto one shared value.
      const double cx = sol.segment(lay.relay_x(), nr).mean();
      const double cy = sol.segment(lay.relay_y(), nr).mean();
      sol.segment(lay.relay_x(), nr).setConstant(apply(cx, seg_scale(lay.relay_x())));
      sol.segment(lay.relay_y(), nr).setConstant(apply(cy, seg_scale(lay.relay_y())));
    }
  } else if (r1 < zeta_val) {
    sol.segment(lay.relay_x(), 3 * nr) = elite.segment(lay.relay_x(), 3 * nr);
    const double scale_i = seg_scale(lay.relay_i());
    for (int u = 0; u < nr; ++u)
      sol[lay.relay_i() + u] = apply(elite[lay.relay_i() + u], scale_i);
  }
}

namespace {

RunResult run_loop(const ScenarioConfig& config, const HoverPoints& hover, std::uint64_t seed,
                   bool imoma) {
  ProblemContext ctx = make_context(config, hover);
  const auto& op = config.opt;
  std::mt19937_64 rng(seed);

  auto xs = imoma ? chaotic_init(ctx, op.n_pop, rng) : uniform_init(ctx, op.n_pop, rng);
  const int dim = ctx.layout.dim();
  std::vector<Mayfly> pop(op.n_pop);
  for (int i = 0; i < op.n_pop; ++i) {
    pop[i].x = repair(std::move(xs[i]), ctx);
    pop[i].v = Eigen::VectorXd::Zero(dim);
    pop[i].male = i < op.n_pop / 2;
  }

  ParetoArchive archive(static_cast<std::size_t>(op.archive_cap));
  RunHistory hist;
  hist.seed = seed;
  hist.best_f1.reserve(op.t_max);

  EvalCache memo;
  std::vector<Eigen::VectorXd> positions(op.n_pop);
  bool first = true;
  for (int t = 1; t <= op.t_max; ++t) {
    for (int i = 0; i < op.n_pop; ++i) {
      pop[i].x = min_transit_assignment(std::move(pop[i].x), ctx);
      positions[i] = pop[i].x;
    }
    const auto fs = evaluate_batch(positions, ctx, op.eval_threads, &memo);
    std::vector<ArchiveEntry> cands(op.n_pop);
    for (int i = 0; i < op.n_pop; ++i) {
      pop[i].f = fs[i];
      if (first || dominates(fs[i], pop[i].pbest_f)) {
        pop[i].pbest_x = pop[i].x;
        pop[i].pbest_f = fs[i];
      }
      cands[i] = ArchiveEntry{pop[i].x, fs[i]};
    }
    first = false;
    archive.update(cands);

    double b1 = -kInf, b2 = kInf, b3 = kInf;
    std::vector<ObjectiveVector> snap;
    snap.reserve(archive.size());
    for (const auto& e : archive.entries()) {
      b1 = std::max(b1, e.f.f1_db);
      b2 = std::min(b2, e.f.f2_db);
      b3 = std::min(b3, e.f.f3_j);
      snap.push_back(e.f);
    }
    hist.best_f1.push_back(b1);
    hist.best_f2.push_back(b2);
    hist.best_f3.push_back(b3);
    hist.archive_size.push_back(static_cast<int>(archive.size()));
    hist.snapshots.push_back(std::move(snap));

    mayfly_step(pop, archive, ctx, rng, &memo);
    if (imoma) {
      const double zv = zeta(t, op.t_max);
      const double mv = moa(t, op.t_max, op.moa_min, op.moa_max);
      const std::vector<double> ew = elite_weights(archive);
      for (int i = 0; i < op.n_pop; ++i) {
        const double r1 = u01(rng);
        const double r3 = u01(rng);
        const double r4 = u01(rng);
        const ArchiveEntry& elite_j = archive.entries()[roulette_pick(ew, u01(rng))];
        woa_update_jammer(pop[i].x, elite_j.x, t, op.t_max, zv, r1, ctx, rng);
        const ArchiveEntry& elite_r = archive.entries()[roulette_pick(ew, u01(rng))];
        aoa_update_relay(pop[i].x, elite_r.x, t, op.t_max, zv, mv, r1, r3, r4, ctx);
        pop[i].x = repair(std::move(pop[i].x), ctx);
      }
    }
  }
  return RunResult{std::move(archive), std::move(hist)};
}

}  // namespace

RunResult imoma_run(const ScenarioConfig& config, const HoverPoints& hover, std::uint64_t seed) {
  return run_loop(config, hover, seed, true);
}

RunResult moma_run(const ScenarioConfig& config, const HoverPoints& hover, std::uint64_t seed) {
  return run_loop(config, hover, seed, false);
}

}  // namespace cb
