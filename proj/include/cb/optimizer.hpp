#pragma once

#include <cstdint>
#include <random>
#include <string>
#include <unordered_map>
#include <vector>

#include "cb/problem.hpp"

namespace cb {

// Memo of finished evaluations keyed on the exact solution bytes. The objective map is
// pure, so replaying a hit is bit-identical to re-evaluating; grid-snapped runs revisit
// the same points constantly and skip almost all of the quadrature work.
using EvalCache = std::unordered_map<std::string, ObjectiveVector>;

// Tent map step; callers reseed the sequence when an iterate hits exactly 0 or 1.
double tent_next(double z, double a);

// Switching threshold: 0.5 - t/t_max for t < t_max/2, else t/t_max - 0.5.
double zeta(int t, int t_max);

// Math-optimizer-accelerated schedule: min + t*(max-min)/t_max.
double moa(int t, int t_max, double min_v, double max_v);

// Math-optimizer probability: 1 - (t/t_max)^(1/alpha).
double mop(int t, int t_max, double alpha);

// Population of solution vectors, one Tent sequence per dimension mapped affinely
// into that dimension's [lb, ub].
std::vector<Eigen::VectorXd> chaotic_init(const ProblemContext& ctx, int n_pop,
                                          std::mt19937_64& rng);
std::vector<Eigen::VectorXd> uniform_init(const ProblemContext& ctx, int n_pop,
                                          std::mt19937_64& rng);

struct ArchiveEntry {
  Eigen::VectorXd x;
  ObjectiveVector f;
};

// Bounded set of mutually non-dominated entries. Overflow drops lowest-crowding
// entries; per-objective boundary entries carry infinite crowding and are protected.
class ParetoArchive {
 public:
  explicit ParetoArchive(std::size_t capacity) : capacity_(capacity) {}

  void update(const std::vector<ArchiveEntry>& candidates);
  const std::vector<ArchiveEntry>& entries() const { return entries_; }
  std::size_t size() const { return entries_.size(); }
  std::size_t capacity() const { return capacity_; }
  // Crowding distances of the current entries (same order).
  std::vector<double> crowding() const;

 private:
  std::vector<ArchiveEntry> entries_;
  std::size_t capacity_;
};

// NSGA-style crowding distances over raw (f1, f2, f3); boundary points get +inf.
std::vector<double> crowding_distances(const std::vector<ObjectiveVector>& objs);

// Index sampled with probability proportional to weights (u01 uniform in [0,1)).
std::size_t roulette_pick(const std::vector<double>& weights, double u01);

// Archive entry sampled proportionally to finite-clamped crowding distance.
const ArchiveEntry& roulette_elite(const ParetoArchive& archive, std::mt19937_64& rng);

struct Mayfly {
  Eigen::VectorXd x, v;
  Eigen::VectorXd pbest_x;
  ObjectiveVector pbest_f;
  ObjectiveVector f;
  bool male = false;
};

// Evaluates candidates into indexed slots; per-candidate zero-power failures become the
// sentinel objective (violation 1e300). Bit-identical for any thread count. With a
// cache, hits are served from it and only misses are evaluated (then inserted), single
// -threaded around the parallel region, so results stay independent of thread count.
std::vector<ObjectiveVector> evaluate_batch(const std::vector<Eigen::VectorXd>& xs,
                                            const ProblemContext& ctx, int threads,
                                            EvalCache* cache = nullptr);

// One mayfly generation: male/female velocity updates and moves, per-dimension uniform
// crossover, offspring evaluated and replacing dominated parents, repair at the end.
void mayfly_step(std::vector<Mayfly>& pop, const ParetoArchive& archive,
                 const ProblemContext& ctx, std::mt19937_64& rng, EvalCache* cache = nullptr);

// WOA kernels.
double woa_l(double a, double r);                                // shrink coefficient 2*a*r - a
double woa_spiral_h(double b, double lprime);                    // e^(b*l')*cos(2*pi*l')
double woa_shrink(double x, double base, double l, double r2);   // x + base - l*|2*r2*base - x|
double woa_spiral(double x, double base, double h);              // x + |base - x|*h + base

// AOA kernels; scale = (ub-lb)*mu + lb of the dimension being updated.
double aoa_div(double base, double mop_v, double scale, double eps);
double aoa_mul(double base, double mop_v, double scale);
double aoa_addsub(double base, double mop_v, double scale, bool add);

// Jammer-segment overlay: Z always via the WOA equation; early phase (t < t_max/2) and
// r1 < zeta updates XY around the cluster centroid; late phase and r1 < zeta substitutes
// the elite's XYZ and updates currents.
void woa_update_jammer(Eigen::VectorXd& sol, const Eigen::VectorXd& elite, int t, int t_max,
                       double zeta_val, double r1, const ProblemContext& ctx,
                       std::mt19937_64& rng);

// Relay-segment overlay: Z always via the AOA multiply/divide (r1 > moa_val) or
// add/subtract equation; early phase and r1 < zeta collapses XY onto the scaled scalar
// centroid; late phase and r1 < zeta substitutes the elite's XYZ and updates currents.
void aoa_update_relay(Eigen::VectorXd& sol, const Eigen::VectorXd& elite, int t, int t_max,
                      double zeta_val, double moa_val, double r1, double r3, double r4,
                      const ProblemContext& ctx);

struct RunHistory {
  std::uint64_t seed = 0;
  std::vector<double> best_f1, best_f2, best_f3;       // per iteration, archive-wide
  std::vector<int> archive_size;
  std::vector<std::vector<ObjectiveVector>> snapshots;  // archive objectives per iteration
};

struct RunResult {
  ParetoArchive archive;
  RunHistory history;
};

RunResult imoma_run(const ScenarioConfig& config, const HoverPoints& hover, std::uint64_t seed);
// Conventional baseline: uniform initialization, mayfly movement only.
RunResult moma_run(const ScenarioConfig& config, const HoverPoints& hover, std::uint64_t seed);

}  // namespace cb
