#pragma once

#include <cstdint>
#include <vector>

#include "cb/scenario.hpp"

namespace cb {

// f1 is maximized; f2, f3 minimized; dominance works on (-f1, f2, f3).
struct ObjectiveVector {
  double f1_db = 0.0;        // Bob SINR
  double f2_db = 0.0;        // Willie SINR
  double f3_j = 0.0;         // fleet flight energy
  double violation_m = 0.0;  // total pairwise separation deficit

  bool feasible() const { return violation_m == 0.0; }
  bool operator==(const ObjectiveVector&) const = default;
};

// Feasible beats infeasible; two infeasibles compare by violation; two feasibles by
// Pareto dominance on (-f1, f2, f3).
bool dominates(const ObjectiveVector& a, const ObjectiveVector& b);

// Flattened solution layout: relay X, Y, Z, I then jammer X, Y, Z, I.
struct SolutionLayout {
  int n_ur = 0;
  int n_uj = 0;

  int dim() const { return 4 * (n_ur + n_uj); }
  int relay_x() const { return 0; }
  int relay_y() const { return n_ur; }
  int relay_z() const { return 2 * n_ur; }
  int relay_i() const { return 3 * n_ur; }
  int jammer_x() const { return 4 * n_ur; }
  int jammer_y() const { return 4 * n_ur + n_uj; }
  int jammer_z() const { return 4 * n_ur + 2 * n_uj; }
  int jammer_i() const { return 4 * n_ur + 3 * n_uj; }

  bool operator==(const SolutionLayout&) const = default;
};

struct ProblemContext {
  ScenarioConfig config;
  HoverPoints hover;
  SolutionLayout layout;
  Eigen::VectorXd lb, ub;  // per-dimension bounds in segment order
  int n_theta = 91;        // quadrature grid used by evaluate()
  int n_phi = 181;
  int grid_levels = 0;     // >0: repair() snaps to this many uniform levels per dimension
};

ProblemContext make_context(const ScenarioConfig& config, const HoverPoints& hover);

// Solution vector assembled from per-UAV positions and currents in segment order.
Eigen::VectorXd pack_solution(const SolutionLayout& layout, const std::vector<Vec3>& relay_pos,
                              const Eigen::VectorXd& relay_i, const std::vector<Vec3>& jammer_pos,
                              const Eigen::VectorXd& jammer_i);
std::vector<Vec3> relay_positions(const Eigen::VectorXd& sol, const SolutionLayout& layout);
std::vector<Vec3> jammer_positions(const Eigen::VectorXd& sol, const SolutionLayout& layout);

struct ConstraintReport {
  std::vector<double> relay_pair_deficit;   // max(0, d_min - dist), pairs in index order
  std::vector<double> jammer_pair_deficit;
  Eigen::VectorXd box_clip;                 // |component - clamped component| per dimension

  double total_violation() const;
  bool feasible() const;
};

ConstraintReport constraint_report(const Eigen::VectorXd& sol, const ProblemContext& ctx);

// Clamps coordinates to their boxes and currents to [0,1]; separation is not repaired.
// With ctx.grid_levels > 0 every component additionally snaps to the nearest lattice level.
Eigen::VectorXd repair(Eigen::VectorXd sol, const ProblemContext& ctx);

// Reorders each fleet's (position, current) slots so the summed hover->slot transit
// energy is minimal (optimal UAV-to-slot assignment). The tuple set is unchanged, so the
// radiated pattern and the separation report are too; f3 never increases.
Eigen::VectorXd min_transit_assignment(Eigen::VectorXd sol, const ProblemContext& ctx);

// f1/f2 via the channel pipeline, f3 from hover->sol transit legs, violation from the
// separation report. Requires a repaired (in-bounds) solution. Throws zero_power_error
// on an all-zero relay.
ObjectiveVector evaluate(const Eigen::VectorXd& sol, const ProblemContext& ctx);

// Instrumentation counters (monotone, process-wide).
std::uint64_t evaluation_count();
std::uint64_t dominance_comparisons();

}  // namespace cb
