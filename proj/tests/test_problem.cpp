#include <doctest.h>

#include <algorithm>
#include <cmath>
#include <limits>
#include <random>
#include <vector>

#include "cb/channel.hpp"
#include "cb/energy.hpp"
#include "cb/problem.hpp"

using namespace cb;

namespace {

ScenarioConfig micro_config() {
  ScenarioConfig c = default_config();
  c.n_ur = 2;
  c.n_uj = 1;
  c.opt.n_pop = 4;
  c.opt.archive_cap = 4;
  validate(c);
  return c;
}

ObjectiveVector obj(double f1, double f2, double f3, double v = 0.0) {
  return ObjectiveVector{f1, f2, f3, v};
}

}  // namespace

TEST_CASE("dominance follows the feasibility-first rule") {
  CHECK(dominates(obj(10, -30, 100), obj(9, -20, 200)));
  CHECK_FALSE(dominates(obj(9, -20, 200), obj(10, -30, 100)));

  const ObjectiveVector same = obj(5, -5, 50);
  CHECK_FALSE(dominates(same, same));

  // Feasible beats infeasible regardless of objectives.
  CHECK(dominates(obj(-100, 100, 1e9, 0.0), obj(100, -100, 0.0, 5.0)));
  CHECK_FALSE(dominates(obj(100, -100, 0.0, 5.0), obj(-100, 100, 1e9, 0.0)));

  // Two infeasibles compare by violation alone.
  CHECK(dominates(obj(0, 0, 0, 1.0), obj(100, -100, 0, 2.0)));
  CHECK_FALSE(dominates(obj(0, 0, 0, 2.0), obj(0, 0, 0, 1.0)));
  CHECK_FALSE(dominates(obj(0, 0, 0, 1.0), obj(0, 0, 0, 1.0)));

  // Weak improvement in one objective with equality elsewhere dominates.
  CHECK(dominates(obj(10, -30, 100), obj(10, -30, 101)));
  CHECK_FALSE(dominates(obj(10, -30, 100), obj(10, -30, 100)));
}

TEST_CASE("dominance is irreflexive, asymmetric, and transitive on random samples") {
  std::mt19937_64 rng(2024);
  std::uniform_int_distribution<int> level(0, 2);
  std::uniform_int_distribution<int> viol(0, 1);
  auto draw = [&] {
    return obj(level(rng), level(rng), level(rng), viol(rng) ? 0.5 * level(rng) : 0.0);
  };
  for (int rep = 0; rep < 500; ++rep) {
    const ObjectiveVector a = draw(), b = draw(), c = draw();
    CHECK_FALSE(dominates(a, a));
    if (dominates(a, b)) CHECK_FALSE(dominates(b, a));
    if (dominates(a, b) && dominates(b, c)) CHECK(dominates(a, c));
  }
}

TEST_CASE("solution layout offsets tile the vector exactly") {
  const SolutionLayout ly{3, 2};
  CHECK(ly.dim() == 20);
  CHECK(ly.relay_x() == 0);
  CHECK(ly.relay_y() == 3);
  CHECK(ly.relay_z() == 6);
  CHECK(ly.relay_i() == 9);
  CHECK(ly.jammer_x() == 12);
  CHECK(ly.jammer_y() == 14);
  CHECK(ly.jammer_z() == 16);
  CHECK(ly.jammer_i() == 18);
}

TEST_CASE("pack and unpack round-trip positions and currents") {
  const SolutionLayout ly{2, 2};
  const std::vector<Vec3> rp{{1.0, 2.0, 3.0}, {4.0, 5.0, 6.0}};
  const std::vector<Vec3> jp{{7.0, 8.0, 9.0}, {10.0, 11.0, 12.0}};
  Eigen::VectorXd ri(2), ji(2);
  ri << 0.25, 0.75;
  ji << 0.5, 1.0;
  const Eigen::VectorXd sol = pack_solution(ly, rp, ri, jp, ji);
  REQUIRE(sol.size() == ly.dim());
  CHECK(sol[ly.relay_x() + 1] == 4.0);
  CHECK(sol[ly.relay_y() + 0] == 2.0);
  CHECK(sol[ly.relay_z() + 1] == 6.0);
  CHECK(sol[ly.relay_i() + 0] == 0.25);
  CHECK(sol[ly.jammer_x() + 0] == 7.0);
  CHECK(sol[ly.jammer_i() + 1] == 1.0);

  const auto rp2 = relay_positions(sol, ly);
  const auto jp2 = jammer_positions(sol, ly);
  REQUIRE(rp2.size() == 2);
  REQUIRE(jp2.size() == 2);
  for (int i = 0; i < 2; ++i) {
    CHECK(rp2[i] == rp[i]);
    CHECK(jp2[i] == jp[i]);
  }
}

TEST_CASE("context bounds mirror the boxes segment by segment") {
  const ScenarioConfig c = micro_config();
  const HoverPoints h = initial_positions(c, 5);
  const ProblemContext ctx = make_context(c, h);
  REQUIRE(ctx.lb.size() == ctx.layout.dim());
  REQUIRE(ctx.ub.size() == ctx.layout.dim());
  const auto& rb = c.geometry.relay_box;
  const auto& jb = c.geometry.jammer_box;
  for (int i = 0; i < c.n_ur; ++i) {
    CHECK(ctx.lb[ctx.layout.relay_x() + i] == rb.lo.x());
    CHECK(ctx.ub[ctx.layout.relay_x() + i] == rb.hi.x());
    CHECK(ctx.lb[ctx.layout.relay_y() + i] == rb.lo.y());
    CHECK(ctx.ub[ctx.layout.relay_y() + i] == rb.hi.y());
    CHECK(ctx.lb[ctx.layout.relay_z() + i] == rb.lo.z());
    CHECK(ctx.ub[ctx.layout.relay_z() + i] == rb.hi.z());
    CHECK(ctx.lb[ctx.layout.relay_i() + i] == 0.0);
    CHECK(ctx.ub[ctx.layout.relay_i() + i] == 1.0);
  }
  for (int i = 0; i < c.n_uj; ++i) {
    CHECK(ctx.lb[ctx.layout.jammer_x() + i] == jb.lo.x());
    CHECK(ctx.ub[ctx.layout.jammer_x() + i] == jb.hi.x());
    CHECK(ctx.lb[ctx.layout.jammer_z() + i] == jb.lo.z());
    CHECK(ctx.ub[ctx.layout.jammer_z() + i] == jb.hi.z());
    CHECK(ctx.lb[ctx.layout.jammer_i() + i] == 0.0);
    CHECK(ctx.ub[ctx.layout.jammer_i() + i] == 1.0);
  }
  CHECK(ctx.n_theta == c.opt.n_theta_opt);
  CHECK(ctx.n_phi == c.opt.n_phi_opt);
  CHECK(ctx.grid_levels == c.opt.grid_levels);
}

TEST_CASE("repair clamps out-of-range components and nothing else") {
  const ScenarioConfig c = micro_config();
  const ProblemContext ctx = make_context(c, initial_positions(c, 5));
  Eigen::VectorXd sol = 0.5 * (ctx.lb + ctx.ub);

  sol[ctx.layout.relay_i() + 0] = 1.3;
  sol[ctx.layout.relay_x() + 0] = ctx.lb[ctx.layout.relay_x()] - 5.0;
  const Eigen::VectorXd fixed = repair(sol, ctx);
  CHECK(fixed[ctx.layout.relay_i() + 0] == 1.0);
  CHECK(fixed[ctx.layout.relay_x() + 0] == ctx.lb[ctx.layout.relay_x()]);

  // Everything already in bounds passes through bit-exact.
  const Eigen::VectorXd again = repair(fixed, ctx);
  CHECK(again == fixed);
}

TEST_CASE("repair snaps onto the lattice when grid levels are set") {
  const ScenarioConfig c = micro_config();
  ProblemContext ctx = make_context(c, initial_positions(c, 5));
  ctx.grid_levels = 3;
  Eigen::VectorXd sol = ctx.lb;
  const int d = ctx.layout.relay_x();
  const double lo = ctx.lb[d], hi = ctx.ub[d], step = (hi - lo) / 2.0;
  sol[d] = lo + 0.26 * (hi - lo);  // nearest level is the midpoint
  Eigen::VectorXd fixed = repair(sol, ctx);
  CHECK(fixed[d] == lo + step);
  sol[d] = lo + 0.24 * (hi - lo);  // nearest level is the lower bound
  fixed = repair(sol, ctx);
  CHECK(fixed[d] == lo);
  sol[d] = hi + 100.0;  // clamp first, then snap
  fixed = repair(sol, ctx);
  CHECK(fixed[d] == hi);

  // Every component of a random vector lands exactly on a level.
  std::mt19937_64 rng(7);
  Eigen::VectorXd noisy(ctx.layout.dim());
  for (int i = 0; i < noisy.size(); ++i) {
    std::uniform_real_distribution<double> u(ctx.lb[i], ctx.ub[i]);
    noisy[i] = u(rng);
  }
  const Eigen::VectorXd snapped = repair(noisy, ctx);
  for (int i = 0; i < snapped.size(); ++i) {
    const double st = (ctx.ub[i] - ctx.lb[i]) / 2.0;
    const double idx = (snapped[i] - ctx.lb[i]) / st;
    CHECK(idx == doctest::Approx(std::round(idx)).epsilon(1e-12));
  }
}

TEST_CASE("constraint report measures pairwise separation deficits") {
  const ScenarioConfig c = micro_config();  // d_min = 1 m
  const ProblemContext ctx = make_context(c, initial_positions(c, 5));
  const auto& rb = c.geometry.relay_box;
  std::vector<Vec3> rp{rb.lo + Vec3(1.0, 1.0, 1.0), rb.lo + Vec3(1.4, 1.0, 1.0)};  // 0.4 m apart
  std::vector<Vec3> jp{c.geometry.jammer_box.lo + Vec3(1.0, 1.0, 1.0)};
  Eigen::VectorXd ri = Eigen::VectorXd::Constant(2, 0.5), ji = Eigen::VectorXd::Constant(1, 0.5);
  const Eigen::VectorXd sol = pack_solution(ctx.layout, rp, ri, jp, ji);

  const ConstraintReport rep = constraint_report(sol, ctx);
  REQUIRE(rep.relay_pair_deficit.size() == 1);
  CHECK(rep.relay_pair_deficit[0] == doctest::Approx(0.6).epsilon(1e-12));
  CHECK(rep.jammer_pair_deficit.empty());
  CHECK(rep.total_violation() == doctest::Approx(0.6).epsilon(1e-12));
  CHECK_FALSE(rep.feasible());
  CHECK((rep.box_clip.array() == 0.0).all());

  const ObjectiveVector o = evaluate(sol, ctx);
  CHECK(o.violation_m == doctest::Approx(0.6).epsilon(1e-12));
}

TEST_CASE("staying at the hover points costs zero flight energy") {
  const ScenarioConfig c = micro_config();
  const HoverPoints h = initial_positions(c, 11);
  const ProblemContext ctx = make_context(c, h);
  const Eigen::VectorXd sol =
      pack_solution(ctx.layout, h.relay, Eigen::VectorXd::Constant(2, 0.7), h.jammer,
                    Eigen::VectorXd::Constant(1, 0.4));
  const ObjectiveVector o = evaluate(sol, ctx);
  CHECK(o.f3_j == 0.0);
  CHECK(o.violation_m == 0.0);
}

TEST_CASE("objectives are invariant under halving the relay currents") {
  const ScenarioConfig c = micro_config();
  const HoverPoints h = initial_positions(c, 13);
  const ProblemContext ctx = make_context(c, h);
  Eigen::VectorXd ri(2), ji(1);
  ri << 0.9, 0.8;
  ji << 0.6;
  const Eigen::VectorXd a = pack_solution(ctx.layout, h.relay, ri, h.jammer, ji);
  const Eigen::VectorXd b = pack_solution(ctx.layout, h.relay, 0.5 * ri, h.jammer, ji);
  const ObjectiveVector oa = evaluate(a, ctx);
  const ObjectiveVector ob = evaluate(b, ctx);
  CHECK(oa.f1_db == ob.f1_db);
  CHECK(oa.f2_db == ob.f2_db);
  CHECK(oa.f3_j == ob.f3_j);
}

TEST_CASE("evaluate matches a straight-line recomputation on a 2+1 micro fleet") {
  const ScenarioConfig c = micro_config();
  const HoverPoints h = initial_positions(c, 17);
  const ProblemContext ctx = make_context(c, h);

  std::vector<Vec3> rp{h.relay[0] + Vec3(10.0, 5.0, 2.0), h.relay[1] + Vec3(-4.0, 8.0, 1.0)};
  std::vector<Vec3> jp{h.jammer[0] + Vec3(6.0, -3.0, 4.0)};
  for (auto& p : rp) p = c.geometry.relay_box.lo.cwiseMax(c.geometry.relay_box.hi.cwiseMin(p));
  for (auto& p : jp) p = c.geometry.jammer_box.lo.cwiseMax(c.geometry.jammer_box.hi.cwiseMin(p));
  Eigen::VectorXd ri(2), ji(1);
  ri << 0.8, 0.6;
  ji << 0.9;
  const Eigen::VectorXd sol = pack_solution(ctx.layout, rp, ri, jp, ji);
  const ObjectiveVector got = evaluate(sol, ctx);

  const double lam = c.rf.wavelength();
  const ArraySpec relay = make_array_spec(rp, ri, lam);
  const ArraySpec jammer = make_array_spec(jp, ji, lam);
  const double d_r = array_power_integral(relay, ctx.n_theta, ctx.n_phi);
  const double d_j = array_power_integral(jammer, ctx.n_theta, ctx.n_phi);
  const double f1 =
      sinr_db(relay, jammer, c.geometry.bob_pos, c.rf, c.n_ur, c.n_uj, d_r, d_j);
  const double f2 =
      sinr_db(relay, jammer, c.geometry.willie_pos, c.rf, c.n_ur, c.n_uj, d_r, d_j);
  std::vector<FlightLeg> r_legs, j_legs;
  for (int i = 0; i < 2; ++i) r_legs.push_back({h.relay[i], rp[i], c.energy.v_f});
  j_legs.push_back({h.jammer[0], jp[0], c.energy.v_f});
  const double f3 = fleet_energy(r_legs, j_legs, c.energy);
  double violation = std::max(0.0, c.rf.d_min - (rp[0] - rp[1]).norm());

  CHECK(got.f1_db == doctest::Approx(f1).epsilon(1e-12));
  CHECK(got.f2_db == doctest::Approx(f2).epsilon(1e-12));
  CHECK(got.f3_j == doctest::Approx(f3).epsilon(1e-12));
  CHECK(got.violation_m == doctest::Approx(violation).epsilon(1e-12));

  // Purity: a second evaluation reproduces the result bit for bit.
  const ObjectiveVector again = evaluate(sol, ctx);
  CHECK(again == got);
}

TEST_CASE("an all-zero relay segment raises the zero-power error") {
  const ScenarioConfig c = micro_config();
  const HoverPoints h = initial_positions(c, 19);
  const ProblemContext ctx = make_context(c, h);
  const Eigen::VectorXd sol = pack_solution(ctx.layout, h.relay, Eigen::VectorXd::Zero(2),
                                            h.jammer, Eigen::VectorXd::Constant(1, 0.5));
  CHECK_THROWS_AS(evaluate(sol, ctx), zero_power_error);
}

TEST_CASE("transit assignment swaps two relays when the crossed pairing is cheaper") {
  const ScenarioConfig c = micro_config();
  HoverPoints h;
  h.relay = {Vec3(10.0, 10.0, 90.0), Vec3(90.0, 90.0, 90.0)};
  h.jammer = {Vec3(4450.0, 4350.0, 90.0)};
  const ProblemContext ctx = make_context(c, h);

  // Slot 0 sits on top of the second hover point and vice versa; the crossed
  // pairing needs no travel at all.
  Eigen::VectorXd ri(2), ji(1);
  ri << 1.0, 0.25;
  ji << 0.5;
  const Eigen::VectorXd sol =
      pack_solution(ctx.layout, {h.relay[1], h.relay[0]}, ri, h.jammer, ji);
  const Eigen::VectorXd out = min_transit_assignment(sol, ctx);

  CHECK(relay_positions(out, ctx.layout)[0] == h.relay[0]);
  CHECK(relay_positions(out, ctx.layout)[1] == h.relay[1]);
  // Currents travel with their positions.
  CHECK(out[ctx.layout.relay_i() + 0] == 0.25);
  CHECK(out[ctx.layout.relay_i() + 1] == 1.0);

  const ObjectiveVector before = evaluate(sol, ctx);
  const ObjectiveVector after = evaluate(out, ctx);
  const double jam_leg = flight_energy({h.jammer[0], h.jammer[0], c.energy.v_f}, c.energy);
  CHECK(after.f3_j == jam_leg);
  CHECK(after.f3_j < before.f3_j);
  // Two-element array factors commute, so the pattern objectives are bit-identical.
  CHECK(after.f1_db == before.f1_db);
  CHECK(after.f2_db == before.f2_db);
  CHECK(after.violation_m == before.violation_m);
}

TEST_CASE("transit assignment keeps an already-matched fleet in place") {
  const ScenarioConfig c = micro_config();
  const HoverPoints h = initial_positions(c, 29);
  const ProblemContext ctx = make_context(c, h);
  const Eigen::VectorXd sol =
      pack_solution(ctx.layout, h.relay, Eigen::VectorXd::Constant(2, 0.7), h.jammer,
                    Eigen::VectorXd::Constant(1, 0.4));
  const Eigen::VectorXd out = min_transit_assignment(sol, ctx);
  CHECK(out == sol);
}

TEST_CASE("transit assignment matches permutation brute force on random fleets") {
  ScenarioConfig c = default_config();
  c.n_ur = 4;
  c.n_uj = 2;
  validate(c);
  std::mt19937_64 rng(311);
  std::uniform_real_distribution<double> ux(0.0, 100.0), uz(60.0, 120.0), ui(0.1, 1.0);
  std::uniform_real_distribution<double> jx(4400.0, 4500.0), jy(4300.0, 4400.0);

  for (int rep = 0; rep < 20; ++rep) {
    HoverPoints h;
    for (int m = 0; m < 4; ++m) h.relay.push_back(Vec3(ux(rng), ux(rng), uz(rng)));
    for (int n = 0; n < 2; ++n) h.jammer.push_back(Vec3(jx(rng), jy(rng), uz(rng)));
    const ProblemContext ctx = make_context(c, h);

    std::vector<Vec3> rp(4), jp(2);
    Eigen::VectorXd ri(4), ji(2);
    for (int m = 0; m < 4; ++m) {
      rp[m] = Vec3(ux(rng), ux(rng), uz(rng));
      ri[m] = ui(rng);
    }
    for (int n = 0; n < 2; ++n) {
      jp[n] = Vec3(jx(rng), jy(rng), uz(rng));
      ji[n] = ui(rng);
    }
    const Eigen::VectorXd sol = pack_solution(ctx.layout, rp, ri, jp, ji);
    const Eigen::VectorXd out = min_transit_assignment(sol, ctx);

    const auto fleet_cost = [&](const std::vector<Vec3>& hover, const std::vector<Vec3>& pts) {
      double best = std::numeric_limits<double>::infinity();
      std::vector<int> perm(pts.size());
      for (std::size_t k = 0; k < perm.size(); ++k) perm[k] = static_cast<int>(k);
      do {
        double total = 0.0;
        for (std::size_t k = 0; k < perm.size(); ++k)
          total += flight_energy({hover[k], pts[perm[k]], c.energy.v_f}, c.energy);
        best = std::min(best, total);
      } while (std::next_permutation(perm.begin(), perm.end()));
      return best;
    };
    const double want_relay = fleet_cost(h.relay, rp);
    const double want_jammer = fleet_cost(h.jammer, jp);

    const auto out_r = relay_positions(out, ctx.layout);
    const auto out_j = jammer_positions(out, ctx.layout);
    double got_relay = 0.0, got_jammer = 0.0;
    for (int m = 0; m < 4; ++m)
      got_relay += flight_energy({h.relay[m], out_r[m], c.energy.v_f}, c.energy);
    for (int n = 0; n < 2; ++n)
      got_jammer += flight_energy({h.jammer[n], out_j[n], c.energy.v_f}, c.energy);
    CHECK(got_relay == doctest::Approx(want_relay).epsilon(1e-12));
    CHECK(got_jammer == doctest::Approx(want_jammer).epsilon(1e-12));

    // The tuple multiset is preserved: same pattern objectives, never more energy.
    const ObjectiveVector before = evaluate(sol, ctx);
    const ObjectiveVector after = evaluate(out, ctx);
    CHECK(after.f1_db == doctest::Approx(before.f1_db).epsilon(1e-12));
    CHECK(after.f2_db == doctest::Approx(before.f2_db).epsilon(1e-12));
    CHECK(after.violation_m == doctest::Approx(before.violation_m).epsilon(1e-12));
    CHECK(after.f3_j <= before.f3_j + 1e-9);
  }
}

TEST_CASE("transit assignment reorders the jammer fleet independently of the relays") {
  ScenarioConfig c = default_config();
  c.n_ur = 2;
  c.n_uj = 2;
  validate(c);
  HoverPoints h;
  h.relay = {Vec3(20.0, 20.0, 80.0), Vec3(80.0, 80.0, 80.0)};
  h.jammer = {Vec3(4410.0, 4310.0, 70.0), Vec3(4490.0, 4390.0, 110.0)};
  const ProblemContext ctx = make_context(c, h);

  Eigen::VectorXd ri(2), ji(2);
  ri << 0.6, 0.7;
  ji << 0.3, 0.9;
  const Eigen::VectorXd sol =
      pack_solution(ctx.layout, h.relay, ri, {h.jammer[1], h.jammer[0]}, ji);
  const Eigen::VectorXd out = min_transit_assignment(sol, ctx);

  // Relay segment untouched, jammer tuples uncrossed.
  CHECK(out.head(ctx.layout.jammer_x()) == sol.head(ctx.layout.jammer_x()));
  CHECK(jammer_positions(out, ctx.layout)[0] == h.jammer[0]);
  CHECK(jammer_positions(out, ctx.layout)[1] == h.jammer[1]);
  CHECK(out[ctx.layout.jammer_i() + 0] == 0.9);
  CHECK(out[ctx.layout.jammer_i() + 1] == 0.3);
}

TEST_CASE("instrumentation counters advance with the work") {
  const ScenarioConfig c = micro_config();
  const HoverPoints h = initial_positions(c, 23);
  const ProblemContext ctx = make_context(c, h);
  const Eigen::VectorXd sol =
      pack_solution(ctx.layout, h.relay, Eigen::VectorXd::Constant(2, 0.5), h.jammer,
                    Eigen::VectorXd::Constant(1, 0.5));
  const std::uint64_t e0 = evaluation_count();
  (void)evaluate(sol, ctx);
  (void)evaluate(sol, ctx);
  CHECK(evaluation_count() == e0 + 2);

  const std::uint64_t d0 = dominance_comparisons();
  (void)dominates(obj(1, 2, 3), obj(4, 5, 6));
  CHECK(dominance_comparisons() == d0 + 1);
}
