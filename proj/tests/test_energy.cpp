#include <doctest.h>

#include <cmath>
#include <vector>

#include "cb/energy.hpp"

using namespace cb;

namespace {

// Eq.-by-term hand evaluation, independently coded.
double hand_power(double v, const EnergyParams& p) {
  const double induced =
      p.p_i * std::sqrt(std::sqrt(1.0 + std::pow(v, 4) / (4.0 * std::pow(p.v_m, 4))) -
                        v * v / (2.0 * p.v_m * p.v_m));
  const double blade = p.p_b * (1.0 + 3.0 * v * v / (p.v_t * p.v_t));
  const double parasite = 0.5 * p.d_f * p.s_r * p.rho_a * p.a_r * v * v * v;
  return induced + blade + parasite;
}

}  // namespace

TEST_CASE("hover power is the sum of the two hover terms") {
  const EnergyParams p;
  CHECK(propulsion_power(0.0, p) == doctest::Approx(p.p_i + p.p_b).epsilon(1e-15));
  CHECK(propulsion_power(0.0, p) == doctest::Approx(168.49).epsilon(1e-12));
}

TEST_CASE("cruise power matches the term-by-term oracle") {
  const EnergyParams p;
  CHECK(propulsion_power(10.0, p) == doctest::Approx(hand_power(10.0, p)).epsilon(1e-13));
  CHECK(propulsion_power(10.0, p) == doctest::Approx(125.99).epsilon(5e-4));
  for (double v : {0.5, 3.7, 16.0, 55.0})
    CHECK(propulsion_power(v, p) == doctest::Approx(hand_power(v, p)).epsilon(1e-13));
}

TEST_CASE("parasite drag dominates at high speed with a cubic law") {
  // At sufficiently high speed the v^3 term dwarfs the rest, so doubling the
  // speed multiplies power by about 8.
  const EnergyParams p;
  const double ratio = propulsion_power(160.0, p) / propulsion_power(80.0, p);
  CHECK(ratio == doctest::Approx(8.0).epsilon(0.15));
}

TEST_CASE("negative speed is rejected") {
  CHECK_THROWS_AS(propulsion_power(-1.0, EnergyParams{}), std::invalid_argument);
}

TEST_CASE("zero-length legs consume nothing") {
  const EnergyParams p;
  const FlightLeg leg{{10.0, 20.0, 30.0}, {10.0, 20.0, 30.0}, 10.0};
  CHECK(flight_energy(leg, p) == 0.0);
}

TEST_CASE("level transit energy is power times transit time") {
  const EnergyParams p;
  const FlightLeg leg{{0.0, 0.0, 100.0}, {100.0, 0.0, 100.0}, 10.0};
  const double want = hand_power(10.0, p) * 10.0;
  CHECK(flight_energy(leg, p) == doctest::Approx(want).epsilon(1e-13));
  CHECK(flight_energy(leg, p) == doctest::Approx(1259.9).epsilon(5e-4));
}

TEST_CASE("a pure climb adds the potential-energy term") {
  const EnergyParams p;
  const FlightLeg leg{{0.0, 0.0, 40.0}, {0.0, 0.0, 100.0}, 10.0};
  const double want = hand_power(10.0, p) * 6.0 + p.m_u * p.g * 60.0;
  CHECK(flight_energy(leg, p) == doctest::Approx(want).epsilon(1e-13));
  CHECK(flight_energy(leg, p) == doctest::Approx(1931.9).epsilon(5e-4));
}

TEST_CASE("descent credits exactly the signed potential term") {
  const EnergyParams p;
  const FlightLeg level{{0.0, 0.0, 100.0}, {0.0, 60.0, 100.0}, 10.0};
  const FlightLeg down{{0.0, 0.0, 100.0}, {0.0, 0.0, 40.0}, 10.0};  // same 60 m path
  const double credit = flight_energy(level, p) - flight_energy(down, p);
  CHECK(credit == doctest::Approx(p.m_u * p.g * 60.0).epsilon(1e-12));
}

TEST_CASE("energy grows with path length at fixed speed and height change") {
  const EnergyParams p;
  double prev = -1.0;
  for (double len : {10.0, 50.0, 200.0, 1000.0}) {
    const FlightLeg leg{{0.0, 0.0, 80.0}, {len, 0.0, 80.0}, 10.0};
    const double e = flight_energy(leg, p);
    CHECK(e > prev);
    prev = e;
  }
}

TEST_CASE("non-positive leg speed is rejected") {
  const EnergyParams p;
  CHECK_THROWS_AS(flight_energy({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, 0.0}, p),
                  std::invalid_argument);
  CHECK_THROWS_AS(flight_energy({{0.0, 0.0, 0.0}, {1.0, 0.0, 0.0}, -5.0}, p),
                  std::invalid_argument);
}

TEST_CASE("fleet energy is additive and permutation invariant") {
  const EnergyParams p;
  const FlightLeg a{{0.0, 0.0, 60.0}, {100.0, 0.0, 60.0}, 10.0};
  const FlightLeg b{{0.0, 0.0, 60.0}, {0.0, 0.0, 120.0}, 10.0};
  const FlightLeg c{{5.0, 5.0, 70.0}, {5.0, 5.0, 70.0}, 10.0};

  CHECK(fleet_energy({}, {}, p) == 0.0);
  CHECK(fleet_energy({a, a}, {}, p) == doctest::Approx(2.0 * flight_energy(a, p)).epsilon(1e-15));
  const double abc = fleet_energy({a, b}, {c}, p);
  const double bca = fleet_energy({b, c}, {a}, p);
  CHECK(abc == doctest::Approx(bca).epsilon(1e-15));
  CHECK(abc == doctest::Approx(flight_energy(a, p) + flight_energy(b, p) + flight_energy(c, p))
                   .epsilon(1e-15));
}

TEST_CASE("a 24-UAV redeployment of 50 m each lands near 1.51e4 J") {
  const EnergyParams p;
  std::vector<FlightLeg> relay, jammer;
  for (int i = 0; i < 16; ++i)
    relay.push_back({{0.0, double(i), 80.0}, {50.0, double(i), 80.0}, 10.0});
  for (int i = 0; i < 8; ++i)
    jammer.push_back({{0.0, double(i), 90.0}, {50.0, double(i), 90.0}, 10.0});
  const double total = fleet_energy(relay, jammer, p);
  CHECK(total == doctest::Approx(24.0 * 629.95).epsilon(5e-4));
  CHECK(total == doctest::Approx(1.51e4).epsilon(0.01));
}
