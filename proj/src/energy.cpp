#include "cb/energy.hpp"

#include <cmath>
#include <stdexcept>

namespace cb {

double propulsion_power(double v, const EnergyParams& p) {
  if (v < 0) throw std::invalid_argument("propulsion_power: v must be >= 0");
  const double v2 = v * v;
  const double vm2 = p.v_m * p.v_m;
  const double induced =
      p.p_i * std::sqrt(std::sqrt(1.0 + v2 * v2 / (4.0 * vm2 * vm2)) - v2 / (2.0 * vm2));
  const double blade = p.p_b * (1.0 + 3.0 * v2 / (p.v_t * p.v_t));
  const double parasite = 0.5 * p.d_f * p.s_r * p.rho_a * p.a_r * v2 * v;
  return induced + blade + parasite;
}

double flight_energy(const FlightLeg& leg, const EnergyParams& p) {
  if (!(leg.speed > 0)) throw std::invalid_argument("flight_energy: speed must be > 0");
  const double dist = (leg.end - leg.start).norm();
  if (dist == 0.0) return 0.0;
  const double transit = propulsion_power(leg.speed, p) * (dist / leg.speed);
  const double potential = p.m_u * p.g * (leg.end.z() - leg.start.z());
  return transit + potential;
}

double fleet_energy(const std::vector<FlightLeg>& relay_legs,
                    const std::vector<FlightLeg>& jammer_legs, const EnergyParams& p) {
  double total = 0.0;
  for (const auto& leg : relay_legs) total += flight_energy(leg, p);
  for (const auto& leg : jammer_legs) total += flight_energy(leg, p);
  return total;
}

}  // namespace cb
