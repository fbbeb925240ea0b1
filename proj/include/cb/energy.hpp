#pragma once

#include <vector>

#include "cb/scenario.hpp"

namespace cb {

struct FlightLeg {
  Vec3 start{0.0, 0.0, 0.0};
  Vec3 end{0.0, 0.0, 0.0};
  double speed = 10.0;  // m/s, > 0
};

// Rotary-wing propulsion power at forward speed v:
//   P_I*sqrt(sqrt(1 + v^4/(4 v_m^4)) - v^2/(2 v_m^2)) + P_B*(1 + 3 v^2/v_t^2)
//   + 0.5*d_f*s_r*rho_a*a_r*v^3.
double propulsion_power(double v, const EnergyParams& params);

// Straight-line rest-to-rest transit at leg.speed plus the signed potential term:
//   P(speed)*|end-start|/speed + m_u*g*(end.z - start.z).
double flight_energy(const FlightLeg& leg, const EnergyParams& params);

double fleet_energy(const std::vector<FlightLeg>& relay_legs,
                    const std::vector<FlightLeg>& jammer_legs, const EnergyParams& params);

}  // namespace cb
