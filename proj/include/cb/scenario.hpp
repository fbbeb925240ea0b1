#pragma once

#include <Eigen/Dense>
#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace cb {

using Vec3 = Eigen::Vector3d;

// Configuration / validation failure; message carries the offending path and value.
struct config_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

// Axis-aligned box, lo < hi componentwise.
struct Box {
  Vec3 lo{0.0, 0.0, 0.0};
  Vec3 hi{1.0, 1.0, 1.0};

  bool contains(const Vec3& p) const {
    return (p.array() >= lo.array()).all() && (p.array() <= hi.array()).all();
  }
  friend bool operator==(const Box& a, const Box& b) {
    return (a.lo.array() == b.lo.array()).all() && (a.hi.array() == b.hi.array()).all();
  }
};

struct Geometry {
  Vec3 bob_pos{2400.0, 2300.0, 5.0};
  Vec3 willie_pos{2000.0, 2000.0, 5.0};
  Vec3 lbs_pos{0.0, 0.0, 30.0};
  Box relay_box{{0.0, 0.0, 60.0}, {100.0, 100.0, 120.0}};
  Box jammer_box{{4400.0, 4300.0, 60.0}, {4500.0, 4400.0, 120.0}};
  double sea_level = 5.0;

  friend bool operator==(const Geometry& a, const Geometry& b) {
    return (a.bob_pos.array() == b.bob_pos.array()).all() &&
           (a.willie_pos.array() == b.willie_pos.array()).all() &&
           (a.lbs_pos.array() == b.lbs_pos.array()).all() && a.relay_box == b.relay_box &&
           a.jammer_box == b.jammer_box && a.sea_level == b.sea_level;
  }
};

struct RfParams {
  double f_c_mhz = 2400.0;
  double p_ur = 0.1;        // W per relay UAV
  double p_uj = 0.1;        // W per jammer UAV
  double sigma2_w = 1e-18;  // -150 dBm
  double eta = 1.0;         // array efficiency, [0,1]
  double alpha_a = 5.0188;  // sigmoid offset, degrees scale
  double alpha_b = 0.3511;
  double c_r = 34.0;       // dB
  double eta_los = 2.3;    // dB
  double eta_nlos = 34.0;  // dB
  double a_u = -31.7;      // dB; documented guess, = eta_los - eta_nlos
  double c_u = 1.0;        // dB, stored but consumed by no formula
  double d_min = 1.0;      // m, minimum inter-UAV separation

  double wavelength() const { return 299.7925 / f_c_mhz; }

  bool operator==(const RfParams&) const = default;
};

struct EnergyParams {
  double p_i = 88.63;   // W, induced hover power
  double p_b = 79.86;   // W, blade-profile hover power
  double v_m = 4.03;    // m/s, mean rotor induced velocity
  double v_t = 120.0;   // m/s, rotor tip speed
  double d_f = 0.6;     // fuselage drag ratio
  double s_r = 0.05;    // rotor solidity
  double rho_a = 1.225; // kg/m^3
  double a_r = 0.503;   // m^2, rotor disc area
  double m_u = 2.0;     // kg
  double g = 9.8;       // m/s^2
  double v_f = 10.0;    // m/s, transit cruise speed
  double v_f_max = 20.0;

  bool operator==(const EnergyParams&) const = default;
};

struct OptimizerParams {
  int n_pop = 30;       // even, >= 2
  int t_max = 500;
  int archive_cap = 30; // defaults to n_pop when omitted
  std::uint64_t seed = 1;
  double tent_a = 0.499;
  double woa_b = 1.0;
  double aoa_alpha = 5.0;
  double aoa_mu = 0.499;
  double aoa_eps = 1e-12;
  double moa_min = 0.2;
  double moa_max = 1.0;
  double g_inertia = 0.8;
  double a1 = 1.0;
  double a2 = 1.5;
  double a3 = 1.5;
  double beta = 2.0;
  double dance_d = 0.1;  // nuptial dance amplitude, fraction of per-dimension range
  double walk_fl = 0.1;  // female random-walk amplitude, fraction of range
  int n_theta_opt = 91;
  int n_phi_opt = 181;
  int n_theta_report = 181;
  int n_phi_report = 361;
  int grid_levels = 0;   // >0 snaps repair() onto a per-dimension uniform lattice
  int eval_threads = 1;

  bool operator==(const OptimizerParams&) const = default;
};

struct ScenarioConfig {
  Geometry geometry;
  RfParams rf;
  EnergyParams energy;
  OptimizerParams opt;
  int n_ur = 16;
  int n_uj = 8;

  friend bool operator==(const ScenarioConfig& a, const ScenarioConfig& b) {
    return a.geometry == b.geometry && a.rf == b.rf && a.energy == b.energy && a.opt == b.opt &&
           a.n_ur == b.n_ur && a.n_uj == b.n_uj;
  }
};

ScenarioConfig default_config();

// Parses a JSON document; omitted optional fields take defaults, then invariants are validated.
ScenarioConfig load_config(const std::string& document);
std::string serialize_config(const ScenarioConfig& config);
void validate(const ScenarioConfig& config);

struct HoverPoints {
  std::vector<Vec3> relay;
  std::vector<Vec3> jammer;
};

// Uniform draws inside each box, rejection-resampled to pairwise separation >= d_min
// within each cluster (max 10,000 attempts per cluster). Deterministic per seed.
HoverPoints initial_positions(const ScenarioConfig& config, std::uint64_t seed);

}  // namespace cb
