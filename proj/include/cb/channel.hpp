#pragma once

#include <complex>
#include <string>
#include <utility>

#include "cb/scenario.hpp"

namespace cb {

// Denominator of the gain formula vanished: every excitation current is (numerically) zero.
struct zero_power_error : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct ArraySpec {
  Eigen::Matrix3Xd positions;  // one column per element, meters
  Eigen::VectorXd currents;    // excitation weights in [0,1]
  double wavelength = 0.125;   // meters
};

ArraySpec make_array_spec(const std::vector<Vec3>& positions, const Eigen::VectorXd& currents,
                          double wavelength);
Vec3 array_center(const ArraySpec& spec);

// Sum_m I_m * exp(i * k * (x_m sin(th)cos(ph) + y_m sin(th)sin(ph) + z_m cos(th))).
std::complex<double> array_factor(const ArraySpec& spec, double theta, double phi);

// Midpoint-rule quadrature of |AF|^2 sin(theta) over theta in [0,pi], phi in [-pi,pi].
// Grids must have at least 16 points per axis.
double array_power_integral(const ArraySpec& spec, int n_theta, int n_phi);

// 4*pi*|AF(target)|^2 * eta / power_integral. The overload taking the precomputed
// integral performs the identical arithmetic; callers evaluating many directions of
// one array use it to share the quadrature.
double antenna_gain(const ArraySpec& spec, double target_theta, double target_phi, double eta,
                    int n_theta, int n_phi);
double antenna_gain(const ArraySpec& spec, double target_theta, double target_phi, double eta,
                    double power_integral);

// Polar angle from +z and atan2 azimuth of the vector center -> vessel.
// theta in [0,pi], phi in (-pi,pi].
std::pair<double, double> direction_to(const Vec3& center, const Vec3& vessel);

double path_loss_relay_db(const Vec3& center, const Vec3& vessel, const RfParams& rf);
double path_loss_jammer_db(const Vec3& center, const Vec3& vessel, const RfParams& rf);

// 10*log10(p_ur*n_ur*G_v*g_v / (p_uj*n_uj*G'_v*g'_v + sigma2)), g = 10^(-PL_dB/10).
// A jammer whose currents are all exactly zero contributes no jamming power; a relay
// with zero currents raises zero_power_error.
double sinr_db(const ArraySpec& relay, const ArraySpec& jammer, const Vec3& vessel,
               const RfParams& rf, int n_ur, int n_uj, int n_theta, int n_phi);
// Same arithmetic with both power integrals precomputed (jammer_integral ignored when the
// jammer currents are all zero); lets one evaluation share quadratures across vessels.
double sinr_db(const ArraySpec& relay, const ArraySpec& jammer, const Vec3& vessel,
               const RfParams& rf, int n_ur, int n_uj, double relay_integral,
               double jammer_integral);

struct GainMap {
  Eigen::VectorXd theta;  // midpoint grid over [0,pi]
  Eigen::VectorXd phi;    // midpoint grid over [-pi,pi]
  Eigen::MatrixXd gain;   // linear, gain(i,j) at (theta[i], phi[j])
};

GainMap make_gain_map(const ArraySpec& spec, double eta, int n_theta, int n_phi);

// CSV, header theta_rad,phi_rad,gain_linear,gain_dbi, row-major over the grid.
std::string gain_map_csv(const GainMap& map);

// Grid indices of the map's maximum-gain direction and of the cell containing (theta,phi).
std::pair<int, int> gain_map_argmax(const GainMap& map);
std::pair<int, int> gain_map_cell(const GainMap& map, double theta, double phi);

}  // namespace cb
