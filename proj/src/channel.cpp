#include "cb/channel.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <map>
#include <memory>
#include <mutex>
#include <numbers>
#include <sstream>

#include "af_kernels.hpp"
#include "cb/csvio.hpp"

namespace cb {
namespace {

constexpr double kPi = std::numbers::pi;

// Midpoint grids and their trig tables, shared across evaluations of one resolution.
struct TrigGrid {
  Eigen::ArrayXd theta, sin_theta, cos_theta;
  Eigen::ArrayXd phi, cos_phi, sin_phi;
};

const TrigGrid& unit_grid(int n_theta, int n_phi) {
  static std::mutex mu;
  static std::map<std::pair<int, int>, std::unique_ptr<TrigGrid>> cache;
  std::scoped_lock lock(mu);
  auto& slot = cache[{n_theta, n_phi}];
  if (!slot) {
    auto g = std::make_unique<TrigGrid>();
    g->theta.resize(n_theta);
    for (int i = 0; i < n_theta; ++i) g->theta[i] = (i + 0.5) * kPi / n_theta;
    g->sin_theta = g->theta.sin();
    g->cos_theta = g->theta.cos();
    g->phi.resize(n_phi);
    for (int j = 0; j < n_phi; ++j) g->phi[j] = -kPi + (j + 0.5) * 2.0 * kPi / n_phi;
    g->cos_phi = g->phi.cos();
    g->sin_phi = g->phi.sin();
    slot = std::move(g);
  }
  return *slot;
}

void check_spec(const ArraySpec& spec) {
  const auto n = spec.positions.cols();
  if (n < 1 || spec.currents.size() != n)
    throw std::invalid_argument("array spec: positions/currents must have equal length >= 1");
  if (!(spec.wavelength > 0)) throw std::invalid_argument("array spec: wavelength must be > 0");
  if ((spec.currents.array() < 0.0).any() || (spec.currents.array() > 1.0).any())
    throw std::invalid_argument("array spec: currents must lie in [0,1]");
}

double sigmoid_denominator(double theta_deg, const RfParams& rf) {
  return 1.0 + rf.alpha_a * std::exp(-rf.alpha_b * (theta_deg - rf.alpha_a));
}

// Elevation of the array center seen from the vessel, degrees.
double elevation_deg(const Vec3& center, const Vec3& vessel, double d) {
  const double s = std::clamp((center.z() - vessel.z()) / d, -1.0, 1.0);
  return std::asin(s) * 180.0 / kPi;
}

double frequency_term_db(double f_c_mhz) { return 20.0 * std::log10(4.0 * kPi * f_c_mhz / 300.0); }

// Accumulates Re/Im of the array factor along one constant-theta grid row.
void af_row(const ArraySpec& spec, const TrigGrid& g, int i, Eigen::ArrayXd& ph,
            Eigen::ArrayXd& re, Eigen::ArrayXd& im) {
  const double k = 2.0 * kPi / spec.wavelength;
  const double st = g.sin_theta[i], ct = g.cos_theta[i];
  const int np = static_cast<int>(g.phi.size());
  re.setZero();
  im.setZero();
  for (Eigen::Index m = 0; m < spec.positions.cols(); ++m) {
    const double cm = spec.currents[m];
    if (cm == 0.0) continue;
    detail::accumulate_af_row(g.cos_phi.data(), g.sin_phi.data(), np,
                              k * spec.positions(0, m) * st, k * spec.positions(1, m) * st,
                              k * spec.positions(2, m) * ct, cm, ph.data(), re.data(),
                              im.data());
  }
}

}  // namespace

ArraySpec make_array_spec(const std::vector<Vec3>& positions, const Eigen::VectorXd& currents,
                          double wavelength) {
  ArraySpec s;
  s.positions.resize(3, static_cast<Eigen::Index>(positions.size()));
  for (std::size_t i = 0; i < positions.size(); ++i) s.positions.col(i) = positions[i];
  s.currents = currents;
  s.wavelength = wavelength;
  check_spec(s);
  return s;
}

Vec3 array_center(const ArraySpec& spec) { return spec.positions.rowwise().mean(); }

std::complex<double> array_factor(const ArraySpec& spec, double theta, double phi) {
  check_spec(spec);
  const double k = 2.0 * kPi / spec.wavelength;
  const double st = std::sin(theta), ct = std::cos(theta);
  const double ux = st * std::cos(phi), uy = st * std::sin(phi);
  double re = 0.0, im = 0.0;
  for (Eigen::Index m = 0; m < spec.positions.cols(); ++m) {
    const double phase =
        k * (spec.positions(0, m) * ux + spec.positions(1, m) * uy + spec.positions(2, m) * ct);
    re += spec.currents[m] * std::cos(phase);
    im += spec.currents[m] * std::sin(phase);
  }
  return {re, im};
}

double array_power_integral(const ArraySpec& spec, int n_theta, int n_phi) {
  check_spec(spec);
  if (n_theta < 16 || n_phi < 16)
    throw std::invalid_argument("quadrature grids need at least 16 points per axis");
  const TrigGrid& g = unit_grid(n_theta, n_phi);
  Eigen::ArrayXd ph(n_phi), re(n_phi), im(n_phi);
  double acc = 0.0;
  for (int i = 0; i < n_theta; ++i) {
    af_row(spec, g, i, ph, re, im);
    acc += (re * re + im * im).sum() * g.sin_theta[i];
  }
  return acc * (kPi / n_theta) * (2.0 * kPi / n_phi);
}

double antenna_gain(const ArraySpec& spec, double target_theta, double target_phi, double eta,
                    double power_integral) {
  if (!(power_integral > 1e-280) || !std::isfinite(power_integral))
    throw zero_power_error("zero-power array: all excitation currents are (numerically) zero");
  const std::complex<double> af = array_factor(spec, target_theta, target_phi);
  return 4.0 * kPi * std::norm(af) * eta / power_integral;
}

double antenna_gain(const ArraySpec& spec, double target_theta, double target_phi, double eta,
                    int n_theta, int n_phi) {
  return antenna_gain(spec, target_theta, target_phi, eta,
                      array_power_integral(spec, n_theta, n_phi));
}

std::pair<double, double> direction_to(const Vec3& center, const Vec3& vessel) {
  const Vec3 d = vessel - center;
  if (d.norm() == 0.0) throw std::invalid_argument("direction_to: coincident points");
  const double theta = std::atan2(std::hypot(d.x(), d.y()), d.z());
  double phi = std::atan2(d.y(), d.x());
  if (phi <= -kPi) phi = kPi;
  return {theta, phi};
}

double path_loss_relay_db(const Vec3& center, const Vec3& vessel, const RfParams& rf) {
  const double d = (center - vessel).norm();
  if (d == 0.0) throw std::invalid_argument("path_loss_relay_db: zero distance");
  const double theta_deg = elevation_deg(center, vessel, d);
  return rf.a_u / sigmoid_denominator(theta_deg, rf) + 20.0 * std::log10(d) + rf.c_r +
         frequency_term_db(rf.f_c_mhz);
}

double path_loss_jammer_db(const Vec3& center, const Vec3& vessel, const RfParams& rf) {
  const double d = (center - vessel).norm();
  if (d == 0.0) throw std::invalid_argument("path_loss_jammer_db: zero distance");
  const double theta_deg = elevation_deg(center, vessel, d);
  return (rf.eta_los - rf.eta_nlos) / sigmoid_denominator(theta_deg, rf) + rf.eta_nlos +
         20.0 * (std::log10(4.0 * kPi * rf.f_c_mhz / 300.0) + std::log10(d));
}

double sinr_db(const ArraySpec& relay, const ArraySpec& jammer, const Vec3& vessel,
               const RfParams& rf, int n_ur, int n_uj, double relay_integral,
               double jammer_integral) {
  const Vec3 rc = array_center(relay);
  const auto [rth, rph] = direction_to(rc, vessel);
  const double g_r = antenna_gain(relay, rth, rph, rf.eta, relay_integral);
  const double pl_r = path_loss_relay_db(rc, vessel, rf);
  const double signal = rf.p_ur * n_ur * g_r * std::pow(10.0, -pl_r / 10.0);

  double jam = 0.0;
  if (!(jammer.currents.array() == 0.0).all()) {
    const Vec3 jc = array_center(jammer);
    const auto [jth, jph] = direction_to(jc, vessel);
    const double g_j = antenna_gain(jammer, jth, jph, rf.eta, jammer_integral);
    const double pl_j = path_loss_jammer_db(jc, vessel, rf);
    jam = rf.p_uj * n_uj * g_j * std::pow(10.0, -pl_j / 10.0);
  }
  return 10.0 * std::log10(signal / (jam + rf.sigma2_w));
}

double sinr_db(const ArraySpec& relay, const ArraySpec& jammer, const Vec3& vessel,
               const RfParams& rf, int n_ur, int n_uj, int n_theta, int n_phi) {
  const double d_r = array_power_integral(relay, n_theta, n_phi);
  const double d_j = (jammer.currents.array() == 0.0).all()
                         ? 0.0
                         : array_power_integral(jammer, n_theta, n_phi);
  return sinr_db(relay, jammer, vessel, rf, n_ur, n_uj, d_r, d_j);
}

GainMap make_gain_map(const ArraySpec& spec, double eta, int n_theta, int n_phi) {
  const double integral = array_power_integral(spec, n_theta, n_phi);
  if (!(integral > 1e-280) || !std::isfinite(integral))
    throw zero_power_error("zero-power array: all excitation currents are (numerically) zero");
  const TrigGrid& g = unit_grid(n_theta, n_phi);
  GainMap map;
  map.theta = g.theta.matrix();
  map.phi = g.phi.matrix();
  map.gain.resize(n_theta, n_phi);
  Eigen::ArrayXd ph(n_phi), re(n_phi), im(n_phi);
  const double scale = 4.0 * kPi * eta / integral;
  for (int i = 0; i < n_theta; ++i) {
    af_row(spec, g, i, ph, re, im);
    map.gain.row(i) = (scale * (re * re + im * im)).matrix();
  }
  return map;
}

std::string gain_map_csv(const GainMap& map) {
  std::string out = "theta_rad,phi_rad,gain_linear,gain_dbi\n";
  for (Eigen::Index i = 0; i < map.theta.size(); ++i)
    for (Eigen::Index j = 0; j < map.phi.size(); ++j) {
      const double lin = map.gain(i, j);
      const double dbi = lin > 0.0 ? 10.0 * std::log10(lin) : -std::numeric_limits<double>::infinity();
      out += fmt_g17(map.theta[i]);
      out += ',';
      out += fmt_g17(map.phi[j]);
      out += ',';
      out += fmt_g17(lin);
      out += ',';
      out += fmt_g17(dbi);
      out += '\n';
    }
  return out;
}

std::pair<int, int> gain_map_argmax(const GainMap& map) {
  Eigen::Index i = 0, j = 0;
  map.gain.maxCoeff(&i, &j);
  return {static_cast<int>(i), static_cast<int>(j)};
}

std::pair<int, int> gain_map_cell(const GainMap& map, double theta, double phi) {
  const int nt = static_cast<int>(map.theta.size());
  const int np = static_cast<int>(map.phi.size());
  int i = static_cast<int>(std::floor(theta / (kPi / nt)));
  int j = static_cast<int>(std::floor((phi + kPi) / (2.0 * kPi / np)));
  return {std::clamp(i, 0, nt - 1), std::clamp(j, 0, np - 1)};
}

}  // namespace cb
