#include "cb/baselines.hpp"

#include <algorithm>
#include <cmath>
#include <limits>

#include "cb/channel.hpp"
#include "cb/energy.hpp"

namespace cb {
namespace {

Vec3 clamp_to_box(const Vec3& p, const Box& box) {
  return Vec3{std::clamp(p.x(), box.lo.x(), box.hi.x()),
              std::clamp(p.y(), box.lo.y(), box.hi.y()),
              std::clamp(p.z(), box.lo.z(), box.hi.z())};
}

double db_to_linear(double db) { return std::pow(10.0, -db / 10.0); }

// Free-space loss with distance in km and carrier in MHz.
double free_space_db(double d_m, double f_mhz, double const_db) {
  return const_db + 20.0 * std::log10(d_m / 1000.0) + 20.0 * std::log10(f_mhz);
}

}  // namespace

MultihopConfig default_multihop(const ScenarioConfig& config) {
  MultihopConfig mh;
  mh.hop_count = config.n_ur + config.n_uj;
  mh.altitude_m =
      0.5 * (config.geometry.relay_box.lo.z() + config.geometry.relay_box.hi.z());
  return mh;
}

ObjectiveVector eval_non_cb(const ScenarioConfig& config) {
  const auto& geo = config.geometry;
  const auto& rf = config.rf;
  const HoverPoints hover = initial_positions(config, config.opt.seed);
  const Vec3 relay_pos = hover.relay.front();
  const Vec3 jam_hover = hover.jammer.front();
  const Vec3 jam_pos = clamp_to_box(geo.willie_pos, geo.jammer_box);

  const auto sinr_at = [&](const Vec3& vessel) {
    const double sig = rf.p_ur * db_to_linear(path_loss_relay_db(relay_pos, vessel, rf));
    const double jam = rf.p_uj * db_to_linear(path_loss_jammer_db(jam_pos, vessel, rf));
    return 10.0 * std::log10(sig / (jam + rf.sigma2_w));
  };

  ObjectiveVector f;
  f.f1_db = sinr_at(geo.bob_pos);
  f.f2_db = sinr_at(geo.willie_pos);
  f.f3_j = flight_energy(FlightLeg{jam_hover, jam_pos, config.energy.v_f}, config.energy);
  return f;
}

ObjectiveVector eval_single_cb(const ScenarioConfig& config, const Eigen::VectorXd& sol) {
  const auto& geo = config.geometry;
  const auto& rf = config.rf;
  const HoverPoints hover = initial_positions(config, config.opt.seed);
  const SolutionLayout layout{config.n_ur, config.n_uj};
  if (sol.size() != layout.dim())
    throw std::invalid_argument("eval_single_cb: solution dimension mismatch");

  const auto relay_pos = relay_positions(sol, layout);
  const Eigen::VectorXd relay_i = sol.segment(layout.relay_i(), config.n_ur);
  const ArraySpec relay = make_array_spec(relay_pos, relay_i, rf.wavelength());
  const double relay_integral =
      array_power_integral(relay, config.opt.n_theta_opt, config.opt.n_phi_opt);
  const Vec3 jam_pos = clamp_to_box(geo.willie_pos, geo.jammer_box);

  const auto sinr_at = [&](const Vec3& vessel) {
    const auto [th, ph] = direction_to(array_center(relay), vessel);
    const double gain = antenna_gain(relay, th, ph, rf.eta, relay_integral);
    const double sig = rf.p_ur * config.n_ur * gain *
                       db_to_linear(path_loss_relay_db(array_center(relay), vessel, rf));
    const double jam = rf.p_uj * db_to_linear(path_loss_jammer_db(jam_pos, vessel, rf));
    return 10.0 * std::log10(sig / (jam + rf.sigma2_w));
  };

  ObjectiveVector f;
  f.f1_db = sinr_at(geo.bob_pos);
  f.f2_db = sinr_at(geo.willie_pos);

  std::vector<FlightLeg> relay_legs;
  relay_legs.reserve(relay_pos.size());
  for (std::size_t k = 0; k < relay_pos.size(); ++k)
    relay_legs.push_back(FlightLeg{hover.relay[k], relay_pos[k], config.energy.v_f});
  const std::vector<FlightLeg> jam_legs{
      FlightLeg{hover.jammer.front(), jam_pos, config.energy.v_f}};
  f.f3_j = fleet_energy(relay_legs, jam_legs, config.energy);

  double viol = 0.0;
  for (std::size_t a = 0; a < relay_pos.size(); ++a)
    for (std::size_t b = a + 1; b < relay_pos.size(); ++b)
      viol += std::max(0.0, rf.d_min - (relay_pos[a] - relay_pos[b]).norm());
  f.violation_m = viol;
  return f;
}

ObjectiveVector eval_multihop(const ScenarioConfig& config, const MultihopConfig& mh) {
  if (mh.hop_count < 1) throw std::invalid_argument("eval_multihop: hop_count must be >= 1");
  const auto& geo = config.geometry;
  const auto& rf = config.rf;
  const int n = mh.hop_count;

  std::vector<Vec3> hops(n);
  for (int k = 1; k <= n; ++k) {
    const double s = static_cast<double>(k) / (n + 1);
    hops[k - 1] = Vec3{geo.lbs_pos.x() + s * (geo.bob_pos.x() - geo.lbs_pos.x()),
                       geo.lbs_pos.y() + s * (geo.bob_pos.y() - geo.lbs_pos.y()),
                       mh.altitude_m};
  }

  // Chain SNRs: LBS -> hop1 and hop_i -> hop_{i+1} over free space, final hop air-to-sea.
  double min_snr = std::numeric_limits<double>::infinity();
  Vec3 prev = geo.lbs_pos;
  for (const auto& h : hops) {
    const double pl = free_space_db((h - prev).norm(), rf.f_c_mhz, mh.fs_const_db);
    min_snr = std::min(min_snr, 10.0 * std::log10(rf.p_ur * db_to_linear(pl) / rf.sigma2_w));
    prev = h;
  }
  const Vec3 last = hops.back();
  const double snr_bob = 10.0 * std::log10(
      rf.p_ur * db_to_linear(path_loss_relay_db(last, geo.bob_pos, rf)) / rf.sigma2_w);
  min_snr = std::min(min_snr, snr_bob);

  ObjectiveVector f;
  if (min_snr >= mh.gamma_th_db) {
    f.f1_db = snr_bob;
    f.f2_db = 10.0 * std::log10(
        rf.p_ur * db_to_linear(path_loss_relay_db(last, geo.willie_pos, rf)) / rf.sigma2_w);
  }  // both stay at the 0 sentinel when any hop fails to decode

  const HoverPoints hover = initial_positions(config, config.opt.seed);
  std::vector<Vec3> pool = hover.relay;
  pool.insert(pool.end(), hover.jammer.begin(), hover.jammer.end());
  std::vector<FlightLeg> legs;
  legs.reserve(hops.size());
  for (std::size_t k = 0; k < hops.size(); ++k) {
    const Vec3 start = k < pool.size() ? pool[k] : geo.lbs_pos;
    legs.push_back(FlightLeg{start, hops[k], config.energy.v_f});
  }
  f.f3_j = fleet_energy(legs, {}, config.energy);
  return f;
}

}  // namespace cb
