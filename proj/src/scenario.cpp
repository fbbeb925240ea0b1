#include "cb/scenario.hpp"

#include <json.hpp>
#include <random>
#include <sstream>

namespace cb {
namespace {

using nlohmann::json;

double num_at(const json& j, const std::string& path, const char* key, double fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number()) throw config_error(path + "." + key + ": expected a number");
  return v.get<double>();
}

int int_at(const json& j, const std::string& path, const char* key, int fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_integer()) throw config_error(path + "." + key + ": expected an integer");
  return v.get<int>();
}

std::uint64_t u64_at(const json& j, const std::string& path, const char* key,
                     std::uint64_t fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_number_unsigned() && !v.is_number_integer())
    throw config_error(path + "." + key + ": expected an integer");
  return v.get<std::uint64_t>();
}

Vec3 vec3_at(const json& j, const std::string& path, const char* key, const Vec3& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  if (!v.is_array() || v.size() != 3) throw config_error(path + "." + key + ": expected [x,y,z]");
  return Vec3(v[0].get<double>(), v[1].get<double>(), v[2].get<double>());
}

Box box_at(const json& j, const std::string& path, const char* key, const Box& fallback) {
  if (!j.contains(key)) return fallback;
  const auto& v = j.at(key);
  Box b = fallback;
  const char* axes[3] = {"x", "y", "z"};
  for (int a = 0; a < 3; ++a) {
    if (!v.contains(axes[a])) continue;
    const auto& r = v.at(axes[a]);
    if (!r.is_array() || r.size() != 2)
      throw config_error(path + "." + key + "." + axes[a] + ": expected [lo,hi]");
    b.lo[a] = r[0].get<double>();
    b.hi[a] = r[1].get<double>();
  }
  return b;
}

void require(bool ok, const std::string& msg) {
  if (!ok) throw config_error(msg);
}

std::string num_str(double v) {
  std::ostringstream os;
  os.precision(17);
  os << v;
  return os.str();
}

}  // namespace

ScenarioConfig default_config() { return ScenarioConfig{}; }

ScenarioConfig load_config(const std::string& document) {
  json j;
  try {
    j = json::parse(document);
  } catch (const json::parse_error& e) {
    throw config_error(std::string("config parse failure: ") + e.what());
  }
  ScenarioConfig c;
  if (j.contains("geometry")) {
    const auto& g = j.at("geometry");
    c.geometry.bob_pos = vec3_at(g, "geometry", "bob", c.geometry.bob_pos);
    c.geometry.willie_pos = vec3_at(g, "geometry", "willie", c.geometry.willie_pos);
    c.geometry.lbs_pos = vec3_at(g, "geometry", "lbs", c.geometry.lbs_pos);
    c.geometry.relay_box = box_at(g, "geometry", "relay_box", c.geometry.relay_box);
    c.geometry.jammer_box = box_at(g, "geometry", "jammer_box", c.geometry.jammer_box);
    c.geometry.sea_level = num_at(g, "geometry", "sea_level", c.geometry.sea_level);
  }
  if (j.contains("rf")) {
    const auto& r = j.at("rf");
    auto& rf = c.rf;
    rf.f_c_mhz = num_at(r, "rf", "f_c_mhz", rf.f_c_mhz);
    rf.p_ur = num_at(r, "rf", "p_ur", rf.p_ur);
    rf.p_uj = num_at(r, "rf", "p_uj", rf.p_uj);
    rf.sigma2_w = num_at(r, "rf", "sigma2_w", rf.sigma2_w);
    rf.eta = num_at(r, "rf", "eta", rf.eta);
    rf.alpha_a = num_at(r, "rf", "alpha_a", rf.alpha_a);
    rf.alpha_b = num_at(r, "rf", "alpha_b", rf.alpha_b);
    rf.c_r = num_at(r, "rf", "c_r", rf.c_r);
    rf.eta_los = num_at(r, "rf", "eta_los", rf.eta_los);
    rf.eta_nlos = num_at(r, "rf", "eta_nlos", rf.eta_nlos);
    rf.a_u = num_at(r, "rf", "a_u", rf.eta_los - rf.eta_nlos);
    rf.c_u = num_at(r, "rf", "c_u", rf.c_u);
    rf.d_min = num_at(r, "rf", "d_min", rf.d_min);
  }
  if (j.contains("energy")) {
    const auto& e = j.at("energy");
    auto& en = c.energy;
    en.p_i = num_at(e, "energy", "p_i", en.p_i);
    en.p_b = num_at(e, "energy", "p_b", en.p_b);
    en.v_m = num_at(e, "energy", "v_m", en.v_m);
    en.v_t = num_at(e, "energy", "v_t", en.v_t);
    en.d_f = num_at(e, "energy", "d_f", en.d_f);
    en.s_r = num_at(e, "energy", "s_r", en.s_r);
    en.rho_a = num_at(e, "energy", "rho_a", en.rho_a);
    en.a_r = num_at(e, "energy", "a_r", en.a_r);
    en.m_u = num_at(e, "energy", "m_u", en.m_u);
    en.g = num_at(e, "energy", "g", en.g);
    en.v_f = num_at(e, "energy", "v_f", en.v_f);
    en.v_f_max = num_at(e, "energy", "v_f_max", en.v_f_max);
  }
  c.n_ur = int_at(j, "", "n_ur", c.n_ur);
  c.n_uj = int_at(j, "", "n_uj", c.n_uj);
  if (j.contains("opt")) {
    const auto& o = j.at("opt");
    auto& op = c.opt;
    op.n_pop = int_at(o, "opt", "n_pop", op.n_pop);
    op.t_max = int_at(o, "opt", "t_max", op.t_max);
    op.archive_cap = int_at(o, "opt", "archive_cap", op.n_pop);
    op.seed = u64_at(o, "opt", "seed", op.seed);
    op.tent_a = num_at(o, "opt", "tent_a", op.tent_a);
    op.woa_b = num_at(o, "opt", "woa_b", op.woa_b);
    op.aoa_alpha = num_at(o, "opt", "aoa_alpha", op.aoa_alpha);
    op.aoa_mu = num_at(o, "opt", "aoa_mu", op.aoa_mu);
    op.aoa_eps = num_at(o, "opt", "aoa_eps", op.aoa_eps);
    op.moa_min = num_at(o, "opt", "moa_min", op.moa_min);
    op.moa_max = num_at(o, "opt", "moa_max", op.moa_max);
    op.g_inertia = num_at(o, "opt", "g_inertia", op.g_inertia);
    op.a1 = num_at(o, "opt", "a1", op.a1);
    op.a2 = num_at(o, "opt", "a2", op.a2);
    op.a3 = num_at(o, "opt", "a3", op.a3);
    op.beta = num_at(o, "opt", "beta", op.beta);
    op.dance_d = num_at(o, "opt", "dance_d", op.dance_d);
    op.walk_fl = num_at(o, "opt", "walk_fl", op.walk_fl);
    op.n_theta_opt = int_at(o, "opt", "n_theta_opt", op.n_theta_opt);
    op.n_phi_opt = int_at(o, "opt", "n_phi_opt", op.n_phi_opt);
    op.n_theta_report = int_at(o, "opt", "n_theta_report", op.n_theta_report);
    op.n_phi_report = int_at(o, "opt", "n_phi_report", op.n_phi_report);
    op.grid_levels = int_at(o, "opt", "grid_levels", op.grid_levels);
    op.eval_threads = int_at(o, "opt", "eval_threads", op.eval_threads);
  } else {
    c.opt.archive_cap = c.opt.n_pop;
  }
  validate(c);
  return c;
}

void validate(const ScenarioConfig& c) {
  const auto check_box = [](const Box& b, const std::string& name) {
    for (int a = 0; a < 3; ++a)
      require(b.lo[a] < b.hi[a], name + ": lo " + num_str(b.lo[a]) + " must be < hi " +
                                     num_str(b.hi[a]));
  };
  check_box(c.geometry.relay_box, "geometry.relay_box");
  check_box(c.geometry.jammer_box, "geometry.jammer_box");

  require(c.rf.f_c_mhz > 0, "rf.f_c_mhz: must be > 0, got " + num_str(c.rf.f_c_mhz));
  require(c.rf.p_ur > 0, "rf.p_ur: must be > 0, got " + num_str(c.rf.p_ur));
  require(c.rf.p_uj >= 0, "rf.p_uj: must be >= 0, got " + num_str(c.rf.p_uj));
  require(c.rf.sigma2_w > 0, "rf.sigma2_w: must be > 0, got " + num_str(c.rf.sigma2_w));
  require(c.rf.eta >= 0 && c.rf.eta <= 1,
          "rf.eta: must be in [0,1], got " + num_str(c.rf.eta));
  require(c.rf.d_min > 0, "rf.d_min: must be > 0, got " + num_str(c.rf.d_min));

  const double ep[] = {c.energy.p_i, c.energy.p_b, c.energy.v_m, c.energy.v_t,
                       c.energy.d_f, c.energy.s_r, c.energy.rho_a, c.energy.a_r,
                       c.energy.m_u, c.energy.g, c.energy.v_f, c.energy.v_f_max};
  for (double v : ep) require(v > 0, "energy: all parameters must be > 0, got " + num_str(v));
  require(c.energy.v_f <= c.energy.v_f_max, "energy.v_f: " + num_str(c.energy.v_f) +
                                                " exceeds v_f_max " + num_str(c.energy.v_f_max));

  require(c.n_ur >= 1, "n_ur: must be >= 1, got " + num_str(c.n_ur));
  require(c.n_uj >= 1, "n_uj: must be >= 1, got " + num_str(c.n_uj));

  const auto& o = c.opt;
  require(o.n_pop >= 2, "opt.n_pop: must be >= 2, got " + num_str(o.n_pop));
  require(o.n_pop % 2 == 0, "opt.n_pop: must be even (male/female pairing), got " +
                                num_str(o.n_pop));
  require(o.t_max >= 1, "opt.t_max: must be >= 1, got " + num_str(o.t_max));
  require(o.archive_cap >= 1, "opt.archive_cap: must be >= 1, got " + num_str(o.archive_cap));
  require(o.tent_a > 0 && o.tent_a < 1,
          "opt.tent_a: must be in (0,1), got " + num_str(o.tent_a));
  require(o.moa_min < o.moa_max, "opt.moa_min: " + num_str(o.moa_min) +
                                     " must be < moa_max " + num_str(o.moa_max));
  require(o.n_theta_opt >= 16 && o.n_phi_opt >= 16 && o.n_theta_report >= 16 &&
              o.n_phi_report >= 16,
          "opt: quadrature grids need at least 16 points per axis");
  require(o.grid_levels == 0 || o.grid_levels >= 2,
          "opt.grid_levels: must be 0 or >= 2, got " + num_str(o.grid_levels));
  require(o.eval_threads >= 1, "opt.eval_threads: must be >= 1, got " + num_str(o.eval_threads));
}

std::string serialize_config(const ScenarioConfig& c) {
  json j;
  j["geometry"] = {
      {"bob", {c.geometry.bob_pos[0], c.geometry.bob_pos[1], c.geometry.bob_pos[2]}},
      {"willie", {c.geometry.willie_pos[0], c.geometry.willie_pos[1], c.geometry.willie_pos[2]}},
      {"lbs", {c.geometry.lbs_pos[0], c.geometry.lbs_pos[1], c.geometry.lbs_pos[2]}},
      {"relay_box",
       {{"x", {c.geometry.relay_box.lo[0], c.geometry.relay_box.hi[0]}},
        {"y", {c.geometry.relay_box.lo[1], c.geometry.relay_box.hi[1]}},
        {"z", {c.geometry.relay_box.lo[2], c.geometry.relay_box.hi[2]}}}},
      {"jammer_box",
       {{"x", {c.geometry.jammer_box.lo[0], c.geometry.jammer_box.hi[0]}},
        {"y", {c.geometry.jammer_box.lo[1], c.geometry.jammer_box.hi[1]}},
        {"z", {c.geometry.jammer_box.lo[2], c.geometry.jammer_box.hi[2]}}}},
      {"sea_level", c.geometry.sea_level}};
  j["rf"] = {{"f_c_mhz", c.rf.f_c_mhz},   {"p_ur", c.rf.p_ur},
             {"p_uj", c.rf.p_uj},         {"sigma2_w", c.rf.sigma2_w},
             {"eta", c.rf.eta},           {"alpha_a", c.rf.alpha_a},
             {"alpha_b", c.rf.alpha_b},   {"c_r", c.rf.c_r},
             {"eta_los", c.rf.eta_los},   {"eta_nlos", c.rf.eta_nlos},
             {"a_u", c.rf.a_u},           {"c_u", c.rf.c_u},
             {"d_min", c.rf.d_min}};
  j["energy"] = {{"p_i", c.energy.p_i},     {"p_b", c.energy.p_b}, {"v_m", c.energy.v_m},
                 {"v_t", c.energy.v_t},     {"d_f", c.energy.d_f}, {"s_r", c.energy.s_r},
                 {"rho_a", c.energy.rho_a}, {"a_r", c.energy.a_r}, {"m_u", c.energy.m_u},
                 {"g", c.energy.g},         {"v_f", c.energy.v_f}, {"v_f_max", c.energy.v_f_max}};
  j["opt"] = {{"n_pop", c.opt.n_pop},
              {"t_max", c.opt.t_max},
              {"archive_cap", c.opt.archive_cap},
              {"seed", c.opt.seed},
              {"tent_a", c.opt.tent_a},
              {"woa_b", c.opt.woa_b},
              {"aoa_alpha", c.opt.aoa_alpha},
              {"aoa_mu", c.opt.aoa_mu},
              {"aoa_eps", c.opt.aoa_eps},
              {"moa_min", c.opt.moa_min},
              {"moa_max", c.opt.moa_max},
              {"g_inertia", c.opt.g_inertia},
              {"a1", c.opt.a1},
              {"a2", c.opt.a2},
              {"a3", c.opt.a3},
              {"beta", c.opt.beta},
              {"dance_d", c.opt.dance_d},
              {"walk_fl", c.opt.walk_fl},
              {"n_theta_opt", c.opt.n_theta_opt},
              {"n_phi_opt", c.opt.n_phi_opt},
              {"n_theta_report", c.opt.n_theta_report},
              {"n_phi_report", c.opt.n_phi_report},
              {"grid_levels", c.opt.grid_levels},
              {"eval_threads", c.opt.eval_threads}};
  j["n_ur"] = c.n_ur;
  j["n_uj"] = c.n_uj;
  return j.dump(2);
}

HoverPoints initial_positions(const ScenarioConfig& config, std::uint64_t seed) {
  std::mt19937_64 rng(seed);
  const auto sample_cluster = [&](const Box& box, int n, const char* name) {
    std::vector<Vec3> pts;
    pts.reserve(n);
    std::uniform_real_distribution<double> ux(box.lo[0], box.hi[0]);
    std::uniform_real_distribution<double> uy(box.lo[1], box.hi[1]);
    std::uniform_real_distribution<double> uz(box.lo[2], box.hi[2]);
    int attempts = 0;
    while (static_cast<int>(pts.size()) < n) {
      if (++attempts > 10000)
        throw config_error(std::string(name) +
                           ": separation resampling budget exhausted (10000 attempts); box too "
                           "small for n*d_min packing");
      Vec3 p(ux(rng), uy(rng), uz(rng));
      bool ok = true;
      for (const auto& q : pts)
        if ((p - q).norm() < config.rf.d_min) {
          ok = false;
          break;
        }
      if (ok) pts.push_back(p);
    }
    return pts;
  };
  HoverPoints h;
  h.relay = sample_cluster(config.geometry.relay_box, config.n_ur, "relay hover");
  h.jammer = sample_cluster(config.geometry.jammer_box, config.n_uj, "jammer hover");
  return h;
}

}  // namespace cb
