#include "cb/cli.hpp"

#include <algorithm>
#include <chrono>
#include <cstdlib>
#include <ctime>
#include <filesystem>
#include <iostream>
#include <json.hpp>

#include "cb/channel.hpp"

namespace cb {
namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string iso_utc_now() {
  const std::time_t now = std::time(nullptr);
  std::tm tm{};
  gmtime_r(&now, &tm);
  char buf[32];
  std::strftime(buf, sizeof(buf), "%Y-%m-%dT%H:%M:%SZ", &tm);
  return buf;
}

ScenarioConfig load_config_file(const std::string& path) {
  return load_config(read_file(path));
}

// Re-evaluates archived entries on the reporting quadrature grid.
std::vector<ArchiveEntry> refine_entries(const std::vector<ArchiveEntry>& entries,
                                         const ScenarioConfig& config,
                                         const HoverPoints& hover) {
  ProblemContext fine = make_context(config, hover);
  fine.n_theta = config.opt.n_theta_report;
  fine.n_phi = config.opt.n_phi_report;
  std::vector<ArchiveEntry> out = entries;
  for (auto& e : out) {
    try {
      e.f = evaluate(e.x, fine);
    } catch (const zero_power_error&) {
      // archived entries were evaluable on the coarse grid; keep the coarse objectives
    }
  }
  return out;
}

int fail_runtime(const std::string& msg) {
  std::cerr << "error: " << msg << "\n";
  return kExitRuntime;
}

}  // namespace

LogLevel log_level() {
  const char* env = std::getenv("CBSIM_LOG");
  if (env == nullptr) return LogLevel::info;
  const std::string v(env);
  if (v == "quiet") return LogLevel::quiet;
  if (v == "debug") return LogLevel::debug;
  return LogLevel::info;
}

void log_info(const std::string& msg) {
  if (log_level() >= LogLevel::info) std::cerr << msg << "\n";
}

void log_debug(const std::string& msg) {
  if (log_level() >= LogLevel::debug) std::cerr << "debug: " << msg << "\n";
}

int cmd_run(const RunArgs& args) {
  if (args.algo != "imoma" && args.algo != "moma") {
    std::cerr << "usage: --algo must be imoma or moma\n";
    return kExitUsage;
  }
  if (args.seeds.empty()) {
    std::cerr << "usage: --seeds requires at least one seed\n";
    return kExitUsage;
  }
  if (args.config_path.empty() || args.out_dir.empty()) {
    std::cerr << "usage: --config and --out are required\n";
    return kExitUsage;
  }
  try {
    const auto start_wall = iso_utc_now();
    const auto t0 = std::chrono::steady_clock::now();

    ScenarioConfig config = load_config_file(args.config_path);
    if (args.iters > 0) config.opt.t_max = args.iters;
    if (args.pop > 0) {
      config.opt.n_pop = args.pop;
      config.opt.archive_cap = args.pop;
    }
    validate(config);

    fs::create_directories(args.out_dir);
    const SolutionLayout layout{config.n_ur, config.n_uj};
    std::vector<std::string> files;
    std::vector<ArchiveEntry> pool_candidates;

    for (const std::uint64_t seed : args.seeds) {
      log_info("run: algo=" + args.algo + " seed=" + std::to_string(seed));
      config.opt.seed = seed;
      const HoverPoints hover = initial_positions(config, seed);
      const RunResult result = args.algo == "imoma" ? imoma_run(config, hover, seed)
                                                    : moma_run(config, hover, seed);
      std::vector<ArchiveEntry> entries = result.archive.entries();
      if (args.fine) entries = refine_entries(entries, config, hover);

      const std::string tag = std::to_string(seed);
      const fs::path dir(args.out_dir);
      write_file_atomic(dir / ("archive_" + tag + ".csv"), archive_csv(entries, layout));
      write_file_atomic(dir / ("history_" + tag + ".csv"), history_csv(result.history));
      write_file_atomic(dir / ("snapshots_" + tag + ".csv"), snapshots_csv(result.history));
      files.push_back("archive_" + tag + ".csv");
      files.push_back("history_" + tag + ".csv");
      files.push_back("snapshots_" + tag + ".csv");
      pool_candidates.insert(pool_candidates.end(), entries.begin(), entries.end());
    }

    // Non-dominated union across seeds, deduplicated on objectives.
    std::vector<ArchiveEntry> pool;
    for (const auto& cand : pool_candidates) {
      bool skip = false;
      for (const auto& other : pool_candidates)
        if (dominates(other.f, cand.f)) {
          skip = true;
          break;
        }
      if (!skip)
        for (const auto& p : pool)
          if (p.f == cand.f) {
            skip = true;
            break;
          }
      if (!skip) pool.push_back(cand);
    }
    write_file_atomic(fs::path(args.out_dir) / "pareto_pool.csv", archive_csv(pool, layout));
    files.push_back("pareto_pool.csv");

    const double elapsed =
        std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    json manifest;
    manifest["tool_version"] = kToolVersion;
    manifest["command"] = "run";
    manifest["config_path"] = args.config_path;
    manifest["algo"] = args.algo;
    manifest["seeds"] = args.seeds;
    manifest["iters_override"] = args.iters;
    manifest["pop_override"] = args.pop;
    manifest["fine"] = args.fine;
    manifest["out_dir"] = args.out_dir;
    manifest["wall_clock"] = {{"started_utc", start_wall}, {"elapsed_seconds", elapsed}};
    manifest["resolved_config"] = json::parse(serialize_config(config));
    manifest["files"] = files;
    write_file_atomic(fs::path(args.out_dir) / "manifest.json", manifest.dump(2) + "\n");
    return kExitOk;
  } catch (const std::exception& e) {
    return fail_runtime(e.what());
  }
}

int cmd_gainmap(const GainmapArgs& args) {
  if (args.config_path.empty() || args.archive_path.empty() || args.out_dir.empty()) {
    std::cerr << "usage: --config, --archive and --out are required\n";
    return kExitUsage;
  }
  try {
    const ScenarioConfig config = load_config_file(args.config_path);
    const ParsedArchive archive = parse_archive_csv(read_file(args.archive_path));
    if (archive.layout.n_ur != config.n_ur || archive.layout.n_uj != config.n_uj)
      return fail_runtime("archive fleet shape does not match config");
    if (args.entry < 0 || static_cast<std::size_t>(args.entry) >= archive.entries.size())
      return fail_runtime("entry index out of range (archive has " +
                          std::to_string(archive.entries.size()) + " entries)");
    const auto& e = archive.entries[static_cast<std::size_t>(args.entry)];
    const auto& lay = archive.layout;

    const ArraySpec relay =
        make_array_spec(relay_positions(e.x, lay), e.x.segment(lay.relay_i(), lay.n_ur),
                        config.rf.wavelength());
    const ArraySpec jammer =
        make_array_spec(jammer_positions(e.x, lay), e.x.segment(lay.jammer_i(), lay.n_uj),
                        config.rf.wavelength());

    fs::create_directories(args.out_dir);
    const int nt = config.opt.n_theta_report, np = config.opt.n_phi_report;
    write_file_atomic(fs::path(args.out_dir) / "relay_gainmap.csv",
                      gain_map_csv(make_gain_map(relay, config.rf.eta, nt, np)));
    write_file_atomic(fs::path(args.out_dir) / "jammer_gainmap.csv",
                      gain_map_csv(make_gain_map(jammer, config.rf.eta, nt, np)));
    return kExitOk;
  } catch (const std::exception& e) {
    return fail_runtime(e.what());
  }
}

int cmd_baseline(const BaselineArgs& args) {
  const bool known =
      args.mode == "non-cb" || args.mode == "single-cb" || args.mode == "multihop";
  if (!known) {
    std::cerr << "usage: --mode must be non-cb, single-cb or multihop\n";
    return kExitUsage;
  }
  if (args.config_path.empty() || args.out_dir.empty()) {
    std::cerr << "usage: --config and --out are required\n";
    return kExitUsage;
  }
  try {
    const ScenarioConfig config = load_config_file(args.config_path);
    ObjectiveVector f;
    if (args.mode == "non-cb") {
      f = eval_non_cb(config);
    } else if (args.mode == "single-cb") {
      if (args.archive_path.empty())
        return fail_runtime("single-cb needs --archive for the relay deployment");
      const ParsedArchive archive = parse_archive_csv(read_file(args.archive_path));
      if (archive.layout.n_ur != config.n_ur || archive.layout.n_uj != config.n_uj)
        return fail_runtime("archive fleet shape does not match config");
      if (args.entry < 0 || static_cast<std::size_t>(args.entry) >= archive.entries.size())
        return fail_runtime("entry index out of range");
      f = eval_single_cb(config, archive.entries[static_cast<std::size_t>(args.entry)].x);
    } else {
      MultihopConfig mh = default_multihop(config);
      if (args.hops > 0) mh.hop_count = args.hops;
      if (args.hop_alt > 0.0) mh.altitude_m = args.hop_alt;
      mh.gamma_th_db = args.gamma_th;
      f = eval_multihop(config, mh);
    }
    fs::create_directories(args.out_dir);
    std::string csv = "mode,f1_db,f2_db,f3_j,violation_m\n";
    csv += args.mode;
    csv += ',';
    csv += fmt_g17(f.f1_db);
    csv += ',';
    csv += fmt_g17(f.f2_db);
    csv += ',';
    csv += fmt_g17(f.f3_j);
    csv += ',';
    csv += fmt_g17(f.violation_m);
    csv += '\n';
    write_file_atomic(fs::path(args.out_dir) / ("baseline_" + args.mode + ".csv"), csv);
    return kExitOk;
  } catch (const std::exception& e) {
    return fail_runtime(e.what());
  }
}

int cmd_metrics(const MetricsArgs& args) {
  if (args.in_dir.empty() || args.out_dir.empty()) {
    std::cerr << "usage: --in and --out are required\n";
    return kExitUsage;
  }
  try {
    std::vector<std::string> tags;
    for (const auto& de : fs::directory_iterator(args.in_dir)) {
      const std::string name = de.path().filename().string();
      if (name.rfind("archive_", 0) == 0 && name.size() > 12 &&
          name.compare(name.size() - 4, 4, ".csv") == 0)
        tags.push_back(name.substr(8, name.size() - 12));
    }
    std::sort(tags.begin(), tags.end(), [](const std::string& a, const std::string& b) {
      if (a.size() != b.size()) return a.size() < b.size();
      return a < b;
    });
    if (tags.empty()) return fail_runtime("no archive_<seed>.csv files in " + args.in_dir);

    std::vector<std::vector<ObjectiveVector>> final_sets;
    for (const auto& tag : tags) {
      const auto parsed =
          parse_archive_csv(read_file(fs::path(args.in_dir) / ("archive_" + tag + ".csv")));
      std::vector<ObjectiveVector> objs;
      objs.reserve(parsed.entries.size());
      for (const auto& e : parsed.entries) objs.push_back(e.f);
      final_sets.push_back(std::move(objs));
    }
    const auto reference = pareto_pool(final_sets);
    if (reference.empty()) return fail_runtime("empty pooled reference front");

    fs::create_directories(args.out_dir);
    for (const auto& tag : tags) {
      const auto snaps =
          parse_snapshots_csv(read_file(fs::path(args.in_dir) / ("snapshots_" + tag + ".csv")));
      std::string igd_csv = "iter,igd\n";
      for (std::size_t t = 0; t < snaps.size(); ++t) {
        if (snaps[t].empty()) continue;
        igd_csv += std::to_string(t + 1);
        igd_csv += ',';
        igd_csv += fmt_g17(igd(snaps[t], reference));
        igd_csv += '\n';
      }
      write_file_atomic(fs::path(args.out_dir) / ("igd_" + tag + ".csv"), igd_csv);

      const auto hist =
          parse_history_csv(read_file(fs::path(args.in_dir) / ("history_" + tag + ".csv")));
      RunHistory rh;
      rh.best_f1 = hist.best_f1;
      rh.best_f2 = hist.best_f2;
      rh.best_f3 = hist.best_f3;
      const auto series = acr(rh);
      std::string acr_csv = "iter,acr_f1,acr_f2,acr_f3\n";
      for (std::size_t t = 0; t < series[0].size(); ++t) {
        acr_csv += std::to_string(t + 2);
        acr_csv += ',';
        acr_csv += fmt_g17(series[0][t]);
        acr_csv += ',';
        acr_csv += fmt_g17(series[1][t]);
        acr_csv += ',';
        acr_csv += fmt_g17(series[2][t]);
        acr_csv += '\n';
      }
      write_file_atomic(fs::path(args.out_dir) / ("acr_" + tag + ".csv"), acr_csv);
    }
    return kExitOk;
  } catch (const std::exception& e) {
    return fail_runtime(e.what());
  }
}

}  // namespace cb
