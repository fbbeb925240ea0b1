#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "cb/baselines.hpp"
#include "cb/csvio.hpp"
#include "cb/metrics.hpp"

namespace cb {

inline constexpr const char* kToolVersion = "1.0.0";

// Exit codes shared by all commands.
inline constexpr int kExitOk = 0;
inline constexpr int kExitUsage = 1;
inline constexpr int kExitRuntime = 2;

// Log verbosity from the CBSIM_LOG environment variable: quiet | info | debug.
enum class LogLevel { quiet = 0, info = 1, debug = 2 };
LogLevel log_level();
void log_info(const std::string& msg);
void log_debug(const std::string& msg);

struct RunArgs {
  std::string config_path;
  std::string algo = "imoma";  // imoma | moma
  std::vector<std::uint64_t> seeds;
  int iters = 0;  // 0 = keep config value
  int pop = 0;
  std::string out_dir;
  bool fine = false;  // re-evaluate archived entries on the reporting grid before export
};

// Per-seed archive_<seed>.csv, history_<seed>.csv, snapshots_<seed>.csv, plus
// pareto_pool.csv and manifest.json in out_dir.
int cmd_run(const RunArgs& args);

struct GainmapArgs {
  std::string config_path;
  std::string archive_path;
  int entry = 0;
  std::string out_dir;
};

// relay_gainmap.csv and jammer_gainmap.csv at reporting resolution for one entry.
int cmd_gainmap(const GainmapArgs& args);

struct BaselineArgs {
  std::string config_path;
  std::string mode;  // non-cb | single-cb | multihop
  std::string archive_path;  // single-cb relay deployment source
  int entry = 0;
  int hops = 0;          // 0 = default n_ur + n_uj
  double hop_alt = 0.0;  // 0 = default
  double gamma_th = 0.0;
  std::string out_dir;
};

int cmd_baseline(const BaselineArgs& args);

struct MetricsArgs {
  std::string in_dir;  // a cmd_run output directory
  std::string out_dir;
};

// igd_<seed>.csv (iter,igd) against the pooled reference and acr_<seed>.csv
// (iter,acr_f1,acr_f2,acr_f3) per run.
int cmd_metrics(const MetricsArgs& args);

}  // namespace cb
