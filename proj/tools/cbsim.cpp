#include <CLI11.hpp>

#include "cb/cli.hpp"

int main(int argc, char** argv) {
  CLI::App app{"Collaborative-beamforming UAV swarm simulator"};
  app.require_subcommand(1);
  app.set_version_flag("--version", cb::kToolVersion);

  cb::RunArgs run_args;
  auto* run = app.add_subcommand("run", "Optimize deployments over one or more seeds");
  run->add_option("--config", run_args.config_path, "Scenario config JSON")->required();
  run->add_option("--algo", run_args.algo, "Solver variant")
      ->check(CLI::IsMember({"imoma", "moma"}));
  run->add_option("--seeds", run_args.seeds, "Seed list")->delimiter(',')->required();
  run->add_option("--iters", run_args.iters, "Iteration override");
  run->add_option("--pop", run_args.pop, "Population override");
  run->add_option("--out", run_args.out_dir, "Output directory")->required();
  run->add_flag("--fine", run_args.fine, "Re-evaluate archive on the reporting grid");

  cb::GainmapArgs gm_args;
  auto* gm = app.add_subcommand("gainmap", "Export gain maps for one archived solution");
  gm->add_option("--config", gm_args.config_path, "Scenario config JSON")->required();
  gm->add_option("--archive", gm_args.archive_path, "Archive CSV")->required();
  gm->add_option("--entry", gm_args.entry, "Entry index");
  gm->add_option("--out", gm_args.out_dir, "Output directory")->required();

  cb::BaselineArgs bl_args;
  auto* bl = app.add_subcommand("baseline", "Evaluate a comparison deployment");
  bl->add_option("--config", bl_args.config_path, "Scenario config JSON")->required();
  bl->add_option("--mode", bl_args.mode, "non-cb | single-cb | multihop")->required();
  bl->add_option("--archive", bl_args.archive_path, "Archive CSV (single-cb)");
  bl->add_option("--entry", bl_args.entry, "Entry index (single-cb)");
  bl->add_option("--hops", bl_args.hops, "Multihop relay count");
  bl->add_option("--hop-alt", bl_args.hop_alt, "Multihop altitude, m");
  bl->add_option("--gamma-th", bl_args.gamma_th, "Per-hop decode threshold, dB");
  bl->add_option("--out", bl_args.out_dir, "Output directory")->required();

  cb::MetricsArgs mt_args;
  auto* mt = app.add_subcommand("metrics", "IGD and ACR series for a run directory");
  mt->add_option("--in", mt_args.in_dir, "cmd_run output directory")->required();
  mt->add_option("--out", mt_args.out_dir, "Output directory")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::CallForVersion& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return cb::kExitUsage;
  }

  if (run->parsed()) return cb::cmd_run(run_args);
  if (gm->parsed()) return cb::cmd_gainmap(gm_args);
  if (bl->parsed()) return cb::cmd_baseline(bl_args);
  return cb::cmd_metrics(mt_args);
}
