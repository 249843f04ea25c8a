#include "sdcm/cli.hpp"

#include <CLI11.hpp>

#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <optional>

#include "sdcm/csv_io.hpp"
#include "sdcm/scenario.hpp"

namespace sdcm {

namespace {

constexpr int kExitConfigError = 2;
constexpr int kExitDiverged = 3;

struct Overrides {
  std::optional<double> dt;
  std::optional<double> rate;
  std::optional<double> k_l;
  std::optional<double> k_a;
  std::optional<double> eta;
  std::optional<bool> cop;
  std::optional<bool> ff;
  std::optional<bool> continuous;
};

void apply(const Overrides& o, SimConfig& config) {
  if (o.dt) config.dt = *o.dt;
  if (o.rate) config.control_rate = *o.rate;
  if (o.k_l) config.params.k_l = *o.k_l;
  if (o.k_a) config.params.k_a = *o.k_a;
  if (o.eta) config.params.eta = *o.eta;
  if (o.k_l || o.k_a || o.eta) {
    config.params.b = 0.0;  // force re-derivation
    config.params.finalize();
  }
  if (o.cop) config.control.cop_constraint = *o.cop;
  if (o.ff) {
    config.control.feedforward_lin = *o.ff;
    config.control.feedforward_ang = *o.ff;
  }
  if (o.continuous) config.continuous_control = *o.continuous;
  config.validate();
}

std::string default_out_dir() {
  if (const char* env = std::getenv("SDCM_OUT_DIR")) return env;
  return "out";
}

void write_file(const std::filesystem::path& path, const std::string& text) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw std::runtime_error("cannot write " + path.string());
  f << text;
}

int cmd_run(const std::string& scenario, const std::string& out_dir,
            const Overrides& overrides, bool plot_data) {
  SimConfig config;
  TrajectoryLog log;
  try {
    config = load_scenario(scenario);
    apply(overrides, config);
    log = run_scenario(config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }

  namespace fs = std::filesystem;
  fs::create_directories(out_dir);
  write_file(fs::path(out_dir) / "trajectory.csv", trajectory_csv(log));
  write_file(fs::path(out_dir) / "summary.json", summary_json(log, config));
  write_file(fs::path(out_dir) / "config.json", scenario_to_json(config));
  if (plot_data) write_plot_data(log, (fs::path(out_dir) / "plot").string());

  const RunSummary& s = log.summary;
  std::printf("scenario     %s\n",
              config.scenario_id.empty() ? "<unnamed>"
                                         : config.scenario_id.c_str());
  std::printf("rows         %zu (%.3f s at %.0f Hz)\n", s.n_rows, s.duration,
              config.control_rate);
  std::printf("peak |r_cop| %.6f m (threshold %.3f m, %d saturated ticks)\n",
              s.peak_abs_cop, config.params.r_cop_thres, s.n_saturated_ticks);
  std::printf("tracking     max lin %.3e m, max ang %.3e rad\n", s.max_lin_err,
              s.max_ang_err);
  std::printf("final theta  %.6f rad after %d setpoint switches\n",
              s.final_theta, s.n_setpoint_switches);
  std::printf("outputs      %s\n", out_dir.c_str());
  if (log.diverged) {
    std::cerr << "error: " << log.message << " (partial log written)\n";
    return kExitDiverged;
  }
  return 0;
}

int cmd_analyze(const std::string& scenario, const Overrides& overrides) {
  SimConfig config;
  try {
    config = load_scenario(scenario);
    apply(overrides, config);
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitConfigError;
  }
  const PlannerParams& p = config.params;
  const SystemMatrices sys = closed_loop_matrices(p);
  const DcmOpenLoop open = open_loop_matrices(p);

  std::printf("derived constants\n");
  std::printf("  b     = %.10g s\n", p.b);
  std::printf("  s     = %.10g kg/s^2\n", p.s);
  std::printf("  gamma = %.10g N m/rad\n", p.gamma);
  std::printf("closed-loop eigenvalues (8-state stack)\n ");
  for (int i = 0; i < 8; ++i) {
    std::printf(" %.10g", sys.stacked.eigenvalues(i));
  }
  const bool stable = (sys.stacked.eigenvalues.array() < 0.0).all();
  std::printf("\nverdict: %s\n", stable ? "stable" : "UNSTABLE");
  std::printf("open-loop roots (DCM dynamics without feedback)\n");
  std::printf("  +1/b   = %.10g (unstable)\n", open.eigenvalues(0));
  std::printf("  +1/eta = %.10g (unstable)\n", open.eigenvalues(3));
  return 0;
}

int cmd_list() {
  for (const auto& s : bundled_scenarios()) {
    std::printf("%-14s %s\n", s.name.c_str(), s.description.c_str());
  }
  return 0;
}

}  // namespace

int cli_main(int argc, const char* const* argv) {
  CLI::App app{"Spatial DCM planner, controller and simulator"};
  app.require_subcommand(1);

  std::string scenario;
  std::string out_dir = default_out_dir();
  bool plot_data = false;
  Overrides overrides;

  auto add_overrides = [&](CLI::App* cmd) {
    cmd->add_option("--dt", overrides.dt, "integration step [s]");
    cmd->add_option("--control-rate", overrides.rate, "controller rate [Hz]");
    cmd->add_option("--kl", overrides.k_l, "linear tracking gain");
    cmd->add_option("--ka", overrides.k_a, "angular tracking gain");
    cmd->add_option("--eta", overrides.eta, "angular DCM time constant [s]");
    cmd->add_flag("--cop,!--no-cop", overrides.cop,
                  "enable/disable the CoP constraint");
    cmd->add_flag("--ff,!--no-ff", overrides.ff,
                  "enable/disable reference feedforward (both channels)");
    cmd->add_flag("--continuous", overrides.continuous,
                  "re-evaluate the control laws inside integrator stages");
  };

  CLI::App* run = app.add_subcommand("run", "simulate a scenario, write logs");
  run->add_option("scenario", scenario,
                  "bundled scenario name or config file path")
      ->required();
  run->add_option("-o,--out", out_dir,
                  "output directory (default $SDCM_OUT_DIR or ./out)");
  run->add_flag("--plot-data", plot_data, "also write per-signal .dat files");
  add_overrides(run);

  CLI::App* analyze =
      app.add_subcommand("analyze", "derived constants and eigenstructure");
  analyze->add_option("scenario", scenario,
                      "bundled scenario name or config file path")
      ->required();
  add_overrides(analyze);

  app.add_subcommand("list-scenarios", "list bundled scenarios");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    return app.exit(e);
  }

  if (run->parsed()) return cmd_run(scenario, out_dir, overrides, plot_data);
  if (analyze->parsed()) return cmd_analyze(scenario, overrides);
  return cmd_list();
}

}  // namespace sdcm
