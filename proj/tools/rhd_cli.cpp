// Batch driver for the RHD solver: run a scenario, build a convergence
// table, or execute the theorem property battery.

#include <CLI11.hpp>
#include <iostream>

#include "rhd/run.hpp"
#include "rhd/scenarios.hpp"
#include "rhd/verify.hpp"

namespace {

void add_run_options(CLI::App* cmd, rhd::RunConfig& config,
                     std::string& config_path, std::string& limiter,
                     std::string& scheme) {
  cmd->add_option("--config", config_path,
                  "plain-text config file (key = value lines)");
  cmd->add_option("--scenario", config.scenario, "built-in scenario name");
  cmd->add_option("-k,--degree", config.degree, "polynomial degree (0..3)");
  cmd->add_option("--nx", config.cells[0], "cells along x");
  cmd->add_option("--ny", config.cells[1], "cells along y (2D; default nx)");
  cmd->add_option("--cfl", config.cfl, "practical CFL number");
  cmd->add_option("--dt", config.dt, "fixed time step override");
  cmd->add_option("--dt-coeff", config.dt_coeff,
                  "time-step law dt = coeff * dx^power");
  cmd->add_option("--dt-power", config.dt_power, "exponent of the dt law");
  cmd->add_option("--t-final", config.t_final, "final time override");
  cmd->add_option("--limiter", limiter, "none | bp | irp | irp_qtilde");
  cmd->add_option("--scheme", scheme, "fe | ssprk3 | sspms3");
  cmd->add_option("--gamma", config.gamma, "adiabatic index override");
  cmd->add_option("--s0", config.s0, "entropy floor override");
  cmd->add_option("-o,--outdir", config.outdir, "output directory");
  cmd->add_option("--snapshot-interval", config.snapshot_interval,
                  "time between snapshots (final always written)");
  cmd->add_flag("--no-monitor", [&config](std::int64_t) {
    config.monitor = false;
  }, "disable the entropy-minimum monitor");
  cmd->add_option("--seed", config.seed, "random seed for property suites");
  cmd->add_option("--threads", config.threads,
                  "worker threads (default: RHD_NUM_THREADS or 1)");
}

rhd::RunConfig assemble_config(const CLI::App* cmd,
                               const rhd::RunConfig& from_flags,
                               const std::string& config_path,
                               const std::string& limiter,
                               const std::string& scheme) {
  rhd::RunConfig config = from_flags;
  if (!config_path.empty()) {
    // Flags given on the command line win over the file.
    const auto keep = [&](const char* flag) {
      return cmd->count(flag) > 0;
    };
    rhd::RunConfig merged = rhd::load_config_file(config_path);
    if (keep("--scenario")) merged.scenario = from_flags.scenario;
    if (keep("--degree") || keep("-k")) merged.degree = from_flags.degree;
    if (keep("--nx")) merged.cells[0] = from_flags.cells[0];
    if (keep("--ny")) merged.cells[1] = from_flags.cells[1];
    if (keep("--cfl")) merged.cfl = from_flags.cfl;
    if (keep("--dt")) merged.dt = from_flags.dt;
    if (keep("--dt-coeff")) merged.dt_coeff = from_flags.dt_coeff;
    if (keep("--dt-power")) merged.dt_power = from_flags.dt_power;
    if (keep("--t-final")) merged.t_final = from_flags.t_final;
    if (keep("--gamma")) merged.gamma = from_flags.gamma;
    if (keep("--s0")) merged.s0 = from_flags.s0;
    if (keep("--outdir") || keep("-o")) merged.outdir = from_flags.outdir;
    if (keep("--snapshot-interval")) {
      merged.snapshot_interval = from_flags.snapshot_interval;
    }
    if (keep("--no-monitor")) merged.monitor = from_flags.monitor;
    if (keep("--seed")) merged.seed = from_flags.seed;
    if (keep("--threads")) merged.threads = from_flags.threads;
    config = merged;
  }
  if (!limiter.empty()) config.limiter = rhd::parse_limiter_mode(limiter);
  if (!scheme.empty()) config.scheme = rhd::parse_time_scheme(scheme);
  return config;
}

void print_summary(const rhd::RunSummary& summary) {
  std::cout << "scenario: " << summary.scenario << "\n"
            << "steps: " << summary.steps << " (t = " << summary.t_end
            << ")\n";
  if (summary.has_error_norms) {
    std::cout << "density error: l1 = " << summary.l1
              << ", l2 = " << summary.l2 << "\n";
  }
  if (!summary.smin_series.empty()) {
    std::cout << "entropy floor: " << summary.s0
              << ", min over points: " << summary.smin_points_min
              << ", min over averages: " << summary.smin_averages_min << "\n";
  }
  std::cout << "irp verdict: " << (summary.irp_verdict ? "true" : "false")
            << "\n"
            << "wall time: " << summary.wall_seconds << " s\n";
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Invariant-region-preserving DG solver for special "
               "relativistic hydrodynamics"};
  app.require_subcommand(1);

  rhd::RunConfig config;
  std::string config_path, limiter_word, scheme_word;

  auto* run_cmd = app.add_subcommand("run", "run one scenario");
  add_run_options(run_cmd, config, config_path, limiter_word, scheme_word);

  auto* conv_cmd =
      app.add_subcommand("converge", "error table over a resolution sweep");
  std::vector<int> resolutions;
  add_run_options(conv_cmd, config, config_path, limiter_word, scheme_word);
  conv_cmd->add_option("--resolutions", resolutions,
                       "cell counts, e.g. --resolutions 40 80 160 320")
      ->expected(-1);

  auto* verify_cmd = app.add_subcommand(
      "verify", "run the theorem property battery and print pass/fail lines");
  rhd::VerifyOptions verify_options;
  verify_cmd->add_option("--seed", verify_options.seed, "random seed");
  verify_cmd->add_option("--sample-scale", verify_options.sample_scale,
                         "multiplier on the per-check sample counts");

  CLI11_PARSE(app, argc, argv);

  try {
    if (run_cmd->parsed()) {
      const rhd::RunConfig merged = assemble_config(
          run_cmd, config, config_path, limiter_word, scheme_word);
      print_summary(rhd::run(merged));
    } else if (conv_cmd->parsed()) {
      rhd::RunConfig merged = assemble_config(conv_cmd, config, config_path,
                                              limiter_word, scheme_word);
      if (resolutions.empty()) {
        throw rhd::ConfigError("converge: need --resolutions");
      }
      const auto rows = rhd::convergence_table(merged, resolutions);
      std::cout << rhd::format_convergence_table(rows);
    } else {
      const auto results = rhd::run_verification(verify_options);
      if (!rhd::print_verification(results, std::cout)) return 1;
    }
  } catch (const rhd::IrpViolation& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const rhd::RecoveryError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const rhd::NonConvergence& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 3;
  } catch (const rhd::Error& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
  return 0;
}
