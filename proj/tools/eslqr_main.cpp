// Scenario runner and verification front end for the error-state LQR stack.
//
//   eslqr run <config.json> [--out DIR]   closed-loop simulation + artifacts
//   eslqr verify                          numerical self-checks
//   eslqr print-gain <config.json>        A, B, K, P at the initial error

#include <cstdio>
#include <filesystem>
#include <iostream>

#include <CLI11.hpp>

#include "eslqr/config.hpp"
#include "eslqr/emit.hpp"
#include "eslqr/verification.hpp"

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitSimFailure = 2;
constexpr int kExitVerifyFailure = 3;

int cmd_run(const std::string& config_path, const std::string& out_dir) {
  eslqr::RunConfig cfg;
  try {
    cfg = eslqr::load_run_config(config_path);
  } catch (const eslqr::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    const eslqr::TrajectorySampler traj = eslqr::make_sampler(cfg);
    eslqr::SimConfig sim = cfg.sim;
    sim.initial = eslqr::make_initial_state(cfg, traj);

    const eslqr::SimLog log = eslqr::run_closed_loop(
        sim, traj, cfg.weights, cfg.gains, cfg.vehicle, cfg.regularization_eps);

    std::filesystem::create_directories(out_dir);
    const auto out = [&](const char* name) {
      return (std::filesystem::path(out_dir) / name).string();
    };
    if (cfg.output.csv) {
      eslqr::write_csv(log, out("log.csv"));
    }

    if (!log.completed) {
      std::cerr << "simulation aborted: " << log.failure_reason << "\n";
      if (cfg.output.summary) {
        eslqr::write_summary(log, eslqr::TrackingMetrics{}, cfg.scenario_name(),
                             out("summary.txt"));
      }
      return kExitSimFailure;
    }

    const eslqr::TrackingMetrics metrics = eslqr::compute_metrics(
        log, cfg.metrics.settle_threshold, cfg.metrics.window_start);
    if (cfg.output.summary) {
      eslqr::write_summary(log, metrics, cfg.scenario_name(), out("summary.txt"));
    }
    if (cfg.output.svg) {
      eslqr::write_traj_xy_svg(log, out("traj_xy.svg"));
      eslqr::write_error_norm_svg(log, out("error_norm.svg"));
    }

    std::printf("%s: %zu rows, rmse_position=%.9g m, max_position_error=%.9g m\n",
                cfg.scenario_name().c_str(), log.rows.size(),
                metrics.rmse_position, metrics.max_position_error);
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "simulation failed: " << e.what() << "\n";
    return kExitSimFailure;
  }
}

int cmd_verify() {
  bool all_passed = true;
  for (const eslqr::SuiteResult& r : eslqr::all_checks()) {
    all_passed = all_passed && r.passed;
    std::printf("[%s] %-46s observed=%-12.4g %s %.4g%s%s\n",
                r.passed ? "PASS" : "FAIL", r.name.c_str(), r.observed,
                r.pass_if_below ? "<" : ">", r.threshold,
                r.note.empty() ? "" : "  -- ", r.note.c_str());
  }
  return all_passed ? kExitOk : kExitVerifyFailure;
}

int cmd_print_gain(const std::string& config_path) {
  eslqr::RunConfig cfg;
  try {
    cfg = eslqr::load_run_config(config_path);
  } catch (const eslqr::ConfigError& e) {
    std::cerr << e.what() << "\n";
    return kExitConfigError;
  }

  try {
    const eslqr::TrajectorySampler traj = eslqr::make_sampler(cfg);
    const eslqr::TrueState init = eslqr::make_initial_state(cfg, traj);
    const eslqr::TrajectorySample s0 = traj(0.0);

    const eslqr::ErrorState err = eslqr::compute_error(init, s0.nominal);
    const eslqr::LinearizedSystem sys = eslqr::linearize(
        err, eslqr::ErrorControl::zero(), eslqr::quat_to_rot(s0.nominal.q),
        s0.u_nominal.c, cfg.vehicle);
    const eslqr::CareSolution sol =
        eslqr::lqr_gain(sys, cfg.weights, cfg.regularization_eps);

    const Eigen::IOFormat fmt(9, 0, ", ", "\n", "  [", "]");
    std::cout << "initial error dx = " << err.stacked().transpose().format(
                     Eigen::IOFormat(9, 0, ", ", "", "[", "]"))
              << "\n";
    std::cout << "A =\n" << sys.a.format(fmt) << "\n";
    std::cout << "B =\n" << sys.b.format(fmt) << "\n";
    std::cout << "K =\n" << sol.k.format(fmt) << "\n";
    std::cout << "P =\n" << sol.p.format(fmt) << "\n";
    std::printf("care_residual = %.9g\n", sol.residual);
    std::printf("spectral_abscissa_A = %.9g\n", sol.spectral_abscissa_a);
    std::printf("closed_loop_abscissa = %.9g\n", sol.closed_loop_abscissa);
    return kExitOk;
  } catch (const std::exception& e) {
    std::cerr << "print-gain failed: " << e.what() << "\n";
    return kExitSimFailure;
  }
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Error-state LQR trajectory-tracking simulator"};
  app.require_subcommand(1);

  std::string config_path;
  std::string out_dir = ".";
  CLI::App* run = app.add_subcommand("run", "Run a scenario from a JSON config");
  run->add_option("config", config_path, "Path to the scenario config")->required();
  run->add_option("--out", out_dir, "Output directory for artifacts");

  CLI::App* verify = app.add_subcommand("verify", "Run the numerical check suites");

  std::string gain_config_path;
  CLI::App* print_gain =
      app.add_subcommand("print-gain", "Dump A, B, K, P at the initial error");
  print_gain->add_option("config", gain_config_path, "Path to the scenario config")
      ->required();

  CLI11_PARSE(app, argc, argv);

  if (run->parsed()) {
    return cmd_run(config_path, out_dir);
  }
  if (verify->parsed()) {
    return cmd_verify();
  }
  if (print_gain->parsed()) {
    return cmd_print_gain(gain_config_path);
  }
  return kExitConfigError;
}
