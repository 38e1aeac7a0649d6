#pragma once

#include <stdexcept>
#include <string>

#include "eslqr/simulation.hpp"

namespace eslqr {

struct ConfigError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct TrajectoryConfig {
  enum class Type { kHover, kLemniscate };
  Type type{Type::kHover};
  Vec3 hover_position{0.0, 0.0, 1.0};
  double hover_yaw{0.0};
  LemniscateParams lemniscate;
};

struct MetricsConfig {
  double settle_threshold{0.01};  // m
  double window_start{0.0};       // s
};

struct OutputFlags {
  bool csv{true};
  bool svg{true};
  bool summary{true};
};

// Everything one scenario run needs. All sections are optional in the JSON
// except "trajectory" and "sim"; unknown keys are rejected with their full
// dotted path.
struct RunConfig {
  VehicleParams vehicle;
  LqrWeights weights;
  double regularization_eps{kDefaultRegularization};
  BodyrateGains gains;
  TrajectoryConfig trajectory;
  SimConfig sim;
  bool initial_given{false};  // sim.initial came from the config
  MetricsConfig metrics;
  OutputFlags output;

  std::string scenario_name() const;
};

// Parses and validates. Throws ConfigError naming the offending key, e.g.
// "vehicle.mass_kg".
RunConfig parse_run_config(const std::string& json_text);
RunConfig load_run_config(const std::string& path);

TrajectorySampler make_sampler(const RunConfig& cfg);

// The configured initial state, or the nominal state at t = 0 with the
// feedforward body rate when the config leaves it out.
TrueState make_initial_state(const RunConfig& cfg, const TrajectorySampler& traj);

}  // namespace eslqr
