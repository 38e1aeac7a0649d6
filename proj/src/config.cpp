#include "eslqr/config.hpp"

#include <fstream>
#include <sstream>

#include <json.hpp>

namespace eslqr {

namespace {

using nlohmann::json;

[[noreturn]] void fail(const std::string& path, const std::string& what) {
  throw ConfigError("config: " + path + ": " + what);
}

void check_keys(const json& j, const std::string& path,
                std::initializer_list<const char*> allowed) {
  if (!j.is_object()) {
    fail(path, "expected an object");
  }
  for (const auto& item : j.items()) {
    bool known = false;
    for (const char* key : allowed) {
      if (item.key() == key) {
        known = true;
        break;
      }
    }
    if (!known) {
      fail(path + "." + item.key(), "unknown key");
    }
  }
}

double get_number(const json& j, const std::string& path, const char* key,
                  double fallback) {
  if (!j.contains(key)) {
    return fallback;
  }
  if (!j[key].is_number()) {
    fail(path + "." + key, "expected a number");
  }
  return j[key].get<double>();
}

int get_int(const json& j, const std::string& path, const char* key, int fallback) {
  if (!j.contains(key)) {
    return fallback;
  }
  if (!j[key].is_number_integer()) {
    fail(path + "." + key, "expected an integer");
  }
  return j[key].get<int>();
}

bool get_bool(const json& j, const std::string& path, const char* key,
              bool fallback) {
  if (!j.contains(key)) {
    return fallback;
  }
  if (!j[key].is_boolean()) {
    fail(path + "." + key, "expected a boolean");
  }
  return j[key].get<bool>();
}

Eigen::VectorXd get_array(const json& j, const std::string& path, const char* key,
                          Eigen::Index size, const Eigen::VectorXd& fallback) {
  if (!j.contains(key)) {
    return fallback;
  }
  const json& a = j[key];
  if (!a.is_array() || static_cast<Eigen::Index>(a.size()) != size) {
    fail(path + "." + key,
         "expected an array of " + std::to_string(size) + " numbers");
  }
  Eigen::VectorXd v(size);
  for (Eigen::Index i = 0; i < size; ++i) {
    if (!a[i].is_number()) {
      fail(path + "." + key, "expected an array of numbers");
    }
    v[i] = a[i].get<double>();
  }
  return v;
}

Vec3 get_vec3(const json& j, const std::string& path, const char* key,
              const Vec3& fallback) {
  return get_array(j, path, key, 3, fallback);
}

void parse_vehicle(const json& j, RunConfig& cfg) {
  const std::string path = "vehicle";
  check_keys(j, path, {"mass_kg", "inertia_diag_kgm2", "gravity_mps2",
                       "thrust_min_n", "thrust_max_n"});
  cfg.vehicle.mass = get_number(j, path, "mass_kg", cfg.vehicle.mass);
  const Vec3 inertia = get_vec3(j, path, "inertia_diag_kgm2",
                                cfg.vehicle.inertia.diagonal());
  cfg.vehicle.inertia = inertia.asDiagonal();
  cfg.vehicle.gravity = get_vec3(j, path, "gravity_mps2", cfg.vehicle.gravity);
  // Default thrust ceiling scales with the configured mass unless pinned.
  cfg.vehicle.thrust_max = 4.0 * cfg.vehicle.mass * cfg.vehicle.gravity.norm();
  cfg.vehicle.thrust_min = get_number(j, path, "thrust_min_n", cfg.vehicle.thrust_min);
  cfg.vehicle.thrust_max = get_number(j, path, "thrust_max_n", cfg.vehicle.thrust_max);
  if (!(cfg.vehicle.mass > 0.0)) {
    fail(path + ".mass_kg", "must be positive");
  }
  if (!(inertia.minCoeff() > 0.0)) {
    fail(path + ".inertia_diag_kgm2", "entries must be positive");
  }
  try {
    cfg.vehicle.validate();
  } catch (const std::invalid_argument& e) {
    fail(path, e.what());
  }
}

void parse_lqr(const json& j, RunConfig& cfg) {
  const std::string path = "lqr";
  check_keys(j, path, {"q_diag", "r_diag", "regularization_eps"});
  const Eigen::VectorXd q =
      get_array(j, path, "q_diag", 9, cfg.weights.q.diagonal());
  const Eigen::VectorXd r =
      get_array(j, path, "r_diag", 4, cfg.weights.r.diagonal());
  cfg.weights.q = q.asDiagonal();
  cfg.weights.r = r.asDiagonal();
  cfg.regularization_eps =
      get_number(j, path, "regularization_eps", cfg.regularization_eps);
  if (cfg.regularization_eps < 0.0) {
    fail(path + ".regularization_eps", "must be non-negative");
  }
  try {
    cfg.weights.validate();
  } catch (const std::invalid_argument& e) {
    fail(path + ".q_diag/r_diag", e.what());
  }
}

void parse_bodyrate(const json& j, RunConfig& cfg) {
  const std::string path = "bodyrate";
  check_keys(j, path, {"kp"});
  cfg.gains.kp = get_vec3(j, path, "kp", cfg.gains.kp);
  try {
    cfg.gains.validate();
  } catch (const std::invalid_argument& e) {
    fail(path + ".kp", e.what());
  }
}

void parse_trajectory(const json& j, RunConfig& cfg) {
  const std::string path = "trajectory";
  check_keys(j, path, {"type", "hover", "lemniscate"});
  if (!j.contains("type") || !j["type"].is_string()) {
    fail(path + ".type", "expected \"hover\" or \"lemniscate\"");
  }
  const std::string type = j["type"].get<std::string>();
  if (type == "hover") {
    cfg.trajectory.type = TrajectoryConfig::Type::kHover;
    if (j.contains("hover")) {
      const std::string hpath = path + ".hover";
      check_keys(j["hover"], hpath, {"position_m", "yaw_rad"});
      cfg.trajectory.hover_position =
          get_vec3(j["hover"], hpath, "position_m", cfg.trajectory.hover_position);
      cfg.trajectory.hover_yaw =
          get_number(j["hover"], hpath, "yaw_rad", cfg.trajectory.hover_yaw);
    }
  } else if (type == "lemniscate") {
    cfg.trajectory.type = TrajectoryConfig::Type::kLemniscate;
    if (j.contains("lemniscate")) {
      const std::string lpath = path + ".lemniscate";
      const json& l = j["lemniscate"];
      check_keys(l, lpath,
                 {"amplitude_x_m", "amplitude_y_m", "omega_rad_s", "altitude_m",
                  "yaw_mode", "yaw_fixed_rad", "spin_rate_rad_s"});
      LemniscateParams& lem = cfg.trajectory.lemniscate;
      lem.amplitude_x = get_number(l, lpath, "amplitude_x_m", lem.amplitude_x);
      lem.amplitude_y = get_number(l, lpath, "amplitude_y_m", lem.amplitude_y);
      lem.omega = get_number(l, lpath, "omega_rad_s", lem.omega);
      lem.altitude = get_number(l, lpath, "altitude_m", lem.altitude);
      if (l.contains("yaw_mode")) {
        const std::string mode = l["yaw_mode"].is_string()
                                     ? l["yaw_mode"].get<std::string>()
                                     : std::string();
        if (mode == "fixed") {
          lem.yaw_mode = YawMode::kFixed;
        } else if (mode == "tangent") {
          lem.yaw_mode = YawMode::kTangent;
        } else if (mode == "spinning") {
          lem.yaw_mode = YawMode::kSpinning;
        } else {
          fail(lpath + ".yaw_mode", "expected \"fixed\", \"tangent\" or \"spinning\"");
        }
      }
      lem.yaw_fixed = get_number(l, lpath, "yaw_fixed_rad", lem.yaw_fixed);
      lem.spin_rate = get_number(l, lpath, "spin_rate_rad_s", lem.spin_rate);
      try {
        lem.validate();
      } catch (const std::invalid_argument& e) {
        fail(lpath, e.what());
      }
    }
  } else {
    fail(path + ".type", "expected \"hover\" or \"lemniscate\"");
  }
}

void parse_sim(const json& j, RunConfig& cfg) {
  const std::string path = "sim";
  check_keys(j, path, {"dt_inner_s", "outer_divisor", "duration_s", "initial"});
  cfg.sim.dt_inner = get_number(j, path, "dt_inner_s", cfg.sim.dt_inner);
  cfg.sim.outer_divisor = get_int(j, path, "outer_divisor", cfg.sim.outer_divisor);
  cfg.sim.duration = get_number(j, path, "duration_s", cfg.sim.duration);
  if (j.contains("initial")) {
    const std::string ipath = path + ".initial";
    const json& init = j["initial"];
    check_keys(init, ipath,
               {"position_m", "quaternion_wxyz", "velocity_mps", "bodyrate_rad_s"});
    cfg.sim.initial.p = get_vec3(init, ipath, "position_m", Vec3::Zero());
    const Eigen::VectorXd q = get_array(init, ipath, "quaternion_wxyz", 4,
                                        Eigen::Vector4d{1.0, 0.0, 0.0, 0.0});
    cfg.sim.initial.q = UnitQuaternion{q[0], q[1], q[2], q[3]};
    cfg.sim.initial.v = get_vec3(init, ipath, "velocity_mps", Vec3::Zero());
    cfg.sim.initial.omega = get_vec3(init, ipath, "bodyrate_rad_s", Vec3::Zero());
    cfg.initial_given = true;
    try {
      cfg.sim.initial.validate();
    } catch (const std::invalid_argument& e) {
      fail(ipath, e.what());
    }
  }
  if (!(cfg.sim.dt_inner > 0.0)) {
    fail(path + ".dt_inner_s", "must be positive");
  }
  if (cfg.sim.outer_divisor < 1) {
    fail(path + ".outer_divisor", "must be >= 1");
  }
  if (!(cfg.sim.duration >= cfg.sim.dt_inner)) {
    fail(path + ".duration_s", "must be at least dt_inner_s");
  }
}

void parse_metrics(const json& j, RunConfig& cfg) {
  const std::string path = "metrics";
  check_keys(j, path, {"settle_threshold_m", "window_start_s"});
  cfg.metrics.settle_threshold =
      get_number(j, path, "settle_threshold_m", cfg.metrics.settle_threshold);
  cfg.metrics.window_start =
      get_number(j, path, "window_start_s", cfg.metrics.window_start);
  if (!(cfg.metrics.settle_threshold > 0.0)) {
    fail(path + ".settle_threshold_m", "must be positive");
  }
  if (cfg.metrics.window_start < 0.0 || cfg.metrics.window_start > cfg.sim.duration) {
    fail(path + ".window_start_s", "must lie within the run duration");
  }
}

void parse_output(const json& j, RunConfig& cfg) {
  const std::string path = "output";
  check_keys(j, path, {"csv", "svg", "summary"});
  cfg.output.csv = get_bool(j, path, "csv", cfg.output.csv);
  cfg.output.svg = get_bool(j, path, "svg", cfg.output.svg);
  cfg.output.summary = get_bool(j, path, "summary", cfg.output.summary);
}

}  // namespace

std::string RunConfig::scenario_name() const {
  return trajectory.type == TrajectoryConfig::Type::kHover ? "hover" : "lemniscate";
}

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw ConfigError(std::string("config: invalid JSON: ") + e.what());
  }

  check_keys(j, "(root)",
             {"vehicle", "lqr", "bodyrate", "trajectory", "sim", "metrics", "output"});
  if (!j.contains("trajectory")) {
    fail("trajectory", "missing required section");
  }
  if (!j.contains("sim")) {
    fail("sim", "missing required section");
  }

  RunConfig cfg;
  if (j.contains("vehicle")) parse_vehicle(j["vehicle"], cfg);
  if (j.contains("lqr")) parse_lqr(j["lqr"], cfg);
  if (j.contains("bodyrate")) parse_bodyrate(j["bodyrate"], cfg);
  parse_trajectory(j["trajectory"], cfg);
  parse_sim(j["sim"], cfg);
  if (j.contains("metrics")) parse_metrics(j["metrics"], cfg);
  if (j.contains("output")) parse_output(j["output"], cfg);
  return cfg;
}

RunConfig load_run_config(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw ConfigError("config: cannot open " + path);
  }
  std::ostringstream buf;
  buf << in.rdbuf();
  return parse_run_config(buf.str());
}

TrajectorySampler make_sampler(const RunConfig& cfg) {
  if (cfg.trajectory.type == TrajectoryConfig::Type::kHover) {
    return hover_trajectory(cfg.trajectory.hover_position, cfg.trajectory.hover_yaw,
                            cfg.vehicle);
  }
  return lemniscate_trajectory(cfg.trajectory.lemniscate, cfg.vehicle);
}

TrueState make_initial_state(const RunConfig& cfg, const TrajectorySampler& traj) {
  if (cfg.initial_given) {
    return cfg.sim.initial;
  }
  const TrajectorySample s0 = traj(0.0);
  TrueState init;
  init.p = s0.nominal.p;
  init.q = s0.nominal.q;
  init.v = s0.nominal.v;
  init.omega = s0.u_nominal.omega;
  return init;
}

}  // namespace eslqr
