#pragma once

#include <optional>
#include <string>
#include <vector>

#include "eslqr/controllers.hpp"

namespace eslqr {

// Timing and initial condition of a closed-loop run. Fully deterministic:
// identical configs produce bit-identical logs.
struct SimConfig {
  double dt_inner{1e-3};   // s, plant integration and bodyrate loop period
  int outer_divisor{10};   // outer (LQR) tick every N inner ticks
  double duration{10.0};   // s
  TrueState initial;

  void validate() const;
};

struct SimRow {
  double t{0.0};
  TrueState state;
  NominalState nominal;
  ErrorState error;
  double thrust_cmd{0.0};
  Vec3 omega_cmd{Vec3::Zero()};
  Vec3 torque{Vec3::Zero()};
  double dp_norm{0.0};
  double care_residual{0.0};
  bool thrust_saturated{false};
};

struct SimLog {
  std::vector<SimRow> rows;
  bool completed{true};
  std::string failure_reason;
  double max_care_residual{0.0};
  double max_quat_norm_error{0.0};  // max | ||q|| - 1 | over logged states
  int saturation_count{0};
  double final_closed_loop_abscissa{0.0};
  double final_spectral_abscissa_a{0.0};
};

struct TrackingMetrics {
  double rmse_position{0.0};        // m, over [window_start, end]
  double max_position_error{0.0};   // m, over the whole log
  std::optional<double> settling_time;  // s, first time ||dp|| stays below threshold
  double final_attitude_error{0.0};     // rad, ||dtheta|| at the last row
};

// Classical RK4 over the 13-dimensional state (p, q, v, omega) with a single
// quaternion renormalization after the combined update. Throws
// std::runtime_error if the state leaves the finite range.
TrueState rk4_step(const TrueState& s, const Wrench& w, const VehicleParams& params,
                   double dt);

// Cascaded closed loop: the LQR outer loop re-linearizes and re-solves the
// gain on its tick, the bodyrate loop and the plant run every inner tick,
// and the outer command is zero-order held in between. Riccati failures and
// non-finite states terminate the run with a partial log and a failure
// record instead of throwing.
SimLog run_closed_loop(const SimConfig& cfg, const TrajectorySampler& traj,
                       const LqrWeights& weights, const BodyrateGains& gains,
                       const VehicleParams& params,
                       double epsilon = kDefaultRegularization);

// Throws std::invalid_argument on an empty log or a window starting past the
// end of the log.
TrackingMetrics compute_metrics(const SimLog& log, double settle_threshold,
                                double window_start);

}  // namespace eslqr
