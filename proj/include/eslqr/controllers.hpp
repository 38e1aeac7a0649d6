#pragma once

#include "eslqr/riccati.hpp"
#include "eslqr/trajectory.hpp"

namespace eslqr {

// Proportional gains of the bodyrate loop, 1/s per axis.
struct BodyrateGains {
  Vec3 kp{20.0, 20.0, 8.0};

  void validate() const;
};

struct OuterLoopOutput {
  Control command;        // composed true control, thrust saturated
  ErrorState error;       // tracking error used for feedback
  ErrorControl delta_u;   // -K dx before composition
  CareSolution gain;      // Riccati solution behind the command
  bool thrust_saturated{false};
};

// One outer-loop cycle: measure the tracking error, re-linearize the error
// dynamics about (error, prev_du), synthesize the LQR gain, and compose the
// nominal feedforward with du = -K dx. prev_du is the previous cycle's
// commanded error control (zero on the first cycle). Riccati failures
// propagate as CareFailure.
OuterLoopOutput lqr_step(const TrueState& true_s, const TrajectorySample& sample,
                         const LqrWeights& weights, const VehicleParams& params,
                         const ErrorControl& prev_du,
                         double epsilon = kDefaultRegularization);

// Bodyrate P-controller with feedback linearization:
//   tau = J Kp (omega_cmd - omega_true) + omega_true x J omega_true.
// Deliberately blind to position and velocity; the loops talk only through
// the angular-velocity command.
Vec3 bodyrate_torque(const Vec3& omega_cmd, const Vec3& omega_true,
                     const VehicleParams& params, const BodyrateGains& gains);

}  // namespace eslqr
