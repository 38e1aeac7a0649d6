#pragma once

#include <functional>
#include <utility>

#include "eslqr/vehicle.hpp"

namespace eslqr {

// One point of the reference trajectory: the nominal state, the feedforward
// control that exactly satisfies the nominal dynamics, and the flat outputs
// it was generated from.
struct TrajectorySample {
  double t{0.0};
  NominalState nominal;
  Control u_nominal;
  Vec3 position{Vec3::Zero()};
  Vec3 velocity{Vec3::Zero()};
  Vec3 acceleration{Vec3::Zero()};
  Vec3 jerk{Vec3::Zero()};
  double yaw{0.0};       // rad, continuous in t (not wrapped)
  double yaw_rate{0.0};  // rad/s
};

using TrajectorySampler = std::function<TrajectorySample(double)>;

enum class YawMode {
  kFixed,     // constant yaw
  kTangent,   // heading follows the velocity direction
  kSpinning,  // constant yaw rate
};

// Gerono figure-eight in the horizontal plane:
//   x = Ax sin(w t), y = Ay sin(w t) cos(w t), z = altitude.
struct LemniscateParams {
  double amplitude_x{2.0};   // m
  double amplitude_y{1.0};   // m
  double omega{0.8};         // rad/s
  double altitude{1.5};      // m
  YawMode yaw_mode{YawMode::kTangent};
  double yaw_fixed{0.0};     // rad, kFixed
  double spin_rate{0.0};     // rad/s, kSpinning

  // Throws std::invalid_argument on non-positive omega, negative amplitudes,
  // or tangent yaw with a degenerate (zero-amplitude) velocity curve.
  void validate() const;
};

// Maps flat outputs (position derivatives, yaw) to the nominal state and
// feedforward control:
//   f = m (acc - g), c = ||f||, z_b = f / c,
//   x_c = (cos yaw, sin yaw, 0), y_b = z_b x x_c (normalized), x_b = y_b x z_b,
//   R = [x_b y_b z_b],
// with the body rates recovered from the jerk and yaw rate so that the
// sample exactly satisfies the nominal kinematics. The quaternion sign is
// aligned to a tilt/yaw reference built from the continuous yaw argument, so
// samplers that pass a yaw angle continuous in t get a sign-continuous
// quaternion. Throws std::invalid_argument near free fall (||f|| <= 0.1 N)
// and at the gimbal condition ||z_b x x_c|| < 1e-6.
std::pair<NominalState, Control> flatness_map(const Vec3& pos, const Vec3& vel,
                                              const Vec3& acc, const Vec3& jerk,
                                              double yaw, double yaw_rate,
                                              const VehicleParams& params);

// Constant hover sample at p0: u = (m ||g||, 0).
TrajectorySampler hover_trajectory(const Vec3& p0, double yaw,
                                   const VehicleParams& vehicle);

TrajectorySample lemniscate_sample(const LemniscateParams& params,
                                   const VehicleParams& vehicle, double t);

TrajectorySampler lemniscate_trajectory(const LemniscateParams& params,
                                        const VehicleParams& vehicle);

}  // namespace eslqr
