#pragma once

#include "eslqr/rotations.hpp"

namespace eslqr {

// Rigid-body parameters of the vehicle. Thrust limits apply at the plant
// boundary only; controller algebra stays unclamped.
struct VehicleParams {
  double mass{1.0};                                      // kg
  Mat3 inertia{Vec3{0.01, 0.01, 0.02}.asDiagonal()};     // kg m^2
  Vec3 gravity{0.0, 0.0, -9.81};                         // m/s^2, world frame
  double thrust_min{0.0};                                // N
  double thrust_max{4.0 * 9.81};                         // N

  // Throws std::invalid_argument on non-positive mass, asymmetric or
  // non-positive-definite inertia, or an empty thrust range.
  void validate() const;

  double clamp_thrust(double c) const;
};

// Plant state. Position and velocity are inertial, the angular rate is
// body-frame. The body rate extends the tracked state so the torque loop has
// a plant to act on.
struct TrueState {
  Vec3 p{Vec3::Zero()};
  UnitQuaternion q{};
  Vec3 v{Vec3::Zero()};
  Vec3 omega{Vec3::Zero()};

  void validate() const;
};

// Reference state along the planned trajectory.
struct NominalState {
  Vec3 p{Vec3::Zero()};
  UnitQuaternion q{};
  Vec3 v{Vec3::Zero()};
};

// Collective thrust plus body-frame angular velocity command.
struct Control {
  double c{0.0};          // N
  Vec3 omega{Vec3::Zero()};  // rad/s
};

// Thrust plus body torque: what the plant actually consumes.
struct Wrench {
  double c{0.0};        // N
  Vec3 tau{Vec3::Zero()};  // N m
};

struct TrueStateDerivative {
  Vec3 dp;
  Eigen::Vector4d dq_wxyz;
  Vec3 dv;
  Vec3 domega;
};

struct NominalStateDerivative {
  Vec3 dp;
  Eigen::Vector4d dq_wxyz;
  Vec3 dv;
};

// Continuous-time plant dynamics:
//   p'     = v
//   v'     = g + (1/m) R (0, 0, c)^T
//   q'     = 1/2 q (x) (0, omega)
//   omega' = J^-1 (tau - omega x J omega)
// Thrust is clamped to the plant limits. The quaternion is used as-is (only
// normalized for the rotation), so integrator stages may pass slightly
// off-manifold states.
TrueStateDerivative true_derivative(const TrueState& s, const Wrench& w,
                                    const VehicleParams& params);

// Same kinematics/dynamics with the angular velocity as a direct input and
// no rotational plant.
NominalStateDerivative nominal_derivative(const NominalState& s, const Control& u,
                                          const VehicleParams& params);

}  // namespace eslqr
