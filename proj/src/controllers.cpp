#include "eslqr/controllers.hpp"

#include <stdexcept>

namespace eslqr {

void BodyrateGains::validate() const {
  if (!(kp.minCoeff() > 0.0)) {
    throw std::invalid_argument("bodyrate: gains must be positive");
  }
}

OuterLoopOutput lqr_step(const TrueState& true_s, const TrajectorySample& sample,
                         const LqrWeights& weights, const VehicleParams& params,
                         const ErrorControl& prev_du, double epsilon) {
  OuterLoopOutput out;
  out.error = compute_error(true_s, sample.nominal);

  const RotationMatrix nominal_r = quat_to_rot(sample.nominal.q);
  const LinearizedSystem sys =
      linearize(out.error, prev_du, nominal_r, sample.u_nominal.c, params);
  out.gain = lqr_gain(sys, weights, epsilon);

  const Vec4 du = -out.gain.k * out.error.stacked();
  out.delta_u = ErrorControl::from_stacked(du);

  out.command = compose_control(sample.u_nominal, out.delta_u, out.error.dtheta);
  const double clamped = params.clamp_thrust(out.command.c);
  out.thrust_saturated = clamped != out.command.c;
  out.command.c = clamped;
  return out;
}

Vec3 bodyrate_torque(const Vec3& omega_cmd, const Vec3& omega_true,
                     const VehicleParams& params, const BodyrateGains& gains) {
  return params.inertia * (gains.kp.asDiagonal() * (omega_cmd - omega_true)) +
         omega_true.cross(params.inertia * omega_true);
}

}  // namespace eslqr
