#include "eslqr/error_state.hpp"

namespace eslqr {

ErrorState ErrorState::from_stacked(const Vec9& x) {
  return {x.segment<3>(0), x.segment<3>(3), x.segment<3>(6)};
}

Vec9 ErrorState::stacked() const {
  Vec9 x;
  x << dp, dtheta, dv;
  return x;
}

ErrorControl ErrorControl::from_stacked(const Vec4& u) {
  return {u[0], u.tail<3>()};
}

Vec4 ErrorControl::stacked() const {
  return {dc, domega.x(), domega.y(), domega.z()};
}

NominalState compose_state(const NominalState& nominal, const ErrorState& err) {
  NominalState out;
  out.p = nominal.p + err.dp;
  out.q = quat_mul(nominal.q, quat_from_rotvec(err.dtheta));
  out.v = nominal.v + err.dv;
  return out;
}

ErrorState compute_error(const NominalState& true_pqv, const NominalState& nominal) {
  ErrorState err;
  err.dp = true_pqv.p - nominal.p;
  // Matrix-logarithm path keeps a single canonical branch for the attitude.
  const RotationMatrix rel =
      quat_to_rot(nominal.q).transpose() * quat_to_rot(true_pqv.q);
  err.dtheta = log_so3(rel);
  err.dv = true_pqv.v - nominal.v;
  return err;
}

ErrorState compute_error(const TrueState& true_s, const NominalState& nominal) {
  return compute_error(NominalState{true_s.p, true_s.q, true_s.v}, nominal);
}

Control compose_control(const Control& nominal_u, const ErrorControl& err_u,
                        const RotationVector& dtheta) {
  Control out;
  out.c = nominal_u.c + err_u.dc;
  out.omega = exp_so3(dtheta).transpose() * nominal_u.omega + err_u.domega;
  return out;
}

Vec9 error_dynamics(const ErrorState& dx, const ErrorControl& du,
                    const RotationMatrix& nominal_r, double nominal_c,
                    const VehicleParams& params) {
  const Vec3 thrust_axis{0.0, 0.0, nominal_c + du.dc};
  Vec9 f;
  f.segment<3>(0) = dx.dv;
  f.segment<3>(3) = (Mat3::Identity() + 0.5 * hat(dx.dtheta)) * du.domega;
  f.segment<3>(6) = nominal_r *
                    (Vec3{0.0, 0.0, du.dc} + dx.dtheta.cross(thrust_axis)) /
                    params.mass;
  return f;
}

Mat9 jacobian_a(const ErrorState& dx, const ErrorControl& du,
                const RotationMatrix& nominal_r, double nominal_c,
                const VehicleParams& params) {
  Mat9 a = Mat9::Zero();
  a.block<3, 3>(0, 6) = Mat3::Identity();
  a.block<3, 3>(3, 3) = -0.5 * hat(du.domega);
  a.block<3, 3>(6, 3) =
      -nominal_r * hat(Vec3{0.0, 0.0, nominal_c + du.dc}) / params.mass;
  return a;
}

Mat9x4 jacobian_b(const ErrorState& dx, const RotationMatrix& nominal_r,
                  const VehicleParams& params) {
  Mat9x4 b = Mat9x4::Zero();
  b.block<3, 3>(3, 1) = Mat3::Identity() + 0.5 * hat(dx.dtheta);
  b.block<3, 1>(6, 0) =
      nominal_r * (Mat3::Identity() + hat(dx.dtheta)) * Vec3{0.0, 0.0, 1.0} /
      params.mass;
  return b;
}

LinearizedSystem linearize(const ErrorState& dx, const ErrorControl& du,
                           const RotationMatrix& nominal_r, double nominal_c,
                           const VehicleParams& params) {
  LinearizedSystem sys;
  sys.a = jacobian_a(dx, du, nominal_r, nominal_c, params);
  sys.b = jacobian_b(dx, nominal_r, params);
  sys.x_ref = dx;
  sys.u_ref = du;
  sys.nominal_rotation = nominal_r;
  sys.nominal_thrust = nominal_c;
  return sys;
}

}  // namespace eslqr
