#pragma once

#include "eslqr/vehicle.hpp"

namespace eslqr {

using Vec9 = Eigen::Matrix<double, 9, 1>;
using Vec4 = Eigen::Vector4d;
using Mat9 = Eigen::Matrix<double, 9, 9>;
using Mat9x4 = Eigen::Matrix<double, 9, 4>;

// Deviation of the true state from the nominal one. Position and velocity
// errors are plain differences; the attitude error lives in exponential
// coordinates so the stacked vector is a flat R^9 in order (dp, dtheta, dv).
struct ErrorState {
  Vec3 dp{Vec3::Zero()};          // m
  RotationVector dtheta{Vec3::Zero()};  // rad, norm < pi
  Vec3 dv{Vec3::Zero()};          // m/s

  static ErrorState zero() { return {}; }
  static ErrorState from_stacked(const Vec9& x);
  Vec9 stacked() const;
};

// Control deviation, stacked as (dc, domega) in R^4. The angular-velocity
// part is expressed in the current (true) body frame.
struct ErrorControl {
  double dc{0.0};                 // N
  Vec3 domega{Vec3::Zero()};      // rad/s

  static ErrorControl zero() { return {}; }
  static ErrorControl from_stacked(const Vec4& u);
  Vec4 stacked() const;
};

// First-order model d(dx)/dt = A dx + B du about (x_ref, u_ref). A is
// nonzero only in the (dp,dv), (dtheta,dtheta) and (dv,dtheta) blocks and B
// only in (dtheta,domega) and (dv,dc).
struct LinearizedSystem {
  Mat9 a{Mat9::Zero()};
  Mat9x4 b{Mat9x4::Zero()};
  ErrorState x_ref;
  ErrorControl u_ref;
  RotationMatrix nominal_rotation{RotationMatrix::Identity()};
  double nominal_thrust{0.0};
};

// True (p, q, v) from nominal (+) error: p + dp, q (x) exp(dtheta), v + dv.
NominalState compose_state(const NominalState& nominal, const ErrorState& err);

// Inverse of compose_state: dp = p_t - p, dtheta = log(R^T R_t), dv = v_t - v.
// The attitude branch is canonical, so the returned norm is <= pi.
ErrorState compute_error(const NominalState& true_pqv, const NominalState& nominal);
ErrorState compute_error(const TrueState& true_s, const NominalState& nominal);

// True control from nominal (+) error: c + dc and exp(dtheta)^T omega +
// domega. The nominal angular velocity is rotated from the nominal body
// frame into the current one before the additive correction.
Control compose_control(const Control& nominal_u, const ErrorControl& err_u,
                        const RotationVector& dtheta);

// Nonlinear error dynamics about a nominal (R, c):
//   dp'     = dv
//   dtheta' = (I + 1/2 [dtheta]x) domega
//   dv'     = (1/m) R ((0,0,dc)^T + [dtheta]x (0,0,c+dc)^T)
// Vanishes identically at (0, 0).
Vec9 error_dynamics(const ErrorState& dx, const ErrorControl& du,
                    const RotationMatrix& nominal_r, double nominal_c,
                    const VehicleParams& params);

// Analytic state Jacobian of error_dynamics at (dx, du).
Mat9 jacobian_a(const ErrorState& dx, const ErrorControl& du,
                const RotationMatrix& nominal_r, double nominal_c,
                const VehicleParams& params);

// Analytic control Jacobian of error_dynamics at dx.
Mat9x4 jacobian_b(const ErrorState& dx, const RotationMatrix& nominal_r,
                  const VehicleParams& params);

LinearizedSystem linearize(const ErrorState& dx, const ErrorControl& du,
                           const RotationMatrix& nominal_r, double nominal_c,
                           const VehicleParams& params);

}  // namespace eslqr
