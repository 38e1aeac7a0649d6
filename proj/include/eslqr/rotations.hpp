#pragma once

#include <Eigen/Dense>

namespace eslqr {

using Vec3 = Eigen::Vector3d;
using Mat3 = Eigen::Matrix3d;

// Axis-angle rotation vector in radians. Values produced by the canonical
// logarithm satisfy norm() <= pi.
using RotationVector = Eigen::Vector3d;
using RotationMatrix = Eigen::Matrix3d;

// Threshold below which the exp / log / jr_inv maps switch to their series
// expansions to avoid cancellation in sin(t)/t style terms.
inline constexpr double kSmallAngle = 1e-4;

// Scalar-first Hamilton quaternion. Rotations are body-to-world: rotate(v)
// maps body-frame coordinates into the inertial frame.
struct UnitQuaternion {
  double w{1.0};
  double x{0.0};
  double y{0.0};
  double z{0.0};

  static UnitQuaternion identity() { return {}; }

  double norm() const;
  UnitQuaternion normalized() const;
  UnitQuaternion conjugate() const { return {w, -x, -y, -z}; }
  // Sign-flipped so that w >= 0. Used for deterministic comparisons; the
  // trajectory sampler keeps the raw sign to stay continuous in time.
  UnitQuaternion canonical() const;
  Vec3 vec() const { return {x, y, z}; }
  Eigen::Vector4d wxyz() const { return {w, x, y, z}; }
  bool is_unit(double tol = 1e-9) const;
};

double quat_dot(const UnitQuaternion& a, const UnitQuaternion& b);

// Skew-symmetric matrix of v: hat(v) * w == v x w.
Mat3 hat(const Vec3& v);

// Inverse of hat. Throws std::invalid_argument when the symmetric part of m
// exceeds 1e-9 entrywise.
Vec3 vee(const Mat3& m);

// Rodrigues formula; second-order series below kSmallAngle.
RotationMatrix exp_so3(const RotationVector& theta);

// Canonical logarithm, returned norm <= pi. Uses the trace/arccos angle with
// a first-order branch near zero and the largest-diagonal axis extraction
// near pi. Throws std::invalid_argument for non-orthonormal input.
RotationVector log_so3(const RotationMatrix& r);

// Hamilton product, renormalized. Does not canonicalize the sign.
UnitQuaternion quat_mul(const UnitQuaternion& a, const UnitQuaternion& b);

RotationMatrix quat_to_rot(const UnitQuaternion& q);

// Shepperd largest-pivot conversion, canonical sign (w >= 0).
UnitQuaternion rot_to_quat(const RotationMatrix& r);

UnitQuaternion quat_from_rotvec(const RotationVector& theta);

// Quaternion kinematics 0.5 * q (x) (0, omega) as a raw wxyz derivative.
// No normalization, so it is safe inside integrator stage evaluations.
Eigen::Vector4d quat_rate_wxyz(const UnitQuaternion& q, const Vec3& omega);

// Inverse right Jacobian of SO(3):
//   I + 1/2 [theta]x + (1/t^2 - cot(t/2)/(2t)) [theta]x^2,   t = ||theta||
// with the 1/12 series coefficient below kSmallAngle. Valid for
// t < 2*pi - 0.1; throws std::invalid_argument beyond that.
Mat3 jr_inv(const RotationVector& theta);

}  // namespace eslqr
