#include "eslqr/rotations.hpp"

#include <cmath>
#include <stdexcept>

namespace eslqr {

namespace {

constexpr double kSkewTol = 1e-9;
constexpr double kOrthoTol = 1e-9;
// Above this angle the rotation logarithm switches to the axis-from-diagonal
// branch; vee(R - R^T) only fixes the axis sign there.
constexpr double kNearPi = M_PI - 1e-3;

}  // namespace

double UnitQuaternion::norm() const {
  return std::sqrt(w * w + x * x + y * y + z * z);
}

UnitQuaternion UnitQuaternion::normalized() const {
  const double n = norm();
  return {w / n, x / n, y / n, z / n};
}

UnitQuaternion UnitQuaternion::canonical() const {
  if (w < 0.0) {
    return {-w, -x, -y, -z};
  }
  return *this;
}

bool UnitQuaternion::is_unit(double tol) const {
  return std::abs(w * w + x * x + y * y + z * z - 1.0) <= tol;
}

double quat_dot(const UnitQuaternion& a, const UnitQuaternion& b) {
  return a.w * b.w + a.x * b.x + a.y * b.y + a.z * b.z;
}

Mat3 hat(const Vec3& v) {
  Mat3 m;
  m << 0.0, -v.z(), v.y(),
       v.z(), 0.0, -v.x(),
      -v.y(), v.x(), 0.0;
  return m;
}

Vec3 vee(const Mat3& m) {
  const double sym = (m + m.transpose()).cwiseAbs().maxCoeff();
  if (sym > kSkewTol) {
    throw std::invalid_argument("vee: input is not skew-symmetric");
  }
  return {m(2, 1), m(0, 2), m(1, 0)};
}

RotationMatrix exp_so3(const RotationVector& theta) {
  const double t = theta.norm();
  const Mat3 k = hat(theta);
  if (t < kSmallAngle) {
    return Mat3::Identity() + k + 0.5 * k * k;
  }
  const double a = std::sin(t) / t;
  const double b = (1.0 - std::cos(t)) / (t * t);
  return Mat3::Identity() + a * k + b * k * k;
}

RotationVector log_so3(const RotationMatrix& r) {
  const double ortho = (r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff();
  if (ortho > kOrthoTol || std::abs(r.determinant() - 1.0) > kOrthoTol) {
    throw std::invalid_argument("log_so3: input is not a rotation matrix");
  }

  const double cos_angle = std::clamp((r.trace() - 1.0) / 2.0, -1.0, 1.0);
  const double angle = std::acos(cos_angle);
  const Vec3 skew = vee((r - r.transpose()) / 2.0);  // = sin(angle) * axis

  if (angle < kSmallAngle) {
    return skew;
  }
  if (angle > kNearPi) {
    // sin(angle) is too small to carry the axis magnitude; recover it from
    // the symmetric part R = cos*I + (1-cos)*aa^T + sin*[a]x instead.
    int k = 0;
    r.diagonal().maxCoeff(&k);
    const double one_minus_cos = 1.0 - cos_angle;
    Vec3 axis;
    axis[k] = std::sqrt(std::max(0.0, (r(k, k) - cos_angle) / one_minus_cos));
    if (skew[k] < 0.0) {
      axis[k] = -axis[k];
    }
    for (int i = 0; i < 3; ++i) {
      if (i != k) {
        axis[i] = (r(i, k) + r(k, i)) / (2.0 * one_minus_cos * axis[k]);
      }
    }
    return angle * axis.normalized();
  }
  return (angle / (2.0 * std::sin(angle))) * (2.0 * skew);
}

UnitQuaternion quat_mul(const UnitQuaternion& a, const UnitQuaternion& b) {
  const UnitQuaternion p{
      a.w * b.w - a.x * b.x - a.y * b.y - a.z * b.z,
      a.w * b.x + a.x * b.w + a.y * b.z - a.z * b.y,
      a.w * b.y - a.x * b.z + a.y * b.w + a.z * b.x,
      a.w * b.z + a.x * b.y - a.y * b.x + a.z * b.w};
  return p.normalized();
}

RotationMatrix quat_to_rot(const UnitQuaternion& q) {
  const double w = q.w, x = q.x, y = q.y, z = q.z;
  Mat3 r;
  r << 1.0 - 2.0 * (y * y + z * z), 2.0 * (x * y - w * z), 2.0 * (x * z + w * y),
      2.0 * (x * y + w * z), 1.0 - 2.0 * (x * x + z * z), 2.0 * (y * z - w * x),
      2.0 * (x * z - w * y), 2.0 * (y * z + w * x), 1.0 - 2.0 * (x * x + y * y);
  return r;
}

UnitQuaternion rot_to_quat(const RotationMatrix& r) {
  const double trace = r.trace();
  UnitQuaternion q;
  if (trace > 0.0) {
    const double s = std::sqrt(trace + 1.0) * 2.0;
    q.w = 0.25 * s;
    q.x = (r(2, 1) - r(1, 2)) / s;
    q.y = (r(0, 2) - r(2, 0)) / s;
    q.z = (r(1, 0) - r(0, 1)) / s;
  } else if (r(0, 0) > r(1, 1) && r(0, 0) > r(2, 2)) {
    const double s = std::sqrt(1.0 + r(0, 0) - r(1, 1) - r(2, 2)) * 2.0;
    q.w = (r(2, 1) - r(1, 2)) / s;
    q.x = 0.25 * s;
    q.y = (r(0, 1) + r(1, 0)) / s;
    q.z = (r(0, 2) + r(2, 0)) / s;
  } else if (r(1, 1) > r(2, 2)) {
    const double s = std::sqrt(1.0 + r(1, 1) - r(0, 0) - r(2, 2)) * 2.0;
    q.w = (r(0, 2) - r(2, 0)) / s;
    q.x = (r(0, 1) + r(1, 0)) / s;
    q.y = 0.25 * s;
    q.z = (r(1, 2) + r(2, 1)) / s;
  } else {
    const double s = std::sqrt(1.0 + r(2, 2) - r(0, 0) - r(1, 1)) * 2.0;
    q.w = (r(1, 0) - r(0, 1)) / s;
    q.x = (r(0, 2) + r(2, 0)) / s;
    q.y = (r(1, 2) + r(2, 1)) / s;
    q.z = 0.25 * s;
  }
  return q.normalized().canonical();
}

UnitQuaternion quat_from_rotvec(const RotationVector& theta) {
  const double t = theta.norm();
  double w;
  double factor;  // sin(t/2) / t
  if (t < kSmallAngle) {
    w = 1.0 - t * t / 8.0;
    factor = 0.5 - t * t / 48.0;
  } else {
    w = std::cos(0.5 * t);
    factor = std::sin(0.5 * t) / t;
  }
  const Vec3 v = factor * theta;
  return UnitQuaternion{w, v.x(), v.y(), v.z()}.normalized();
}

Eigen::Vector4d quat_rate_wxyz(const UnitQuaternion& q, const Vec3& omega) {
  return 0.5 * Eigen::Vector4d{
                   -q.x * omega.x() - q.y * omega.y() - q.z * omega.z(),
                   q.w * omega.x() + q.y * omega.z() - q.z * omega.y(),
                   q.w * omega.y() - q.x * omega.z() + q.z * omega.x(),
                   q.w * omega.z() + q.x * omega.y() - q.y * omega.x()};
}

Mat3 jr_inv(const RotationVector& theta) {
  const double t = theta.norm();
  if (t >= 2.0 * M_PI - 0.1) {
    throw std::invalid_argument("jr_inv: angle too close to the 2*pi singularity");
  }
  const Mat3 k = hat(theta);
  if (t < kSmallAngle) {
    return Mat3::Identity() + 0.5 * k + (1.0 / 12.0) * k * k;
  }
  // (1 + cos t) / (2 t sin t) rewritten as cot(t/2) / (2t); the half-angle
  // form stays finite through t = pi.
  const double coeff = 1.0 / (t * t) - std::cos(0.5 * t) / (2.0 * t * std::sin(0.5 * t));
  return Mat3::Identity() + 0.5 * k + coeff * k * k;
}

}  // namespace eslqr
