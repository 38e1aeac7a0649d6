#include "eslqr/trajectory.hpp"

#include <cmath>
#include <stdexcept>

namespace eslqr {

namespace {

constexpr double kMinThrust = 0.1;   // N, free-fall guard
constexpr double kGimbalTol = 1e-6;  // ||z_b x x_c|| lower bound

// Minimal rotation taking the world z-axis onto z_b. Continuous wherever z_b
// stays out of the straight-down singularity.
UnitQuaternion tilt_quaternion(const Vec3& z_b) {
  const Vec3 cross = Vec3::UnitZ().cross(z_b);
  const double sin_a = cross.norm();
  const double cos_a = z_b.z();
  if (sin_a < 1e-12) {
    return cos_a > 0.0 ? UnitQuaternion::identity() : UnitQuaternion{0.0, 1.0, 0.0, 0.0};
  }
  return quat_from_rotvec((std::atan2(sin_a, cos_a) / sin_a) * cross);
}

UnitQuaternion yaw_quaternion(double yaw) {
  return {std::cos(0.5 * yaw), 0.0, 0.0, std::sin(0.5 * yaw)};
}

}  // namespace

void LemniscateParams::validate() const {
  if (!(omega > 0.0)) {
    throw std::invalid_argument("lemniscate: omega must be positive");
  }
  if (amplitude_x < 0.0 || amplitude_y < 0.0) {
    throw std::invalid_argument("lemniscate: amplitudes must be non-negative");
  }
  if (yaw_mode == YawMode::kTangent && (amplitude_x <= 0.0 || amplitude_y <= 0.0)) {
    throw std::invalid_argument(
        "lemniscate: tangent yaw needs both amplitudes positive");
  }
}

std::pair<NominalState, Control> flatness_map(const Vec3& pos, const Vec3& vel,
                                              const Vec3& acc, const Vec3& jerk,
                                              double yaw, double yaw_rate,
                                              const VehicleParams& params) {
  const Vec3 f = params.mass * (acc - params.gravity);
  const double c = f.norm();
  if (c <= kMinThrust) {
    throw std::invalid_argument("flatness_map: thrust too close to free fall");
  }
  const Vec3 z_b = f / c;

  const Vec3 x_c{std::cos(yaw), std::sin(yaw), 0.0};
  const Vec3 y_c{-std::sin(yaw), std::cos(yaw), 0.0};
  const Vec3 zb_cross_xc = z_b.cross(x_c);
  const double n = zb_cross_xc.norm();
  if (n < kGimbalTol) {
    throw std::invalid_argument("flatness_map: body z-axis aligned with heading");
  }
  const Vec3 y_b = zb_cross_xc / n;
  const Vec3 x_b = y_b.cross(z_b);

  RotationMatrix r;
  r.col(0) = x_b;
  r.col(1) = y_b;
  r.col(2) = z_b;

  // Sign-align the quaternion to the continuous tilt/yaw reference so that a
  // yaw argument continuous in t yields a sign-continuous quaternion stream.
  const UnitQuaternion q_ref = quat_mul(tilt_quaternion(z_b), yaw_quaternion(yaw));
  UnitQuaternion q = rot_to_quat(r);
  if (quat_dot(q, q_ref) < 0.0) {
    q = {-q.w, -q.x, -q.y, -q.z};
  }

  // Body rates from the thrust-vector derivative f' = m * jerk:
  //   z_b' = (f' - z_b z_b^T f') / c  =>  w_x = -y_b . f'/c, w_y = x_b . f'/c
  // and the yaw loop closes through w_z = (w_x x_c.z_b + yaw_rate y_c.y_b)/n.
  const Vec3 f_dot = params.mass * jerk;
  const double w_x = -y_b.dot(f_dot) / c;
  const double w_y = x_b.dot(f_dot) / c;
  const double w_z = (w_x * x_c.dot(z_b) + yaw_rate * y_c.dot(y_b)) / n;

  NominalState nominal;
  nominal.p = pos;
  nominal.q = q;
  nominal.v = vel;
  return {nominal, Control{c, Vec3{w_x, w_y, w_z}}};
}

TrajectorySampler hover_trajectory(const Vec3& p0, double yaw,
                                   const VehicleParams& vehicle) {
  return [p0, yaw, vehicle](double t) {
    TrajectorySample s;
    s.t = t;
    s.position = p0;
    s.yaw = yaw;
    auto [nominal, u] = flatness_map(p0, Vec3::Zero(), Vec3::Zero(), Vec3::Zero(),
                                     yaw, 0.0, vehicle);
    s.nominal = nominal;
    s.u_nominal = u;
    return s;
  };
}

TrajectorySample lemniscate_sample(const LemniscateParams& params,
                                   const VehicleParams& vehicle, double t) {
  params.validate();
  const double w = params.omega;
  const double u = w * t;
  const double ax = params.amplitude_x;
  const double ay = params.amplitude_y;

  TrajectorySample s;
  s.t = t;
  s.position = {ax * std::sin(u), 0.5 * ay * std::sin(2.0 * u), params.altitude};
  s.velocity = {ax * w * std::cos(u), ay * w * std::cos(2.0 * u), 0.0};
  s.acceleration = {-ax * w * w * std::sin(u), -2.0 * ay * w * w * std::sin(2.0 * u), 0.0};
  s.jerk = {-ax * w * w * w * std::cos(u), -4.0 * ay * w * w * w * std::cos(2.0 * u), 0.0};

  switch (params.yaw_mode) {
    case YawMode::kFixed:
      s.yaw = params.yaw_fixed;
      s.yaw_rate = 0.0;
      break;
    case YawMode::kSpinning:
      s.yaw = params.yaw_fixed + params.spin_rate * t;
      s.yaw_rate = params.spin_rate;
      break;
    case YawMode::kTangent: {
      // The velocity direction of the Gerono curve never enters the sector
      // around +y (it is bounded by the headings at the curve ends), so
      // cutting the angle at pi/2 instead of pi keeps it continuous in t.
      const double vx = s.velocity.x();
      const double vy = s.velocity.y();
      double psi = std::atan2(vy, vx);
      if (psi > M_PI / 2.0) {
        psi -= 2.0 * M_PI;
      }
      s.yaw = psi;
      const double speed_sq = vx * vx + vy * vy;
      s.yaw_rate = (vx * s.acceleration.y() - vy * s.acceleration.x()) / speed_sq;
      break;
    }
  }

  auto [nominal, u_nom] = flatness_map(s.position, s.velocity, s.acceleration,
                                       s.jerk, s.yaw, s.yaw_rate, vehicle);
  s.nominal = nominal;
  s.u_nominal = u_nom;
  return s;
}

TrajectorySampler lemniscate_trajectory(const LemniscateParams& params,
                                        const VehicleParams& vehicle) {
  params.validate();
  return [params, vehicle](double t) { return lemniscate_sample(params, vehicle, t); };
}

}  // namespace eslqr
