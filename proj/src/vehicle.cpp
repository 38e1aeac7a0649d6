#include "eslqr/vehicle.hpp"

#include <cmath>
#include <stdexcept>

#include <Eigen/Eigenvalues>

namespace eslqr {

void VehicleParams::validate() const {
  if (!(mass > 0.0) || !std::isfinite(mass)) {
    throw std::invalid_argument("vehicle: mass must be positive and finite");
  }
  if ((inertia - inertia.transpose()).cwiseAbs().maxCoeff() > 1e-12) {
    throw std::invalid_argument("vehicle: inertia must be symmetric");
  }
  Eigen::SelfAdjointEigenSolver<Mat3> eig(inertia);
  if (eig.eigenvalues().minCoeff() <= 0.0) {
    throw std::invalid_argument("vehicle: inertia must be positive-definite");
  }
  if (!(thrust_min >= 0.0) || !(thrust_max > thrust_min)) {
    throw std::invalid_argument("vehicle: thrust limits must satisfy 0 <= min < max");
  }
  if (!gravity.allFinite()) {
    throw std::invalid_argument("vehicle: gravity must be finite");
  }
}

double VehicleParams::clamp_thrust(double c) const {
  return std::clamp(c, thrust_min, thrust_max);
}

void TrueState::validate() const {
  if (!p.allFinite() || !v.allFinite() || !omega.allFinite()) {
    throw std::invalid_argument("state: non-finite component");
  }
  if (!q.is_unit()) {
    throw std::invalid_argument("state: quaternion is not unit");
  }
}

TrueStateDerivative true_derivative(const TrueState& s, const Wrench& w,
                                    const VehicleParams& params) {
  const double c = params.clamp_thrust(w.c);
  const RotationMatrix r = quat_to_rot(s.q.normalized());

  TrueStateDerivative d;
  d.dp = s.v;
  d.dv = params.gravity + r * Vec3{0.0, 0.0, c} / params.mass;
  d.dq_wxyz = quat_rate_wxyz(s.q, s.omega);
  d.domega = params.inertia.ldlt().solve(w.tau - s.omega.cross(params.inertia * s.omega));
  return d;
}

NominalStateDerivative nominal_derivative(const NominalState& s, const Control& u,
                                          const VehicleParams& params) {
  const double c = params.clamp_thrust(u.c);
  const RotationMatrix r = quat_to_rot(s.q.normalized());

  NominalStateDerivative d;
  d.dp = s.v;
  d.dv = params.gravity + r * Vec3{0.0, 0.0, c} / params.mass;
  d.dq_wxyz = quat_rate_wxyz(s.q, u.omega);
  return d;
}

}  // namespace eslqr
