#pragma once

#include <string>
#include <vector>

#include "eslqr/riccati.hpp"
#include "eslqr/trajectory.hpp"

namespace eslqr {

// One line of the verification report. Passes when `observed` is on the
// right side of `threshold` (below by default).
struct SuiteResult {
  std::string name;
  double observed{0.0};
  double threshold{0.0};
  bool pass_if_below{true};
  bool passed{false};
  std::string note;
};

// Central-difference Jacobians of error_dynamics, step 1e-6. Independent of
// the analytic jacobian_a / jacobian_b paths; used to cross-check them.
Mat9 fd_jacobian_a(const ErrorState& dx, const ErrorControl& du,
                   const RotationMatrix& nominal_r, double nominal_c,
                   const VehicleParams& params, double step = 1e-6);
Mat9x4 fd_jacobian_b(const ErrorState& dx, const ErrorControl& du,
                     const RotationMatrix& nominal_r, double nominal_c,
                     const VehicleParams& params, double step = 1e-6);

// Central-difference right Jacobian of SO(3):
// column i = d/de log(exp(theta)^T exp(theta + e e_i)) at e = 0.
Mat3 fd_right_jacobian(const RotationVector& theta, double step = 1e-6);

std::vector<SuiteResult> lie_group_checks();
std::vector<SuiteResult> jacobian_checks(const VehicleParams& params = {});
std::vector<SuiteResult> care_checks(const VehicleParams& params = {});
std::vector<SuiteResult> flatness_checks(const VehicleParams& params = {});

// All of the above, in report order.
std::vector<SuiteResult> all_checks(const VehicleParams& params = {});

}  // namespace eslqr
