#include "eslqr/verification.hpp"

#include <cmath>
#include <random>

namespace eslqr {

namespace {

SuiteResult below(std::string name, double observed, double threshold,
                  std::string note = "") {
  SuiteResult r;
  r.name = std::move(name);
  r.observed = observed;
  r.threshold = threshold;
  r.pass_if_below = true;
  r.passed = observed < threshold;
  r.note = std::move(note);
  return r;
}

SuiteResult above(std::string name, double observed, double threshold,
                  std::string note = "") {
  SuiteResult r;
  r.name = std::move(name);
  r.observed = observed;
  r.threshold = threshold;
  r.pass_if_below = false;
  r.passed = observed > threshold;
  r.note = std::move(note);
  return r;
}

Vec3 random_unit(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
  while (v.norm() < 1e-6) {
    v = {gauss(rng), gauss(rng), gauss(rng)};
  }
  return v.normalized();
}

// Raw Hamilton product on wxyz 4-vectors; unlike quat_mul it does not
// normalize, which matters when one factor is a quaternion derivative.
Eigen::Vector4d raw_quat_product(const Eigen::Vector4d& a, const Eigen::Vector4d& b) {
  return {a[0] * b[0] - a[1] * b[1] - a[2] * b[2] - a[3] * b[3],
          a[0] * b[1] + a[1] * b[0] + a[2] * b[3] - a[3] * b[2],
          a[0] * b[2] - a[1] * b[3] + a[2] * b[0] + a[3] * b[1],
          a[0] * b[3] + a[1] * b[2] - a[2] * b[1] + a[3] * b[0]};
}

}  // namespace

Mat9 fd_jacobian_a(const ErrorState& dx, const ErrorControl& du,
                   const RotationMatrix& nominal_r, double nominal_c,
                   const VehicleParams& params, double step) {
  Mat9 j;
  const Vec9 x0 = dx.stacked();
  for (int i = 0; i < 9; ++i) {
    Vec9 xp = x0, xm = x0;
    xp[i] += step;
    xm[i] -= step;
    const Vec9 fp = error_dynamics(ErrorState::from_stacked(xp), du, nominal_r,
                                   nominal_c, params);
    const Vec9 fm = error_dynamics(ErrorState::from_stacked(xm), du, nominal_r,
                                   nominal_c, params);
    j.col(i) = (fp - fm) / (2.0 * step);
  }
  return j;
}

Mat9x4 fd_jacobian_b(const ErrorState& dx, const ErrorControl& du,
                     const RotationMatrix& nominal_r, double nominal_c,
                     const VehicleParams& params, double step) {
  Mat9x4 j;
  const Vec4 u0 = du.stacked();
  for (int i = 0; i < 4; ++i) {
    Vec4 up = u0, um = u0;
    up[i] += step;
    um[i] -= step;
    const Vec9 fp = error_dynamics(dx, ErrorControl::from_stacked(up), nominal_r,
                                   nominal_c, params);
    const Vec9 fm = error_dynamics(dx, ErrorControl::from_stacked(um), nominal_r,
                                   nominal_c, params);
    j.col(i) = (fp - fm) / (2.0 * step);
  }
  return j;
}

Mat3 fd_right_jacobian(const RotationVector& theta, double step) {
  const RotationMatrix base = exp_so3(theta);
  Mat3 j;
  for (int i = 0; i < 3; ++i) {
    RotationVector tp = theta, tm = theta;
    tp[i] += step;
    tm[i] -= step;
    const Vec3 fp = log_so3(base.transpose() * exp_so3(tp));
    const Vec3 fm = log_so3(base.transpose() * exp_so3(tm));
    j.col(i) = (fp - fm) / (2.0 * step);
  }
  return j;
}

std::vector<SuiteResult> lie_group_checks() {
  std::mt19937 rng(20240901);
  std::uniform_real_distribution<double> angle(1e-6, M_PI - 0.01);

  double roundtrip_max = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const RotationVector theta = angle(rng) * random_unit(rng);
    const RotationVector back = log_so3(exp_so3(theta));
    roundtrip_max = std::max(roundtrip_max, (back - theta).norm());
  }

  std::uniform_real_distribution<double> jr_angle(0.01, 5.5);
  double jr_max = 0.0;
  for (int i = 0; i < 50; ++i) {
    const RotationVector theta = jr_angle(rng) * random_unit(rng);
    const Mat3 prod = jr_inv(theta) * fd_right_jacobian(theta);
    jr_max = std::max(jr_max, (prod - Mat3::Identity()).cwiseAbs().maxCoeff());
  }

  return {
      below("exp/log round trip", roundtrip_max, 1e-9,
            "max ||log(exp(theta)) - theta|| over 1000 samples"),
      below("jr_inv vs finite-difference right Jacobian", jr_max, 1e-5,
            "max |jr_inv * J_fd - I| over 50 samples"),
  };
}

std::vector<SuiteResult> jacobian_checks(const VehicleParams& params) {
  std::mt19937 rng(20240902);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> thrust(2.0, 20.0);

  double err_a = 0.0;
  double err_b = 0.0;
  for (int i = 0; i < 100; ++i) {
    ErrorState dx;
    dx.dp = Vec3{uni(rng), uni(rng), uni(rng)};
    dx.dtheta = 0.3 * uni(rng) * random_unit(rng);
    dx.dv = Vec3{uni(rng), uni(rng), uni(rng)};
    ErrorControl du;
    du.dc = 2.0 * uni(rng);
    du.domega = uni(rng) * random_unit(rng);
    const RotationMatrix r = exp_so3(2.0 * uni(rng) * random_unit(rng));
    const double c = thrust(rng);

    const Mat9 a = jacobian_a(dx, du, r, c, params);
    const Mat9 a_fd = fd_jacobian_a(dx, du, r, c, params);
    err_a = std::max(err_a, (a - a_fd).cwiseAbs().maxCoeff() /
                                a_fd.cwiseAbs().maxCoeff());

    const Mat9x4 b = jacobian_b(dx, r, params);
    const Mat9x4 b_fd = fd_jacobian_b(dx, du, r, c, params);
    err_b = std::max(err_b, (b - b_fd).cwiseAbs().maxCoeff() /
                                b_fd.cwiseAbs().maxCoeff());
  }

  return {
      below("analytic A vs finite differences", err_a, 1e-5,
            "max relative error over 100 random points"),
      below("analytic B vs finite differences", err_b, 1e-5,
            "max relative error over 100 random points"),
  };
}

std::vector<SuiteResult> care_checks(const VehicleParams& params) {
  // Hover linearization with default weights.
  const LinearizedSystem sys = linearize(
      ErrorState::zero(), ErrorControl::zero(), RotationMatrix::Identity(),
      params.mass * params.gravity.norm(), params);
  const CareSolution sol = lqr_gain(sys, LqrWeights{});

  // Hand-solved double-integrator fixture.
  Eigen::MatrixXd a(2, 2), b(2, 1), q(2, 2), r(1, 1);
  a << 0.0, 1.0, 0.0, 0.0;
  b << 0.0, 1.0;
  q.setIdentity();
  r << 1.0;
  const CareSolution di = solve_care(a, b, q, r);
  Eigen::MatrixXd p_expect(2, 2);
  p_expect << std::sqrt(3.0), 1.0, 1.0, std::sqrt(3.0);
  Eigen::MatrixXd k_expect(1, 2);
  k_expect << 1.0, std::sqrt(3.0);
  const double fixture_err =
      std::max((di.p - p_expect).cwiseAbs().maxCoeff(),
               (di.k - k_expect).cwiseAbs().maxCoeff());

  // Kleinman iteration from the Schur gain must agree with the Schur P.
  const Eigen::MatrixXd a_reg = regularize_a(sys.a, kDefaultRegularization);
  const CareSolution nk =
      newton_kleinman(a_reg, sys.b, LqrWeights{}.q, LqrWeights{}.r, sol.k);
  const double nk_err = (nk.p - sol.p).cwiseAbs().maxCoeff() /
                        sol.p.cwiseAbs().maxCoeff();

  return {
      below("CARE residual (hover, default weights)", sol.residual, 1e-8),
      below("closed-loop spectral abscissa", sol.closed_loop_abscissa, 0.0,
            "max Re(eig(A - BK))"),
      below("double-integrator CARE fixture", fixture_err, 1e-10,
            "max |P - P*|, |K - K*| vs hand-solved values"),
      below("Newton-Kleinman cross-check", nk_err, 1e-9,
            "relative disagreement with the Schur solution"),
  };
}

std::vector<SuiteResult> flatness_checks(const VehicleParams& params) {
  const LemniscateParams traj;
  const double period = 2.0 * M_PI / traj.omega;

  double dyn_err = 0.0;
  double omega_err = 0.0;
  double min_dot = 1.0;
  UnitQuaternion prev_q;
  bool have_prev = false;

  const int n = 800;  // ~0.0098 s spacing, inside the continuity contract
  for (int i = 0; i <= n; ++i) {
    const double t = period * static_cast<double>(i) / n;
    const TrajectorySample s = lemniscate_sample(traj, params, t);

    // The nominal sample must satisfy the translational dynamics exactly.
    const Vec3 accel = params.gravity +
                       quat_to_rot(s.nominal.q) * Vec3{0.0, 0.0, s.u_nominal.c} /
                           params.mass;
    dyn_err = std::max(dyn_err, (accel - s.acceleration).norm());

    // The feedforward body rate must match the quaternion kinematics.
    const double h = 1e-5;
    const TrajectorySample sp = lemniscate_sample(traj, params, t + h);
    const TrajectorySample sm = lemniscate_sample(traj, params, t - h);
    const Eigen::Vector4d dq = (sp.nominal.q.wxyz() - sm.nominal.q.wxyz()) / (2.0 * h);
    const Eigen::Vector4d omega_q =
        2.0 * raw_quat_product(s.nominal.q.conjugate().wxyz(), dq);
    omega_err = std::max(omega_err,
                         (omega_q.tail<3>() - s.u_nominal.omega).norm());

    if (have_prev) {
      min_dot = std::min(min_dot, quat_dot(prev_q, s.nominal.q));
    }
    prev_q = s.nominal.q;
    have_prev = true;
  }

  return {
      below("flatness dynamics consistency", dyn_err, 1e-8,
            "max ||g + R e3 c/m - acc|| along the default lemniscate"),
      below("flatness quaternion kinematics", omega_err, 1e-4,
            "feedforward omega vs finite-differenced quaternion, dt=1e-5"),
      above("quaternion sign continuity", min_dot, 0.0,
            "min consecutive quaternion dot along the trajectory"),
  };
}

std::vector<SuiteResult> all_checks(const VehicleParams& params) {
  std::vector<SuiteResult> out;
  for (auto&& group : {lie_group_checks(), jacobian_checks(params),
                       care_checks(params), flatness_checks(params)}) {
    out.insert(out.end(), group.begin(), group.end());
  }
  return out;
}

}  // namespace eslqr
