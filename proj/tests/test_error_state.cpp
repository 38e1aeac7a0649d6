#include <doctest.h>

#include <cmath>
#include <random>

#include "eslqr/error_state.hpp"
#include "eslqr/verification.hpp"

using namespace eslqr;

namespace {

Vec3 random_unit(std::mt19937& rng) {
  std::normal_distribution<double> gauss(0.0, 1.0);
  Vec3 v{gauss(rng), gauss(rng), gauss(rng)};
  while (v.norm() < 1e-6) {
    v = {gauss(rng), gauss(rng), gauss(rng)};
  }
  return v.normalized();
}

NominalState random_nominal(std::mt19937& rng) {
  std::uniform_real_distribution<double> uni(-2.0, 2.0);
  NominalState n;
  n.p = {uni(rng), uni(rng), uni(rng)};
  n.q = quat_from_rotvec(std::abs(uni(rng)) * random_unit(rng));
  n.v = {uni(rng), uni(rng), uni(rng)};
  return n;
}

}  // namespace

TEST_CASE("compose_state identity and yaw error") {
  const NominalState n = [] {
    NominalState s;
    s.p = {1, 2, 3};
    s.v = {0.1, -0.2, 0.3};
    return s;
  }();

  const NominalState same = compose_state(n, ErrorState::zero());
  CHECK((same.p - n.p).norm() == 0.0);
  CHECK((same.v - n.v).norm() == 0.0);
  CHECK(std::abs(quat_dot(same.q, n.q)) == doctest::Approx(1.0).epsilon(1e-12));

  ErrorState yaw_err;
  yaw_err.dtheta = {0, 0, M_PI / 2};
  const NominalState rotated = compose_state(n, yaw_err);
  const UnitQuaternion expected = quat_from_rotvec({0, 0, M_PI / 2});
  CHECK(std::abs(quat_dot(rotated.q, expected)) == doctest::Approx(1.0).epsilon(1e-12));
}

TEST_CASE("compute_error basics") {
  NominalState n;
  n.p = {0, 0, 1};
  CHECK(compute_error(n, n).stacked().norm() == 0.0);

  NominalState shifted = n;
  shifted.p += Vec3{1, 0, 0};
  const ErrorState e = compute_error(shifted, n);
  CHECK((e.stacked() - (Vec9() << 1, 0, 0, 0, 0, 0, 0, 0, 0).finished()).norm() == 0.0);

  // Nominal yawed +90, true at identity: the relative rotation R^T R_t is a
  // -90 yaw. Matrix oracle alongside.
  NominalState yawed = n;
  yawed.q = quat_from_rotvec({0, 0, M_PI / 2});
  const ErrorState de = compute_error(n, yawed);
  CHECK((de.dtheta - Vec3{0, 0, -M_PI / 2}).norm() < 1e-12);
  const RotationMatrix rel = quat_to_rot(yawed.q).transpose() * quat_to_rot(n.q);
  CHECK((exp_so3(de.dtheta) - rel).cwiseAbs().maxCoeff() < 1e-12);
}

TEST_CASE("compose_state and compute_error invert each other") {
  std::mt19937 rng(21);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> angle(0.0, 3.0);  // inside the pi ball
  double worst = 0.0;
  for (int i = 0; i < 200; ++i) {
    const NominalState n = random_nominal(rng);
    ErrorState e;
    e.dp = {uni(rng), uni(rng), uni(rng)};
    e.dtheta = angle(rng) * random_unit(rng);
    e.dv = {uni(rng), uni(rng), uni(rng)};
    const ErrorState back = compute_error(compose_state(n, e), n);
    worst = std::max(worst, (back.stacked() - e.stacked()).norm());
  }
  CHECK(worst < 1e-9);
}

TEST_CASE("compose_control rotates the nominal body rate") {
  const Control u{12.0, Vec3{1, 0, 0}};

  const Control same = compose_control(u, ErrorControl::zero(), Vec3::Zero());
  CHECK(same.c == 12.0);
  CHECK((same.omega - u.omega).norm() == 0.0);

  // 90-degree yaw error: omega_t = exp(dtheta)^T omega. Matrix oracle.
  const RotationVector dtheta{0, 0, M_PI / 2};
  const Control rotated = compose_control(u, ErrorControl::zero(), dtheta);
  const Vec3 oracle = exp_so3(dtheta).transpose() * u.omega;
  CHECK((rotated.omega - oracle).norm() == 0.0);
  CHECK((rotated.omega - Vec3{0, -1, 0}).norm() < 1e-12);

  const Control cheaper = compose_control(u, ErrorControl{-2.0, Vec3::Zero()}, Vec3::Zero());
  CHECK(cheaper.c == 10.0);
}

TEST_CASE("error dynamics vanish at the origin") {
  VehicleParams params;
  const RotationMatrix r = exp_so3({0.2, -0.4, 0.9});
  const Vec9 f = error_dynamics(ErrorState::zero(), ErrorControl::zero(), r, 11.0, params);
  CHECK(f.norm() == 0.0);
}

TEST_CASE("error dynamics fixtures") {
  VehicleParams params;  // m = 1

  // Pure thrust perturbation at hover.
  ErrorControl du;
  du.dc = 0.7;
  const Vec9 f1 = error_dynamics(ErrorState::zero(), du, RotationMatrix::Identity(),
                                 9.81, params);
  CHECK(f1.segment<3>(0).norm() == 0.0);
  CHECK(f1.segment<3>(3).norm() == 0.0);
  CHECK((f1.segment<3>(6) - Vec3{0, 0, 0.7}).norm() < 1e-15);

  // Roll error tilts the thrust: dv' = [dtheta]x (0,0,c) = (0, -0.981, 0).
  ErrorState dx;
  dx.dtheta = {0.1, 0, 0};
  const Vec9 f2 = error_dynamics(dx, ErrorControl::zero(), RotationMatrix::Identity(),
                                 9.81, params);
  const Vec3 oracle = Vec3{0.1, 0, 0}.cross(Vec3{0, 0, 9.81});
  CHECK((f2.segment<3>(6) - oracle).norm() < 1e-15);
  CHECK((f2.segment<3>(6) - Vec3{0, -0.981, 0}).norm() < 1e-12);
}

TEST_CASE("jacobian_a fixtures") {
  VehicleParams params;

  const Mat9 a = jacobian_a(ErrorState::zero(), ErrorControl::zero(),
                            RotationMatrix::Identity(), params.mass * 9.81, params);
  Mat3 dv_dtheta;
  dv_dtheta << 0, 9.81, 0, -9.81, 0, 0, 0, 0, 0;
  CHECK((a.block<3, 3>(6, 3) - dv_dtheta).cwiseAbs().maxCoeff() < 1e-12);
  CHECK((a.block<3, 3>(0, 6) - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);

  ErrorControl du;
  du.domega = {0, 0, 1};
  const Mat9 a2 = jacobian_a(ErrorState::zero(), du, RotationMatrix::Identity(),
                             9.81, params);
  CHECK((a2.block<3, 3>(3, 3) + 0.5 * hat(Vec3{0, 0, 1})).cwiseAbs().maxCoeff() == 0.0);
}

TEST_CASE("jacobian_b fixtures") {
  VehicleParams params;

  const Mat9x4 b = jacobian_b(ErrorState::zero(), RotationMatrix::Identity(), params);
  CHECK((b.block<3, 3>(3, 1) - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);
  CHECK((b.block<3, 1>(6, 0) - Vec3{0, 0, 1}).cwiseAbs().maxCoeff() < 1e-15);

  ErrorState dx;
  dx.dtheta = {0.1, 0.2, -0.1};
  ErrorControl du;
  du.dc = 0.3;
  du.domega = {0.2, -0.1, 0.4};
  const RotationMatrix r = exp_so3({0.5, 0.1, -0.3});
  const Mat9x4 analytic = jacobian_b(dx, r, params);
  const Mat9x4 fd = fd_jacobian_b(dx, du, r, 9.0, params);
  CHECK((analytic - fd).cwiseAbs().maxCoeff() / fd.cwiseAbs().maxCoeff() < 1e-5);
}

TEST_CASE("jacobians match finite differences at random points") {
  VehicleParams params;
  std::mt19937 rng(22);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  std::uniform_real_distribution<double> thrust(2.0, 20.0);

  double worst_a = 0.0, worst_b = 0.0;
  for (int i = 0; i < 100; ++i) {
    ErrorState dx;
    dx.dp = {uni(rng), uni(rng), uni(rng)};
    dx.dtheta = 0.3 * uni(rng) * random_unit(rng);
    dx.dv = {uni(rng), uni(rng), uni(rng)};
    ErrorControl du;
    du.dc = 2.0 * uni(rng);
    du.domega = uni(rng) * random_unit(rng);
    const RotationMatrix r = exp_so3(2.0 * uni(rng) * random_unit(rng));
    const double c = thrust(rng);

    const Mat9 a_fd = fd_jacobian_a(dx, du, r, c, params);
    worst_a = std::max(worst_a,
                       (jacobian_a(dx, du, r, c, params) - a_fd).cwiseAbs().maxCoeff() /
                           a_fd.cwiseAbs().maxCoeff());
    const Mat9x4 b_fd = fd_jacobian_b(dx, du, r, c, params);
    worst_b = std::max(worst_b,
                       (jacobian_b(dx, r, params) - b_fd).cwiseAbs().maxCoeff() /
                           b_fd.cwiseAbs().maxCoeff());
  }
  CHECK(worst_a < 1e-5);
  CHECK(worst_b < 1e-5);
}

TEST_CASE("linearization error decays quadratically") {
  VehicleParams params;
  const RotationMatrix r = exp_so3({0.1, -0.2, 0.3});
  const double c = 9.81;
  const Mat9 a = jacobian_a(ErrorState::zero(), ErrorControl::zero(), r, c, params);
  const Mat9x4 b = jacobian_b(ErrorState::zero(), r, params);

  std::mt19937 rng(23);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int i = 0; i < 20; ++i) {
    Vec9 dx;
    Vec4 du;
    for (int k = 0; k < 9; ++k) dx[k] = uni(rng);
    for (int k = 0; k < 4; ++k) du[k] = uni(rng);

    auto defect = [&](double s) {
      const Vec9 f = error_dynamics(ErrorState::from_stacked(s * dx),
                                    ErrorControl::from_stacked(s * du), r, c, params);
      return (f - s * (a * dx + b * du)).norm();
    };
    const double e2 = defect(1e-2);
    const double e3 = defect(1e-3);
    REQUIRE(e3 > 0.0);
    CHECK(e2 / e3 >= 50.0);
  }
}

TEST_CASE("linearized system keeps the documented sparsity") {
  VehicleParams params;
  std::mt19937 rng(24);
  std::uniform_real_distribution<double> uni(-0.3, 0.3);
  for (int i = 0; i < 20; ++i) {
    ErrorState dx;
    dx.dp = {uni(rng), uni(rng), uni(rng)};
    dx.dtheta = {uni(rng), uni(rng), uni(rng)};
    dx.dv = {uni(rng), uni(rng), uni(rng)};
    ErrorControl du;
    du.dc = uni(rng);
    du.domega = {uni(rng), uni(rng), uni(rng)};
    const LinearizedSystem sys =
        linearize(dx, du, exp_so3({uni(rng), uni(rng), uni(rng)}), 9.81, params);

    // A: only (dp,dv), (dtheta,dtheta), (dv,dtheta) may be nonzero.
    Mat9 a_masked = sys.a;
    a_masked.block<3, 3>(0, 6).setZero();
    a_masked.block<3, 3>(3, 3).setZero();
    a_masked.block<3, 3>(6, 3).setZero();
    CHECK(a_masked.cwiseAbs().maxCoeff() == 0.0);

    // B: only (dtheta,domega) and (dv,dc).
    Mat9x4 b_masked = sys.b;
    b_masked.block<3, 3>(3, 1).setZero();
    b_masked.block<3, 1>(6, 0).setZero();
    CHECK(b_masked.cwiseAbs().maxCoeff() == 0.0);
  }
}

TEST_CASE("stacking order is (dp, dtheta, dv)") {
  ErrorState e;
  e.dp = {1, 2, 3};
  e.dtheta = {4, 5, 6};
  e.dv = {7, 8, 9};
  Vec9 expected;
  expected << 1, 2, 3, 4, 5, 6, 7, 8, 9;
  CHECK((e.stacked() - expected).norm() == 0.0);
  const ErrorState back = ErrorState::from_stacked(expected);
  CHECK((back.dtheta - Vec3{4, 5, 6}).norm() == 0.0);

  ErrorControl u;
  u.dc = 1.5;
  u.domega = {-1, 2, -3};
  CHECK((u.stacked() - Vec4{1.5, -1, 2, -3}).norm() == 0.0);
}
