#include <doctest.h>

#include <cmath>
#include <random>
#include <stdexcept>

#include "eslqr/rotations.hpp"
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

}  // namespace

TEST_CASE("hat matches the cross product") {
  CHECK(hat(Vec3::Zero()).isZero(0.0));

  Mat3 expected;
  expected << 0, -3, 2, 3, 0, -1, -2, 1, 0;
  CHECK((hat({1, 2, 3}) - expected).cwiseAbs().maxCoeff() == 0.0);

  const Vec3 v{0.3, -1.2, 0.7};
  CHECK((hat(v) * v).norm() == doctest::Approx(0.0).epsilon(1e-15));

  std::mt19937 rng(1);
  std::uniform_real_distribution<double> uni(-5.0, 5.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 a{uni(rng), uni(rng), uni(rng)};
    const Vec3 b{uni(rng), uni(rng), uni(rng)};
    CHECK((hat(a) * b - a.cross(b)).norm() < 1e-14);
  }
}

TEST_CASE("vee inverts hat bitwise") {
  CHECK(vee(Mat3::Zero()) == Vec3::Zero());

  Mat3 m;
  m << 0, -3, 2, 3, 0, -1, -2, 1, 0;
  CHECK(vee(m) == Vec3{1, 2, 3});

  std::mt19937 rng(2);
  std::uniform_real_distribution<double> uni(-10.0, 10.0);
  for (int i = 0; i < 100; ++i) {
    const Vec3 v{uni(rng), uni(rng), uni(rng)};
    const Vec3 back = vee(hat(v));
    CHECK(back.x() == v.x());
    CHECK(back.y() == v.y());
    CHECK(back.z() == v.z());
  }

  Mat3 not_skew = m;
  not_skew(0, 0) = 1e-6;
  CHECK_THROWS_AS(vee(not_skew), std::invalid_argument);
}

TEST_CASE("exp_so3 basics") {
  CHECK((exp_so3(Vec3::Zero()) - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);

  Mat3 quarter_z;
  quarter_z << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  CHECK((exp_so3({0, 0, M_PI / 2}) - quarter_z).cwiseAbs().maxCoeff() < 1e-15);

  // Cross-check against the quaternion exponential path.
  const RotationVector theta{0.3, -0.2, 0.1};
  const RotationMatrix r = exp_so3(theta);
  CHECK((r.transpose() * r - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((r - quat_to_rot(quat_from_rotvec(theta))).cwiseAbs().maxCoeff() < 1e-14);
  CHECK((log_so3(r) - theta).norm() < 1e-12);
}

TEST_CASE("exp_so3 series/exact crossover is continuous") {
  std::mt19937 rng(3);
  for (int i = 0; i < 20; ++i) {
    const RotationVector theta = 1e-4 * random_unit(rng);
    const Mat3 k = hat(theta);
    const Mat3 series = Mat3::Identity() + k + 0.5 * k * k;
    CHECK((exp_so3(theta) - series).cwiseAbs().maxCoeff() < 1e-10);
  }
}

TEST_CASE("log_so3 basics and branches") {
  CHECK(log_so3(Mat3::Identity()) == Vec3::Zero());
  CHECK((log_so3(exp_so3({0, 0, M_PI / 2})) - Vec3{0, 0, M_PI / 2}).norm() < 1e-12);

  // Half-turn about x: the antipodal branch. The quaternion double cover
  // gives theta = 2 atan2(||v||, w) * v/||v|| as an independent oracle.
  const RotationMatrix half_turn = Vec3{1.0, -1.0, -1.0}.asDiagonal();
  const RotationVector logged = log_so3(half_turn);
  CHECK((logged - Vec3{M_PI, 0, 0}).norm() < 1e-12);
  const UnitQuaternion q = rot_to_quat(half_turn);
  const double angle = 2.0 * std::atan2(q.vec().norm(), q.w);
  CHECK((angle * q.vec().normalized() - logged).norm() < 1e-9);

  Mat3 bad = Mat3::Identity();
  bad(0, 0) = 1.0 + 1e-6;
  CHECK_THROWS_AS(log_so3(bad), std::invalid_argument);
}

TEST_CASE("exp/log round trip over the canonical ball") {
  std::mt19937 rng(4);
  std::uniform_real_distribution<double> angle(1e-8, M_PI - 0.01);
  double worst = 0.0;
  for (int i = 0; i < 1000; ++i) {
    const RotationVector theta = angle(rng) * random_unit(rng);
    worst = std::max(worst, (log_so3(exp_so3(theta)) - theta).norm());
  }
  CHECK(worst < 1e-9);

  // Near-pi angles exercise the axis-from-diagonal branch.
  for (int i = 0; i < 50; ++i) {
    const RotationVector theta = (M_PI - 1e-4) * random_unit(rng);
    CHECK((log_so3(exp_so3(theta)) - theta).norm() < 1e-9);
  }
}

TEST_CASE("quat_mul algebra") {
  const UnitQuaternion q = quat_from_rotvec({0.4, -0.1, 0.8});
  const UnitQuaternion iq = quat_mul(UnitQuaternion::identity(), q);
  CHECK(quat_dot(iq, q) == doctest::Approx(1.0).epsilon(1e-12));

  const UnitQuaternion unit = quat_mul(q, q.conjugate());
  CHECK(unit.w == doctest::Approx(1.0).epsilon(1e-12));
  CHECK(unit.vec().norm() < 1e-12);

  // 90 about z then 90 about x, against the rotation-matrix product.
  const UnitQuaternion qz = quat_from_rotvec({0, 0, M_PI / 2});
  const UnitQuaternion qx = quat_from_rotvec({M_PI / 2, 0, 0});
  const Mat3 oracle = quat_to_rot(qz) * quat_to_rot(qx);
  CHECK((quat_to_rot(quat_mul(qz, qx)) - oracle).cwiseAbs().maxCoeff() < 1e-9);
}

TEST_CASE("quat_to_rot conventions") {
  CHECK((quat_to_rot(UnitQuaternion::identity()) - Mat3::Identity())
            .cwiseAbs()
            .maxCoeff() == 0.0);

  const double c = std::cos(M_PI / 4), s = std::sin(M_PI / 4);
  Mat3 quarter_z;
  quarter_z << 0, -1, 0, 1, 0, 0, 0, 0, 1;
  CHECK((quat_to_rot({c, 0, 0, s}) - quarter_z).cwiseAbs().maxCoeff() < 1e-15);

  const UnitQuaternion q = quat_from_rotvec({1.1, 0.2, -0.4});
  const UnitQuaternion neg{-q.w, -q.x, -q.y, -q.z};
  CHECK((quat_to_rot(q) - quat_to_rot(neg)).cwiseAbs().maxCoeff() < 1e-15);
}

TEST_CASE("quat_to_rot is a homomorphism") {
  std::mt19937 rng(5);
  std::uniform_real_distribution<double> angle(0.0, M_PI);
  for (int i = 0; i < 200; ++i) {
    const UnitQuaternion a = quat_from_rotvec(angle(rng) * random_unit(rng));
    const UnitQuaternion b = quat_from_rotvec(angle(rng) * random_unit(rng));
    const Mat3 lhs = quat_to_rot(quat_mul(a, b));
    const Mat3 rhs = quat_to_rot(a) * quat_to_rot(b);
    CHECK((lhs - rhs).cwiseAbs().maxCoeff() < 1e-9);
  }
}

TEST_CASE("rot_to_quat round trips and canonicalizes") {
  std::mt19937 rng(6);
  std::uniform_real_distribution<double> angle(0.0, M_PI - 1e-3);
  for (int i = 0; i < 200; ++i) {
    const RotationMatrix r = exp_so3(angle(rng) * random_unit(rng));
    const UnitQuaternion q = rot_to_quat(r);
    CHECK(q.w >= 0.0);
    CHECK((quat_to_rot(q) - r).cwiseAbs().maxCoeff() < 1e-12);
  }
}

TEST_CASE("jr_inv against the finite-difference right Jacobian") {
  CHECK((jr_inv(Vec3::Zero()) - Mat3::Identity()).cwiseAbs().maxCoeff() == 0.0);

  const RotationVector probe{0.2, 0, 0};
  const Mat3 prod = jr_inv(probe) * fd_right_jacobian(probe);
  CHECK((prod - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-5);

  const RotationVector tiny{1e-6, 0, 0};
  CHECK((jr_inv(tiny) - (Mat3::Identity() + 0.5 * hat(tiny))).cwiseAbs().maxCoeff() <
        1e-12);

  std::mt19937 rng(7);
  std::uniform_real_distribution<double> angle(0.01, 5.5);
  for (int i = 0; i < 50; ++i) {
    const RotationVector theta = angle(rng) * random_unit(rng);
    const Mat3 p = jr_inv(theta) * fd_right_jacobian(theta);
    CHECK((p - Mat3::Identity()).cwiseAbs().maxCoeff() < 1e-5);
  }

  CHECK_THROWS_AS(jr_inv({2.0 * M_PI - 0.05, 0, 0}), std::invalid_argument);
}

TEST_CASE("quaternion helpers") {
  const UnitQuaternion q{-0.5, 0.5, 0.5, 0.5};
  const UnitQuaternion canon = q.canonical();
  CHECK(canon.w == 0.5);
  CHECK(canon.x == -0.5);
  CHECK(q.is_unit());
  CHECK_FALSE(UnitQuaternion{1.0, 0.1, 0.0, 0.0}.is_unit());
}
