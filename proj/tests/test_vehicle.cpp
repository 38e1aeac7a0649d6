#include <doctest.h>

#include <random>
#include <stdexcept>

#include "eslqr/vehicle.hpp"

using namespace eslqr;

TEST_CASE("vehicle parameter validation") {
  VehicleParams ok;
  CHECK_NOTHROW(ok.validate());

  VehicleParams bad_mass = ok;
  bad_mass.mass = -1.0;
  CHECK_THROWS_AS(bad_mass.validate(), std::invalid_argument);

  VehicleParams asym = ok;
  asym.inertia(0, 1) = 1e-3;
  CHECK_THROWS_AS(asym.validate(), std::invalid_argument);

  VehicleParams indefinite = ok;
  indefinite.inertia = Vec3{0.01, -0.01, 0.02}.asDiagonal();
  CHECK_THROWS_AS(indefinite.validate(), std::invalid_argument);

  VehicleParams bad_thrust = ok;
  bad_thrust.thrust_max = -1.0;
  CHECK_THROWS_AS(bad_thrust.validate(), std::invalid_argument);
}

TEST_CASE("hover is an equilibrium of the true dynamics") {
  VehicleParams params;
  TrueState s;
  s.p = {0, 0, 1};
  const Wrench w{params.mass * 9.81, Vec3::Zero()};
  const TrueStateDerivative d = true_derivative(s, w, params);
  CHECK(d.dp.norm() == 0.0);
  CHECK(d.dv.norm() < 1e-15);
  CHECK(d.dq_wxyz.norm() == 0.0);
  CHECK(d.domega.norm() == 0.0);
}

TEST_CASE("free fall accelerates at g") {
  VehicleParams params;
  TrueState s;
  const TrueStateDerivative d = true_derivative(s, Wrench{0.0, Vec3::Zero()}, params);
  CHECK((d.dv - Vec3{0, 0, -9.81}).norm() < 1e-15);
}

TEST_CASE("thrust is rotated by the attitude") {
  VehicleParams params;
  TrueState s;
  s.q = quat_from_rotvec({M_PI / 2, 0, 0});
  const Wrench w{params.mass * 1.0, Vec3::Zero()};
  const TrueStateDerivative d = true_derivative(s, w, params);
  // Oracle: rotating e3 by 90 degrees about x lands on -y.
  const Vec3 rotated = quat_to_rot(s.q) * Vec3{0, 0, 1};
  CHECK((rotated - Vec3{0, -1, 0}).norm() < 1e-12);
  CHECK((d.dv - (params.gravity + Vec3{0, -1, 0})).norm() < 1e-12);
}

TEST_CASE("rotational plant follows the Euler equation") {
  VehicleParams params;
  TrueState s;
  s.omega = {1.0, -2.0, 0.5};
  const Vec3 tau{0.02, 0.0, -0.01};
  const TrueStateDerivative d = true_derivative(s, Wrench{5.0, tau}, params);
  const Vec3 expected =
      params.inertia.inverse() * (tau - s.omega.cross(params.inertia * s.omega));
  CHECK((d.domega - expected).norm() < 1e-12);
}

TEST_CASE("plant thrust clamp") {
  VehicleParams params;  // limits [0, 4*9.81]
  TrueState s;
  const TrueStateDerivative over =
      true_derivative(s, Wrench{1e4, Vec3::Zero()}, params);
  CHECK(over.dv.z() == doctest::Approx(-9.81 + 4.0 * 9.81).epsilon(1e-12));
  const TrueStateDerivative under =
      true_derivative(s, Wrench{-50.0, Vec3::Zero()}, params);
  CHECK(under.dv.z() == doctest::Approx(-9.81).epsilon(1e-12));
}

TEST_CASE("nominal dynamics mirror the true dynamics") {
  VehicleParams params;
  std::mt19937 rng(11);
  std::uniform_real_distribution<double> uni(-1.0, 1.0);
  for (int i = 0; i < 50; ++i) {
    NominalState n;
    n.p = {uni(rng), uni(rng), uni(rng)};
    n.q = quat_from_rotvec(Vec3{uni(rng), uni(rng), uni(rng)});
    n.v = {uni(rng), uni(rng), uni(rng)};
    const Control u{9.81 + 3.0 * uni(rng), Vec3{uni(rng), uni(rng), uni(rng)}};

    TrueState t;
    t.p = n.p;
    t.q = n.q;
    t.v = n.v;
    t.omega = u.omega;

    const NominalStateDerivative dn = nominal_derivative(n, u, params);
    const TrueStateDerivative dt = true_derivative(t, Wrench{u.c, Vec3::Zero()}, params);
    CHECK((dn.dp - dt.dp).norm() == 0.0);
    CHECK((dn.dv - dt.dv).norm() == 0.0);
    CHECK((dn.dq_wxyz - dt.dq_wxyz).norm() == 0.0);
  }

  NominalState hover;
  hover.p = {0, 0, 2};
  CHECK(nominal_derivative(hover, Control{params.mass * 9.81, Vec3::Zero()}, params)
            .dv.norm() < 1e-15);
  CHECK((nominal_derivative(hover, Control{0.0, Vec3::Zero()}, params).dv -
         params.gravity)
            .norm() == 0.0);
}

TEST_CASE("quaternion derivative stays tangent to the unit sphere") {
  std::mt19937 rng(12);
  std::uniform_real_distribution<double> uni(-3.0, 3.0);
  for (int i = 0; i < 100; ++i) {
    const UnitQuaternion q =
        quat_from_rotvec(Vec3{uni(rng), uni(rng), uni(rng)}.normalized() *
                         std::abs(uni(rng)));
    const Vec3 omega{uni(rng), uni(rng), uni(rng)};
    const Eigen::Vector4d dq = quat_rate_wxyz(q, omega);
    CHECK(std::abs(q.wxyz().dot(dq)) < 1e-12);
  }
}
