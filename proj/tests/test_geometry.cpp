#include <random>

#include "doctest.h"
#include "support.hpp"
#include "strokeopt/geometry.hpp"

using namespace strokeopt;
using testsupport::kPi;

namespace {

// Fourth components of Z_1..Z_3 as printed polynomials (Z_3 with 6 s3^2).
Eigen::Vector4d z_poly(int j, const ShapePoint& p) {
  const double s1 = p.s1(), s2 = p.s2(), s3 = p.s3();
  const Eigen::Vector3d x = field_X(j, p).ds;
  double r = 0.0;
  if (j == 1) r = 4.5 * s2 * s3 - 3 * s1 * s2 * s3 - 4.5 * s2 * s3 * s3 - s1 * s2 + 1.5 * s1 * s1 * s2;
  if (j == 2)
    r = 3 * s2 * s2 - 2 * s1 * s2 * s2 - 3 * s2 * s2 * s3 - 0.5 * s1 * s1 - 2 * s1 * s3 + 0.5 * s1 * s1 * s1 +
        1.5 * s1 * s1 * s3;
  if (j == 3)
    r = 1.5 * s1 * s3 + 6 * s3 * s3 - 1.5 * s1 * s1 * s3 - 4.5 * s1 * s3 * s3 - 2 * s2 * s2 + 3 * s1 * s2 * s2;
  return {x[0], x[1], x[2], r};
}

// Printed closed form of the Z_1, Z_2 bracket (opposite sign convention).
Eigen::Vector4d printed_bracket(const ShapePoint& p) {
  const double s1 = p.s1(), s2 = p.s2(), s3 = p.s3();
  return {0.0, 3 * s3 * (2 * s1 - 1) * (s1 - 1), -2 * s2 * (2 * s1 - 1) * (s1 - 1),
          -1.5 * s1 * s3 - 3 * s1 * s1 * s2 * s2 + 1.5 * s1 * s1 * s1 * s3 + 4.5 * s1 * s1 * s3 * s3 -
              10.5 * s1 * s3 * s3 - s1 * s1 + 6 * s3 * s3 + s1 * s1 * s1 + 5 * s1 * s2 * s2 - 2 * s2 * s2};
}

StatePoint random_state(std::mt19937_64& rng) {
  return {testsupport::random_manifold_point(rng, 0.3), std::uniform_real_distribution<double>(-1, 1)(rng)};
}

}  // namespace

TEST_CASE("spanning fields") {
  const StatePoint xi{ShapePoint(0.3, 0, 0), 0.0};
  CHECK(field_Z(1, xi)[3] == 0.0);
  CHECK(field_Z(3, xi).norm() == 0.0);
  CHECK_THROWS_AS(field_X(0, xi.shape), std::out_of_range);
  CHECK_THROWS_AS(field_X(4, xi.shape), std::out_of_range);

  std::mt19937_64 rng(5);
  for (int k = 0; k < 500; ++k) {
    const StatePoint x = random_state(rng);
    const ShapePoint& s = x.shape;
    for (int j = 1; j <= 3; ++j) {
      CHECK(std::abs(outward_normal(s).dot(field_X(j, s).ds)) < 1e-15);
      CHECK((field_Z(j, x) - z_poly(j, s)).norm() < 1e-14);
    }
    const Eigen::Vector4d lin = 2 * s.s2() * field_Z(1, x) - 3 * s.s3() * field_Z(2, x) - s.s1() * field_Z(3, x);
    CHECK(lin.norm() < 1e-12);
    if (std::abs(s.s1()) > 0.05) {
      const Eigen::Vector4d z3 = (2 * s.s2() * field_Z(1, x) - 3 * s.s3() * field_Z(2, x)) / s.s1();
      CHECK((field_Z(3, x) - z3).norm() < 1e-12);
    }
  }
}

TEST_CASE("lie bracket") {
  const Field4 z1 = z_field(1), z2 = z_field(2), z3 = z_field(3);
  std::mt19937_64 rng(6);
  std::normal_distribution<double> n(0.0, 1.0);
  double worst = 0.0;
  for (int k = 0; k < 200; ++k) {
    const StatePoint x = random_state(rng);
    const Eigen::Vector4d b12 = lie_bracket(z1, z2, x);
    worst = std::max(worst, (b12 + printed_bracket(x.shape)).cwiseAbs().maxCoeff());
    CHECK((b12 + lie_bracket(z2, z1, x)).norm() < 1e-9);
    CHECK(lie_bracket(z1, z1, x).norm() < 1e-9);

    // bilinearity in the first slot
    const double a = n(rng), b = n(rng);
    const Field4 comb = [&](const Eigen::Vector4d& v) -> Eigen::Vector4d { return a * z1(v) + b * z3(v); };
    const Eigen::Vector4d lhs = lie_bracket(comb, z2, x);
    const Eigen::Vector4d rhs = a * b12 + b * lie_bracket(z3, z2, x);
    CHECK((lhs - rhs).norm() < 1e-8 * (1 + std::abs(a) + std::abs(b)));
  }
  CHECK(worst < 1e-7);

  SUBCASE("linear fields") {
    // [Ax, Bx] = (BA - AB) x exactly for linear fields.
    Eigen::Matrix4d A = Eigen::Matrix4d::Random(), B = Eigen::Matrix4d::Random();
    const Field4 fa = [A](const Eigen::Vector4d& v) -> Eigen::Vector4d { return A * v; };
    const Field4 fb = [B](const Eigen::Vector4d& v) -> Eigen::Vector4d { return B * v; };
    const StatePoint x{ShapePoint(0.1, -0.2, 0.05), 0.4};
    CHECK((lie_bracket(fa, fb, x) - (B * A - A * B) * x.vec()).norm() < 1e-9);
  }

  SUBCASE("Jacobi identity") {
    const StatePoint x = random_state(rng);
    const Eigen::Vector4d j = lie_bracket(z1, bracket_field(z2, z3), x) + lie_bracket(z2, bracket_field(z3, z1), x) +
                              lie_bracket(z3, bracket_field(z1, z2), x);
    CHECK(j.norm() < 1e-5);
  }
}

TEST_CASE("lie rank") {
  const StatePoint xi{ShapePoint(0.3, 0, 0), 0.0};
  CHECK(lie_rank(xi, 1) == 2);
  CHECK(lie_rank(xi, 2) == 3);
  CHECK(lie_rank_table(xi, 3) == std::vector<int>{2, 3, 3});
  CHECK_THROWS(lie_rank(xi, 0));
  CHECK_THROWS(lie_rank(xi, 5));
  // scale invariance of the relative threshold
  CHECK(lie_rank(xi, 2, 1e-3) == 3);

  std::mt19937_64 rng(7);
  for (int k = 0; k < 30; ++k) CHECK(lie_rank(random_state(rng), 2) == 3);

  // at s = 0 every field vanishes
  CHECK(lie_rank({ShapePoint(0, 0, 0), 0.0}, 3) == 0);
}

TEST_CASE("control reparameterization") {
  std::mt19937_64 rng(9);
  std::normal_distribution<double> n(0.0, 1.0);
  SampledControl u;
  u.T = 1.7;
  for (int k = 0; k < 401; ++k) {
    const double t = k * u.T / 400.0;
    Eigen::VectorXd v(3);
    v << std::sin(3 * t) + 0.2, std::cos(t) * t, 0.5 * n(rng) * 0.01 + std::exp(-t);
    u.u.push_back(v);
  }
  const double l1 = control_l1(u);
  const SampledControl w = reparameterize_constant_speed(u, 2.3);
  CHECK(w.T == 2.3);
  CHECK(w.u.size() == u.u.size());
  const double alpha = l1 / 2.3;
  double dev = 0.0;
  for (const auto& v : w.u) dev = std::max(dev, std::abs(v.norm() - alpha));
  CHECK(dev < 1e-9);
  CHECK(control_l1(w) == doctest::Approx(l1).epsilon(1e-9));
  CHECK(control_action(w) == doctest::Approx(l1 * l1 / (2 * 2.3)).epsilon(1e-9));
  // Cauchy-Schwarz: the constant-speed version has minimal action
  CHECK(control_action(reparameterize_constant_speed(u, u.T)) <= control_action(u));

  SampledControl zero;
  zero.u.assign(11, Eigen::VectorXd::Zero(3));
  CHECK_THROWS_AS(reparameterize_constant_speed(zero, 1.0), ZeroControl);
}

TEST_CASE("orthonormal frame") {
  std::mt19937_64 rng(10);
  for (int k = 0; k < 200; ++k) {
    const ShapePoint s = testsupport::random_manifold_point(rng, 0.3);
    const auto F = orthonormal_frame(s);
    const Eigen::Matrix2d gram = F.transpose() * metric_matrix(s) * F;
    CHECK((gram - Eigen::Matrix2d::Identity()).norm() < 1e-12);
    CHECK((outward_normal(s).transpose() * F).norm() < 1e-12);
  }
}
