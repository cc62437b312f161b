#pragma once

// Shared fixtures for the unit and acceptance tests.

#include <cmath>
#include <numbers>
#include <random>

#include "strokeopt/errors.hpp"
#include "strokeopt/stroke.hpp"

namespace testsupport {

using namespace strokeopt;

inline constexpr double kPi = std::numbers::pi;

inline ShapePoint random_manifold_point(std::mt19937_64& rng, double mu) {
  std::normal_distribution<double> n(0.0, 1.0);
  Eigen::Vector3d u(n(rng), n(rng), n(rng));
  u.normalize();
  return ShapePoint(mu * u[0], mu * u[1] / std::sqrt(2.0), mu * u[2] / std::sqrt(3.0));
}

/// Closed spline whose control polygon is a perturbed circle in chart
/// coordinates.
inline SplineStroke loop_stroke(double mu, double phi_c, double theta_c, double radius,
                                const std::vector<double>& wobble = {}, ChartId chart = ChartId::PolarZ) {
  SplineStroke st(mu, 10);
  st.chart.axis = chart;
  for (int j = 0; j < st.p; ++j) {
    const double a = 2.0 * kPi * (j - 1) / st.p;
    const double r = radius * (1.0 + (wobble.empty() ? 0.0 : wobble[j]));
    st.beta[j] = phi_c + r * std::cos(a);
    st.alpha[j] = theta_c + r * std::sin(a);
  }
  return st;
}

/// Random simple stroke inside one chart (rejection on self-intersection).
inline SplineStroke random_simple_stroke(std::mt19937_64& rng, double mu) {
  std::uniform_real_distribution<double> uphi(0.7, 2.4), uth(-2.5, 2.5), urad(0.05, 0.5),
      uw(-0.35, 0.35);
  for (;;) {
    std::vector<double> w(10);
    for (double& x : w) x = uw(rng);
    SplineStroke st = loop_stroke(mu, uphi(rng), uth(rng), urad(rng), w);
    if (std::uniform_real_distribution<double>(0, 1)(rng) < 0.5) st = st.reversed();
    try {
      check_simple(st);
      return st;
    } catch (const NotSimple&) {
    }
  }
}

/// Random smooth stroke, not necessarily simple.
inline SplineStroke random_stroke(std::mt19937_64& rng, double mu) {
  std::normal_distribution<double> n(0.0, 0.3);
  std::uniform_real_distribution<double> uphi(0.8, 2.3), uth(-kPi, kPi);
  SplineStroke st(mu, 10);
  const double pc = uphi(rng), tc = uth(rng);
  for (int j = 0; j < st.p; ++j) {
    st.beta[j] = pc + n(rng);
    st.alpha[j] = tc + n(rng);
  }
  return st;
}

}  // namespace testsupport
