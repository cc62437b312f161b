#include "strokeopt/manifold.hpp"

#include <Eigen/Geometry>
#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>
#include <vector>

#include "strokeopt/errors.hpp"

namespace strokeopt {

namespace {

constexpr double kPi = std::numbers::pi;
const double kSqrt2 = std::sqrt(2.0);
const double kSqrt3 = std::sqrt(3.0);

double norm_integrand(const ShapePoint& s, double tau) {
  const std::complex<double> z = std::polar(1.0, tau);
  return std::abs(s.s1() + 2.0 * s.s2() * z + 3.0 * s.s3() * z * z);
}

// Maximizes a unimodal function on [a, b].
template <class F>
double golden_max(F&& f, double a, double b) {
  const double invphi = (std::sqrt(5.0) - 1.0) / 2.0;
  double c = b - invphi * (b - a);
  double d = a + invphi * (b - a);
  double fc = f(c), fd = f(d);
  while (b - a > 1e-12) {
    if (fc > fd) {
      b = d;
      d = c;
      fd = fc;
      c = b - invphi * (b - a);
      fc = f(c);
    } else {
      a = c;
      c = d;
      fc = fd;
      d = a + invphi * (b - a);
      fd = f(d);
    }
  }
  return std::max(fc, fd);
}

Eigen::Vector3d unit_sphere_point(const ChartCoord& c) {
  const double sp = std::sin(c.phi), cp = std::cos(c.phi);
  const double st = std::sin(c.theta), ct = std::cos(c.theta);
  if (c.chart == ChartId::PolarZ) return {sp * ct, sp * st, cp};
  return {cp, sp * ct, sp * st};
}

Eigen::Vector3d sphere_to_shape(const Eigen::Vector3d& u, double mu) {
  return {mu * u[0], mu * u[1] / kSqrt2, mu * u[2] / kSqrt3};
}

}  // namespace

ChartId other_chart(ChartId c) {
  return c == ChartId::PolarZ ? ChartId::PolarX : ChartId::PolarZ;
}

const char* chart_name(ChartId c) {
  return c == ChartId::PolarZ ? "PolarZ" : "PolarX";
}

ChartId chart_from_name(const std::string& name) {
  if (name == "PolarZ") return ChartId::PolarZ;
  if (name == "PolarX") return ChartId::PolarX;
  throw ConfigError("unknown chart '" + name + "'");
}

void SwimmerConfig::validate() const {
  if (!(mu > 0.0 && mu < 1.0)) {
    throw ConfigError("mu must lie in (0, 1), got " + std::to_string(mu));
  }
  if (!(epsilon_mfd > 0.0)) throw ConfigError("epsilon_mfd must be positive");
  if (quadrature_n < 8 || quadrature_n % 2 != 0) {
    throw ConfigError("quadrature_n must be an even integer >= 8");
  }
  // The maximum of the shape norm over the ellipsoid sits at z = +-1 on the
  // boundary; a 4-degree grid plus the sampled norm resolves it.
  double worst = 0.0;
  for (int i = 0; i <= 45; ++i) {
    const double phi = kPi * i / 45.0;
    for (int j = 0; j < 90; ++j) {
      const double theta = -kPi + 2.0 * kPi * j / 90.0;
      worst = std::max(worst, shape_norm(chart_to_shape({ChartId::PolarZ, phi, theta}, mu)));
    }
  }
  if (worst >= 1.0) {
    throw ConfigError("mu = " + std::to_string(mu) +
                      " is too large: the ellipsoid leaves the unit ball of the shape norm "
                      "(max sampled norm " + std::to_string(worst) + ")");
  }
}

std::complex<double> chi_map(const ShapePoint& s, std::complex<double> z) {
  const std::complex<double> zb = std::conj(z);
  return z + s.s1() * zb + s.s2() * zb * zb + s.s3() * zb * zb * zb;
}

double shape_norm(const ShapePoint& s) {
  constexpr int n = 720;
  std::vector<double> samples(n);
  for (int k = 0; k < n; ++k) samples[k] = norm_integrand(s, 2.0 * kPi * k / n);
  double best = *std::max_element(samples.begin(), samples.end());
  const double h = 2.0 * kPi / n;
  for (int k = 0; k < n; ++k) {
    const double prev = samples[(k + n - 1) % n];
    const double next = samples[(k + 1) % n];
    if (samples[k] >= prev && samples[k] >= next) {
      const double tau = h * k;
      best = std::max(best, golden_max([&](double t) { return norm_integrand(s, t); },
                                       tau - h, tau + h));
    }
  }
  return best;
}

double area(const ShapePoint& s) {
  if (shape_norm(s) >= 1.0) {
    throw DomainError("shape norm >= 1: chi(s, .) is not a diffeomorphism");
  }
  return kPi * (1.0 - ellipsoid_quadratic(s));
}

void write_shape_boundary_csv(std::ostream& os, const ShapePoint& s, int n) {
  os << "t,x,y\n";
  os.precision(17);
  for (int k = 0; k < n; ++k) {
    const double t = static_cast<double>(k) / n;
    const auto w = chi_map(s, std::polar(1.0, 2.0 * kPi * t));
    os << t << ',' << w.real() << ',' << w.imag() << '\n';
  }
}

double ellipsoid_quadratic(const ShapePoint& s) {
  return s.s1() * s.s1() + 2.0 * s.s2() * s.s2() + 3.0 * s.s3() * s.s3();
}

double manifold_residual(const ShapePoint& s, double mu) {
  return ellipsoid_quadratic(s) - mu * mu;
}

ShapePoint project_to_manifold(const ShapePoint& s, double mu) {
  const double q = ellipsoid_quadratic(s);
  if (q <= 0.0) throw DomainError("cannot project the origin onto the ellipsoid");
  return ShapePoint(s.s * (mu / std::sqrt(q)));
}

Eigen::Vector3d outward_normal(const ShapePoint& s) {
  return {s.s1(), 2.0 * s.s2(), 3.0 * s.s3()};
}

Eigen::Vector3d normalized_sphere_point(const ShapePoint& s) {
  Eigen::Vector3d u(s.s1(), kSqrt2 * s.s2(), kSqrt3 * s.s3());
  const double n = u.norm();
  if (n == 0.0) throw DomainError("the origin has no spherical coordinates");
  return u / n;
}

double angular_distance(const ShapePoint& a, const ShapePoint& b) {
  const Eigen::Vector3d u = normalized_sphere_point(a);
  const Eigen::Vector3d v = normalized_sphere_point(b);
  return std::atan2(u.cross(v).norm(), u.dot(v));
}

double pole_distance(const ShapePoint& s, ChartId chart) {
  const double phi = chart_coords(s, chart).phi;
  return std::min(phi, kPi - phi);
}

ChartCoord chart_coords(const ShapePoint& s, ChartId chart) {
  const Eigen::Vector3d u = normalized_sphere_point(s);
  ChartCoord c;
  c.chart = chart;
  if (chart == ChartId::PolarZ) {
    c.phi = std::atan2(std::hypot(u[0], u[1]), u[2]);
    c.theta = std::atan2(u[1], u[0]);
  } else {
    c.phi = std::atan2(std::hypot(u[1], u[2]), u[0]);
    c.theta = std::atan2(u[2], u[1]);
  }
  return c;
}

ChartCoord chart_from_shape(const ShapePoint& s, ChartId preferred) {
  ChartCoord c = chart_coords(s, preferred);
  if (std::min(c.phi, kPi - c.phi) < kChartSwitchAngle) c = chart_coords(s, other_chart(preferred));
  return c;
}

ShapePoint chart_to_shape(const ChartCoord& c, double mu) {
  return ShapePoint(sphere_to_shape(unit_sphere_point(c), mu));
}

ChartTangents chart_tangents(const ChartCoord& c, double mu) {
  const double sp = std::sin(c.phi), cp = std::cos(c.phi);
  const double st = std::sin(c.theta), ct = std::cos(c.theta);
  Eigen::Vector3d du_dphi, du_dtheta;
  if (c.chart == ChartId::PolarZ) {
    du_dphi = {cp * ct, cp * st, -sp};
    du_dtheta = {-sp * st, sp * ct, 0.0};
  } else {
    du_dphi = {-sp, cp * ct, cp * st};
    du_dtheta = {0.0, -sp * st, sp * ct};
  }
  return {sphere_to_shape(du_dphi, mu), sphere_to_shape(du_dtheta, mu)};
}

double chart_orientation(const ChartCoord& c, double mu) {
  const ChartTangents t = chart_tangents(c, mu);
  const ShapePoint s = chart_to_shape(c, mu);
  return outward_normal(s).dot(t.d_phi.cross(t.d_theta)) >= 0.0 ? 1.0 : -1.0;
}

}  // namespace strokeopt
