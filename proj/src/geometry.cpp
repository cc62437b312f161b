#include "strokeopt/geometry.hpp"

#include <Eigen/SVD>
#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "strokeopt/errors.hpp"

namespace strokeopt {

namespace {

constexpr double kJacobianStep = 1e-5;

Eigen::Matrix4d central_jacobian(const Field4& f, const Eigen::Vector4d& x, double h) {
  Eigen::Matrix4d J;
  for (int k = 0; k < 4; ++k) {
    Eigen::Vector4d xp = x, xm = x;
    xp[k] += h;
    xm[k] -= h;
    J.col(k) = (f(xp) - f(xm)) / (2.0 * h);
  }
  return J;
}

// Columns of the bracket tower, grouped by depth.
std::vector<std::vector<Field4>> bracket_tower(int depth, double scale) {
  std::vector<std::vector<Field4>> levels(depth);
  std::vector<Field4> base;
  for (int j = 1; j <= 3; ++j) {
    Field4 z = z_field(j);
    base.push_back([z, scale](const Eigen::Vector4d& x) -> Eigen::Vector4d { return scale * z(x); });
  }
  levels[0] = base;
  if (depth >= 2) {
    for (int i = 0; i < 3; ++i)
      for (int j = i + 1; j < 3; ++j) levels[1].push_back(bracket_field(base[i], base[j]));
  }
  for (int d = 2; d < depth; ++d) {
    for (const auto& b : base)
      for (const auto& g : levels[d - 1]) levels[d].push_back(bracket_field(b, g));
  }
  return levels;
}

int rank_of(const std::vector<Eigen::Vector4d>& cols, const StatePoint& xi) {
  Eigen::MatrixXd A(4, cols.size());
  Eigen::Vector4d n;
  n << outward_normal(xi.shape), 0.0;
  const bool has_normal = n.norm() > 0.0;
  if (has_normal) n.normalize();
  for (size_t k = 0; k < cols.size(); ++k) {
    Eigen::Vector4d c = cols[k];
    if (has_normal) c -= c.dot(n) * n;
    A.col(k) = c;
  }
  Eigen::JacobiSVD<Eigen::MatrixXd> svd(A);
  const auto& sv = svd.singularValues();
  if (sv.size() == 0 || sv[0] == 0.0) return 0;
  const double tol = 1e-6 * sv[0];
  return static_cast<int>((sv.array() > tol).count());
}

}  // namespace

TangentVector field_X(int j, const ShapePoint& p) {
  const double s1 = p.s1(), s2 = p.s2(), s3 = p.s3();
  switch (j) {
    case 1: return {3.0 * s3 * (1.0 - s1), 0.0, s1 * (s1 - 1.0)};
    case 2: return {2.0 * s2 * (1.0 - s1), s1 * (s1 - 1.0), 0.0};
    case 3: return {0.0, 3.0 * s3 * (1.0 - s1), 2.0 * s2 * (s1 - 1.0)};
    default: throw std::out_of_range("field index must be 1, 2 or 3");
  }
}

Eigen::Vector4d field_Z(int j, const StatePoint& xi) {
  const TangentVector x = field_X(j, xi.shape);
  Eigen::Vector4d z;
  z << x.ds, one_form(xi.shape, x);
  return z;
}

Field4 z_field(int j) {
  if (j < 1 || j > 3) throw std::out_of_range("field index must be 1, 2 or 3");
  return [j](const Eigen::Vector4d& x) { return field_Z(j, StatePoint::from_vec(x)); };
}

Eigen::Matrix4d field_jacobian(const Field4& f, const Eigen::Vector4d& x) {
  const Eigen::Matrix4d Jh = central_jacobian(f, x, kJacobianStep);
  const Eigen::Matrix4d Jh2 = central_jacobian(f, x, 0.5 * kJacobianStep);
  return (4.0 * Jh2 - Jh) / 3.0;
}

Eigen::Vector4d lie_bracket(const Field4& f, const Field4& g, const StatePoint& xi) {
  const Eigen::Vector4d x = xi.vec();
  return field_jacobian(g, x) * f(x) - field_jacobian(f, x) * g(x);
}

Field4 bracket_field(Field4 f, Field4 g) {
  return [f = std::move(f), g = std::move(g)](const Eigen::Vector4d& x) {
    return lie_bracket(f, g, StatePoint::from_vec(x));
  };
}

std::vector<int> lie_rank_table(const StatePoint& xi, int depth) {
  if (depth < 1 || depth > 4) throw std::invalid_argument("lie_rank depth must be in [1, 4]");
  const auto levels = bracket_tower(depth, 1.0);
  std::vector<Eigen::Vector4d> cols;
  std::vector<int> out;
  const Eigen::Vector4d x = xi.vec();
  for (const auto& lvl : levels) {
    for (const auto& f : lvl) cols.push_back(f(x));
    out.push_back(rank_of(cols, xi));
  }
  return out;
}

int lie_rank(const StatePoint& xi, int depth, double field_scale) {
  if (depth < 1 || depth > 4) throw std::invalid_argument("lie_rank depth must be in [1, 4]");
  const auto levels = bracket_tower(depth, field_scale);
  std::vector<Eigen::Vector4d> cols;
  const Eigen::Vector4d x = xi.vec();
  for (const auto& lvl : levels)
    for (const auto& f : lvl) cols.push_back(f(x));
  return rank_of(cols, xi);
}

double control_l1(const SampledControl& u) {
  const size_t n = u.u.size();
  if (n < 2) return 0.0;
  double acc = 0.0;
  for (size_t k = 0; k + 1 < n; ++k) acc += 0.5 * (u.u[k].norm() + u.u[k + 1].norm());
  return acc * u.dt();
}

double control_action(const SampledControl& u) {
  const size_t n = u.u.size();
  if (n < 2) return 0.0;
  double acc = 0.0;
  for (size_t k = 0; k + 1 < n; ++k) acc += 0.5 * (u.u[k].squaredNorm() + u.u[k + 1].squaredNorm());
  return 0.5 * acc * u.dt();
}

SampledControl reparameterize_constant_speed(const SampledControl& u, double T_new) {
  const size_t n = u.u.size();
  if (n < 2) throw std::invalid_argument("control needs at least two samples");
  if (!(T_new > 0.0)) throw std::invalid_argument("T_new must be positive");
  const double l1 = control_l1(u);
  if (l1 < 1e-14) throw ZeroControl("control has zero L1 norm");

  // Cumulative effort phi(t) = \int_0^t ||u||, trapezoid on the sample grid.
  std::vector<double> cum(n, 0.0), speed(n);
  for (size_t k = 0; k < n; ++k) speed[k] = u.u[k].norm();
  const double dt = u.dt();
  for (size_t k = 1; k < n; ++k) cum[k] = cum[k - 1] + 0.5 * dt * (speed[k - 1] + speed[k]);

  // Fall back to the nearest nonzero direction where the control vanishes.
  std::vector<long> nearest(n, -1);
  long last = -1;
  for (size_t k = 0; k < n; ++k) {
    if (speed[k] > 0.0) last = static_cast<long>(k);
    nearest[k] = last;
  }
  long next = -1;
  for (size_t k = n; k-- > 0;) {
    if (speed[k] > 0.0) next = static_cast<long>(k);
    if (nearest[k] < 0 || (next >= 0 && speed[k] == 0.0 &&
                           next - static_cast<long>(k) < static_cast<long>(k) - nearest[k]))
      nearest[k] = next;
  }

  const double alpha = l1 / T_new;
  SampledControl out;
  out.T = T_new;
  out.u.resize(n);
  for (size_t k = 0; k < n; ++k) {
    // Original time whose cumulative effort is the fraction k/(n-1) of the total.
    const double target = l1 * static_cast<double>(k) / static_cast<double>(n - 1);
    size_t j = static_cast<size_t>(std::lower_bound(cum.begin(), cum.end(), target) - cum.begin());
    j = std::clamp<size_t>(j, 1, n - 1);
    const double span = cum[j] - cum[j - 1];
    const double w = span > 0.0 ? (target - cum[j - 1]) / span : 0.0;
    Eigen::VectorXd v = (1.0 - w) * u.u[j - 1] + w * u.u[j];
    if (v.norm() == 0.0) {
      const long m = nearest[w < 0.5 ? j - 1 : j];
      v = u.u[static_cast<size_t>(m)];
    }
    out.u[k] = alpha * v / v.norm();
  }
  return out;
}

Eigen::Matrix<double, 3, 2> orthonormal_frame(const ShapePoint& s) {
  const double mu = std::sqrt(ellipsoid_quadratic(s));
  const ChartCoord c = chart_from_shape(s, ChartId::PolarZ);
  const ChartTangents t = chart_tangents(c, mu);
  const Eigen::Matrix3d G = metric_matrix(s);
  auto ip = [&](const Eigen::Vector3d& a, const Eigen::Vector3d& b) { return a.dot(G * b); };
  Eigen::Vector3d e1 = t.d_phi / std::sqrt(ip(t.d_phi, t.d_phi));
  Eigen::Vector3d e2 = t.d_theta - ip(t.d_theta, e1) * e1;
  e2 /= std::sqrt(ip(e2, e2));
  Eigen::Matrix<double, 3, 2> F;
  F << e1, e2;
  return F;
}

}  // namespace strokeopt
