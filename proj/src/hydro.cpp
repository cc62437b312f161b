#include "strokeopt/hydro.hpp"

#include <Eigen/Eigenvalues>
#include <Eigen/Geometry>
#include <cmath>
#include <numbers>
#include <ostream>

#include "strokeopt/errors.hpp"
#include "strokeopt/stroke.hpp"

namespace strokeopt {

namespace {

constexpr double kDensityStep = 1e-5;

// ell_phi, ell_theta: the 1-form evaluated on the chart coordinate vectors.
Eigen::Vector2d chart_one_form(const ChartCoord& c, double mu) {
  const ShapePoint s = chart_to_shape(c, mu);
  const ChartTangents t = chart_tangents(c, mu);
  const Eigen::RowVector3d l = one_form_row(s);
  return {l.dot(t.d_phi.transpose()), l.dot(t.d_theta.transpose())};
}

}  // namespace

Eigen::Matrix3d MassData::metric_matrix() const {
  return Md - N.transpose() * N / Mr;
}

MassData mass_data(const ShapePoint& p) {
  const double s1 = p.s1(), s2 = p.s2(), s3 = p.s3();
  MassData m;
  m.Mr = 2.0 - 2.0 * s1;
  m.N << -3.0 * s2 + 2.0 * s2 * s1 + 3.0 * s2 * s3,
      -s1 - 4.0 * s3 + s1 * s1 + 3.0 * s1 * s3,
      -2.0 * s2 + 3.0 * s2 * s1;
  const double m11 = 4.0 * s2 * s2 - 3.0 * s3 + 4.5 * s3 * s3 + 1.0;
  const double m12 = 2.0 * s1 * s2 + 6.0 * s2 * s3;
  const double m13 = 4.0 * s2 * s2 - 0.5 * s1 + 1.5 * s1 * s3;
  const double m22 = s1 * s1 + 6.0 * s1 * s3 + 9.0 * s3 * s3 + 2.0 / 3.0;
  const double m33 = 4.0 * s2 * s2 + 0.5 * s1 * s1 + 0.5;
  m.Md << m11, m12, m13,
          m12, m22, m12,
          m13, m12, m33;
  return m;
}

Eigen::Matrix3d metric_matrix(const ShapePoint& s) { return mass_data(s).metric_matrix(); }

Eigen::Matrix<double, 3, 2> tangent_basis(const ShapePoint& s) {
  const Eigen::Vector3d n = outward_normal(s).normalized();
  // Any axis not parallel to n seeds the complement.
  Eigen::Vector3d seed = Eigen::Vector3d::UnitX();
  if (std::abs(n[0]) > 0.8) seed = Eigen::Vector3d::UnitY();
  const Eigen::Vector3d e1 = (seed - seed.dot(n) * n).normalized();
  const Eigen::Vector3d e2 = n.cross(e1);
  Eigen::Matrix<double, 3, 2> b;
  b << e1, e2;
  return b;
}

double min_pullback_eigenvalue(const ShapePoint& s) {
  const auto b = tangent_basis(s);
  const Eigen::Matrix2d g = b.transpose() * metric_matrix(s) * b;
  Eigen::SelfAdjointEigenSolver<Eigen::Matrix2d> es(g, Eigen::EigenvaluesOnly);
  return es.eigenvalues()[0];
}

double metric(const ShapePoint& s, const TangentVector& v, const TangentVector& w) {
  if (min_pullback_eigenvalue(s) < 1e-12) {
    throw DegenerateMetric("metric is not positive definite on the tangent plane");
  }
  return v.ds.dot(metric_matrix(s) * w.ds);
}

Eigen::RowVector3d one_form_row(const ShapePoint& s) {
  const MassData m = mass_data(s);
  return -m.N / m.Mr;
}

double one_form(const ShapePoint& s, const TangentVector& v) {
  return one_form_row(s).dot(v.ds.transpose());
}

double dL_chart_density(const ChartCoord& c, double mu) {
  const double h = kDensityStep;
  ChartCoord pp = c, pm = c, tp = c, tm = c;
  pp.phi += h;
  pm.phi -= h;
  tp.theta += h;
  tm.theta -= h;
  const double d_phi_ell_theta = (chart_one_form(pp, mu)[1] - chart_one_form(pm, mu)[1]) / (2 * h);
  const double d_theta_ell_phi = (chart_one_form(tp, mu)[0] - chart_one_form(tm, mu)[0]) / (2 * h);
  return d_phi_ell_theta - d_theta_ell_phi;
}

double chart_area_element(const ChartCoord& c, double mu) {
  const ShapePoint s = chart_to_shape(c, mu);
  const ChartTangents t = chart_tangents(c, mu);
  const Eigen::Matrix3d g = metric_matrix(s);
  const double a = t.d_phi.dot(g * t.d_phi);
  const double b = t.d_phi.dot(g * t.d_theta);
  const double d = t.d_theta.dot(g * t.d_theta);
  return std::sqrt(std::max(a * d - b * b, 0.0));
}

double dL_density(const ShapePoint& s) {
  const double mu = std::sqrt(ellipsoid_quadratic(s));
  const ChartCoord c = chart_from_shape(s, ChartId::PolarZ);
  if (min_pullback_eigenvalue(s) < 1e-12) {
    throw DegenerateMetric("metric is not positive definite on the tangent plane");
  }
  return chart_orientation(c, mu) * dL_chart_density(c, mu) / chart_area_element(c, mu);
}

double efficiency(const Trajectory& traj, double T) {
  const auto& smp = traj.samples;
  const int n = static_cast<int>(smp.size()) - 1;
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("efficiency needs an even panel count");
  const double h = 1.0 / n;
  double disp = 0.0, energy = 0.0;
  for (int k = 0; k <= n; ++k) {
    const double w = (k == 0 || k == n) ? 1.0 : (k % 2 ? 4.0 : 2.0);
    const MassData m = mass_data(smp[k].s);
    // Physical-time velocities on [0, T].
    const Eigen::Vector3d sdot = smp[k].ds.ds / T;
    const double rdot = -m.N.dot(sdot.transpose()) / m.Mr;
    disp += w * rdot;
    energy += w * (m.Mr * rdot * rdot + 2.0 * rdot * m.N.dot(sdot.transpose()) + sdot.dot(m.Md * sdot));
  }
  disp *= h / 3.0 * T;
  energy *= h / 3.0 * T;
  const double vbar = disp / T;
  if (std::abs(vbar) < 1e-12) throw ZeroDisplacement("mean velocity vanishes; efficiency undefined");
  const double mean_power = energy / T;
  return vbar * vbar * mass_data(smp.front().s).Mr / mean_power;
}

void write_density_csv(std::ostream& os, double mu, ChartId chart, int n_phi, int n_theta,
                       const DensityFn& density) {
  constexpr double pi = std::numbers::pi;
  os << "phi,theta,f\n";
  os.precision(17);
  for (int i = 0; i < n_phi; ++i) {
    // Cell centres keep the grid off the poles.
    const double phi = pi * (i + 0.5) / n_phi;
    for (int j = 0; j < n_theta; ++j) {
      const double theta = -pi + 2.0 * pi * (j + 0.5) / n_theta;
      const ShapePoint s = chart_to_shape({chart, phi, theta}, mu);
      os << phi << ',' << theta << ',' << density(s) << '\n';
    }
  }
}

}  // namespace strokeopt
