#pragma once

#include <Eigen/Core>
#include <functional>
#include <iosfwd>

#include "strokeopt/manifold.hpp"

namespace strokeopt {

struct Trajectory;

/// Shape velocity in ambient coordinates.
struct TangentVector {
  Eigen::Vector3d ds = Eigen::Vector3d::Zero();

  TangentVector() = default;
  TangentVector(double d1, double d2, double d3) : ds(d1, d2, d3) {}
  explicit TangentVector(const Eigen::Vector3d& v) : ds(v) {}
};

/// Added-mass data of the potential-flow swimmer: M^r (rigid), N (coupling row)
/// and M^d (deformation block).
struct MassData {
  double Mr = 0.0;
  Eigen::RowVector3d N = Eigen::RowVector3d::Zero();
  Eigen::Matrix3d Md = Eigen::Matrix3d::Zero();

  /// G = M^d - N^T N / M^r.
  Eigen::Matrix3d metric_matrix() const;
};

MassData mass_data(const ShapePoint& s);

Eigen::Matrix3d metric_matrix(const ShapePoint& s);

/// Orthonormal (Euclidean) basis of the tangent plane of the ellipsoid at s.
Eigen::Matrix<double, 3, 2> tangent_basis(const ShapePoint& s);

/// Smallest eigenvalue of the metric restricted to the tangent plane, in the
/// Euclidean-orthonormal tangent_basis.
double min_pullback_eigenvalue(const ShapePoint& s);

/// g_s(v, w). Throws DegenerateMetric when the tangent-plane restriction has
/// an eigenvalue below 1e-12.
double metric(const ShapePoint& s, const TangentVector& v, const TangentVector& w);

/// Displacement 1-form L_s(v) = -N(s) v / M^r(s).
double one_form(const ShapePoint& s, const TangentVector& v);

/// Row vector -N(s)/M^r(s).
Eigen::RowVector3d one_form_row(const ShapePoint& s);

/// Density f of dL with respect to the Riemannian area form of g, positive
/// orientation given by the outward normal. Computed from chart derivatives of
/// L by central differences (step 1e-5 in chart angles).
double dL_density(const ShapePoint& s);

using DensityFn = std::function<double(const ShapePoint&)>;

/// Chart-plane density d(ell_theta)/dphi - d(ell_phi)/dtheta, i.e. dL expressed
/// as a multiple of dphi ^ dtheta.
double dL_chart_density(const ChartCoord& c, double mu);

/// Riemannian area element sqrt(det G_pullback) of the chart at c.
double chart_area_element(const ChartCoord& c, double mu);

/// Swimming efficiency |v|^2 M^r(s_i) / ((1/T) \int energy dt) for a closed trajectory, where the
/// kinetic energy M^r r'^2 + 2 r' N s' + s' M^d s' uses r' = L_s(s').
/// Throws ZeroDisplacement if the mean velocity vanishes.
double efficiency(const Trajectory& traj, double T);

/// Writes "phi,theta,f" rows on an n_phi x n_theta grid of a chart.
void write_density_csv(std::ostream& os, double mu, ChartId chart, int n_phi, int n_theta,
                       const DensityFn& density = dL_density);

}  // namespace strokeopt
