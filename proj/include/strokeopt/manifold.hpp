#pragma once

#include <Eigen/Core>
#include <complex>
#include <iosfwd>
#include <string>

namespace strokeopt {

/// Shape variable s = (s1, s2, s3): coefficients of the conformal deformation
/// z -> z + s1 conj(z) + s2 conj(z)^2 + s3 conj(z)^3 of the unit disk.
struct ShapePoint {
  Eigen::Vector3d s = Eigen::Vector3d::Zero();

  ShapePoint() = default;
  ShapePoint(double s1, double s2, double s3) : s(s1, s2, s3) {}
  explicit ShapePoint(const Eigen::Vector3d& v) : s(v) {}

  double s1() const { return s[0]; }
  double s2() const { return s[1]; }
  double s3() const { return s[2]; }
};

/// Two spherical charts of the ellipsoid. PolarZ has its poles on the s3 axis,
/// PolarX on the s1 axis. Both are positively oriented w.r.t. the outward normal.
enum class ChartId { PolarZ, PolarX };

ChartId other_chart(ChartId c);
const char* chart_name(ChartId c);
ChartId chart_from_name(const std::string& name);

struct ChartCoord {
  ChartId chart = ChartId::PolarZ;
  double phi = 0.0;    // polar angle, [0, pi]
  double theta = 0.0;  // azimuth, [-pi, pi]
};

struct SwimmerConfig {
  double mu = 0.3;
  double epsilon_mfd = 1e-10;
  int quadrature_n = 200;  // Simpson panels per stroke, multiple of 2p

  /// Throws ConfigError unless 0 < mu < 1, the tolerances are positive and the
  /// whole ellipsoid lies inside the unit ball of the shape norm (checked by
  /// sampling).
  void validate() const;
};

/// Angular distance from a chart pole below which the other chart is used.
inline constexpr double kChartSwitchAngle = 0.1;

// ---------------------------------------------------------------------------
// Conformal map and shape norm

std::complex<double> chi_map(const ShapePoint& s, std::complex<double> z);

/// sup_{|z|=1} |s1 + 2 s2 z + 3 s3 z^2|. Dense sampling (720 points) followed by
/// golden-section refinement of every sampled local maximum.
double shape_norm(const ShapePoint& s);

/// Area of the swimmer body, pi (1 - s1^2 - 2 s2^2 - 3 s3^2).
/// Throws DomainError when shape_norm(s) >= 1.
double area(const ShapePoint& s);

/// Writes "t,x,y" rows sampling chi(s, exp(2 pi i t)) at n points.
void write_shape_boundary_csv(std::ostream& os, const ShapePoint& s, int n);

// ---------------------------------------------------------------------------
// Ellipsoid S_mu : s1^2 + 2 s2^2 + 3 s3^2 = mu^2

double ellipsoid_quadratic(const ShapePoint& s);
double manifold_residual(const ShapePoint& s, double mu);

/// Radial rescaling onto S_mu.
ShapePoint project_to_manifold(const ShapePoint& s, double mu);

/// Outward normal (gradient of the quadratic form, up to a factor 2).
Eigen::Vector3d outward_normal(const ShapePoint& s);

/// Unit-sphere image u = (s1, sqrt2 s2, sqrt3 s3) / mu. Angles between shapes
/// are measured on this sphere.
Eigen::Vector3d normalized_sphere_point(const ShapePoint& s);

/// Angle on the normalized sphere between two shapes (scale invariant).
double angular_distance(const ShapePoint& a, const ShapePoint& b);

/// Angle from the nearest pole of `chart`.
double pole_distance(const ShapePoint& s, ChartId chart);

// ---------------------------------------------------------------------------
// Charts

/// Spherical coordinates in `preferred`, or in the other chart when s lies
/// within kChartSwitchAngle of the preferred chart's poles. The ellipsoid
/// radius is taken from s itself.
ChartCoord chart_from_shape(const ShapePoint& s, ChartId preferred);

/// Coordinates in a given chart without pole switching.
ChartCoord chart_coords(const ShapePoint& s, ChartId chart);

ShapePoint chart_to_shape(const ChartCoord& c, double mu);

/// Partial derivatives of chart_to_shape with respect to phi and theta.
struct ChartTangents {
  Eigen::Vector3d d_phi;
  Eigen::Vector3d d_theta;
};
ChartTangents chart_tangents(const ChartCoord& c, double mu);

/// Sign (+1/-1) of the chart orientation relative to the outward normal.
double chart_orientation(const ChartCoord& c, double mu);

}  // namespace strokeopt
