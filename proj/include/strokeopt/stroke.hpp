#pragma once

#include <functional>
#include <iosfwd>
#include <string>
#include <utility>
#include <vector>

#include "strokeopt/hydro.hpp"
#include "strokeopt/manifold.hpp"
#include "strokeopt/spline.hpp"

namespace strokeopt {

struct ChartConvention {
  ChartId axis = ChartId::PolarZ;
  double theta_origin = 0.0;
};

/// Closed curve on S_mu in one chart:
///   phi(t)   = sum_j beta_j B_j(t)
///   theta(t) = theta_origin + sum_j alpha_j B_j(t) + 2 pi winding t
/// with B_j the periodic cubic basis. Shapes are produced by plain
/// trigonometry, so phi outside [0, pi] simply continues over the pole.
struct SplineStroke {
  double mu = 0.3;
  int p = 10;
  std::vector<double> alpha;
  std::vector<double> beta;
  int winding = 0;
  ChartConvention chart;

  SplineStroke() = default;
  SplineStroke(double mu_, int p_) : mu(mu_), p(p_), alpha(p_, 0.0), beta(p_, 0.0) {}

  /// Constant stroke sitting at c.
  static SplineStroke constant(const ChartCoord& c, double mu, int p = 10);

  PeriodicCubicBasis basis() const { return {p}; }

  /// Chart angles and their t-derivatives.
  void angles(double t, double& phi, double& theta, double& dphi, double& dtheta) const;

  ShapePoint shape_at(double t) const;
  ChartCoord coord_at(double t) const;

  /// Reverses the direction of traversal, keeping s(0).
  SplineStroke reversed() const;

  /// Shifts coefficients so that s(0) is the given chart point.
  void pin_start(double phi0, double theta0);

  void validate() const;
};

struct TrajectorySample {
  double t = 0.0;
  ShapePoint s;
  TangentVector ds;   // derivative w.r.t. the sample parameter
  ChartCoord coord;   // coordinates in the active chart
};

struct ChartEvent {
  double t;
  ChartId chart;
};

/// Samples on a uniform parameter grid t_k = k / n, k = 0..n.
struct Trajectory {
  double mu = 0.3;
  std::vector<TrajectorySample> samples;
  std::vector<ChartEvent> chart_log;
};

struct StrokeMetrics {
  double displacement = 0.0;
  double length = 0.0;
  double action = 0.0;
  double max_speed = 0.0;
  double min_speed = 0.0;
};

/// n panels (n + 1 samples), n even and >= 64.
Trajectory evaluate(const SplineStroke& stroke, int n);

/// Warp tau(sigma) with derivative; must map [0,1] onto [0,1] monotonically.
using Warp = std::function<std::pair<double, double>(double)>;

/// Samples s(tau(sigma)) with ds/dsigma = s'(tau) tau'(sigma).
Trajectory evaluate_warped(const SplineStroke& stroke, int n, const Warp& warp);

/// Arc-length (metric g) reparameterization: the returned trajectory has
/// constant speed ||ds/dsigma||_g equal to the stroke length.
Trajectory reparameterize_constant_speed(const SplineStroke& stroke, int n);

/// Back-and-forth traversal of the first `fraction` of the stroke:
/// s(t) = stroke(fraction * w(t)), w = (1 - cos 2 pi t) / 2.
Trajectory retrace(const SplineStroke& stroke, int n, double fraction);

/// Length of the stroke under g, by Gauss-Legendre per knot span.
double stroke_length(const SplineStroke& stroke, int panels_per_span = 8);

/// Composite Simpson quadrature over the sample grid; T is the stroke period.
StrokeMetrics metrics(const Trajectory& traj, double T = 1.0);

/// Displacement of a closed single-chart simple stroke computed as the
/// integral of dL over the enclosed chart region.
/// Throws NotSimple or ChartOverflow when the preconditions fail.
double displacement_via_stokes(const SplineStroke& stroke);

/// Throws NotSimple if the 512-sample polygon of the stroke (in chart
/// coordinates) self-intersects.
void check_simple(const SplineStroke& stroke, int samples = 512);

/// Net displacement r(t) by cumulative trapezoid of L(ds).
std::vector<double> displacement_profile(const Trajectory& traj);

void write_trajectory_csv(std::ostream& os, const Trajectory& traj);

/// Boundary polylines of `count` time-equidistributed shapes along the
/// trajectory: columns shape,t,x,y.
void write_shape_gallery_csv(std::ostream& os, const Trajectory& traj, int count = 20,
                             int boundary_points = 200);

// JSON stroke files. Round trips bit-exactly.
std::string stroke_to_json(const SplineStroke& stroke);
SplineStroke stroke_from_json(const std::string& text);

// ---------------------------------------------------------------------------
// Level set of the dL density

struct LevelSetResult {
  SplineStroke stroke;
  int components = 0;
  bool disconnected = false;
  std::vector<std::pair<double, double>> polyline;  // (phi, theta), PolarZ
  double fit_error = 0.0;                            // max chart distance
};

/// Extracts the zero set of `density` on a grid_n x 2 grid_n PolarZ grid,
/// orients it so the displacement is positive and fits a periodic spline.
/// Throws NoSignChange if the density does not change sign on the grid.
LevelSetResult level_set_stroke(const SwimmerConfig& cfg, int grid_n, int p = 10,
                                const DensityFn& density = dL_density);

}  // namespace strokeopt
