#pragma once

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "strokeopt/manifold.hpp"
#include "strokeopt/stroke.hpp"

namespace strokeopt {

// MinTime is the direct formulation: the peak speed of the spline's own
// parameterization (smoothed as an L8 norm) is minimized, and the reported
// value is that peak speed, i.e. the time needed under ||u|| <= 1.
enum class ProblemKind { MinLength, MinAction, MinTime, MaxDistLength, MaxDistAction };

const char* problem_name(ProblemKind k);
ProblemKind problem_from_name(const std::string& name);

/// Geodesic cap (angular radius on the normalized sphere) removed from S_mu.
struct ForbiddenRegion {
  ChartCoord center;
  double radius = 0.2;
  double penalty_weight = 1e4;

  bool active() const { return penalty_weight > 0.0; }
};

struct ProblemSpec {
  ProblemKind kind = ProblemKind::MinLength;
  double delta = 0.0;   // target displacement (MinLength / MinAction / MinTime)
  double budget = 0.0;  // length l (MaxDistLength) or action a (MaxDistAction)
  double T = 1.0;       // period for action-based problems
  ShapePoint basepoint{0.3, 0.0, 0.0};
  std::optional<ForbiddenRegion> region;

  /// Throws ConfigError on invalid fields or a basepoint within 0.05 rad of
  /// the region.
  void validate(double mu) const;
};

struct SolverOptions {
  int starts = 16;
  std::uint64_t seed = 1;
  int p = 10;
  int threads = 1;
  ChartConvention chart;     // chart of the optimized coefficients
  int quadrature_n = 200;    // Simpson panels during optimization
  int report_n = 800;        // panels of the reported constant-speed trajectory
  double constraint_tol = 1e-6;
  double infeasible_tol = 1e-3;
  int max_outer = 30;
  int max_inner = 400;
  double region_margin = 0.01;
  // Index used to split the RNG stream when solving inside a sweep.
  std::uint64_t grid_index = 0;
  std::vector<SplineStroke> warm_starts;  // tried before the random starts
};

struct StartReport {
  double objective = 0.0;
  double residual = 0.0;
  bool converged = false;
  bool region_ok = true;
  int inner_iterations = 0;
};

struct SolveDiagnostics {
  std::vector<StartReport> starts;
  int best_start = -1;
  double residual = 0.0;             // constraint residual of the winner
  double saturation_residual = 0.0;  // |budget use - budget| (budget problems)
  double raw_action = 0.0;           // action before constant-speed renormalization
  double speed_variation = 0.0;      // (max - min) / max on the reported trajectory
  bool converged = false;
};

struct SolveResult {
  SplineStroke stroke;
  StrokeMetrics metrics;  // constant-speed trajectory, period spec.T
  double value = 0.0;     // optimal value of the problem
  SolveDiagnostics diag;
};

/// Multistart augmented-Lagrangian solve. Throws Infeasible when no start
/// reaches a constraint residual below opts.infeasible_tol.
SolveResult solve(const ProblemSpec& spec, const SwimmerConfig& cfg, const SolverOptions& opts);

struct SweepPoint {
  double grid = 0.0;
  double value = 0.0;
  bool converged = false;
  bool infeasible = false;
  double residual = 0.0;
  double saturation_residual = 0.0;
  SplineStroke stroke;
};

struct SweepResult {
  std::vector<SweepPoint> points;
  int multistart_best_of = 0;
};

struct SweepOptions {
  SolverOptions solver;
  bool backward_pass = false;  // second pass warm-started from the right
  std::string resume_dir;      // per-point JSON files, reused when present
};

/// Phi(delta) by MinLength solves with warm starts along the grid.
SweepResult sweep_phi(const std::vector<double>& delta_grid, const ProblemSpec& base,
                      const SwimmerConfig& cfg, const SweepOptions& opts);

/// Psi(l) by MaxDistLength solves.
SweepResult sweep_psi(const std::vector<double>& l_grid, const ProblemSpec& base,
                      const SwimmerConfig& cfg, const SweepOptions& opts);

/// sweep_phi with the region of `base` active.
SweepResult sweep_with_hole(const std::vector<double>& delta_grid, const ProblemSpec& base,
                            const SwimmerConfig& cfg, const SweepOptions& opts);

struct MinTimeResult {
  double T = 0.0;
  SplineStroke stroke;
  Trajectory unit_speed;
};

/// Minimal time under ||u|| <= 1, computed as Phi(delta) by a MinLength solve
/// and traversed at unit speed.
MinTimeResult min_time(double delta, const ProblemSpec& base, const SwimmerConfig& cfg,
                       const SolverOptions& opts);

/// True when no sample of a dense evaluation lies inside the region.
bool region_clear(const SplineStroke& stroke, const ForbiddenRegion& region, int n = 4000);

}  // namespace strokeopt
