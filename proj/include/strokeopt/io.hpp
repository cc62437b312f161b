#pragma once

#include <iosfwd>
#include <string>

#include "strokeopt/optimize.hpp"

namespace strokeopt {

/// Writes to `path + ".tmp"` and renames over `path`.
void write_file_atomic(const std::string& path, const std::string& content);

std::string read_file(const std::string& path);

/// Problem file:
///   {"format": "strokeopt.problem", "version": 1, "mu": 0.3,
///    "kind": "MinLength", "delta": 0.02, "budget": 0, "T": 1,
///    "basepoint": [s1, s2, s3],
///    "region": {"chart": "PolarZ", "phi": .., "theta": .., "radius": .., "weight": ..},
///    "solver": {"starts": 16, "seed": 1, "p": 10, "theta_origin": 0}}
/// Missing fields take their defaults. Throws ConfigError.
struct ProblemFile {
  SwimmerConfig cfg;
  ProblemSpec spec;
  SolverOptions solver;
};
ProblemFile parse_problem(const std::string& text);

std::string metrics_csv(const StrokeMetrics& m, double value);

/// grid,value,converged,saturation_residual
void write_sweep_csv(std::ostream& os, const SweepResult& r);

}  // namespace strokeopt
