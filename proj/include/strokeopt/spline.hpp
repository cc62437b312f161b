#pragma once

#include <array>
#include <vector>

namespace strokeopt {

/// Uniform periodic cubic B-spline basis on [0, 1) with p functions.
/// Evaluation touches four consecutive coefficients (indices mod p).
struct PeriodicCubicBasis {
  int p = 10;

  struct Stencil {
    std::array<int, 4> index;
    std::array<double, 4> w;   // basis values
    std::array<double, 4> dw;  // d/dt
    std::array<double, 4> ddw; // d2/dt2
  };

  /// t is reduced mod 1.
  Stencil stencil(double t) const;

  double value(const std::vector<double>& c, double t) const;
  double derivative(const std::vector<double>& c, double t) const;

  /// Row of basis values B_0(t)..B_{p-1}(t).
  std::vector<double> row(double t) const;
};

}  // namespace strokeopt
