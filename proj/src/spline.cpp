#include "strokeopt/spline.hpp"

#include <cmath>
#include <stdexcept>

namespace strokeopt {

PeriodicCubicBasis::Stencil PeriodicCubicBasis::stencil(double t) const {
  if (p < 4) throw std::invalid_argument("periodic cubic basis needs p >= 4");
  t -= std::floor(t);
  const double x = t * p;
  int k = static_cast<int>(std::floor(x));
  double u = x - k;
  if (k >= p) {  // t rounded up to 1
    k = p - 1;
    u = 1.0;
  }
  const double u2 = u * u, u3 = u2 * u;
  Stencil s;
  for (int i = 0; i < 4; ++i) s.index[i] = (k + i) % p;
  s.w = {(1 - u) * (1 - u) * (1 - u) / 6.0, (3 * u3 - 6 * u2 + 4) / 6.0,
         (-3 * u3 + 3 * u2 + 3 * u + 1) / 6.0, u3 / 6.0};
  const double dp = p;
  s.dw = {-0.5 * (1 - u) * (1 - u) * dp, (1.5 * u2 - 2 * u) * dp,
          (-1.5 * u2 + u + 0.5) * dp, 0.5 * u2 * dp};
  const double dp2 = dp * dp;
  s.ddw = {(1 - u) * dp2, (3 * u - 2) * dp2, (-3 * u + 1) * dp2, u * dp2};
  return s;
}

double PeriodicCubicBasis::value(const std::vector<double>& c, double t) const {
  const Stencil s = stencil(t);
  double v = 0.0;
  for (int i = 0; i < 4; ++i) v += s.w[i] * c[s.index[i]];
  return v;
}

double PeriodicCubicBasis::derivative(const std::vector<double>& c, double t) const {
  const Stencil s = stencil(t);
  double v = 0.0;
  for (int i = 0; i < 4; ++i) v += s.dw[i] * c[s.index[i]];
  return v;
}

std::vector<double> PeriodicCubicBasis::row(double t) const {
  std::vector<double> r(p, 0.0);
  const Stencil s = stencil(t);
  for (int i = 0; i < 4; ++i) r[s.index[i]] += s.w[i];
  return r;
}

}  // namespace strokeopt
