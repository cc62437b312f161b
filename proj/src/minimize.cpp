#include "strokeopt/minimize.hpp"

#include <Eigen/Dense>
#include <cmath>

namespace strokeopt {

Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double f0, double h,
                            bool central, int* evals) {
  const Eigen::Index n = x.size();
  Eigen::VectorXd g(n);
  Eigen::VectorXd xp = x;
  for (Eigen::Index i = 0; i < n; ++i) {
    const double xi = x[i];
    xp[i] = xi + h;
    const double fp = f(xp);
    if (central) {
      xp[i] = xi - h;
      g[i] = (fp - f(xp)) / (2.0 * h);
    } else {
      g[i] = (fp - f0) / h;
    }
    xp[i] = xi;
  }
  if (evals) *evals += static_cast<int>(central ? 2 * n : n);
  return g;
}

BfgsResult bfgs_minimize(const Objective& f, Eigen::VectorXd x, const BfgsOptions& opts) {
  const Eigen::Index n = x.size();
  BfgsResult res;
  double fx = f(x);
  res.evaluations = 1;
  if (!std::isfinite(fx)) {
    res.x = x;
    res.f = fx;
    return res;
  }
  Eigen::VectorXd g = fd_gradient(f, x, fx, opts.fd_step, opts.central, &res.evaluations);
  Eigen::MatrixXd H = Eigen::MatrixXd::Identity(n, n);
  bool scaled = false;

  for (res.iterations = 0; res.iterations < opts.max_iter; ++res.iterations) {
    if (g.norm() < opts.grad_tol) {
      res.converged = true;
      break;
    }
    Eigen::VectorXd d = -H * g;
    double slope = g.dot(d);
    if (!(slope < 0.0)) {  // lost descent; restart from steepest descent
      H.setIdentity();
      d = -g;
      slope = -g.squaredNorm();
    }
    double a = 1.0, fn = 0.0;
    Eigen::VectorXd xn;
    bool accepted = false;
    for (int ls = 0; ls < 50; ++ls) {
      xn = x + a * d;
      fn = f(xn);
      ++res.evaluations;
      if (std::isfinite(fn) && fn <= fx + 1e-4 * a * slope) {
        accepted = true;
        break;
      }
      a *= 0.5;
    }
    if (!accepted) {
      if (H.isIdentity()) break;
      H.setIdentity();
      continue;
    }
    const Eigen::VectorXd s = xn - x;
    const Eigen::VectorXd gn = fd_gradient(f, xn, fn, opts.fd_step, opts.central, &res.evaluations);
    const Eigen::VectorXd y = gn - g;
    const double sy = s.dot(y);
    x = xn;
    const double df = fx - fn;
    fx = fn;
    g = gn;
    if (s.norm() < opts.step_tol * (1.0 + x.norm()) && df <= 1e-16 * (1.0 + std::abs(fx))) {
      res.converged = g.norm() < 1e3 * opts.grad_tol;
      break;
    }
    if (sy > 1e-12 * s.norm() * y.norm()) {
      if (!scaled) {
        H *= sy / y.squaredNorm();
        scaled = true;
      }
      const double rho = 1.0 / sy;
      const Eigen::MatrixXd I = Eigen::MatrixXd::Identity(n, n);
      H = (I - rho * s * y.transpose()) * H * (I - rho * y * s.transpose()) + rho * s * s.transpose();
    }
  }
  res.x = x;
  res.f = fx;
  res.grad_norm = g.norm();
  return res;
}

}  // namespace strokeopt
