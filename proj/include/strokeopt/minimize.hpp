#pragma once

#include <Eigen/Core>
#include <functional>

namespace strokeopt {

using Objective = std::function<double(const Eigen::VectorXd&)>;

struct BfgsOptions {
  int max_iter = 400;
  double grad_tol = 1e-7;
  double step_tol = 1e-10;
  double fd_step = 1e-6;
  bool central = false;  // forward differences unless set
};

struct BfgsResult {
  Eigen::VectorXd x;
  double f = 0.0;
  double grad_norm = 0.0;
  int iterations = 0;
  int evaluations = 0;
  bool converged = false;
};

/// Finite-difference gradient (forward by default). f0 = f(x) is reused.
Eigen::VectorXd fd_gradient(const Objective& f, const Eigen::VectorXd& x, double f0, double h,
                            bool central, int* evals = nullptr);

/// Dense BFGS with Armijo backtracking on a finite-difference gradient.
BfgsResult bfgs_minimize(const Objective& f, Eigen::VectorXd x0, const BfgsOptions& opts = {});

}  // namespace strokeopt
