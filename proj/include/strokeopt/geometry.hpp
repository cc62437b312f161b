#pragma once

#include <Eigen/Core>
#include <functional>
#include <vector>

#include "strokeopt/hydro.hpp"
#include "strokeopt/manifold.hpp"

namespace strokeopt {

/// Point of M = S_mu x R: shape plus net displacement along the swim axis.
struct StatePoint {
  ShapePoint shape;
  double r = 0.0;

  Eigen::Vector4d vec() const { return {shape.s1(), shape.s2(), shape.s3(), r}; }
  static StatePoint from_vec(const Eigen::Vector4d& v) { return {ShapePoint(v.head<3>()), v[3]}; }
};

/// Spanning fields X_1..X_3 of T S_mu (index 1-based). Throws std::out_of_range
/// for other indices.
TangentVector field_X(int j, const ShapePoint& s);

/// Lifted field Z_j = (X_j, L_s X_j) on M, as an ambient 4-vector.
Eigen::Vector4d field_Z(int j, const StatePoint& xi);

using Field4 = std::function<Eigen::Vector4d(const Eigen::Vector4d&)>;

Field4 z_field(int j);

/// [f, g](xi) = Dg(xi) f(xi) - Df(xi) g(xi). Jacobians by central differences
/// (h = 1e-5) with one Richardson step.
Eigen::Vector4d lie_bracket(const Field4& f, const Field4& g, const StatePoint& xi);

/// Jacobian of a field at x, as used by lie_bracket.
Eigen::Matrix4d field_jacobian(const Field4& f, const Eigen::Vector4d& x);

/// Bracket as a field (for nesting).
Field4 bracket_field(Field4 f, Field4 g);

/// Numerical rank of span{Z_j, iterated brackets up to `depth`} at xi,
/// restricted to T_xi M. depth = 1 means the fields alone. depth in [1, 4].
int lie_rank(const StatePoint& xi, int depth, double field_scale = 1.0);

/// Rank per depth 1..depth (same columns as lie_rank).
std::vector<int> lie_rank_table(const StatePoint& xi, int depth);

/// Control samples u(t_k) on a uniform grid t_k = k T / (n-1).
struct SampledControl {
  double T = 1.0;
  std::vector<Eigen::VectorXd> u;

  double dt() const { return T / static_cast<double>(u.size() - 1); }
};

/// L1 norm \int ||u|| dt (trapezoid).
double control_l1(const SampledControl& u);

/// Action (1/2) \int ||u||^2 dt (trapezoid).
double control_action(const SampledControl& u);

/// Time-changes u to constant speed alpha = ||u||_{L1} / T_new on [0, T_new],
/// keeping the same sample count. Throws ZeroControl when the L1 norm vanishes.
SampledControl reparameterize_constant_speed(const SampledControl& u, double T_new);

/// g-orthonormal frame (columns, ambient coords) of T_s S_mu, from Gram-Schmidt
/// on the chart tangents of the chart chosen for s.
Eigen::Matrix<double, 3, 2> orthonormal_frame(const ShapePoint& s);

}  // namespace strokeopt
