#include "strokeopt/optimize.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <iomanip>
#include <fstream>
#include <limits>
#include <numbers>
#include <random>
#include <sstream>
#include <thread>

#include "json.hpp"
#include "strokeopt/errors.hpp"
#include "strokeopt/io.hpp"
#include "strokeopt/minimize.hpp"

namespace strokeopt {

namespace {

constexpr double kPi = std::numbers::pi;

bool is_budget(ProblemKind k) {
  return k == ProblemKind::MaxDistLength || k == ProblemKind::MaxDistAction;
}

// Displacement / length / squared-speed integrals of a coefficient vector on a
// fixed sample grid, with the stencils tabulated once.
class StrokeEvaluator {
 public:
  struct Totals {
    double displacement = 0.0;
    double length = 0.0;
    double sq = 0.0;       // \int ||s'||^2 dt
    double pnorm = 0.0;    // \int ||s'||^8 dt
    double penalty = 0.0;  // region hinge
  };

  StrokeEvaluator(const SplineStroke& tmpl, int n, const ShapePoint& base,
                  const ForbiddenRegion* region, double margin)
      : tmpl_(tmpl), n_(n), region_(region), margin_(margin) {
    PeriodicCubicBasis b{tmpl.p};
    for (int k = 0; k <= n; ++k) stencils_.push_back(b.stencil(static_cast<double>(k) / n));
    start_ = b.stencil(0.0);
    const ChartCoord c = chart_coords(base, tmpl.chart.axis);
    phi0_ = c.phi;
    theta0_ = c.theta;
    if (region_) centre_ = normalized_sphere_point(chart_to_shape(region_->center, tmpl.mu));
  }

  int p() const { return tmpl_.p; }

  /// Stroke for x = (alpha, beta), shifted so that it starts at the basepoint.
  SplineStroke stroke(const Eigen::VectorXd& x) const {
    SplineStroke st = tmpl_;
    for (int j = 0; j < tmpl_.p; ++j) {
      st.alpha[j] = x[j];
      st.beta[j] = x[tmpl_.p + j];
    }
    st.pin_start(phi0_, theta0_);
    return st;
  }

  Eigen::VectorXd coefficients(const SplineStroke& st) const {
    Eigen::VectorXd x(2 * st.p);
    for (int j = 0; j < st.p; ++j) {
      x[j] = st.alpha[j];
      x[st.p + j] = st.beta[j];
    }
    return x;
  }

  Totals totals(const Eigen::VectorXd& x) const {
    const int p = tmpl_.p;
    const double* a = x.data();
    const double* b = x.data() + p;
    // Basepoint pinning by a constant shift (partition of unity).
    double phi_s = 0.0, theta_s = 0.0;
    for (int i = 0; i < 4; ++i) {
      phi_s += start_.w[i] * b[start_.index[i]];
      theta_s += start_.w[i] * a[start_.index[i]];
    }
    const double dphi0 = phi0_ - phi_s;
    const double dtheta0 = theta0_ - tmpl_.chart.theta_origin - theta_s;
    const double turn = 2.0 * kPi * tmpl_.winding;
    const double mu = tmpl_.mu;
    Totals t;
    for (int k = 0; k <= n_; ++k) {
      const auto& s = stencils_[k];
      double phi = dphi0, theta = dtheta0 + tmpl_.chart.theta_origin + turn * k / n_;
      double dphi = 0.0, dtheta = turn;
      for (int i = 0; i < 4; ++i) {
        phi += s.w[i] * b[s.index[i]];
        dphi += s.dw[i] * b[s.index[i]];
        theta += s.w[i] * a[s.index[i]];
        dtheta += s.dw[i] * a[s.index[i]];
      }
      const ChartCoord c{tmpl_.chart.axis, phi, theta};
      const ShapePoint sp = chart_to_shape(c, mu);
      const ChartTangents tg = chart_tangents(c, mu);
      const Eigen::Vector3d v = tg.d_phi * dphi + tg.d_theta * dtheta;
      const MassData md = mass_data(sp);
      const double q = std::max(v.dot(md.metric_matrix() * v), 0.0);
      const double w = (k == 0 || k == n_) ? 1.0 : ((k % 2) ? 4.0 : 2.0);
      t.displacement += w * (-md.N.dot(v.transpose()) / md.Mr);
      t.length += w * std::sqrt(q);
      t.sq += w * q;
      t.pnorm += w * q * q * q * q;
      if (region_) {
        const Eigen::Vector3d u = normalized_sphere_point(sp);
        const double d = std::acos(std::clamp(u.dot(centre_), -1.0, 1.0));
        const double pen = std::max(0.0, region_->radius + margin_ - d);
        t.penalty += w * pen * pen;
      }
    }
    const double h3 = 1.0 / (3.0 * n_);
    t.displacement *= h3;
    t.length *= h3;
    t.sq *= h3;
    t.pnorm *= h3;
    t.penalty *= h3 * (region_ ? region_->penalty_weight : 0.0);
    return t;
  }

 private:
  SplineStroke tmpl_;
  int n_;
  const ForbiddenRegion* region_;
  double margin_;
  std::vector<PeriodicCubicBasis::Stencil> stencils_;
  PeriodicCubicBasis::Stencil start_;
  double phi0_ = 0.0, theta0_ = 0.0;
  Eigen::Vector3d centre_ = Eigen::Vector3d::Zero();
};

struct Problem {
  ProblemKind kind;
  double target;     // delta or budget
  double T;
  double obj_scale;  // objective divisor
  double con_scale;  // constraint divisor
};

Problem make_problem(const ProblemSpec& spec) {
  Problem pb{spec.kind, is_budget(spec.kind) ? spec.budget : spec.delta, spec.T, 1.0, 1.0};
  switch (spec.kind) {
    case ProblemKind::MinLength:
    case ProblemKind::MinTime:
    case ProblemKind::MinAction:
      pb.con_scale = std::max(std::abs(spec.delta), 1e-3);
      break;
    case ProblemKind::MaxDistLength:
      pb.con_scale = std::max(spec.budget, 1e-3);
      // Small loops displace roughly |f| l^2 / (4 pi) with |f| ~ 2.
      pb.obj_scale = std::max(0.2 * spec.budget * spec.budget, 1e-6);
      break;
    case ProblemKind::MaxDistAction:
      pb.con_scale = std::max(spec.budget, 1e-6);
      pb.obj_scale = std::max(0.4 * spec.budget * spec.T, 1e-6);
      break;
  }
  return pb;
}

struct Split {
  double objective;   // problem objective (unscaled)
  double constraint;  // unscaled constraint value: equality residual or budget use - budget
};

Split split(const Problem& pb, const StrokeEvaluator::Totals& t) {
  switch (pb.kind) {
    case ProblemKind::MinLength:
      return {t.length, t.displacement - pb.target};
    case ProblemKind::MinTime:
      // Time to run the stroke in its own parameterization with ||u|| <= 1 is
      // the peak speed; the L8 norm is its smooth stand-in.
      return {std::pow(t.pnorm, 0.125), t.displacement - pb.target};
    case ProblemKind::MinAction:
      return {0.5 * t.sq / pb.T, t.displacement - pb.target};
    case ProblemKind::MaxDistLength:
      return {-t.displacement, t.length - pb.target};
    case ProblemKind::MaxDistAction:
      return {-t.displacement, 0.5 * t.sq / pb.T - pb.target};
  }
  return {0.0, 0.0};
}

double residual_of(const Problem& pb, double c) {
  return is_budget(pb.kind) ? std::max(c, 0.0) : std::abs(c);
}

struct StartOutcome {
  StartReport report;
  Eigen::VectorXd x;
  int winding = 0;
};

StartOutcome run_start(const StrokeEvaluator& ev, const Problem& pb, Eigen::VectorXd x,
                       const SolverOptions& opts) {
  const bool budget = is_budget(pb.kind);
  double lambda = 0.0, rho = 10.0;
  double prev_viol = std::numeric_limits<double>::infinity();
  BfgsOptions bo;
  bo.max_iter = opts.max_inner;
  StartOutcome out;
  int inner = 0;
  for (int outer = 0; outer < opts.max_outer; ++outer) {
    auto lagr = [&](const Eigen::VectorXd& y) {
      const auto t = ev.totals(y);
      const Split sp = split(pb, t);
      const double c = sp.constraint / pb.con_scale;
      double val = sp.objective / pb.obj_scale + t.penalty;
      if (budget) {
        if (c >= -lambda / rho) val += lambda * c + 0.5 * rho * c * c;
        else val -= 0.5 * lambda * lambda / rho;
      } else {
        val += lambda * c + 0.5 * rho * c * c;
      }
      return val;
    };
    const BfgsResult r = bfgs_minimize(lagr, x, bo);
    inner += r.iterations;
    x = r.x;
    const Split sp = split(pb, ev.totals(x));
    const double c = sp.constraint / pb.con_scale;
    const double res = residual_of(pb, sp.constraint);
    // Budget problems saturate their constraint at the optimum.
    const double stop = budget ? std::abs(sp.constraint) : res;
    if (budget) lambda = std::max(0.0, lambda + rho * c);
    else lambda += rho * c;
    if (stop < 0.1 * opts.constraint_tol && (r.converged || outer > 0)) {
      out.report.converged = true;
      break;
    }
    const double viol = std::abs(c);
    if (viol > 0.25 * prev_viol) rho = std::min(rho * 10.0, 1e8);
    prev_viol = viol;
  }
  const auto t = ev.totals(x);
  const Split sp = split(pb, t);
  out.report.objective = sp.objective;
  out.report.residual = residual_of(pb, sp.constraint);
  out.report.converged = out.report.converged && out.report.residual < opts.constraint_tol;
  out.report.inner_iterations = inner;
  out.x = x;
  return out;
}

SplineStroke random_start(const ShapePoint& base, double mu, const SolverOptions& opts,
                          std::uint64_t start_index) {
  std::seed_seq seq{static_cast<std::uint32_t>(opts.seed), static_cast<std::uint32_t>(opts.seed >> 32),
                    static_cast<std::uint32_t>(opts.grid_index), static_cast<std::uint32_t>(start_index)};
  std::mt19937_64 rng(seq);
  std::normal_distribution<double> normal(0.0, 1.0);
  std::uniform_real_distribution<double> uni(0.1, 2.0);
  std::uniform_real_distribution<double> angle(-kPi, kPi);
  const double target = uni(rng);
  const ChartCoord c = chart_coords(base, opts.chart.axis);
  const double a0 = c.theta - opts.chart.theta_origin;
  SplineStroke st(mu, opts.p);
  st.chart = opts.chart;

  // Starts cycle through four families: random circles through the
  // basepoint, Gaussian coefficient draws, and Gaussian draws winding once
  // around the chart axis in either direction.
  const int family = static_cast<int>(start_index % 4);
  if (family == 0) {
    const double psi = angle(rng);
    const double dir = normal(rng) < 0.0 ? -1.0 : 1.0;
    // Chart radians to length: roughly mu * sqrt(det G) along the equator.
    const double rho = target / (2.0 * kPi * 0.8 * mu);
    for (int j = 0; j < opts.p; ++j) {
      const double t = static_cast<double>(j - 1) / opts.p;
      const double ang = psi + kPi + dir * 2.0 * kPi * t;
      st.beta[j] = c.phi + rho * (std::cos(psi) + std::cos(ang));
      st.alpha[j] = a0 + rho * (std::sin(psi) + std::sin(ang));
    }
    st.pin_start(c.phi, c.theta);
    return st;
  }
  for (int j = 0; j < opts.p; ++j) st.alpha[j] = normal(rng);
  for (int j = 0; j < opts.p; ++j) st.beta[j] = normal(rng);
  st.pin_start(c.phi, c.theta);
  // Scale the deviation from the basepoint to the drawn loop length.
  const double L0 = stroke_length(st, 4);
  const double k = L0 > 0.0 ? target / L0 : 1.0;
  for (int j = 0; j < opts.p; ++j) {
    st.alpha[j] = a0 + k * (st.alpha[j] - a0);
    st.beta[j] = c.phi + k * (st.beta[j] - c.phi);
  }
  st.winding = family == 1 ? 0 : (family == 2 ? 1 : -1);
  st.pin_start(c.phi, c.theta);
  return st;
}

template <class F>
void parallel_for(int count, int threads, F&& body) {
  threads = std::max(1, std::min(threads, count));
  if (threads == 1) {
    for (int i = 0; i < count; ++i) body(i);
    return;
  }
  std::vector<std::thread> pool;
  for (int w = 0; w < threads; ++w) {
    pool.emplace_back([&, w] {
      for (int i = w; i < count; i += threads) body(i);
    });
  }
  for (auto& th : pool) th.join();
}

double problem_value(ProblemKind kind, const StrokeMetrics& m) {
  switch (kind) {
    case ProblemKind::MinLength: return m.length;
    case ProblemKind::MinAction: return m.action;
    default: return m.displacement;
  }
}

}  // namespace

const char* problem_name(ProblemKind k) {
  switch (k) {
    case ProblemKind::MinLength: return "MinLength";
    case ProblemKind::MinAction: return "MinAction";
    case ProblemKind::MinTime: return "MinTime";
    case ProblemKind::MaxDistLength: return "MaxDistLength";
    case ProblemKind::MaxDistAction: return "MaxDistAction";
  }
  return "?";
}

ProblemKind problem_from_name(const std::string& name) {
  for (ProblemKind k : {ProblemKind::MinLength, ProblemKind::MinAction, ProblemKind::MinTime,
                        ProblemKind::MaxDistLength, ProblemKind::MaxDistAction})
    if (name == problem_name(k)) return k;
  throw ConfigError("unknown problem kind '" + name + "'");
}

void ProblemSpec::validate(double mu) const {
  if (!std::isfinite(delta)) throw ConfigError("target displacement must be finite");
  if (!(budget >= 0.0) || !std::isfinite(budget)) throw ConfigError("budget must be >= 0");
  if (!(T > 0.0) || !std::isfinite(T)) throw ConfigError("T must be positive");
  if (std::abs(manifold_residual(basepoint, mu)) > 1e-8)
    throw ConfigError("basepoint is not on the shape manifold");
  if (region) {
    if (!(region->radius > 0.0)) throw ConfigError("region radius must be positive");
    if (!(region->penalty_weight >= 0.0)) throw ConfigError("region weight must be >= 0");
    const ShapePoint c = chart_to_shape(region->center, mu);
    if (angular_distance(basepoint, c) < region->radius + 0.05)
      throw ConfigError("basepoint lies within 0.05 rad of the forbidden region");
  }
}

bool region_clear(const SplineStroke& stroke, const ForbiddenRegion& region, int n) {
  const ShapePoint c = chart_to_shape(region.center, stroke.mu);
  for (int k = 0; k <= n; ++k) {
    if (angular_distance(stroke.shape_at(static_cast<double>(k) / n), c) < region.radius) return false;
  }
  return true;
}

SolveResult solve(const ProblemSpec& spec, const SwimmerConfig& cfg, const SolverOptions& opts) {
  cfg.validate();
  spec.validate(cfg.mu);
  if (opts.quadrature_n % 2 != 0 || opts.quadrature_n < 64 || opts.report_n % 2 != 0 ||
      opts.report_n < 64)
    throw ConfigError("quadrature panel counts must be even and >= 64");
  const ForbiddenRegion* region =
      spec.region && spec.region->active() ? &*spec.region : nullptr;

  SolveResult out;
  const ChartCoord base = chart_coords(spec.basepoint, opts.chart.axis);
  const bool trivial = is_budget(spec.kind) ? spec.budget == 0.0 : spec.delta == 0.0;
  if (trivial) {
    // The constant stroke is optimal for a zero target or zero budget.
    out.stroke = SplineStroke::constant(base, cfg.mu, opts.p);
    out.stroke.chart = opts.chart;
    out.stroke.pin_start(base.phi, base.theta);
    out.metrics = StrokeMetrics{};  // exactly at rest
    out.value = 0.0;
    out.diag.converged = true;
    out.diag.best_start = -1;
    return out;
  }

  // One evaluator per loop topology (winding -1, 0, 1).
  std::vector<StrokeEvaluator> evs;
  for (int w = -1; w <= 1; ++w) {
    SplineStroke tmpl(cfg.mu, opts.p);
    tmpl.chart = opts.chart;
    tmpl.winding = w;
    evs.emplace_back(tmpl, opts.quadrature_n, spec.basepoint, region, opts.region_margin);
  }
  auto evaluator = [&](int w) -> const StrokeEvaluator& {
    if (w < -1 || w > 1) throw ConfigError("start strokes must wind at most once");
    return evs[w + 1];
  };
  const Problem pb = make_problem(spec);

  const int n_warm = static_cast<int>(opts.warm_starts.size());
  const int total = n_warm + opts.starts;
  std::vector<StartOutcome> outcomes(total);
  parallel_for(total, opts.threads, [&](int i) {
    SplineStroke start;
    if (i < n_warm) {
      start = opts.warm_starts[i];
      if (start.p != opts.p || start.chart.axis != opts.chart.axis)
        throw ConfigError("warm start does not match the solver basis");
      // Express theta coefficients relative to this solve's origin.
      for (double& a : start.alpha) a += start.chart.theta_origin - opts.chart.theta_origin;
      start.chart.theta_origin = opts.chart.theta_origin;
    } else {
      start = random_start(spec.basepoint, cfg.mu, opts, static_cast<std::uint64_t>(i - n_warm));
    }
    const StrokeEvaluator& ev = evaluator(start.winding);
    outcomes[i] = run_start(ev, pb, ev.coefficients(start), opts);
    outcomes[i].winding = start.winding;
    const SplineStroke found = ev.stroke(outcomes[i].x);
    // Re-check the constraint on the fine grid: fast-winding strokes can alias
    // on the optimization grid and fake feasibility.
    const StrokeMetrics fine = metrics(evaluate(found, opts.report_n), spec.T);
    StrokeEvaluator::Totals ft;
    ft.displacement = fine.displacement;
    ft.length = fine.length;
    ft.sq = 2.0 * spec.T * fine.action;
    StartReport& rep = outcomes[i].report;
    rep.residual = std::max(rep.residual, residual_of(pb, split(pb, ft).constraint));
    if (rep.residual >= opts.constraint_tol) rep.converged = false;
    if (region) rep.region_ok = region_clear(found, *region);
  });

  int best = -1;
  for (int i = 0; i < total; ++i) {
    const StartReport& r = outcomes[i].report;
    out.diag.starts.push_back(r);
    if (r.residual >= opts.infeasible_tol || !r.region_ok) continue;
    if (best < 0) { best = i; continue; }
    const StartReport& b = outcomes[best].report;
    // Converged starts dominate; ties resolved by objective then index.
    if (r.converged != b.converged) {
      if (r.converged) best = i;
      continue;
    }
    if (r.objective < b.objective) best = i;
  }
  if (best < 0) throw Infeasible("no start reached the constraint tolerance");

  const StartReport& br = outcomes[best].report;
  out.stroke = evaluator(outcomes[best].winding).stroke(outcomes[best].x);
  out.diag.best_start = best;
  out.diag.residual = br.residual;
  out.diag.converged = br.converged;
  const StrokeMetrics raw = metrics(evaluate(out.stroke, opts.report_n), spec.T);
  out.diag.raw_action = raw.action;
  const Trajectory cs = reparameterize_constant_speed(out.stroke, opts.report_n);
  out.metrics = metrics(cs, spec.T);
  // Corners at stalls make the arc-length grid a poor quadrature grid for the
  // displacement; it is parameterization invariant, so take it from the
  // spline parameter grid instead.
  out.metrics.displacement = raw.displacement;
  out.diag.speed_variation =
      out.metrics.max_speed > 0 ? (out.metrics.max_speed - out.metrics.min_speed) / out.metrics.max_speed : 0.0;
  if (spec.kind == ProblemKind::MaxDistLength) out.diag.saturation_residual = std::abs(out.metrics.length - spec.budget);
  if (spec.kind == ProblemKind::MaxDistAction) out.diag.saturation_residual = std::abs(out.metrics.action - spec.budget);
  out.value = spec.kind == ProblemKind::MinTime ? raw.max_speed : problem_value(spec.kind, out.metrics);
  return out;
}

// ---------------------------------------------------------------------------
// Sweeps

namespace {

std::string point_path(const std::string& dir, size_t i) {
  std::ostringstream os;
  os << dir << "/point_" << std::setw(4) << std::setfill('0') << i << ".json";
  return os.str();
}

std::string point_to_json(const SweepPoint& p) {
  nlohmann::json j;
  j["grid"] = p.grid;
  j["value"] = p.value;
  j["converged"] = p.converged;
  j["infeasible"] = p.infeasible;
  j["residual"] = p.residual;
  j["saturation_residual"] = p.saturation_residual;
  j["stroke"] = nlohmann::json::parse(stroke_to_json(p.stroke));
  return j.dump(2);
}

bool load_point(const std::string& path, double grid, SweepPoint& p) {
  std::ifstream in(path);
  if (!in) return false;
  std::stringstream ss;
  ss << in.rdbuf();
  try {
    const auto j = nlohmann::json::parse(ss.str());
    if (j.at("grid").get<double>() != grid) return false;
    p.grid = grid;
    p.value = j.at("value").get<double>();
    p.converged = j.at("converged").get<bool>();
    p.infeasible = j.at("infeasible").get<bool>();
    p.residual = j.at("residual").get<double>();
    p.saturation_residual = j.at("saturation_residual").get<double>();
    p.stroke = stroke_from_json(j.at("stroke").dump());
    return true;
  } catch (const std::exception&) {
    return false;
  }
}

// Lower is better for cost sweeps, higher for distance sweeps.
bool better(const SweepPoint& a, const SweepPoint& b, bool maximize) {
  if (a.infeasible != b.infeasible) return !a.infeasible;
  if (a.converged != b.converged) return a.converged;
  return maximize ? a.value > b.value : a.value < b.value;
}

SweepPoint solve_point(double g, ProblemSpec spec, const SwimmerConfig& cfg, SolverOptions so,
                       size_t index) {
  if (is_budget(spec.kind)) spec.budget = g; else spec.delta = g;
  so.grid_index = index;
  SweepPoint pt;
  pt.grid = g;
  try {
    const SolveResult r = solve(spec, cfg, so);
    pt.value = r.value;
    pt.converged = r.diag.converged;
    pt.residual = r.diag.residual;
    pt.saturation_residual = r.diag.saturation_residual;
    pt.stroke = r.stroke;
  } catch (const Infeasible&) {
    pt.infeasible = true;
    pt.value = std::numeric_limits<double>::quiet_NaN();
    pt.stroke = SplineStroke::constant(chart_coords(spec.basepoint, so.chart.axis), cfg.mu, so.p);
  }
  return pt;
}

SweepResult run_sweep(const std::vector<double>& grid, const ProblemSpec& base,
                      const SwimmerConfig& cfg, const SweepOptions& opts) {
  if (!std::is_sorted(grid.begin(), grid.end())) throw ConfigError("sweep grid must be sorted");
  const bool maximize = is_budget(base.kind);
  SweepResult res;
  res.multistart_best_of = opts.solver.starts;
  res.points.resize(grid.size());
  if (!opts.resume_dir.empty()) std::filesystem::create_directories(opts.resume_dir);

  const SplineStroke* prev = nullptr;
  for (size_t i = 0; i < grid.size(); ++i) {
    SweepPoint& pt = res.points[i];
    if (!opts.resume_dir.empty() && load_point(point_path(opts.resume_dir, i), grid[i], pt)) {
      prev = pt.infeasible ? prev : &pt.stroke;
      continue;
    }
    SolverOptions so = opts.solver;
    so.warm_starts.clear();
    if (prev) so.warm_starts.push_back(*prev);
    pt = solve_point(grid[i], base, cfg, so, i);
    if (!pt.infeasible) prev = &pt.stroke;
    if (!opts.resume_dir.empty()) write_file_atomic(point_path(opts.resume_dir, i), point_to_json(pt));
  }

  if (opts.backward_pass) {
    for (size_t i = grid.size() - 1; i-- > 0;) {
      if (res.points[i + 1].infeasible) continue;
      SolverOptions so = opts.solver;
      so.starts = 0;
      so.warm_starts = {res.points[i + 1].stroke};
      const SweepPoint cand = solve_point(grid[i], base, cfg, so, i);
      if (better(cand, res.points[i], maximize)) {
        res.points[i] = cand;
        if (!opts.resume_dir.empty()) write_file_atomic(point_path(opts.resume_dir, i), point_to_json(cand));
      }
    }
  }
  return res;
}

}  // namespace

SweepResult sweep_phi(const std::vector<double>& delta_grid, const ProblemSpec& base,
                      const SwimmerConfig& cfg, const SweepOptions& opts) {
  ProblemSpec spec = base;
  spec.kind = ProblemKind::MinLength;
  spec.region.reset();
  return run_sweep(delta_grid, spec, cfg, opts);
}

SweepResult sweep_psi(const std::vector<double>& l_grid, const ProblemSpec& base,
                      const SwimmerConfig& cfg, const SweepOptions& opts) {
  for (double l : l_grid)
    if (l < 0.0) throw ConfigError("length budgets must be nonnegative");
  ProblemSpec spec = base;
  spec.kind = ProblemKind::MaxDistLength;
  return run_sweep(l_grid, spec, cfg, opts);
}

SweepResult sweep_with_hole(const std::vector<double>& delta_grid, const ProblemSpec& base,
                            const SwimmerConfig& cfg, const SweepOptions& opts) {
  if (!base.region) throw ConfigError("hole sweep needs a forbidden region");
  ProblemSpec spec = base;
  spec.kind = ProblemKind::MinLength;
  return run_sweep(delta_grid, spec, cfg, opts);
}

MinTimeResult min_time(double delta, const ProblemSpec& base, const SwimmerConfig& cfg,
                       const SolverOptions& opts) {
  ProblemSpec spec = base;
  spec.kind = ProblemKind::MinLength;
  spec.delta = delta;
  const SolveResult r = solve(spec, cfg, opts);
  MinTimeResult out;
  out.T = r.metrics.length;
  out.stroke = r.stroke;
  out.unit_speed = reparameterize_constant_speed(r.stroke, opts.report_n);
  return out;
}

}  // namespace strokeopt
