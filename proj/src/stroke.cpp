#include "strokeopt/stroke.hpp"

#include <algorithm>
#include <cmath>
#include <numbers>
#include <ostream>

#include "json.hpp"

#include "strokeopt/errors.hpp"

namespace strokeopt {

namespace {

constexpr double kPi = std::numbers::pi;

// 5-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 5> kGL5x = {-0.9061798459386640, -0.5384693101056831, 0.0,
                                         0.5384693101056831, 0.9061798459386640};
constexpr std::array<double, 5> kGL5w = {0.2369268850561891, 0.4786286704993665,
                                         0.5688888888888889, 0.4786286704993665,
                                         0.2369268850561891};

// 8-point Gauss-Legendre on [-1, 1].
constexpr std::array<double, 8> kGL8x = {-0.9602898564975363, -0.7966664774136267,
                                         -0.5255324099163290, -0.1834346424956498,
                                         0.1834346424956498,  0.5255324099163290,
                                         0.7966664774136267,  0.9602898564975363};
constexpr std::array<double, 8> kGL8w = {0.1012285362903763, 0.2223810344533745,
                                         0.3137066458778873, 0.3626837833783620,
                                         0.3626837833783620, 0.3137066458778873,
                                         0.2223810344533745, 0.1012285362903763};

Eigen::Vector3d stroke_velocity(const SplineStroke& st, double t, ShapePoint* s_out = nullptr) {
  double phi, theta, dphi, dtheta;
  st.angles(t, phi, theta, dphi, dtheta);
  const ChartCoord c{st.chart.axis, phi, theta};
  if (s_out) *s_out = chart_to_shape(c, st.mu);
  const ChartTangents tg = chart_tangents(c, st.mu);
  return tg.d_phi * dphi + tg.d_theta * dtheta;
}

double g_speed(const ShapePoint& s, const Eigen::Vector3d& v) {
  return std::sqrt(std::max(v.dot(metric_matrix(s) * v), 0.0));
}

double speed_at(const SplineStroke& st, double t) {
  ShapePoint s;
  const Eigen::Vector3d v = stroke_velocity(st, t, &s);
  return g_speed(s, v);
}

// Assigns active-chart coordinates with hysteresis and records switches.
class ChartTracker {
 public:
  ChartTracker(ChartId home, Trajectory& traj) : home_(home), active_(home), traj_(traj) {}

  ChartCoord update(double t, const ShapePoint& s, bool first) {
    if (pole_distance(s, ChartId::PolarZ) < 1e-3 && pole_distance(s, ChartId::PolarX) < 1e-3) {
      throw PoleDegeneracy("stroke passes near the poles of both charts");
    }
    ChartId next = active_;
    if (pole_distance(s, active_) < kChartSwitchAngle) {
      next = other_chart(active_);
    } else if (active_ != home_ && pole_distance(s, home_) > 0.3) {
      next = home_;
    }
    if (next != active_ || first) {
      if (next != active_) traj_.chart_log.push_back({t, next});
      active_ = next;
    }
    return chart_coords(s, active_);
  }

 private:
  ChartId home_, active_;
  Trajectory& traj_;
};

double simpson_weight(int k, int n) {
  if (k == 0 || k == n) return 1.0;
  return (k % 2) ? 4.0 : 2.0;
}

void check_panels(int n) {
  if (n < 64 || n % 2 != 0) throw std::invalid_argument("sample count must be even and >= 64");
}

struct Pt {
  double x, y;
};

double cross(const Pt& o, const Pt& a, const Pt& b) {
  return (a.x - o.x) * (b.y - o.y) - (a.y - o.y) * (b.x - o.x);
}

bool on_segment(const Pt& p, const Pt& a, const Pt& b) {
  return std::min(a.x, b.x) <= p.x && p.x <= std::max(a.x, b.x) && std::min(a.y, b.y) <= p.y &&
         p.y <= std::max(a.y, b.y);
}

bool segments_intersect(const Pt& a, const Pt& b, const Pt& c, const Pt& d) {
  const double d1 = cross(c, d, a), d2 = cross(c, d, b);
  const double d3 = cross(a, b, c), d4 = cross(a, b, d);
  if (((d1 > 0 && d2 < 0) || (d1 < 0 && d2 > 0)) && ((d3 > 0 && d4 < 0) || (d3 < 0 && d4 > 0)))
    return true;
  if (d1 == 0 && on_segment(a, c, d)) return true;
  if (d2 == 0 && on_segment(b, c, d)) return true;
  if (d3 == 0 && on_segment(c, a, b)) return true;
  if (d4 == 0 && on_segment(d, a, b)) return true;
  return false;
}

std::vector<Pt> chart_polygon(const SplineStroke& st, int n) {
  std::vector<Pt> poly(n);
  for (int k = 0; k < n; ++k) {
    double phi, theta, dphi, dtheta;
    st.angles(static_cast<double>(k) / n, phi, theta, dphi, dtheta);
    poly[k] = {phi, theta};
  }
  return poly;
}

}  // namespace

// ---------------------------------------------------------------------------
// SplineStroke

SplineStroke SplineStroke::constant(const ChartCoord& c, double mu, int p) {
  SplineStroke st(mu, p);
  st.chart.axis = c.chart;
  std::fill(st.beta.begin(), st.beta.end(), c.phi);
  std::fill(st.alpha.begin(), st.alpha.end(), c.theta);
  return st;
}

void SplineStroke::angles(double t, double& phi, double& theta, double& dphi,
                          double& dtheta) const {
  const auto s = basis().stencil(t);
  phi = theta = dphi = dtheta = 0.0;
  for (int i = 0; i < 4; ++i) {
    phi += s.w[i] * beta[s.index[i]];
    dphi += s.dw[i] * beta[s.index[i]];
    theta += s.w[i] * alpha[s.index[i]];
    dtheta += s.dw[i] * alpha[s.index[i]];
  }
  const double turn = 2.0 * kPi * winding;
  theta += chart.theta_origin + turn * t;
  dtheta += turn;
}

ShapePoint SplineStroke::shape_at(double t) const { return chart_to_shape(coord_at(t), mu); }

ChartCoord SplineStroke::coord_at(double t) const {
  double phi, theta, dphi, dtheta;
  angles(t, phi, theta, dphi, dtheta);
  return {chart.axis, phi, theta};
}

SplineStroke SplineStroke::reversed() const {
  // B_j(1 - t) is the basis reflected about the knot grid; with the stencil
  // convention above B_j(-t) = B_{(2 - j) mod p}(t).
  SplineStroke r = *this;
  for (int j = 0; j < p; ++j) {
    const int m = ((2 - j) % p + p) % p;
    r.alpha[m] = alpha[j];
    r.beta[m] = beta[j];
  }
  r.winding = -winding;
  return r;
}

void SplineStroke::pin_start(double phi0, double theta0) {
  double phi, theta, dphi, dtheta;
  angles(0.0, phi, theta, dphi, dtheta);
  for (double& b : beta) b += phi0 - phi;
  for (double& a : alpha) a += theta0 - theta;
}

void SplineStroke::validate() const {
  if (p < 4) throw ConfigError("spline basis size must be >= 4");
  if (static_cast<int>(alpha.size()) != p || static_cast<int>(beta.size()) != p)
    throw ConfigError("coefficient vectors must have p entries");
  if (!(mu > 0.0 && mu < 1.0)) throw ConfigError("mu must lie in (0, 1)");
  for (double v : alpha)
    if (!std::isfinite(v)) throw ConfigError("non-finite spline coefficient");
  for (double v : beta)
    if (!std::isfinite(v)) throw ConfigError("non-finite spline coefficient");
}

// ---------------------------------------------------------------------------
// Sampling

Trajectory evaluate_warped(const SplineStroke& stroke, int n, const Warp& warp) {
  check_panels(n);
  Trajectory traj;
  traj.mu = stroke.mu;
  traj.samples.resize(n + 1);
  ChartTracker tracker(stroke.chart.axis, traj);
  for (int k = 0; k <= n; ++k) {
    const double sigma = static_cast<double>(k) / n;
    const auto [tau, dtau] = warp(sigma);
    TrajectorySample& smp = traj.samples[k];
    smp.t = sigma;
    smp.ds.ds = stroke_velocity(stroke, tau, &smp.s) * dtau;
    smp.coord = tracker.update(sigma, smp.s, k == 0);
  }
  return traj;
}

Trajectory evaluate(const SplineStroke& stroke, int n) {
  return evaluate_warped(stroke, n, [](double t) { return std::pair{t, 1.0}; });
}

Trajectory retrace(const SplineStroke& stroke, int n, double fraction) {
  check_panels(n);
  Trajectory traj;
  traj.mu = stroke.mu;
  traj.samples.resize(n + 1);
  ChartTracker tracker(stroke.chart.axis, traj);
  const int half = n / 2;
  for (int k = 0; k <= half; ++k) {
    const double t = static_cast<double>(k) / n;
    const double w = 0.5 * (1.0 - std::cos(2.0 * kPi * t));
    const double dw = (k == 0 || k == half) ? 0.0 : kPi * std::sin(2.0 * kPi * t);
    TrajectorySample& smp = traj.samples[k];
    smp.t = t;
    smp.ds.ds = stroke_velocity(stroke, fraction * w, &smp.s) * (fraction * dw);
    smp.coord = tracker.update(t, smp.s, k == 0);
  }
  // The return leg is the exact mirror image of the outward leg.
  for (int k = half + 1; k <= n; ++k) {
    TrajectorySample& smp = traj.samples[k];
    smp = traj.samples[n - k];
    smp.t = static_cast<double>(k) / n;
    smp.ds.ds = -smp.ds.ds;
    smp.coord = tracker.update(smp.t, smp.s, false);
  }
  return traj;
}

double stroke_length(const SplineStroke& stroke, int panels_per_span) {
  const int m = stroke.p * panels_per_span;
  double total = 0.0;
  for (int i = 0; i < m; ++i) {
    const double a = static_cast<double>(i) / m, h = 1.0 / m;
    for (int q = 0; q < 5; ++q) total += 0.5 * h * kGL5w[q] * speed_at(stroke, a + 0.5 * h * (kGL5x[q] + 1.0));
  }
  return total;
}

Trajectory reparameterize_constant_speed(const SplineStroke& stroke, int n) {
  check_panels(n);
  const int m = stroke.p * 16;
  const double h = 1.0 / m;
  std::vector<double> cum(m + 1, 0.0);
  auto partial = [&](double a, double b) {
    double acc = 0.0;
    for (int q = 0; q < 5; ++q) acc += kGL5w[q] * speed_at(stroke, a + 0.5 * (b - a) * (kGL5x[q] + 1.0));
    return 0.5 * (b - a) * acc;
  };
  for (int i = 0; i < m; ++i) cum[i + 1] = cum[i] + partial(i * h, (i + 1) * h);
  const double L = cum[m];
  if (L <= 1e-300) return evaluate(stroke, n);

  // Tabulate tau(sigma_k) by Newton with a bisection safeguard.
  std::vector<double> tau(n + 1), dtau(n + 1);
  for (int k = 0; k <= n; ++k) {
    const double target = L * k / n;
    if (k == 0 || k == n) {
      tau[k] = k == 0 ? 0.0 : 1.0;
    } else {
      int i = static_cast<int>(std::upper_bound(cum.begin(), cum.end(), target) - cum.begin()) - 1;
      i = std::clamp(i, 0, m - 1);
      double lo = i * h, hi = (i + 1) * h;
      const double span = cum[i + 1] - cum[i];
      double x = span > 0.0 ? lo + h * (target - cum[i]) / span : lo;
      for (int it = 0; it < 60; ++it) {
        const double F = cum[i] + partial(i * h, x) - target;
        if (F > 0.0) hi = x; else lo = x;
        const double sp = speed_at(stroke, x);
        double nx = sp > 0.0 ? x - F / sp : 0.5 * (lo + hi);
        if (!(nx > lo && nx < hi)) nx = 0.5 * (lo + hi);
        if (std::abs(nx - x) < 1e-15) { x = nx; break; }
        x = nx;
      }
      tau[k] = x;
    }
    const double sp = speed_at(stroke, tau[k]);
    dtau[k] = L / std::max(sp, 1e-12 * L);
  }
  Trajectory traj;
  traj.mu = stroke.mu;
  traj.samples.resize(n + 1);
  ChartTracker tracker(stroke.chart.axis, traj);
  for (int k = 0; k <= n; ++k) {
    TrajectorySample& smp = traj.samples[k];
    smp.t = static_cast<double>(k) / n;
    const Eigen::Vector3d v = stroke_velocity(stroke, tau[k], &smp.s);
    const double sp = g_speed(smp.s, v);
    // Rescale exactly to the target speed; the direction is that of s'(tau).
    smp.ds.ds = sp > 0.0 ? v * (L / sp) : v * dtau[k];
    smp.coord = tracker.update(smp.t, smp.s, k == 0);
  }
  return traj;
}

// ---------------------------------------------------------------------------
// Quadrature

StrokeMetrics metrics(const Trajectory& traj, double T) {
  if (!(T > 0.0)) throw std::invalid_argument("T must be positive");
  const int n = static_cast<int>(traj.samples.size()) - 1;
  if (n < 2 || n % 2 != 0) throw std::invalid_argument("metrics needs an even panel count");
  StrokeMetrics m;
  double disp = 0.0, len = 0.0, sq = 0.0;
  m.min_speed = std::numeric_limits<double>::infinity();
  for (int k = 0; k <= n; ++k) {
    const TrajectorySample& smp = traj.samples[k];
    const MassData md = mass_data(smp.s);
    const Eigen::Vector3d& v = smp.ds.ds;
    const double q = std::max(v.dot(md.metric_matrix() * v), 0.0);
    const double sp = std::sqrt(q);
    const double w = simpson_weight(k, n);
    disp += w * (-md.N.dot(v.transpose()) / md.Mr);
    len += w * sp;
    sq += w * q;
    m.max_speed = std::max(m.max_speed, sp);
    m.min_speed = std::min(m.min_speed, sp);
  }
  const double h3 = 1.0 / (3.0 * n);
  m.displacement = disp * h3;
  m.length = len * h3;
  m.action = 0.5 * sq * h3 / T;
  m.max_speed /= T;
  m.min_speed /= T;
  return m;
}

std::vector<double> displacement_profile(const Trajectory& traj) {
  const size_t n = traj.samples.size();
  std::vector<double> r(n, 0.0);
  if (n < 2) return r;
  const double h = 1.0 / static_cast<double>(n - 1);
  double prev = one_form(traj.samples[0].s, traj.samples[0].ds);
  for (size_t k = 1; k < n; ++k) {
    const double cur = one_form(traj.samples[k].s, traj.samples[k].ds);
    r[k] = r[k - 1] + 0.5 * h * (prev + cur);
    prev = cur;
  }
  return r;
}

// ---------------------------------------------------------------------------
// Stokes

void check_simple(const SplineStroke& stroke, int samples) {
  const std::vector<Pt> poly = chart_polygon(stroke, samples);
  const int n = samples;
  for (int i = 0; i < n; ++i) {
    const Pt& a = poly[i];
    const Pt& b = poly[(i + 1) % n];
    for (int j = i + 2; j < n; ++j) {
      if (i == 0 && j == n - 1) continue;
      if (segments_intersect(a, b, poly[j], poly[(j + 1) % n])) {
        throw NotSimple("stroke self-intersects in chart coordinates");
      }
    }
  }
}

double displacement_via_stokes(const SplineStroke& stroke) {
  if (stroke.winding != 0) throw ChartOverflow("stroke winds around the chart axis");
  constexpr int kPolygon = 4096;
  const std::vector<Pt> poly = chart_polygon(stroke, kPolygon);
  double xmin = poly[0].x, xmax = xmin, ymin = poly[0].y, ymax = ymin;
  for (const Pt& q : poly) {
    xmin = std::min(xmin, q.x);
    xmax = std::max(xmax, q.x);
    ymin = std::min(ymin, q.y);
    ymax = std::max(ymax, q.y);
  }
  if (xmin <= 0.0 || xmax >= kPi) throw ChartOverflow("stroke leaves the chart through a pole");
  if (ymax - ymin >= 2.0 * kPi) throw ChartOverflow("stroke wraps the chart azimuth");
  if (xmax - xmin < 1e-14 && ymax - ymin < 1e-14) return 0.0;
  check_simple(stroke);

  const ChartId chart = stroke.chart.axis;
  const double mu = stroke.mu;
  auto density = [&](double x, double y) { return dL_chart_density({chart, x, y}, mu); };

  // Inner integral along the line theta = y: winding number from signed
  // crossings, Gauss-Legendre on each interval between crossings.
  std::vector<std::pair<double, int>> xs;
  auto line_integral = [&](double y) {
    xs.clear();
    for (int i = 0; i < kPolygon; ++i) {
      const Pt& a = poly[i];
      const Pt& b = poly[(i + 1) % kPolygon];
      if ((a.y <= y) == (b.y <= y)) continue;
      const double x = a.x + (y - a.y) * (b.x - a.x) / (b.y - a.y);
      xs.emplace_back(x, b.y > a.y ? 1 : -1);
    }
    std::sort(xs.begin(), xs.end());
    double acc = 0.0;
    int wind = 0;
    // Winding of points left of crossing k is the sum of signs to its right.
    for (auto it = xs.rbegin(); it != xs.rend(); ++it) {
      const auto nxt = it + 1;
      wind += it->second;
      if (nxt == xs.rend() || wind == 0) continue;
      const double a = nxt->first, b = it->first;
      if (b <= a) continue;
      double part = 0.0;
      for (int q = 0; q < 8; ++q) part += kGL8w[q] * density(a + 0.5 * (b - a) * (kGL8x[q] + 1.0), y);
      acc += wind * 0.5 * (b - a) * part;
    }
    return acc;
  };

  // Outer integral: 256 panels, those holding a local theta extremum of the
  // curve split four ways.
  constexpr int kPanels = 256;
  const double h = (ymax - ymin) / kPanels;
  std::vector<int> refine(kPanels, 1);
  for (int i = 0; i < kPolygon; ++i) {
    const double yp = poly[(i + kPolygon - 1) % kPolygon].y, y0 = poly[i].y,
                 yn = poly[(i + 1) % kPolygon].y;
    if ((y0 - yp) * (yn - y0) <= 0.0) {
      const int k = std::clamp(static_cast<int>((y0 - ymin) / h), 0, kPanels - 1);
      for (int d = -1; d <= 1; ++d)
        if (k + d >= 0 && k + d < kPanels) refine[k + d] = 4;
    }
  }
  double total = 0.0;
  for (int k = 0; k < kPanels; ++k) {
    const int sub = refine[k];
    const double hs = h / sub;
    for (int j = 0; j < sub; ++j) {
      const double a = ymin + k * h + j * hs;
      double part = 0.0;
      for (int q = 0; q < 8; ++q) part += kGL8w[q] * line_integral(a + 0.5 * hs * (kGL8x[q] + 1.0));
      total += 0.5 * hs * part;
    }
  }
  return total;
}

// ---------------------------------------------------------------------------
// Export

void write_trajectory_csv(std::ostream& os, const Trajectory& traj) {
  const std::vector<double> r = displacement_profile(traj);
  os << "t,s1,s2,s3,r\n";
  os.precision(17);
  for (size_t k = 0; k < traj.samples.size(); ++k) {
    const auto& smp = traj.samples[k];
    os << smp.t << ',' << smp.s.s1() << ',' << smp.s.s2() << ',' << smp.s.s3() << ',' << r[k] << '\n';
  }
}

void write_shape_gallery_csv(std::ostream& os, const Trajectory& traj, int count,
                             int boundary_points) {
  os << "shape,t,x,y\n";
  os.precision(17);
  const int n = static_cast<int>(traj.samples.size()) - 1;
  for (int i = 0; i < count; ++i) {
    const int k = static_cast<int>(std::lround(static_cast<double>(i) * n / count));
    const ShapePoint& s = traj.samples[k].s;
    for (int j = 0; j < boundary_points; ++j) {
      const auto z = chi_map(s, std::polar(1.0, 2.0 * kPi * j / boundary_points));
      os << i << ',' << traj.samples[k].t << ',' << z.real() << ',' << z.imag() << '\n';
    }
  }
}

std::string stroke_to_json(const SplineStroke& stroke) {
  nlohmann::json j;
  j["format"] = "strokeopt.stroke";
  j["version"] = 1;
  j["mu"] = stroke.mu;
  j["p"] = stroke.p;
  j["alpha"] = stroke.alpha;
  j["beta"] = stroke.beta;
  j["winding"] = stroke.winding;
  j["chart_convention"] = {{"axis", chart_name(stroke.chart.axis)},
                           {"theta_origin", stroke.chart.theta_origin}};
  return j.dump(2);
}

SplineStroke stroke_from_json(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("stroke file: ") + e.what());
  }
  try {
    SplineStroke st;
    st.mu = j.at("mu").get<double>();
    st.p = j.at("p").get<int>();
    st.alpha = j.at("alpha").get<std::vector<double>>();
    st.beta = j.at("beta").get<std::vector<double>>();
    st.winding = j.value("winding", 0);
    if (j.contains("chart_convention")) {
      const auto& c = j["chart_convention"];
      st.chart.axis = chart_from_name(c.value("axis", std::string("PolarZ")));
      st.chart.theta_origin = c.value("theta_origin", 0.0);
    }
    st.validate();
    return st;
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("stroke file: ") + e.what());
  }
}

}  // namespace strokeopt
