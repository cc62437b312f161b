#include <Eigen/QR>
#include <cmath>
#include <map>
#include <numbers>

#include "strokeopt/errors.hpp"
#include "strokeopt/stroke.hpp"

namespace strokeopt {

namespace {

constexpr double kPi = std::numbers::pi;

struct Grid {
  ChartId chart;
  int nphi, ntheta;
  std::vector<double> v;  // row-major (phi, theta)

  double phi(int i) const { return kPi * (i + 0.5) / nphi; }
  double theta(int j) const { return -kPi + 2.0 * kPi * j / ntheta; }
  double at(int i, int j) const { return v[i * ntheta + ((j % ntheta) + ntheta) % ntheta]; }
};

struct Contour {
  std::vector<std::pair<double, double>> pts;  // (phi, theta), theta unwrapped
  bool closed = true;
};

// Edge ids: horizontal (constant phi row i, between columns j and j+1) and
// vertical (column j, between rows i and i+1).
long h_edge(const Grid& g, int i, int j) { return 2L * (i * g.ntheta + (j % g.ntheta)); }
long v_edge(const Grid& g, int i, int j) { return 2L * (i * g.ntheta + (j % g.ntheta)) + 1; }

std::pair<double, double> edge_point(const Grid& g, long id) {
  const long cell = id / 2;
  const int i = static_cast<int>(cell / g.ntheta), j = static_cast<int>(cell % g.ntheta);
  double a, b, x0, x1, y0, y1;
  if (id % 2 == 0) {
    a = g.at(i, j);
    b = g.at(i, j + 1);
    x0 = x1 = g.phi(i);
    y0 = g.theta(j);
    y1 = y0 + 2.0 * kPi / g.ntheta;
  } else {
    a = g.at(i, j);
    b = g.at(i + 1, j);
    x0 = g.phi(i);
    x1 = g.phi(i + 1);
    y0 = y1 = g.theta(j);
  }
  const double w = a / (a - b);
  return {x0 + w * (x1 - x0), y0 + w * (y1 - y0)};
}

std::vector<Contour> march(const Grid& g) {
  std::map<long, std::vector<long>> adj;
  auto link = [&](long a, long b) {
    adj[a].push_back(b);
    adj[b].push_back(a);
  };
  for (int i = 0; i + 1 < g.nphi; ++i) {
    for (int j = 0; j < g.ntheta; ++j) {
      const bool p0 = g.at(i, j) > 0, p1 = g.at(i, j + 1) > 0;
      const bool p2 = g.at(i + 1, j + 1) > 0, p3 = g.at(i + 1, j) > 0;
      const long e0 = h_edge(g, i, j), e1 = v_edge(g, i, j + 1);
      const long e2 = h_edge(g, i + 1, j), e3 = v_edge(g, i, j);
      std::vector<long> cut;
      if (p0 != p1) cut.push_back(e0);
      if (p1 != p2) cut.push_back(e1);
      if (p3 != p2) cut.push_back(e2);
      if (p0 != p3) cut.push_back(e3);
      if (cut.size() == 2) {
        link(cut[0], cut[1]);
      } else if (cut.size() == 4) {
        const double centre = 0.25 * (g.at(i, j) + g.at(i, j + 1) + g.at(i + 1, j + 1) + g.at(i + 1, j));
        // Keep the corners sharing the centre's sign connected.
        if ((centre > 0) == p0) {
          link(e0, e1);
          link(e2, e3);
        } else {
          link(e0, e3);
          link(e1, e2);
        }
      }
    }
  }

  std::vector<Contour> out;
  std::map<long, bool> seen;
  for (const auto& [start, nb] : adj) {
    if (seen[start]) continue;
    // Walk from an endpoint when the component is open.
    long first = start;
    {
      std::vector<long> stack{start};
      std::map<long, bool> vis;
      while (!stack.empty()) {
        const long e = stack.back();
        stack.pop_back();
        if (vis[e]) continue;
        vis[e] = true;
        if (adj[e].size() == 1) first = e;
        for (long n : adj[e]) stack.push_back(n);
      }
    }
    Contour c;
    long prev = -1, cur = first;
    double last_theta = 0.0;
    while (cur >= 0 && !seen[cur]) {
      seen[cur] = true;
      auto [phi, theta] = edge_point(g, cur);
      if (!c.pts.empty()) theta += 2.0 * kPi * std::round((last_theta - theta) / (2.0 * kPi));
      last_theta = theta;
      c.pts.emplace_back(phi, theta);
      long next = -1;
      for (long n : adj[cur])
        if (n != prev && !seen[n]) { next = n; break; }
      prev = cur;
      cur = next;
    }
    c.closed = adj[first].size() == 2;
    out.push_back(std::move(c));
  }
  return out;
}

double loop_integral(const Contour& c, ChartId chart, double mu) {
  double acc = 0.0;
  const size_t n = c.pts.size();
  for (size_t k = 0; k < n; ++k) {
    const auto& a = c.pts[k];
    const auto& b = c.pts[(k + 1) % n];
    const ShapePoint sa = chart_to_shape({chart, a.first, a.second}, mu);
    const ShapePoint sb = chart_to_shape({chart, b.first, b.second}, mu);
    const ShapePoint mid(0.5 * (sa.s + sb.s));
    acc += one_form(mid, TangentVector(sb.s - sa.s));
  }
  return acc;
}

}  // namespace

LevelSetResult level_set_stroke(const SwimmerConfig& cfg, int grid_n, int p,
                                const DensityFn& density) {
  cfg.validate();
  if (grid_n < 8) throw ConfigError("level-set grid must be at least 8");
  const double mu = cfg.mu;

  for (ChartId chart : {ChartId::PolarZ, ChartId::PolarX}) {
    Grid g{chart, grid_n, 2 * grid_n, {}};
    g.v.resize(static_cast<size_t>(g.nphi) * g.ntheta);
    bool pos = false, neg = false;
    for (int i = 0; i < g.nphi; ++i)
      for (int j = 0; j < g.ntheta; ++j) {
        const double f = density(chart_to_shape({chart, g.phi(i), g.theta(j)}, mu));
        g.v[i * g.ntheta + j] = f;
        (f > 0 ? pos : neg) = true;
      }
    if (!(pos && neg)) throw NoSignChange("density has constant sign on the grid");

    std::vector<Contour> contours = march(g);
    bool open = false;
    for (const auto& c : contours) open |= !c.closed;
    if (open) continue;  // zero set runs into this chart's pole rows

    LevelSetResult res;
    res.components = static_cast<int>(contours.size());
    res.disconnected = contours.size() > 1;
    size_t best = 0;
    double best_val = 0.0;
    for (size_t k = 0; k < contours.size(); ++k) {
      const double v = loop_integral(contours[k], chart, mu);
      if (std::abs(v) > std::abs(best_val)) {
        best_val = v;
        best = k;
      }
    }
    Contour c = contours[best];
    if (best_val < 0) {
      std::reverse(c.pts.begin(), c.pts.end());
      for (size_t k = 1; k < c.pts.size(); ++k) {
        double& th = c.pts[k].second;
        th += 2.0 * kPi * std::round((c.pts[k - 1].second - th) / (2.0 * kPi));
      }
    }

    // Chord-length parameterization of the closed polyline.
    const size_t m = c.pts.size();
    std::vector<double> t(m, 0.0);
    double total = 0.0;
    for (size_t k = 0; k < m; ++k) {
      const auto& a = c.pts[k];
      const auto& b = c.pts[(k + 1) % m];
      double dth = b.second - a.second;
      dth -= 2.0 * kPi * std::round(dth / (2.0 * kPi));
      const double d = std::hypot(b.first - a.first, dth);
      if (k + 1 < m) t[k + 1] = t[k] + d;
      total += d;
    }
    for (double& x : t) x /= total;
    double closing = c.pts.front().second - c.pts.back().second;
    closing -= 2.0 * kPi * std::round(closing / (2.0 * kPi));
    const double turn = c.pts.back().second + closing - c.pts.front().second;
    const int winding = static_cast<int>(std::lround(turn / (2.0 * kPi)));

    PeriodicCubicBasis basis{p};
    Eigen::MatrixXd A(m, p);
    Eigen::VectorXd yphi(m), ytheta(m);
    for (size_t k = 0; k < m; ++k) {
      const auto r = basis.row(t[k]);
      for (int j = 0; j < p; ++j) A(k, j) = r[j];
      yphi[k] = c.pts[k].first;
      ytheta[k] = c.pts[k].second - 2.0 * kPi * winding * t[k];
    }
    const auto qr = A.colPivHouseholderQr();
    const Eigen::VectorXd beta = qr.solve(yphi), alpha = qr.solve(ytheta);

    SplineStroke st(mu, p);
    st.chart.axis = chart;
    st.winding = winding;
    for (int j = 0; j < p; ++j) {
      st.alpha[j] = alpha[j];
      st.beta[j] = beta[j];
    }
    double err = 0.0;
    for (size_t k = 0; k < m; ++k) {
      const ChartCoord q = st.coord_at(t[k]);
      err = std::max(err, std::hypot(q.phi - c.pts[k].first, q.theta - c.pts[k].second));
    }
    res.stroke = st;
    res.polyline = c.pts;
    res.fit_error = err;
    return res;
  }
  throw ChartOverflow("zero level set reaches the poles of both charts");
}

}  // namespace strokeopt
