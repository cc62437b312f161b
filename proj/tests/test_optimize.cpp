#include <filesystem>

#include "doctest.h"
#include "support.hpp"
#include "strokeopt/optimize.hpp"

using namespace strokeopt;
using testsupport::kPi;

namespace {

SolverOptions quick(int starts = 4) {
  SolverOptions o;
  o.starts = starts;
  o.seed = 7;
  return o;
}

ProblemSpec min_length(double delta) {
  ProblemSpec s;
  s.kind = ProblemKind::MinLength;
  s.delta = delta;
  return s;
}

}  // namespace

TEST_CASE("problem names") {
  for (ProblemKind k : {ProblemKind::MinLength, ProblemKind::MinAction, ProblemKind::MinTime,
                        ProblemKind::MaxDistLength, ProblemKind::MaxDistAction})
    CHECK(problem_from_name(problem_name(k)) == k);
  CHECK_THROWS_AS(problem_from_name("MaxFun"), ConfigError);
}

TEST_CASE("trivial targets") {
  const SwimmerConfig cfg;
  const SolveResult r = solve(min_length(0.0), cfg, quick());
  CHECK(r.value == 0.0);
  CHECK(r.metrics.length == 0.0);
  CHECK((r.stroke.shape_at(0.37).s - ProblemSpec{}.basepoint.s).norm() < 1e-15);

  ProblemSpec psi;
  psi.kind = ProblemKind::MaxDistLength;
  psi.budget = 0.0;
  CHECK(solve(psi, cfg, quick()).value == 0.0);
}

TEST_CASE("invalid problems") {
  const SwimmerConfig cfg;
  ProblemSpec s = min_length(0.01);
  s.T = 0.0;
  CHECK_THROWS_AS(solve(s, cfg, quick()), ConfigError);
  s = min_length(0.01);
  s.region = ForbiddenRegion{chart_coords(s.basepoint, ChartId::PolarZ), 0.2, 1e4};
  CHECK_THROWS_AS(solve(s, cfg, quick()), ConfigError);
  s.region->center.phi += 0.24;  // 0.04 rad outside the cap: still too close
  CHECK_THROWS_AS(solve(s, cfg, quick()), ConfigError);
  s = min_length(std::nan(""));
  CHECK_THROWS_AS(solve(s, cfg, quick()), ConfigError);
  SweepOptions so;
  so.solver = quick();
  CHECK_THROWS_AS(sweep_phi({0.01, 0.0}, min_length(0), cfg, so), ConfigError);
  CHECK_THROWS_AS(sweep_psi({-0.1, 0.1}, min_length(0), cfg, so), ConfigError);
}

TEST_CASE("min length") {
  const SwimmerConfig cfg;
  const SolveResult r = solve(min_length(0.01), cfg, quick(8));
  CHECK(r.diag.converged);
  CHECK(r.diag.residual < 1e-6);
  CHECK(std::abs(r.metrics.displacement - 0.01) < 1e-6);
  CHECK(r.value == doctest::Approx(0.23011).epsilon(1e-3));
  CHECK(r.diag.speed_variation < 1e-4);
  CHECK((r.stroke.shape_at(0.0).s - ProblemSpec{}.basepoint.s).norm() < 1e-12);
  for (const auto& smp : evaluate(r.stroke, 400).samples) CHECK(std::abs(manifold_residual(smp.s, 0.3)) < 1e-10);

  SUBCASE("even in delta") {
    const SolveResult m = solve(min_length(-0.01), cfg, quick(8));
    CHECK(std::abs(m.value - r.value) < 1e-4);
    CHECK(std::abs(m.metrics.displacement + 0.01) < 1e-6);
  }

  SUBCASE("independent of the azimuth origin") {
    SolverOptions o = quick(8);
    o.chart.theta_origin = kPi / 3;
    CHECK(std::abs(solve(min_length(0.01), cfg, o).value - r.value) < 1e-4);
  }

  SUBCASE("action") {
    ProblemSpec a = min_length(0.01);
    a.kind = ProblemKind::MinAction;
    a.T = 2.0;
    const SolveResult q = solve(a, cfg, quick(8));
    CHECK(q.value == doctest::Approx(r.value * r.value / (2 * a.T)).epsilon(0.01));
    CHECK(q.diag.speed_variation < 1e-4);
    CHECK(q.diag.raw_action >= q.value * (1 - 1e-9));
  }
}

TEST_CASE("determinism") {
  const SwimmerConfig cfg;
  SolverOptions o = quick(3);
  const SolveResult a = solve(min_length(0.008), cfg, o);
  const SolveResult b = solve(min_length(0.008), cfg, o);
  o.threads = 3;
  const SolveResult c = solve(min_length(0.008), cfg, o);
  CHECK(stroke_to_json(a.stroke) == stroke_to_json(b.stroke));
  CHECK(stroke_to_json(a.stroke) == stroke_to_json(c.stroke));
  CHECK(a.value == c.value);
  o.seed = 8;
  CHECK(stroke_to_json(solve(min_length(0.008), cfg, o).stroke) != stroke_to_json(a.stroke));
}

TEST_CASE("infeasible target") {
  const SwimmerConfig cfg;
  SolverOptions o = quick(2);
  o.max_outer = 4;
  o.max_inner = 60;
  CHECK_THROWS_AS(solve(min_length(5.0), cfg, o), Infeasible);
}

TEST_CASE("sweeps") {
  const SwimmerConfig cfg;
  SweepOptions so;
  so.solver = quick(4);

  const SweepResult phi = sweep_phi({0.0, 0.005, 0.01}, min_length(0), cfg, so);
  REQUIRE(phi.points.size() == 3);
  CHECK(phi.points[0].value == 0.0);
  CHECK(phi.points[1].value > 0.0);
  CHECK(phi.points[2].value >= phi.points[1].value);
  for (const auto& p : phi.points) {
    CHECK(p.converged);
    CHECK(p.residual < 1e-6);
  }

  SUBCASE("disabled region") {
    ProblemSpec b = min_length(0);
    b.basepoint = chart_to_shape({ChartId::PolarZ, 2.1, 0.0}, cfg.mu);
    const SweepResult plain = sweep_phi({0.0, 0.005, 0.01}, b, cfg, so);
    b.region = ForbiddenRegion{{ChartId::PolarZ, 1.45, 0.0}, 0.45, 0.0};
    const SweepResult h = sweep_with_hole({0.0, 0.005, 0.01}, b, cfg, so);
    for (size_t i = 0; i < 3; ++i) CHECK(std::abs(h.points[i].value - plain.points[i].value) < 1e-6);
  }

  SUBCASE("resume") {
    const auto dir = std::filesystem::temp_directory_path() / "strokeopt_resume_test";
    std::filesystem::remove_all(dir);
    SweepOptions r = so;
    r.resume_dir = dir.string();
    const SweepResult first = sweep_phi({0.0, 0.005, 0.01}, min_length(0), cfg, r);
    CHECK(std::filesystem::exists(dir));
    const SweepResult again = sweep_phi({0.0, 0.005, 0.01}, min_length(0), cfg, r);
    for (size_t i = 0; i < 3; ++i) {
      CHECK(first.points[i].value == again.points[i].value);
      CHECK(stroke_to_json(first.points[i].stroke) == stroke_to_json(again.points[i].stroke));
    }
    std::filesystem::remove_all(dir);
  }

  SUBCASE("psi and duality") {
    ProblemSpec b;
    b.kind = ProblemKind::MaxDistLength;
    const SweepResult psi = sweep_psi({0.0, 0.15, 0.23}, b, cfg, so);
    CHECK(psi.points[0].value == 0.0);
    CHECK(psi.points[1].value > 0.0);
    CHECK(psi.points[2].value >= psi.points[1].value - 1e-4);
    CHECK(psi.points[2].saturation_residual < 1e-4);
    CHECK(psi.points[2].value == doctest::Approx(0.0099898).epsilon(2e-3));

    const SolveResult back = solve(min_length(psi.points[2].value), cfg, quick(4));
    CHECK(back.value >= 0.999 * 0.23);
    CHECK(back.value <= 0.23 + 1e-4);

    ProblemSpec lam;
    lam.kind = ProblemKind::MaxDistAction;
    lam.T = 1.5;
    lam.budget = 0.23 * 0.23 / (2 * lam.T);
    CHECK(solve(lam, cfg, quick(4)).value == doctest::Approx(psi.points[2].value).epsilon(0.01));
  }
}

TEST_CASE("minimal time") {
  const SwimmerConfig cfg;
  const SolverOptions o = quick(4);
  const ProblemSpec base;
  const MinTimeResult t = min_time(0.01, base, cfg, o);
  CHECK(t.T == solve(min_length(0.01), cfg, o).value);
  const StrokeMetrics m = metrics(t.unit_speed, t.T);
  CHECK(m.max_speed == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(m.min_speed == doctest::Approx(1.0).epsilon(1e-8));
  CHECK(min_time(0.0, base, cfg, o).T == 0.0);
  CHECK(min_time(0.02, base, cfg, o).T > t.T);

  ProblemSpec direct = min_length(0.01);
  direct.kind = ProblemKind::MinTime;
  const SolveResult d = solve(direct, cfg, o);
  CHECK(d.value == doctest::Approx(t.T).epsilon(0.02));
  CHECK(d.value >= t.T * (1 - 1e-6));
}

TEST_CASE("forbidden region") {
  const SwimmerConfig cfg;
  ProblemSpec s = min_length(0.01);
  // A cap right next to the unconstrained optimum forces a detour.
  const SolveResult free_ = solve(s, cfg, quick(4));
  const ChartCoord mid = free_.stroke.coord_at(0.5);
  s.region = ForbiddenRegion{mid, 0.05, 1e4};
  const SolveResult r = solve(s, cfg, quick(4));
  CHECK(region_clear(r.stroke, *s.region));
  CHECK(!region_clear(free_.stroke, *s.region));
  CHECK(r.value >= free_.value - 1e-6);
}
