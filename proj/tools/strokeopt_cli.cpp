// strokeopt: command-line front end.
//
// Exit codes: 0 ok, 1 negative certificate, 2 configuration, 3 infeasible,
// 4 structural failure (level set, charts, simplicity).

#include <cmath>
#include <fstream>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "CLI11.hpp"
#include "json.hpp"
#include "strokeopt/errors.hpp"
#include "strokeopt/geometry.hpp"
#include "strokeopt/io.hpp"
#include "strokeopt/optimize.hpp"
#include "strokeopt/stroke.hpp"

namespace so = strokeopt;

namespace {

enum Exit { kOk = 0, kNegative = 1, kConfig = 2, kInfeasible = 3, kStructural = 4 };

std::vector<double> parse_list(const std::string& text) {
  std::vector<double> out;
  std::stringstream ss(text);
  std::string item;
  while (std::getline(ss, item, ',')) {
    try {
      size_t used = 0;
      out.push_back(std::stod(item, &used));
      if (used != item.size()) throw std::invalid_argument(item);
    } catch (const std::exception&) {
      throw so::ConfigError("bad number '" + item + "'");
    }
  }
  return out;
}

// "a:b:n" (n evenly spaced points) or a comma list.
std::vector<double> parse_grid(const std::string& text) {
  if (text.find(':') == std::string::npos) return parse_list(text);
  std::string t = text;
  for (char& c : t)
    if (c == ':') c = ',';
  const auto v = parse_list(t);
  if (v.size() != 3 || v[2] < 1 || v[2] != std::floor(v[2])) throw so::ConfigError("grid must be a:b:n");
  const int n = static_cast<int>(v[2]);
  std::vector<double> g(n);
  for (int i = 0; i < n; ++i) g[i] = n == 1 ? v[0] : v[0] + (v[1] - v[0]) * i / (n - 1);
  return g;
}

std::string fmt(double x) {
  std::ostringstream os;
  os.precision(17);
  os << x;
  return os.str();
}

// Shared run settings; a JSON config file provides defaults, flags override.
struct RunConfig {
  double mu = 0.3;
  std::uint64_t seed = 1;
  int starts = 16;
  int threads = 1;
  std::string grid;
  std::string out = "out";
  int depth = 2;
  std::string hole_center;  // "phi,theta" in PolarZ
  double hole_radius = 0.0;
  double hole_weight = 1e4;
  std::string basepoint;  // "s1,s2,s3"
  bool resume = false;
  bool backward = false;
};

void load_config(const std::string& path, RunConfig& rc) {
  if (path.empty()) return;
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(so::read_file(path));
    if (j.value("version", 1) != 1) throw so::ConfigError("unsupported config version");
    rc.mu = j.value("mu", rc.mu);
    rc.seed = j.value("seed", rc.seed);
    rc.starts = j.value("starts", rc.starts);
    rc.threads = j.value("threads", rc.threads);
    rc.grid = j.value("grid", rc.grid);
    rc.out = j.value("out", rc.out);
    rc.depth = j.value("depth", rc.depth);
    rc.hole_center = j.value("hole_center", rc.hole_center);
    rc.hole_radius = j.value("hole_radius", rc.hole_radius);
    rc.hole_weight = j.value("hole_weight", rc.hole_weight);
    rc.basepoint = j.value("basepoint", rc.basepoint);
    rc.resume = j.value("resume", rc.resume);
    rc.backward = j.value("backward", rc.backward);
  } catch (const nlohmann::json::exception& e) {
    throw so::ConfigError(std::string("config file: ") + e.what());
  }
}

so::SwimmerConfig swimmer(const RunConfig& rc) {
  so::SwimmerConfig cfg;
  cfg.mu = rc.mu;
  cfg.validate();
  return cfg;
}

so::ShapePoint basepoint(const RunConfig& rc) {
  if (rc.basepoint.empty()) return {rc.mu, 0.0, 0.0};
  const auto v = parse_list(rc.basepoint);
  if (v.size() != 3) throw so::ConfigError("basepoint needs s1,s2,s3");
  return so::ShapePoint(v[0], v[1], v[2]);
}

int cmd_check(const RunConfig& rc, const std::string& point) {
  const so::SwimmerConfig cfg = swimmer(rc);
  so::StatePoint xi{so::ShapePoint(cfg.mu, 0.0, 0.0), 0.0};
  if (!point.empty()) {
    const auto v = parse_list(point);
    if (v.size() != 3 && v.size() != 4) throw so::ConfigError("point needs s1,s2,s3[,r]");
    xi.shape = so::ShapePoint(v[0], v[1], v[2]);
    if (v.size() == 4) xi.r = v[3];
  }
  if (std::abs(so::manifold_residual(xi.shape, cfg.mu)) > 1e-8)
    throw so::ConfigError("point is not on the shape manifold");
  if (rc.depth < 1 || rc.depth > 4) throw so::ConfigError("depth must be in [1, 4]");
  const auto table = so::lie_rank_table(xi, rc.depth);
  std::cout << "depth,rank\n";
  for (size_t d = 0; d < table.size(); ++d) std::cout << d + 1 << ',' << table[d] << '\n';
  const bool full = table.back() == 3;
  std::cout << (full ? "controllable: rank 3" : "rank deficient") << " at depth " << rc.depth << '\n';
  return full ? kOk : kNegative;
}

void write_stroke_outputs(const std::string& dir, const so::SplineStroke& st, int n) {
  so::write_file_atomic(dir + "/stroke.json", so::stroke_to_json(st) + "\n");
  const so::Trajectory cs = so::reparameterize_constant_speed(st, n);
  std::ostringstream traj, gallery;
  so::write_trajectory_csv(traj, cs);
  so::write_shape_gallery_csv(gallery, cs);
  so::write_file_atomic(dir + "/trajectory.csv", traj.str());
  so::write_file_atomic(dir + "/shapes.csv", gallery.str());
}

int cmd_optimize(RunConfig rc, const std::string& spec_path, bool seed_set, bool starts_set,
                 bool threads_set) {
  so::ProblemFile pf = so::parse_problem(so::read_file(spec_path));
  if (seed_set) pf.solver.seed = rc.seed;
  if (starts_set) pf.solver.starts = rc.starts;
  if (threads_set) pf.solver.threads = rc.threads;
  pf.cfg.validate();
  pf.spec.validate(pf.cfg.mu);
  const so::SolveResult r = so::solve(pf.spec, pf.cfg, pf.solver);
  write_stroke_outputs(rc.out, r.stroke, pf.solver.report_n);
  const std::string m = so::metrics_csv(r.metrics, r.value);
  so::write_file_atomic(rc.out + "/metrics.csv", m);
  std::cout << "problem " << so::problem_name(pf.spec.kind) << "\n" << m;
  return kOk;
}

int cmd_sweep(const RunConfig& rc, const std::string& kind) {
  const so::SwimmerConfig cfg = swimmer(rc);
  if (rc.grid.empty()) throw so::ConfigError("--grid is required");
  const auto grid = parse_grid(rc.grid);
  so::ProblemSpec base;
  base.basepoint = basepoint(rc);
  so::SweepOptions opts;
  opts.solver.seed = rc.seed;
  opts.solver.starts = rc.starts;
  opts.solver.threads = rc.threads;
  opts.backward_pass = rc.backward;
  if (rc.resume) opts.resume_dir = rc.out + "/points";
  if (!rc.hole_center.empty()) {
    const auto c = parse_list(rc.hole_center);
    if (c.size() != 2) throw so::ConfigError("hole center needs phi,theta");
    so::ForbiddenRegion reg;
    reg.center = {so::ChartId::PolarZ, c[0], c[1]};
    reg.radius = rc.hole_radius;
    reg.penalty_weight = rc.hole_weight;
    base.region = reg;
  }
  base.validate(cfg.mu);
  so::SweepResult res;
  if (kind == "phi") {
    res = so::sweep_phi(grid, base, cfg, opts);
  } else if (kind == "psi") {
    res = so::sweep_psi(grid, base, cfg, opts);
  } else if (kind == "hole") {
    if (!base.region) throw so::ConfigError("hole sweep needs --hole-center and --hole-radius");
    res = so::sweep_with_hole(grid, base, cfg, opts);
  } else {
    throw so::ConfigError("sweep kind must be phi, psi or hole");
  }
  std::ostringstream csv;
  so::write_sweep_csv(csv, res);
  so::write_file_atomic(rc.out + "/sweep.csv", csv.str());
  if (!rc.resume) {
    for (size_t i = 0; i < res.points.size(); ++i) {
      std::ostringstream name;
      name << rc.out << "/points/stroke_" << i << ".json";
      so::write_file_atomic(name.str(), so::stroke_to_json(res.points[i].stroke) + "\n");
    }
  }
  std::cout << csv.str();
  for (const auto& p : res.points)
    if (p.infeasible) return kInfeasible;
  return kOk;
}

int cmd_levelset(const RunConfig& rc, int grid_n, const std::string& synthetic) {
  const so::SwimmerConfig cfg = swimmer(rc);
  so::DensityFn density = so::dL_density;
  if (synthetic == "s3") {
    density = [](const so::ShapePoint& s) { return s.s3(); };
  } else if (synthetic == "const") {
    density = [](const so::ShapePoint&) { return 1.0; };
  } else if (!synthetic.empty()) {
    throw so::ConfigError("unknown synthetic density '" + synthetic + "'");
  }
  const so::LevelSetResult ls = so::level_set_stroke(cfg, grid_n, 10, density);
  std::ostringstream dens;
  so::write_density_csv(dens, cfg.mu, so::ChartId::PolarZ, grid_n, 2 * grid_n, density);
  so::write_file_atomic(rc.out + "/density.csv", dens.str());
  write_stroke_outputs(rc.out, ls.stroke, 800);
  const so::StrokeMetrics m = so::metrics(so::evaluate(ls.stroke, 800));
  std::cout << "components " << ls.components << (ls.disconnected ? " (disconnected)" : "") << "\n"
            << "fit_error " << fmt(ls.fit_error) << "\n"
            << "displacement " << fmt(m.displacement) << "\n"
            << "length " << fmt(m.length) << "\n";
  return kOk;
}

int cmd_export(const RunConfig& rc, const std::string& stroke_path) {
  const so::SplineStroke st = so::stroke_from_json(so::read_file(stroke_path));
  write_stroke_outputs(rc.out, st, 800);
  std::ostringstream dens;
  so::write_density_csv(dens, st.mu, st.chart.axis, 90, 180);
  so::write_file_atomic(rc.out + "/density.csv", dens.str());
  const so::StrokeMetrics m = so::metrics(so::evaluate(st, 800));
  std::cout << so::metrics_csv(m, m.displacement);
  return kOk;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Stroke optimization for the potential-flow swimmer"};
  app.require_subcommand(1);
  RunConfig rc;
  std::string config_path;

  auto add_common = [&](CLI::App* sub) {
    sub->add_option("--config", config_path, "JSON run configuration");
    sub->add_option("--mu", rc.mu, "ellipsoid radius");
    sub->add_option("--out", rc.out, "output directory");
  };

  std::string point;
  auto* check = app.add_subcommand("check-controllability", "Lie-rank table at a state");
  add_common(check);
  check->add_option("--point", point, "s1,s2,s3[,r] (default: (mu,0,0,0))");
  check->add_option("--depth", rc.depth, "bracket depth (1-4)");

  std::string spec_path;
  auto* opt = app.add_subcommand("optimize", "solve one problem file");
  add_common(opt);
  opt->add_option("spec", spec_path, "problem JSON")->required();
  auto* seed_opt = opt->add_option("--seed", rc.seed, "RNG seed");
  auto* starts_opt = opt->add_option("--starts", rc.starts, "random starts");
  auto* threads_opt = opt->add_option("--threads", rc.threads, "worker threads");

  std::string sweep_kind;
  auto* sweep = app.add_subcommand("sweep", "value-function sweep");
  add_common(sweep);
  sweep->add_option("kind", sweep_kind, "phi | psi | hole")->required();
  sweep->add_option("--grid", rc.grid, "a:b:n or comma list");
  sweep->add_option("--seed", rc.seed, "RNG seed");
  sweep->add_option("--starts", rc.starts, "random starts per point");
  sweep->add_option("--threads", rc.threads, "worker threads");
  sweep->add_option("--hole-center", rc.hole_center, "phi,theta (PolarZ)");
  sweep->add_option("--hole-radius", rc.hole_radius, "cap radius (rad)");
  sweep->add_option("--basepoint", rc.basepoint, "s1,s2,s3");
  sweep->add_flag("--resume", rc.resume, "reuse per-point results in OUT/points");
  sweep->add_flag("--backward", rc.backward, "second pass warm-started from the right");

  int grid_n = 64;
  std::string synthetic;
  auto* level = app.add_subcommand("levelset", "zero level set of the dL density");
  add_common(level);
  level->add_option("--grid", grid_n, "grid rows in phi");
  level->add_option("--synthetic", synthetic, "test density: s3 | const");

  std::string stroke_path;
  auto* exp = app.add_subcommand("export", "trajectory, shape gallery and density for a stroke");
  add_common(exp);
  exp->add_option("stroke", stroke_path, "stroke JSON")->required();

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kOk : kConfig;
  }

  try {
    if (!config_path.empty()) {
      // Flags given on the command line win over the file.
      RunConfig from_file = rc;
      load_config(config_path, from_file);
      RunConfig defaults;
      auto pick = [](auto& dst, const auto& file, const auto& flag, const auto& def) {
        dst = (flag != def) ? flag : file;
      };
      pick(rc.mu, from_file.mu, rc.mu, defaults.mu);
      pick(rc.seed, from_file.seed, rc.seed, defaults.seed);
      pick(rc.starts, from_file.starts, rc.starts, defaults.starts);
      pick(rc.threads, from_file.threads, rc.threads, defaults.threads);
      pick(rc.grid, from_file.grid, rc.grid, defaults.grid);
      pick(rc.out, from_file.out, rc.out, defaults.out);
      pick(rc.depth, from_file.depth, rc.depth, defaults.depth);
      pick(rc.hole_center, from_file.hole_center, rc.hole_center, defaults.hole_center);
      pick(rc.hole_radius, from_file.hole_radius, rc.hole_radius, defaults.hole_radius);
      pick(rc.hole_weight, from_file.hole_weight, rc.hole_weight, defaults.hole_weight);
      pick(rc.basepoint, from_file.basepoint, rc.basepoint, defaults.basepoint);
      rc.resume = rc.resume || from_file.resume;
      rc.backward = rc.backward || from_file.backward;
    }
    if (*check) return cmd_check(rc, point);
    if (*opt) return cmd_optimize(rc, spec_path, seed_opt->count() > 0, starts_opt->count() > 0,
                                  threads_opt->count() > 0);
    if (*sweep) return cmd_sweep(rc, sweep_kind);
    if (*level) return cmd_levelset(rc, grid_n, synthetic);
    if (*exp) return cmd_export(rc, stroke_path);
  } catch (const so::ConfigError& e) {
    std::cerr << "config error: " << e.what() << '\n';
    return kConfig;
  } catch (const so::Infeasible& e) {
    std::cerr << "infeasible: " << e.what() << '\n';
    return kInfeasible;
  } catch (const so::Error& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStructural;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << '\n';
    return kStructural;
  }
  return kOk;
}
