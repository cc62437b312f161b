#include "strokeopt/io.hpp"

#include <cstdio>
#include <filesystem>
#include <fstream>
#include <ostream>
#include <sstream>

#include "json.hpp"
#include "strokeopt/errors.hpp"

namespace strokeopt {

void write_file_atomic(const std::string& path, const std::string& content) {
  const std::filesystem::path target(path);
  if (target.has_parent_path()) std::filesystem::create_directories(target.parent_path());
  const std::string tmp = path + ".tmp";
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) throw Error("cannot write " + tmp);
    out << content;
    out.flush();
    if (!out) throw Error("write failed for " + tmp);
  }
  std::filesystem::rename(tmp, target);
}

std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw ConfigError("cannot read " + path);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

ProblemFile parse_problem(const std::string& text) {
  nlohmann::json j;
  try {
    j = nlohmann::json::parse(text);
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("problem file: ") + e.what());
  }
  ProblemFile pf;
  try {
    if (j.value("version", 1) != 1) throw ConfigError("unsupported problem file version");
    pf.cfg.mu = j.value("mu", pf.cfg.mu);
    pf.spec.kind = problem_from_name(j.value("kind", std::string("MinLength")));
    pf.spec.delta = j.value("delta", 0.0);
    pf.spec.budget = j.value("budget", 0.0);
    pf.spec.T = j.value("T", 1.0);
    if (j.contains("basepoint")) {
      const auto b = j["basepoint"].get<std::vector<double>>();
      if (b.size() != 3) throw ConfigError("basepoint needs three components");
      pf.spec.basepoint = ShapePoint(b[0], b[1], b[2]);
    } else {
      pf.spec.basepoint = ShapePoint(pf.cfg.mu, 0.0, 0.0);
    }
    if (j.contains("region") && !j["region"].is_null()) {
      const auto& r = j["region"];
      ForbiddenRegion reg;
      reg.center.chart = chart_from_name(r.value("chart", std::string("PolarZ")));
      reg.center.phi = r.at("phi").get<double>();
      reg.center.theta = r.at("theta").get<double>();
      reg.radius = r.at("radius").get<double>();
      reg.penalty_weight = r.value("weight", reg.penalty_weight);
      pf.spec.region = reg;
    }
    if (j.contains("solver")) {
      const auto& s = j["solver"];
      pf.solver.starts = s.value("starts", pf.solver.starts);
      pf.solver.seed = s.value("seed", pf.solver.seed);
      pf.solver.p = s.value("p", pf.solver.p);
      pf.solver.threads = s.value("threads", pf.solver.threads);
      pf.solver.chart.theta_origin = s.value("theta_origin", 0.0);
      pf.solver.quadrature_n = s.value("quadrature_n", pf.solver.quadrature_n);
    }
  } catch (const nlohmann::json::exception& e) {
    throw ConfigError(std::string("problem file: ") + e.what());
  }
  if (pf.solver.starts < 0 || pf.solver.p < 4) throw ConfigError("invalid solver settings");
  return pf;
}

std::string metrics_csv(const StrokeMetrics& m, double value) {
  std::ostringstream os;
  os.precision(17);
  os << "value,displacement,length,action,max_speed,min_speed\n"
     << value << ',' << m.displacement << ',' << m.length << ',' << m.action << ',' << m.max_speed
     << ',' << m.min_speed << '\n';
  return os.str();
}

void write_sweep_csv(std::ostream& os, const SweepResult& r) {
  os << "grid,value,converged,saturation_residual\n";
  os.precision(17);
  for (const auto& p : r.points) {
    os << p.grid << ',' << p.value << ',' << (p.converged ? 1 : 0) << ',' << p.saturation_residual << '\n';
  }
}

}  // namespace strokeopt
