#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>

#include "doctest.h"
#include "strokeopt/io.hpp"

namespace fs = std::filesystem;

namespace {

const std::string kCli = STROKEOPT_CLI;
const std::string kGolden = STROKEOPT_GOLDEN_DIR;

int run(const std::string& args) {
  const int st = std::system((kCli + " " + args + " >/dev/null 2>&1").c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("strokeopt_cli_" + name);
  fs::remove_all(p);
  return p;
}

std::vector<double> csv_row(const std::string& text) {
  std::istringstream is(text);
  std::string line;
  std::getline(is, line);  // header
  std::getline(is, line);
  std::vector<double> v;
  std::stringstream ss(line);
  std::string cell;
  while (std::getline(ss, cell, ',')) v.push_back(std::stod(cell));
  return v;
}

}  // namespace

TEST_CASE("cli exit codes") {
  CHECK(run("check-controllability") == 0);
  CHECK(run("check-controllability --depth 1") == 1);
  CHECK(run("check-controllability --mu 0") == 2);
  CHECK(run("check-controllability --point 1,1,1") == 2);
  CHECK(run("no-such-command") == 2);
  CHECK(run("optimize /nonexistent.json") == 2);

  const fs::path d = scratch("codes");
  fs::create_directories(d);
  strokeopt::write_file_atomic((d / "far.json").string(),
                               R"({"version": 1, "kind": "MinLength", "delta": 5.0, "solver": {"starts": 1}})");
  CHECK(run("optimize " + (d / "far.json").string() + " --out " + (d / "far").string()) == 3);
  strokeopt::write_file_atomic((d / "bad.json").string(), R"({"version": 2})");
  CHECK(run("optimize " + (d / "bad.json").string()) == 2);

  CHECK(run("levelset --grid 32 --synthetic const --out " + (d / "flat").string()) == 4);
  CHECK(run("levelset --grid 32 --synthetic s3 --out " + (d / "s3").string()) == 0);
  CHECK(fs::exists(d / "s3" / "density.csv"));
  fs::remove_all(d);
}

TEST_CASE("golden optimize run") {
  const fs::path a = scratch("golden_a"), b = scratch("golden_b"), c = scratch("golden_c");
  const std::string spec = kGolden + "/min_length.json";
  REQUIRE(run("optimize " + spec + " --out " + a.string()) == 0);
  REQUIRE(run("optimize " + spec + " --out " + b.string()) == 0);
  REQUIRE(run("optimize " + spec + " --threads 3 --out " + c.string()) == 0);

  const auto got = csv_row(strokeopt::read_file((a / "metrics.csv").string()));
  const auto want = csv_row(strokeopt::read_file(kGolden + "/min_length.metrics.csv"));
  REQUIRE(got.size() == want.size());
  for (size_t i = 0; i < got.size(); ++i) CHECK(got[i] == doctest::Approx(want[i]).epsilon(1e-6));

  for (const char* f : {"stroke.json", "trajectory.csv", "shapes.csv", "metrics.csv"}) {
    const std::string ref = strokeopt::read_file((a / f).string());
    CHECK(strokeopt::read_file((b / f).string()) == ref);
    CHECK(strokeopt::read_file((c / f).string()) == ref);
  }

  // export of the produced stroke reproduces the trajectory file
  const fs::path e = scratch("golden_e");
  REQUIRE(run("export " + (a / "stroke.json").string() + " --out " + e.string()) == 0);
  CHECK(strokeopt::read_file((e / "trajectory.csv").string()) == strokeopt::read_file((a / "trajectory.csv").string()));
  CHECK(fs::exists(e / "density.csv"));
  for (const auto& p : {a, b, c, e}) fs::remove_all(p);
}

TEST_CASE("cli sweep") {
  const fs::path d = scratch("sweep");
  REQUIRE(run("sweep phi --grid 0:0.01:3 --starts 2 --out " + d.string()) == 0);
  const std::string csv = strokeopt::read_file((d / "sweep.csv").string());
  CHECK(csv.rfind("grid,value,converged,saturation_residual\n", 0) == 0);
  CHECK(fs::exists(d / "points" / "stroke_2.json"));
  CHECK(run("sweep phi --grid 0.01,0.0 --out " + d.string()) == 2);
  CHECK(run("sweep hole --grid 0:0.01:2 --out " + d.string()) == 2);
  CHECK(run("sweep phi --out " + d.string()) == 2);

  // resume reuses the stored points and gives the same table
  const fs::path r = scratch("sweep_resume");
  REQUIRE(run("sweep phi --grid 0:0.01:3 --starts 2 --resume --out " + r.string()) == 0);
  REQUIRE(run("sweep phi --grid 0:0.01:3 --starts 2 --resume --out " + r.string()) == 0);
  CHECK(strokeopt::read_file((r / "sweep.csv").string()) == csv);
  fs::remove_all(d);
  fs::remove_all(r);
}
