// Command-line interface: subcommand outputs, exit codes, file handling,
// and the integrator config file hook.
#include "doctest.h"

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>
#include <vector>

#include "json.hpp"
#include "projatlas/cli.hpp"

namespace {

struct CliResult {
  int code = -1;
  std::string out, err;
};

CliResult run(std::vector<const char*> args) {
  args.insert(args.begin(), "projatlas");
  std::ostringstream out, err;
  const int code = projatlas::run_cli(static_cast<int>(args.size()),
                                      args.data(), out, err);
  return {code, out.str(), err.str()};
}

const char* kCubic = "x' = -y + x^3; y' = x + x^2*y";
const char* kContactQuadratic = "x' = 1 - x^2 - y^2; y' = x*y - 1";
const char* kCircleCycle =
    "x' = -y - x*(x^2 + y^2 - 1); y' = x - y*(x^2 + y^2 - 1)";

std::filesystem::path tmp_dir() {
  const auto dir = std::filesystem::path("cli_test_tmp");
  std::filesystem::create_directories(dir);
  return dir;
}

std::string slurp(const std::filesystem::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("classify prints the projective type and W_n") {
  const auto r = run({"classify", "-s", kCubic});
  CHECK(r.code == 0);
  CHECK(r.out == "P-singular; W_3 = 0\n");
  const auto r2 = run({"classify", "-s", kContactQuadratic});
  CHECK(r2.code == 0);
  CHECK(r2.out == "P-nonsingular; W_2 = 2*x^2*y + y^3\n");
}

TEST_CASE("reduce prints both reduced systems in the input grammar") {
  const auto r1 = run({"reduce", "--chart", "1", "-s", kCubic});
  CHECK(r1.code == 0);
  CHECK(r1.out ==
        "xi' = theta + xi^2*theta; theta' = -1 + xi*theta^2; m = 1\n");
  const auto r2 = run({"reduce", "--chart", "2", "-s", kCubic});
  CHECK(r2.code == 0);
  CHECK(r2.out ==
        "eta' = -zeta^2 - eta^2*zeta; zeta' = -eta - eta*zeta^2; m = 1\n");
  // Reduced systems are accepted back as first-class input.
  const auto r3 = run({"reduce", "--chart", "1", "-s",
                       "xi' = theta + xi^2*theta; theta' = -1 + xi*theta^2"});
  CHECK(r3.code == 0);
  CHECK(r3.out.rfind("eta' = ", 0) == 0);
}

TEST_CASE("input errors exit with code 1 and a message") {
  const auto zero = run({"classify", "-s", "x' = 0; y' = 0"});
  CHECK(zero.code == 1);
  CHECK(zero.err.find("|X_n| + |Y_n|") != std::string::npos);

  const auto missing = run({"classify"});
  CHECK(missing.code == 1);

  const auto unknown = run({"classify", "--bogus", "-s", kCubic});
  CHECK(unknown.code == 1);

  const auto syntax = run({"classify", "-s", "x' = $; y' = x"});
  CHECK(syntax.code == 1);
  CHECK(syntax.err.find("error:") != std::string::npos);

  const auto no_chart = run({"reduce", "-s", kCubic});
  CHECK(no_chart.code == 1);

  const auto bad_chart = run({"reduce", "--chart", "3", "-s", kCubic});
  CHECK(bad_chart.code == 1);
}

TEST_CASE("help exits zero and documents subcommands and flags") {
  const auto top = run({"--help"});
  CHECK(top.code == 0);
  for (const char* sub : {"classify", "reduce", "equilibria", "contacts",
                          "symmetry", "lines", "verify-curve", "atlas",
                          "report"})
    CHECK(top.out.find(sub) != std::string::npos);
  const auto sub = run({"reduce", "--help"});
  CHECK(sub.code == 0);
  CHECK(sub.out.find("--chart") != std::string::npos);
  const auto atlas_help = run({"atlas", "--help"});
  CHECK(atlas_help.code == 0);
  CHECK(atlas_help.out.find("--density") != std::string::npos);
  CHECK(atlas_help.out.find("--tol") != std::string::npos);
}

TEST_CASE("equilibria subcommand prints exact character data") {
  const auto r = run({"equilibria", "-s",
                      "x' = x*(x^2 + y^2 - 1)*(x^2 + y^2 - 9) - y*(x^2 + y^2 - 2*x - 8); "
                      "y' = y*(x^2 + y^2 - 1)*(x^2 + y^2 - 9) + x*(x^2 + y^2 - 2*x - 8)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("finite equilibria (3):") != std::string::npos);
  CHECK(r.out.find("trace = 18") != std::string::npos);
  CHECK(r.out.find("det = 145") != std::string::npos);
  CHECK(r.out.find("unstable focus") != std::string::npos);
  CHECK(r.out.find("saddle point") != std::string::npos);
  CHECK(r.out.find("unstable node") != std::string::npos);
  CHECK(r.out.find("infinite equilibria") != std::string::npos);
}

TEST_CASE("contacts subcommand reports sides") {
  const auto r = run({"contacts", "-s", kContactQuadratic});
  CHECK(r.code == 0);
  CHECK(r.out.find("contacts with x = 0 (2):") != std::string::npos);
  CHECK(r.out.find("x <= 0") != std::string::npos);
  CHECK(r.out.find("x >= 0") != std::string::npos);
  CHECK(r.out.find("order = 1") != std::string::npos);
  CHECK(r.out.find("equatorial contacts: none possible") != std::string::npos);
}

TEST_CASE("symmetry subcommand lists the five mirrors") {
  const auto r = run({"symmetry", "-s", "x' = y; y' = -x"});
  CHECK(r.code == 0);
  CHECK(r.out.find("origin (central): yes") != std::string::npos);
  CHECK(r.out.find("axis y = 0: yes") != std::string::npos);
  CHECK(r.out.find("axis x = 0: yes") != std::string::npos);
  CHECK(r.out.find("diagonal y = x: yes") != std::string::npos);
  CHECK(r.out.find("antidiagonal y = -x: yes") != std::string::npos);
}

TEST_CASE("lines subcommand prints invariant lines with cofactors") {
  const auto r = run({"lines", "-s",
                      "x' = x - y + x*(x + y); y' = (y + 1)*(x + y)"});
  CHECK(r.code == 0);
  CHECK(r.out.find("invariant lines (1):") != std::string::npos);
  CHECK(r.out.find("1 + y = 0") != std::string::npos);
  CHECK(r.out.find("cofactor = x + y") != std::string::npos);
}

TEST_CASE("verify-curve certifies invariance and classifies the cycle") {
  const auto r = run({"verify-curve", "--curve", "x^2 + y^2 - 1", "-s",
                      kCircleCycle});
  CHECK(r.code == 0);
  CHECK(r.out ==
        "invariant: yes; cofactor = -2*x^2 - 2*y^2\n"
        "class: plane cycle; bounded invariant curve in the finite plane\n");
  const auto no = run({"verify-curve", "--curve", "x^2 + y^2 - 4", "-s",
                       kCircleCycle});
  CHECK(no.code == 0);
  CHECK(no.out == "invariant: no\n");
  const auto constant = run({"verify-curve", "--curve", "5", "-s", kCircleCycle});
  CHECK(constant.code == 1);
}

TEST_CASE("report prints or writes the JSON document") {
  const auto r = run({"report", "-s", kCubic});
  CHECK(r.code == 0);
  const auto j = nlohmann::ordered_json::parse(r.out);
  CHECK(j["projective_type"] == "P-singular");
  CHECK(j["system"]["degree"] == 3);

  const auto path = tmp_dir() / "report_out.json";
  std::filesystem::remove(path);
  const auto r2 = run({"report", "-s", kCubic, "-o", path.string().c_str()});
  CHECK(r2.code == 0);
  REQUIRE(std::filesystem::exists(path));
  CHECK(nlohmann::ordered_json::parse(slurp(path)) == j);
}

TEST_CASE("file input matches inline input") {
  const auto path = tmp_dir() / "system.txt";
  std::ofstream(path) << kCubic << "\n";
  const auto from_file = run({"classify", "-f", path.string().c_str()});
  const auto inline_src = run({"classify", "-s", kCubic});
  CHECK(from_file.code == 0);
  CHECK(from_file.out == inline_src.out);

  const auto both = run({"classify", "-s", kCubic, "-f", path.string().c_str()});
  CHECK(both.code == 1);
  const auto nofile = run({"classify", "-f", "no_such_file_here.txt"});
  CHECK(nofile.code == 1);
}

TEST_CASE("atlas writes the svg and a sibling json report") {
  const auto svg_path = tmp_dir() / "portrait.svg";
  const auto json_path = tmp_dir() / "portrait.json";
  std::filesystem::remove(svg_path);
  std::filesystem::remove(json_path);
  const auto r = run({"atlas", "-s", "x' = y; y' = -x", "--density", "1",
                      "-o", svg_path.string().c_str()});
  CHECK(r.code == 0);
  CHECK(r.out.find("wrote") != std::string::npos);
  REQUIRE(std::filesystem::exists(svg_path));
  REQUIRE(std::filesystem::exists(json_path));
  const std::string svg = slurp(svg_path);
  CHECK(svg.rfind("<?xml", 0) == 0);
  CHECK(nlohmann::ordered_json::parse(slurp(json_path))["projective_type"] ==
        "P-nonsingular");

  const auto bad_density = run({"atlas", "-s", "x' = y; y' = -x", "--density",
                                "0", "-o", svg_path.string().c_str()});
  CHECK(bad_density.code == 1);
  const auto no_out = run({"atlas", "-s", "x' = y; y' = -x"});
  CHECK(no_out.code == 1);
}

TEST_CASE("integrator config file is honored and validated") {
  const auto cfg_path = tmp_dir() / "integrator.cfg";
  const auto svg_path = tmp_dir() / "cfg_portrait.svg";

  std::ofstream(cfg_path) << "# comment line\nmax_arc_length = 2.0\n"
                          << "max_steps = 2000\n";
  setenv("PROJATLAS_CONFIG", cfg_path.string().c_str(), 1);
  const auto ok = run({"atlas", "-s", "x' = y; y' = -x", "--density", "1",
                       "-o", svg_path.string().c_str()});
  CHECK(ok.code == 0);

  std::ofstream(cfg_path) << "zzz = 1\n";
  const auto bad = run({"atlas", "-s", "x' = y; y' = -x", "--density", "1",
                        "-o", svg_path.string().c_str()});
  CHECK(bad.code == 1);
  CHECK(bad.err.find("unknown key") != std::string::npos);
  unsetenv("PROJATLAS_CONFIG");
}

TEST_CASE("deterministic output: identical invocations, identical bytes") {
  const auto a = run({"report", "-s", kContactQuadratic});
  const auto b = run({"report", "-s", kContactQuadratic});
  CHECK(a.code == 0);
  CHECK(a.out == b.out);
  const auto svg_a = tmp_dir() / "det_a.svg";
  const auto svg_b = tmp_dir() / "det_b.svg";
  const auto ra = run({"atlas", "-s", "x' = y; y' = -x", "--density", "1",
                       "-o", svg_a.string().c_str()});
  const auto rb = run({"atlas", "-s", "x' = y; y' = -x", "--density", "1",
                       "-o", svg_b.string().c_str()});
  CHECK(ra.code == 0);
  CHECK(rb.code == 0);
  CHECK(slurp(svg_a) == slurp(svg_b));
}
