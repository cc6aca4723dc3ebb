#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include <sys/wait.h>

#include "doctest.h"
#include "graded/suite.hpp"

using namespace graded;
namespace fs = std::filesystem;

namespace {

int run(const std::string& args) {
  const std::string cmd = std::string(GRADED_CLI_PATH) + " " + args + " > /dev/null 2>&1";
  const int st = std::system(cmd.c_str());
  return WIFEXITED(st) ? WEXITSTATUS(st) : -1;
}

fs::path scratch(const std::string& name) {
  const fs::path p = fs::temp_directory_path() / ("graded_test_" + name);
  fs::remove_all(p);
  fs::create_directories(p);
  return p;
}

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

}  // namespace

TEST_CASE("config round-trips through JSON") {
  ExperimentConfig c;
  c.group = "H1";
  c.grid_lo = {-4, -4, -8};
  c.grid_hi = {4, 4, 8};
  c.grid_count = {17, 17, 33};
  c.heat = "h1_pde";
  c.quad.rel_tol = 1e-7;
  c.params = {{"shifts", 5}};
  c.seed = 99;
  const ExperimentConfig back = ExperimentConfig::parse(c.emit());
  CHECK(back == c);
  CHECK(back.emit() == c.emit());
  CHECK(SuiteSettings::from_config(back).shifts == 5);
}

TEST_CASE("malformed configs name the offending key") {
  auto message = [](const std::string& text) {
    try {
      ExperimentConfig::parse(text);
    } catch (const ParseError& e) {
      return std::string(e.what());
    }
    return std::string();
  };
  CHECK(message(R"({"grup": "R1"})").find("grup") != std::string::npos);
  CHECK(message(R"({"quadrature": {"rel_tol": "x"}})").find("quadrature.rel_tol") != std::string::npos);
  CHECK(message(R"({"quadrature": {"rel_tol": -1}})").find("quadrature") != std::string::npos);
  CHECK(message(R"({"group": "H9"})").find("group") != std::string::npos);
  CHECK(message(R"({"grid": {"lo": [0], "hi": [1, 2], "count": [3]}})").find("grid") != std::string::npos);
  CHECK(message("{not json").find("JSON") != std::string::npos);
  ExperimentConfig c;
  c.params = {{"shiftz", 3}};
  CHECK_THROWS_AS(SuiteSettings::from_config(c), ParseError);
}

TEST_CASE("csv escaping") {
  CHECK(csv_escape("plain") == "plain");
  CHECK(csv_escape("a,b") == "\"a,b\"");
  CHECK(csv_escape("say \"x\"") == "\"say \"\"x\"\"\"");
}

TEST_CASE("suite registry covers every criterion") {
  for (int c = 1; c <= 10; ++c) CHECK(check_for_criterion(c).criterion == c);
  CHECK_THROWS(find_check("no_such_check"));
}

TEST_CASE("suite output is deterministic") {
  SuiteSettings s;
  auto csv = [&] {
    std::ostringstream rows, summary;
    const auto res = run_checks({"strichartz_counterexamples"}, s);
    write_rows_csv(rows, res);
    write_summary_csv(summary, res);
    return rows.str() + summary.str();
  };
  const std::string a = csv();
  CHECK(a == csv());
  CHECK(a.rfind("check,criterion,report,sample,ratio\n", 0) == 0);
}

TEST_CASE("cli exit codes and outputs") {
  const fs::path dir = scratch("cli");
  CHECK(run("--help") == 0);
  CHECK(run("") == 1);
  CHECK(run("no_such_command") == 1);
  CHECK(run("verify --list") == 0);
  CHECK(run("--out-dir " + dir.string() + " verify no_such_check") == 1);
  {
    std::ofstream(dir / "bad.json") << R"({"grup": "R1"})";
  }
  CHECK(run("--config " + (dir / "bad.json").string() + " kernel") == 1);
  CHECK(run("--out-dir " + dir.string() + " kernel --t 0.5") == 0);
  const std::string kernel = slurp(dir / "kernel.csv");
  CHECK(kernel.rfind("# field", 0) == 0);
  CHECK(run("--out-dir " + dir.string() + " figure --alpha 0.5 --rmax 4 --points 9") == 0);
  CHECK(run("--out-dir " + dir.string() + " figure --alpha 1.5") == 1);
  CHECK(run("--out-dir " + dir.string() + " verify strichartz_counterexamples") == 0);
  CHECK(slurp(dir / "verify_summary.csv").find("counterexample_first_s1.5,PASS") != std::string::npos);
  {
    std::ofstream(dir / "seed.json") << R"({"seed": 5, "outputs": {"out_dir": ")" + (dir / "from_config").string() + R"("}})";
  }
  CHECK(run("--config " + (dir / "seed.json").string() + " figure --points 3") == 0);
  CHECK(fs::exists(dir / "from_config" / "figure_phi_alpha.csv"));
  fs::remove_all(dir);
}
