#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include "doctest.h"

#include <sys/wait.h>

#include <algorithm>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <sstream>
#include <string>

#include "json.hpp"

// PROXFLOW_CLI_PATH is injected by the build as the full path to the binary.

namespace {

namespace fs = std::filesystem;

struct RunResult {
  int rc = -1;
  std::string out;
  std::string err;
};

std::string slurp(const fs::path& p) {
  std::ifstream in(p, std::ios::binary);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

void spit(const fs::path& p, const std::string& text) {
  std::ofstream out(p, std::ios::binary);
  out << text;
}

fs::path scratch_root() {
  static fs::path root = [] {
    fs::path r = fs::temp_directory_path() / "proxflow-cli-tests";
    fs::remove_all(r);
    fs::create_directories(r);
    return r;
  }();
  return root;
}

RunResult run_cli(const std::string& args) {
  static int counter = 0;
  fs::path out_file = scratch_root() / ("stdout." + std::to_string(counter));
  fs::path err_file = scratch_root() / ("stderr." + std::to_string(counter));
  ++counter;
  std::string cmd = std::string("\"") + PROXFLOW_CLI_PATH + "\" " + args + " > \"" +
                    out_file.string() + "\" 2> \"" + err_file.string() + "\"";
  int status = std::system(cmd.c_str());
  RunResult r;
  r.rc = WIFEXITED(status) ? WEXITSTATUS(status) : -1;
  r.out = slurp(out_file);
  r.err = slurp(err_file);
  return r;
}

}  // namespace

TEST_CASE("help and version exit cleanly") {
  RunResult help = run_cli("--help");
  CHECK(help.rc == 0);
  CHECK(help.out.find("sliding") != std::string::npos);
  CHECK(help.out.find("verify") != std::string::npos);
  CHECK(run_cli("--version").rc == 0);
}

TEST_CASE("usage errors exit with code 2") {
  CHECK(run_cli("frobnicate").rc == 2);
  RunResult r = run_cli("sliding --n 0 --out " + (scratch_root() / "n0").string());
  CHECK(r.rc == 2);
  CHECK(r.err.find("error") != std::string::npos);
  CHECK(run_cli("sliding --alpha 3.141592653589793 --out " +
                (scratch_root() / "pi").string())
            .rc == 2);
  CHECK(run_cli("verify --suite spelling --out " + (scratch_root() / "vs").string()).rc == 2);
  CHECK(run_cli("study " + (scratch_root() / "missing.json").string() + " --out " +
                (scratch_root() / "ms").string())
            .rc == 2);
}

TEST_CASE("sliding experiment writes a reproducible bundle") {
  fs::path out1 = scratch_root() / "slide1";
  fs::path out2 = scratch_root() / "slide2";
  std::string args = "sliding --n 256 --T 4";
  CHECK(run_cli(args + " --out " + out1.string()).rc == 0);
  CHECK(run_cli(args + " --out " + out2.string()).rc == 0);

  for (const char* name : {"problem.json", "trajectory.csv", "summary.json"}) {
    CAPTURE(name);
    REQUIRE(fs::exists(out1 / name));
    CHECK(slurp(out1 / name) == slurp(out2 / name));  // byte-identical reruns
  }

  auto summary = nlohmann::json::parse(slurp(out1 / "summary.json"));
  CHECK(summary.at("problem") == "sliding");
  CHECK(summary.at("scheme") == "pbd");
  CHECK(summary.at("n") == 256);
  CHECK(summary.at("sup_error_vs_exact").get<double>() > 0.0);
  CHECK(summary.at("final_max_violation").get<double>() >= 0.0);
  CHECK(summary.contains("t_exit"));

  std::string traj = slurp(out1 / "trajectory.csv");
  CHECK(traj.rfind("t,x1,x2,x3", 0) == 0);
  CHECK(std::count(traj.begin(), traj.end(), '\n') == 258);  // header + 257 states
}

TEST_CASE("disks experiment summarizes separations") {
  fs::path out = scratch_root() / "disks";
  RunResult r = run_cli("disks --N 5 --n 64 --T 0.5 --seed 3 --out " + out.string());
  CHECK(r.rc == 0);
  auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(summary.at("problem") == "disks");
  CHECK(summary.at("N") == 5);
  double min_dist = summary.at("final_min_pair_distance").get<double>();
  CHECK(min_dist >= 0.19);  // violations stay within the step-size bound
  auto problem = nlohmann::json::parse(slurp(out / "problem.json"));
  CHECK(problem.at("kind") == "disks");
  CHECK(problem.at("x0").size() == 10);
}

TEST_CASE("scheme flag selects the integrator") {
  fs::path out = scratch_root() / "pen";
  CHECK(run_cli("sliding --n 128 --scheme penalty --penalty-gamma 50 --out " + out.string())
            .rc == 0);
  auto summary = nlohmann::json::parse(slurp(out / "summary.json"));
  CHECK(summary.at("scheme").get<std::string>().find("penalty") == 0);
  CHECK(run_cli("sliding --n 32 --scheme quantum --out " + out.string()).rc == 2);
}

TEST_CASE("study runs from a spec document") {
  fs::path spec = scratch_root() / "study.json";
  spit(spec, R"({
    "problem": {"kind": "sliding", "d": 3, "C": 10.0, "alpha": 0.19634954084936207},
    "schemes": ["pbd"],
    "step_counts": [64, 128, 256],
    "T": 4.0,
    "reference": "analytic"
  })");
  fs::path out = scratch_root() / "study_out";
  RunResult r = run_cli("study " + spec.string() + " --out " + out.string());
  CHECK(r.rc == 0);
  REQUIRE(fs::exists(out / "records.csv"));
  std::string csv = slurp(out / "records.csv");
  CHECK(csv.rfind("scheme,h,sup_error,avg_work,wall_time_s,status", 0) == 0);
  CHECK(std::count(csv.begin(), csv.end(), '\n') == 4);
  auto orders = nlohmann::json::parse(slurp(out / "orders.json"));
  double slope = orders.at("pbd").get<double>();
  // coarse three-point fit on the saturation shoulder: just sanity bounds
  CHECK(slope > 0.05);
  CHECK(slope < 3.0);
  CHECK(fs::exists(out / "plot.gp"));

  fs::path broken = scratch_root() / "broken.json";
  spit(broken, "{ not json");
  RunResult bad = run_cli("study " + broken.string() + " --out " + out.string());
  CHECK(bad.rc == 2);
  CHECK(bad.err.find("error") != std::string::npos);
}

TEST_CASE("verify subcommand reports suites and honors injection") {
  fs::path out = scratch_root() / "verify_ok";
  RunResult ok = run_cli("verify --suite lemmas --out " + out.string());
  CHECK(ok.rc == 0);
  CHECK(ok.out.find("[PASS]") != std::string::npos);
  auto report = nlohmann::json::parse(slurp(out / "verify.json"));
  CHECK(report.at("lemmas").at("passed") == true);
  CHECK(report.at("lemmas").at("properties").size() >= 2);

  fs::path out_bad = scratch_root() / "verify_inject";
  RunResult inject =
      run_cli("verify --suite geometry --inject-violation --out " + out_bad.string());
  CHECK(inject.rc == 1);
  CHECK(inject.out.find("injected-violation") != std::string::npos);
  CHECK(inject.err.find("failing") != std::string::npos);
}
