// End-to-end checks of the CLI binary (path passed as argv[1]).
#define DOCTEST_CONFIG_IMPLEMENT
#include "doctest.h"

#include <sys/wait.h>

#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <string>

#include <nlohmann/json.hpp>

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

std::string g_cli;

int run_cli(const std::string& args) {
  const std::string command = g_cli + " " + args + " >/dev/null 2>&1";
  const int status = std::system(command.c_str());
  return WEXITSTATUS(status);
}

fs::path fresh_dir(const char* name) {
  const fs::path dir = fs::temp_directory_path() / name;
  fs::remove_all(dir);
  fs::create_directories(dir);
  return dir;
}

void write_file(const fs::path& path, const std::string& text) {
  std::ofstream out(path);
  out << text;
}

}  // namespace

TEST_CASE("run writes the three outputs with exact headers") {
  const fs::path dir = fresh_dir("brf_cli_run");
  write_file(dir / "config.json", R"({
    "class": "heisenberg", "A0": 1.0, "B0": 2.0, "C0": 2.0, "t_max": 0.2
  })");
  const int code = run_cli("run " + (dir / "config.json").string() + " --out " +
                           (dir / "out").string());
  CHECK(code == 0);

  std::ifstream traj(dir / "out" / "trajectory.csv");
  std::string header;
  std::getline(traj, header);
  CHECK(header == "t,A,B,C,R11,R22,R33,R");

  std::ifstream env(dir / "out" / "envelope.csv");
  std::getline(env, header);
  CHECK(header == "t,lambda_low,lambda_high");

  std::ifstream report_in(dir / "out" / "report.json");
  json report;
  report_in >> report;
  CHECK(report["stop_reason"] == "horizon_reached");
  CHECK(report["initial"]["A0"] == 1.0);
  CHECK(report.contains("T_plus"));
  CHECK(report.contains("volume_drift"));
  CHECK(report.contains("exponents"));
  CHECK(report.contains("tau"));
  fs::remove_all(dir);
}

TEST_CASE("run reports blow-up analysis for the default heisenberg config") {
  const fs::path dir = fresh_dir("brf_cli_blowup");
  write_file(dir / "config.json", R"({
    "class": "heisenberg", "A0": 1.0, "B0": 2.0, "C0": 2.0,
    "outputs": ["report_json"]
  })");
  CHECK(run_cli("run " + (dir / "config.json").string() + " --out " +
                (dir / "out").string()) == 0);
  std::ifstream report_in(dir / "out" / "report.json");
  json report;
  report_in >> report;
  CHECK(!fs::exists(dir / "out" / "trajectory.csv"));
  REQUIRE(!report["T_plus"].is_null());
  CHECK(std::abs(report["T_plus"].get<double>() - 0.375) < 1e-3);
  CHECK(std::abs(report["exponents"]["A"]["p"].get<double>() + 0.5) < 0.02);
  CHECK(std::abs(report["exponents"]["B"]["p"].get<double>() - 0.25) < 0.02);
  CHECK(std::abs(report["exponents"]["C"]["p"].get<double>() - 0.25) < 0.02);
  fs::remove_all(dir);
}

TEST_CASE("fixed-point run reports flat exponents") {
  const fs::path dir = fresh_dir("brf_cli_round");
  write_file(dir / "config.json", R"({
    "class": "su2",
    "A0": 1.5874010519681994, "B0": 1.5874010519681994,
    "C0": 1.5874010519681994,
    "t_max": 10.0, "outputs": ["report_json"]
  })");
  CHECK(run_cli("run " + (dir / "config.json").string() + " --out " +
                (dir / "out").string()) == 0);
  std::ifstream report_in(dir / "out" / "report.json");
  json report;
  report_in >> report;
  CHECK(report["stop_reason"] == "horizon_reached");
  CHECK(report["T_plus"].is_null());
  CHECK(report["fixed_point"] == true);
  for (const char* coeff : {"A", "B", "C"}) {
    REQUIRE(!report["exponents"][coeff].is_null());
    CHECK(std::abs(report["exponents"][coeff]["p"].get<double>()) < 1e-12);
  }
  fs::remove_all(dir);
}

TEST_CASE("config errors exit with status 1") {
  const fs::path dir = fresh_dir("brf_cli_bad");
  CHECK(run_cli("run " + (dir / "missing.json").string()) == 1);
  write_file(dir / "bad.json", "{\"class\": \"heisenberg\"}");
  CHECK(run_cli("run " + (dir / "bad.json").string() + " --out " +
                (dir / "out").string()) == 1);
  write_file(dir / "unknown_key.json", R"({
    "class": "e2", "A0": 1.0, "B0": 1.0, "C0": 4.0, "frobnicate": 1
  })");
  CHECK(run_cli("run " + (dir / "unknown_key.json").string() + " --out " +
                (dir / "out").string()) == 1);
  CHECK(run_cli("verify no-such-suite") == 1);
  fs::remove_all(dir);
}

TEST_CASE("verify subcommand runs a fast suite") {
  CHECK(run_cli("verify fitting") == 0);
}

TEST_CASE("verify exits 0 on the default suite") {
  CHECK(run_cli("verify") == 0);
}

TEST_CASE("sweep produces per-point reports and an index") {
  const fs::path dir = fresh_dir("brf_cli_sweep");
  write_file(dir / "grid.json", R"({
    "class": "e2",
    "A0": [1.0, 1.4, 3],
    "B0": [1.0, 1.4, 2],
    "t_max": 0.4,
    "outputs": ["report_json"]
  })");
  const std::string out = (dir / "out").string();
  CHECK(run_cli("sweep " + (dir / "grid.json").string() + " --out " + out +
                " --jobs 2") == 0);
  REQUIRE(fs::exists(dir / "out" / "index.json"));
  CHECK(fs::exists(dir / "out" / "index.csv"));
  CHECK(fs::exists(dir / "out" / "point_000_000" / "report.json"));

  std::ifstream index_in(dir / "out" / "index.json");
  json index;
  index_in >> index;
  CHECK(index.size() == 6);
  // The A0 = B0 = 1 point sits on the flat line: fixed point, zero curvature.
  bool saw_fixed = false;
  for (const auto& entry : index)
    if (entry["A0"] == 1.0 && entry["B0"] == 1.0) {
      CHECK(entry["fixed_point"] == true);
      saw_fixed = true;
    }
  CHECK(saw_fixed);

  // Overlapping output without --force is refused; with --force it reruns.
  CHECK(run_cli("sweep " + (dir / "grid.json").string() + " --out " + out) ==
        1);
  CHECK(run_cli("sweep " + (dir / "grid.json").string() + " --out " + out +
                " --force") == 0);
  fs::remove_all(dir);
}

int main(int argc, char** argv) {
  if (argc < 2) {
    std::fprintf(stderr, "usage: test_cli <path-to-cli>\n");
    return 2;
  }
  g_cli = argv[1];
  doctest::Context context;
  context.applyCommandLine(argc - 1, argv + 1);
  return context.run();
}
