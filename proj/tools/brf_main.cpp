// Command-line front end for the backward Ricci flow library. Talks to the
// core exclusively through the C API in brf.h.

#include <atomic>
#include <cmath>
#include <cstdio>
#include <filesystem>
#include <fstream>
#include <iostream>
#include <mutex>
#include <optional>
#include <sstream>
#include <string>
#include <thread>
#include <vector>

#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "brf.h"

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

constexpr int kExitOk = 0;
constexpr int kExitConfigError = 1;
constexpr int kExitVerifyFailure = 2;
constexpr int kExitRuntimeFailure = 3;

struct Overrides {
  std::optional<double> rel_tol;
  std::optional<double> t_max;
};

int map_status(brf_status status) {
  switch (status) {
    case BRF_OK: return kExitOk;
    case BRF_ERR_INVALID_ARGUMENT:
    case BRF_ERR_DOMAIN: return kExitConfigError;
    default: return kExitRuntimeFailure;
  }
}

std::optional<json> load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    std::cerr << "error: cannot open '" << path << "'\n";
    return std::nullopt;
  }
  try {
    json j;
    in >> j;
    return j;
  } catch (const json::parse_error& e) {
    std::cerr << "error: " << path << " is not valid JSON: " << e.what()
              << "\n";
    return std::nullopt;
  }
}

void apply_overrides(json& config, const Overrides& overrides) {
  if (overrides.rel_tol) config["rel_tol"] = *overrides.rel_tol;
  if (overrides.t_max) config["t_max"] = *overrides.t_max;
}

// Runs one config (already merged) and reports the written report JSON.
int run_one(const json& config, const std::string& out_dir,
            std::string* report_out) {
  char* report = nullptr;
  char* warnings = nullptr;
  const brf_status status =
      brf_run(config.dump().c_str(), out_dir.c_str(), &report, &warnings);
  if (warnings) {
    std::cerr << "warning: " << warnings << "\n";
    brf_string_free(warnings);
  }
  if (status != BRF_OK) {
    std::cerr << "error: " << brf_last_error() << "\n";
    return map_status(status);
  }
  if (report_out) *report_out = report;
  brf_string_free(report);
  return kExitOk;
}

int cmd_run(const std::string& config_path, const std::string& out_dir,
            const Overrides& overrides) {
  auto config = load_json_file(config_path);
  if (!config) return kExitConfigError;
  if (!config->is_object()) {
    std::cerr << "error: config must be a JSON object\n";
    return kExitConfigError;
  }
  apply_overrides(*config, overrides);
  std::string report;
  const int code = run_one(*config, out_dir, &report);
  if (code != kExitOk) return code;
  const json parsed = json::parse(report);
  std::cout << "run finished: stop_reason=" << parsed.value("stop_reason", "?");
  if (!parsed["T_plus"].is_null())
    std::cout << " T_plus=" << parsed["T_plus"].get<double>();
  std::cout << " outputs=" << out_dir << "\n";
  return kExitOk;
}

int cmd_verify(const std::string& suite) {
  char* text = nullptr;
  int all_pass = 0;
  const brf_status status = brf_verify(suite.c_str(), &text, &all_pass);
  if (status != BRF_OK) {
    std::cerr << "error: " << brf_last_error() << "\n";
    return map_status(status);
  }
  std::cout << text;
  brf_string_free(text);
  return all_pass ? kExitOk : kExitVerifyFailure;
}

struct GridAxis {
  double lo = 0.0, hi = 0.0;
  int count = 0;
  double at(int i) const {
    return count > 1 ? lo + (hi - lo) * i / (count - 1) : lo;
  }
};

std::optional<GridAxis> parse_axis(const json& j, const char* key) {
  if (!j.contains(key) || !j[key].is_array() || j[key].size() != 3) {
    std::cerr << "error: gridspec key '" << key
              << "' must be [min, max, count]\n";
    return std::nullopt;
  }
  GridAxis axis;
  axis.lo = j[key][0].get<double>();
  axis.hi = j[key][1].get<double>();
  axis.count = j[key][2].get<int>();
  if (!(axis.lo > 0.0) || !(axis.hi >= axis.lo) || axis.count < 1) {
    std::cerr << "error: gridspec key '" << key << "' is not a valid range\n";
    return std::nullopt;
  }
  return axis;
}

int cmd_sweep(const std::string& spec_path, const std::string& out_dir,
              bool force, int jobs, const Overrides& overrides) {
  auto spec = load_json_file(spec_path);
  if (!spec) return kExitConfigError;
  if (!spec->contains("class") || !(*spec)["class"].is_string()) {
    std::cerr << "error: gridspec key 'class' is required\n";
    return kExitConfigError;
  }
  const std::string cls = (*spec)["class"].get<std::string>();
  brf_class cls_id;
  if (brf_class_from_name(cls.c_str(), &cls_id) != BRF_OK) {
    std::cerr << "error: " << brf_last_error() << "\n";
    return kExitConfigError;
  }
  const auto a_axis = parse_axis(*spec, "A0");
  const auto b_axis = parse_axis(*spec, "B0");
  if (!a_axis || !b_axis) return kExitConfigError;

  const fs::path root(out_dir);
  if (fs::exists(root / "index.json") && !force) {
    std::cerr << "error: '" << out_dir
              << "' already holds sweep results (use --force to overwrite)\n";
    return kExitConfigError;
  }
  std::error_code ec;
  fs::create_directories(root, ec);

  // Per-point template: everything except class/A0/B0/C0 is shared.
  json tpl = *spec;
  tpl.erase("A0");
  tpl.erase("B0");
  if (!tpl.contains("outputs")) tpl["outputs"] = json::array({"report_json"});
  apply_overrides(tpl, overrides);

  struct Point {
    int i, j;
    double a0, b0, c0;
    bool skipped = false;
    std::string skip_reason;
    json report;
  };
  std::vector<Point> points;
  for (int i = 0; i < a_axis->count; ++i)
    for (int j = 0; j < b_axis->count; ++j) {
      Point p;
      p.i = i;
      p.j = j;
      p.a0 = a_axis->at(i);
      p.b0 = b_axis->at(j);
      p.c0 = 4.0 / (p.a0 * p.b0);  // normalized surface A*B*C = 4
      if (cls == "sl2r" && p.b0 < p.c0) {
        p.skipped = true;
        p.skip_reason = "requires B0 >= C0";
      }
      points.push_back(p);
    }

  std::atomic<size_t> next{0};
  std::atomic<int> failures{0};
  std::mutex log_mutex;
  auto worker = [&]() {
    while (true) {
      const size_t k = next.fetch_add(1);
      if (k >= points.size()) return;
      Point& p = points[k];
      if (p.skipped) continue;
      char name[64];
      std::snprintf(name, sizeof(name), "point_%03d_%03d", p.i, p.j);
      json config = tpl;
      config["A0"] = p.a0;
      config["B0"] = p.b0;
      config["C0"] = p.c0;
      char* report = nullptr;
      const brf_status status = brf_run(config.dump().c_str(),
                                        (root / name).string().c_str(),
                                        &report, nullptr);
      if (status != BRF_OK) {
        std::lock_guard<std::mutex> lock(log_mutex);
        std::cerr << "error: " << name << ": " << brf_last_error() << "\n";
        p.skipped = true;
        p.skip_reason = brf_last_error();
        failures.fetch_add(1);
        continue;
      }
      p.report = json::parse(report);
      brf_string_free(report);
    }
  };
  const int n_workers =
      std::max(1, jobs > 0 ? jobs
                           : static_cast<int>(std::thread::hardware_concurrency()));
  std::vector<std::thread> pool;
  for (int w = 0; w < n_workers; ++w) pool.emplace_back(worker);
  for (auto& th : pool) th.join();

  json index = json::array();
  std::string csv = "i,j,A0,B0,C0,stop_reason,T_plus,sl2r_case,fixed_point\n";
  for (const Point& p : points) {
    json entry{{"i", p.i}, {"j", p.j},
               {"A0", p.a0}, {"B0", p.b0}, {"C0", p.c0}};
    char row[256];
    if (p.skipped) {
      entry["skipped"] = p.skip_reason;
      std::snprintf(row, sizeof(row), "%d,%d,%.17g,%.17g,%.17g,skipped,,,\n",
                    p.i, p.j, p.a0, p.b0, p.c0);
    } else {
      entry["stop_reason"] = p.report["stop_reason"];
      entry["T_plus"] = p.report["T_plus"];
      entry["fixed_point"] = p.report["fixed_point"];
      if (p.report.contains("sl2r_case"))
        entry["sl2r_case"] = p.report["sl2r_case"];
      std::snprintf(
          row, sizeof(row), "%d,%d,%.17g,%.17g,%.17g,%s,%s,%s,%s\n", p.i, p.j,
          p.a0, p.b0, p.c0,
          p.report["stop_reason"].get<std::string>().c_str(),
          p.report["T_plus"].is_null()
              ? ""
              : std::to_string(p.report["T_plus"].get<double>()).c_str(),
          p.report.contains("sl2r_case")
              ? p.report["sl2r_case"].get<std::string>().c_str()
              : "",
          p.report["fixed_point"].get<bool>() ? "true" : "false");
    }
    index.push_back(entry);
    csv += row;
  }
  std::ofstream(root / "index.json") << index.dump(2) << "\n";
  std::ofstream(root / "index.csv") << csv;
  std::cout << "wrote " << (root / "index.json").string() << " ("
            << points.size() << " grid points)\n";
  return failures.load() == 0 ? kExitOk : kExitRuntimeFailure;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"backward Ricci flow on homogeneous 3-manifold geometries"};
  app.require_subcommand(1);

  std::string config_path, out_dir = ".", suite = "all", spec_path;
  bool force = false;
  int jobs = 0;
  Overrides overrides;
  double rel_tol_flag = 0.0, t_max_flag = 0.0;

  CLI::App* run_cmd = app.add_subcommand("run", "integrate one configuration");
  run_cmd->add_option("config", config_path, "JSON run config")->required();
  run_cmd->add_option("--out", out_dir, "output directory");
  CLI::Option* run_rel =
      run_cmd->add_option("--rel-tol", rel_tol_flag, "override rel_tol");
  CLI::Option* run_tmax =
      run_cmd->add_option("--t-max", t_max_flag, "override t_max");

  CLI::App* verify_cmd =
      app.add_subcommand("verify", "run the verification suite");
  verify_cmd->add_option("suite", suite, "suite name (default: all)");

  CLI::App* sweep_cmd =
      app.add_subcommand("sweep", "run a grid of initial conditions");
  sweep_cmd->add_option("gridspec", spec_path, "JSON grid spec")->required();
  sweep_cmd->add_option("--out", out_dir, "output directory");
  sweep_cmd->add_flag("--force", force, "overwrite an existing sweep");
  sweep_cmd->add_option("--jobs", jobs, "worker count (default: cores)");
  CLI::Option* sweep_rel =
      sweep_cmd->add_option("--rel-tol", rel_tol_flag, "override rel_tol");
  CLI::Option* sweep_tmax =
      sweep_cmd->add_option("--t-max", t_max_flag, "override t_max");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? kExitOk : kExitConfigError;
  }

  if (run_cmd->parsed()) {
    if (run_rel->count()) overrides.rel_tol = rel_tol_flag;
    if (run_tmax->count()) overrides.t_max = t_max_flag;
    return cmd_run(config_path, out_dir, overrides);
  }
  if (verify_cmd->parsed()) return cmd_verify(suite);
  if (sweep_cmd->parsed()) {
    if (sweep_rel->count()) overrides.rel_tol = rel_tol_flag;
    if (sweep_tmax->count()) overrides.t_max = t_max_flag;
    return cmd_sweep(spec_path, out_dir, force, jobs, overrides);
  }
  return kExitConfigError;
}
