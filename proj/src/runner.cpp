#include "brf/runner.hpp"

#include <cmath>
#include <fstream>
#include <stdexcept>

#include <nlohmann/json.hpp>

#include "brf/flow.hpp"
#include "brf/geometry.hpp"
#include "brf/io.hpp"

namespace brf {

namespace {

using nlohmann::json;

double require_number(const json& j, const std::string& key) {
  if (!j.is_number())
    throw std::invalid_argument("config key '" + key + "' must be a number");
  return j.get<double>();
}

std::pair<int, EnvelopeBound> parse_monotone_column(const std::string& spec) {
  const size_t colon = spec.find(':');
  if (colon == 1 && spec.size() > 2) {
    const char index = spec[0];
    const std::string bound = spec.substr(2);
    if (index >= '1' && index <= '3' && (bound == "low" || bound == "high"))
      return {index - '0',
              bound == "low" ? EnvelopeBound::Lower : EnvelopeBound::Upper};
  }
  throw std::invalid_argument(
      "monotone entries must look like \"1:low\" or \"2:high\", got '" + spec +
      "'");
}

}  // namespace

RunConfig parse_run_config(const std::string& json_text) {
  json j;
  try {
    j = json::parse(json_text);
  } catch (const json::parse_error& e) {
    throw std::invalid_argument(std::string("config is not valid JSON: ") +
                                e.what());
  }
  if (!j.is_object()) throw std::invalid_argument("config must be a JSON object");

  RunConfig cfg;
  bool have_class = false, have_a = false, have_b = false, have_c = false;
  for (const auto& [key, value] : j.items()) {
    if (key == "class") {
      if (!value.is_string())
        throw std::invalid_argument("config key 'class' must be a string");
      const auto cls = class_from_name(value.get<std::string>());
      if (!cls)
        throw std::invalid_argument(
            "unknown class '" + value.get<std::string>() +
            "' (expected heisenberg, su2, e11, e2 or sl2r)");
      cfg.cls = *cls;
      have_class = true;
    } else if (key == "A0") {
      cfg.a0 = require_number(value, key);
      have_a = true;
    } else if (key == "B0") {
      cfg.b0 = require_number(value, key);
      have_b = true;
    } else if (key == "C0") {
      cfg.c0 = require_number(value, key);
      have_c = true;
    } else if (key == "lambda0") {
      cfg.lambda0 = require_number(value, key);
    } else if (key == "rel_tol") {
      cfg.integrator.rel_tol = require_number(value, key);
    } else if (key == "abs_tol") {
      cfg.integrator.abs_tol = require_number(value, key);
    } else if (key == "max_steps") {
      cfg.integrator.max_steps = static_cast<long>(require_number(value, key));
    } else if (key == "blowup_threshold") {
      cfg.integrator.blowup_threshold = require_number(value, key);
    } else if (key == "min_step") {
      cfg.integrator.min_step = require_number(value, key);
    } else if (key == "t_max") {
      if (value.is_null())
        cfg.integrator.t_max.reset();
      else
        cfg.integrator.t_max = require_number(value, key);
    } else if (key == "outputs") {
      if (!value.is_array())
        throw std::invalid_argument("config key 'outputs' must be an array");
      cfg.out_trajectory_csv = cfg.out_envelope_csv = cfg.out_report_json =
          false;
      for (const auto& entry : value) {
        const std::string name = entry.get<std::string>();
        if (name == "trajectory_csv")
          cfg.out_trajectory_csv = true;
        else if (name == "envelope_csv")
          cfg.out_envelope_csv = true;
        else if (name == "report_json")
          cfg.out_report_json = true;
        else
          throw std::invalid_argument("unknown output '" + name + "'");
      }
    } else if (key == "monotone") {
      if (!value.is_array())
        throw std::invalid_argument("config key 'monotone' must be an array");
      for (const auto& entry : value)
        cfg.monotone_columns.push_back(
            parse_monotone_column(entry.get<std::string>()));
    } else {
      throw std::invalid_argument("unknown config key '" + key + "'");
    }
  }
  if (!have_class) throw std::invalid_argument("config key 'class' is required");
  if (!have_a || !have_b || !have_c)
    throw std::invalid_argument("config keys A0, B0 and C0 are required");
  if (!(cfg.a0 > 0.0 && cfg.b0 > 0.0 && cfg.c0 > 0.0))
    throw std::invalid_argument("A0, B0 and C0 must be positive");
  if (!(cfg.lambda0 > 0.0))
    throw std::invalid_argument("lambda0 must be positive");
  return cfg;
}

RunResult run(const RunConfig& config, const std::filesystem::path& out_dir) {
  namespace fs = std::filesystem;
  RunResult result;
  const double volume = config.a0 * config.b0 * config.c0;
  if (std::abs(volume - 4.0) > 1e-12)
    result.warnings.push_back(
        "initial volume A0*B0*C0 = " + std::to_string(volume) +
        " differs from the normalized value 4");

  std::error_code ec;
  fs::create_directories(out_dir, ec);
  if (ec && !fs::is_directory(out_dir))
    throw std::runtime_error("cannot create output directory '" +
                             out_dir.string() + "'");

  auto cleanup = [&result]() {
    std::error_code ignored;
    for (const auto& path : result.files)
      std::filesystem::remove(path, ignored);
  };

  try {
    const MetricState initial{0.0, config.a0, config.b0, config.c0};
    const Trajectory traj = integrate(config.cls, initial, config.integrator);
    const RunAnalysis analysis = analyze_trajectory(traj);
    result.report = report_json(traj, config.lambda0, analysis);

    auto write_file = [&](const char* name, const std::string& text) {
      const fs::path path = out_dir / name;
      std::ofstream out(path, std::ios::binary | std::ios::trunc);
      out << text;
      if (!out) throw std::runtime_error("failed to write " + path.string());
      result.files.push_back(path);
    };

    if (config.out_trajectory_csv)
      write_file("trajectory.csv", trajectory_to_csv(traj));
    if (config.out_envelope_csv) {
      const auto envelope =
          integrate_envelope(traj, config.lambda0, traj.t_begin());
      std::vector<MonotoneQuantity> monotone;
      for (const auto& [index, bound] : config.monotone_columns)
        monotone.push_back(monotone_quantity(traj, envelope, index,
                                             traj.t_begin(), bound));
      write_file("envelope.csv", envelope_to_csv(envelope, monotone));
    }
    if (config.out_report_json) write_file("report.json", result.report + "\n");
  } catch (...) {
    cleanup();
    throw;
  }
  return result;
}

}  // namespace brf
