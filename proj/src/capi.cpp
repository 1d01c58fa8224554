#include "brf.h"

#include <algorithm>
#include <cmath>
#include <cstring>
#include <limits>
#include <memory>
#include <new>
#include <stdexcept>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "brf/asymptotics.hpp"
#include "brf/flow.hpp"
#include "brf/geometry.hpp"
#include "brf/io.hpp"
#include "brf/runner.hpp"
#include "brf/spectrum.hpp"
#include "brf/verify.hpp"

struct brf_trajectory {
  brf::Trajectory impl;
};

struct brf_envelope {
  std::vector<brf::EnvelopePoint> points;
  double tau = 0.0;
};

namespace {

thread_local std::string g_last_error;

void set_error(const char* message) { g_last_error = message; }

template <typename Fn>
brf_status guarded(Fn&& fn) {
  try {
    return fn();
  } catch (const std::domain_error& e) {
    set_error(e.what());
    return BRF_ERR_DOMAIN;
  } catch (const std::invalid_argument& e) {
    set_error(e.what());
    return BRF_ERR_INVALID_ARGUMENT;
  } catch (const std::bad_alloc&) {
    set_error("out of memory");
    return BRF_ERR_INTERNAL;
  } catch (const std::exception& e) {
    set_error(e.what());
    return BRF_ERR_INTERNAL;
  }
}

brf_status require(bool ok, const char* message) {
  if (ok) return BRF_OK;
  set_error(message);
  return BRF_ERR_INVALID_ARGUMENT;
}

bool to_class(brf_class cls, brf::BianchiClass* out) {
  switch (cls) {
    case BRF_CLASS_HEISENBERG: *out = brf::BianchiClass::Heisenberg; return true;
    case BRF_CLASS_SU2: *out = brf::BianchiClass::SU2; return true;
    case BRF_CLASS_E11: *out = brf::BianchiClass::E11; return true;
    case BRF_CLASS_E2: *out = brf::BianchiClass::E2; return true;
    case BRF_CLASS_SL2R: *out = brf::BianchiClass::SL2R; return true;
  }
  return false;
}

brf_stop_reason from_stop_reason(brf::StopReason reason) {
  switch (reason) {
    case brf::StopReason::HorizonReached: return BRF_STOP_HORIZON_REACHED;
    case brf::StopReason::BlowupDetected: return BRF_STOP_BLOWUP_DETECTED;
    case brf::StopReason::StepUnderflow: return BRF_STOP_STEP_UNDERFLOW;
    case brf::StopReason::StepBudget: return BRF_STOP_STEP_BUDGET;
  }
  return BRF_STOP_HORIZON_REACHED;
}

bool to_stop_reason(brf_stop_reason reason, brf::StopReason* out) {
  switch (reason) {
    case BRF_STOP_HORIZON_REACHED: *out = brf::StopReason::HorizonReached; return true;
    case BRF_STOP_BLOWUP_DETECTED: *out = brf::StopReason::BlowupDetected; return true;
    case BRF_STOP_STEP_UNDERFLOW: *out = brf::StopReason::StepUnderflow; return true;
    case BRF_STOP_STEP_BUDGET: *out = brf::StopReason::StepBudget; return true;
  }
  return false;
}

brf::IntegratorConfig to_config(const brf_integrator_config& c) {
  brf::IntegratorConfig out;
  out.rel_tol = c.rel_tol;
  out.abs_tol = c.abs_tol;
  out.max_steps = c.max_steps;
  out.blowup_threshold = c.blowup_threshold;
  out.min_step = c.min_step;
  if (std::isfinite(c.t_max) && c.t_max >= 0.0) out.t_max = c.t_max;
  return out;
}

char* copy_string(const std::string& text) {
  char* out = new char[text.size() + 1];
  std::memcpy(out, text.c_str(), text.size() + 1);
  return out;
}

}  // namespace

extern "C" {

const char* brf_status_name(brf_status status) {
  switch (status) {
    case BRF_OK: return "ok";
    case BRF_ERR_INVALID_ARGUMENT: return "invalid_argument";
    case BRF_ERR_DOMAIN: return "domain_error";
    case BRF_ERR_NOT_FOUND: return "not_found";
    case BRF_ERR_IO: return "io_error";
    case BRF_ERR_INTERNAL: return "internal_error";
  }
  return "unknown";
}

const char* brf_last_error(void) { return g_last_error.c_str(); }

const char* brf_class_name(brf_class cls) {
  brf::BianchiClass impl;
  if (!to_class(cls, &impl)) return "unknown";
  return brf::class_name(impl).data();
}

brf_status brf_class_from_name(const char* name, brf_class* out_cls) {
  if (brf_status s = require(name && out_cls, "null argument")) return s;
  const auto cls = brf::class_from_name(name);
  if (!cls) {
    set_error("unknown class name");
    return BRF_ERR_INVALID_ARGUMENT;
  }
  *out_cls = static_cast<brf_class>(*cls);
  return BRF_OK;
}

const char* brf_stop_reason_name(brf_stop_reason reason) {
  brf::StopReason impl;
  if (!to_stop_reason(reason, &impl)) return "unknown";
  return brf::stop_reason_name(impl).data();
}

brf_status brf_structure_constants(brf_class cls, int out_lambda[3]) {
  if (brf_status s = require(out_lambda != nullptr, "null output")) return s;
  brf::BianchiClass impl;
  if (brf_status s = require(to_class(cls, &impl), "invalid class")) return s;
  return guarded([&] {
    const brf::StructureConstants sc = brf::structure_constants(impl);
    out_lambda[0] = sc.l1;
    out_lambda[1] = sc.l2;
    out_lambda[2] = sc.l3;
    return BRF_OK;
  });
}

brf_status brf_curvature(brf_class cls, double a, double b, double c,
                         double out_ricci[3], double* out_scalar) {
  if (brf_status s = require(out_ricci && out_scalar, "null output")) return s;
  brf::BianchiClass impl;
  if (brf_status s = require(to_class(cls, &impl), "invalid class")) return s;
  return guarded([&] {
    const brf::CurvatureData curv =
        brf::curvature(impl, brf::MetricState{0.0, a, b, c});
    out_ricci[0] = curv.r11;
    out_ricci[1] = curv.r22;
    out_ricci[2] = curv.r33;
    *out_scalar = curv.scalar;
    return BRF_OK;
  });
}

brf_status brf_flow_rhs(brf_class cls, double a, double b, double c,
                        double out_rhs[3]) {
  if (brf_status s = require(out_rhs != nullptr, "null output")) return s;
  brf::BianchiClass impl;
  if (brf_status s = require(to_class(cls, &impl), "invalid class")) return s;
  return guarded([&] {
    const auto rhs = brf::flow_rhs(impl, brf::MetricState{0.0, a, b, c});
    out_rhs[0] = rhs[0];
    out_rhs[1] = rhs[1];
    out_rhs[2] = rhs[2];
    return BRF_OK;
  });
}

void brf_integrator_config_init(brf_integrator_config* config) {
  if (!config) return;
  const brf::IntegratorConfig defaults;
  config->rel_tol = defaults.rel_tol;
  config->abs_tol = defaults.abs_tol;
  config->max_steps = defaults.max_steps;
  config->blowup_threshold = defaults.blowup_threshold;
  config->min_step = defaults.min_step;
  config->t_max = -1.0;
}

brf_status brf_integrate(brf_class cls, double a0, double b0, double c0,
                         const brf_integrator_config* config,
                         brf_trajectory** out_traj) {
  if (brf_status s = require(config && out_traj, "null argument")) return s;
  brf::BianchiClass impl;
  if (brf_status s = require(to_class(cls, &impl), "invalid class")) return s;
  return guarded([&] {
    auto traj = std::make_unique<brf_trajectory>();
    traj->impl = brf::integrate(impl, brf::MetricState{0.0, a0, b0, c0},
                                to_config(*config));
    *out_traj = traj.release();
    return BRF_OK;
  });
}

void brf_trajectory_free(brf_trajectory* traj) { delete traj; }

size_t brf_trajectory_size(const brf_trajectory* traj) {
  return traj ? traj->impl.samples.size() : 0;
}

brf_status brf_trajectory_sample(const brf_trajectory* traj, size_t i,
                                 double out_row[8]) {
  if (brf_status s = require(traj && out_row, "null argument")) return s;
  if (i >= traj->impl.samples.size()) {
    set_error("sample index out of range");
    return BRF_ERR_INVALID_ARGUMENT;
  }
  const brf::TrajectorySample& sample = traj->impl.samples[i];
  out_row[0] = sample.state.t;
  out_row[1] = sample.state.a;
  out_row[2] = sample.state.b;
  out_row[3] = sample.state.c;
  out_row[4] = sample.curvature.r11;
  out_row[5] = sample.curvature.r22;
  out_row[6] = sample.curvature.r33;
  out_row[7] = sample.curvature.scalar;
  return BRF_OK;
}

brf_stop_reason brf_trajectory_stop_reason(const brf_trajectory* traj) {
  return traj ? from_stop_reason(traj->impl.stop_reason)
              : BRF_STOP_HORIZON_REACHED;
}

double brf_trajectory_volume_drift(const brf_trajectory* traj) {
  return traj ? traj->impl.volume_drift
              : std::numeric_limits<double>::quiet_NaN();
}

brf_status brf_closed_form_heisenberg(double a0, double b0, double c0,
                                      double t, double out_state[3]) {
  if (brf_status s = require(out_state != nullptr, "null output")) return s;
  return guarded([&] {
    const brf::MetricState state =
        brf::closed_form_heisenberg(brf::MetricState{0.0, a0, b0, c0}, t);
    out_state[0] = state.a;
    out_state[1] = state.b;
    out_state[2] = state.c;
    return BRF_OK;
  });
}

brf_status brf_closed_form_e11_symmetric(double b0, double t,
                                         double out_state[3]) {
  if (brf_status s = require(out_state != nullptr, "null output")) return s;
  return guarded([&] {
    const brf::MetricState state = brf::closed_form_e11_symmetric(b0, t);
    out_state[0] = state.a;
    out_state[1] = state.b;
    out_state[2] = state.c;
    return BRF_OK;
  });
}

brf_status brf_envelope_integrate(const brf_trajectory* traj,
                                  double lambda_init, double tau,
                                  brf_envelope** out_env) {
  if (brf_status s = require(traj && out_env, "null argument")) return s;
  return guarded([&] {
    auto env = std::make_unique<brf_envelope>();
    env->points = brf::integrate_envelope(traj->impl, lambda_init, tau);
    env->tau = tau;
    *out_env = env.release();
    return BRF_OK;
  });
}

void brf_envelope_free(brf_envelope* env) { delete env; }

size_t brf_envelope_size(const brf_envelope* env) {
  return env ? env->points.size() : 0;
}

brf_status brf_envelope_point(const brf_envelope* env, size_t i,
                              double out_point[5]) {
  if (brf_status s = require(env && out_point, "null argument")) return s;
  if (i >= env->points.size()) {
    set_error("envelope index out of range");
    return BRF_ERR_INVALID_ARGUMENT;
  }
  const brf::EnvelopePoint& p = env->points[i];
  out_point[0] = p.t;
  out_point[1] = p.lambda_low();
  out_point[2] = p.lambda_high();
  out_point[3] = p.log_lambda_low;
  out_point[4] = p.log_lambda_high;
  return BRF_OK;
}

brf_status brf_monotone_quantity(const brf_trajectory* traj,
                                 const brf_envelope* env, int ricci_index,
                                 int upper_bound, double tau, double* values,
                                 size_t capacity, size_t* out_size) {
  if (brf_status s = require(traj && env && out_size, "null argument"))
    return s;
  if (!values) {
    *out_size = env->points.size();
    return BRF_OK;
  }
  return guarded([&] {
    const brf::MonotoneQuantity q = brf::monotone_quantity(
        traj->impl, env->points, ricci_index, tau,
        upper_bound ? brf::EnvelopeBound::Upper : brf::EnvelopeBound::Lower);
    if (capacity < q.log_values.size()) {
      set_error("capacity too small");
      return BRF_ERR_INVALID_ARGUMENT;
    }
    std::copy(q.log_values.begin(), q.log_values.end(), values);
    *out_size = q.log_values.size();
    return BRF_OK;
  });
}

brf_status brf_heisenberg_eigenvalue_bounds(double a0, double b0,
                                            double lambda0, double t,
                                            double out_bounds[2]) {
  if (brf_status s = require(out_bounds != nullptr, "null output")) return s;
  return guarded([&] {
    const auto [low, high] =
        brf::heisenberg_bounds_closed_form(a0, b0, lambda0, t);
    out_bounds[0] = low;
    out_bounds[1] = high;
    return BRF_OK;
  });
}

brf_status brf_e11_symmetric_eigenvalue_bounds(double b0, double lambda0,
                                               double t,
                                               double out_bounds[2]) {
  if (brf_status s = require(out_bounds != nullptr, "null output")) return s;
  return guarded([&] {
    const auto [low, high] = brf::e11_symmetric_bounds(b0, lambda0, t);
    out_bounds[0] = low;
    out_bounds[1] = high;
    return BRF_OK;
  });
}

brf_status brf_estimate_blowup_time(const brf_trajectory* traj,
                                    double* out_t_plus) {
  if (brf_status s = require(traj && out_t_plus, "null argument")) return s;
  return guarded([&] {
    *out_t_plus = brf::estimate_blowup_time(traj->impl);
    return BRF_OK;
  });
}

brf_status brf_fit_exponent(const double* t, const double* value, size_t n,
                            double t_plus, double* out_exponent,
                            double* out_prefactor, double* out_residual) {
  if (brf_status s =
          require(t && value && out_exponent && out_prefactor, "null argument"))
    return s;
  return guarded([&] {
    const brf::ExponentFit fit =
        brf::fit_exponent(std::vector<double>(t, t + n),
                          std::vector<double>(value, value + n), t_plus);
    *out_exponent = fit.exponent;
    *out_prefactor = fit.prefactor;
    if (out_residual) *out_residual = fit.residual;
    return BRF_OK;
  });
}

brf_status brf_detect_tau(const brf_trajectory* traj, const int signs[3],
                          const int order[3], double* out_tau) {
  if (brf_status s = require(traj && signs && order && out_tau, "null argument"))
    return s;
  return guarded([&] {
    brf::RicciPattern pattern;
    std::copy(signs, signs + 3, pattern.signs.begin());
    std::copy(order, order + 3, pattern.order.begin());
    const auto tau = brf::detect_tau(traj->impl, pattern);
    if (!tau) {
      set_error("pattern never persists to the end of the trajectory");
      return BRF_ERR_NOT_FOUND;
    }
    *out_tau = *tau;
    return BRF_OK;
  });
}

brf_status brf_classify_sl2r(double a0, double b0, double c0,
                             const brf_integrator_config* config,
                             brf_sl2r_report* out_report) {
  if (brf_status s = require(config && out_report, "null argument")) return s;
  return guarded([&] {
    const brf::SL2RCase result = brf::classify_sl2r(
        brf::MetricState{0.0, a0, b0, c0}, to_config(*config));
    const double nan = std::numeric_limits<double>::quiet_NaN();
    out_report->case_tag = result.tag == brf::SL2RCaseTag::Case1ADominates ? 1
                           : result.tag == brf::SL2RCaseTag::Case2BDominates
                               ? 2
                               : 3;
    out_report->witness_time =
        result.witness_time ? *result.witness_time : nan;
    out_report->horizon = result.certification_horizon;
    out_report->t_plus = result.t_plus ? *result.t_plus : nan;
    out_report->c_law_exponent = result.c_law ? result.c_law->exponent : nan;
    out_report->c_law_prefactor = result.c_law ? result.c_law->prefactor : nan;
    return BRF_OK;
  });
}

brf_status brf_subriemannian_limit(const brf_trajectory* traj,
                                   double out_dual[3]) {
  if (brf_status s = require(traj && out_dual, "null argument")) return s;
  return guarded([&] {
    const auto dual = brf::subriemannian_limit(traj->impl);
    std::copy(dual.begin(), dual.end(), out_dual);
    return BRF_OK;
  });
}

brf_status brf_run(const char* config_json, const char* out_dir,
                   char** out_report_json, char** out_warnings) {
  if (brf_status s = require(config_json && out_dir && out_report_json,
                             "null argument"))
    return s;
  return guarded([&] {
    const brf::RunConfig config = brf::parse_run_config(config_json);
    brf::RunResult result;
    try {
      result = brf::run(config, out_dir);
    } catch (const std::runtime_error& e) {
      set_error(e.what());
      return BRF_ERR_IO;
    }
    *out_report_json = copy_string(result.report);
    if (out_warnings) {
      std::string joined;
      for (const std::string& w : result.warnings) {
        if (!joined.empty()) joined += '\n';
        joined += w;
      }
      *out_warnings = joined.empty() ? nullptr : copy_string(joined);
    }
    return BRF_OK;
  });
}

brf_status brf_verify(const char* suite, char** out_text, int* out_all_pass) {
  if (brf_status s = require(suite && out_text && out_all_pass, "null argument"))
    return s;
  return guarded([&] {
    const auto groups = brf::verify::run_suite(suite);
    *out_text = copy_string(brf::verify::format_report(groups));
    *out_all_pass = brf::verify::all_pass(groups) ? 1 : 0;
    return BRF_OK;
  });
}

brf_status brf_trajectory_to_csv(const brf_trajectory* traj, char** out_csv) {
  if (brf_status s = require(traj && out_csv, "null argument")) return s;
  return guarded([&] {
    *out_csv = copy_string(brf::trajectory_to_csv(traj->impl));
    return BRF_OK;
  });
}

brf_status brf_trajectory_from_csv(brf_class cls, const char* csv,
                                   brf_stop_reason stop_reason,
                                   brf_trajectory** out_traj) {
  if (brf_status s = require(csv && out_traj, "null argument")) return s;
  brf::BianchiClass impl_cls;
  if (brf_status s = require(to_class(cls, &impl_cls), "invalid class"))
    return s;
  brf::StopReason impl_reason;
  if (brf_status s =
          require(to_stop_reason(stop_reason, &impl_reason), "invalid stop reason"))
    return s;
  return guarded([&] {
    auto traj = std::make_unique<brf_trajectory>();
    traj->impl = brf::trajectory_from_csv(impl_cls, csv, impl_reason);
    *out_traj = traj.release();
    return BRF_OK;
  });
}

brf_status brf_analysis_json(const brf_trajectory* traj, char** out_json) {
  if (brf_status s = require(traj && out_json, "null argument")) return s;
  return guarded([&] {
    const brf::RunAnalysis analysis = brf::analyze_trajectory(traj->impl);
    nlohmann::json full =
        nlohmann::json::parse(brf::report_json(traj->impl, 1.0, analysis));
    nlohmann::json out;
    for (const char* key : {"T_plus", "exponents", "tau", "volume_drift",
                            "fixed_point", "sl2r_case", "sl2r_witness_time",
                            "sl2r_certified_until", "sl2r_c_law"})
      if (full.contains(key)) out[key] = full[key];
    *out_json = copy_string(out.dump(2));
    return BRF_OK;
  });
}

void brf_string_free(char* text) { delete[] text; }

}  // extern "C"
