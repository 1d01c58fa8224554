/*
 * C interface to the backward Ricci flow library. All functions return
 * brf_status; on failure brf_last_error() carries a one-line diagnostic for
 * the calling thread. Opaque handles are created and released by the
 * matching *_free functions and may be shared across threads once built.
 */

#ifndef BRF_H
#define BRF_H

#include <stddef.h>

#if defined(_WIN32)
#define BRF_API __declspec(dllexport)
#else
#define BRF_API __attribute__((visibility("default")))
#endif

#ifdef __cplusplus
extern "C" {
#endif

typedef enum brf_status {
  BRF_OK = 0,
  BRF_ERR_INVALID_ARGUMENT = 1,
  BRF_ERR_DOMAIN = 2,
  BRF_ERR_NOT_FOUND = 3,
  BRF_ERR_IO = 4,
  BRF_ERR_INTERNAL = 5
} brf_status;

typedef enum brf_class {
  BRF_CLASS_HEISENBERG = 0,
  BRF_CLASS_SU2 = 1,
  BRF_CLASS_E11 = 2,
  BRF_CLASS_E2 = 3,
  BRF_CLASS_SL2R = 4
} brf_class;

typedef enum brf_stop_reason {
  BRF_STOP_HORIZON_REACHED = 0,
  BRF_STOP_BLOWUP_DETECTED = 1,
  BRF_STOP_STEP_UNDERFLOW = 2,
  BRF_STOP_STEP_BUDGET = 3
} brf_stop_reason;

typedef struct brf_trajectory brf_trajectory;
typedef struct brf_envelope brf_envelope;

typedef struct brf_integrator_config {
  double rel_tol;
  double abs_tol;
  long max_steps;
  double blowup_threshold;
  double min_step;
  double t_max; /* negative or NaN: run until a singular stop */
} brf_integrator_config;

typedef struct brf_sl2r_report {
  int case_tag;            /* 1 = A dominates, 2 = B dominates, 3 = balanced */
  double witness_time;     /* cases 1 and 2; NaN otherwise */
  double horizon;          /* case 3: condition certified up to here */
  double t_plus;           /* case 3 with singular stop; NaN otherwise */
  double c_law_exponent;   /* fitted law of the vanishing coefficient */
  double c_law_prefactor;
} brf_sl2r_report;

BRF_API const char *brf_status_name(brf_status status);
BRF_API const char *brf_last_error(void);

BRF_API const char *brf_class_name(brf_class cls);
BRF_API brf_status brf_class_from_name(const char *name, brf_class *out_cls);
BRF_API const char *brf_stop_reason_name(brf_stop_reason reason);

/* Bracket coefficients (l1, l2, l3) of the class's Milnor frame. */
BRF_API brf_status brf_structure_constants(brf_class cls, int out_lambda[3]);

/* Ricci components (R11, R22, R33) and scalar curvature of the metric
 * diag(a, b, c). */
BRF_API brf_status brf_curvature(brf_class cls, double a, double b, double c,
                                 double out_ricci[3], double *out_scalar);

/* Backward-flow right-hand side (dA/dt, dB/dt, dC/dt). */
BRF_API brf_status brf_flow_rhs(brf_class cls, double a, double b, double c,
                                double out_rhs[3]);

BRF_API void brf_integrator_config_init(brf_integrator_config *config);

BRF_API brf_status brf_integrate(brf_class cls, double a0, double b0,
                                 double c0,
                                 const brf_integrator_config *config,
                                 brf_trajectory **out_traj);
BRF_API void brf_trajectory_free(brf_trajectory *traj);
BRF_API size_t brf_trajectory_size(const brf_trajectory *traj);
/* Sample row: t, A, B, C, R11, R22, R33, R. */
BRF_API brf_status brf_trajectory_sample(const brf_trajectory *traj, size_t i,
                                         double out_row[8]);
BRF_API brf_stop_reason brf_trajectory_stop_reason(const brf_trajectory *traj);
BRF_API double brf_trajectory_volume_drift(const brf_trajectory *traj);

/* Exact solutions; out_state = (A, B, C) at time t. */
BRF_API brf_status brf_closed_form_heisenberg(double a0, double b0, double c0,
                                              double t, double out_state[3]);
BRF_API brf_status brf_closed_form_e11_symmetric(double b0, double t,
                                                 double out_state[3]);

/* Two-sided eigenvalue envelope along a trajectory from lambda_init at tau. */
BRF_API brf_status brf_envelope_integrate(const brf_trajectory *traj,
                                          double lambda_init, double tau,
                                          brf_envelope **out_env);
BRF_API void brf_envelope_free(brf_envelope *env);
BRF_API size_t brf_envelope_size(const brf_envelope *env);
/* Point row: t, lambda_low, lambda_high, log(lambda_low), log(lambda_high). */
BRF_API brf_status brf_envelope_point(const brf_envelope *env, size_t i,
                                      double out_point[5]);

/* Log values of lambda_bound * exp(int(-(2/3)R + 2*R_ii)) on the envelope
 * grid. Call with values = NULL to query the required capacity. */
BRF_API brf_status brf_monotone_quantity(const brf_trajectory *traj,
                                         const brf_envelope *env,
                                         int ricci_index, int upper_bound,
                                         double tau, double *values,
                                         size_t capacity, size_t *out_size);

/* Closed-form envelope bounds; out = (low, high). */
BRF_API brf_status brf_heisenberg_eigenvalue_bounds(double a0, double b0,
                                                    double lambda0, double t,
                                                    double out_bounds[2]);
BRF_API brf_status brf_e11_symmetric_eigenvalue_bounds(double b0,
                                                       double lambda0,
                                                       double t,
                                                       double out_bounds[2]);

/* Blow-up time from the linearized fit of the largest coefficient. */
BRF_API brf_status brf_estimate_blowup_time(const brf_trajectory *traj,
                                            double *out_t_plus);

/* Log-log power-law fit over the final decade. Pass t_plus = INFINITY for
 * laws polynomial in t. */
BRF_API brf_status brf_fit_exponent(const double *t, const double *value,
                                    size_t n, double t_plus,
                                    double *out_exponent, double *out_prefactor,
                                    double *out_residual);

/* First time after which the Ricci sign pattern and ordering persist.
 * signs[i] in {-1,0,1}; order is a 1-based permutation, descending.
 * Returns BRF_ERR_NOT_FOUND when the pattern never persists. */
BRF_API brf_status brf_detect_tau(const brf_trajectory *traj,
                                  const int signs[3], const int order[3],
                                  double *out_tau);

BRF_API brf_status brf_classify_sl2r(double a0, double b0, double c0,
                                     const brf_integrator_config *config,
                                     brf_sl2r_report *out_report);

/* Dual components of the rescaled metric at a singular stop. */
BRF_API brf_status brf_subriemannian_limit(const brf_trajectory *traj,
                                           double out_dual[3]);

/* ---- orchestration -----------------------------------------------------
 * brf_run executes a flat JSON run config, writes the requested files into
 * out_dir and returns the report JSON (and optional newline-separated
 * warnings). Strings returned through out parameters are released with
 * brf_string_free. */
BRF_API brf_status brf_run(const char *config_json, const char *out_dir,
                           char **out_report_json, char **out_warnings);

/* One line per check plus one per group; *out_all_pass is 1 when everything
 * passed. */
BRF_API brf_status brf_verify(const char *suite, char **out_text,
                              int *out_all_pass);

BRF_API brf_status brf_trajectory_to_csv(const brf_trajectory *traj,
                                         char **out_csv);
BRF_API brf_status brf_trajectory_from_csv(brf_class cls, const char *csv,
                                           brf_stop_reason stop_reason,
                                           brf_trajectory **out_traj);

/* Analysis fields of the run report (JSON object), recomputable from a
 * trajectory CSV alone. */
BRF_API brf_status brf_analysis_json(const brf_trajectory *traj,
                                     char **out_json);

BRF_API void brf_string_free(char *text);

#ifdef __cplusplus
}
#endif

#endif /* BRF_H */
