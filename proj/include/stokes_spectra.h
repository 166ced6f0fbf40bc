/* C interface to the stokes_spectra library.
 *
 * Handles are opaque; every call returns an ss_status and, on failure, sets a
 * thread-local message readable with ss_last_error. Variable-length outputs use
 * the two-call protocol: pass buf = NULL (or a short buffer) to learn the
 * required size in *needed, then call again with a buffer of that size.
 * Text buffers are NUL-terminated and *needed counts the terminator. */
#ifndef STOKES_SPECTRA_H
#define STOKES_SPECTRA_H

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#if defined(_WIN32)
#define SS_API __declspec(dllexport)
#else
#define SS_API __attribute__((visibility("default")))
#endif

typedef enum ss_status {
  SS_OK = 0,
  SS_INVALID_ARGUMENT,
  SS_PARSE,
  SS_JUMP_DISCONTINUITY,
  SS_NOT_DIFFERENTIABLE,
  SS_NO_LIMIT,
  SS_WILTON_RESONANCE,
  SS_CONTINUATION_FAILURE,
  SS_DEGENERATE_GROUP_VELOCITY,
  SS_STABLE_COLLISION,
  SS_SECONDARY_RESONANCE,
  SS_DEGENERATE_QUARTET,
  SS_DEGENERATE_CURVATURE,
  SS_BF_RESONANCE,
  SS_STABLE,
  SS_SIGN_RESTRICTION,
  SS_EIG_FAILURE,
  SS_NEWTON_DIVERGED,
  SS_INVALID_DATA,
  SS_CONFIG,
  SS_IO,
  SS_BUFFER_TOO_SMALL,
  SS_INTERNAL
} ss_status;

typedef enum ss_format { SS_FORMAT_CSV = 0, SS_FORMAT_JSON = 1 } ss_format;

typedef struct ss_model ss_model;
typedef struct ss_wave ss_wave;
/* A computed result: one or more named text artifacts (index 0 is primary). */
typedef struct ss_result ss_result;

SS_API const char* ss_version(void);
SS_API const char* ss_status_string(ss_status status);
/* 1 when the status is a configuration or input problem, 0 for numerical failures. */
SS_API int ss_status_is_config(ss_status status);
SS_API ss_status ss_last_error(char* buf, size_t cap, size_t* needed);

/* ---- models ---- */
SS_API ss_status ss_model_create(const char* spec, ss_model** out);
SS_API void ss_model_destroy(ss_model* model);
SS_API ss_status ss_model_spec(const ss_model* model, char* buf, size_t cap, size_t* needed);
SS_API ss_status ss_model_omega(const ss_model* model, double k, double* out);
SS_API ss_status ss_model_phase_velocity(const ss_model* model, double k, double* out);
SS_API ss_status ss_model_group_velocity(const ss_model* model, double k, double* out);
SS_API ss_status ss_model_second_derivative(const ss_model* model, double k, double* out);

/* ---- Stokes waves ---- */
SS_API ss_status ss_wave_expand(const ss_model* model, double epsilon, int order, ss_wave** out);
SS_API ss_status ss_wave_numeric(const ss_model* model, double epsilon, int n_modes, ss_wave** out);
SS_API void ss_wave_destroy(ss_wave* wave);
SS_API ss_status ss_wave_speed(const ss_wave* wave, double* out);
/* Coefficients uhat_0..uhat_M; *needed is the count of doubles. */
SS_API ss_status ss_wave_coeffs(const ss_wave* wave, double* buf, size_t cap, size_t* needed);
SS_API ss_status ss_wave_json(const ss_wave* wave, char* buf, size_t cap, size_t* needed);

/* ---- computations returning results ---- */
typedef struct ss_search {
  int k_min;
  int k_max;
  int grid;
} ss_search;

/* Defaults: k in [-20, 20], 10^4 grid points. */
SS_API ss_search ss_search_default(void);

SS_API ss_status ss_collisions(const ss_model* model, int m, const ss_search* search, ss_format format,
                               ss_result** out);
/* Asymptotic isola for the collision of order m nearest p0_hint; a negative hint
 * takes the first Krein-negative collision. */
SS_API ss_status ss_isola(const ss_model* model, int m, double p0_hint, double epsilon, int n_theta,
                          ss_format format, ss_result** out);
/* Lemniscate rows plus a "constants.json" artifact. */
SS_API ss_status ss_bf(const ss_model* model, double epsilon, int n_theta, ss_format format, ss_result** out);
/* FFH eigenvalues for n_p exponents evenly spaced on [p_min, p_max]. N <= 0 picks the default. */
SS_API ss_status ss_spectrum(const ss_model* model, double epsilon, double p_min, double p_max, int n_p, int N,
                             int unstable_only, int jobs, ss_format format, ss_result** out);
/* Quasi-Newton continuation through eps[0..n_eps) for each theta in thetas[0..n_theta);
 * n_theta == 0 uses the most unstable angle. */
SS_API ss_status ss_trace(const ss_model* model, int m, double p0_hint, const double* eps, size_t n_eps,
                          const double* thetas, size_t n_theta, int N, int jobs, ss_format format,
                          ss_result** out);
SS_API ss_status ss_compare_growth(const ss_model* model, ss_format format, ss_result** out);

/* Named experiment. overrides_json may be NULL or a JSON object with any of
 * {models, selectors, epsilons, isola_epsilon, theta_points, N, jobs}. The
 * bundle is written to out_dir when it is non-NULL and non-empty. The result
 * holds summary.json followed by the data files. */
SS_API ss_status ss_run_experiment(const char* name, const char* overrides_json, const char* out_dir,
                                   ss_result** out);
/* Newline-separated registry names. */
SS_API ss_status ss_experiment_names(char* buf, size_t cap, size_t* needed);

SS_API size_t ss_result_count(const ss_result* result);
SS_API ss_status ss_result_name(const ss_result* result, size_t index, char* buf, size_t cap, size_t* needed);
SS_API ss_status ss_result_text(const ss_result* result, size_t index, char* buf, size_t cap, size_t* needed);
SS_API void ss_result_destroy(ss_result* result);

#ifdef __cplusplus
}
#endif

#endif
