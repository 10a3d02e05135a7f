#ifndef ATTENWAVE_H
#define ATTENWAVE_H

/* C interface to the attenuation-kernel library.
 *
 * Every fallible call returns an int status code (AW_OK == 0 on success) and
 * reports results through out-parameters. After a failure, aw_last_error()
 * returns a thread-local description of what went wrong. Objects returned
 * through aw_*_make / aw_*_from_* calls are owned by the caller and must be
 * released with the matching aw_*_free; passing NULL to a free is a no-op.
 */

#include <stddef.h>

#ifdef __cplusplus
extern "C" {
#endif

#ifndef AW_API
#if defined(_WIN32)
#define AW_API __declspec(dllimport)
#else
#define AW_API
#endif
#endif

enum {
  AW_OK = 0,
  AW_EINVAL = 1,    /* invalid argument or precondition violation */
  AW_EIMAG = 2,     /* imaginary leakage above tolerance */
  AW_EBRANCH = 3,   /* square-root branch cut crossed between samples */
  AW_ESHIFT = 4,    /* arrival does not fit the sampled window */
  AW_EDEGEN = 5,    /* degenerate (zero-energy) signal */
  AW_ENONDECAY = 6, /* dispersion integrand does not decay at the edge */
  AW_EWINDOW = 7,   /* requested time outside the sampled window */
  AW_EIO = 8        /* file could not be read or written */
};

typedef struct aw_grid aw_grid;
typedef struct aw_model aw_model;
typedef struct aw_signal aw_signal;
typedef struct aw_field aw_field;
typedef struct aw_source aw_source;

typedef struct aw_report {
  double metric;
  double epsilon;
  int noncausal; /* 1 = NonCausal, 0 = Causal */
  double threshold;
  int windowed;
  double truncation_bound;
} aw_report;

typedef struct aw_front_fit {
  double slope;
  double intercept;
  double r_squared;
  double front_speed;
} aw_front_fit;

AW_API const char* aw_version(void);
AW_API const char* aw_last_error(void); /* thread-local; empty after success */

/* ---- sampling grid (n power of two, dt > 0, t0 <= -n*dt/4) ---- */
AW_API int aw_grid_make(size_t n, double dt, double t0, aw_grid** out);
AW_API void aw_grid_free(aw_grid* g);
AW_API size_t aw_grid_n(const aw_grid* g);
AW_API double aw_grid_dt(const aw_grid* g);
AW_API double aw_grid_t0(const aw_grid* g);
AW_API double aw_grid_domega(const aw_grid* g);
AW_API double aw_grid_omega_max(const aw_grid* g);

/* ---- attenuation model ---- */
/* JSON object {kind, gamma, alpha0, a0, tau0, alpha1, c0}; unknown fields
 * are rejected and parameters are validated per family. */
AW_API int aw_model_from_json(const char* json_text, aw_model** out);
AW_API void aw_model_free(aw_model* m);
/* Canonical JSON for the model; owned by the model, valid until freed. */
AW_API const char* aw_model_json(const aw_model* m);
AW_API int aw_model_expected_causality(const aw_model* m, int* noncausal,
                                       char* reason_buf, size_t reason_cap);
AW_API int aw_alpha_star(const aw_model* m, double omega, double* re, double* im);
AW_API int aw_alpha_star_derivative(const aw_model* m, double omega, int order,
                                    double* re, double* im);
AW_API int aw_attenuation_law(const aw_model* m, double omega, double* out);

/* ---- real time signals ---- */
AW_API void aw_signal_free(aw_signal* s);
AW_API size_t aw_signal_len(const aw_signal* s);
AW_API const double* aw_signal_data(const aw_signal* s);
AW_API double aw_signal_time(const aw_signal* s, size_t index);
AW_API int aw_signal_write_csv(const aw_signal* s, const char* path);

/* ---- kernels and point-source responses ---- */
AW_API int aw_kernel_k(const aw_model* m, const aw_grid* g, double r, aw_signal** out);
AW_API int aw_kernel_kstar(const aw_model* m, const aw_grid* g, aw_signal** out);
AW_API int aw_kernel_t_half(const aw_grid* g, double tau0, aw_signal** out);
/* shifted = 1 removes the r/c0 travel delay; 0 keeps the physical arrival. */
AW_API int aw_green_trace(const aw_model* m, const aw_grid* g, double r, int shifted,
                          aw_signal** out);

AW_API int aw_kernel_field(const aw_model* m, const aw_grid* g, const double* radii,
                           size_t n_radii, aw_field** out);
AW_API void aw_field_free(aw_field* f);
AW_API size_t aw_field_rows(const aw_field* f);
AW_API size_t aw_field_cols(const aw_field* f);
AW_API double aw_field_radius(const aw_field* f, size_t row);
AW_API double aw_field_time(const aw_field* f, size_t col);
AW_API const double* aw_field_row(const aw_field* f, size_t row);
AW_API int aw_field_write_csv(const aw_field* f, const char* path);
AW_API int aw_field_write_binary(const aw_field* f, const char* bin_path,
                                 const char* sidecar_path);

/* Max relative defect of the radial Helmholtz operator on >= 5 uniform
 * radii; omega_cap > 0 selects |omega| <= omega_cap, otherwise frequencies
 * are restricted by the stencil resolution bound |lambda|*dr <= 0.5. */
AW_API int aw_helmholtz_residual(const aw_model* m, const double* radii, size_t n_radii,
                                 const double* omegas, size_t n_omegas, double omega_cap,
                                 double* out);

/* ---- causality diagnostics ---- */
AW_API int aw_noncausality_metric(const aw_signal* s, double epsilon, double* out);
AW_API int aw_classify(double metric, double threshold, int* noncausal);
/* epsilon < 0 selects the default guard 4*dt. */
AW_API int aw_causality_report(const aw_signal* s, double epsilon, double threshold,
                               int tukey_window, aw_report* out);
AW_API int aw_report_write_json(const aw_report* rep, const char* path);
AW_API int aw_front_arrival(const aw_signal* s, double level, double* out);
/* arrivals_out may be NULL or an array of n_radii entries. */
AW_API int aw_travel_time_fit(const aw_model* m, const aw_grid* g, const double* radii,
                              size_t n_radii, double level, aw_front_fit* out,
                              double* arrivals_out);
AW_API int aw_kk_residual(const aw_model* m, const aw_grid* g, int deriv_order,
                          double band_frac, double* out);

/* ---- point-source fields ---- */
AW_API int aw_source_gaussian(const aw_grid* g, double center, double width,
                              aw_source** out);
AW_API int aw_source_from_csv(const aw_grid* g, const char* path, aw_source** out);
AW_API void aw_source_free(aw_source* s);
AW_API int aw_propagate(const aw_model* m, const aw_source* src, const double* radii,
                        size_t n_radii, aw_field** out);
/* r_out/p_out must hold aw_field_rows(f) entries. */
AW_API int aw_snapshot(const aw_field* f, double t, double* r_out, double* p_out);

/* ---- plotting ---- */
AW_API int aw_svg_plot(const char* path, const double* xs, const double* ys,
                       size_t n_points, const char* title, const char* xlabel,
                       const char* ylabel, int timestamp);

#ifdef __cplusplus
}
#endif

#endif /* ATTENWAVE_H */
