/* Exercises the shared-library interface the way an external C caller
 * would: opaque handles, status codes, thread-local error strings. */
#undef NDEBUG
#include <assert.h>
#include <math.h>
#include <stdio.h>
#include <string.h>

#include <attenwave/attenwave.h>

static void check_version(void) {
  const char* v = aw_version();
  assert(v != NULL && strlen(v) > 0);
}

static void check_grid(void) {
  aw_grid* g = NULL;
  assert(aw_grid_make(8, 1.0, -2.0, &g) == AW_OK);
  assert(g != NULL);
  assert(aw_grid_n(g) == 8);
  assert(aw_grid_dt(g) == 1.0);
  assert(aw_grid_t0(g) == -2.0);
  assert(fabs(aw_grid_domega(g) - 0.7853981633974483) < 1e-15);
  assert(fabs(aw_grid_omega_max(g) - 3.141592653589793) < 1e-15);
  aw_grid_free(g);

  g = NULL;
  assert(aw_grid_make(7, 1.0, -2.0, &g) == AW_EINVAL);
  assert(g == NULL);
  assert(strlen(aw_last_error()) > 0);
}

static void check_model(void) {
  aw_model* m = NULL;
  assert(aw_model_from_json("{\"kind\":\"PowerLawKK\",\"gamma\":0.5,\"alpha0\":0.1581}",
                            &m) == AW_OK);

  const char* round = aw_model_json(m);
  assert(round != NULL && strstr(round, "PowerLawKK") != NULL);

  double re = 0.0, im = 0.0;
  assert(aw_alpha_star(m, 1.0, &re, &im) == AW_OK);
  assert(fabs(re - 0.1581) < 1e-12);
  assert(fabs(im + 0.1581) < 1e-12);

  double law = 0.0;
  assert(aw_attenuation_law(m, 4.0, &law) == AW_OK);
  assert(fabs(law - 0.1581 * 2.0) < 1e-12);

  assert(aw_alpha_star_derivative(m, 2.0, 1, &re, &im) == AW_OK);
  double re0, im0, re1, im1;
  const double h = 1e-6;
  aw_alpha_star(m, 2.0 + h, &re1, &im1);
  aw_alpha_star(m, 2.0 - h, &re0, &im0);
  assert(fabs(re - (re1 - re0) / (2.0 * h)) < 1e-5);
  assert(fabs(im - (im1 - im0) / (2.0 * h)) < 1e-5);

  int noncausal = -1;
  char reason[256];
  assert(aw_model_expected_causality(m, &noncausal, reason, sizeof reason) == AW_OK);
  assert(noncausal == 0);
  assert(strlen(reason) > 0);
  aw_model_free(m);

  m = NULL;
  assert(aw_model_from_json("{\"kind\":\"PowerLawKK\",\"gamma\":1.5,\"alpha0\":0.0316}",
                            &m) == AW_OK);
  assert(aw_model_expected_causality(m, &noncausal, NULL, 0) == AW_OK);
  assert(noncausal == 1);
  aw_model_free(m);

  assert(aw_model_from_json("{\"kind\":\"Nope\"}", &m) == AW_EINVAL);
  assert(strlen(aw_last_error()) > 0);
  assert(aw_model_from_json("{\"kind\":\"Szabo\",\"gamma\":2.0}", &m) == AW_EINVAL);
}

static void check_kernels_and_metric(void) {
  aw_grid* g = NULL;
  assert(aw_grid_make(1 << 14, 1.0 / (1 << 12), -2.0, &g) == AW_OK);
  aw_model* m = NULL;
  assert(aw_model_from_json("{\"kind\":\"PowerLawKK\",\"gamma\":1.5,\"alpha0\":0.0316}",
                            &m) == AW_OK);

  aw_signal* k = NULL;
  assert(aw_kernel_k(m, g, 0.25, &k) == AW_OK);
  assert(aw_signal_len(k) == aw_grid_n(g));
  assert(aw_signal_data(k) != NULL);
  assert(fabs(aw_signal_time(k, 0) - (-2.0)) < 1e-15);

  double metric = -1.0;
  assert(aw_noncausality_metric(k, 4.0 / (1 << 12), &metric) == AW_OK);
  assert(metric > 1e-2); /* strongly non-causal family member */

  int noncausal = 0;
  assert(aw_classify(metric, 1e-3, &noncausal) == AW_OK);
  assert(noncausal == 1);
  assert(aw_classify(metric, 0.7, &noncausal) == AW_EINVAL);

  aw_report rep;
  memset(&rep, 0, sizeof rep);
  assert(aw_causality_report(k, -1.0, 1e-3, 0, &rep) == AW_OK);
  assert(rep.noncausal == 1);
  assert(fabs(rep.epsilon - 4.0 / (1 << 12)) < 1e-15);
  assert(rep.windowed == 0);
  assert(rep.truncation_bound >= 0.0);

  aw_signal_free(k);

  /* degenerate request surfaces the typed code, not a crash */
  aw_signal* th = NULL;
  assert(aw_kernel_t_half(g, -1.0, &th) == AW_EINVAL);
  assert(th == NULL);

  aw_signal* green = NULL;
  assert(aw_green_trace(m, g, 1e6, 0, &green) == AW_ESHIFT);
  assert(green == NULL);
  assert(strlen(aw_last_error()) > 0);

  aw_model_free(m);
  aw_grid_free(g);
}

static void check_travel_fit(void) {
  aw_grid* g = NULL;
  assert(aw_grid_make(1 << 13, 1.0 / (1 << 9), -4.0, &g) == AW_OK);
  aw_model* m = NULL;
  assert(aw_model_from_json("{\"kind\":\"NoAttenuation\"}", &m) == AW_OK);

  const double radii[5] = {0.125, 0.1875, 0.25, 0.3125, 0.375};
  aw_front_fit fit;
  double arrivals[5];
  assert(aw_travel_time_fit(m, g, radii, 5, 1e-4, &fit, arrivals) == AW_OK);
  assert(fabs(fit.slope - 1.0) < 1e-9);
  assert(fabs(fit.front_speed - 1.0) < 1e-9);
  assert(fit.r_squared > 1.0 - 1e-12);
  for (int i = 0; i < 5; ++i) {
    assert(fabs(arrivals[i] - (radii[i] - 1.0 / (1 << 9))) < 1e-6);
  }

  assert(aw_travel_time_fit(m, g, radii, 3, 1e-4, &fit, NULL) == AW_EINVAL);

  aw_model_free(m);
  aw_grid_free(g);
}

static void check_propagation(void) {
  aw_grid* g = NULL;
  assert(aw_grid_make(1024, 1.0 / (1 << 7), -2.0, &g) == AW_OK);
  aw_model* m = NULL;
  assert(aw_model_from_json("{\"kind\":\"ThermoViscous\",\"tau0\":0.01}", &m) == AW_OK);

  aw_source* src = NULL;
  assert(aw_source_gaussian(g, 0.5, 0.05, &src) == AW_OK);
  assert(aw_source_gaussian(g, -1.0, 0.05, &src) == AW_EINVAL);

  const double radii[2] = {0.25, 0.5};
  aw_field* field = NULL;
  assert(aw_propagate(m, src, radii, 2, &field) == AW_OK);
  assert(aw_field_rows(field) == 2);
  assert(aw_field_cols(field) == 1024);
  assert(aw_field_radius(field, 0) == 0.25);
  assert(aw_field_time(field, 0) == -2.0);
  assert(aw_field_row(field, 1) != NULL);

  double r_out[2], p_out[2];
  assert(aw_snapshot(field, 1.0, r_out, p_out) == AW_OK);
  assert(r_out[0] == 0.25 && r_out[1] == 0.5);
  assert(aw_snapshot(field, 1e9, r_out, p_out) == AW_EWINDOW);

  aw_field_free(field);
  aw_source_free(src);
  aw_model_free(m);
  aw_grid_free(g);
}

static void check_kk_error_paths(void) {
  aw_grid* g = NULL;
  assert(aw_grid_make(1 << 16, 1.0 / (1 << 10), -32.0, &g) == AW_OK);

  aw_model* m = NULL;
  assert(aw_model_from_json("{\"kind\":\"NoAttenuation\"}", &m) == AW_OK);
  double out = 0.0;
  assert(aw_kk_residual(m, g, 1, 0.25, &out) == AW_EDEGEN);
  aw_model_free(m);

  assert(aw_model_from_json("{\"kind\":\"PowerLawKK\",\"gamma\":2.7,\"alpha0\":0.0071}",
                            &m) == AW_OK);
  assert(aw_kk_residual(m, g, 1, 0.25, &out) == AW_ENONDECAY);
  aw_model_free(m);

  assert(aw_model_from_json("{\"kind\":\"PowerLawKK\",\"gamma\":0.5,\"alpha0\":0.1581}",
                            &m) == AW_OK);
  assert(aw_kk_residual(m, g, 1, 0.25, &out) == AW_OK);
  assert(out < 0.05);
  assert(strlen(aw_last_error()) == 0); /* cleared on success */
  aw_model_free(m);
  aw_grid_free(g);
}

int main(void) {
  check_version();
  check_grid();
  check_model();
  check_kernels_and_metric();
  check_travel_fit();
  check_propagation();
  check_kk_error_paths();
  printf("capi ok\n");
  return 0;
}
