#define AW_API __attribute__((visibility("default")))

#include "attenwave/attenwave.h"

#include <cstring>
#include <string>
#include <vector>

#include "core/causality.hpp"
#include "core/errors.hpp"
#include "core/grid.hpp"
#include "core/io.hpp"
#include "core/kernels.hpp"
#include "core/models.hpp"
#include "core/wavesim.hpp"

struct aw_grid {
  aw::SpectralGrid g;
};
struct aw_model {
  aw::AttenuationModel m;
  std::string json;
};
struct aw_signal {
  aw::TimeSignal s;
};
struct aw_field {
  std::vector<double> radii;
  aw::SpectralGrid g;
  std::vector<std::vector<double>> values;
  aw::AttenuationModel m;
};
struct aw_source {
  aw::SourcePulse p;
};

namespace {

std::string& tl_error() {
  thread_local std::string msg;
  return msg;
}

int map_code(aw::errc c) {
  switch (c) {
    case aw::errc::ok: return AW_OK;
    case aw::errc::invalid_argument: return AW_EINVAL;
    case aw::errc::imaginary_leakage: return AW_EIMAG;
    case aw::errc::branch_violation: return AW_EBRANCH;
    case aw::errc::unresolved_shift: return AW_ESHIFT;
    case aw::errc::degenerate_signal: return AW_EDEGEN;
    case aw::errc::nondecaying_integrand: return AW_ENONDECAY;
    case aw::errc::out_of_window: return AW_EWINDOW;
    case aw::errc::io_failure: return AW_EIO;
  }
  return AW_EINVAL;
}

template <typename Fn>
int guarded(Fn&& fn) noexcept {
  try {
    fn();
    tl_error().clear();
    return AW_OK;
  } catch (const aw::error& e) {
    tl_error() = e.what();
    return map_code(e.code());
  } catch (const std::exception& e) {
    tl_error() = e.what();
    return AW_EINVAL;
  } catch (...) {
    tl_error() = "unknown failure";
    return AW_EINVAL;
  }
}

void need(bool ok, const char* what) {
  if (!ok) aw::fail(aw::errc::invalid_argument, what);
}

std::vector<double> to_vec(const double* data, size_t len, const char* what) {
  need(data != nullptr || len == 0, what);
  return std::vector<double>(data, data + len);
}

aw::CausalityReport from_c(const aw_report& r) {
  aw::CausalityReport rep;
  rep.metric = r.metric;
  rep.epsilon = r.epsilon;
  rep.classification = r.noncausal ? aw::Causality::NonCausal : aw::Causality::Causal;
  rep.threshold = r.threshold;
  rep.windowed = r.windowed != 0;
  rep.truncation_bound = r.truncation_bound;
  return rep;
}

}  // namespace

extern "C" {

const char* aw_version(void) { return "1.0.0"; }

const char* aw_last_error(void) { return tl_error().c_str(); }

int aw_grid_make(size_t n, double dt, double t0, aw_grid** out) {
  return guarded([&] {
    need(out != nullptr, "null output pointer");
    *out = new aw_grid{aw::make_grid(n, dt, t0)};
  });
}

void aw_grid_free(aw_grid* g) { delete g; }
size_t aw_grid_n(const aw_grid* g) { return g ? g->g.n : 0; }
double aw_grid_dt(const aw_grid* g) { return g ? g->g.dt : 0.0; }
double aw_grid_t0(const aw_grid* g) { return g ? g->g.t0 : 0.0; }
double aw_grid_domega(const aw_grid* g) { return g ? g->g.domega : 0.0; }
double aw_grid_omega_max(const aw_grid* g) { return g ? g->g.omega_max() : 0.0; }

int aw_model_from_json(const char* json_text, aw_model** out) {
  return guarded([&] {
    need(json_text != nullptr && out != nullptr, "null pointer argument");
    aw::AttenuationModel m = aw::model_from_json_string(json_text);
    *out = new aw_model{m, aw::model_to_json_string(m)};
  });
}

void aw_model_free(aw_model* m) { delete m; }

const char* aw_model_json(const aw_model* m) { return m ? m->json.c_str() : ""; }

int aw_model_expected_causality(const aw_model* m, int* noncausal, char* reason_buf,
                                size_t reason_cap) {
  return guarded([&] {
    need(m != nullptr && noncausal != nullptr, "null pointer argument");
    const aw::CausalityExpectation e = aw::expected_causality(m->m);
    *noncausal = e.expected == aw::Causality::NonCausal ? 1 : 0;
    if (reason_buf != nullptr && reason_cap > 0) {
      std::strncpy(reason_buf, e.reason.c_str(), reason_cap - 1);
      reason_buf[reason_cap - 1] = '\0';
    }
  });
}

int aw_alpha_star(const aw_model* m, double omega, double* re, double* im) {
  return guarded([&] {
    need(m != nullptr && re != nullptr && im != nullptr, "null pointer argument");
    const auto v = aw::alpha_star(m->m, omega);
    *re = v.real();
    *im = v.imag();
  });
}

int aw_alpha_star_derivative(const aw_model* m, double omega, int order, double* re,
                             double* im) {
  return guarded([&] {
    need(m != nullptr && re != nullptr && im != nullptr, "null pointer argument");
    const auto v = aw::alpha_star_derivative(m->m, omega, order);
    *re = v.real();
    *im = v.imag();
  });
}

int aw_attenuation_law(const aw_model* m, double omega, double* out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "null pointer argument");
    *out = aw::attenuation_law(m->m, omega);
  });
}

void aw_signal_free(aw_signal* s) { delete s; }
size_t aw_signal_len(const aw_signal* s) { return s ? s->s.samples.size() : 0; }
const double* aw_signal_data(const aw_signal* s) {
  return s ? s->s.samples.data() : nullptr;
}
double aw_signal_time(const aw_signal* s, size_t index) {
  return s ? s->s.grid.time(index) : 0.0;
}

int aw_signal_write_csv(const aw_signal* s, const char* path) {
  return guarded([&] {
    need(s != nullptr && path != nullptr, "null pointer argument");
    aw::write_signal_csv(path, s->s);
  });
}

int aw_kernel_k(const aw_model* m, const aw_grid* g, double r, aw_signal** out) {
  return guarded([&] {
    need(m != nullptr && g != nullptr && out != nullptr, "null pointer argument");
    *out = new aw_signal{aw::kernel_k(m->m, g->g, r)};
  });
}

int aw_kernel_kstar(const aw_model* m, const aw_grid* g, aw_signal** out) {
  return guarded([&] {
    need(m != nullptr && g != nullptr && out != nullptr, "null pointer argument");
    *out = new aw_signal{aw::kernel_kstar(m->m, g->g)};
  });
}

int aw_kernel_t_half(const aw_grid* g, double tau0, aw_signal** out) {
  return guarded([&] {
    need(g != nullptr && out != nullptr, "null pointer argument");
    *out = new aw_signal{aw::kernel_t_half(g->g, tau0)};
  });
}

int aw_green_trace(const aw_model* m, const aw_grid* g, double r, int shifted,
                   aw_signal** out) {
  return guarded([&] {
    need(m != nullptr && g != nullptr && out != nullptr, "null pointer argument");
    *out = new aw_signal{aw::green_trace(m->m, g->g, r, shifted != 0)};
  });
}

int aw_kernel_field(const aw_model* m, const aw_grid* g, const double* radii,
                    size_t n_radii, aw_field** out) {
  return guarded([&] {
    need(m != nullptr && g != nullptr && out != nullptr, "null pointer argument");
    aw::KernelField f =
        aw::kernel_field(m->m, g->g, to_vec(radii, n_radii, "null radii array"));
    *out = new aw_field{std::move(f.radii), f.grid, std::move(f.values), m->m};
  });
}

void aw_field_free(aw_field* f) { delete f; }
size_t aw_field_rows(const aw_field* f) { return f ? f->radii.size() : 0; }
size_t aw_field_cols(const aw_field* f) { return f ? f->g.n : 0; }
double aw_field_radius(const aw_field* f, size_t row) {
  return f && row < f->radii.size() ? f->radii[row] : 0.0;
}
double aw_field_time(const aw_field* f, size_t col) { return f ? f->g.time(col) : 0.0; }
const double* aw_field_row(const aw_field* f, size_t row) {
  return f && row < f->values.size() ? f->values[row].data() : nullptr;
}

int aw_field_write_csv(const aw_field* f, const char* path) {
  return guarded([&] {
    need(f != nullptr && path != nullptr, "null pointer argument");
    aw::write_field_csv(path, f->radii, f->g, f->values);
  });
}

int aw_field_write_binary(const aw_field* f, const char* bin_path,
                          const char* sidecar_path) {
  return guarded([&] {
    need(f != nullptr && bin_path != nullptr && sidecar_path != nullptr,
         "null pointer argument");
    aw::write_field_binary(bin_path, sidecar_path, f->radii, f->g, f->values, f->m);
  });
}

int aw_helmholtz_residual(const aw_model* m, const double* radii, size_t n_radii,
                          const double* omegas, size_t n_omegas, double omega_cap,
                          double* out) {
  return guarded([&] {
    need(m != nullptr && out != nullptr, "null pointer argument");
    *out = aw::helmholtz_residual(m->m, to_vec(radii, n_radii, "null radii array"),
                                  to_vec(omegas, n_omegas, "null omega array"), omega_cap);
  });
}

int aw_noncausality_metric(const aw_signal* s, double epsilon, double* out) {
  return guarded([&] {
    need(s != nullptr && out != nullptr, "null pointer argument");
    *out = aw::noncausality_metric(s->s, epsilon);
  });
}

int aw_classify(double metric, double threshold, int* noncausal) {
  return guarded([&] {
    need(noncausal != nullptr, "null pointer argument");
    *noncausal = aw::classify(metric, threshold) == aw::Causality::NonCausal ? 1 : 0;
  });
}

int aw_causality_report(const aw_signal* s, double epsilon, double threshold,
                        int tukey_window, aw_report* out) {
  return guarded([&] {
    need(s != nullptr && out != nullptr, "null pointer argument");
    aw::ReportOptions opt;
    opt.epsilon = epsilon;
    opt.threshold = threshold;
    opt.tukey_window = tukey_window != 0;
    const aw::CausalityReport rep = aw::causality_report(s->s, opt);
    out->metric = rep.metric;
    out->epsilon = rep.epsilon;
    out->noncausal = rep.classification == aw::Causality::NonCausal ? 1 : 0;
    out->threshold = rep.threshold;
    out->windowed = rep.windowed ? 1 : 0;
    out->truncation_bound = rep.truncation_bound;
  });
}

int aw_report_write_json(const aw_report* rep, const char* path) {
  return guarded([&] {
    need(rep != nullptr && path != nullptr, "null pointer argument");
    aw::write_json(path, aw::report_to_json(from_c(*rep)));
  });
}

int aw_front_arrival(const aw_signal* s, double level, double* out) {
  return guarded([&] {
    need(s != nullptr && out != nullptr, "null pointer argument");
    *out = aw::front_arrival(s->s, level);
  });
}

int aw_travel_time_fit(const aw_model* m, const aw_grid* g, const double* radii,
                       size_t n_radii, double level, aw_front_fit* out,
                       double* arrivals_out) {
  return guarded([&] {
    need(m != nullptr && g != nullptr && out != nullptr, "null pointer argument");
    const aw::FrontFit fit = aw::travel_time_fit(
        m->m, to_vec(radii, n_radii, "null radii array"), g->g, level);
    out->slope = fit.slope;
    out->intercept = fit.intercept;
    out->r_squared = fit.r_squared;
    out->front_speed = fit.front_speed;
    if (arrivals_out != nullptr)
      std::memcpy(arrivals_out, fit.arrivals.data(), fit.arrivals.size() * sizeof(double));
  });
}

int aw_kk_residual(const aw_model* m, const aw_grid* g, int deriv_order,
                   double band_frac, double* out) {
  return guarded([&] {
    need(m != nullptr && g != nullptr && out != nullptr, "null pointer argument");
    *out = aw::kk_residual(m->m, g->g, deriv_order, band_frac);
  });
}

int aw_source_gaussian(const aw_grid* g, double center, double width, aw_source** out) {
  return guarded([&] {
    need(g != nullptr && out != nullptr, "null pointer argument");
    *out = new aw_source{aw::gaussian_source(g->g, center, width)};
  });
}

int aw_source_from_csv(const aw_grid* g, const char* path, aw_source** out) {
  return guarded([&] {
    need(g != nullptr && path != nullptr && out != nullptr, "null pointer argument");
    *out = new aw_source{aw::source_from_csv(path, g->g)};
  });
}

void aw_source_free(aw_source* s) { delete s; }

int aw_propagate(const aw_model* m, const aw_source* src, const double* radii,
                 size_t n_radii, aw_field** out) {
  return guarded([&] {
    need(m != nullptr && src != nullptr && out != nullptr, "null pointer argument");
    aw::PressureField f =
        aw::propagate(m->m, src->p, to_vec(radii, n_radii, "null radii array"));
    *out = new aw_field{std::move(f.radii), f.grid, std::move(f.values), m->m};
  });
}

int aw_snapshot(const aw_field* f, double t, double* r_out, double* p_out) {
  return guarded([&] {
    need(f != nullptr && r_out != nullptr && p_out != nullptr, "null pointer argument");
    const auto rows = aw::snapshot_rows(f->g, f->radii, f->values, t);
    for (size_t i = 0; i < rows.size(); ++i) {
      r_out[i] = rows[i].first;
      p_out[i] = rows[i].second;
    }
  });
}

int aw_svg_plot(const char* path, const double* xs, const double* ys, size_t n_points,
                const char* title, const char* xlabel, const char* ylabel,
                int timestamp) {
  return guarded([&] {
    need(path != nullptr && title != nullptr && xlabel != nullptr && ylabel != nullptr,
         "null pointer argument");
    aw::write_svg_line(path, to_vec(xs, n_points, "null x array"),
                       to_vec(ys, n_points, "null y array"), title, xlabel, ylabel,
                       timestamp != 0);
  });
}

}  // extern "C"
