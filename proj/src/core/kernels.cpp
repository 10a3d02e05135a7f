#include "core/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <numbers>

#include "core/errors.hpp"
#include "core/quadrature.hpp"
#include "core/transforms.hpp"

namespace aw {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

TimeSignal invert_spectrum(ComplexSpectrum s, const char* unit) {
  force_self_conjugate_real(s.samples);
  TimeSignal out = inverse_ft(s);
  for (double& v : out.samples) v /= kSqrt2Pi;
  out.unit = unit;
  return out;
}

void require_radius(double r) {
  if (!std::isfinite(r) || r <= 0.0)
    fail(errc::invalid_argument, "radius must be finite and > 0");
}

}  // namespace

TimeSignal kernel_k(const AttenuationModel& m, const SpectralGrid& g, double r) {
  require_radius(r);
  ComplexSpectrum s = alpha_star_grid(m, g);
  for (std::size_t k = 0; k < g.n; ++k) s.samples[k] = std::exp(-s.samples[k] * r);
  return invert_spectrum(std::move(s), "1/s");
}

TimeSignal kernel_kstar(const AttenuationModel& m, const SpectralGrid& g) {
  ComplexSpectrum s = alpha_star_grid(m, g);
  return invert_spectrum(std::move(s), "1/(m s)");
}

TimeSignal kernel_t_half(const SpectralGrid& g, double tau0) {
  if (!std::isfinite(tau0) || tau0 <= 0.0)
    fail(errc::invalid_argument, "tau0 must be finite and > 0");

  const double root_pi = std::sqrt(std::numbers::pi);
  TimeSignal out;
  out.grid = g;
  out.unit = "1/s";
  out.samples.assign(g.n, 0.0);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double t = g.time(j);
    if (std::abs(t) <= 1e-12 * g.dt) {
      // cell average over [0, dt]; s = u^2 regularizes 1/sqrt(s)
      const double a = 0.0, b = std::sqrt(g.dt);
      const double cell = integrate_adaptive(
          [&](double u) { return 2.0 * std::exp(-u * u / tau0) / (root_pi * std::sqrt(tau0)); },
          a, b);
      out.samples[j] = cell / g.dt;
    } else if (t > 0.0) {
      out.samples[j] = std::exp(-t / tau0) / (root_pi * std::sqrt(tau0 * t));
    }
  }
  return out;
}

TimeSignal green_trace(const AttenuationModel& m, const SpectralGrid& g, double r,
                       bool shifted) {
  require_radius(r);
  const double delay = r / m.c0;
  if (!shifted && delay >= g.t0 + static_cast<double>(g.n) * g.dt)
    fail(errc::unresolved_shift,
         "arrival time r/c0 lies beyond the sampled window; enlarge the window "
         "or request the delay-removed trace");

  ComplexSpectrum s = alpha_star_grid(m, g);
  const double spread = 4.0 * std::numbers::pi * r;
  for (std::size_t k = 0; k < g.n; ++k) {
    std::complex<double> v = std::exp(-s.samples[k] * r);
    if (!shifted) v *= std::exp(kI * g.omega(k) * delay);
    s.samples[k] = v / spread;
  }
  return invert_spectrum(std::move(s), "1/(m s)");
}

KernelField kernel_field(const AttenuationModel& m, const SpectralGrid& g,
                         const std::vector<double>& radii) {
  if (radii.empty()) fail(errc::invalid_argument, "kernel field needs at least one radius");
  for (double r : radii) require_radius(r);
  KernelField f;
  f.radii = radii;
  f.grid = g;
  f.values.reserve(radii.size());
  for (double r : radii) f.values.push_back(kernel_k(m, g, r).samples);
  return f;
}

double helmholtz_residual(const AttenuationModel& m, const std::vector<double>& radii,
                          const std::vector<double>& omegas, double omega_cap) {
  if (radii.size() < 5)
    fail(errc::invalid_argument, "residual stencil needs at least 5 radii");
  const double dr = radii[1] - radii[0];
  if (!(dr > 0.0)) fail(errc::invalid_argument, "radii must be strictly increasing");
  for (std::size_t i = 0; i < radii.size(); ++i) {
    require_radius(radii[i]);
    if (i > 0 && std::abs(radii[i] - radii[i - 1] - dr) > 1e-9 * dr)
      fail(errc::invalid_argument, "radii must be uniformly spaced");
  }
  if (omegas.empty()) fail(errc::invalid_argument, "need at least one frequency");

  const double spread_scale = kSqrt2Pi * 4.0 * std::numbers::pi;
  double worst = 0.0;
  bool any = false;
  for (double w : omegas) {
    require_finite(w, "omega");
    const std::complex<double> al = alpha_star(m, w);
    const std::complex<double> lambda = al - kI * w / m.c0;
    const bool keep = omega_cap > 0.0 ? std::abs(w) <= omega_cap
                                      : std::abs(lambda) * dr <= 0.5;
    if (!keep) continue;
    any = true;

    std::vector<std::complex<double>> G(radii.size());
    for (std::size_t i = 0; i < radii.size(); ++i) {
      const double r = radii[i];
      G[i] = std::exp(-al * r + kI * w * r / m.c0) / (spread_scale * r);
    }
    const std::complex<double> lam2 = lambda * lambda;
    for (std::size_t i = 1; i + 1 < radii.size(); ++i) {
      const std::complex<double> d2 = (G[i + 1] - 2.0 * G[i] + G[i - 1]) / (dr * dr);
      const std::complex<double> d1 = (G[i + 1] - G[i - 1]) / (2.0 * dr);
      const std::complex<double> lap = d2 + 2.0 / radii[i] * d1;
      worst = std::max(worst, std::abs(lap - lam2 * G[i]) / std::abs(G[i]));
    }
  }
  if (!any)
    fail(errc::invalid_argument,
         "no frequency satisfies the stencil resolution bound; tighten dr or "
         "pass an explicit frequency cap");
  return worst;
}

}  // namespace aw
