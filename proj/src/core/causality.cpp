#include "core/causality.hpp"

#include <algorithm>
#include <cmath>
#include <complex>
#include <limits>
#include <numbers>

#include "core/errors.hpp"
#include "core/kernels.hpp"
#include "core/transforms.hpp"

namespace aw {

namespace {

constexpr double kEnergyFloor = 1e-300;

void check_epsilon(const TimeSignal& f, double epsilon) {
  if (!std::isfinite(epsilon) || epsilon < 2.0 * f.grid.dt)
    fail(errc::invalid_argument, "epsilon must be >= 2*dt");
}

std::vector<double> tukey_window(std::size_t n, double taper) {
  std::vector<double> w(n, 1.0);
  const double edge = taper / 2.0;
  for (std::size_t j = 0; j < n; ++j) {
    const double x = n > 1 ? static_cast<double>(j) / static_cast<double>(n - 1) : 0.0;
    if (x < edge)
      w[j] = 0.5 * (1.0 + std::cos(std::numbers::pi * (x / edge - 1.0)));
    else if (x > 1.0 - edge)
      w[j] = 0.5 * (1.0 + std::cos(std::numbers::pi * ((x - 1.0 + edge) / edge)));
  }
  return w;
}

}  // namespace

double noncausality_metric(const TimeSignal& f, double epsilon, bool amplitude_norm) {
  check_epsilon(f, epsilon);
  if (f.samples.size() != f.grid.n)
    fail(errc::invalid_argument, "signal length does not match its grid");

  if (amplitude_norm) {
    double neg = 0.0, all = 0.0;
    for (std::size_t j = 0; j < f.grid.n; ++j) {
      const double a = std::abs(f.samples[j]);
      all = std::max(all, a);
      if (f.grid.time(j) < -epsilon) neg = std::max(neg, a);
    }
    if (all < kEnergyFloor)
      fail(errc::degenerate_signal, "signal amplitude below representable floor");
    return neg / all;
  }

  double neg = 0.0, total = 0.0;
  for (std::size_t j = 0; j < f.grid.n; ++j) {
    const double e = f.samples[j] * f.samples[j];
    total += e;
    if (f.grid.time(j) < -epsilon) neg += e;
  }
  if (total < kEnergyFloor)
    fail(errc::degenerate_signal, "signal energy below representable floor");
  return neg / total;
}

Causality classify(double metric, double threshold) {
  if (!(threshold > 0.0 && threshold < 0.5))
    fail(errc::invalid_argument, "threshold must lie in (0, 0.5)");
  if (!std::isfinite(metric) || metric < 0.0)
    fail(errc::invalid_argument, "metric must be finite and >= 0");
  return metric > threshold ? Causality::NonCausal : Causality::Causal;
}

CausalityReport causality_report(const TimeSignal& f, const ReportOptions& opt) {
  const double eps = opt.epsilon < 0.0 ? 4.0 * f.grid.dt : opt.epsilon;

  TimeSignal work = f;
  if (opt.tukey_window) {
    const std::vector<double> w = tukey_window(f.grid.n, 0.1);
    for (std::size_t j = 0; j < f.grid.n; ++j) work.samples[j] *= w[j];
  }

  CausalityReport rep;
  rep.metric = noncausality_metric(work, eps, opt.amplitude_norm);
  rep.epsilon = eps;
  rep.threshold = opt.threshold;
  rep.classification = classify(rep.metric, opt.threshold);
  rep.windowed = opt.tukey_window;

  const ComplexSpectrum s = forward_ft(work);
  double peak = 0.0;
  for (const auto& v : s.samples) peak = std::max(peak, std::abs(v));
  rep.truncation_bound = peak > 0.0 ? std::abs(s.samples[f.grid.n / 2]) / peak : 0.0;
  return rep;
}

double front_arrival(const TimeSignal& trace, double level) {
  if (!(level > 0.0 && level <= 0.1))
    fail(errc::invalid_argument, "level must lie in (0, 0.1]");
  if (trace.samples.size() != trace.grid.n)
    fail(errc::invalid_argument, "signal length does not match its grid");

  double total = 0.0;
  for (double v : trace.samples) total += v * v;
  if (total < kEnergyFloor)
    fail(errc::degenerate_signal, "signal energy below representable floor");

  const double target = level * total;
  double cum = 0.0, prev = 0.0;
  for (std::size_t j = 0; j < trace.grid.n; ++j) {
    cum += trace.samples[j] * trace.samples[j];
    if (cum >= target) {
      if (j == 0) return trace.grid.time(0);
      return trace.grid.time(j - 1) + (target - prev) / (cum - prev) * trace.grid.dt;
    }
    prev = cum;
  }
  return trace.grid.time_last();
}

FrontFit travel_time_fit(const AttenuationModel& m, const std::vector<double>& radii,
                         const SpectralGrid& g, double level) {
  if (radii.size() < 4)
    fail(errc::invalid_argument, "travel-time fit needs at least 4 radii");

  FrontFit fit;
  fit.radii = radii;
  fit.arrivals.reserve(radii.size());
  for (double r : radii)
    fit.arrivals.push_back(front_arrival(green_trace(m, g, r, /*shifted=*/false), level));

  const double nr = static_cast<double>(radii.size());
  double rbar = 0.0, abar = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    rbar += radii[i];
    abar += fit.arrivals[i];
  }
  rbar /= nr;
  abar /= nr;
  double sxx = 0.0, sxy = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    sxx += (radii[i] - rbar) * (radii[i] - rbar);
    sxy += (radii[i] - rbar) * (fit.arrivals[i] - abar);
  }
  if (sxx <= 0.0) fail(errc::invalid_argument, "radii must not be all equal");
  fit.slope = sxy / sxx;
  fit.intercept = abar - fit.slope * rbar;

  double ss_res = 0.0, ss_tot = 0.0;
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const double pred = fit.slope * radii[i] + fit.intercept;
    ss_res += (fit.arrivals[i] - pred) * (fit.arrivals[i] - pred);
    ss_tot += (fit.arrivals[i] - abar) * (fit.arrivals[i] - abar);
  }
  fit.r_squared = ss_tot > 0.0 ? 1.0 - ss_res / ss_tot : 1.0;
  fit.front_speed = fit.slope != 0.0 ? 1.0 / fit.slope
                                     : std::numeric_limits<double>::infinity();
  return fit;
}

double kk_residual(const AttenuationModel& m, const SpectralGrid& g, int deriv_order,
                   double band_frac) {
  if (!(band_frac > 0.0 && band_frac <= 1.0))
    fail(errc::invalid_argument, "band fraction must lie in (0, 1]");

  std::vector<std::complex<double>> der(g.n);
  double peak = 0.0;
  for (std::size_t k = 0; k < g.n; ++k) {
    der[k] = alpha_star_derivative(m, g.omega(k), deriv_order);
    peak = std::max(peak, std::abs(der[k]));
  }
  if (peak < kEnergyFloor)
    fail(errc::degenerate_signal, "derivative vanishes identically on this grid");

  // Convergence of the subtracted dispersion integral needs the weighted
  // integrand a(omega)/omega to decay toward the grid edge.
  const double wmax = g.omega_max();
  double edge = 0.0, interior = 0.0;
  for (std::size_t k = 0; k < g.n; ++k) {
    const double w = g.omega(k);
    if (w == 0.0) continue;
    const double u = std::abs(der[k]) / std::abs(w);
    if (std::abs(w) >= 0.9 * wmax)
      edge = std::max(edge, u);
    else
      interior = std::max(interior, u);
  }
  if (edge > 0.1 * interior)
    fail(errc::nondecaying_integrand,
         "weighted integrand does not decay toward the grid edge; increase the "
         "derivative order or the frequency range");

  std::vector<double> re(g.n);
  for (std::size_t k = 0; k < g.n; ++k) re[k] = der[k].real();
  const std::vector<double> h = hilbert(g, re);

  std::vector<double> dev;
  std::vector<double> im;
  dev.reserve(g.n);
  im.reserve(g.n);
  for (std::size_t k = 0; k < g.n; ++k) {
    const double w = std::abs(g.omega(k));
    if (w < 4.0 * g.domega || w > band_frac * wmax) continue;
    dev.push_back(der[k].imag() - h[k]);
    im.push_back(der[k].imag());
  }
  if (dev.size() < 16)
    fail(errc::invalid_argument, "band too narrow: fewer than 16 samples");

  double mean = 0.0;
  for (double d : dev) mean += d;
  mean /= static_cast<double>(dev.size());
  double num = 0.0, den = 0.0;
  for (std::size_t i = 0; i < dev.size(); ++i) {
    num += (dev[i] - mean) * (dev[i] - mean);
    den += im[i] * im[i];
  }
  if (den < kEnergyFloor)
    fail(errc::degenerate_signal, "imaginary part vanishes on the band");
  return std::sqrt(num / den);
}

}  // namespace aw
