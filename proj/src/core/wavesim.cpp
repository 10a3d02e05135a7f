#include "core/wavesim.hpp"

#include <cmath>
#include <complex>
#include <numbers>

#include "core/errors.hpp"
#include "core/transforms.hpp"

namespace aw {

namespace {
constexpr std::complex<double> kI{0.0, 1.0};
}

SourcePulse make_source(const SpectralGrid& g, std::vector<double> samples,
                        std::string description) {
  if (samples.size() != g.n)
    fail(errc::invalid_argument, "source length does not match the grid");
  for (std::size_t j = 0; j < g.n; ++j) {
    require_finite(samples[j], "source sample");
    if (g.time(j) < 0.0 && samples[j] != 0.0)
      fail(errc::invalid_argument, "source must vanish before t = 0");
  }
  return SourcePulse{g, std::move(samples), std::move(description)};
}

SourcePulse gaussian_source(const SpectralGrid& g, double center, double width) {
  if (!std::isfinite(center) || center <= 0.0)
    fail(errc::invalid_argument, "pulse center must be > 0");
  if (!std::isfinite(width) || width <= 0.0)
    fail(errc::invalid_argument, "pulse width must be > 0");
  if (center >= g.time_last())
    fail(errc::invalid_argument, "pulse center lies beyond the window");

  std::vector<double> s(g.n, 0.0);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double t = g.time(j);
    if (t < 0.0) continue;
    const double u = (t - center) / width;
    s[j] = std::exp(-0.5 * u * u);
  }
  return make_source(g, std::move(s),
                     "gaussian(center=" + std::to_string(center) +
                         ", width=" + std::to_string(width) + ")");
}

PressureField propagate(const AttenuationModel& m, const SourcePulse& src,
                        const std::vector<double>& radii) {
  if (radii.empty()) fail(errc::invalid_argument, "need at least one radius");
  const SpectralGrid& g = src.grid;
  for (double r : radii) {
    if (!std::isfinite(r) || r <= 0.0)
      fail(errc::invalid_argument, "radius must be finite and > 0");
    if (r / m.c0 >= g.t0 + static_cast<double>(g.n) * g.dt)
      fail(errc::unresolved_shift,
           "arrival time r/c0 lies beyond the sampled window");
  }

  TimeSignal f;
  f.grid = g;
  f.samples = src.samples;
  const ComplexSpectrum fs = forward_ft(f);
  const ComplexSpectrum al = alpha_star_grid(m, g);

  PressureField field;
  field.grid = g;
  field.radii = radii;
  field.model = m;
  field.values.reserve(radii.size());

  ComplexSpectrum s;
  s.grid = g;
  s.hermitian = true;
  s.samples.resize(g.n);
  for (double r : radii) {
    const double spread = 4.0 * std::numbers::pi * r;
    for (std::size_t k = 0; k < g.n; ++k) {
      s.samples[k] = std::exp(-al.samples[k] * r) *
                     std::exp(kI * g.omega(k) * (r / m.c0)) * fs.samples[k] / spread;
    }
    force_self_conjugate_real(s.samples);
    field.values.push_back(inverse_ft(s).samples);
  }
  return field;
}

std::vector<std::pair<double, double>> snapshot_rows(
    const SpectralGrid& g, const std::vector<double>& radii,
    const std::vector<std::vector<double>>& values, double t) {
  if (!std::isfinite(t) || t < g.t0 || t > g.time_last())
    fail(errc::out_of_window, "snapshot time lies outside the sampled window");

  const double x = (t - g.t0) / g.dt;
  std::size_t j0 = static_cast<std::size_t>(std::floor(x));
  if (j0 >= g.n - 1) j0 = g.n - 2;
  const double w = x - static_cast<double>(j0);

  std::vector<std::pair<double, double>> out;
  out.reserve(radii.size());
  for (std::size_t i = 0; i < radii.size(); ++i) {
    const auto& row = values[i];
    out.emplace_back(radii[i], (1.0 - w) * row[j0] + w * row[j0 + 1]);
  }
  return out;
}

std::vector<std::pair<double, double>> snapshot(const PressureField& field, double t) {
  return snapshot_rows(field.grid, field.radii, field.values, t);
}

}  // namespace aw
