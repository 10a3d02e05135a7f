#include "core/transforms.hpp"

#include <fftw3.h>

#include <cmath>
#include <mutex>
#include <unordered_map>

namespace aw {

namespace {


// FFTW planner is not thread-safe; execution is. Plans are cached per size
// with FFTW_UNALIGNED so they run on any caller buffer.
struct PlanPair {
  fftw_plan fwd = nullptr;  // FFTW_FORWARD:  sum f_j exp(-2*pi*i*j*k/n)
  fftw_plan bwd = nullptr;  // FFTW_BACKWARD: sum f_j exp(+2*pi*i*j*k/n)
};

PlanPair plans_for(std::size_t n) {
  static std::mutex mu;
  static std::unordered_map<std::size_t, PlanPair> cache;
  std::lock_guard<std::mutex> lock(mu);
  auto it = cache.find(n);
  if (it != cache.end()) return it->second;
  std::vector<std::complex<double>> a(n), b(n);
  PlanPair p;
  p.fwd = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
                           reinterpret_cast<fftw_complex*>(b.data()), FFTW_FORWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  p.bwd = fftw_plan_dft_1d(static_cast<int>(n), reinterpret_cast<fftw_complex*>(a.data()),
                           reinterpret_cast<fftw_complex*>(b.data()), FFTW_BACKWARD,
                           FFTW_ESTIMATE | FFTW_UNALIGNED);
  if (!p.fwd || !p.bwd) fail(errc::invalid_argument, "fftw plan creation failed");
  cache.emplace(n, p);
  return p;
}

void run_plan(fftw_plan plan, const std::vector<std::complex<double>>& in,
              std::vector<std::complex<double>>& out) {
  out.resize(in.size());
  fftw_execute_dft(plan,
                   reinterpret_cast<fftw_complex*>(const_cast<std::complex<double>*>(in.data())),
                   reinterpret_cast<fftw_complex*>(out.data()));
}

}  // namespace

std::vector<std::complex<double>> forward_ft_c(const SpectralGrid& g,
                                               const std::vector<std::complex<double>>& f) {
  if (f.size() != g.n) fail(errc::invalid_argument, "forward_ft: sample count does not match grid");
  std::vector<std::complex<double>> out;
  run_plan(plans_for(g.n).bwd, f, out);
  const double scale = g.dt / kSqrt2Pi;
  for (std::size_t k = 0; k < g.n; ++k)
    out[k] *= scale * std::polar(1.0, g.omega(k) * g.t0);
  return out;
}

std::vector<std::complex<double>> inverse_ft_c(const SpectralGrid& g,
                                               const std::vector<std::complex<double>>& s) {
  if (s.size() != g.n) fail(errc::invalid_argument, "inverse_ft: sample count does not match grid");
  std::vector<std::complex<double>> ramped(g.n);
  for (std::size_t k = 0; k < g.n; ++k)
    ramped[k] = s[k] * std::polar(1.0, -g.omega(k) * g.t0);
  std::vector<std::complex<double>> out;
  run_plan(plans_for(g.n).fwd, ramped, out);
  const double scale = g.domega / kSqrt2Pi;
  for (auto& z : out) z *= scale;
  return out;
}

ComplexSpectrum forward_ft(const TimeSignal& f) {
  require_finite(f.samples, "forward_ft");
  std::vector<std::complex<double>> cf(f.samples.begin(), f.samples.end());
  ComplexSpectrum s;
  s.grid = f.grid;
  s.samples = forward_ft_c(f.grid, cf);
  s.hermitian = true;
  return s;
}

TimeSignal inverse_ft(const ComplexSpectrum& s) {
  auto u = inverse_ft_c(s.grid, s.samples);
  if (s.hermitian) {
    double re2 = 0.0, im2 = 0.0;
    for (const auto& z : u) {
      re2 += z.real() * z.real();
      im2 += z.imag() * z.imag();
    }
    const double re_norm = std::sqrt(re2), im_norm = std::sqrt(im2);
    if (im_norm > 1e-8 * re_norm)
      fail(errc::imaginary_leakage,
           "inverse_ft: hermitian spectrum produced imaginary residue " +
               std::to_string(im_norm / (re_norm > 0 ? re_norm : 1.0)) +
               " relative (symmetry or branch bug upstream)");
  }
  TimeSignal out;
  out.grid = s.grid;
  out.samples.resize(s.grid.n);
  for (std::size_t j = 0; j < s.grid.n; ++j) out.samples[j] = u[j].real();
  return out;
}

void force_self_conjugate_real(std::vector<std::complex<double>>& s) {
  if (s.empty()) return;
  s[0] = s[0].real();
  if (s.size() % 2 == 0) s[s.size() / 2] = s[s.size() / 2].real();
}

std::vector<double> hilbert(const SpectralGrid& g, const std::vector<double>& s) {
  require_finite(s, "hilbert");
  std::vector<std::complex<double>> cs(s.begin(), s.end());
  auto u = inverse_ft_c(g, cs);
  for (std::size_t j = 0; j < g.n; ++j) {
    const double t = g.time(j);
    const double sgn = (t > 0) - (t < 0);
    u[j] *= sgn;
  }
  auto v = forward_ft_c(g, u);
  std::vector<double> out(g.n);
  for (std::size_t k = 0; k < g.n; ++k) out[k] = v[k].imag();  // real(-i*v) = imag(v)
  return out;
}

std::complex<double> frac_power(double omega, double gamma) {
  if (!std::isfinite(omega) || !std::isfinite(gamma))
    fail(errc::invalid_argument, "frac_power: non-finite argument");
  if (omega == 0.0) {
    if (gamma > 0) return 0.0;
    if (gamma == 0) return 1.0;
    fail(errc::invalid_argument, "frac_power: pole at omega=0 for negative exponent");
  }
  const double mag = std::pow(std::abs(omega), gamma);
  const double sgn = omega > 0 ? 1.0 : -1.0;
  return std::polar(mag, -gamma * (M_PI / 2) * sgn);
}

}  // namespace aw
