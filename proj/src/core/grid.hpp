#pragma once

#include <complex>
#include <cstddef>
#include <string>
#include <vector>

#include "core/errors.hpp"

namespace aw {

// Uniform time lattice t_j = t0 + j*dt paired with the angular-frequency
// lattice omega_k in FFT order (k*domega for k < n/2, (k-n)*domega above).
// domega*n*dt = 2*pi exactly, so the transform pair is unitary.
struct SpectralGrid {
  std::size_t n = 0;
  double dt = 0;
  double t0 = 0;
  double domega = 0;

  double time(std::size_t j) const { return t0 + static_cast<double>(j) * dt; }
  double omega(std::size_t k) const {
    return (k < n / 2) ? static_cast<double>(k) * domega
                       : (static_cast<double>(k) - static_cast<double>(n)) * domega;
  }
  double omega_max() const { return static_cast<double>(n / 2) * domega; }
  double window() const { return static_cast<double>(n) * dt; }
  double time_last() const { return t0 + static_cast<double>(n - 1) * dt; }

  bool operator==(const SpectralGrid&) const = default;
};

// Validates: n >= 8 and a power of two, dt > 0, and t0 <= -n*dt/4 so at
// least a quarter of the window sits at t < 0 (negative-time mass must be
// observable, never aliased).
SpectralGrid make_grid(std::size_t n, double dt, double t0);

struct TimeSignal {
  SpectralGrid grid;
  std::vector<double> samples;
  std::string unit;
};

struct ComplexSpectrum {
  SpectralGrid grid;
  std::vector<std::complex<double>> samples;
  bool hermitian = false;
};

// Worst pairing defect |s[k] - conj(s[n-k])| (plus the imaginary content of
// the two self-conjugate bins), relative to the spectrum's max magnitude.
double hermitian_defect(const ComplexSpectrum& s);

void require_finite(const std::vector<double>& v, const char* what);
void require_finite(double v, const char* what);

inline constexpr double kSqrt2Pi = 2.5066282746310002;  // sqrt(2*pi)

}  // namespace aw
