#pragma once

#include "core/grid.hpp"

namespace aw {

// Discrete realization of the unitary pair
//   forward(f)(omega) = (1/sqrt(2*pi)) * Int exp(+i*omega*t) f(t) dt
//   inverse(s)(t)     = (1/sqrt(2*pi)) * Int exp(-i*omega*t) s(omega) domega
// on the grid, with the t0 offset applied as an exact phase ramp. A delay of
// the signal by a multiplies the spectrum by exp(+i*a*omega); the sign pair
// is pinned by the delta-shift identity delta(t-a) = inverse{exp(i*a*omega)}/sqrt(2*pi)
// and verified against a direct-quadrature oracle in the test suite.
std::vector<std::complex<double>> forward_ft_c(const SpectralGrid& g,
                                               const std::vector<std::complex<double>>& f);
std::vector<std::complex<double>> inverse_ft_c(const SpectralGrid& g,
                                               const std::vector<std::complex<double>>& s);

ComplexSpectrum forward_ft(const TimeSignal& f);

// For hermitian-flagged spectra the imaginary residue of the inverse is
// checked (< 1e-8 of the real norm, else ImaginaryLeakage) and discarded.
// Non-hermitian spectra return the real part with no check.
TimeSignal inverse_ft(const ComplexSpectrum& s);

// Zero the imaginary part of the two self-conjugate bins (omega = 0 and the
// Nyquist bin). Spectra that have not fully decayed at the Nyquist frequency
// park unpaired imaginary content there; forcing the bins real keeps the
// inverse transform of a hermitian spectrum real to rounding.
void force_self_conjugate_real(std::vector<std::complex<double>>& s);

// Discrete Hilbert transform along the frequency axis, realized through
// H{g} = real(-i * forward(sgn(t) * inverse(g))). The single DC mode is
// annihilated (sgn(0) = 0 removes the t=0 sample, whose coefficient is the
// mean of g), so the involution H(H(g)) = -g holds on mean-zero inputs.
// Edge truncation is the caller's responsibility: g should decay toward the
// grid edges.
std::vector<double> hilbert(const SpectralGrid& g, const std::vector<double>& s);

// Principal-branch (-i*omega)^gamma = |omega|^gamma * exp(-i*gamma*(pi/2)*sgn(omega));
// 0 at omega=0 for gamma>0, 1 for gamma=0, error for gamma<0 at omega=0.
std::complex<double> frac_power(double omega, double gamma);

}  // namespace aw
