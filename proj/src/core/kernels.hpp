#pragma once

#include <vector>

#include "core/grid.hpp"
#include "core/models.hpp"

namespace aw {

// Time-domain attenuation kernel at propagation distance r:
//   K(r, t) = (1/sqrt(2*pi)) * InvFT{ exp(-alpha*(omega) * r) }.
// The self-conjugate bins are forced real before inversion; the result must
// pass the realness check of the inverse transform.
TimeSignal kernel_k(const AttenuationModel& m, const SpectralGrid& g, double r);

// Rate kernel K*(t) = (1/sqrt(2*pi)) * InvFT{ alpha*(omega) }, the
// logarithmic-in-r generator of the kernel family: K(r) is the r-fold
// exponential of -K* under convolution.
TimeSignal kernel_kstar(const AttenuationModel& m, const SpectralGrid& g);

// Closed-form relaxation kernel with spectrum (1 - i*tau0*omega)^(-1/2):
//   K(t) = H(t) * exp(-t/tau0) / (Gamma(1/2) * sqrt(tau0 * t)),
// sampled pointwise except the singular t = 0 cell, which carries the cell
// average (1/dt) * Int_0^dt K(s) ds evaluated by adaptive quadrature after
// the substitution s = u^2 removes the integrable singularity.
TimeSignal kernel_t_half(const SpectralGrid& g, double tau0);

// Point-source response at radius r (free space, 1/(4*pi*r) spreading).
// shifted = true subtracts the r/c0 travel delay (retarded frame); with
// shifted = false the physical arrival must fit inside the window or
// UnresolvedShift is raised.
TimeSignal green_trace(const AttenuationModel& m, const SpectralGrid& g, double r,
                       bool shifted);

struct KernelField {
  std::vector<double> radii;
  SpectralGrid grid;
  std::vector<std::vector<double>> values;  // values[i][j] = K(radii[i], t_j)
};

KernelField kernel_field(const AttenuationModel& m, const SpectralGrid& g,
                         const std::vector<double>& radii);

// Max over interior radii and admissible frequencies of the relative
// defect |Lap G - lambda^2 G| / |G| for the spherically symmetric
// frequency-domain response G = exp(-alpha* r + i omega r / c0) /
// (sqrt(2 pi) 4 pi r), with lambda = alpha* - i omega / c0 and the radial
// Laplacian taken by second-order central differences on >= 5 uniformly
// spaced radii. Frequencies are restricted to |lambda| * dr <= 0.5 unless a
// positive omega_cap is given, in which case |omega| <= omega_cap is used.
double helmholtz_residual(const AttenuationModel& m, const std::vector<double>& radii,
                          const std::vector<double>& omegas, double omega_cap = 0.0);

}  // namespace aw
