#include "core/grid.hpp"

#include <algorithm>
#include <cmath>

namespace aw {

const char* errc_name(errc c) {
  switch (c) {
    case errc::ok: return "Ok";
    case errc::invalid_argument: return "InvalidArgument";
    case errc::imaginary_leakage: return "ImaginaryLeakage";
    case errc::branch_violation: return "BranchViolation";
    case errc::unresolved_shift: return "UnresolvedShift";
    case errc::degenerate_signal: return "DegenerateSignal";
    case errc::nondecaying_integrand: return "NonDecayingIntegrand";
    case errc::out_of_window: return "OutOfWindow";
    case errc::io_failure: return "IoFailure";
  }
  return "Unknown";
}

SpectralGrid make_grid(std::size_t n, double dt, double t0) {
  if (n < 8 || (n & (n - 1)) != 0)
    fail(errc::invalid_argument, "make_grid: n must be a power of two >= 8, got " + std::to_string(n));
  if (!(dt > 0) || !std::isfinite(dt))
    fail(errc::invalid_argument, "make_grid: dt must be positive and finite");
  if (!std::isfinite(t0))
    fail(errc::invalid_argument, "make_grid: t0 must be finite");
  const double window = static_cast<double>(n) * dt;
  if (t0 > -window / 4 + 1e-12 * window)
    fail(errc::invalid_argument,
         "make_grid: t0 must be <= -n*dt/4 so the grid straddles t=0 "
         "(got t0 = " + std::to_string(t0) + ", limit " + std::to_string(-window / 4) + ")");
  SpectralGrid g;
  g.n = n;
  g.dt = dt;
  g.t0 = t0;
  g.domega = 2.0 * M_PI / window;
  return g;
}

double hermitian_defect(const ComplexSpectrum& s) {
  const std::size_t n = s.grid.n;
  if (s.samples.size() != n)
    fail(errc::invalid_argument, "hermitian_defect: sample count does not match grid");
  double scale = 0.0;
  for (const auto& z : s.samples) scale = std::max(scale, std::abs(z));
  if (scale == 0.0) return 0.0;
  double worst = std::abs(s.samples[0].imag());
  if (n % 2 == 0) worst = std::max(worst, std::abs(s.samples[n / 2].imag()));
  for (std::size_t k = 1; k < n - k; ++k)
    worst = std::max(worst, std::abs(s.samples[k] - std::conj(s.samples[n - k])));
  return worst / scale;
}

void require_finite(const std::vector<double>& v, const char* what) {
  for (double x : v)
    if (!std::isfinite(x))
      fail(errc::invalid_argument, std::string(what) + ": non-finite sample");
}

void require_finite(double v, const char* what) {
  if (!std::isfinite(v))
    fail(errc::invalid_argument, std::string(what) + ": non-finite value");
}

}  // namespace aw
