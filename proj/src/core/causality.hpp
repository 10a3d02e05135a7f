#pragma once

#include <vector>

#include "core/grid.hpp"
#include "core/models.hpp"

namespace aw {

struct CausalityReport {
  double metric = 0.0;
  double epsilon = 0.0;
  Causality classification = Causality::Causal;
  double threshold = 0.0;
  bool windowed = false;
  double truncation_bound = 0.0;  // |spectrum at Nyquist| / max |spectrum|
};

struct FrontFit {
  std::vector<double> radii;
  std::vector<double> arrivals;
  double slope = 0.0;      // s/m
  double intercept = 0.0;  // s
  double r_squared = 0.0;
  double front_speed = 0.0;  // m/s, = 1/slope
};

// Fraction of signal energy strictly before t = -epsilon. epsilon must be
// >= 2*dt (FFT ringing guard); 4*dt is the usual choice. amplitude_norm
// switches to the max-|f| ratio for sensitivity studies.
double noncausality_metric(const TimeSignal& f, double epsilon, bool amplitude_norm = false);

// NonCausal iff metric > threshold; threshold must lie in (0, 0.5).
Causality classify(double metric, double threshold = 1e-3);

struct ReportOptions {
  double epsilon = -1.0;  // < 0 selects the default guard 4*dt
  double threshold = 1e-3;
  bool tukey_window = false;  // 10% cosine taper; marks the report windowed
  bool amplitude_norm = false;
};

CausalityReport causality_report(const TimeSignal& f, const ReportOptions& opt = {});

// Earliest time at which cumulative energy from the left crosses
// level * total energy, with linear interpolation between samples. The
// trace must carry its physical delay (an unshifted response).
double front_arrival(const TimeSignal& trace, double level = 1e-4);

// Unshifted point-source responses at >= 4 radii, front_arrival on each,
// least-squares line arrival = slope * r + intercept. r_squared is 1 when
// the arrivals are exactly collinear (zero total variance included).
FrontFit travel_time_fit(const AttenuationModel& m, const std::vector<double>& radii,
                         const SpectralGrid& g, double level = 1e-4);

// Dispersion-relation residual of the analytic derivative d^order alpha*:
//   || (Im a - H{Re a}) - mean ||_2 / || Im a ||_2
// over the band 4*domega <= |omega| <= band_frac * omega_max, with a single
// subtraction constant removed (the one-parameter dispersion offset). The
// edge check runs on the Cauchy-weighted integrand |a(omega)/omega|: if its
// magnitude near the grid edge exceeds 10% of the interior maximum the
// subtracted dispersion integral does not converge on this grid and
// NonDecayingIntegrand is raised.
double kk_residual(const AttenuationModel& m, const SpectralGrid& g, int deriv_order,
                   double band_frac = 0.5);

}  // namespace aw
