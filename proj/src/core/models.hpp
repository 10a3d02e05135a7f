#pragma once

#include <complex>
#include <optional>
#include <string>

#include <json.hpp>

#include "core/grid.hpp"

namespace aw {

enum class ModelKind {
  PowerLawKK,
  Szabo,
  ThermoViscous,
  CausalThermoViscous,
  CausalGamma,
  NoAttenuation,
};

const char* kind_name(ModelKind k);
std::optional<ModelKind> kind_from_name(const std::string& name);

enum class Causality { Causal, NonCausal };
inline const char* causality_name(Causality c) {
  return c == Causality::Causal ? "Causal" : "NonCausal";
}

struct CausalityExpectation {
  Causality expected;
  std::string reason;
};

// Tagged union of the model families; unused parameters stay at their
// defaults. Immutable after validation, safe to share across threads.
struct AttenuationModel {
  ModelKind kind = ModelKind::NoAttenuation;
  double gamma = 0.0;   // power-law / generalized-family exponent
  double alpha0 = 0.0;  // power-law magnitude (s^gamma / m)
  double a0 = 0.0;      // linear-term coefficient (s/m), PowerLawKK only
  double tau0 = 0.0;    // relaxation time (s)
  double alpha1 = 0.0;  // causal-variant magnitude (dimensionless)
  double c0 = 1.0;      // reference sound speed (m/s)
};

// Parameter rules: c0 > 0; alpha0, tau0, alpha1 >= 0; PowerLawKK/Szabo need
// gamma > 0 and gamma not an integer (the 1/cos(gamma*pi/2) scale blows up
// at odd integers and the fractional power degenerates at the others);
// CausalGamma needs gamma in (1, 2].
void validate_model(const AttenuationModel& m);

AttenuationModel power_law_kk(double gamma, double alpha0, double a0 = 0.0, double c0 = 1.0);
AttenuationModel szabo(double gamma, double alpha0, double c0 = 1.0);
AttenuationModel thermo_viscous(double tau0, double c0 = 1.0);
AttenuationModel causal_thermo_viscous(double alpha1, double tau0, double c0 = 1.0);
AttenuationModel causal_gamma(double gamma, double alpha1, double tau0, double c0 = 1.0);
AttenuationModel no_attenuation(double c0 = 1.0);

// Complex attenuation coefficient alpha*(omega); hermitian in omega.
std::complex<double> alpha_star(const AttenuationModel& m, double omega);

// Analytic derivative d^order/domega^order of alpha*. order 0 and 1 for all
// families, any order for PowerLawKK. Returns 0 at omega = 0 (odd-symmetry
// convention; callers exclude the DC neighborhood).
std::complex<double> alpha_star_derivative(const AttenuationModel& m, double omega, int order);

// beta*(r, omega) = alpha*(omega) * r.
std::complex<double> beta_star(const AttenuationModel& m, double r, double omega);

// Attenuation law alpha(omega) = Re(alpha*). For PowerLawKK the analytic
// form alpha0*|omega|^gamma is returned directly.
double attenuation_law(const AttenuationModel& m, double omega);

CausalityExpectation expected_causality(const AttenuationModel& m);

// alpha* sampled over the whole grid (hermitian). For the square-root
// families the sqrt argument is scanned along each same-sign-omega run; a
// discontinuous crossing of the principal cut between adjacent samples
// raises BranchViolation (grid too coarse for the branch to be tracked).
ComplexSpectrum alpha_star_grid(const AttenuationModel& m, const SpectralGrid& g);

// JSON object {kind, gamma, alpha0, a0, tau0, alpha1, c0}; unknown fields
// rejected, numeric fields optional (defaults above), result validated.
nlohmann::json model_to_json(const AttenuationModel& m);
AttenuationModel model_from_json(const nlohmann::json& j);
std::string model_to_json_string(const AttenuationModel& m);
AttenuationModel model_from_json_string(const std::string& text);

}  // namespace aw
