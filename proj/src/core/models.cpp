#include "core/models.hpp"

#include <cmath>
#include <numbers>

#include "core/errors.hpp"
#include "core/transforms.hpp"

namespace aw {

namespace {

constexpr std::complex<double> kI{0.0, 1.0};

bool is_integer(double x) { return std::isfinite(x) && x == std::floor(x); }

double tilde_alpha0(const AttenuationModel& m) {
  return m.alpha0 / std::cos(m.gamma * std::numbers::pi / 2.0);
}

void require_nonneg(double v, const char* name) {
  if (!std::isfinite(v) || v < 0.0)
    fail(errc::invalid_argument, std::string(name) + " must be finite and >= 0");
}

}  // namespace

const char* kind_name(ModelKind k) {
  switch (k) {
    case ModelKind::PowerLawKK: return "PowerLawKK";
    case ModelKind::Szabo: return "Szabo";
    case ModelKind::ThermoViscous: return "ThermoViscous";
    case ModelKind::CausalThermoViscous: return "CausalThermoViscous";
    case ModelKind::CausalGamma: return "CausalGamma";
    case ModelKind::NoAttenuation: return "NoAttenuation";
  }
  return "?";
}

std::optional<ModelKind> kind_from_name(const std::string& name) {
  for (ModelKind k : {ModelKind::PowerLawKK, ModelKind::Szabo, ModelKind::ThermoViscous,
                      ModelKind::CausalThermoViscous, ModelKind::CausalGamma,
                      ModelKind::NoAttenuation}) {
    if (name == kind_name(k)) return k;
  }
  return std::nullopt;
}

void validate_model(const AttenuationModel& m) {
  if (!std::isfinite(m.c0) || m.c0 <= 0.0)
    fail(errc::invalid_argument, "c0 must be finite and > 0");
  require_nonneg(m.alpha0, "alpha0");
  require_nonneg(m.tau0, "tau0");
  require_nonneg(m.alpha1, "alpha1");
  if (!std::isfinite(m.gamma)) fail(errc::invalid_argument, "gamma must be finite");
  if (!std::isfinite(m.a0)) fail(errc::invalid_argument, "a0 must be finite");

  switch (m.kind) {
    case ModelKind::PowerLawKK:
    case ModelKind::Szabo:
      if (m.gamma <= 0.0)
        fail(errc::invalid_argument, "gamma must be > 0 for this family");
      if (is_integer(m.gamma))
        fail(errc::invalid_argument,
             "integer gamma is outside the admissible exponent set for this family");
      break;
    case ModelKind::CausalGamma:
      if (!(m.gamma > 1.0 && m.gamma <= 2.0))
        fail(errc::invalid_argument, "gamma must lie in (1, 2] for CausalGamma");
      break;
    case ModelKind::ThermoViscous:
    case ModelKind::CausalThermoViscous:
    case ModelKind::NoAttenuation:
      break;
  }
}

AttenuationModel power_law_kk(double gamma, double alpha0, double a0, double c0) {
  AttenuationModel m;
  m.kind = ModelKind::PowerLawKK;
  m.gamma = gamma;
  m.alpha0 = alpha0;
  m.a0 = a0;
  m.c0 = c0;
  validate_model(m);
  return m;
}

AttenuationModel szabo(double gamma, double alpha0, double c0) {
  AttenuationModel m;
  m.kind = ModelKind::Szabo;
  m.gamma = gamma;
  m.alpha0 = alpha0;
  m.c0 = c0;
  validate_model(m);
  return m;
}

AttenuationModel thermo_viscous(double tau0, double c0) {
  AttenuationModel m;
  m.kind = ModelKind::ThermoViscous;
  m.tau0 = tau0;
  m.c0 = c0;
  validate_model(m);
  return m;
}

AttenuationModel causal_thermo_viscous(double alpha1, double tau0, double c0) {
  AttenuationModel m;
  m.kind = ModelKind::CausalThermoViscous;
  m.alpha1 = alpha1;
  m.tau0 = tau0;
  m.c0 = c0;
  validate_model(m);
  return m;
}

AttenuationModel causal_gamma(double gamma, double alpha1, double tau0, double c0) {
  AttenuationModel m;
  m.kind = ModelKind::CausalGamma;
  m.gamma = gamma;
  m.alpha1 = alpha1;
  m.tau0 = tau0;
  m.c0 = c0;
  validate_model(m);
  return m;
}

AttenuationModel no_attenuation(double c0) {
  AttenuationModel m;
  m.kind = ModelKind::NoAttenuation;
  m.c0 = c0;
  validate_model(m);
  return m;
}

namespace {

// Square-root argument for the families that carry one; the principal
// branch is taken everywhere, which stays on the physical sheet as long as
// the argument does not jump across the negative real axis between
// neighboring grid samples (checked in alpha_star_grid).
std::complex<double> sqrt_argument(const AttenuationModel& m, double omega) {
  switch (m.kind) {
    case ModelKind::Szabo:
      return std::complex<double>(-omega * omega, 0.0) +
             2.0 * tilde_alpha0(m) * m.c0 * frac_power(omega, m.gamma + 1.0);
    case ModelKind::ThermoViscous:
    case ModelKind::CausalThermoViscous:
      return {1.0, -m.tau0 * omega};
    case ModelKind::CausalGamma:
      return 1.0 + frac_power(m.tau0 * omega, m.gamma - 1.0);
    default:
      return {1.0, 0.0};
  }
}

}  // namespace

std::complex<double> alpha_star(const AttenuationModel& m, double omega) {
  switch (m.kind) {
    case ModelKind::PowerLawKK:
      return tilde_alpha0(m) * frac_power(omega, m.gamma) + m.a0 * kI * omega;
    case ModelKind::Szabo: {
      if (m.alpha0 == 0.0) return 0.0;  // dissipationless limit of the root
      const std::complex<double> root = std::sqrt(sqrt_argument(m, omega));
      return kI * omega / m.c0 + root / m.c0;
    }
    case ModelKind::ThermoViscous: {
      const std::complex<double> root = std::sqrt(sqrt_argument(m, omega));
      return kI * omega / m.c0 - kI * omega / (m.c0 * root);
    }
    case ModelKind::CausalThermoViscous: {
      const std::complex<double> root = std::sqrt(sqrt_argument(m, omega));
      return -m.alpha1 * kI * omega / (m.c0 * root);
    }
    case ModelKind::CausalGamma: {
      const std::complex<double> root = std::sqrt(sqrt_argument(m, omega));
      return -m.alpha1 * kI * omega / (m.c0 * root);
    }
    case ModelKind::NoAttenuation:
      return 0.0;
  }
  return 0.0;
}

std::complex<double> alpha_star_derivative(const AttenuationModel& m, double omega, int order) {
  if (order < 0) fail(errc::invalid_argument, "derivative order must be >= 0");
  if (order == 0) return alpha_star(m, omega);

  if (m.kind == ModelKind::PowerLawKK) {
    // d^m/domega^m [(-i omega)^gamma] = gamma (gamma-1)...(gamma-m+1)
    //   * (-i)^m (-i omega)^(gamma-m)
    if (omega == 0.0) return order == 1 ? kI * m.a0 : std::complex<double>(0.0);
    double coeff = 1.0;
    for (int j = 0; j < order; ++j) coeff *= m.gamma - j;
    const std::complex<double> mi_pow = std::pow(-kI, order);
    std::complex<double> v = tilde_alpha0(m) * coeff * mi_pow * frac_power(omega, m.gamma - order);
    if (order == 1) v += kI * m.a0;
    return v;
  }

  if (order != 1)
    fail(errc::invalid_argument,
         "derivative order > 1 is only available for PowerLawKK");
  if (omega == 0.0) return 0.0;

  switch (m.kind) {
    case ModelKind::Szabo: {
      if (m.alpha0 == 0.0) return 0.0;
      const std::complex<double> A = sqrt_argument(m, omega);
      const std::complex<double> dA =
          -2.0 * omega +
          2.0 * tilde_alpha0(m) * m.c0 * (m.gamma + 1.0) * (-kI) * frac_power(omega, m.gamma);
      return kI / m.c0 + dA / (2.0 * m.c0 * std::sqrt(A));
    }
    case ModelKind::ThermoViscous: {
      const std::complex<double> D = sqrt_argument(m, omega);
      const std::complex<double> rinv = 1.0 / std::sqrt(D);
      return kI / m.c0 - kI / m.c0 * rinv +
             omega * m.tau0 / (2.0 * m.c0) * rinv * rinv * rinv;
    }
    case ModelKind::CausalThermoViscous: {
      const std::complex<double> D = sqrt_argument(m, omega);
      const std::complex<double> rinv = 1.0 / std::sqrt(D);
      return m.alpha1 * (-kI / m.c0 * rinv +
                         omega * m.tau0 / (2.0 * m.c0) * rinv * rinv * rinv);
    }
    case ModelKind::CausalGamma: {
      const std::complex<double> E = sqrt_argument(m, omega);
      const std::complex<double> dE =
          m.tau0 * (m.gamma - 1.0) * (-kI) * frac_power(m.tau0 * omega, m.gamma - 2.0);
      const std::complex<double> rinv = 1.0 / std::sqrt(E);
      return -m.alpha1 * kI / m.c0 * rinv +
             m.alpha1 * kI * omega / (2.0 * m.c0) * rinv * rinv * rinv * dE;
    }
    case ModelKind::NoAttenuation:
      return 0.0;
    case ModelKind::PowerLawKK:
      break;  // handled above
  }
  return 0.0;
}

std::complex<double> beta_star(const AttenuationModel& m, double r, double omega) {
  if (!std::isfinite(r) || r < 0.0) fail(errc::invalid_argument, "radius must be >= 0");
  return alpha_star(m, omega) * r;
}

double attenuation_law(const AttenuationModel& m, double omega) {
  if (m.kind == ModelKind::PowerLawKK)
    return m.alpha0 * std::pow(std::abs(omega), m.gamma);
  return alpha_star(m, omega).real();
}

CausalityExpectation expected_causality(const AttenuationModel& m) {
  switch (m.kind) {
    case ModelKind::PowerLawKK:
    case ModelKind::Szabo:
      if (m.gamma < 1.0)
        return {Causality::Causal,
                "sub-linear attenuation growth keeps the kernel support one-sided"};
      return {Causality::NonCausal,
              "super-linear attenuation growth forces kernel mass at negative times"};
    case ModelKind::ThermoViscous:
      if (m.tau0 == 0.0)
        return {Causality::Causal, "zero relaxation time reduces to pure delay"};
      return {Causality::NonCausal,
              "the relaxation branch point sits on the wrong half-line for a "
              "one-sided kernel"};
    case ModelKind::CausalThermoViscous:
      return {Causality::Causal,
              "analytic in the upper half-plane with bounded high-frequency growth"};
    case ModelKind::CausalGamma:
      return {Causality::Causal,
              "analytic in the upper half-plane with bounded high-frequency growth"};
    case ModelKind::NoAttenuation:
      return {Causality::Causal, "identity propagation is trivially one-sided"};
  }
  return {Causality::Causal, ""};
}

ComplexSpectrum alpha_star_grid(const AttenuationModel& m, const SpectralGrid& g) {
  const bool has_root = m.kind == ModelKind::Szabo || m.kind == ModelKind::ThermoViscous ||
                        m.kind == ModelKind::CausalThermoViscous ||
                        m.kind == ModelKind::CausalGamma;

  ComplexSpectrum s;
  s.grid = g;
  s.hermitian = true;
  s.samples.resize(g.n);
  for (std::size_t k = 0; k < g.n; ++k) s.samples[k] = alpha_star(m, g.omega(k));

  if (has_root) {
    // Bins 1..n/2-1 hold ascending positive omega, bins n/2+1..n-1 ascending
    // negative omega; scan each run for the root argument crossing the
    // negative real axis between neighbors.
    auto scan = [&](std::size_t lo, std::size_t hi) {
      std::complex<double> prev = sqrt_argument(m, g.omega(lo));
      for (std::size_t k = lo + 1; k < hi; ++k) {
        const std::complex<double> cur = sqrt_argument(m, g.omega(k));
        if (prev.imag() * cur.imag() < 0.0 &&
            std::min(prev.real(), cur.real()) < 0.0)
          fail(errc::branch_violation,
               "square-root argument crosses the principal cut between "
               "adjacent frequency samples; refine the grid");
        prev = cur;
      }
    };
    if (g.n >= 4) {
      scan(1, g.n / 2);
      scan(g.n / 2 + 1, g.n);
    }
  }
  return s;
}

nlohmann::json model_to_json(const AttenuationModel& m) {
  return nlohmann::json{{"kind", kind_name(m.kind)}, {"gamma", m.gamma},
                        {"alpha0", m.alpha0},        {"a0", m.a0},
                        {"tau0", m.tau0},            {"alpha1", m.alpha1},
                        {"c0", m.c0}};
}

AttenuationModel model_from_json(const nlohmann::json& j) {
  if (!j.is_object()) fail(errc::invalid_argument, "model JSON must be an object");
  static const char* known[] = {"kind", "gamma", "alpha0", "a0", "tau0", "alpha1", "c0"};
  for (auto it = j.begin(); it != j.end(); ++it) {
    bool ok = false;
    for (const char* k : known) ok = ok || it.key() == k;
    if (!ok) fail(errc::invalid_argument, "unknown model field: " + it.key());
  }
  if (!j.contains("kind") || !j["kind"].is_string())
    fail(errc::invalid_argument, "model JSON needs a string 'kind'");
  const auto kind = kind_from_name(j["kind"].get<std::string>());
  if (!kind)
    fail(errc::invalid_argument, "unknown model kind: " + j["kind"].get<std::string>());

  AttenuationModel m;
  m.kind = *kind;
  auto num = [&](const char* key, double fallback) {
    if (!j.contains(key)) return fallback;
    if (!j[key].is_number())
      fail(errc::invalid_argument, std::string("model field must be numeric: ") + key);
    return j[key].get<double>();
  };
  m.gamma = num("gamma", 0.0);
  m.alpha0 = num("alpha0", 0.0);
  m.a0 = num("a0", 0.0);
  m.tau0 = num("tau0", 0.0);
  m.alpha1 = num("alpha1", 0.0);
  m.c0 = num("c0", 1.0);
  validate_model(m);
  return m;
}

std::string model_to_json_string(const AttenuationModel& m) {
  return model_to_json(m).dump();
}

AttenuationModel model_from_json_string(const std::string& text) {
  nlohmann::json j = nlohmann::json::parse(text, nullptr, false);
  if (j.is_discarded()) fail(errc::invalid_argument, "model JSON failed to parse");
  return model_from_json(j);
}

}  // namespace aw
