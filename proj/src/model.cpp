#include "nomamec/model.hpp"

#include <cmath>
#include <limits>

#include <fmt/format.h>

namespace nomamec {

namespace {

void require_positive(double value, std::string_view name) {
  if (!std::isfinite(value) || value <= 0.0) {
    throw InvalidInput(fmt::format("{} must be a finite positive number (got {})", name, value));
  }
}

}  // namespace

void SystemParams::validate() const {
  require_positive(n_nats, "n_nats");
  require_positive(d_m, "d_m");
  require_positive(h_m_sq, "h_m_sq");
  require_positive(h_n_sq, "h_n_sq");
}

double DerivedConstants::mu_lb(double energy) const { return unit_power / energy; }

DerivedConstants derive_constants(const SystemParams& params) {
  params.validate();
  DerivedConstants k;
  k.growth = std::exp(params.n_nats / params.d_m);
  const double excess = k.growth - 1.0;
  k.p_m = excess / params.h_m_sq;
  k.unit_power = excess / params.h_n_sq;
  k.e1 = params.d_m * k.unit_power;
  k.e2 = k.e1 * k.growth;
  k.e_oma_min = params.n_nats / params.h_n_sq;
  for (double v : {k.growth, k.p_m, k.unit_power, k.e1, k.e2, k.e_oma_min}) {
    if (!std::isfinite(v)) {
      throw RangeError(fmt::format("derived constants overflow for N/D_m = {}",
                                   params.n_nats / params.d_m));
    }
  }
  if (!(excess > 0.0)) {
    throw RangeError(fmt::format("N/D_m = {} is too small to resolve e^(N/D_m) - 1",
                                 params.n_nats / params.d_m));
  }
  return k;
}

std::string_view to_string(EnergyRegime regime) {
  switch (regime) {
    case EnergyRegime::Infeasible: return "infeasible";
    case EnergyRegime::OmaOnly: return "oma_only";
    case EnergyRegime::Hybrid: return "hybrid";
    case EnergyRegime::PureNoma: return "pure_noma";
  }
  return "unknown";
}

std::string_view to_string(Mode mode) {
  switch (mode) {
    case Mode::Oma: return "oma";
    case Mode::PureNoma: return "pure_noma";
    case Mode::HybridNoma: return "hybrid_noma";
  }
  return "unknown";
}

Scenario::Scenario(const SystemParams& params)
    : params_(params), constants_(derive_constants(params)) {}

double Scenario::noma_phase_nats(double p_n1) const {
  return params_.d_m * std::log1p(p_n1 * params_.h_n_sq / constants_.growth);
}

EnergyRegime classify_regime(const Scenario& scenario, double energy) {
  if (!std::isfinite(energy) || energy < 0.0) {
    throw InvalidInput(fmt::format("energy must be finite and nonnegative (got {})", energy));
  }
  const DerivedConstants& k = scenario.constants();
  if (energy < k.e_oma_min) return EnergyRegime::Infeasible;
  if (energy <= k.e1) return EnergyRegime::OmaOnly;
  if (energy < k.e2) return EnergyRegime::Hybrid;
  return EnergyRegime::PureNoma;
}

double dedicated_slot_length(const Scenario& scenario, double p_n1, double p_n2) {
  const double remaining = scenario.n_nats() - scenario.noma_phase_nats(p_n1);
  if (remaining <= 0.0) return 0.0;
  const double rate = std::log1p(scenario.h_n_sq() * p_n2);
  if (rate <= 0.0) return std::numeric_limits<double>::infinity();
  return remaining / rate;
}

}  // namespace nomamec
