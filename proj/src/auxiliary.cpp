#include "nomamec/auxiliary.hpp"

#include <cmath>

#include <fmt/format.h>

namespace nomamec {

namespace {

void require_energy(double energy) {
  if (!std::isfinite(energy) || energy <= 0.0) {
    throw InvalidInput(fmt::format("energy must be finite and positive (got {})", energy));
  }
}

void require_above_bracket(const Scenario& scenario, double energy, double mu) {
  require_energy(energy);
  const double lb = scenario.constants().mu_lb(energy);
  if (std::isnan(mu) || mu <= lb) {
    throw DomainError(fmt::format(
        "mu = {} is at or below mu_lb = {}: allocation leaves the NOMA phase (p_n1 <= 0)", mu,
        lb));
  }
}

void require_finite_mu(double mu) {
  if (!std::isfinite(mu)) {
    throw DomainError("auxiliary function needs a finite mu; +inf is only valid for allocate");
  }
}

// Everything below is written in terms of the slot length nu = 1/mu so that
// mu = +inf maps to nu = 0 without special cases.

// |h_n|^2 E + D_m (e^{N/D_m} - 1)
double slope_scale(const Scenario& s, double energy) {
  return s.h_n_sq() * energy + s.d_m() * (s.growth() - 1.0);
}

// e^{N/D_m} D_m + |h_n|^2 E
double pole_scale(const Scenario& s, double energy) {
  return s.growth() * s.d_m() + s.h_n_sq() * energy;
}

}  // namespace

PowerPair allocate(const Scenario& scenario, double energy, double mu) {
  require_above_bracket(scenario, energy, mu);
  const double nu = 1.0 / mu;
  const double denom = scenario.d_m() + nu;
  PowerPair out;
  out.p_n1 = (energy - scenario.unit_power() * nu) / denom;
  out.p_n2 = (energy + scenario.d_m() * scenario.unit_power()) / denom;
  if (!(out.p_n1 > 0.0)) {
    throw DomainError(fmt::format("mu = {} rounds to p_n1 <= 0 (mu_lb = {})", mu,
                                  scenario.constants().mu_lb(energy)));
  }
  return out;
}

double slot_rate(const Scenario& scenario, double energy, double mu) {
  return std::log1p(scenario.h_n_sq() * allocate(scenario, energy, mu).p_n2);
}

// Rearranged around (E - E2) so it stays accurate as E -> E2 and mu -> inf,
// where the direct form cancels catastrophically.
double leftover_nats(const Scenario& scenario, double energy, double mu) {
  require_above_bracket(scenario, energy, mu);
  const double nu = 1.0 / mu;
  const double g2 = scenario.growth() * scenario.growth();
  const double shortfall = scenario.h_n_sq() * (energy - scenario.constants().e2);
  const double arg = (shortfall + (1.0 - g2) * nu) / ((scenario.d_m() + nu) * g2);
  return -scenario.d_m() * std::log1p(arg);
}

MuPoint eval_F(const Scenario& scenario, double energy, double mu) {
  require_finite_mu(mu);
  MuPoint pt;
  pt.mu = mu;
  pt.a = slot_rate(scenario, energy, mu);
  pt.b = leftover_nats(scenario, energy, mu);
  pt.f = pt.a - mu * pt.b;
  pt.f_prime = envelope_slope(scenario, energy, mu) - pt.b;
  return pt;
}

double envelope_slope(const Scenario& scenario, double energy, double mu) {
  require_finite_mu(mu);
  require_above_bracket(scenario, energy, mu);
  const double nu = 1.0 / mu;
  return slope_scale(scenario, energy) * nu / (pole_scale(scenario, energy) + nu);
}

double eval_F_second(const Scenario& scenario, double energy, double mu) {
  require_finite_mu(mu);
  require_above_bracket(scenario, energy, mu);
  const double nu = 1.0 / mu;
  const double c = slope_scale(scenario, energy);
  const double k = pole_scale(scenario, energy);
  // -c^2 / ((k mu + 1)^2 (D_m mu + 1)) multiplied through by nu^3.
  return -(c * c) * (nu * nu * nu) / ((k + nu) * (k + nu) * (scenario.d_m() + nu));
}

}  // namespace nomamec
