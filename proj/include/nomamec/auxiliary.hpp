#pragma once

#include "nomamec/model.hpp"

namespace nomamec {

// The parameterized auxiliary function F(mu) = A(mu) - mu * B(mu), where
// A is user n's dedicated-slot rate and B the nats left over after the
// NOMA phase, both evaluated at the closed-form allocation for mu.
struct MuPoint {
  double mu = 0.0;
  double f = 0.0;
  double f_prime = 0.0;
  double a = 0.0;
  double b = 0.0;
};

struct PowerPair {
  double p_n1 = 0.0;
  double p_n2 = 0.0;
};

// Closed-form maximizer of the auxiliary problem for fixed mu. The budget
// D_m p_n1 + p_n2 / mu = E binds. mu = +infinity is accepted and yields the
// limit allocation {E / D_m, (E + D_m (e^{N/D_m} - 1) / |h_n|^2) / D_m}.
// Throws DomainError when mu <= mu_lb(E).
PowerPair allocate(const Scenario& scenario, double energy, double mu);

// A(mu) = ln(1 + |h_n|^2 p_n2(mu)) and B(mu) = N - D_m ln(1 + e^{-N/D_m} p_n1(mu) |h_n|^2).
// Both accept mu = +inf.
double slot_rate(const Scenario& scenario, double energy, double mu);
double leftover_nats(const Scenario& scenario, double energy, double mu);

// Requires finite mu > mu_lb(E).
MuPoint eval_F(const Scenario& scenario, double energy, double mu);

// A'(mu) - mu B'(mu); strictly positive. F'(mu) is this minus B(mu).
double envelope_slope(const Scenario& scenario, double energy, double mu);

// F''(mu) = -(|h_n|^2 E + D_m (e^{N/D_m} - 1))^2
//           / ((e^{N/D_m} D_m mu + |h_n|^2 E mu + 1)^2 (D_m mu + 1)).
double eval_F_second(const Scenario& scenario, double energy, double mu);

}  // namespace nomamec
