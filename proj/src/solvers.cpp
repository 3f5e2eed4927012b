#include "nomamec/solvers.hpp"

#include <cmath>
#include <limits>
#include <utility>

#include <boost/math/tools/roots.hpp>
#include <fmt/format.h>

namespace nomamec {

namespace {

constexpr double kInf = std::numeric_limits<double>::infinity();

void require_hybrid(const Scenario& scenario, double energy) {
  const EnergyRegime regime = classify_regime(scenario, energy);
  if (regime != EnergyRegime::Hybrid) {
    const DerivedConstants& k = scenario.constants();
    throw RegimeError(fmt::format("H-NOMA needs E1 < E < E2 ({} < E < {}); E = {} is {}", k.e1,
                                  k.e2, energy, to_string(regime)));
  }
}

TraceRecord make_record(const Scenario& scenario, double energy, int t, double mu, double f) {
  const PowerPair p = allocate(scenario, energy, mu);
  return {t, mu, f, p.p_n1, p.p_n2, scenario.d_m() + 1.0 / mu};
}

Allocation hybrid_allocation(const Scenario& scenario, double energy, double mu_star) {
  const PowerPair p = allocate(scenario, energy, mu_star);
  Allocation a;
  a.mode = Mode::HybridNoma;
  a.p_n1 = p.p_n1;
  a.p_n2 = p.p_n2;
  a.t_n = 1.0 / mu_star;
  a.energy_used = scenario.d_m() * a.p_n1 + a.t_n * a.p_n2;
  a.delay = scenario.d_m() + a.t_n;
  return a;
}

template <typename Step>
IterativeResult iterate(const Scenario& scenario, double energy, const SolverConfig& cfg,
                        SolverTrace trace, double mu, Step step, std::string_view name) {
  int t = trace.records.empty() ? 0 : trace.records.back().t + 1;
  while (true) {
    const MuPoint pt = eval_F(scenario, energy, mu);
    trace.records.push_back(make_record(scenario, energy, t, mu, pt.f));
    if (pt.f >= -cfg.delta) break;
    if (t >= cfg.max_iters) {
      throw ConvergenceError(
          fmt::format("{} did not reach |F| <= {} within {} iterations (F = {})", name,
                      cfg.delta, cfg.max_iters, pt.f),
          std::move(trace));
    }
    const double next = step(pt);
    if (!(next < mu)) {
      throw ConvergenceError(
          fmt::format("{} stalled at mu = {} with F = {}", name, mu, pt.f), std::move(trace));
    }
    mu = next;
    ++t;
  }
  IterativeResult out;
  out.mu_star = mu;
  out.allocation = hybrid_allocation(scenario, energy, mu);
  out.trace = std::move(trace);
  return out;
}

SolverTrace limit_start(const Scenario& scenario, double energy) {
  SolverTrace trace;
  trace.records.push_back(make_record(scenario, energy, 0, kInf, -kInf));
  return trace;
}

double oma_energy(const Scenario& scenario, double power) {
  const double n = scenario.n_nats();
  if (power == 0.0) return n / scenario.h_n_sq();
  return n * power / std::log1p(scenario.h_n_sq() * power);
}

}  // namespace

std::string_view to_string(HnomaMethod method) {
  return method == HnomaMethod::Newton ? "newton" : "dinkelbach";
}

void SolverConfig::validate() const {
  if (!(delta > 0.0) || !std::isfinite(delta)) {
    throw InvalidInput(fmt::format("delta must be a finite positive number (got {})", delta));
  }
  if (max_iters < 1) {
    throw InvalidInput(fmt::format("max_iters must be at least 1 (got {})", max_iters));
  }
  if (!(newton_mu0_factor > 1.0) || !std::isfinite(newton_mu0_factor)) {
    throw InvalidInput(
        fmt::format("newton_mu0_factor must be finite and > 1 (got {})", newton_mu0_factor));
  }
}

// A/B written as mu + F/B. With |F'| = B - slope <= B both updates add F over a
// positive divisor to mu, so Newton <= Dinkelbach for F < 0 survives rounding.
double dinkelbach_step(const MuPoint& point) { return point.mu + point.f / point.b; }

double newton_step(const MuPoint& point) { return point.mu + point.f / -point.f_prime; }

double limit_step(const Scenario& scenario, double energy) {
  return slot_rate(scenario, energy, kInf) / leftover_nats(scenario, energy, kInf);
}

std::optional<Allocation> solve_pure_noma(const Scenario& scenario, double energy) {
  if (classify_regime(scenario, energy) != EnergyRegime::PureNoma) return std::nullopt;
  const double p_n1 = energy / scenario.d_m();
  // Rounding at E = E2 exactly may leave the rate an ulp short of N.
  if (scenario.noma_phase_nats(p_n1) < scenario.n_nats() * (1.0 - 1e-12)) return std::nullopt;
  Allocation a;
  a.mode = Mode::PureNoma;
  a.p_n1 = p_n1;
  a.energy_used = scenario.d_m() * p_n1;
  a.delay = scenario.d_m();
  return a;
}

std::optional<Allocation> solve_oma(const Scenario& scenario, double energy) {
  const EnergyRegime regime = classify_regime(scenario, energy);
  if (regime == EnergyRegime::Infeasible || energy <= scenario.constants().e_oma_min) {
    return std::nullopt;
  }
  // Energy N P / ln(1 + |h_n|^2 P) grows with P and the delay shrinks, so the budget binds.
  const auto excess = [&](double power) { return oma_energy(scenario, power) - energy; };
  double hi = 1.0 / scenario.h_n_sq();
  while (excess(hi) <= 0.0) {
    hi *= 2.0;
    if (!std::isfinite(hi)) throw RangeError("OMA power bracket overflowed");
  }
  const auto tol = [](double a, double b) { return std::abs(b - a) <= 1e-12 * std::abs(b); };
  const auto [lo, up] = boost::math::tools::bisect(excess, 0.0, hi, tol);
  (void)up;
  // Lower end keeps energy_used <= E.
  const double power = lo;
  if (!(power > 0.0)) return std::nullopt;
  Allocation a;
  a.mode = Mode::Oma;
  a.p_n2 = power;
  a.t_n = scenario.n_nats() / std::log1p(scenario.h_n_sq() * power);
  a.energy_used = a.t_n * power;
  a.delay = scenario.d_m() + a.t_n;
  return a;
}

IterativeResult solve_hnoma_dinkelbach(const Scenario& scenario, double energy,
                                       const SolverConfig& cfg) {
  cfg.validate();
  require_hybrid(scenario, energy);
  return iterate(scenario, energy, cfg, limit_start(scenario, energy),
                 limit_step(scenario, energy), dinkelbach_step, "Dinkelbach");
}

IterativeResult solve_hnoma_newton(const Scenario& scenario, double energy,
                                   const SolverConfig& cfg) {
  cfg.validate();
  require_hybrid(scenario, energy);
  if (cfg.newton_start == NewtonStart::LimitStep) {
    return iterate(scenario, energy, cfg, limit_start(scenario, energy),
                   limit_step(scenario, energy), newton_step, "Newton");
  }
  const double mu0 = cfg.newton_mu0_factor * scenario.constants().mu_lb(energy);
  const MuPoint start = eval_F(scenario, energy, mu0);
  if (start.f >= 0.0) {
    throw InitializationError(fmt::format(
        "Newton start mu_0 = {} has F = {} >= 0; it lies left of the root", mu0, start.f));
  }
  return iterate(scenario, energy, cfg, SolverTrace{}, mu0, newton_step, "Newton");
}

Solution solve(const Scenario& scenario, double energy, const SolverConfig& cfg) {
  cfg.validate();
  Solution sol;
  sol.energy = energy;
  sol.method = cfg.method;
  sol.regime = classify_regime(scenario, energy);
  sol.per_mode = {{Mode::Oma, std::nullopt},
                  {Mode::PureNoma, std::nullopt},
                  {Mode::HybridNoma, std::nullopt}};
  if (sol.regime == EnergyRegime::Infeasible) return sol;

  sol.per_mode[Mode::Oma] = solve_oma(scenario, energy);
  if (sol.regime == EnergyRegime::PureNoma) {
    sol.per_mode[Mode::PureNoma] = solve_pure_noma(scenario, energy);
  } else if (sol.regime == EnergyRegime::Hybrid) {
    IterativeResult r = cfg.method == HnomaMethod::Newton
                            ? solve_hnoma_newton(scenario, energy, cfg)
                            : solve_hnoma_dinkelbach(scenario, energy, cfg);
    sol.per_mode[Mode::HybridNoma] = r.allocation;
    sol.mu_star = r.mu_star;
    sol.trace = std::move(r.trace);
  }

  // Preference order on ties: H-NOMA, pure NOMA, OMA.
  for (Mode mode : {Mode::HybridNoma, Mode::PureNoma, Mode::Oma}) {
    const auto& cand = sol.per_mode[mode];
    if (!cand) continue;
    if (!sol.best || cand->delay < sol.best->delay * (1.0 - 1e-12)) sol.best = cand;
  }
  return sol;
}

}  // namespace nomamec
