#include "nomamec/experiments.hpp"

#include <cmath>

#include <fmt/format.h>

namespace nomamec {

namespace {

std::string num(double v) { return fmt::format("{:.17g}", v); }

std::string num(const std::optional<double>& v) { return v ? num(*v) : "nan"; }

}  // namespace

std::string_view to_string(Spacing spacing) {
  return spacing == Spacing::Linear ? "linear" : "log";
}

void SweepSpec::validate() const {
  params.validate();
  cfg.validate();
  if (!(e_min > 0.0) || !std::isfinite(e_min)) {
    throw InvalidInput(fmt::format("e_min must be finite and positive (got {})", e_min));
  }
  if (!(e_max > e_min) || !std::isfinite(e_max)) {
    throw InvalidInput(fmt::format("e_max must be finite and exceed e_min (got {})", e_max));
  }
  if (n_points < 2) {
    throw InvalidInput(fmt::format("n_points must be at least 2 (got {})", n_points));
  }
}

std::vector<double> SweepSpec::energies() const {
  std::vector<double> out(n_points);
  const double span = static_cast<double>(n_points - 1);
  for (int i = 0; i < n_points; ++i) {
    const double frac = static_cast<double>(i) / span;
    out[i] = spacing == Spacing::Linear
                 ? e_min + (e_max - e_min) * frac
                 : std::exp(std::log(e_min) + (std::log(e_max) - std::log(e_min)) * frac);
  }
  out.front() = e_min;
  out.back() = e_max;
  return out;
}

std::vector<SweepRow> energy_sweep(const SweepSpec& spec) {
  spec.validate();
  const Scenario scenario(spec.params);
  std::vector<SweepRow> rows;
  rows.reserve(spec.n_points);
  for (double energy : spec.energies()) {
    const Solution sol = solve(scenario, energy, spec.cfg);
    SweepRow row;
    row.energy = energy;
    row.regime = sol.regime;
    if (const auto& oma = sol.per_mode.at(Mode::Oma)) row.delay_oma = oma->delay;
    if (const auto& pure = sol.per_mode.at(Mode::PureNoma)) row.delay_noma = pure->delay;
    if (const auto& hyb = sol.per_mode.at(Mode::HybridNoma)) {
      row.delay_noma = hyb->delay;
      row.mu_star = sol.mu_star;
      if (spec.cfg.method == HnomaMethod::Newton) {
        row.iters_newton = sol.iterations();
        row.iters_dinkelbach = solve_hnoma_dinkelbach(scenario, energy, spec.cfg).iterations();
      } else {
        row.iters_dinkelbach = sol.iterations();
        row.iters_newton = solve_hnoma_newton(scenario, energy, spec.cfg).iterations();
      }
    }
    if (sol.best) {
      row.best_mode = sol.best->mode;
      row.p_n1 = sol.best->p_n1;
      row.p_n2 = sol.best->p_n2;
      row.t_n = sol.best->t_n;
    }
    rows.push_back(row);
  }
  return rows;
}

std::vector<std::size_t> noma_ordering_violations(const std::vector<SweepRow>& rows) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < rows.size(); ++i) {
    const SweepRow& r = rows[i];
    if (r.delay_noma && r.delay_oma && *r.delay_noma > *r.delay_oma) out.push_back(i);
  }
  return out;
}

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows) {
  out << "E,regime,delay_oma,delay_noma,best_mode,mu_star,iters_dinkelbach,iters_newton,"
         "p_n1,p_n2,t_n\n";
  for (const SweepRow& r : rows) {
    out << fmt::format("{},{},{},{},{},{},{},{},{},{},{}\n", num(r.energy), to_string(r.regime),
                       num(r.delay_oma), num(r.delay_noma),
                       r.best_mode ? to_string(*r.best_mode) : std::string_view("none"),
                       num(r.mu_star), r.iters_dinkelbach, r.iters_newton, num(r.p_n1),
                       num(r.p_n2), num(r.t_n));
  }
}

ConvergenceComparison convergence_trace(const Scenario& scenario, double energy,
                                        const SolverConfig& cfg) {
  SolverConfig matched = cfg;
  matched.newton_start = NewtonStart::LimitStep;
  const IterativeResult dink = solve_hnoma_dinkelbach(scenario, energy, matched);
  const IterativeResult newt = solve_hnoma_newton(scenario, energy, matched);
  ConvergenceComparison cmp;
  cmp.dinkelbach = dink.trace;
  cmp.newton = newt.trace;
  cmp.delay_dinkelbach = dink.allocation.delay;
  cmp.delay_newton = newt.allocation.delay;
  cmp.relative_gap = std::abs(cmp.delay_newton - cmp.delay_dinkelbach) / cmp.delay_dinkelbach;
  return cmp;
}

void write_trace_csv(std::ostream& out, const ConvergenceComparison& cmp) {
  out << "method,t,mu,f,delay\n";
  const auto emit = [&](std::string_view method, const SolverTrace& trace) {
    for (const TraceRecord& r : trace.records) {
      out << fmt::format("{},{},{},{},{}\n", method, r.t, num(r.mu), num(r.f), num(r.delay));
    }
  };
  emit("dinkelbach", cmp.dinkelbach);
  emit("newton", cmp.newton);
}

}  // namespace nomamec
