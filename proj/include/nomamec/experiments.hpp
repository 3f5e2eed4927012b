#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "nomamec/model.hpp"
#include "nomamec/solvers.hpp"

namespace nomamec {

enum class Spacing { Linear, Log };

std::string_view to_string(Spacing spacing);

// Defaults are the reference setting: N = 15 nats, D_m = 5 s,
// normalized gains, E in [20, 2500].
struct SweepSpec {
  double e_min = 20.0;
  double e_max = 2500.0;
  int n_points = 200;
  Spacing spacing = Spacing::Linear;
  SystemParams params{15.0, 5.0, 1.0, 1.0};
  SolverConfig cfg;

  void validate() const;
  std::vector<double> energies() const;
  bool operator==(const SweepSpec&) const = default;
};

struct SweepRow {
  double energy = 0.0;
  EnergyRegime regime = EnergyRegime::Infeasible;
  std::optional<double> delay_oma;
  // Pure NOMA at E >= E2, H-NOMA in the hybrid regime, absent otherwise.
  std::optional<double> delay_noma;
  std::optional<Mode> best_mode;
  std::optional<double> mu_star;
  int iters_dinkelbach = 0;
  int iters_newton = 0;
  // Best allocation.
  std::optional<double> p_n1;
  std::optional<double> p_n2;
  std::optional<double> t_n;
};

std::vector<SweepRow> energy_sweep(const SweepSpec& spec);

// Indices of rows where both delays exist and NOMA is slower than OMA.
std::vector<std::size_t> noma_ordering_violations(const std::vector<SweepRow>& rows);

void write_sweep_csv(std::ostream& out, const std::vector<SweepRow>& rows);

struct ConvergenceComparison {
  SolverTrace dinkelbach;
  SolverTrace newton;
  double delay_dinkelbach = 0.0;
  double delay_newton = 0.0;
  // |delay_newton - delay_dinkelbach| / delay_dinkelbach
  double relative_gap = 0.0;
};

// Runs both H-NOMA solvers from the shared mu = +inf start. Requires the hybrid regime.
ConvergenceComparison convergence_trace(const Scenario& scenario, double energy,
                                        const SolverConfig& cfg = {});

// Columns: method,t,mu,f,delay
void write_trace_csv(std::ostream& out, const ConvergenceComparison& cmp);

}  // namespace nomamec
