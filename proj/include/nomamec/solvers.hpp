#pragma once

#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "nomamec/auxiliary.hpp"
#include "nomamec/model.hpp"

namespace nomamec {

enum class HnomaMethod { Newton, Dinkelbach };

enum class NewtonStart {
  // mu_1 = A/B at the mu = +inf allocation, the same first step Dinkelbach takes.
  LimitStep,
  // mu_0 = newton_mu0_factor * mu_lb(E).
  BracketFactor,
};

std::string_view to_string(HnomaMethod method);

struct SolverConfig {
  double delta = 1e-10;
  int max_iters = 200;
  double newton_mu0_factor = 4.0;
  NewtonStart newton_start = NewtonStart::LimitStep;
  HnomaMethod method = HnomaMethod::Newton;

  void validate() const;
  bool operator==(const SolverConfig&) const = default;
};

struct TraceRecord {
  int t = 0;
  double mu = 0.0;  // +inf for the initial record of a limit-started run
  double f = 0.0;   // -inf alongside mu = +inf
  double p_n1 = 0.0;
  double p_n2 = 0.0;
  double delay = 0.0;  // D_m + 1/mu
};

struct SolverTrace {
  std::vector<TraceRecord> records;

  // Number of mu updates performed.
  int iterations() const { return records.empty() ? 0 : static_cast<int>(records.size()) - 1; }
  bool empty() const { return records.empty(); }
};

// Iteration cap hit or the iterate stopped moving. Carries the partial trace.
class ConvergenceError : public std::runtime_error {
 public:
  ConvergenceError(const std::string& what, SolverTrace trace)
      : std::runtime_error(what), trace_(std::move(trace)) {}
  const SolverTrace& trace() const { return trace_; }

 private:
  SolverTrace trace_;
};

// Newton's finite start landed at or left of the root (F(mu_0) >= 0).
struct InitializationError : std::runtime_error {
  using std::runtime_error::runtime_error;
};

struct IterativeResult {
  Allocation allocation;
  SolverTrace trace;
  double mu_star = 0.0;
  int iterations() const { return trace.iterations(); }
};

// One update of each method from a common point.
double dinkelbach_step(const MuPoint& point);
double newton_step(const MuPoint& point);
// The first Dinkelbach update, taken from the mu = +inf allocation.
double limit_step(const Scenario& scenario, double energy);

// Requires E >= E2; nullopt otherwise.
std::optional<Allocation> solve_pure_noma(const Scenario& scenario, double energy);

// Dedicated slot only. nullopt when E <= N/|h_n|^2 (no finite delay).
std::optional<Allocation> solve_oma(const Scenario& scenario, double energy);

// Both require E1 < E < E2 and throw RegimeError otherwise.
IterativeResult solve_hnoma_dinkelbach(const Scenario& scenario, double energy,
                                       const SolverConfig& cfg = {});
IterativeResult solve_hnoma_newton(const Scenario& scenario, double energy,
                                   const SolverConfig& cfg = {});

struct Solution {
  double energy = 0.0;
  EnergyRegime regime = EnergyRegime::Infeasible;
  std::optional<Allocation> best;
  // Every mode appears; nullopt marks it infeasible for this budget.
  std::map<Mode, std::optional<Allocation>> per_mode;
  SolverTrace trace;
  std::optional<double> mu_star;
  HnomaMethod method = HnomaMethod::Newton;

  int iterations() const { return trace.iterations(); }
  bool feasible() const { return best.has_value(); }
};

// Runs every mode feasible under the budget and keeps the smallest delay.
// An infeasible budget is reported through Solution::best, not thrown.
Solution solve(const Scenario& scenario, double energy, const SolverConfig& cfg = {});

}  // namespace nomamec
