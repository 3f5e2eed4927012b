#pragma once

#include <stdexcept>
#include <string>
#include <string_view>

namespace nomamec {

// Error taxonomy shared by every module.
struct InvalidInput : std::invalid_argument {
  using std::invalid_argument::invalid_argument;
};

// Evaluation outside the domain of a formula (e.g. mu at or below mu_lb).
struct DomainError : std::domain_error {
  using std::domain_error::domain_error;
};

// A finite input produced a non-finite derived constant.
struct RangeError : std::range_error {
  using std::range_error::range_error;
};

// Operation requested for an energy budget outside its regime.
struct RegimeError : std::logic_error {
  using std::logic_error::logic_error;
};

// Two-user uplink: user m (tight deadline) and user n (opportunistic).
// Both users offload n_nats; rates are in nats per second.
struct SystemParams {
  double n_nats = 0.0;
  double d_m = 0.0;
  double h_m_sq = 0.0;
  double h_n_sq = 0.0;

  // Throws InvalidInput naming the first offending field.
  void validate() const;

  bool operator==(const SystemParams&) const = default;
};

struct DerivedConstants {
  double growth = 0.0;     // e^{N/D_m}, computed once and shared
  double p_m = 0.0;        // user m's OMA power
  double e1 = 0.0;         // lower edge of the hybrid regime
  double e2 = 0.0;         // pure-NOMA threshold
  double e_oma_min = 0.0;  // N / |h_n|^2
  double unit_power = 0.0; // (e^{N/D_m} - 1) / |h_n|^2

  // (e^{N/D_m} - 1) / (|h_n|^2 E); allocations with mu above this keep p_n1 > 0.
  double mu_lb(double energy) const;
};

DerivedConstants derive_constants(const SystemParams& params);

enum class EnergyRegime { Infeasible, OmaOnly, Hybrid, PureNoma };

enum class Mode { Oma, PureNoma, HybridNoma };

std::string_view to_string(EnergyRegime regime);
std::string_view to_string(Mode mode);

// Validated parameters bundled with their derived constants. Immutable.
class Scenario {
 public:
  explicit Scenario(const SystemParams& params);

  const SystemParams& params() const { return params_; }
  const DerivedConstants& constants() const { return constants_; }

  double n_nats() const { return params_.n_nats; }
  double d_m() const { return params_.d_m; }
  double h_n_sq() const { return params_.h_n_sq; }
  double growth() const { return constants_.growth; }
  double unit_power() const { return constants_.unit_power; }

  // Nats user n delivers during the NOMA phase at power p_n1.
  double noma_phase_nats(double p_n1) const;

 private:
  SystemParams params_;
  DerivedConstants constants_;
};

EnergyRegime classify_regime(const Scenario& scenario, double energy);

// A candidate operating point for user n.
struct Allocation {
  double p_n1 = 0.0;
  double p_n2 = 0.0;
  double t_n = 0.0;
  Mode mode = Mode::Oma;
  double energy_used = 0.0;
  double delay = 0.0;
};

// Exact dedicated-slot length needed to finish the task, from its definition.
// Returns 0 when the NOMA phase alone carries the task.
double dedicated_slot_length(const Scenario& scenario, double p_n1, double p_n2);

}  // namespace nomamec
