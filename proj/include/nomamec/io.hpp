#pragma once

#include <optional>
#include <string>
#include <vector>

#include <nlohmann/json.hpp>

#include "nomamec/experiments.hpp"
#include "nomamec/oracle.hpp"
#include "nomamec/solvers.hpp"

namespace nomamec {

std::string_view tool_version();

// Instance file: {"n_nats", "d_m", "h_m_sq", "h_n_sq", "energy"}.
struct Instance {
  SystemParams params;
  double energy = 0.0;
};

// Throws InvalidInput naming the missing or mistyped key.
Instance instance_from_json(const nlohmann::json& j);
nlohmann::json to_json(const Instance& instance);

nlohmann::json to_json(const SystemParams& params);
SystemParams params_from_json(const nlohmann::json& j);

nlohmann::json to_json(const SolverConfig& cfg);
SolverConfig config_from_json(const nlohmann::json& j);

nlohmann::json to_json(const Allocation& a);
nlohmann::json to_json(const SolverTrace& trace);
nlohmann::json to_json(const Solution& sol);

nlohmann::json to_json(const SweepSpec& spec);
SweepSpec sweep_spec_from_json(const nlohmann::json& j);

struct RunManifest {
  SystemParams params;
  std::optional<double> energy;
  std::optional<SweepSpec> sweep;
  SolverConfig cfg;
  std::vector<std::string> outputs;
  std::string tool_version{nomamec::tool_version()};

  bool operator==(const RunManifest&) const = default;
};

nlohmann::json to_json(const RunManifest& manifest);
RunManifest manifest_from_json(const nlohmann::json& j);

}  // namespace nomamec
