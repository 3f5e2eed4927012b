#include "nomamec/io.hpp"

#include <cmath>
#include <fmt/format.h>

#ifndef NOMAMEC_VERSION
#define NOMAMEC_VERSION "0.0.0"
#endif

namespace nomamec {

using nlohmann::json;

namespace {

const json& field(const json& j, std::string_view key, std::string_view where) {
  if (!j.is_object()) throw InvalidInput(fmt::format("{}: expected a JSON object", where));
  const auto it = j.find(key);
  if (it == j.end()) throw InvalidInput(fmt::format("{}: missing field '{}'", where, key));
  return *it;
}

double number(const json& j, std::string_view key, std::string_view where) {
  const json& v = field(j, key, where);
  if (!v.is_number()) throw InvalidInput(fmt::format("{}: field '{}' must be a number", where, key));
  return v.get<double>();
}

int integer(const json& j, std::string_view key, std::string_view where) {
  const json& v = field(j, key, where);
  if (!v.is_number_integer()) {
    throw InvalidInput(fmt::format("{}: field '{}' must be an integer", where, key));
  }
  return v.get<int>();
}

std::string text(const json& j, std::string_view key, std::string_view where) {
  const json& v = field(j, key, where);
  if (!v.is_string()) throw InvalidInput(fmt::format("{}: field '{}' must be a string", where, key));
  return v.get<std::string>();
}

json optional_number(const std::optional<double>& v) { return v ? json(*v) : json(nullptr); }

json finite_or_null(double v) { return std::isfinite(v) ? json(v) : json(nullptr); }

}  // namespace

std::string_view tool_version() { return "nomamec " NOMAMEC_VERSION; }

Instance instance_from_json(const json& j) {
  Instance inst;
  inst.params = params_from_json(j);
  inst.energy = number(j, "energy", "instance");
  return inst;
}

json to_json(const Instance& instance) {
  json j = to_json(instance.params);
  j["energy"] = instance.energy;
  return j;
}

json to_json(const SystemParams& p) {
  return {{"n_nats", p.n_nats}, {"d_m", p.d_m}, {"h_m_sq", p.h_m_sq}, {"h_n_sq", p.h_n_sq}};
}

SystemParams params_from_json(const json& j) {
  SystemParams p;
  p.n_nats = number(j, "n_nats", "params");
  p.d_m = number(j, "d_m", "params");
  p.h_m_sq = number(j, "h_m_sq", "params");
  p.h_n_sq = number(j, "h_n_sq", "params");
  return p;
}

json to_json(const SolverConfig& cfg) {
  return {{"delta", cfg.delta},
          {"max_iters", cfg.max_iters},
          {"newton_mu0_factor", cfg.newton_mu0_factor},
          {"newton_start",
           cfg.newton_start == NewtonStart::LimitStep ? "limit_step" : "bracket_factor"},
          {"method", to_string(cfg.method)}};
}

SolverConfig config_from_json(const json& j) {
  SolverConfig cfg;
  cfg.delta = number(j, "delta", "solver config");
  cfg.max_iters = integer(j, "max_iters", "solver config");
  cfg.newton_mu0_factor = number(j, "newton_mu0_factor", "solver config");
  const std::string start = text(j, "newton_start", "solver config");
  if (start == "limit_step") {
    cfg.newton_start = NewtonStart::LimitStep;
  } else if (start == "bracket_factor") {
    cfg.newton_start = NewtonStart::BracketFactor;
  } else {
    throw InvalidInput(fmt::format("solver config: unknown newton_start '{}'", start));
  }
  const std::string method = text(j, "method", "solver config");
  if (method == "newton") {
    cfg.method = HnomaMethod::Newton;
  } else if (method == "dinkelbach") {
    cfg.method = HnomaMethod::Dinkelbach;
  } else {
    throw InvalidInput(fmt::format("solver config: unknown method '{}'", method));
  }
  return cfg;
}

json to_json(const Allocation& a) {
  return {{"mode", to_string(a.mode)}, {"p_n1", a.p_n1},       {"p_n2", a.p_n2},
          {"t_n", a.t_n},              {"delay", a.delay},     {"energy_used", a.energy_used},
          {"feasible", true}};
}

json to_json(const SolverTrace& trace) {
  json arr = json::array();
  // Non-finite mu/f (the mu = +inf start) serialize as null.
  for (const TraceRecord& r : trace.records) {
    arr.push_back({{"t", r.t},
                   {"mu", finite_or_null(r.mu)},
                   {"f", finite_or_null(r.f)},
                   {"p_n1", r.p_n1},
                   {"p_n2", r.p_n2},
                   {"delay", r.delay}});
  }
  return arr;
}

json to_json(const Solution& sol) {
  json modes = json::array();
  for (const auto& [mode, alloc] : sol.per_mode) {
    if (alloc) {
      modes.push_back(to_json(*alloc));
    } else {
      modes.push_back({{"mode", to_string(mode)}, {"feasible", false}});
    }
  }
  json j;
  j["energy"] = sol.energy;
  j["regime"] = to_string(sol.regime);
  j["feasible"] = sol.feasible();
  j["per_mode"] = modes;
  j["best_mode"] = sol.best ? json(to_string(sol.best->mode)) : json(nullptr);
  j["best"] = sol.best ? to_json(*sol.best) : json(nullptr);
  j["delay"] = sol.best ? json(sol.best->delay) : json(nullptr);
  j["mu_star"] = optional_number(sol.mu_star);
  j["method"] = to_string(sol.method);
  j["iterations"] = sol.iterations();
  j["trace"] = to_json(sol.trace);
  return j;
}

json to_json(const SweepSpec& spec) {
  return {{"e_min", spec.e_min},
          {"e_max", spec.e_max},
          {"n_points", spec.n_points},
          {"spacing", to_string(spec.spacing)},
          {"params", to_json(spec.params)},
          {"cfg", to_json(spec.cfg)}};
}

SweepSpec sweep_spec_from_json(const json& j) {
  SweepSpec spec;
  spec.e_min = number(j, "e_min", "sweep");
  spec.e_max = number(j, "e_max", "sweep");
  spec.n_points = integer(j, "n_points", "sweep");
  const std::string spacing = text(j, "spacing", "sweep");
  if (spacing == "linear") {
    spec.spacing = Spacing::Linear;
  } else if (spacing == "log") {
    spec.spacing = Spacing::Log;
  } else {
    throw InvalidInput(fmt::format("sweep: unknown spacing '{}'", spacing));
  }
  spec.params = params_from_json(field(j, "params", "sweep"));
  spec.cfg = config_from_json(field(j, "cfg", "sweep"));
  return spec;
}

json to_json(const RunManifest& m) {
  json j;
  j["params"] = to_json(m.params);
  j["energy"] = optional_number(m.energy);
  j["sweep"] = m.sweep ? to_json(*m.sweep) : json(nullptr);
  j["cfg"] = to_json(m.cfg);
  j["outputs"] = m.outputs;
  j["tool_version"] = m.tool_version;
  return j;
}

RunManifest manifest_from_json(const json& j) {
  RunManifest m;
  m.params = params_from_json(field(j, "params", "manifest"));
  const json& energy = field(j, "energy", "manifest");
  if (!energy.is_null()) m.energy = number(j, "energy", "manifest");
  const json& sweep = field(j, "sweep", "manifest");
  if (!sweep.is_null()) m.sweep = sweep_spec_from_json(sweep);
  m.cfg = config_from_json(field(j, "cfg", "manifest"));
  const json& outputs = field(j, "outputs", "manifest");
  if (!outputs.is_array()) throw InvalidInput("manifest: field 'outputs' must be an array");
  for (const json& o : outputs) {
    if (!o.is_string()) throw InvalidInput("manifest: 'outputs' entries must be strings");
    m.outputs.push_back(o.get<std::string>());
  }
  m.tool_version = text(j, "tool_version", "manifest");
  return m;
}

}  // namespace nomamec
