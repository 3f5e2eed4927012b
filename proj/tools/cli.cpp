#include "cli.hpp"

#include <algorithm>
#include <cmath>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <optional>
#include <sstream>

#include <fmt/format.h>
#include <nlohmann/json.hpp>

#include "CLI11.hpp"
#include "nomamec/experiments.hpp"
#include "nomamec/io.hpp"
#include "nomamec/oracle.hpp"
#include "nomamec/solvers.hpp"

namespace nomamec::cli {

namespace fs = std::filesystem;
using nlohmann::json;

namespace {

json load_json_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw InvalidInput(fmt::format("cannot open '{}'", path));
  try {
    return json::parse(in);
  } catch (const json::parse_error& e) {
    throw InvalidInput(fmt::format("'{}' is not valid JSON: {}", path, e.what()));
  }
}

struct ResolvedInstance {
  SystemParams params;
  std::optional<double> energy;
};

// Values given on the command line; each overrides the instance file.
struct InstanceFlags {
  std::string file;
  std::optional<double> n_nats, d_m, h_m_sq, h_n_sq, energy;

  void attach(CLI::App& app, bool with_energy) {
    app.add_option("--instance", file, "JSON instance file (n_nats, d_m, h_m_sq, h_n_sq, energy)");
    app.add_option("--n,--n_nats", n_nats, "task size N in nats");
    app.add_option("--dm,--d_m", d_m, "user m deadline D_m in seconds");
    app.add_option("--hm2,--h_m_sq", h_m_sq, "channel power gain |h_m|^2");
    app.add_option("--hn2,--h_n_sq", h_n_sq, "channel power gain |h_n|^2");
    if (with_energy) app.add_option("--energy", energy, "user n energy budget E");
  }

  // Starts from base (the reference setting N = 15, D_m = 5, unit gains by
  // default), then the instance file, then individual flags.
  ResolvedInstance resolve(SystemParams base = {15.0, 5.0, 1.0, 1.0}) const {
    ResolvedInstance inst{base, std::nullopt};
    if (!file.empty()) {
      const json j = load_json_file(file);
      inst.params = params_from_json(j);
      if (j.contains("energy")) inst.energy = instance_from_json(j).energy;
    }
    if (n_nats) inst.params.n_nats = *n_nats;
    if (d_m) inst.params.d_m = *d_m;
    if (h_m_sq) inst.params.h_m_sq = *h_m_sq;
    if (h_n_sq) inst.params.h_n_sq = *h_n_sq;
    if (energy) inst.energy = *energy;
    inst.params.validate();
    return inst;
  }
};

struct SolverFlags {
  std::string method = "newton";
  std::optional<double> delta;
  std::optional<int> max_iters;
  std::optional<double> mu0_factor;

  void attach(CLI::App& app) {
    app.add_option("--method", method, "H-NOMA solver")
        ->check(CLI::IsMember({"newton", "dinkelbach"}));
    app.add_option("--delta", delta, "stopping threshold on F(mu)");
    app.add_option("--max-iters", max_iters, "iteration cap");
    app.add_option("--mu0-factor", mu0_factor,
                   "start Newton at factor * mu_lb(E) instead of the shared limit step");
  }

  SolverConfig resolve(SolverConfig cfg = {}) const {
    cfg.method = method == "dinkelbach" ? HnomaMethod::Dinkelbach : HnomaMethod::Newton;
    if (delta) cfg.delta = *delta;
    if (max_iters) cfg.max_iters = *max_iters;
    if (mu0_factor) {
      cfg.newton_mu0_factor = *mu0_factor;
      cfg.newton_start = NewtonStart::BracketFactor;
    }
    cfg.validate();
    return cfg;
  }
};

fs::path output_path(const std::string& requested) {
  fs::path p(requested);
  if (p.is_relative()) {
    if (const char* dir = std::getenv(kOutDirEnv); dir != nullptr && *dir != '\0') {
      p = fs::path(dir) / p;
    }
  }
  if (p.has_parent_path()) fs::create_directories(p.parent_path());
  return p;
}

fs::path manifest_path_for(const fs::path& csv) {
  fs::path m = csv;
  m.replace_extension(".manifest.json");
  return m;
}

void write_file(const fs::path& path, const std::string& content) {
  std::ofstream f(path, std::ios::binary);
  if (!f) throw InvalidInput(fmt::format("cannot write '{}'", path.string()));
  f << content;
}

double require_energy(const ResolvedInstance& inst) {
  if (!inst.energy) {
    throw InvalidInput("energy is required (pass --energy or an instance file with 'energy')");
  }
  return *inst.energy;
}

int cmd_solve(const InstanceFlags& iflags, const SolverFlags& sflags, std::ostream& out) {
  const ResolvedInstance inst = iflags.resolve();
  const double energy = require_energy(inst);
  const SolverConfig cfg = sflags.resolve();
  const Scenario scenario(inst.params);
  const Solution sol = solve(scenario, energy, cfg);
  out << to_json(sol).dump(2) << '\n';
  return sol.feasible() ? kExitOk : kExitInfeasible;
}

struct SweepFlags {
  std::string manifest;
  std::optional<double> e_min, e_max;
  std::optional<int> points;
  std::optional<std::string> spacing;
  std::string out = "sweep.csv";

  void attach(CLI::App& app) {
    app.add_option("--manifest", manifest, "rerun the sweep recorded in a manifest");
    app.add_option("--e-min", e_min, "smallest energy budget");
    app.add_option("--e-max", e_max, "largest energy budget");
    app.add_option("--points", points, "number of budgets");
    app.add_option("--spacing", spacing, "budget spacing")
        ->check(CLI::IsMember({"linear", "log"}));
    app.add_option("--out", out, "CSV output path");
  }
};

int cmd_sweep(const SweepFlags& wflags, const InstanceFlags& iflags, const SolverFlags& sflags,
              const CLI::App& app, std::ostream& out, std::ostream& err) {
  SweepSpec spec;
  if (!wflags.manifest.empty()) {
    const RunManifest m = manifest_from_json(load_json_file(wflags.manifest));
    if (!m.sweep) throw InvalidInput("manifest does not describe a sweep");
    spec = *m.sweep;
  }
  spec.params = iflags.resolve(spec.params).params;
  if (wflags.e_min) spec.e_min = *wflags.e_min;
  if (wflags.e_max) spec.e_max = *wflags.e_max;
  if (wflags.points) spec.n_points = *wflags.points;
  if (wflags.spacing) spec.spacing = *wflags.spacing == "log" ? Spacing::Log : Spacing::Linear;
  if (wflags.manifest.empty() || app.count("--method") > 0 || app.count("--delta") > 0 ||
      app.count("--max-iters") > 0 || app.count("--mu0-factor") > 0) {
    spec.cfg = sflags.resolve(spec.cfg);
  }
  spec.validate();

  const std::vector<SweepRow> rows = energy_sweep(spec);
  std::ostringstream csv;
  write_sweep_csv(csv, rows);

  const fs::path csv_path = output_path(wflags.out);
  const fs::path manifest_path = manifest_path_for(csv_path);
  write_file(csv_path, csv.str());

  RunManifest m;
  m.params = spec.params;
  m.sweep = spec;
  m.cfg = spec.cfg;
  m.outputs = {csv_path.string(), manifest_path.string()};
  write_file(manifest_path, to_json(m).dump(2) + "\n");

  const auto violations = noma_ordering_violations(rows);
  for (std::size_t i : violations) {
    err << fmt::format("WARNING: NOMA delay {} exceeds OMA delay {} at E = {}\n",
                       *rows[i].delay_noma, *rows[i].delay_oma, rows[i].energy);
  }
  out << fmt::format("sweep: {} rows -> {} (manifest {}); NOMA > OMA at {} points\n",
                     rows.size(), csv_path.string(), manifest_path.string(), violations.size());
  return kExitOk;
}

int cmd_trace(const InstanceFlags& iflags, const SolverFlags& sflags,
              const std::string& out_file, std::ostream& out) {
  const ResolvedInstance inst = iflags.resolve();
  const double energy = require_energy(inst);
  const SolverConfig cfg = sflags.resolve();
  const Scenario scenario(inst.params);
  const ConvergenceComparison cmp = convergence_trace(scenario, energy, cfg);

  std::ostringstream csv;
  write_trace_csv(csv, cmp);
  if (out_file.empty()) {
    out << csv.str();
    return kExitOk;
  }
  const fs::path csv_path = output_path(out_file);
  const fs::path manifest_path = manifest_path_for(csv_path);
  write_file(csv_path, csv.str());
  RunManifest m;
  m.params = inst.params;
  m.energy = energy;
  m.cfg = cfg;
  m.outputs = {csv_path.string(), manifest_path.string()};
  write_file(manifest_path, to_json(m).dump(2) + "\n");

  json summary = {{"csv", csv_path.string()},
                  {"manifest", manifest_path.string()},
                  {"iterations_dinkelbach", cmp.dinkelbach.iterations()},
                  {"iterations_newton", cmp.newton.iterations()},
                  {"delay_dinkelbach", cmp.delay_dinkelbach},
                  {"delay_newton", cmp.delay_newton},
                  {"relative_gap", cmp.relative_gap}};
  out << summary.dump(2) << '\n';
  return kExitOk;
}

struct CompareFlags {
  int grid = 2001;
  double p2_multiplier = 2.0;
  bool log_grid = false;

  void attach(CLI::App& app) {
    app.add_option("--grid", grid, "grid points per axis");
    app.add_option("--p2-mult", p2_multiplier, "p_n2 range multiplier");
    app.add_flag("--log-grid", log_grid, "geometric grid spacing");
  }
};

int cmd_compare(const InstanceFlags& iflags, const SolverFlags& sflags, const CompareFlags& cflags,
                std::ostream& out) {
  const ResolvedInstance inst = iflags.resolve();
  const double energy = require_energy(inst);
  const SolverConfig cfg = sflags.resolve();
  const Scenario scenario(inst.params);
  GridSpec grid;
  grid.p1_points = cflags.grid;
  grid.p2_points = cflags.grid;
  grid.p2_max_multiplier = cflags.p2_multiplier;
  grid.log_spacing = cflags.log_grid;

  const auto oracle = grid_min_delay(scenario, energy, grid);
  const Solution sol = solve(scenario, energy, cfg);
  if (!oracle || !sol.best) {
    out << json{{"solver", sol.best ? json(sol.best->delay) : json(nullptr)},
                {"oracle", oracle ? json(oracle->delay) : json(nullptr)},
                {"relative_gap", nullptr}}
               .dump(2)
        << '\n';
    return kExitInfeasible;
  }
  const double gap = std::abs(oracle->delay - sol.best->delay) / sol.best->delay;
  const bool pass = gap <= kCompareTolerance;
  json j = {{"solver", sol.best->delay},
            {"solver_mode", to_string(sol.best->mode)},
            {"oracle", oracle->delay},
            {"oracle_p_n1", oracle->p_n1},
            {"oracle_p_n2", oracle->p_n2},
            {"relative_gap", gap},
            {"tolerance", kCompareTolerance},
            {"pass", pass}};
  out << j.dump(2) << '\n';
  return pass ? kExitOk : kExitCheckFailed;
}

}  // namespace

int run(const std::vector<std::string>& args, std::ostream& out, std::ostream& err) {
  CLI::App app{"Delay-minimal offloading for two-user NOMA-assisted MEC"};
  app.require_subcommand(1);
  app.set_version_flag("--version", std::string(tool_version()));

  InstanceFlags iflags;
  SolverFlags sflags;
  SweepFlags wflags;
  CompareFlags cflags;
  std::string trace_out;

  CLI::App* solve_cmd = app.add_subcommand("solve", "solve one instance and print the solution JSON");
  iflags.attach(*solve_cmd, true);
  sflags.attach(*solve_cmd);

  CLI::App* sweep_cmd = app.add_subcommand("sweep", "delay versus energy sweep to CSV + manifest");
  iflags.attach(*sweep_cmd, false);
  sflags.attach(*sweep_cmd);
  wflags.attach(*sweep_cmd);

  CLI::App* trace_cmd =
      app.add_subcommand("trace", "per-iteration traces of both H-NOMA solvers as CSV");
  iflags.attach(*trace_cmd, true);
  sflags.attach(*trace_cmd);
  trace_cmd->add_option("--out", trace_out, "CSV output path (stdout when omitted)");

  CLI::App* compare_cmd =
      app.add_subcommand("compare", "solver versus brute-force grid oracle");
  iflags.attach(*compare_cmd, true);
  sflags.attach(*compare_cmd);
  cflags.attach(*compare_cmd);

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e, out, err);
    return code == 0 ? kExitOk : kExitBadInput;
  }

  try {
    if (*solve_cmd) return cmd_solve(iflags, sflags, out);
    if (*sweep_cmd) return cmd_sweep(wflags, iflags, sflags, *sweep_cmd, out, err);
    if (*trace_cmd) return cmd_trace(iflags, sflags, trace_out, out);
    if (*compare_cmd) return cmd_compare(iflags, sflags, cflags, out);
  } catch (const ConvergenceError& e) {
    err << "error: " << e.what() << '\n';
    err << json{{"trace", to_json(e.trace())}}.dump() << '\n';
    return kExitConvergence;
  } catch (const InitializationError& e) {
    err << "error: " << e.what() << '\n';
    return kExitConvergence;
  } catch (const InvalidInput& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const RegimeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const DomainError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const RangeError& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  } catch (const fs::filesystem_error& e) {
    err << "error: " << e.what() << '\n';
    return kExitBadInput;
  }
  return kExitBadInput;
}

}  // namespace nomamec::cli
