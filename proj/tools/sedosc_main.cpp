// Command-line runner: configure, run and export the oscillator experiments.
//
// Exit codes: 0 success, 2 validation/usage error, 1 runtime error.

#include <cstdlib>
#include <exception>
#include <fstream>
#include <iostream>
#include <optional>
#include <string>

#include "CLI11.hpp"
#include "sedosc/dynamics.hpp"
#include "sedosc/ensemble.hpp"
#include "sedosc/heisenberg.hpp"
#include "sedosc/io.hpp"
#include "sedosc/verify.hpp"

namespace {

using sedosc::json;

constexpr int kExitOk = 0;
constexpr int kExitRuntime = 1;
constexpr int kExitValidation = 2;

// Flat key/value config: subcommand defaults, overlaid by the --config file,
// overlaid by explicitly provided flags. Artifacts embed the result, and an
// emitted artifact is itself accepted as a config file (its "config" object
// is used).
json load_config_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) {
    throw sedosc::validation_error("cannot read config file: " + path);
  }
  json parsed = json::parse(in, nullptr, true, true);
  if (parsed.contains("config") && parsed["config"].is_object()) {
    parsed = parsed["config"];
  }
  if (!parsed.is_object()) {
    throw sedosc::validation_error("config file must hold a JSON object");
  }
  return parsed;
}

void check_subcommand_match(const json& config, const std::string& expected) {
  if (config.contains("subcommand") &&
      config.at("subcommand").get<std::string>() != expected) {
    throw sedosc::validation_error(
        "config file was produced by subcommand '" +
        config.at("subcommand").get<std::string>() + "', not '" + expected +
        "'");
  }
}

std::filesystem::path resolve_output(const std::string& output,
                                     const std::string& default_name) {
  std::filesystem::path path =
      output.empty() ? std::filesystem::path(default_name)
                     : std::filesystem::path(output);
  if (!path.has_parent_path()) {
    if (const char* dir = std::getenv("SEDOSC_OUT_DIR")) {
      path = std::filesystem::path(dir) / path;
    }
  }
  return path;
}

std::pair<int, int> parse_n_range(const std::string& text) {
  const auto dots = text.find("..");
  try {
    if (dots == std::string::npos) {
      const int n = std::stoi(text);
      return {n, n};
    }
    return {std::stoi(text.substr(0, dots)), std::stoi(text.substr(dots + 2))};
  } catch (const std::exception&) {
    throw sedosc::validation_error("cannot parse n-range '" + text +
                                   "': expected N or LO..HI");
  }
}

sedosc::SolverKind parse_solver(const std::string& name) {
  if (name == "stationary") return sedosc::SolverKind::stationary;
  if (name == "time_domain") return sedosc::SolverKind::time_domain;
  throw sedosc::validation_error("unknown solver '" + name +
                                 "': expected stationary | time_domain");
}

struct CommonArgs {
  std::string config_path;
  std::string output;
  std::string format = "json";
  int threads = 0;
};

void add_common(CLI::App* sub, CommonArgs& args, bool with_format = true) {
  sub->add_option("--config", args.config_path,
                  "JSON config file (flags take precedence); an emitted "
                  "artifact is accepted");
  sub->add_option("-o,--output", args.output,
                  "output path (default: <subcommand>.<ext> in $SEDOSC_OUT_DIR "
                  "or the working directory)");
  if (with_format) {
    sub->add_option("--format", args.format, "output format: json | csv")
        ->check(CLI::IsMember({"json", "csv"}));
  }
}

// Merge order: defaults (already in `resolved`), then config file, then flags
// the user actually passed.
void overlay(json& resolved, const json& file_config,
             const std::vector<std::pair<std::string, json>>& provided) {
  for (const auto& [key, value] : file_config.items()) {
    if (key == "subcommand" || key == "output" || key == "format" ||
        key == "threads") {
      continue;
    }
    if (resolved.contains(key)) {
      resolved[key] = value;
    } else {
      throw sedosc::validation_error("unknown config key: " + key);
    }
  }
  for (const auto& [key, value] : provided) {
    resolved[key] = value;
  }
}

void emit(const std::filesystem::path& path, const std::string& content,
          const std::string& summary) {
  sedosc::atomic_write(path, content);
  std::cerr << summary << " -> " << path.string() << "\n";
}

int run_quadrature(const CommonArgs& common, const json& resolved) {
  const auto params =
      sedosc::ModelParams::dimensionless(resolved.at("epsilon").get<double>());
  const auto result =
      sedosc::variance_integral(params, resolved.at("rel_tol").get<double>());

  json artifact{{"config", resolved},
                {"value", result.value},
                {"rel_err", result.rel_error},
                {"narrow_resonance", sedosc::narrow_resonance_value(params)}};
  emit(resolve_output(common.output, "quadrature.json"),
       artifact.dump(2) + "\n",
       "variance integral " + sedosc::format_double(result.value));
  return kExitOk;
}

int run_trajectory(const CommonArgs& common, const json& resolved) {
  const auto params =
      sedosc::ModelParams::dimensionless(resolved.at("epsilon").get<double>());
  const auto modes = sedosc::sample_modes(
      params, resolved.at("omega_cut").get<double>(),
      resolved.at("n_modes").get<std::size_t>(),
      resolved.at("seed").get<std::uint64_t>());

  const double dt = resolved.at("dt").get<double>();
  const double t_total = resolved.at("t_total").get<double>();
  const auto solver = parse_solver(resolved.at("solver").get<std::string>());
  const double dt_max = 2.0 * std::numbers::pi / params.omega0() / 40.0;
  if (!(dt > 0.0) || dt > dt_max) {
    throw sedosc::validation_error(
        "time step too large: dt must satisfy dt <= (2*pi/w0)/40 = " +
        sedosc::format_double(dt_max));
  }
  if (!(t_total > 0.0)) {
    throw sedosc::validation_error("trajectory requires t_total > 0");
  }

  sedosc::Trajectory traj;
  if (solver == sedosc::SolverKind::stationary) {
    const auto n = static_cast<std::size_t>(std::ceil(t_total / dt - 1e-12)) + 1;
    traj = sedosc::stationary_trajectory(modes, sedosc::TimeGrid{dt, n}, params);
  } else {
    traj = sedosc::integrate_time_domain(modes, t_total, dt, {0.0, 0.0}, params);
  }

  if (common.format == "csv") {
    emit(resolve_output(common.output, "trajectory.csv"),
         sedosc::trajectory_to_csv(traj, &resolved),
         "trajectory (" + std::to_string(traj.times.size()) + " samples)");
  } else {
    json artifact{{"config", resolved},
                  {"transient_end", traj.transient_end},
                  {"times", traj.times},
                  {"q", traj.q},
                  {"p", traj.p},
                  {"g", traj.g}};
    emit(resolve_output(common.output, "trajectory.json"),
         artifact.dump(2) + "\n",
         "trajectory (" + std::to_string(traj.times.size()) + " samples)");
  }
  return kExitOk;
}

int run_ensemble_cmd(const CommonArgs& common, json resolved,
                     const std::string& realization_csv) {
  resolved.erase("subcommand");
  sedosc::EnsembleConfig config = sedosc::ensemble_config_from_json(resolved);
  config.threads = common.threads;
  resolved["subcommand"] = "ensemble";

  const sedosc::EnsembleStats stats = sedosc::run_ensemble(config);

  json artifact = sedosc::ensemble_stats_to_json(stats);
  artifact["config"]["subcommand"] = "ensemble";
  emit(resolve_output(common.output, "ensemble.json"), artifact.dump(2) + "\n",
       "ensemble mean_qc_sq " +
           sedosc::format_double(stats.mean_qc_sq.value) + " +- " +
           sedosc::format_double(stats.mean_qc_sq.std_error) + " (wall " +
           sedosc::format_double(stats.wall_time_seconds) + " s)");
  if (!realization_csv.empty()) {
    const json echo = artifact["config"];
    sedosc::atomic_write(resolve_output(realization_csv, realization_csv),
                         sedosc::realizations_to_csv(stats, &echo));
  }
  return kExitOk;
}

int run_heisenberg(const CommonArgs& common, const json& resolved) {
  const auto params =
      sedosc::ModelParams::dimensionless(resolved.at("epsilon").get<double>());
  const auto [n_lo, n_hi] =
      parse_n_range(resolved.at("n_range").get<std::string>());
  const auto reports = sedosc::energy_flow_range(n_lo, n_hi, params);

  if (common.format == "csv") {
    std::string out = "# config " + resolved.dump() + "\n";
    out +=
        "state_index,self_reaction,vacuum_up,vacuum_down,total_full,total_"
        "compact\n";
    for (const auto& r : reports) {
      out += std::to_string(r.state_index) + ',' +
             sedosc::format_double(r.self_reaction) + ',' +
             sedosc::format_double(r.vacuum_up) + ',' +
             sedosc::format_double(r.vacuum_down) + ',' +
             sedosc::format_double(r.total_full) + ',' +
             sedosc::format_double(r.total_compact) + '\n';
    }
    emit(resolve_output(common.output, "heisenberg.csv"), out,
         "energy flow for n=" + std::to_string(n_lo) + ".." +
             std::to_string(n_hi));
  } else {
    json rows = json::array();
    for (const auto& r : reports) rows.push_back(sedosc::energy_flow_to_json(r));
    json artifact{{"config", resolved}, {"reports", rows}};
    emit(resolve_output(common.output, "heisenberg.json"),
         artifact.dump(2) + "\n",
         "energy flow for n=" + std::to_string(n_lo) + ".." +
             std::to_string(n_hi));
  }
  return kExitOk;
}

int run_verify(bool quick, int threads, bool inject_wrong_density) {
  sedosc::verify::VerifyOptions options;
  options.quick = quick;
  options.threads = threads;
  options.inject_wrong_density = inject_wrong_density;

  const auto results = sedosc::verify::run_all(options);
  std::size_t width = 0;
  for (const auto& r : results) width = std::max(width, r.name.size());
  for (const auto& r : results) {
    std::cout << (r.pass ? "PASS  " : "FAIL  ") << r.name
              << std::string(width - r.name.size() + 2, ' ') << "["
              << sedosc::format_double(r.seconds) << " s]  " << r.detail
              << "\n";
  }
  const bool ok = sedosc::verify::all_passed(results);
  std::cout << (ok ? "all checks passed" : "CHECKS FAILED") << "\n";
  return ok ? kExitOk : kExitRuntime;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{
      "Charged-oscillator zero-point field simulator: vacuum-field "
      "trajectories, wavepacket statistics and energy-flow reports"};
  app.require_subcommand(1);

  // --- quadrature ---------------------------------------------------------
  auto* quad = app.add_subcommand(
      "quadrature", "stationary <q_c^2> by adaptive spectral quadrature");
  CommonArgs quad_common;
  add_common(quad, quad_common, false);
  double quad_epsilon = 1e-3;
  double quad_rel_tol = 1e-6;
  quad->add_option("--epsilon", quad_epsilon, "dimensionless damping");
  quad->add_option("--rel-tol", quad_rel_tol, "quadrature relative tolerance");

  // --- trajectory ---------------------------------------------------------
  auto* traj = app.add_subcommand("trajectory",
                                  "single seeded field realization -> "
                                  "(t, q, p, g) samples");
  CommonArgs traj_common;
  traj_common.format = "csv";
  add_common(traj, traj_common);
  double traj_epsilon = 1e-2;
  double traj_omega_cut = 5.0;
  std::size_t traj_n_modes = 5000;
  std::uint64_t traj_seed = 1234567;
  double traj_dt = 2.0 * std::numbers::pi / 40.0;
  double traj_t_total = 1000.0;
  std::string traj_solver = "stationary";
  traj->add_option("--epsilon", traj_epsilon, "dimensionless damping");
  traj->add_option("--omega-cut", traj_omega_cut, "spectral cutoff");
  traj->add_option("--n-modes", traj_n_modes, "number of field modes");
  traj->add_option("--seed", traj_seed, "phase RNG seed");
  traj->add_option("--dt", traj_dt, "sample spacing");
  traj->add_option("--t-total", traj_t_total, "trajectory duration");
  traj->add_option("--solver", traj_solver, "stationary | time_domain")
      ->check(CLI::IsMember({"stationary", "time_domain"}));

  // --- ensemble -----------------------------------------------------------
  auto* ens = app.add_subcommand(
      "ensemble", "Monte Carlo average over random-phase realizations");
  CommonArgs ens_common;
  add_common(ens, ens_common, false);
  sedosc::EnsembleConfig ens_defaults;
  double ens_epsilon = ens_defaults.epsilon;
  double ens_omega_cut = ens_defaults.omega_cut;
  std::size_t ens_n_modes = ens_defaults.n_modes;
  double ens_dt = ens_defaults.dt;
  double ens_t_total = ens_defaults.t_total;
  std::size_t ens_realizations = ens_defaults.realizations;
  std::uint64_t ens_seed = ens_defaults.base_seed;
  std::string ens_solver = "stationary";
  std::string ens_realization_csv;
  ens->add_option("--epsilon", ens_epsilon, "dimensionless damping");
  ens->add_option("--omega-cut", ens_omega_cut, "spectral cutoff");
  ens->add_option("--n-modes", ens_n_modes, "number of field modes");
  ens->add_option("--dt", ens_dt, "sample spacing");
  ens->add_option("--t-total", ens_t_total, "duration per realization");
  ens->add_option("--realizations", ens_realizations, "number of realizations");
  ens->add_option("--seed", ens_seed, "base seed (realization r uses seed+r)");
  ens->add_option("--solver", ens_solver, "stationary | time_domain")
      ->check(CLI::IsMember({"stationary", "time_domain"}));
  ens->add_option("--threads", ens_common.threads,
                  "worker threads (0 = hardware); results are independent of "
                  "the thread count");
  ens->add_option("--realization-csv", ens_realization_csv,
                  "also write per-realization CSV to this path");

  // --- heisenberg ---------------------------------------------------------
  auto* heis = app.add_subcommand(
      "heisenberg", "ladder-state energy-flow decomposition (self-reaction "
                    "vs vacuum terms)");
  CommonArgs heis_common;
  add_common(heis, heis_common);
  double heis_epsilon = 1e-2;
  std::string heis_range = "0..10";
  heis->add_option("--epsilon", heis_epsilon, "dimensionless damping");
  heis->add_option("--n-range", heis_range, "state range LO..HI (or one N)");

  // --- verify -------------------------------------------------------------
  auto* verify_cmd = app.add_subcommand(
      "verify", "run the built-in acceptance checks and print a table");
  bool verify_quick = false;
  int verify_threads = 0;
  bool verify_inject = false;
  verify_cmd->add_flag("--quick", verify_quick,
                       "sub-minute subset of the checks");
  verify_cmd->add_option("--threads", verify_threads, "worker threads");
  verify_cmd->add_flag("--inject-wrong-density", verify_inject,
                       "test hook: corrupt the sampled spectral density "
                       "(w^2 for w^3) to prove the checks catch it");

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitValidation;
  }

  try {
    if (quad->parsed()) {
      json resolved{{"subcommand", "quadrature"},
                    {"epsilon", quad_epsilon},
                    {"rel_tol", quad_rel_tol}};
      json file = quad_common.config_path.empty()
                      ? json::object()
                      : load_config_file(quad_common.config_path);
      check_subcommand_match(file, "quadrature");
      std::vector<std::pair<std::string, json>> provided;
      if (quad->count("--epsilon")) provided.emplace_back("epsilon", quad_epsilon);
      if (quad->count("--rel-tol")) provided.emplace_back("rel_tol", quad_rel_tol);
      overlay(resolved, file, provided);
      return run_quadrature(quad_common, resolved);
    }
    if (traj->parsed()) {
      json resolved{{"subcommand", "trajectory"},
                    {"epsilon", traj_epsilon},
                    {"omega_cut", traj_omega_cut},
                    {"n_modes", traj_n_modes},
                    {"seed", traj_seed},
                    {"dt", traj_dt},
                    {"t_total", traj_t_total},
                    {"solver", traj_solver}};
      json file = traj_common.config_path.empty()
                      ? json::object()
                      : load_config_file(traj_common.config_path);
      check_subcommand_match(file, "trajectory");
      std::vector<std::pair<std::string, json>> provided;
      if (traj->count("--epsilon")) provided.emplace_back("epsilon", traj_epsilon);
      if (traj->count("--omega-cut"))
        provided.emplace_back("omega_cut", traj_omega_cut);
      if (traj->count("--n-modes")) provided.emplace_back("n_modes", traj_n_modes);
      if (traj->count("--seed")) provided.emplace_back("seed", traj_seed);
      if (traj->count("--dt")) provided.emplace_back("dt", traj_dt);
      if (traj->count("--t-total")) provided.emplace_back("t_total", traj_t_total);
      if (traj->count("--solver")) provided.emplace_back("solver", traj_solver);
      overlay(resolved, file, provided);
      return run_trajectory(traj_common, resolved);
    }
    if (ens->parsed()) {
      json resolved{{"subcommand", "ensemble"},
                    {"epsilon", ens_epsilon},
                    {"omega_cut", ens_omega_cut},
                    {"n_modes", ens_n_modes},
                    {"dt", ens_dt},
                    {"t_total", ens_t_total},
                    {"realizations", ens_realizations},
                    {"seed", ens_seed},
                    {"solver", ens_solver}};
      json file = ens_common.config_path.empty()
                      ? json::object()
                      : load_config_file(ens_common.config_path);
      check_subcommand_match(file, "ensemble");
      std::vector<std::pair<std::string, json>> provided;
      if (ens->count("--epsilon")) provided.emplace_back("epsilon", ens_epsilon);
      if (ens->count("--omega-cut"))
        provided.emplace_back("omega_cut", ens_omega_cut);
      if (ens->count("--n-modes")) provided.emplace_back("n_modes", ens_n_modes);
      if (ens->count("--dt")) provided.emplace_back("dt", ens_dt);
      if (ens->count("--t-total")) provided.emplace_back("t_total", ens_t_total);
      if (ens->count("--realizations"))
        provided.emplace_back("realizations", ens_realizations);
      if (ens->count("--seed")) provided.emplace_back("seed", ens_seed);
      if (ens->count("--solver")) provided.emplace_back("solver", ens_solver);
      overlay(resolved, file, provided);
      return run_ensemble_cmd(ens_common, resolved, ens_realization_csv);
    }
    if (heis->parsed()) {
      json resolved{{"subcommand", "heisenberg"},
                    {"epsilon", heis_epsilon},
                    {"n_range", heis_range}};
      json file = heis_common.config_path.empty()
                      ? json::object()
                      : load_config_file(heis_common.config_path);
      check_subcommand_match(file, "heisenberg");
      std::vector<std::pair<std::string, json>> provided;
      if (heis->count("--epsilon")) provided.emplace_back("epsilon", heis_epsilon);
      if (heis->count("--n-range")) provided.emplace_back("n_range", heis_range);
      overlay(resolved, file, provided);
      return run_heisenberg(heis_common, resolved);
    }
    if (verify_cmd->parsed()) {
      return run_verify(verify_quick, verify_threads, verify_inject);
    }
  } catch (const sedosc::validation_error& e) {
    std::cerr << "validation error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const json::exception& e) {
    std::cerr << "config error: " << e.what() << "\n";
    return kExitValidation;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitRuntime;
  }
  return kExitValidation;
}
