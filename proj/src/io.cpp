#include "sedosc/io.hpp"

#include <charconv>
#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <system_error>

namespace sedosc {

std::string format_double(double value) {
  char buf[32];
  const auto [ptr, ec] = std::to_chars(buf, buf + sizeof(buf), value);
  if (ec != std::errc()) {
    throw std::runtime_error("failed to format double");
  }
  return std::string(buf, ptr);
}

json mode_set_to_json(const FieldModeSet& modes) {
  return json{{"seed", modes.seed},
              {"omega_cut", modes.omega_cut},
              {"n_modes", modes.size()},
              {"frequencies", modes.frequencies},
              {"amplitudes", modes.amplitudes},
              {"phases", modes.phases}};
}

FieldModeSet mode_set_from_json(const json& j) {
  FieldModeSet modes(j.at("frequencies").get<std::vector<double>>(),
                     j.at("amplitudes").get<std::vector<double>>(),
                     j.at("phases").get<std::vector<double>>(),
                     j.at("seed").get<std::uint64_t>(),
                     j.at("omega_cut").get<double>());
  if (j.at("n_modes").get<std::size_t>() != modes.size()) {
    throw validation_error("mode set JSON: n_modes does not match list size");
  }
  return modes;
}

std::string trajectory_to_csv(const Trajectory& traj,
                              const json* config_echo) {
  std::string out;
  out.reserve(64 * traj.times.size() + 64);
  if (config_echo != nullptr) {
    out += "# config ";
    out += config_echo->dump();
    out += '\n';
  }
  out += "t,q,p,g,is_transient\n";
  for (std::size_t k = 0; k < traj.times.size(); ++k) {
    out += format_double(traj.times[k]);
    out += ',';
    out += format_double(traj.q[k]);
    out += ',';
    out += format_double(traj.p[k]);
    out += ',';
    out += format_double(traj.g[k]);
    out += ',';
    out += (k < traj.transient_end) ? '1' : '0';
    out += '\n';
  }
  return out;
}

namespace {

json moment_to_json(const MomentEstimate& m) {
  return json{{"value", m.value},
              {"std_error", m.std_error},
              {"effective_samples", m.effective_samples}};
}

}  // namespace

json ensemble_config_to_json(const EnsembleConfig& config) {
  return json{
      {"epsilon", config.epsilon},
      {"omega_cut", config.omega_cut},
      {"n_modes", config.n_modes},
      {"dt", config.dt},
      {"t_total", config.t_total},
      {"realizations", config.realizations},
      {"seed", config.base_seed},
      {"solver", config.solver == SolverKind::stationary ? "stationary"
                                                         : "time_domain"},
  };
}

EnsembleConfig ensemble_config_from_json(const json& j) {
  EnsembleConfig config;
  if (j.contains("epsilon")) config.epsilon = j.at("epsilon").get<double>();
  if (j.contains("omega_cut"))
    config.omega_cut = j.at("omega_cut").get<double>();
  if (j.contains("n_modes"))
    config.n_modes = j.at("n_modes").get<std::size_t>();
  if (j.contains("dt")) config.dt = j.at("dt").get<double>();
  if (j.contains("t_total")) config.t_total = j.at("t_total").get<double>();
  if (j.contains("realizations"))
    config.realizations = j.at("realizations").get<std::size_t>();
  if (j.contains("seed")) config.base_seed = j.at("seed").get<std::uint64_t>();
  if (j.contains("solver")) {
    const std::string solver = j.at("solver").get<std::string>();
    if (solver == "stationary") {
      config.solver = SolverKind::stationary;
    } else if (solver == "time_domain") {
      config.solver = SolverKind::time_domain;
    } else {
      throw validation_error("unknown solver '" + solver +
                             "': expected stationary | time_domain");
    }
  }
  return config;
}

json ensemble_stats_to_json(const EnsembleStats& stats) {
  json per_realization = json::array();
  for (const RealizationResult& r : stats.per_realization) {
    per_realization.push_back(json{{"seed", r.seed},
                                   {"mean_q", r.mean_q},
                                   {"mean_q_sq", r.mean_q_sq},
                                   {"transient_time", r.transient_time},
                                   {"samples_used", r.samples_used}});
  }
  return json{{"config", ensemble_config_to_json(stats.config)},
              {"mean_qc", moment_to_json(stats.mean_qc)},
              {"mean_qc_sq", moment_to_json(stats.mean_qc_sq)},
              {"mean_xbar_sq", moment_to_json(stats.mean_xbar_sq)},
              {"realizations", per_realization}};
}

std::string realizations_to_csv(const EnsembleStats& stats,
                                const json* config_echo) {
  std::string out;
  if (config_echo != nullptr) {
    out += "# config ";
    out += config_echo->dump();
    out += '\n';
  }
  out += "seed,mean_q,mean_q_sq,transient_time\n";
  for (const RealizationResult& r : stats.per_realization) {
    out += std::to_string(r.seed);
    out += ',';
    out += format_double(r.mean_q);
    out += ',';
    out += format_double(r.mean_q_sq);
    out += ',';
    out += format_double(r.transient_time);
    out += '\n';
  }
  return out;
}

json energy_flow_to_json(const EnergyFlowReport& report) {
  return json{{"state_index", report.state_index},
              {"self_reaction", report.self_reaction},
              {"vacuum_up", report.vacuum_up},
              {"vacuum_down", report.vacuum_down},
              {"total_full", report.total_full},
              {"total_compact", report.total_compact}};
}

std::string density_to_csv(const WavepacketSample& sample,
                           const ModelParams& params, double half_width,
                           std::size_t n_points, const json* config_echo) {
  if (n_points < 2) {
    throw validation_error("density_to_csv requires n_points >= 2");
  }
  std::string out;
  if (config_echo != nullptr) {
    out += "# config ";
    out += config_echo->dump();
    out += '\n';
  }
  out += "x,density,re_psi,im_psi\n";
  const double dx = 2.0 * half_width / static_cast<double>(n_points - 1);
  for (std::size_t j = 0; j < n_points; ++j) {
    const double x = sample.center - half_width + static_cast<double>(j) * dx;
    const std::complex<double> psi = wavefunction(x, sample, params);
    out += format_double(x);
    out += ',';
    out += format_double(std::norm(psi));
    out += ',';
    out += format_double(psi.real());
    out += ',';
    out += format_double(psi.imag());
    out += '\n';
  }
  return out;
}

void atomic_write(const std::filesystem::path& path,
                  std::string_view content) {
  const std::filesystem::path dir =
      path.has_parent_path() ? path.parent_path() : ".";
  std::filesystem::create_directories(dir);
  const std::filesystem::path tmp =
      dir / (path.filename().string() + ".tmp");
  {
    std::ofstream out(tmp, std::ios::binary | std::ios::trunc);
    if (!out) {
      throw std::runtime_error("cannot open " + tmp.string() + " for writing");
    }
    out.write(content.data(),
              static_cast<std::streamsize>(content.size()));
    if (!out) {
      throw std::runtime_error("write failed: " + tmp.string());
    }
  }
  std::filesystem::rename(tmp, path);
}

}  // namespace sedosc
