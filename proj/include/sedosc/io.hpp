#pragma once

#include <filesystem>
#include <string>
#include <string_view>

#include "json.hpp"
#include "sedosc/dynamics.hpp"
#include "sedosc/ensemble.hpp"
#include "sedosc/heisenberg.hpp"
#include "sedosc/vacuum_field.hpp"
#include "sedosc/wavepacket.hpp"

namespace sedosc {

using json = nlohmann::ordered_json;

// Shortest decimal representation that round-trips to the same double.
std::string format_double(double value);

json mode_set_to_json(const FieldModeSet& modes);
FieldModeSet mode_set_from_json(const json& j);

// CSV with header (t, q, p, g, is_transient); `config_echo`, when non-null,
// is embedded as a single leading `# config ...` comment line.
std::string trajectory_to_csv(const Trajectory& traj,
                              const json* config_echo = nullptr);

json ensemble_stats_to_json(const EnsembleStats& stats);  // omits wall time
std::string realizations_to_csv(const EnsembleStats& stats,
                                const json* config_echo = nullptr);

json energy_flow_to_json(const EnergyFlowReport& report);

json ensemble_config_to_json(const EnsembleConfig& config);
EnsembleConfig ensemble_config_from_json(const json& j);

// Density snapshot CSV with header (x, density, re_psi, im_psi) on a
// symmetric grid of n_points over [center - half_width, center + half_width].
std::string density_to_csv(const WavepacketSample& sample,
                           const ModelParams& params, double half_width,
                           std::size_t n_points,
                           const json* config_echo = nullptr);

// Write-to-temp-then-rename in the destination directory.
void atomic_write(const std::filesystem::path& path, std::string_view content);

}  // namespace sedosc
