#include "sedosc/vacuum_field.hpp"

#include <cmath>
#include <numbers>
#include <random>
#include <string>

namespace sedosc {

namespace {
constexpr double kTwoPi = 2.0 * std::numbers::pi;
}

FieldModeSet::FieldModeSet(std::vector<double> frequencies_in,
                           std::vector<double> amplitudes_in,
                           std::vector<double> phases_in, std::uint64_t seed_in,
                           double omega_cut_in)
    : frequencies(std::move(frequencies_in)),
      amplitudes(std::move(amplitudes_in)),
      phases(std::move(phases_in)),
      seed(seed_in),
      omega_cut(omega_cut_in) {
  const std::size_t n = frequencies.size();
  if (n < 1) {
    throw validation_error("FieldModeSet requires at least one mode");
  }
  if (amplitudes.size() != n || phases.size() != n) {
    throw validation_error(
        "FieldModeSet lists must have equal length: frequencies=" +
        std::to_string(n) + " amplitudes=" + std::to_string(amplitudes.size()) +
        " phases=" + std::to_string(phases.size()));
  }
  double prev = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    if (!(frequencies[i] > prev)) {
      throw validation_error(
          "FieldModeSet frequencies must be strictly increasing and > 0");
    }
    prev = frequencies[i];
    if (!(amplitudes[i] >= 0.0)) {
      throw validation_error("FieldModeSet amplitudes must be >= 0");
    }
    if (!(phases[i] >= 0.0) || !(phases[i] < kTwoPi)) {
      throw validation_error("FieldModeSet phases must lie in [0, 2*pi)");
    }
  }
  if (omega_cut == 0.0) {
    omega_cut = frequencies.back();
  }
}

double spectral_density(double omega, const ModelParams& params) {
  if (!(omega >= 0.0)) {
    throw validation_error("spectral_density requires omega >= 0");
  }
  return params.epsilon() / std::numbers::pi * params.hbar() * omega * omega *
         omega / (params.mass() * params.omega0());
}

double mode_amplitude(double omega, double delta_omega,
                      const ModelParams& params) {
  return std::sqrt(2.0 * spectral_density(omega, params) * delta_omega);
}

std::vector<double> draw_phases(std::uint64_t seed, std::size_t count) {
  std::mt19937_64 gen(seed);
  std::vector<double> phases(count);
  for (std::size_t i = 0; i < count; ++i) {
    // 53-bit uniform in [0, 1); the distribution classes are not
    // implementation-stable, this mapping is.
    const double u = static_cast<double>(gen() >> 11) * 0x1.0p-53;
    double theta = kTwoPi * u;
    if (theta >= kTwoPi) theta = 0.0;  // guard the rounding edge
    phases[i] = theta;
  }
  return phases;
}

FieldModeSet sample_modes(const ModelParams& params, double omega_cut,
                          std::size_t n_modes, std::uint64_t seed) {
  if (n_modes < 1) {
    throw validation_error("sample_modes requires n_modes >= 1");
  }
  if (!(omega_cut > params.omega0())) {
    throw validation_error("sample_modes requires omega_cut > omega0");
  }
  const double delta = omega_cut / static_cast<double>(n_modes);
  const double linewidth = params.epsilon() * params.omega0();
  if (!(delta <= linewidth / 10.0)) {
    const double required =
        std::ceil(10.0 * omega_cut / (linewidth > 0.0 ? linewidth : 1e-300));
    throw validation_error(
        "mode grid too coarse to resolve the resonance linewidth: dw = " +
        std::to_string(delta) + " > eps*w0/10 = " +
        std::to_string(linewidth / 10.0) +
        "; need n_modes >= " + std::to_string(required));
  }

  std::vector<double> freqs(n_modes);
  std::vector<double> amps(n_modes);
  for (std::size_t n = 0; n < n_modes; ++n) {
    freqs[n] = (static_cast<double>(n) + 0.5) * delta;
    amps[n] = mode_amplitude(freqs[n], delta, params);
  }
  return FieldModeSet(std::move(freqs), std::move(amps),
                      draw_phases(seed, n_modes), seed, omega_cut);
}

double field_at(const FieldModeSet& modes, double t) {
  double sum = 0.0;
  const std::size_t n = modes.size();
  for (std::size_t i = 0; i < n; ++i) {
    sum += modes.amplitudes[i] * std::cos(modes.frequencies[i] * t + modes.phases[i]);
  }
  return sum;
}

double field_derivative_at(const FieldModeSet& modes, double t) {
  double sum = 0.0;
  const std::size_t n = modes.size();
  for (std::size_t i = 0; i < n; ++i) {
    sum -= modes.amplitudes[i] * modes.frequencies[i] *
           std::sin(modes.frequencies[i] * t + modes.phases[i]);
  }
  return sum;
}

double vector_potential_at(const FieldModeSet& modes, double t,
                           const ModelParams& params) {
  double sum = 0.0;
  const std::size_t n = modes.size();
  for (std::size_t i = 0; i < n; ++i) {
    sum += modes.amplitudes[i] / modes.frequencies[i] *
           std::sin(modes.frequencies[i] * t + modes.phases[i]);
  }
  return -params.c_light() * sum;
}

}  // namespace sedosc
