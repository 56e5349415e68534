#pragma once

#include <cstdint>
#include <vector>

#include "sedosc/model.hpp"

namespace sedosc {

// One realization of the classical zero-point field: a finite random-phase
// mode superposition
//
//     E0(t) = sum_n A_n cos(w_n t + theta_n).
//
// Amplitudes are stored for the per-mass drive (e/m) E0; in the canonical
// dimensionless units (e = m = 1) that coincides with the field amplitude.
struct FieldModeSet {
  std::vector<double> frequencies;  // strictly increasing, all > 0
  std::vector<double> amplitudes;   // all >= 0
  std::vector<double> phases;       // in [0, 2*pi)
  std::uint64_t seed = 0;
  double omega_cut = 0.0;

  FieldModeSet(std::vector<double> frequencies, std::vector<double> amplitudes,
               std::vector<double> phases, std::uint64_t seed = 0,
               double omega_cut = 0.0);

  std::size_t size() const { return frequencies.size(); }
};

// One-sided spectral density of the per-mass driving force (e/m) E0:
//
//     S_F(w) = (eps/pi) * hbar * w^3 / (m * w0),
//
// i.e. (eps/pi) w^3 in dimensionless units. This is the unique density whose
// continuum response integral reproduces the stationary <q_c^2>.
double spectral_density(double omega, const ModelParams& params);

// Per-mode amplitude on a grid of spacing delta_omega: A^2 = 2 S_F(w) dw.
double mode_amplitude(double omega, double delta_omega,
                      const ModelParams& params);

// `count` i.i.d. uniform [0, 2*pi) phases from a seeded mt19937_64.
// The mapping is fixed: theta = 2*pi * ((x >> 11) * 2^-53) per 64-bit draw.
std::vector<double> draw_phases(std::uint64_t seed, std::size_t count);

// Sample one field realization on the midpoint grid w_n = (n - 1/2) dw,
// dw = omega_cut / n_modes (no mode ever sits exactly on the resonance).
// Requires n_modes >= 1, omega_cut > w0, and a grid fine enough to resolve
// the resonance linewidth: dw <= eps*w0/10.
FieldModeSet sample_modes(const ModelParams& params, double omega_cut,
                          std::size_t n_modes, std::uint64_t seed);

// E0(t) as the exact finite mode sum.
double field_at(const FieldModeSet& modes, double t);

// dE0/dt = -sum_n A_n w_n sin(w_n t + theta_n).
double field_derivative_at(const FieldModeSet& modes, double t);

// A_x(t) = -c sum_n (A_n / w_n) sin(w_n t + theta_n), the zero-mean per-mode
// antiderivative, so that c E0(t) = -dA_x/dt.
double vector_potential_at(const FieldModeSet& modes, double t,
                           const ModelParams& params);

}  // namespace sedosc
