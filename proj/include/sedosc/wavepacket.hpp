#pragma once

#include <complex>
#include <functional>

#include "sedosc/dynamics.hpp"
#include "sedosc/model.hpp"
#include "sedosc/vacuum_field.hpp"

namespace sedosc {

// One snapshot of the displaced-Gaussian wavepacket
//
//   psi(x,t) = phi0(x - q_c) exp{ (i/hbar) [ (p_c + (e/c) A_x) x - g ] },
//
// fully specified by the four c-numbers (q_c, p_c, A_x, g); the width is
// pinned to the ground state by the model parameters.
struct WavepacketSample {
  double center = 0.0;            // q_c(t)
  double momentum = 0.0;          // kinetic momentum p_c(t) = m dq_c/dt
  double vector_potential = 0.0;  // A_x(t)
  double phase = 0.0;             // g(t)
  double width_sq = 0.0;          // hbar/(2 m w0), fixed by params

  static WavepacketSample make(const ModelParams& params, double center = 0.0,
                               double momentum = 0.0,
                               double vector_potential = 0.0,
                               double phase = 0.0);

  // Expectation of the canonical momentum operator: p_c + (e/c) A_x.
  double canonical_momentum(const ModelParams& params) const {
    return momentum + params.charge() / params.c_light() * vector_potential;
  }
};

// Ground-state probability density phi0^2(x) = sqrt(m w0/(pi hbar))
// exp(-m w0 x^2 / hbar).
double ground_state_density(double x, const ModelParams& params);

std::complex<double> wavefunction(double x, const WavepacketSample& sample,
                                  const ModelParams& params);

// Closed-form <x^2> = hbar/(2 m w0) + q_c^2.
double position_second_moment(const WavepacketSample& sample,
                              const ModelParams& params);

// A wavepacket trajectory as a function of time.
using WavepacketPath = std::function<WavepacketSample(double)>;

// Exact stationary path for a mode set: q_c and p_c from the closed-form
// spectral solution, A_x the antiderivative of the full effective field
// (vacuum plus radiation reaction, so the path solves the Schrodinger
// equation exactly), and g integrated to near machine precision.
WavepacketPath exact_stationary_path(const FieldModeSet& modes,
                                     const ModelParams& params);

// Max-norm residual of the discretized Schrodinger equation at time t on a
// symmetric grid of n_points spanning [q_c - half_width, q_c + half_width]:
// centered differences in t and x, so the residual is O(dt^2, dx^2) when the
// path is exact.
double schrodinger_residual(const WavepacketPath& path,
                            const ModelParams& params, double t, double dt,
                            double half_width, std::size_t n_points);

}  // namespace sedosc
