#pragma once

#include <complex>
#include <cstddef>
#include <utility>
#include <vector>

#include "sedosc/model.hpp"
#include "sedosc/vacuum_field.hpp"

namespace sedosc {

// Complex linear response of the driven, radiation-damped oscillator,
//
//     chi(w) = 1 / (w0^2 - w^2 - i tau_R w^3),
//
// displacement per unit amplitude of the per-mass drive (e/m) E0. The
// stationary response to A cos(w t + theta) is A |chi| cos(w t + theta - lag)
// with lag = arg chi in (0, pi): the oscillator lags the drive.
struct ResponseValue {
  std::complex<double> chi;

  double real() const { return chi.real(); }
  double imag() const { return chi.imag(); }
  double magnitude() const { return std::abs(chi); }
  double phase_lag() const { return std::arg(chi); }
};

ResponseValue response_function(double omega, const ModelParams& params);

// Sampled c-number trajectory on a uniform grid t_k = k * dt.
// Samples with index < transient_end are still contaminated by the decaying
// homogeneous solution (time-domain runs only; 0 for stationary solutions).
struct Trajectory {
  std::vector<double> times;
  std::vector<double> q;  // displacement q_c(t_k)
  std::vector<double> p;  // kinetic momentum m * dq_c/dt
  std::vector<double> g;  // accumulated phase g(t_k)
  std::size_t transient_end = 0;

  double dt() const { return times.size() > 1 ? times[1] - times[0] : 0.0; }
};

struct TimeGrid {
  double dt = 0.0;
  std::size_t n_samples = 0;  // samples at t = 0, dt, ..., (n_samples-1)*dt
};

// Exact stationary mode-sum solution (requires eps > 0):
//   q_c(t) = sum_n A_n |chi(w_n)| cos(w_n t + theta_n - lag_n).
Trajectory stationary_trajectory(const FieldModeSet& modes,
                                 const TimeGrid& grid,
                                 const ModelParams& params);

// Fixed-step classical RK4 on the order-reduced equation of motion
//   qdd = -w0^2 q + f(t) + tau_R (-w0^2 qd + fdot(t)),   f = (e/m) E0,
// which replaces the runaway-prone third-derivative self-force term by its
// on-shell value (exact to O(eps^2)). Requires dt <= (2*pi/w0)/40.
// transient_end marks t >= 5/(eps*w0).
Trajectory integrate_time_domain(const FieldModeSet& modes, double t_total,
                                 double dt, std::pair<double, double> initial,
                                 const ModelParams& params);

// g(t_k) = hbar*w0*t/2 + (m/2) Int_0^t (qd^2 - w0^2 q^2) dt', cumulative
// trapezoid on the grid, g(0) = 0, with qd = p/m.
std::vector<double> accumulate_phase(const std::vector<double>& q,
                                     const std::vector<double>& p, double dt,
                                     const ModelParams& params);

// Duration 5/(eps*w0) after which the homogeneous solution has decayed to
// e^{-2.5}; infinity is clamped to the grid length by callers when eps = 0.
double transient_time(const ModelParams& params);

struct VarianceResult {
  double value = 0.0;
  double rel_error = 0.0;
};

// Stationary phase-averaged <q_c^2> as the full response-weighted spectral
// integral over [0, inf): the resonance peak [w0(1-50 eps), w0(1+50 eps)] is
// integrated separately from the tails, and [5 w0, inf) is mapped to a finite
// interval with u = w0/w. Converges to rel_tol or throws with the achieved
// error. Approaches hbar/(2 m w0) as eps -> 0.
VarianceResult variance_integral(const ModelParams& params, double rel_tol);

// Integrand of the variance integral (exposed for tests).
double variance_integrand(double omega, const ModelParams& params);

// The narrow-resonance closed form hbar / (2 m w0).
double narrow_resonance_value(const ModelParams& params);

// Exact phase-average of the discrete model: sum_n A_n^2 |chi(w_n)|^2 / 2.
double discrete_variance_prediction(const FieldModeSet& modes,
                                    const ModelParams& params);

}  // namespace sedosc
