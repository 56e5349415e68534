#include "sedosc/dynamics.hpp"

#include <cmath>
#include <limits>
#include <numbers>
#include <stdexcept>
#include <string>

#include "sedosc/quadrature.hpp"

namespace sedosc {

namespace {
constexpr double kPi = std::numbers::pi;

std::vector<double> uniform_times(double dt, std::size_t n) {
  std::vector<double> times(n);
  for (std::size_t k = 0; k < n; ++k) {
    times[k] = static_cast<double>(k) * dt;
  }
  return times;
}
}  // namespace

ResponseValue response_function(double omega, const ModelParams& params) {
  if (!(omega >= 0.0)) {
    throw validation_error("response_function requires omega >= 0");
  }
  const double w0 = params.omega0();
  const double re = w0 * w0 - omega * omega;
  const double im = -params.tau_r() * omega * omega * omega;
  if (re == 0.0 && im == 0.0) {
    throw validation_error(
        "undamped resonance: chi(omega) diverges at omega = omega0 for "
        "epsilon = 0");
  }
  return ResponseValue{1.0 / std::complex<double>(re, im)};
}

double transient_time(const ModelParams& params) {
  const double rate = params.epsilon() * params.omega0();
  return rate > 0.0 ? 5.0 / rate : std::numeric_limits<double>::infinity();
}

Trajectory stationary_trajectory(const FieldModeSet& modes,
                                 const TimeGrid& grid,
                                 const ModelParams& params) {
  if (!(params.epsilon() > 0.0)) {
    throw validation_error("stationary_trajectory requires epsilon > 0");
  }
  if (!(grid.dt > 0.0) || grid.n_samples < 1) {
    throw validation_error("stationary_trajectory requires dt > 0 and at "
                           "least one sample");
  }

  const std::size_t n_modes = modes.size();
  const std::size_t n_times = grid.n_samples;

  Trajectory traj;
  traj.times = uniform_times(grid.dt, n_times);
  traj.q.assign(n_times, 0.0);
  traj.p.assign(n_times, 0.0);
  traj.transient_end = 0;

  // Per-mode rotating phasor z = e^{i(w t + theta - lag)}; q accumulates
  // A|chi| Re z and p accumulates -m A|chi| w Im z. The recurrence costs one
  // complex multiply per (mode, step) and is bit-deterministic (fixed
  // mode-major order).
  for (std::size_t i = 0; i < n_modes; ++i) {
    const double w = modes.frequencies[i];
    const ResponseValue chi = response_function(w, params);
    const double amp = modes.amplitudes[i] * chi.magnitude();
    if (amp == 0.0) continue;
    const double pamp = -params.mass() * amp * w;
    const double phi0 = modes.phases[i] - chi.phase_lag();
    std::complex<double> z(std::cos(phi0), std::sin(phi0));
    const std::complex<double> step(std::cos(w * grid.dt),
                                    std::sin(w * grid.dt));
    for (std::size_t k = 0; k < n_times; ++k) {
      traj.q[k] += amp * z.real();
      traj.p[k] += pamp * z.imag();
      z *= step;
    }
  }

  traj.g = accumulate_phase(traj.q, traj.p, grid.dt, params);
  return traj;
}

Trajectory integrate_time_domain(const FieldModeSet& modes, double t_total,
                                 double dt, std::pair<double, double> initial,
                                 const ModelParams& params) {
  const double dt_max = (2.0 * kPi / params.omega0()) / 40.0;
  if (!(dt > 0.0) || dt > dt_max) {
    throw validation_error("time step too large: dt = " + std::to_string(dt) +
                           " must satisfy dt <= (2*pi/w0)/40 = " +
                           std::to_string(dt_max));
  }
  if (!(t_total > 0.0)) {
    throw validation_error("integrate_time_domain requires t_total > 0");
  }

  const double w0_sq = params.omega0() * params.omega0();
  const double tau_r = params.tau_r();

  const auto n_steps = static_cast<std::size_t>(
      std::ceil(t_total / dt - 1e-12));
  const std::size_t n_times = n_steps + 1;

  Trajectory traj;
  traj.times = uniform_times(dt, n_times);
  traj.q.assign(n_times, 0.0);
  traj.p.assign(n_times, 0.0);

  // State y = (q, v) with v = dq/dt; p = m v.
  // Order-reduced RHS: v' = -w0^2 q + f(t) + tau_R (-w0^2 v + f'(t)).
  const auto drive = [&](double t) { return field_at(modes, t); };
  const auto drive_dot = [&](double t) { return field_derivative_at(modes, t); };
  const auto accel = [&](double q, double v, double f, double fdot) {
    return -w0_sq * q + f + tau_r * (-w0_sq * v + fdot);
  };

  double q = initial.first;
  double v = initial.second / params.mass();
  traj.q[0] = q;
  traj.p[0] = initial.second;

  for (std::size_t k = 0; k < n_steps; ++k) {
    const double t = static_cast<double>(k) * dt;
    const double th = t + 0.5 * dt;
    const double t1 = t + dt;

    const double f0 = drive(t), fd0 = drive_dot(t);
    const double fh = drive(th), fdh = drive_dot(th);
    const double f1 = drive(t1), fd1 = drive_dot(t1);

    const double k1q = v;
    const double k1v = accel(q, v, f0, fd0);
    const double k2q = v + 0.5 * dt * k1v;
    const double k2v = accel(q + 0.5 * dt * k1q, v + 0.5 * dt * k1v, fh, fdh);
    const double k3q = v + 0.5 * dt * k2v;
    const double k3v = accel(q + 0.5 * dt * k2q, v + 0.5 * dt * k2v, fh, fdh);
    const double k4q = v + dt * k3v;
    const double k4v = accel(q + dt * k3q, v + dt * k3v, f1, fd1);

    q += dt / 6.0 * (k1q + 2.0 * (k2q + k3q) + k4q);
    v += dt / 6.0 * (k1v + 2.0 * (k2v + k3v) + k4v);

    if (!std::isfinite(q) || !std::isfinite(v)) {
      throw std::runtime_error(
          "non-finite state at step " + std::to_string(k + 1) +
          " (t = " + std::to_string(t1) + "): inputs are mis-scaled");
    }
    traj.q[k + 1] = q;
    traj.p[k + 1] = params.mass() * v;
  }

  const double settle = transient_time(params);
  std::size_t cut = n_times;
  if (std::isfinite(settle)) {
    cut = std::min(n_times, static_cast<std::size_t>(std::ceil(settle / dt)));
  }
  traj.transient_end = cut;
  traj.g = accumulate_phase(traj.q, traj.p, dt, params);
  return traj;
}

std::vector<double> accumulate_phase(const std::vector<double>& q,
                                     const std::vector<double>& p, double dt,
                                     const ModelParams& params) {
  if (q.size() != p.size()) {
    throw validation_error("accumulate_phase requires matching q/p lengths");
  }
  const double m = params.mass();
  const double w0_sq = params.omega0() * params.omega0();
  const double half_hw = 0.5 * params.hbar() * params.omega0();

  std::vector<double> g(q.size(), 0.0);
  if (q.empty()) return g;

  auto lagrangian = [&](std::size_t k) {
    const double qd = p[k] / m;
    return 0.5 * m * (qd * qd - w0_sq * q[k] * q[k]);
  };

  double integral = 0.0;
  double prev = lagrangian(0);
  for (std::size_t k = 1; k < q.size(); ++k) {
    const double cur = lagrangian(k);
    integral += 0.5 * dt * (prev + cur);
    prev = cur;
    g[k] = half_hw * (static_cast<double>(k) * dt) + integral;
  }
  return g;
}

double variance_integrand(double omega, const ModelParams& params) {
  const double w0 = params.omega0();
  const double d_re = omega * omega - w0 * w0;
  const double d_im = params.tau_r() * omega * omega * omega;
  const double denom = d_re * d_re + d_im * d_im;
  return params.epsilon() / kPi * params.hbar() * omega * omega * omega /
         (params.mass() * w0 * denom);
}

double narrow_resonance_value(const ModelParams& params) {
  return params.hbar() / (2.0 * params.mass() * params.omega0());
}

VarianceResult variance_integral(const ModelParams& params, double rel_tol) {
  const double eps = params.epsilon();
  if (!(eps > 0.0) || eps >= 0.1) {
    throw validation_error("variance_integral requires 0 < epsilon < 0.1");
  }
  if (!(rel_tol >= 1e-10)) {
    throw validation_error("variance_integral requires rel_tol >= 1e-10");
  }

  const double w0 = params.omega0();
  const auto f = [&](double w) { return variance_integrand(w, params); };

  // The integrand spans ~1/eps^2 of dynamic range at the resonance; the peak
  // region is integrated on its own, and the far tail is mapped to a finite
  // interval by u = w0/w.
  const double peak_lo = std::max(0.0, w0 * (1.0 - 50.0 * eps));
  const double peak_hi = std::min(5.0 * w0, w0 * (1.0 + 50.0 * eps));
  const auto tail = [&](double u) {
    const double w = w0 / u;
    return f(w) * w0 / (u * u);
  };

  const double piece_tol = rel_tol / 4.0;
  double value = 0.0;
  double err = 0.0;
  bool converged = true;
  for (const auto& piece : {
           integrate(f, 0.0, peak_lo, piece_tol),
           integrate(f, peak_lo, peak_hi, piece_tol),
           integrate(f, peak_hi, 5.0 * w0, piece_tol),
           integrate(tail, 0.0, 0.2, piece_tol),
       }) {
    value += piece.value;
    err += piece.error;
    converged = converged && piece.converged;
  }

  const double achieved = value != 0.0 ? err / std::abs(value) : err;
  if (!converged || achieved > rel_tol) {
    throw std::runtime_error(
        "variance_integral did not converge: achieved relative error " +
        std::to_string(achieved) + " > requested " + std::to_string(rel_tol));
  }
  return VarianceResult{value, achieved};
}

double discrete_variance_prediction(const FieldModeSet& modes,
                                    const ModelParams& params) {
  double sum = 0.0;
  for (std::size_t i = 0; i < modes.size(); ++i) {
    const double mag =
        response_function(modes.frequencies[i], params).magnitude();
    const double a = modes.amplitudes[i] * mag;
    sum += 0.5 * a * a;
  }
  return sum;
}

}  // namespace sedosc
