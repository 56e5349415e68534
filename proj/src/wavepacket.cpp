#include "sedosc/wavepacket.hpp"

#include <cmath>
#include <numbers>
#include <vector>

#include "sedosc/quadrature.hpp"

namespace sedosc {

WavepacketSample WavepacketSample::make(const ModelParams& params,
                                        double center, double momentum,
                                        double vector_potential,
                                        double phase) {
  WavepacketSample s;
  s.center = center;
  s.momentum = momentum;
  s.vector_potential = vector_potential;
  s.phase = phase;
  s.width_sq = params.ground_state_variance();
  return s;
}

double ground_state_density(double x, const ModelParams& params) {
  const double alpha = params.mass() * params.omega0() / params.hbar();
  return std::sqrt(alpha / std::numbers::pi) * std::exp(-alpha * x * x);
}

std::complex<double> wavefunction(double x, const WavepacketSample& sample,
                                  const ModelParams& params) {
  const double alpha = params.mass() * params.omega0() / params.hbar();
  const double dx = x - sample.center;
  const double envelope =
      std::pow(alpha / std::numbers::pi, 0.25) * std::exp(-0.5 * alpha * dx * dx);
  const double arg =
      (sample.canonical_momentum(params) * x - sample.phase) / params.hbar();
  return envelope * std::complex<double>(std::cos(arg), std::sin(arg));
}

double position_second_moment(const WavepacketSample& sample,
                              const ModelParams& params) {
  return params.ground_state_variance() + sample.center * sample.center;
}

WavepacketPath exact_stationary_path(const FieldModeSet& modes,
                                     const ModelParams& params) {
  const std::size_t n = modes.size();
  std::vector<double> mag(n), lag(n);
  for (std::size_t i = 0; i < n; ++i) {
    const ResponseValue chi = response_function(modes.frequencies[i], params);
    mag[i] = modes.amplitudes[i] * chi.magnitude();
    lag[i] = chi.phase_lag();
  }

  const double m = params.mass();
  const double w0_sq = params.omega0() * params.omega0();
  const double hbar = params.hbar();
  const double w0 = params.omega0();
  // (e/c) A_x = -m * F with F the zero-mean antiderivative of the full
  // effective per-mass force qdd + w0^2 q; stored as A_x itself.
  const double pot_scale = params.charge() != 0.0
                               ? -m * params.c_light() / params.charge()
                               : 0.0;

  return [=, freqs = modes.frequencies,
          phases = modes.phases](double t) -> WavepacketSample {
    double q = 0.0, v = 0.0, force_int = 0.0;
    for (std::size_t i = 0; i < freqs.size(); ++i) {
      const double w = freqs[i];
      const double ph = w * t + phases[i] - lag[i];
      q += mag[i] * std::cos(ph);
      v -= mag[i] * w * std::sin(ph);
      // antiderivative of (w0^2 - w^2) mag cos(ph)
      force_int += (w0_sq - w * w) / w * mag[i] * std::sin(ph);
    }

    const auto lagrangian = [&](double s) {
      double qq = 0.0, vv = 0.0;
      for (std::size_t i = 0; i < freqs.size(); ++i) {
        const double ph = freqs[i] * s + phases[i] - lag[i];
        qq += mag[i] * std::cos(ph);
        vv -= mag[i] * freqs[i] * std::sin(ph);
      }
      return 0.5 * m * (vv * vv - w0_sq * qq * qq);
    };
    const double action =
        t != 0.0 ? integrate(lagrangian, 0.0, t, 1e-13, 1e-13).value : 0.0;

    WavepacketSample s = WavepacketSample::make(params);
    s.center = q;
    s.momentum = m * v;
    s.vector_potential = pot_scale * force_int;
    s.phase = 0.5 * hbar * w0 * t + action;
    return s;
  };
}

double schrodinger_residual(const WavepacketPath& path,
                            const ModelParams& params, double t, double dt,
                            double half_width, std::size_t n_points) {
  if (n_points < 3) {
    throw validation_error("schrodinger_residual requires n_points >= 3");
  }
  const WavepacketSample before = path(t - dt);
  const WavepacketSample now = path(t);
  const WavepacketSample after = path(t + dt);

  const double hbar = params.hbar();
  const double m = params.mass();
  const double a = params.charge() / params.c_light() * now.vector_potential;
  const double w0_sq = params.omega0() * params.omega0();
  const double dx = 2.0 * half_width / static_cast<double>(n_points - 1);

  double worst = 0.0;
  for (std::size_t j = 1; j + 1 < n_points; ++j) {
    const double x =
        now.center - half_width + static_cast<double>(j) * dx;
    const std::complex<double> pm = wavefunction(x, before, params);
    const std::complex<double> pl = wavefunction(x - dx, now, params);
    const std::complex<double> p0 = wavefunction(x, now, params);
    const std::complex<double> pr = wavefunction(x + dx, now, params);
    const std::complex<double> pp = wavefunction(x, after, params);

    const std::complex<double> dpsi_dt = (pp - pm) / (2.0 * dt);
    const std::complex<double> lap = (pr - 2.0 * p0 + pl) / (dx * dx);
    const std::complex<double> grad = (pr - pl) / (2.0 * dx);

    const std::complex<double> h_psi =
        -hbar * hbar / (2.0 * m) * lap +
        std::complex<double>(0.0, hbar * a / m) * grad +
        (a * a / (2.0 * m) + 0.5 * m * w0_sq * x * x) * p0;

    const std::complex<double> residual =
        std::complex<double>(0.0, hbar) * dpsi_dt - h_psi;
    worst = std::max(worst, std::abs(residual));
  }
  return worst;
}

}  // namespace sedosc
