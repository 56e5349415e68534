#include "sedosc/ensemble.hpp"

#include <chrono>
#include <cmath>
#include <complex>
#include <stdexcept>
#include <string>

#include "sedosc/parallel.hpp"
#include "sedosc/vacuum_field.hpp"

namespace sedosc {

namespace {

struct RunningMoments {
  std::size_t count = 0;
  double mean = 0.0;
  double m2 = 0.0;

  void add(double x) {
    ++count;
    const double delta = x - mean;
    mean += delta / static_cast<double>(count);
    m2 += delta * (x - mean);
  }

  double std_error() const {
    if (count < 2) return 0.0;
    const double n = static_cast<double>(count);
    return std::sqrt(m2 / (n - 1.0) / n);
  }
};

RealizationResult run_realization(const EnsembleConfig& config,
                                  const ModelParams& params,
                                  std::uint64_t seed) {
  const FieldModeSet modes =
      sample_modes(params, config.omega_cut, config.n_modes, seed);

  Trajectory traj;
  if (config.solver == SolverKind::stationary) {
    const auto n_samples =
        static_cast<std::size_t>(std::ceil(config.t_total / config.dt - 1e-12)) + 1;
    traj = stationary_trajectory(modes, TimeGrid{config.dt, n_samples}, params);
  } else {
    traj = integrate_time_domain(modes, config.t_total, config.dt, {0.0, 0.0},
                                 params);
  }

  RealizationResult res;
  res.seed = seed;
  res.transient_time = static_cast<double>(traj.transient_end) * config.dt;

  double sum_q = 0.0;
  double sum_q_sq = 0.0;
  const std::size_t n = traj.q.size();
  for (std::size_t k = traj.transient_end; k < n; ++k) {
    sum_q += traj.q[k];
    sum_q_sq += traj.q[k] * traj.q[k];
  }
  res.samples_used = n - traj.transient_end;
  if (res.samples_used == 0) {
    throw std::runtime_error("no post-transient samples in realization seed " +
                             std::to_string(seed));
  }
  res.mean_q = sum_q / static_cast<double>(res.samples_used);
  res.mean_q_sq = sum_q_sq / static_cast<double>(res.samples_used);
  return res;
}

}  // namespace

ModelParams EnsembleConfig::validate() const {
  const ModelParams params = ModelParams::dimensionless(epsilon);
  if (realizations < 2) {
    throw validation_error("ensemble requires realizations >= 2");
  }
  const double dt_max = (2.0 * std::numbers::pi / params.omega0()) / 40.0;
  if (!(dt > 0.0) || dt > dt_max) {
    throw validation_error("time step too large: dt must satisfy dt <= " +
                           std::to_string(dt_max));
  }
  if (solver == SolverKind::time_domain &&
      !(t_total >= transient_time(params))) {
    throw validation_error(
        "t_total too short for stationary statistics: need t_total >= "
        "5/(eps*w0) = " +
        std::to_string(transient_time(params)));
  }
  if (!(t_total > 0.0)) {
    throw validation_error("ensemble requires t_total > 0");
  }
  // Checks omega_cut, n_modes and the linewidth-resolution rule.
  sample_modes(params, omega_cut, n_modes, base_seed);
  return params;
}

EnsembleStats aggregate_realizations(std::vector<RealizationResult> results,
                                     const EnsembleConfig& config) {
  const ModelParams params = ModelParams::dimensionless(config.epsilon);

  RunningMoments q_moments;
  RunningMoments q_sq_moments;
  for (const RealizationResult& r : results) {
    q_moments.add(r.mean_q);
    q_sq_moments.add(r.mean_q_sq);
  }

  // Realizations are i.i.d., so scatter-based errors are exact; the
  // correlation time tau_c = 2/(eps*w0) only discounts the within-trajectory
  // sample count.
  const double tau_c = 2.0 / (params.epsilon() * params.omega0());
  double window = 0.0;
  for (const RealizationResult& r : results) {
    window += static_cast<double>(r.samples_used) * config.dt;
  }
  const double effective =
      results.empty() ? 0.0 : std::max(static_cast<double>(results.size()),
                                       window / tau_c);

  EnsembleStats stats;
  stats.config = config;
  stats.mean_qc = {q_moments.mean, q_moments.std_error(), effective};
  stats.mean_qc_sq = {q_sq_moments.mean, q_sq_moments.std_error(), effective};
  stats.mean_xbar_sq = {params.ground_state_variance() + q_sq_moments.mean,
                        q_sq_moments.std_error(), effective};
  stats.per_realization = std::move(results);
  return stats;
}

EnsembleStats run_ensemble(const EnsembleConfig& config) {
  const auto start = std::chrono::steady_clock::now();
  const ModelParams params = config.validate();

  std::vector<RealizationResult> results(config.realizations);
  parallel_for_index(config.realizations, config.threads, [&](std::size_t r) {
    const std::uint64_t seed =
        config.base_seed + static_cast<std::uint64_t>(r);
    try {
      results[r] = run_realization(config, params, seed);
    } catch (const std::exception& e) {
      throw std::runtime_error("realization with seed " + std::to_string(seed) +
                               " failed: " + e.what());
    }
  });

  EnsembleStats stats = aggregate_realizations(std::move(results), config);
  stats.wall_time_seconds =
      std::chrono::duration<double>(std::chrono::steady_clock::now() - start)
          .count();
  return stats;
}

PhaseCheckResult phase_orthogonality_check(std::size_t realizations,
                                           std::size_t n_modes,
                                           std::uint64_t base_seed) {
  if (realizations < 100) {
    throw validation_error("phase_orthogonality_check requires >= 100 draws");
  }
  if (n_modes < 1) {
    throw validation_error("phase_orthogonality_check requires n_modes >= 1");
  }

  // Accumulate <e^{i(th_n - th_m)}> and <e^{i(th_n + th_m)}> over draws.
  std::vector<std::complex<double>> diff(n_modes * n_modes, 0.0);
  std::vector<std::complex<double>> sum(n_modes * n_modes, 0.0);
  for (std::size_t r = 0; r < realizations; ++r) {
    const std::vector<double> phases =
        draw_phases(base_seed + r, n_modes);
    std::vector<std::complex<double>> u(n_modes);
    for (std::size_t n = 0; n < n_modes; ++n) {
      u[n] = {std::cos(phases[n]), std::sin(phases[n])};
    }
    for (std::size_t n = 0; n < n_modes; ++n) {
      for (std::size_t m = 0; m < n_modes; ++m) {
        // e^{i th} e^{-i th} is exactly 1; do not launder it through cos/sin.
        diff[n * n_modes + m] +=
            n == m ? std::complex<double>(1.0) : u[n] * std::conj(u[m]);
        sum[n * n_modes + m] += u[n] * u[m];
      }
    }
  }

  PhaseCheckResult result;
  const double norm = 1.0 / static_cast<double>(realizations);
  for (std::size_t n = 0; n < n_modes; ++n) {
    for (std::size_t m = 0; m < n_modes; ++m) {
      const std::complex<double> mean_diff = diff[n * n_modes + m] * norm;
      const double target = n == m ? 1.0 : 0.0;
      result.max_dev_orthogonality = std::max(
          result.max_dev_orthogonality, std::abs(mean_diff - target));
      result.max_dev_same_sign = std::max(
          result.max_dev_same_sign, std::abs(sum[n * n_modes + m] * norm));
    }
  }
  return result;
}

}  // namespace sedosc
