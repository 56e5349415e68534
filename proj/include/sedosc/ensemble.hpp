#pragma once

#include <cstdint>
#include <numbers>
#include <vector>

#include "sedosc/dynamics.hpp"
#include "sedosc/model.hpp"

namespace sedosc {

enum class SolverKind { stationary, time_domain };

// Full description of a Monte Carlo run over random-phase realizations.
// Realization r uses seed base_seed + r.
struct EnsembleConfig {
  double epsilon = 1e-2;
  double omega_cut = 5.0;
  std::size_t n_modes = 5000;
  double dt = 2.0 * std::numbers::pi / 40.0;
  double t_total = 5000.0;
  std::size_t realizations = 64;
  std::uint64_t base_seed = 1234567;
  SolverKind solver = SolverKind::stationary;
  int threads = 0;  // 0 = hardware concurrency

  // Validates every module precondition up front and returns the
  // dimensionless parameter set the run will use.
  ModelParams validate() const;
};

// Time averages of one realization over its post-transient window.
struct RealizationResult {
  std::uint64_t seed = 0;
  double mean_q = 0.0;
  double mean_q_sq = 0.0;
  double transient_time = 0.0;   // duration discarded at the start
  std::size_t samples_used = 0;  // post-transient sample count
};

struct MomentEstimate {
  double value = 0.0;
  double std_error = 0.0;
  double effective_samples = 0.0;
};

struct EnsembleStats {
  MomentEstimate mean_qc;
  MomentEstimate mean_qc_sq;
  MomentEstimate mean_xbar_sq;  // hbar/(2 m w0) + mean_qc_sq, exactly
  EnsembleConfig config;
  std::vector<RealizationResult> per_realization;
  double wall_time_seconds = 0.0;  // informational; never serialized
};

// Deterministic order-fixed aggregation (used by run_ensemble and tests).
EnsembleStats aggregate_realizations(std::vector<RealizationResult> results,
                                     const EnsembleConfig& config);

// Runs the full ensemble; realizations execute in parallel but the result is
// independent of the thread count.
EnsembleStats run_ensemble(const EnsembleConfig& config);

struct PhaseCheckResult {
  double max_dev_orthogonality = 0.0;  // <e^{i th_n} e^{-i th_m}> vs delta_nm
  double max_dev_same_sign = 0.0;      // <e^{i th_n} e^{+i th_m}> vs 0

  double max_deviation() const {
    return max_dev_orthogonality > max_dev_same_sign ? max_dev_orthogonality
                                                     : max_dev_same_sign;
  }
};

// Monte Carlo check of the random-phase statistics over `realizations`
// independent draws of n_modes phases (seeds base_seed + r). Requires
// realizations >= 100.
PhaseCheckResult phase_orthogonality_check(std::size_t realizations,
                                           std::size_t n_modes,
                                           std::uint64_t base_seed = 1234567);

}  // namespace sedosc
