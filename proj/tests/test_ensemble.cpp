#include <cmath>
#include <vector>

#include "doctest.h"
#include "sedosc/dynamics.hpp"
#include "sedosc/ensemble.hpp"
#include "sedosc/quadrature.hpp"

using namespace sedosc;

namespace {

EnsembleConfig small_config() {
  EnsembleConfig config;
  config.epsilon = 0.05;
  config.omega_cut = 5.0;
  config.n_modes = 1000;
  config.t_total = 300.0;
  config.realizations = 12;
  config.base_seed = 900;
  config.threads = 1;
  return config;
}

// Chan's pairwise combination of (count, mean, M2) statistics.
struct Combined {
  double count = 0.0, mean = 0.0, m2 = 0.0;
};

Combined combine(const Combined& a, const Combined& b) {
  Combined out;
  out.count = a.count + b.count;
  const double delta = b.mean - a.mean;
  out.mean = a.mean + delta * b.count / out.count;
  out.m2 = a.m2 + b.m2 + delta * delta * a.count * b.count / out.count;
  return out;
}

Combined stats_of(const std::vector<RealizationResult>& rs, bool q_sq) {
  Combined c;
  for (const auto& r : rs) {
    Combined one{1.0, q_sq ? r.mean_q_sq : r.mean_q, 0.0};
    c = c.count == 0.0 ? one : combine(c, one);
  }
  return c;
}

}  // namespace

TEST_CASE("ensembles are deterministic and thread-count independent") {
  const EnsembleConfig config = small_config();
  const EnsembleStats serial = run_ensemble(config);

  EnsembleConfig threaded = config;
  threaded.threads = 3;
  const EnsembleStats parallel = run_ensemble(threaded);

  CHECK(serial.mean_qc.value == parallel.mean_qc.value);
  CHECK(serial.mean_qc_sq.value == parallel.mean_qc_sq.value);
  CHECK(serial.mean_qc_sq.std_error == parallel.mean_qc_sq.std_error);
  REQUIRE(serial.per_realization.size() == parallel.per_realization.size());
  for (std::size_t r = 0; r < serial.per_realization.size(); ++r) {
    CHECK(serial.per_realization[r].mean_q_sq ==
          parallel.per_realization[r].mean_q_sq);
    CHECK(serial.per_realization[r].seed == config.base_seed + r);
  }
  CHECK(serial.wall_time_seconds > 0.0);
}

TEST_CASE("estimator identity: mean_xbar_sq is exactly offset by hbar/(2mw0)") {
  const EnsembleStats stats = run_ensemble(small_config());
  const double offset =
      ModelParams::dimensionless(small_config().epsilon).ground_state_variance();
  CHECK(stats.mean_xbar_sq.value == offset + stats.mean_qc_sq.value);
  CHECK(stats.mean_xbar_sq.std_error == stats.mean_qc_sq.std_error);
}

TEST_CASE("aggregation is grouping-independent to 1e-12") {
  const EnsembleStats stats = run_ensemble(small_config());
  const auto& rs = stats.per_realization;

  const std::vector<RealizationResult> first(rs.begin(), rs.begin() + 5);
  const std::vector<RealizationResult> second(rs.begin() + 5, rs.end());
  const Combined merged =
      combine(stats_of(first, true), stats_of(second, true));
  const Combined direct = stats_of(rs, true);

  CHECK(merged.mean == doctest::Approx(stats.mean_qc_sq.value).epsilon(1e-12));
  const double merged_se =
      std::sqrt(merged.m2 / (merged.count - 1.0) / merged.count);
  CHECK(merged_se ==
        doctest::Approx(stats.mean_qc_sq.std_error).epsilon(1e-12));
  CHECK(direct.mean == doctest::Approx(merged.mean).epsilon(1e-12));
}

TEST_CASE("standard errors shrink like 1/sqrt(R) when doubling R") {
  EnsembleConfig base = small_config();
  base.t_total = 200.0;
  base.realizations = 16;
  const double se16 = run_ensemble(base).mean_qc_sq.std_error;
  base.realizations = 64;
  const double se64 = run_ensemble(base).mean_qc_sq.std_error;
  // expect about 1/2; generous band for estimator noise at these R
  CHECK(se64 / se16 > 0.25);
  CHECK(se64 / se16 < 0.85);
}

TEST_CASE("stationary and time-domain solvers estimate the same variance") {
  EnsembleConfig stat = small_config();
  const EnsembleStats a = run_ensemble(stat);

  EnsembleConfig td = stat;
  td.solver = SolverKind::time_domain;
  const EnsembleStats b = run_ensemble(td);

  const double combined_se =
      std::hypot(a.mean_qc_sq.std_error, b.mean_qc_sq.std_error);
  CHECK(std::abs(a.mean_qc_sq.value - b.mean_qc_sq.value) <=
        3.0 * combined_se);
  // time-domain realizations discard the 5/(eps w0) transient
  CHECK(b.per_realization.front().transient_time >=
        transient_time(ModelParams::dimensionless(td.epsilon)));
}

TEST_CASE("ensemble mean matches the discrete spectral prediction") {
  const EnsembleConfig config = small_config();
  const EnsembleStats stats = run_ensemble(config);
  const ModelParams params = ModelParams::dimensionless(config.epsilon);
  const double predicted = discrete_variance_prediction(
      sample_modes(params, config.omega_cut, config.n_modes, 1), params);
  CHECK(std::abs(stats.mean_qc_sq.value - predicted) <=
        3.0 * stats.mean_qc_sq.std_error);
  // and the mean displacement is consistent with zero
  CHECK(std::abs(stats.mean_qc.value) <= 3.0 * stats.mean_qc.std_error);
}

TEST_CASE("effective sample count discounts by the correlation time") {
  const EnsembleConfig config = small_config();
  const EnsembleStats stats = run_ensemble(config);
  const double tau_c = 2.0 / config.epsilon;
  double window = 0.0;
  for (const auto& r : stats.per_realization) {
    window += static_cast<double>(r.samples_used) * config.dt;
  }
  CHECK(stats.mean_qc_sq.effective_samples ==
        doctest::Approx(window / tau_c));
  CHECK(stats.mean_qc_sq.effective_samples >=
        static_cast<double>(config.realizations));
}

TEST_CASE("ensemble configuration is validated up front") {
  EnsembleConfig config = small_config();
  config.realizations = 1;
  CHECK_THROWS_AS(run_ensemble(config), validation_error);

  config = small_config();
  config.dt = 0.2;
  CHECK_THROWS_AS(run_ensemble(config), validation_error);

  config = small_config();
  config.epsilon = 0.5;
  CHECK_THROWS_WITH_AS(run_ensemble(config),
                       doctest::Contains("narrow-resonance"),
                       validation_error);

  config = small_config();
  config.solver = SolverKind::time_domain;
  config.t_total = 50.0;  // shorter than the 5/(eps w0) = 100 transient
  CHECK_THROWS_AS(run_ensemble(config), validation_error);

  config = small_config();
  config.n_modes = 100;  // too coarse for the linewidth
  CHECK_THROWS_AS(run_ensemble(config), validation_error);
}

TEST_CASE("random phases satisfy the discrete orthogonality relations") {
  const PhaseCheckResult result = phase_orthogonality_check(10000, 16, 777);
  CHECK(result.max_deviation() < 0.03);  // 3/sqrt(R)

  // diagonal of the conjugate product is exactly unit
  const PhaseCheckResult diag = phase_orthogonality_check(500, 1, 3);
  CHECK(diag.max_dev_orthogonality == 0.0);
  // same-sign diagonal <e^{2 i theta}> is only statistically zero
  CHECK(diag.max_dev_same_sign < 3.0 / std::sqrt(500.0));

  CHECK_THROWS_AS(phase_orthogonality_check(50, 4, 1), validation_error);
  CHECK_THROWS_AS(phase_orthogonality_check(200, 0, 1), validation_error);
}
