#include <cmath>

#include "doctest.h"
#include "sedosc/heisenberg.hpp"
#include "sedosc/model.hpp"

using namespace sedosc;

TEST_CASE("acceleration matrix elements follow the ladder selection rule") {
  const ModelParams params = ModelParams::dimensionless(1e-2);
  CHECK(acceleration_matrix_element(0, 1, params) ==
        doctest::Approx(-std::sqrt(0.5)).epsilon(1e-15));
  CHECK(acceleration_matrix_element(1, 0, params) ==
        acceleration_matrix_element(0, 1, params));
  CHECK(acceleration_matrix_element(1, 2, params) ==
        doctest::Approx(-1.0).epsilon(1e-15));
  CHECK(acceleration_matrix_element(0, 2, params) == 0.0);
  CHECK(acceleration_matrix_element(3, 3, params) == 0.0);
  CHECK_THROWS_AS(acceleration_matrix_element(-1, 0, params),
                  validation_error);
}

TEST_CASE("ground state: vacuum gain exactly balances self-reaction loss") {
  const ModelParams params = ModelParams::dimensionless(1e-2);
  const EnergyFlowReport report = energy_flow_full(0, params, 2);

  CHECK(report.self_reaction == doctest::Approx(-5e-3).epsilon(1e-14));
  CHECK(report.vacuum_up == -report.self_reaction);  // bitwise balance
  CHECK(report.vacuum_down == 0.0);
  CHECK(report.total_full == 0.0);
  CHECK(report.total_compact == 0.0);
  CHECK(report.self_reaction < 0.0);  // unstable under self-reaction alone
}

TEST_CASE("excited states lose energy at n eps hbar w0^2") {
  const ModelParams params = ModelParams::dimensionless(1e-2);
  const EnergyFlowReport one = energy_flow_full(1, params, 3);
  CHECK(one.total_full == doctest::Approx(-1e-2).epsilon(1e-13));

  const ModelParams fine = ModelParams::dimensionless(1e-3);
  CHECK(energy_flow_compact(0, fine) == 0.0);
  CHECK(energy_flow_compact(1, fine) == doctest::Approx(-1e-3).epsilon(1e-13));
  CHECK(energy_flow_compact(5, fine) == doctest::Approx(-5e-3).epsilon(1e-13));
}

TEST_CASE("full three-term form collapses to the compact form for all n") {
  const ModelParams params = ModelParams::dimensionless(1e-2);
  for (int n = 0; n <= 50; ++n) {
    const EnergyFlowReport report = energy_flow_full(n, params, n + 2);
    const double scale =
        std::max(std::abs(report.total_full), std::abs(report.total_compact));
    if (scale == 0.0) {
      CHECK(report.total_full == report.total_compact);
    } else {
      CHECK(std::abs(report.total_full - report.total_compact) / scale <=
            1e-12);
    }
    CHECK(report.self_reaction <= 0.0);
    CHECK(report.vacuum_up >= 0.0);
    CHECK(report.vacuum_down <= 0.0);
    CHECK(report.total_compact <= 0.0);
  }
}

TEST_CASE("energy decay matches the classical rate -eps w0 per excitation") {
  const ModelParams params = ModelParams::dimensionless(1e-2);
  for (int n = 1; n <= 10; ++n) {
    const double excitation = static_cast<double>(n);  // E_n - E_0 = n hbar w0
    const double rate = energy_flow_compact(n, params) / excitation;
    CHECK(rate == doctest::Approx(-params.epsilon()).epsilon(1e-13));
  }
}

TEST_CASE("energy flow scales linearly in eps") {
  const double a = energy_flow_compact(3, ModelParams::dimensionless(1e-3));
  const double b = energy_flow_compact(3, ModelParams::dimensionless(2e-3));
  CHECK(b / a == doctest::Approx(2.0).epsilon(1e-13));
}

TEST_CASE("general units: compact form equals -n eps hbar w0^2") {
  const ModelParams params =
      ModelParams::from_physical(2.0, 0.3, 3.0, 1.5, 10.0);
  for (int n = 0; n <= 4; ++n) {
    const double expected = -static_cast<double>(n) * params.epsilon() *
                            params.hbar() * params.omega0() * params.omega0();
    CHECK(energy_flow_compact(n, params) ==
          doctest::Approx(expected).epsilon(1e-13));
  }
}

TEST_CASE("basis cutoff and range validation") {
  const ModelParams params = ModelParams::dimensionless(1e-2);
  CHECK_THROWS_AS(energy_flow_full(3, params, 4), validation_error);
  CHECK_THROWS_AS(energy_flow_compact(-2, params), validation_error);
  CHECK_THROWS_AS(energy_flow_range(3, 1, params), validation_error);

  const auto reports = energy_flow_range(0, 3, params);
  CHECK(reports.size() == 4);
  CHECK(reports[3].state_index == 3);
}
