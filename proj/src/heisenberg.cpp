#include "sedosc/heisenberg.hpp"

#include <cmath>
#include <cstdlib>

namespace sedosc {

namespace {

// 2 e^2 / (3 c^3) = m tau_R, the coefficient of the self-reaction term.
double self_reaction_coefficient(const ModelParams& params) {
  return params.mass() * params.tau_r();
}

}  // namespace

double acceleration_matrix_element(int n, int m, const ModelParams& params) {
  if (n < 0 || m < 0) {
    throw validation_error("state indices must be non-negative");
  }
  if (std::abs(n - m) != 1) {
    return 0.0;
  }
  const double w0 = params.omega0();
  const double upper = static_cast<double>(std::max(n, m));
  return -w0 * w0 * std::sqrt(upper * params.ground_state_variance());
}

EnergyFlowReport energy_flow_full(int n, const ModelParams& params,
                                  int n_max) {
  if (n < 0) {
    throw validation_error("state index must be non-negative");
  }
  if (n_max < n + 2) {
    throw validation_error("energy_flow_full requires n_max >= n + 2");
  }
  const double coef = self_reaction_coefficient(params);

  EnergyFlowReport report;
  report.state_index = n;

  // <n|xdd^2|n> via the completeness sum; only b = n -/+ 1 contribute.
  double accel_sq = 0.0;
  for (int b = 0; b <= n_max; ++b) {
    const double me = acceleration_matrix_element(n, b, params);
    const double me_sq = me * me;
    accel_sq += me_sq;
    if (b > n) {
      report.vacuum_up += coef * me_sq;
    } else if (b < n) {
      report.vacuum_down -= coef * me_sq;
    }
  }
  report.self_reaction = -coef * accel_sq;
  report.total_full =
      report.self_reaction + report.vacuum_up + report.vacuum_down;
  report.total_compact = energy_flow_compact(n, params);
  return report;
}

double energy_flow_compact(int n, const ModelParams& params) {
  if (n < 0) {
    throw validation_error("state index must be non-negative");
  }
  if (n == 0) {
    return 0.0;
  }
  const double me = acceleration_matrix_element(n, n - 1, params);
  return -2.0 * self_reaction_coefficient(params) * me * me;
}

std::vector<EnergyFlowReport> energy_flow_range(int n_lo, int n_hi,
                                                const ModelParams& params) {
  if (n_lo < 0 || n_hi < n_lo) {
    throw validation_error("energy_flow_range requires 0 <= n_lo <= n_hi");
  }
  std::vector<EnergyFlowReport> reports;
  reports.reserve(static_cast<std::size_t>(n_hi - n_lo + 1));
  for (int n = n_lo; n <= n_hi; ++n) {
    reports.push_back(energy_flow_full(n, params, n + 2));
  }
  return reports;
}

}  // namespace sedosc
