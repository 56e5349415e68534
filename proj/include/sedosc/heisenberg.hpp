#pragma once

#include <vector>

#include "sedosc/model.hpp"

namespace sedosc {

// Energy-flow balance for the oscillator ladder state |n>: the self-reaction
// loss term and the two vacuum-fluctuation terms (transitions up and down),
// plus the compact single-sum form they collapse to. For the oscillator the
// sums terminate exactly at n +/- 1.
struct EnergyFlowReport {
  int state_index = 0;
  double self_reaction = 0.0;  // always <= 0
  double vacuum_up = 0.0;      // >= 0, transitions to higher levels
  double vacuum_down = 0.0;    // <= 0
  double total_full = 0.0;     // sum of the three terms
  double total_compact = 0.0;  // compact form; 0 iff n == 0
};

// <n| d^2x/dt^2 |m> = -w0^2 <n|x|m>: nonzero only for |n-m| = 1, where it is
// -w0^2 sqrt(max(n,m) hbar / (2 m w0)).
double acceleration_matrix_element(int n, int m, const ModelParams& params);

// Full three-term decomposition; the completeness sum for <n|xdd^2|n> runs
// over b <= n_max and terminates exactly, so n_max >= n + 2 suffices.
EnergyFlowReport energy_flow_full(int n, const ModelParams& params,
                                  int n_max);

// Compact form: -(4 e^2 / 3 c^3) sum_{b<n} |<n|xdd|b>|^2 = -n eps hbar w0^2.
double energy_flow_compact(int n, const ModelParams& params);

// Reports for n in [n_lo, n_hi] (inclusive), n_max chosen internally.
std::vector<EnergyFlowReport> energy_flow_range(int n_lo, int n_hi,
                                                const ModelParams& params);

}  // namespace sedosc
