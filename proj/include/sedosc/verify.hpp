#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "sedosc/model.hpp"
#include "sedosc/wavepacket.hpp"

namespace sedosc::verify {

struct CheckResult {
  std::string name;
  bool pass = false;
  std::string detail;
  double seconds = 0.0;
};

struct VerifyOptions {
  bool quick = false;
  int threads = 0;
  std::uint64_t base_seed = 1234567;
  // Test hook: corrupt the sampled spectral density (w^2 instead of w^3) to
  // demonstrate that the suite catches it.
  bool inject_wrong_density = false;
};

// Independent quadrature oracles for the wavepacket moments (composite
// Simpson over center +/- 8 sigma); deliberately bypass the closed forms.
double numeric_norm(const WavepacketSample& sample, const ModelParams& params);
double numeric_second_moment(const WavepacketSample& sample,
                             const ModelParams& params);

CheckResult check_variance_quadrature();
CheckResult check_ensemble_factor_of_two(int threads, std::uint64_t base_seed);
CheckResult check_cross_solver(int threads, std::uint64_t base_seed);
CheckResult check_heisenberg_identity();
CheckResult check_schrodinger_residual();
CheckResult check_moment_identity();
CheckResult check_phase_statistics(std::uint64_t base_seed);
CheckResult check_determinism(int threads, std::uint64_t base_seed);
CheckResult check_spectral_consistency(bool inject_wrong_density);

// The acceptance suite. Quick mode runs the sub-minute subset; the full mode
// adds the minutes-scale ensemble and cross-solver runs.
std::vector<CheckResult> run_all(const VerifyOptions& options);

bool all_passed(const std::vector<CheckResult>& results);

}  // namespace sedosc::verify
