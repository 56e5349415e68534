// Acceptance suite: one line per criterion, nonzero exit if any fails.
// The same checks back the CLI's `verify` subcommand.

#include <cstdio>
#include <string>
#include <vector>

#include "sedosc/verify.hpp"

int main(int argc, char** argv) {
  int threads = 0;
  for (int i = 1; i < argc; ++i) {
    const std::string arg = argv[i];
    if (arg == "--threads" && i + 1 < argc) {
      threads = std::atoi(argv[++i]);
    }
  }

  using sedosc::verify::CheckResult;
  const std::uint64_t seed = 1234567;

  struct Criterion {
    int number;
    CheckResult result;
  };
  std::vector<Criterion> criteria;
  criteria.push_back({1, sedosc::verify::check_variance_quadrature()});
  criteria.push_back(
      {2, sedosc::verify::check_ensemble_factor_of_two(threads, seed)});
  criteria.push_back({3, sedosc::verify::check_cross_solver(threads, seed)});
  criteria.push_back({4, sedosc::verify::check_heisenberg_identity()});
  criteria.push_back({5, sedosc::verify::check_schrodinger_residual()});
  criteria.push_back({6, sedosc::verify::check_moment_identity()});
  criteria.push_back({7, sedosc::verify::check_phase_statistics(seed)});
  criteria.push_back({8, sedosc::verify::check_determinism(threads, seed)});

  bool all_pass = true;
  for (const Criterion& c : criteria) {
    all_pass = all_pass && c.result.pass;
    std::printf("criterion %d: %s  %s (%.2f s)\n    %s\n", c.number,
                c.result.pass ? "PASS" : "FAIL", c.result.name.c_str(),
                c.result.seconds, c.result.detail.c_str());
  }
  std::printf("%s\n", all_pass ? "ACCEPTANCE: all criteria passed"
                               : "ACCEPTANCE: FAILURES above");
  return all_pass ? 0 : 1;
}
