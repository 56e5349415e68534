#pragma once

#include <functional>

namespace sedosc {

struct QuadratureResult {
  double value = 0.0;
  double error = 0.0;  // absolute error estimate
  int subdivisions = 0;
  bool converged = false;
};

// Adaptive Gauss-Kronrod 7/15 on the finite interval [a, b]. Repeatedly
// bisects the interval with the largest error estimate until the summed
// error satisfies max(abs_tol, rel_tol * |value|), or the subdivision cap
// is hit (converged = false, achieved error reported in the result).
QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double rel_tol, double abs_tol = 0.0,
                           int max_subdivisions = 4000);

}  // namespace sedosc
