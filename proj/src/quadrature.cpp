#include "sedosc/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace sedosc {

namespace {

// 15-point Kronrod extension of the 7-point Gauss rule (QUADPACK dqk15).
constexpr double kXgk[8] = {
    0.991455371120813, 0.949107912342759, 0.864864423359769,
    0.741531185599394, 0.586087235467691, 0.405845151377397,
    0.207784955007898, 0.0};
constexpr double kWgk[8] = {
    0.022935322010529, 0.063092092629979, 0.104790010322250,
    0.140653259715525, 0.169004726639267, 0.190350578064785,
    0.204432940075298, 0.209482141084728};
constexpr double kWg[4] = {0.129484966168870, 0.279705391489277,
                           0.381830050505119, 0.417959183673469};

struct Segment {
  double a, b;
  double value;
  double error;
};

Segment gauss_kronrod(const std::function<double(double)>& f, double a,
                      double b) {
  const double center = 0.5 * (a + b);
  const double half = 0.5 * (b - a);

  double values[15];
  const double fc = f(center);
  values[14] = fc;
  double kronrod_sum = kWgk[7] * fc;
  double gauss_sum = kWg[3] * fc;
  for (int j = 0; j < 7; ++j) {
    const double dx = half * kXgk[j];
    const double lo = f(center - dx);
    const double hi = f(center + dx);
    values[2 * j] = lo;
    values[2 * j + 1] = hi;
    kronrod_sum += kWgk[j] * (lo + hi);
    if (j % 2 == 1) {
      gauss_sum += kWg[j / 2] * (lo + hi);
    }
  }

  const double kronrod = kronrod_sum * half;
  const double gauss = gauss_sum * half;

  // Scale of variation of f over the segment (QUADPACK resasc), used to
  // sharpen |K15 - G7| without letting it collapse below the honest scale.
  const double mean = kronrod_sum * 0.5;
  double resasc = kWgk[7] * std::abs(fc - mean);
  for (int j = 0; j < 7; ++j) {
    resasc +=
        kWgk[j] * (std::abs(values[2 * j] - mean) +
                   std::abs(values[2 * j + 1] - mean));
  }
  resasc *= std::abs(half);

  double err = std::abs(kronrod - gauss);
  if (resasc != 0.0 && err != 0.0) {
    err = resasc * std::min(1.0, std::pow(200.0 * err / resasc, 1.5));
  }
  return Segment{a, b, kronrod, err};
}

struct ByError {
  bool operator()(const Segment& lhs, const Segment& rhs) const {
    return lhs.error < rhs.error;
  }
};

}  // namespace

QuadratureResult integrate(const std::function<double(double)>& f, double a,
                           double b, double rel_tol, double abs_tol,
                           int max_subdivisions) {
  QuadratureResult result;
  if (a == b) {
    result.converged = true;
    return result;
  }

  std::priority_queue<Segment, std::vector<Segment>, ByError> segments;
  segments.push(gauss_kronrod(f, a, b));
  double total = segments.top().value;
  double total_err = segments.top().error;

  int subdivisions = 0;
  while (total_err > std::max(abs_tol, rel_tol * std::abs(total)) &&
         subdivisions < max_subdivisions) {
    const Segment worst = segments.top();
    segments.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid == worst.a || mid == worst.b) {
      // Interval no longer splittable at double precision.
      segments.push(worst);
      break;
    }
    const Segment left = gauss_kronrod(f, worst.a, mid);
    const Segment right = gauss_kronrod(f, mid, worst.b);
    total += left.value + right.value - worst.value;
    total_err += left.error + right.error - worst.error;
    segments.push(left);
    segments.push(right);
    ++subdivisions;
  }

  result.value = total;
  result.error = total_err;
  result.subdivisions = subdivisions;
  result.converged =
      total_err <= std::max(abs_tol, rel_tol * std::abs(total));
  return result;
}

}  // namespace sedosc
