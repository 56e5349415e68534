#include <cmath>
#include <numbers>

#include "doctest.h"
#include "sedosc/quadrature.hpp"

using sedosc::integrate;
using sedosc::QuadratureResult;

TEST_CASE("polynomials and smooth integrands are exact to tolerance") {
  const QuadratureResult cubic =
      integrate([](double x) { return x * x; }, 0.0, 1.0, 1e-12);
  CHECK(cubic.converged);
  CHECK(cubic.value == doctest::Approx(1.0 / 3.0).epsilon(1e-14));

  const QuadratureResult sine =
      integrate([](double x) { return std::sin(x); }, 0.0, std::numbers::pi,
                1e-12);
  CHECK(sine.converged);
  CHECK(sine.value == doctest::Approx(2.0).epsilon(1e-12));
}

TEST_CASE("a sharp Lorentzian converges to the arctangent closed form") {
  const double gamma = 1e-4;
  const auto f = [gamma](double x) { return gamma / (x * x + gamma * gamma); };
  const QuadratureResult result = integrate(f, -1.0, 1.0, 1e-10);
  CHECK(result.converged);
  CHECK(result.value ==
        doctest::Approx(2.0 * std::atan(1.0 / gamma)).epsilon(1e-10));
  CHECK(result.error <= 1e-10 * result.value);
}

TEST_CASE("subdivision cap reports non-convergence honestly") {
  const double gamma = 1e-7;
  const auto f = [gamma](double x) { return gamma / (x * x + gamma * gamma); };
  const QuadratureResult result = integrate(f, -1.0, 1.0, 1e-12, 0.0, 2);
  CHECK_FALSE(result.converged);
  CHECK(result.error > 0.0);
}

TEST_CASE("degenerate interval integrates to zero") {
  const QuadratureResult result =
      integrate([](double x) { return x; }, 2.0, 2.0, 1e-12);
  CHECK(result.converged);
  CHECK(result.value == 0.0);
}
