#include "sedosc/model.hpp"

#include <cmath>
#include <string>

namespace sedosc {

namespace {

double derived_epsilon(double mass, double charge, double omega0,
                       double c_light) {
  return 2.0 * charge * charge * omega0 /
         (3.0 * mass * c_light * c_light * c_light);
}

}  // namespace

ModelParams::ModelParams(double mass, double charge, double omega0,
                         double hbar, double c_light, double epsilon)
    : mass_(mass),
      charge_(charge),
      omega0_(omega0),
      hbar_(hbar),
      c_light_(c_light),
      epsilon_(epsilon) {
  if (!(mass > 0.0) || !(omega0 > 0.0) || !(hbar > 0.0) || !(c_light > 0.0)) {
    throw validation_error(
        "ModelParams requires mass > 0, omega0 > 0, hbar > 0, c_light > 0");
  }
  if (!(epsilon >= 0.0)) {
    throw validation_error("ModelParams requires epsilon >= 0");
  }
  if (epsilon >= 0.1) {
    throw validation_error(
        "epsilon out of narrow-resonance regime: epsilon = " +
        std::to_string(epsilon) + " must be < 0.1");
  }
  // The cached value must match the one derived from (e, m, w0, c).
  const double recomputed = derived_epsilon(mass_, charge_, omega0_, c_light_);
  const double scale = epsilon_ > 0.0 ? epsilon_ : 1.0;
  if (std::abs(recomputed - epsilon_) > 16.0 * 2.22e-16 * scale) {
    throw validation_error("cached epsilon inconsistent with 2e^2w0/(3mc^3)");
  }
}

ModelParams ModelParams::dimensionless(double epsilon) {
  if (!(epsilon >= 0.0) || epsilon >= 0.1) {
    throw validation_error(
        "epsilon out of narrow-resonance regime: need 0 <= epsilon < 0.1, got " +
        std::to_string(epsilon));
  }
  if (epsilon == 0.0) {
    return ModelParams(1.0, 0.0, 1.0, 1.0, 1.0, 0.0);
  }
  const double c = std::cbrt(2.0 / (3.0 * epsilon));
  return ModelParams(1.0, 1.0, 1.0, 1.0, c, epsilon);
}

ModelParams ModelParams::from_physical(double mass, double charge,
                                       double omega0, double hbar,
                                       double c_light) {
  return ModelParams(mass, charge, omega0, hbar, c_light,
                     derived_epsilon(mass, charge, omega0, c_light));
}

ModelParams ModelParams::to_dimensionless() const {
  // Unit scales: time 1/w0, mass m, length sqrt(hbar/(m w0)).
  const double length = std::sqrt(hbar_ / (mass_ * omega0_));
  const double c_new = c_light_ / (omega0_ * length);
  const double charge_sq_new =
      charge_ * charge_ / (mass_ * omega0_ * omega0_ * length * length * length);
  return from_physical(1.0, std::sqrt(charge_sq_new), 1.0, 1.0, c_new);
}

}  // namespace sedosc
