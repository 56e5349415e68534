#pragma once

#include "sedosc/errors.hpp"

namespace sedosc {

// Constants of the charged one-dimensional oscillator together with the
// derived dimensionless damping
//
//     epsilon = 2 e^2 w0 / (3 m c^3),
//
// the single physical knob of the model. The narrow-resonance treatment of
// the dynamics requires epsilon << 1, so construction rejects epsilon >= 0.1.
// Instances are immutable and safe to share across threads.
class ModelParams {
 public:
  // Canonical internal unit system: hbar = m = w0 = 1, e = 1 and c fixed by
  // the requested epsilon (c^3 = 2/(3 eps)). For epsilon = 0 the oscillator
  // is uncharged (e = 0) and decoupled from the field.
  static ModelParams dimensionless(double epsilon);

  // General constructor; epsilon is derived and cached.
  static ModelParams from_physical(double mass, double charge, double omega0,
                                   double hbar, double c_light);

  // Rescale units so that hbar = m = w0 = 1. Dimensionless ratios
  // (epsilon, hbar*w0/(m c^2)) are preserved exactly up to rounding.
  ModelParams to_dimensionless() const;

  double mass() const { return mass_; }
  double charge() const { return charge_; }
  double omega0() const { return omega0_; }
  double hbar() const { return hbar_; }
  double c_light() const { return c_light_; }
  double epsilon() const { return epsilon_; }

  // Radiation-reaction time 2 e^2 / (3 m c^3) = epsilon / w0.
  double tau_r() const { return epsilon_ / omega0_; }

  // Ground-state position variance hbar / (2 m w0).
  double ground_state_variance() const {
    return hbar_ / (2.0 * mass_ * omega0_);
  }

 private:
  ModelParams(double mass, double charge, double omega0, double hbar,
              double c_light, double epsilon);

  double mass_;
  double charge_;
  double omega0_;
  double hbar_;
  double c_light_;
  double epsilon_;
};

}  // namespace sedosc
