#pragma once

#include <cmath>
#include <string>

#include "timeobs/errors.hpp"

namespace timeobs {

// Energy as a function of momentum, E(p), plus its derivative (group
// velocity). Three variants:
//   nonrelativistic  E = p^2/(2m),            v = p/m
//   relativistic     E = sqrt(p^2 + m^2),     v = p/E
//   cosmological     E = kappa sqrt(k^2+1/16), v = kappa k / sqrt(k^2+1/16)
// E is even, v is odd, E(p) >= E(0).
class Dispersion {
 public:
  enum class Kind { nonrelativistic, relativistic, cosmological };

  static Dispersion nonrelativistic(double mass) {
    require_positive(mass, "mass");
    return Dispersion(Kind::nonrelativistic, mass);
  }
  static Dispersion relativistic(double mass) {
    require_positive(mass, "mass");
    return Dispersion(Kind::relativistic, mass);
  }
  static Dispersion cosmological(double kappa) {
    require_positive(kappa, "kappa");
    return Dispersion(Kind::cosmological, kappa);
  }

  double energy(double p) const {
    switch (kind_) {
      case Kind::nonrelativistic:
        return 0.5 * p * p / param_;
      case Kind::relativistic:
        return std::sqrt(p * p + param_ * param_);
      case Kind::cosmological:
        return param_ * std::sqrt(p * p + 1.0 / 16.0);
    }
    return 0.0;
  }

  double group_velocity(double p) const {
    switch (kind_) {
      case Kind::nonrelativistic:
        return p / param_;
      case Kind::relativistic:
        return p / std::sqrt(p * p + param_ * param_);
      case Kind::cosmological:
        return param_ * p / std::sqrt(p * p + 1.0 / 16.0);
    }
    return 0.0;
  }

  // 1/v(p), signed. Diverges at p = 0; callers guard the origin.
  double inverse_velocity(double p) const { return 1.0 / group_velocity(p); }

  Kind kind() const { return kind_; }
  // mass for the particle kinds, kappa for the cosmological one
  double parameter() const { return param_; }

  std::string spec_string() const {
    switch (kind_) {
      case Kind::nonrelativistic:
        return "nonrel:m=" + format(param_);
      case Kind::relativistic:
        return "rel:m=" + format(param_);
      case Kind::cosmological:
        return "cosmo:kappa=" + format(param_);
    }
    return {};
  }

 private:
  Dispersion(Kind k, double param) : kind_(k), param_(param) {}
  static void require_positive(double v, const char* name) {
    if (!(v > 0.0))
      throw DomainError(std::string(name) + " must be positive");
  }
  static std::string format(double v) {
    char buf[32];
    std::snprintf(buf, sizeof(buf), "%g", v);
    return buf;
  }

  Kind kind_;
  double param_;
};

}  // namespace timeobs
