#pragma once

#include <complex>
#include <functional>
#include <string>
#include <vector>

#include "timeobs/dispersion.hpp"
#include "timeobs/interval.hpp"
#include "timeobs/quadrature.hpp"

namespace timeobs {

// Complex momentum-space amplitude phi(p) with support and smoothness
// metadata. Profiles are immutable closures; evaluation is pure.
//
// `support` is the interval outside which the amplitude is (numerically)
// zero; for Gaussian families it is the center +- 12 sigma, below double
// precision relevance. All quadratures run over the support only.
struct MomentumProfile {
  std::function<cplx(double)> amplitude;
  std::function<cplx(double)> derivative;  // empty -> finite differences
  Interval support{0.0, 0.0};
  bool vanishes_at_zero = false;
  std::string label;

  cplx operator()(double p) const { return amplitude(p); }
  bool has_derivative() const { return static_cast<bool>(derivative); }

  // d phi / dp: the family's analytic derivative when available, otherwise
  // central differences with one Richardson step (h, h/2).
  cplx d_dp(double p) const;
};

namespace profiles {

// exp(-(p-p0)^2 / (2 sigma^2)). With truncate_positive the amplitude is
// hard-cut to p > 0; that introduces a jump at p = 0 (kept deliberately,
// the smooth bump is the recommended compact-support family).
MomentumProfile gaussian(double p0, double sigma, bool truncate_positive = false);

// p * exp(-(p-p0)^2 / (2 sigma^2)); the linear factor enforces phi(0) = 0.
MomentumProfile odd_gaussian(double p0, double sigma);

// exp(-1/(1 - ((p-p0)/w)^2)) on |p-p0| < w, zero outside. Smooth with
// compact support [p0-w, p0+w].
MomentumProfile bump(double p0, double w);

// phi(p) -> e^{-i p x0} phi(p): translates the packet to position x0 at t=0.
MomentumProfile position_shift(const MomentumProfile& phi, double x0);

// phi(p) -> e^{+i E(p) s} phi(p): advances the packet by time s (arrival
// observables shift by s under this phase).
MomentumProfile time_shift(const MomentumProfile& phi, const Dispersion& disp,
                           double s);

// pointwise complex conjugate (time reversal of the packet)
MomentumProfile conjugate(const MomentumProfile& phi);

// c1 * phi1 + c2 * phi2
MomentumProfile mix(cplx c1, const MomentumProfile& phi1, cplx c2,
                    const MomentumProfile& phi2);

// scale so the position-space norm 2*pi*int |phi|^2 dp equals 1
MomentumProfile normalized(const MomentumProfile& phi, double tol = 1e-10);

}  // namespace profiles

// phi_{+-}(p) = (phi(p) +- phi(-p)) / 2; the two parts sum back to phi
// pointwise. Both returned profiles carry the symmetrized support.
std::pair<MomentumProfile, MomentumProfile> even_odd_decompose(
    const MomentumProfile& phi);

// Representative catalog of the builtin families, with their
// vanishes-at-zero status as constructed.
std::vector<MomentumProfile> builtin_profiles();

// int_support |phi(p)|^2 dp (plain momentum-space L2 norm squared)
double momentum_norm_sq(const MomentumProfile& phi, double tol = 1e-10);

// 2*pi*int |phi|^2 dp: the position-space norm squared of the packet in the
// convention psi(t,x) = int dp e^{-iEt+ipx} phi(p).
double position_norm_sq(const MomentumProfile& phi, double tol = 1e-10);

// Sampled bound |phi(p)| <= C |p| at p = +-1e-3, 1e-4, 1e-5 with
// C = 10 * (peak amplitude). This is the admissibility gate for every
// 1/v-weighted integral.
bool samples_vanish_at_zero(const std::function<cplx(double)>& amplitude,
                            const Interval& support);

}  // namespace timeobs
