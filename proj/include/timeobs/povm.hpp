#pragma once

#include <vector>

#include "timeobs/wavepacket.hpp"

namespace timeobs {

// Momentum-space kernel of the arrival observable P0(I):
//   sqrt(v(p) v(q)) / (2 pi) * int_I e^{i (E(p)-E(q)) t} dt   for p q > 0,
//   0 otherwise.
// Hermitian; the diagonal is |v(p)| length(I) / (2 pi).
struct ArrivalKernel {
  Dispersion dispersion;

  double prefactor(double p, double q) const {
    if (p * q <= 0.0) return 0.0;
    const double vp = dispersion.group_velocity(p);
    const double vq = dispersion.group_velocity(q);
    return std::sqrt(vp * vq) / (2.0 * M_PI);
  }
  cplx operator()(double p, double q, const Interval& I) const {
    if (p * q <= 0.0) return {0.0, 0.0};
    return prefactor(p, q) *
           oscillatory_time_integral(dispersion.energy(p) - dispersion.energy(q), I);
  }
};

struct ArrivalBin {
  Interval bin;
  double mass = 0.0;
};

// Discretized arrival-time probability measure. Masses are normalized by
// <phi|phi>; first_moment is the midpoint-weighted mean conditioned on the
// binned range (or the operator moment when requested exactly).
struct ArrivalDistribution {
  std::vector<ArrivalBin> bins;
  double total_mass = 0.0;
  double first_moment = 0.0;
};

// <phi| P0(I) |phi> / <phi|phi>, summing the two diagonal sectors p,q > 0
// and p,q < 0 (the kernel vanishes between sectors). I = (-inf, inf) is
// evaluated analytically via the delta-function reduction (the diagonal
// restriction); other unbounded intervals are rejected.
double povm_mass(const MomentumProfile& phi, const Dispersion& disp,
                 const Interval& I, double tol);

// Per-bin masses over a pairwise-disjoint partition. Bins are reduced with
// deterministic pairwise summation. With exact_first_moment the first
// moment is taken from ab_time_moment instead of bin midpoints.
ArrivalDistribution arrival_distribution(const MomentumProfile& phi,
                                         const Dispersion& disp,
                                         const std::vector<Interval>& partition,
                                         double tol,
                                         bool exact_first_moment = false);

// First moment of the arrival measure as an operator expectation:
//   nonrelativistic  T = -(m/2) (p^{-1} x + x p^{-1})
//   relativistic     T = -(1/2) ((E/p) x + x (E/p))
// with x = i d/dp in the momentum representation. Requires the 1/p-weighted
// integrals to converge (profile vanishing at p = 0).
double ab_time_moment(const MomentumProfile& phi, const Dispersion& disp,
                      double tol);

// <phi| Phi_a(E_T(I)) |phi> for the finite aperture J = [-a/2, a/2]: the
// even/odd parts are reweighted by sqrt(|v(p)|) (a +- sin(ap)/p)^{-1/2} and
// the resulting packet's time-position weight over I x J is taken,
// normalized to total mass 1 over t in R. Converges to povm_mass as a -> 0.
double finite_aperture_mass(const MomentumProfile& phi, const Dispersion& disp,
                            double a, const Interval& I, double tol);

// sin(a p)/p (-> a at p = 0): the window factor of the aperture isometry.
double aperture_window(double a, double p);

// Smallest time interval outside which the arrival density carries less
// than tail_eps of the total mass (scan + refinement).
Interval auto_time_range(const MomentumProfile& phi, const Dispersion& disp,
                         double tail_eps = 1e-6, double tol = 1e-8);

// Equal-width partition of `range` into n bins.
std::vector<Interval> uniform_partition(const Interval& range, int n);

}  // namespace timeobs
