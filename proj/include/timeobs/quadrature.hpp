#pragma once

#include <complex>
#include <functional>

#include "timeobs/interval.hpp"

namespace timeobs {

using cplx = std::complex<double>;

// Outcome of an adaptive integration. converged == true guarantees
// abs_error_estimate <= the requested tolerance.
struct QuadResult {
  cplx value{0.0, 0.0};
  double abs_error_estimate = 0.0;
  bool converged = false;
  long evaluations = 0;
};

struct QuadControl {
  long budget = 1'000'000;  // max integrand evaluations per integral
  // Pre-subdivision counts. Callers integrating oscillatory factors set these
  // from oscillation_splits() so the embedded rule starts resolved.
  int initial_splits = 1;
  int initial_splits_2 = 1;  // second axis, 2d rules only
};

// Adaptive Gauss-Kronrod (G7,K15) with interval bisection. Infinite or
// half-infinite domains are mapped to a bounded parameter by the
// substitution x = u/(1-u^2) (shifted/mirrored for half-lines).
QuadResult integrate_1d(const std::function<cplx(double)>& f,
                        const Interval& domain, double tol,
                        const QuadControl& ctrl = {});

// 2d adaptive rule on rectangles: tensor K15xK15 values with embedded-Gauss
// error estimates per axis; the worse axis is bisected.
QuadResult integrate_2d(const std::function<cplx(double, double)>& f,
                        const Interval& dom1, const Interval& dom2, double tol,
                        const QuadControl& ctrl = {});

// Same integral as nested 1d passes (outer over dom1). Kept as an
// independent route for self-consistency checks.
QuadResult integrate_2d_nested(const std::function<cplx(double, double)>& f,
                               const Interval& dom1, const Interval& dom2,
                               double tol, const QuadControl& ctrl = {});

// Closed form of int_I e^{i delta t} dt. Exact to machine precision; the
// delta == 0 limit returns length(I). Throws UnboundedInterval for
// infinite I: infinite time integrals reduce to delta functions and are
// handled analytically by the callers.
cplx oscillatory_time_integral(double delta, const Interval& I);

// Number of initial subdivisions needed so a phase moving at |rate| radians
// per unit completes at most ~one cycle per cell over `range`.
int oscillation_splits(double rate, double range);

}  // namespace timeobs
