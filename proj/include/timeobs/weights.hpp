#pragma once

#include <functional>
#include <string>

#include "timeobs/wavepacket.hpp"

namespace timeobs {

enum class DwellMethod { time_domain, momentum_domain };
enum class WeightPath { momentum_space, position_space };

// Dwell time w_psi(E_X(J)): the expected total duration of "position in J",
// integrated over all time. Nonnegative; both methods agree within
// combined tolerance.
struct DwellResult {
  double value = 0.0;
  DwellMethod method = DwellMethod::momentum_domain;
  QuadResult quad;
};

// w_psi(E_X(J) E_T(I) E_X(J)) = int_I dt int_J dx |psi(t,x)|^2.
//
// momentum_space evaluates the double momentum representation
//   int dp int dq conj(phi(p)) phi(q) [int_I e^{i(E(p)-E(q))t} dt]
//                                     [int_J e^{-i(p-q)x} dx]
// with both inner oscillatory integrals in closed form; position_space
// quadratures |psi|^2 directly over I x J.
double weight_time_space(const Wavepacket& wp, const Interval& I,
                         const Interval& J, double tol,
                         WeightPath path = WeightPath::momentum_space);

// w_psi(E_X(J)). The momentum_domain method uses the delta-function
// reduction of the infinite time integral,
//   2*pi*int dp (1/|v(p)|) conj(phi(p)) [ |J| phi(p) + W_J(p) phi(-p) ]
// with W_J(p) = int_J e^{-2ipx} dx; time_domain truncates the t integral at
// time_truncation_bound(). Requires the profile to vanish at p = 0.
DwellResult dwell_time(const Wavepacket& wp, const Interval& J, double tol,
                       DwellMethod method = DwellMethod::momentum_domain);

// P(I|J) = weight_time_space / dwell_time: probability that the time
// observable lies in I given that the position is in J. The two integrals
// converge independently; tolerances combine in quadrature.
double conditional_probability(const Wavepacket& wp, const Interval& I,
                               const Interval& J, double tol);

// Square-integrable time window.
struct TimeWindow {
  std::function<cplx(double)> value;
  Interval support;
};

TimeWindow gaussian_window(double t0, double width);
TimeWindow indicator_window(const Interval& I);

// Expectation of a time-diagonal observable f(t) in the window-conditioned
// state:  int dt |g|^2 f(t) ||psi(t)||^2 / int dt |g|^2 ||psi(t)||^2.
// For the free evolution ||psi(t)||^2 is constant and drops out of the
// ratio. As |g|^2 dt approaches a point mass at t0 this tends to f(t0).
cplx conditional_state_expectation(const Wavepacket& wp, const TimeWindow& g,
                                   const std::function<cplx(double)>& f,
                                   double tol);

struct LeftIdealReport {
  bool member = false;
  std::string reason;
};

// Whether E_X(J) has finite weight for this packet: the time-integrated
// position probability is finite iff the amplitude vanishes at p = 0
// (sampled bound |phi(p)| <= C|p| at p = +-1e-3, 1e-4, 1e-5).
LeftIdealReport left_ideal_diagnostic(const Wavepacket& wp, const Interval& J);

// W_J(k) = int_J e^{-2iku} du, closed form. For J = [-b, b] this equals
// sin(2kb)/k, even in k.
cplx window_transform(const Interval& J, double k);

// Truncation bound for improper time integrals: by |t| = T* the slowest
// momentum still carrying >= mass_eps of the packet has crossed J, with a
// factor-10 safety margin.
double time_truncation_bound(const Wavepacket& wp, const Interval& J,
                             double mass_eps = 1e-4);

}  // namespace timeobs
