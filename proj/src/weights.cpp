#include "timeobs/weights.hpp"

#include <algorithm>
#include <cmath>
#include <vector>

namespace timeobs {

namespace {

double far_edge(const Interval& I) {
  return std::max(std::abs(I.lo), std::abs(I.hi));
}

double max_speed_on(const Dispersion& disp, const Interval& s) {
  return std::max(std::abs(disp.group_velocity(s.lo)),
                  std::abs(disp.group_velocity(s.hi)));
}

// support pieces strictly on either side of p = 0
std::vector<Interval> split_at_zero(const Interval& s) {
  std::vector<Interval> out;
  Interval neg = s.intersect(Interval::at_most(0.0));
  if (!neg.is_empty()) out.push_back(neg);
  Interval pos = s.intersect(Interval::at_least(0.0));
  if (!pos.is_empty()) out.push_back(pos);
  return out;
}

}  // namespace

cplx window_transform(const Interval& J, double k) {
  return oscillatory_time_integral(-2.0 * k, J);
}

double time_truncation_bound(const Wavepacket& wp, const Interval& J,
                             double mass_eps) {
  const PacketStats st = packet_stats(wp, mass_eps);
  const double v = std::max(st.v_eff, 1e-9);
  return 10.0 * (far_edge(J) + 10.0 * st.spatial_width) / v + 10.0;
}

double weight_time_space(const Wavepacket& wp, const Interval& I,
                         const Interval& J, double tol, WeightPath path) {
  if (!I.bounded() || !J.bounded())
    throw UnboundedInterval("weight_time_space: I and J must be bounded");
  if (I.is_empty() || J.is_empty()) return 0.0;

  if (path == WeightPath::momentum_space) {
    const MomentumProfile& phi = wp.profile;
    const Dispersion& disp = wp.dispersion;
    const Interval s = phi.support;
    // phase rate in p of osc(E(p)-E(q), I) * osc(q-p, J)
    const double rate = far_edge(I) * max_speed_on(disp, s) + far_edge(J);
    QuadControl ctrl;
    ctrl.initial_splits = oscillation_splits(rate, s.length());
    ctrl.initial_splits_2 = ctrl.initial_splits;
    ctrl.budget = 4'000'000;
    auto f = [&phi, &disp, &I, &J](double p, double q) {
      const cplx ap = phi.amplitude(p);
      const cplx aq = phi.amplitude(q);
      if (ap == cplx{0, 0} || aq == cplx{0, 0}) return cplx{0, 0};
      return std::conj(ap) * aq *
             oscillatory_time_integral(disp.energy(p) - disp.energy(q), I) *
             oscillatory_time_integral(q - p, J);
    };
    QuadResult r = integrate_2d(f, s, s, tol, ctrl);
    if (!r.converged)
      throw NonConvergence("weight_time_space did not converge",
                           r.value.real(), r.abs_error_estimate);
    const double val = r.value.real();
    if (val < -10.0 * tol)
      throw NegativeValue("weight_time_space: momentum path returned " +
                          std::to_string(val));
    return std::max(0.0, val);
  }

  // position path: |psi|^2 over I x J, psi by its own quadrature
  const double psi_tol = std::min(1e-8, 0.01 * tol);
  auto f = [&wp, psi_tol](double t, double x) -> cplx {
    const cplx v = psi(t, x, wp, psi_tol);
    return {std::norm(v), 0.0};
  };
  QuadControl ctrl;
  ctrl.budget = 40'000'000;
  // |psi|^2 beats in x at the momentum-support width scale
  ctrl.initial_splits_2 = oscillation_splits(
      wp.profile.support.bounded() ? wp.profile.support.length() : 4.0,
      J.length());
  QuadResult r = integrate_2d_nested(f, I, J, tol, ctrl);
  if (!r.converged)
    throw NonConvergence("weight_time_space (position path) did not converge",
                         r.value.real(), r.abs_error_estimate);
  return std::max(0.0, r.value.real());
}

DwellResult dwell_time(const Wavepacket& wp, const Interval& J, double tol,
                       DwellMethod method) {
  if (!J.bounded()) throw UnboundedInterval("dwell_time: J must be bounded");
  if (!wp.profile.vanishes_at_zero)
    throw NotInLeftIdeal("dwell_time: profile '" + wp.profile.label +
                         "' does not vanish at p = 0, the time-integrated "
                         "position weight diverges");
  DwellResult out;
  out.method = method;
  if (J.is_empty()) {
    out.quad.converged = true;
    return out;
  }

  if (method == DwellMethod::momentum_domain) {
    const MomentumProfile& phi = wp.profile;
    const Dispersion& disp = wp.dispersion;
    const double len_j = J.length();
    auto integrand = [&phi, &disp, &J, len_j](double p) -> cplx {
      if (p == 0.0) return {0.0, 0.0};
      const cplx a = phi.amplitude(p);
      if (a == cplx{0, 0}) return {0.0, 0.0};
      const cplx term =
          len_j * a + window_transform(J, p) * phi.amplitude(-p);
      return std::conj(a) * term / std::abs(disp.group_velocity(p));
    };
    QuadControl ctrl;
    ctrl.initial_splits = oscillation_splits(
        2.0 * far_edge(J),
        wp.profile.support.bounded() ? wp.profile.support.length() : 4.0);
    cplx total{0, 0};
    double err = 0.0;
    long evals = 0;
    bool ok = true;
    for (const Interval& dom : split_at_zero(phi.support)) {
      QuadResult r = integrate_1d(integrand, dom, 0.5 * tol, ctrl);
      total += r.value;
      err += r.abs_error_estimate;
      evals += r.evaluations;
      ok = ok && r.converged;
    }
    double value = 2.0 * M_PI * total.real();
    if (value < -10.0 * tol)
      throw NegativeValue("dwell_time: momentum formula returned " +
                          std::to_string(value));
    out.value = std::max(0.0, value);
    out.quad = QuadResult{total * (2.0 * M_PI), 2.0 * M_PI * err, ok, evals};
    return out;
  }

  // time_domain: truncate the improper t integral where the packet has
  // certainly left J, then quadrature |psi|^2 over [-T*,T*] x J.
  const double t_star = time_truncation_bound(wp, J);
  const double psi_tol = std::min(1e-8, 0.01 * tol);
  const double inner_tol = 0.25 * tol / std::max(1.0, 2.0 * t_star);
  QuadControl xctrl;
  xctrl.initial_splits = oscillation_splits(
      wp.profile.support.bounded() ? wp.profile.support.length() : 4.0,
      J.length());
  long evals = 0;
  bool ok = true;
  auto slab = [&](double t) -> cplx {
    auto density = [&wp, t, psi_tol](double x) -> cplx {
      return {std::norm(psi(t, x, wp, psi_tol)), 0.0};
    };
    QuadResult r = integrate_1d(density, J, inner_tol, xctrl);
    evals += r.evaluations;
    ok = ok && r.converged;
    return r.value;
  };
  QuadResult r =
      integrate_1d(slab, Interval(-t_star, t_star), 0.5 * tol, QuadControl{});
  r.evaluations += evals;
  r.converged = r.converged && ok;
  r.abs_error_estimate += inner_tol * 2.0 * t_star;
  if (!r.converged)
    throw NonConvergence("dwell_time (time domain) did not converge",
                         r.value.real(), r.abs_error_estimate);
  out.value = std::max(0.0, r.value.real());
  out.quad = r;
  return out;
}

double conditional_probability(const Wavepacket& wp, const Interval& I,
                               const Interval& J, double tol) {
  if (J.is_empty())
    throw ZeroCondition("conditional_probability: degenerate condition J");
  DwellResult d = dwell_time(wp, J, tol, DwellMethod::momentum_domain);
  if (!d.quad.converged)
    throw NonConvergence("conditional_probability: denominator not converged",
                         d.value, d.quad.abs_error_estimate);
  if (d.value <= std::max(10.0 * tol, 10.0 * d.quad.abs_error_estimate))
    throw ZeroCondition("conditional_probability: w_psi(E_X(J)) ~ 0");
  if (I.is_empty()) return 0.0;
  const double num = weight_time_space(wp, I, J, tol);
  return num / d.value;
}

TimeWindow gaussian_window(double t0, double width) {
  if (!(width > 0.0)) throw DomainError("gaussian_window: width must be > 0");
  const double inv2w2 = 1.0 / (2.0 * width * width);
  return TimeWindow{
      [t0, inv2w2](double t) -> cplx {
        const double d = t - t0;
        return {std::exp(-d * d * inv2w2), 0.0};
      },
      Interval(t0 - 12.0 * width, t0 + 12.0 * width)};
}

TimeWindow indicator_window(const Interval& I) {
  if (!I.bounded()) throw UnboundedInterval("indicator_window: bounded only");
  return TimeWindow{[](double) -> cplx { return {1.0, 0.0}; }, I};
}

cplx conditional_state_expectation(const Wavepacket& wp, const TimeWindow& g,
                                   const std::function<cplx(double)>& f,
                                   double tol) {
  // ||psi(t)||^2 = 2 pi int |phi|^2 is t-independent under the free
  // evolution and cancels in the ratio; it is evaluated once to validate
  // the square-integrability precondition.
  const double norm2 = position_norm_sq(wp.profile, std::min(tol, 1e-8));
  if (!(norm2 > 0.0))
    throw ZeroCondition("conditional_state_expectation: zero-norm state");

  auto wfun = [&g](double t) {
    const double a = std::abs(g.value(t));
    return a * a;
  };
  QuadResult den = integrate_1d(
      [&wfun](double t) -> cplx { return {wfun(t), 0.0}; }, g.support, tol);
  QuadResult num = integrate_1d(
      [&wfun, &f](double t) -> cplx { return wfun(t) * f(t); }, g.support, tol);
  if (!den.converged || !num.converged)
    throw NonConvergence("conditional_state_expectation did not converge",
                         std::abs(num.value), num.abs_error_estimate);
  if (den.value.real() <= 10.0 * tol)
    throw ZeroCondition("conditional_state_expectation: window has ~0 mass");
  return num.value / den.value.real();
}

LeftIdealReport left_ideal_diagnostic(const Wavepacket& wp, const Interval& J) {
  (void)J;  // membership of E_X(J) is J-independent for bounded J
  LeftIdealReport rep;
  rep.member =
      samples_vanish_at_zero(wp.profile.amplitude, wp.profile.support);
  if (rep.member) {
    rep.reason =
        "amplitude vanishes at p = 0 (sampled bound |phi(p)| <= C|p| at "
        "p = 1e-3..1e-5): the time-integrated weight of E_X(J) is finite";
  } else {
    rep.reason =
        "amplitude does not vanish at p = 0: the inverse-velocity factor "
        "1/|v(p)| makes the time-integrated weight of E_X(J) diverge";
  }
  return rep;
}

}  // namespace timeobs
