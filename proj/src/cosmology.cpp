#include "timeobs/cosmology.hpp"

#include <cmath>
#include <vector>

#include "timeobs/weights.hpp"

namespace timeobs {

namespace {

std::vector<Interval> split_at_zero(const Interval& s) {
  std::vector<Interval> out;
  Interval neg = s.intersect(Interval::at_most(0.0));
  if (!neg.is_empty()) out.push_back(neg);
  Interval pos = s.intersect(Interval::at_least(0.0));
  if (!pos.is_empty()) out.push_back(pos);
  return out;
}

bool sector_is_zero(const MomentumProfile& phi) {
  return phi.support.is_empty();
}

enum class GateError { left_ideal, singular_weight };

// both the dwell weight omega/|k| and the time operator weight omega/k are
// singular at k = 0; the sampled vanishing bound gates both, under the
// error type the failing operation reports
void require_admissible(const CosmoState& state, const char* who,
                        GateError kind) {
  for (const MomentumProfile* phi : {&state.plus, &state.minus}) {
    if (sector_is_zero(*phi)) continue;
    const bool away = phi->support.lo > 1e-3 || phi->support.hi < -1e-3;
    if (!away && !samples_vanish_at_zero(phi->amplitude, phi->support)) {
      const std::string msg = std::string(who) + ": sector amplitude '" +
                              phi->label + "' does not vanish at k = 0";
      if (kind == GateError::left_ideal) throw NotInLeftIdeal(msg);
      throw SingularWeight(msg);
    }
  }
}

MomentumProfile restrict_sign(const MomentumProfile& phi, int sign) {
  MomentumProfile out;
  auto amp = phi.amplitude;
  out.amplitude = [amp, sign](double k) -> cplx {
    return sign * k > 0.0 ? amp(k) : cplx{0.0, 0.0};
  };
  if (phi.derivative) {
    auto d = phi.derivative;
    out.derivative = [d, sign](double k) -> cplx {
      return sign * k > 0.0 ? d(k) : cplx{0.0, 0.0};
    };
  }
  out.support = phi.support.intersect(sign > 0 ? Interval::at_least(0.0)
                                               : Interval::at_most(0.0));
  if (out.support.is_empty()) out.support = Interval(0.0, 0.0);
  out.vanishes_at_zero =
      out.support.is_empty() ||
      samples_vanish_at_zero(out.amplitude, out.support);
  out.label = phi.label + (sign > 0 ? "|k>0" : "|k<0");
  return out;
}

}  // namespace

MomentumProfile zero_profile() {
  MomentumProfile phi;
  phi.amplitude = [](double) -> cplx { return {0.0, 0.0}; };
  phi.derivative = [](double) -> cplx { return {0.0, 0.0}; };
  phi.support = Interval(0.0, 0.0);
  phi.vanishes_at_zero = true;
  phi.label = "zero";
  return phi;
}

std::function<cplx(double)> v_transform(std::function<cplx(double)> f,
                                        VDirection direction) {
  if (direction == VDirection::forward) {
    return [f](double p) -> cplx {
      if (!(p > 0.0))
        throw DomainError("v_transform: the scale variable requires p > 0");
      return std::pow(p, 0.25) * f(std::log(p));
    };
  }
  return [f](double u) -> cplx { return std::exp(-0.25 * u) * f(std::exp(u)); };
}

double wdw_measure_weight(double p) {
  if (!(p > 0.0)) throw DomainError("wdw_measure_weight: p > 0 required");
  return std::pow(p, -1.5);
}

double time_zero_norm(const CosmoState& state, double tol) {
  double total = 0.0;
  for (const MomentumProfile* phi : {&state.plus, &state.minus}) {
    if (sector_is_zero(*phi)) continue;
    total += momentum_norm_sq(*phi, 0.5 * tol);
  }
  return total;
}

double scale_dwell(const CosmoState& state, const Interval& J, double tol) {
  if (!J.bounded()) throw UnboundedInterval("scale_dwell: J must be bounded");
  require_admissible(state, "scale_dwell", GateError::left_ideal);
  if (J.is_empty()) return 0.0;

  const double len_j = J.length();
  cplx total{0, 0};
  double err = 0.0;
  for (const MomentumProfile* phi : {&state.plus, &state.minus}) {
    if (sector_is_zero(*phi)) continue;
    auto amp = phi->amplitude;
    auto integrand = [&state, amp, &J, len_j](double k) -> cplx {
      if (k == 0.0) return {0.0, 0.0};
      const cplx a = amp(k);
      if (a == cplx{0, 0}) return {0.0, 0.0};
      const cplx term = len_j * a + window_transform(J, k) * amp(-k);
      return (state.omega(k) / std::abs(k)) * std::conj(a) * term;
    };
    QuadControl ctrl;
    ctrl.initial_splits = oscillation_splits(
        2.0 * std::max(std::abs(J.lo), std::abs(J.hi)),
        phi->support.bounded() ? phi->support.length() : 4.0);
    for (const Interval& dom : split_at_zero(phi->support)) {
      QuadResult r = integrate_1d(integrand, dom, 0.25 * tol, ctrl);
      if (!r.converged)
        throw NonConvergence("scale_dwell did not converge", total.real(),
                             r.abs_error_estimate);
      total += r.value;
      err += r.abs_error_estimate;
    }
  }
  const double value = total.real();
  if (value < -10.0 * tol)
    throw NegativeValue("scale_dwell returned " + std::to_string(value));
  return std::max(0.0, value);
}

double expected_omega_over_k(const CosmoState& state, double tol) {
  require_admissible(state, "expected_omega_over_k", GateError::singular_weight);
  const double n = time_zero_norm(state, std::min(tol, 1e-10));
  if (!(n > 0.0)) throw DomainError("expected_omega_over_k: zero-norm state");
  double total = 0.0;
  int sector_sign = +1;
  for (const MomentumProfile* phi : {&state.plus, &state.minus}) {
    if (!sector_is_zero(*phi)) {
      auto amp = phi->amplitude;
      const int s = sector_sign;
      auto integrand = [&state, amp, s](double k) -> cplx {
        if (k == 0.0) return {0.0, 0.0};
        return {s * (state.omega(k) / k) * std::norm(amp(k)), 0.0};
      };
      for (const Interval& dom : split_at_zero(phi->support)) {
        QuadResult r = integrate_1d(integrand, dom, 0.25 * tol * n);
        if (!r.converged)
          throw NonConvergence("expected_omega_over_k did not converge",
                               total / n, r.abs_error_estimate / n);
        total += r.value.real();
      }
    }
    sector_sign = -1;
  }
  return total / n;
}

double emergent_time_moment(const CosmoState& state, double p_scale,
                            double tol) {
  if (!(p_scale > 0.0))
    throw DomainError("emergent_time_moment: p_scale must be > 0");
  require_admissible(state, "emergent_time_moment", GateError::singular_weight);
  const double n = time_zero_norm(state, std::min(tol, 1e-10));
  if (!(n > 0.0)) throw DomainError("emergent_time_moment: zero-norm state");

  // <T_1>: T_1 = (1/2)((omega/k) u + u (omega/k)) with u = i d/dk and the
  // sector sign of omega; (T_1 phi)_s = (i/2)(2 c_s phi' + c_s' phi),
  // c_s(k) = s omega_k / k, c_s'(k) = -s kappa^2 / (16 omega_k k^2).
  const double kappa = state.params.kappa;
  cplx total{0, 0};
  int sector_sign = +1;
  for (const MomentumProfile* phi : {&state.plus, &state.minus}) {
    if (!sector_is_zero(*phi)) {
      const int s = sector_sign;
      auto integrand = [&state, phi, s, kappa](double k) -> cplx {
        if (k == 0.0) return {0.0, 0.0};
        const cplx a = phi->amplitude(k);
        if (a == cplx{0, 0}) return {0.0, 0.0};
        const cplx d = phi->d_dp(k);
        const double w = state.omega(k);
        const double c = s * w / k;
        const double cp = -s * kappa * kappa / (16.0 * w * k * k);
        const cplx tphi = cplx{0.0, 0.5} * (2.0 * c * d + cp * a);
        return std::conj(a) * tphi;
      };
      for (const Interval& dom : split_at_zero(phi->support)) {
        QuadResult r = integrate_1d(integrand, dom, 0.25 * tol * n);
        if (!r.converged)
          throw NonConvergence("emergent_time_moment did not converge",
                               total.real() / n, r.abs_error_estimate / n);
        total += r.value;
      }
    }
    sector_sign = -1;
  }
  const double t1 = total.real() / n;
  if (p_scale == 1.0) return t1;
  return t1 + std::log(p_scale) * expected_omega_over_k(state, tol);
}

std::pair<CosmoState, CosmoState> branch_decompose(const CosmoState& state) {
  CosmoState expanding{restrict_sign(state.plus, +1),
                       restrict_sign(state.minus, -1), state.params};
  CosmoState contracting{restrict_sign(state.plus, -1),
                         restrict_sign(state.minus, +1), state.params};
  return {expanding, contracting};
}

}  // namespace timeobs
