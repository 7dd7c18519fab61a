#include "timeobs/profile.hpp"

#include <algorithm>
#include <cmath>

namespace timeobs {

namespace {

double effective_width(const Interval& support) {
  if (support.bounded() && support.length() > 0.0) return support.length();
  return 1.0;
}

double peak_amplitude(const std::function<cplx(double)>& amplitude,
                      const Interval& support) {
  Interval probe = support.bounded() ? support : Interval(-20.0, 20.0);
  double peak = 0.0;
  const int n = 128;
  for (int i = 0; i < n; ++i) {
    const double p = probe.lo + probe.length() * (i + 0.5) / n;
    peak = std::max(peak, std::abs(amplitude(p)));
  }
  return peak;
}

Interval symmetric_hull(const Interval& s) {
  const double m = std::max(std::abs(s.lo), std::abs(s.hi));
  return Interval(-m, m);
}

}  // namespace

cplx MomentumProfile::d_dp(double p) const {
  if (derivative) return derivative(p);
  const double h = 1e-4 * std::max(1.0, effective_width(support));
  auto central = [&](double step) {
    return (amplitude(p + step) - amplitude(p - step)) / (2.0 * step);
  };
  const cplx d1 = central(h);
  const cplx d2 = central(0.5 * h);
  return d2 + (d2 - d1) / 3.0;  // one Richardson step
}

bool samples_vanish_at_zero(const std::function<cplx(double)>& amplitude,
                            const Interval& support) {
  const double scale = peak_amplitude(amplitude, support);
  if (scale == 0.0) return true;
  const double c_bound = 10.0 * scale;
  for (double s : {1e-3, 1e-4, 1e-5}) {
    const double a = std::max(std::abs(amplitude(s)), std::abs(amplitude(-s)));
    if (a > c_bound * s) return false;
  }
  return true;
}

namespace profiles {

MomentumProfile gaussian(double p0, double sigma, bool truncate_positive) {
  if (!(sigma > 0.0)) throw DomainError("gaussian: sigma must be positive");
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  auto core = [p0, inv2s2](double p) {
    const double d = p - p0;
    return std::exp(-d * d * inv2s2);
  };
  MomentumProfile phi;
  if (truncate_positive) {
    phi.amplitude = [core](double p) -> cplx {
      return p > 0.0 ? cplx{core(p), 0.0} : cplx{0.0, 0.0};
    };
    phi.derivative = [core, p0, inv2s2](double p) -> cplx {
      if (p <= 0.0) return {0.0, 0.0};
      return {-2.0 * (p - p0) * inv2s2 * core(p), 0.0};
    };
    phi.support = Interval(std::max(0.0, p0 - 12.0 * sigma), p0 + 12.0 * sigma);
  } else {
    phi.amplitude = [core](double p) -> cplx { return {core(p), 0.0}; };
    phi.derivative = [core, p0, inv2s2](double p) -> cplx {
      return {-2.0 * (p - p0) * inv2s2 * core(p), 0.0};
    };
    phi.support = Interval(p0 - 12.0 * sigma, p0 + 12.0 * sigma);
  }
  phi.vanishes_at_zero = samples_vanish_at_zero(phi.amplitude, phi.support);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "gaussian(p0=%g,sigma=%g%s)", p0, sigma,
                truncate_positive ? ",p>0" : "");
  phi.label = buf;
  return phi;
}

MomentumProfile odd_gaussian(double p0, double sigma) {
  if (!(sigma > 0.0)) throw DomainError("odd_gaussian: sigma must be positive");
  const double inv2s2 = 1.0 / (2.0 * sigma * sigma);
  auto core = [p0, inv2s2](double p) {
    const double d = p - p0;
    return std::exp(-d * d * inv2s2);
  };
  MomentumProfile phi;
  phi.amplitude = [core](double p) -> cplx { return {p * core(p), 0.0}; };
  phi.derivative = [core, p0, inv2s2](double p) -> cplx {
    const double g = core(p);
    return {g - p * 2.0 * (p - p0) * inv2s2 * g, 0.0};
  };
  phi.support = Interval(p0 - 12.0 * sigma, p0 + 12.0 * sigma);
  phi.vanishes_at_zero = samples_vanish_at_zero(phi.amplitude, phi.support);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "odd_gaussian(p0=%g,sigma=%g)", p0, sigma);
  phi.label = buf;
  return phi;
}

MomentumProfile bump(double p0, double w) {
  if (!(w > 0.0)) throw DomainError("bump: width must be positive");
  auto core = [p0, w](double p) {
    const double s = (p - p0) / w;
    const double d = 1.0 - s * s;
    if (d <= 0.0) return 0.0;
    return std::exp(-1.0 / d);
  };
  MomentumProfile phi;
  phi.amplitude = [core](double p) -> cplx { return {core(p), 0.0}; };
  phi.derivative = [core, p0, w](double p) -> cplx {
    const double s = (p - p0) / w;
    const double d = 1.0 - s * s;
    if (d <= 0.0) return {0.0, 0.0};
    return {core(p) * (-2.0 * s / (d * d)) / w, 0.0};
  };
  phi.support = Interval(p0 - w, p0 + w);
  phi.vanishes_at_zero = samples_vanish_at_zero(phi.amplitude, phi.support);
  char buf[96];
  std::snprintf(buf, sizeof(buf), "bump(p0=%g,w=%g)", p0, w);
  phi.label = buf;
  return phi;
}

MomentumProfile position_shift(const MomentumProfile& phi, double x0) {
  MomentumProfile out = phi;
  auto amp = phi.amplitude;
  out.amplitude = [amp, x0](double p) {
    return std::polar(1.0, -p * x0) * amp(p);
  };
  if (phi.derivative) {
    auto d = phi.derivative;
    out.derivative = [amp, d, x0](double p) {
      return std::polar(1.0, -p * x0) * (d(p) - cplx{0.0, x0} * amp(p));
    };
  } else {
    out.derivative = nullptr;
  }
  out.label = phi.label + "@x0=" + std::to_string(x0);
  return out;
}

MomentumProfile time_shift(const MomentumProfile& phi, const Dispersion& disp,
                           double s) {
  MomentumProfile out = phi;
  auto amp = phi.amplitude;
  out.amplitude = [amp, disp, s](double p) {
    return std::polar(1.0, disp.energy(p) * s) * amp(p);
  };
  if (phi.derivative) {
    auto d = phi.derivative;
    out.derivative = [amp, d, disp, s](double p) {
      const cplx ph = std::polar(1.0, disp.energy(p) * s);
      return ph * (d(p) + cplx{0.0, s * disp.group_velocity(p)} * amp(p));
    };
  } else {
    out.derivative = nullptr;
  }
  out.label = phi.label + "+ts";
  return out;
}

MomentumProfile conjugate(const MomentumProfile& phi) {
  MomentumProfile out = phi;
  auto amp = phi.amplitude;
  out.amplitude = [amp](double p) { return std::conj(amp(p)); };
  if (phi.derivative) {
    auto d = phi.derivative;
    out.derivative = [d](double p) { return std::conj(d(p)); };
  }
  out.label = "conj(" + phi.label + ")";
  return out;
}

MomentumProfile mix(cplx c1, const MomentumProfile& phi1, cplx c2,
                    const MomentumProfile& phi2) {
  MomentumProfile out;
  auto a1 = phi1.amplitude, a2 = phi2.amplitude;
  out.amplitude = [c1, a1, c2, a2](double p) {
    return c1 * a1(p) + c2 * a2(p);
  };
  if (phi1.derivative && phi2.derivative) {
    auto d1 = phi1.derivative, d2 = phi2.derivative;
    out.derivative = [c1, d1, c2, d2](double p) {
      return c1 * d1(p) + c2 * d2(p);
    };
  }
  out.support = Interval(std::min(phi1.support.lo, phi2.support.lo),
                         std::max(phi1.support.hi, phi2.support.hi));
  out.vanishes_at_zero = samples_vanish_at_zero(out.amplitude, out.support);
  out.label = "mix(" + phi1.label + "," + phi2.label + ")";
  return out;
}

MomentumProfile normalized(const MomentumProfile& phi, double tol) {
  const double n2 = position_norm_sq(phi, tol);
  if (!(n2 > 0.0)) throw DomainError("normalized: profile has zero norm");
  const double c = 1.0 / std::sqrt(n2);
  MomentumProfile out = phi;
  auto amp = phi.amplitude;
  out.amplitude = [amp, c](double p) { return c * amp(p); };
  if (phi.derivative) {
    auto d = phi.derivative;
    out.derivative = [d, c](double p) { return c * d(p); };
  }
  out.label = phi.label + "/norm";
  return out;
}

}  // namespace profiles

std::pair<MomentumProfile, MomentumProfile> even_odd_decompose(
    const MomentumProfile& phi) {
  const Interval hull = symmetric_hull(phi.support);
  auto amp = phi.amplitude;

  MomentumProfile even;
  even.amplitude = [amp](double p) { return 0.5 * (amp(p) + amp(-p)); };
  MomentumProfile odd;
  odd.amplitude = [amp](double p) { return 0.5 * (amp(p) - amp(-p)); };
  if (phi.derivative) {
    auto d = phi.derivative;
    even.derivative = [d](double p) { return 0.5 * (d(p) - d(-p)); };
    odd.derivative = [d](double p) { return 0.5 * (d(p) + d(-p)); };
  }
  even.support = hull;
  odd.support = hull;
  even.vanishes_at_zero = samples_vanish_at_zero(even.amplitude, hull);
  odd.vanishes_at_zero = samples_vanish_at_zero(odd.amplitude, hull);
  even.label = phi.label + "_even";
  odd.label = phi.label + "_odd";
  return {even, odd};
}

std::vector<MomentumProfile> builtin_profiles() {
  return {
      profiles::gaussian(5.0, 0.5),
      profiles::gaussian(5.0, 0.5, /*truncate_positive=*/true),
      profiles::gaussian(0.0, 1.0),
      profiles::odd_gaussian(5.0, 0.8),
      profiles::bump(3.0, 1.0),
      profiles::bump(5.0, 1.0),
  };
}

double momentum_norm_sq(const MomentumProfile& phi, double tol) {
  auto f = [&phi](double p) -> cplx {
    const double a = std::abs(phi.amplitude(p));
    return {a * a, 0.0};
  };
  QuadResult r = integrate_1d(f, phi.support, tol);
  if (!r.converged)
    throw NonConvergence("momentum_norm_sq did not converge for " + phi.label,
                         r.value.real(), r.abs_error_estimate);
  return r.value.real();
}

double position_norm_sq(const MomentumProfile& phi, double tol) {
  return 2.0 * M_PI * momentum_norm_sq(phi, tol);
}

}  // namespace timeobs
