#include "timeobs/povm.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
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

double max_speed_on(const Dispersion& disp, const Interval& s) {
  return std::max(std::abs(disp.group_velocity(s.lo)),
                  std::abs(disp.group_velocity(s.hi)));
}

double pairwise_sum(const std::vector<double>& v, size_t lo, size_t hi) {
  if (hi - lo == 0) return 0.0;
  if (hi - lo == 1) return v[lo];
  const size_t mid = lo + (hi - lo) / 2;
  return pairwise_sum(v, lo, mid) + pairwise_sum(v, mid, hi);
}
double pairwise_sum(const std::vector<double>& v) {
  return pairwise_sum(v, 0, v.size());
}

double tight_norm(const MomentumProfile& phi) {
  return momentum_norm_sq(phi, 1e-12);
}

bool is_full_line(const Interval& I) {
  return !std::isfinite(I.lo) && !std::isfinite(I.hi);
}

// int_{sector} sqrt(|v(p)|) e^{-i E(p) t} phi(p) dp: the sector arrival
// amplitude. mass(I) = (1/2piN) int_I sum_sectors |A_s(t)|^2 dt, which is the
// bilinear kernel form after the t integral is pulled out (Fubini).
cplx arrival_amplitude(const MomentumProfile& phi, const Dispersion& disp,
                       const Interval& sector, double t, double tol,
                       bool& converged, long& evals) {
  auto integrand = [&phi, &disp, t](double p) -> cplx {
    const cplx a = phi.amplitude(p);
    if (a == cplx{0, 0}) return {0.0, 0.0};
    const double v = std::abs(disp.group_velocity(p));
    return std::sqrt(v) * std::polar(1.0, -disp.energy(p) * t) * a;
  };
  QuadControl ctrl;
  ctrl.initial_splits =
      oscillation_splits(std::abs(t) * max_speed_on(disp, sector),
                         sector.length());
  QuadResult r = integrate_1d(integrand, sector, tol, ctrl);
  converged = converged && r.converged;
  evals += r.evaluations;
  return r.value;
}

}  // namespace

double aperture_window(double a, double p) {
  if (p == 0.0) return a;
  return std::sin(a * p) / p;
}

std::vector<Interval> uniform_partition(const Interval& range, int n) {
  if (n < 1) throw DomainError("uniform_partition: need n >= 1");
  if (!range.bounded())
    throw UnboundedInterval("uniform_partition: bounded range only");
  std::vector<Interval> bins;
  bins.reserve(n);
  for (int i = 0; i < n; ++i)
    bins.emplace_back(range.lo + range.length() * i / n,
                      range.lo + range.length() * (i + 1) / n);
  return bins;
}

double povm_mass(const MomentumProfile& phi, const Dispersion& disp,
                 const Interval& I, double tol) {
  if (I.is_empty()) return 0.0;
  const double n = tight_norm(phi);
  if (!(n > 0.0)) throw DomainError("povm_mass: zero-norm profile");

  if (!I.bounded()) {
    if (!is_full_line(I))
      throw UnboundedInterval(
          "povm_mass: only bounded I or the full line are supported");
    // t in R: int_I e^{i(E(p)-E(q))t} dt = 2 pi delta(E(p)-E(q)); on a
    // diagonal sector this restricts to q = p and cancels the kernel
    // prefactor, leaving the plain sector norm.
    std::vector<double> parts;
    for (const Interval& dom : split_at_zero(phi.support)) {
      auto f = [&phi](double p) -> cplx {
        return {std::norm(phi.amplitude(p)), 0.0};
      };
      QuadResult r = integrate_1d(f, dom, std::min(tol, 1e-10));
      if (!r.converged)
        throw NonConvergence("povm_mass: sector norm did not converge",
                             r.value.real(), r.abs_error_estimate);
      parts.push_back(r.value.real());
    }
    return pairwise_sum(parts) / n;
  }

  const double t_far = std::max(std::abs(I.lo), std::abs(I.hi));
  cplx total{0, 0};
  for (const Interval& dom : split_at_zero(phi.support)) {
    auto f = [&phi, &disp, &I](double p, double q) -> cplx {
      const cplx ap = phi.amplitude(p);
      const cplx aq = phi.amplitude(q);
      if (ap == cplx{0, 0} || aq == cplx{0, 0}) return {0.0, 0.0};
      const double k = std::sqrt(disp.group_velocity(p) *
                                 disp.group_velocity(q)) /
                       (2.0 * M_PI);
      return std::conj(ap) * aq * k *
             oscillatory_time_integral(disp.energy(p) - disp.energy(q), I);
    };
    QuadControl ctrl;
    ctrl.initial_splits =
        oscillation_splits(t_far * max_speed_on(disp, dom), dom.length());
    ctrl.initial_splits_2 = ctrl.initial_splits;
    ctrl.budget = 4'000'000;
    QuadResult r = integrate_2d(f, dom, dom, tol * n, ctrl);
    if (!r.converged)
      throw NonConvergence("povm_mass did not converge", r.value.real() / n,
                           r.abs_error_estimate / n);
    total += r.value;
  }
  if (std::abs(total.imag()) > 10.0 * tol * n)
    throw HermiticityViolation(
        "povm_mass: imaginary part " + std::to_string(total.imag() / n) +
        " exceeds 10x tolerance");
  return total.real() / n;
}

ArrivalDistribution arrival_distribution(const MomentumProfile& phi,
                                         const Dispersion& disp,
                                         const std::vector<Interval>& partition,
                                         double tol, bool exact_first_moment) {
  // pairwise disjointness (zero-length overlap allowed at shared edges)
  std::vector<size_t> order(partition.size());
  std::iota(order.begin(), order.end(), 0);
  std::sort(order.begin(), order.end(), [&partition](size_t a, size_t b) {
    return partition[a].lo < partition[b].lo;
  });
  for (size_t i = 1; i < order.size(); ++i) {
    const Interval& prev = partition[order[i - 1]];
    const Interval& cur = partition[order[i]];
    if (prev.intersect(cur).length() > 0.0)
      throw DomainError("arrival_distribution: bins overlap");
  }

  ArrivalDistribution dist;
  dist.bins.resize(partition.size());
  const double n = tight_norm(phi);
  if (!(n > 0.0)) throw DomainError("arrival_distribution: zero-norm profile");

  if (partition.size() <= 32) {
    for (size_t i = 0; i < partition.size(); ++i)
      dist.bins[i] = ArrivalBin{partition[i],
                                povm_mass(phi, disp, partition[i], tol)};
  } else {
    // factorized route: the t integral of the kernel bilinear form equals
    // int_bin sum_s |A_s(t)|^2 dt / (2 pi N) with the sector amplitudes
    // A_s; algebraically identical to povm_mass per bin, one momentum
    // integral per time node instead of a double one per bin.
    const std::vector<Interval> sectors = split_at_zero(phi.support);
    const double amp_tol = std::max(1e-9, 1e-3 * tol * std::sqrt(n));
    double total_len = 0.0;
    for (const Interval& b : partition) total_len += b.length();
    bool ok = true;
    long evals = 0;
    auto density = [&](double t) -> cplx {
      double rho = 0.0;
      for (const Interval& s : sectors) {
        const cplx a = arrival_amplitude(phi, disp, s, t, amp_tol, ok, evals);
        rho += std::norm(a);
      }
      return {rho / (2.0 * M_PI * n), 0.0};
    };
    for (size_t i = 0; i < partition.size(); ++i) {
      const Interval& bin = partition[i];
      const double bin_tol =
          std::max(1e-14, tol * bin.length() / std::max(total_len, 1e-12));
      QuadResult r = integrate_1d(density, bin, bin_tol);
      dist.bins[i] = ArrivalBin{bin, r.value.real()};
      ok = ok && r.converged;
    }
    if (!ok)
      throw NonConvergence("arrival_distribution did not converge", 0.0, 0.0);
  }

  std::vector<double> masses(dist.bins.size());
  for (size_t i = 0; i < dist.bins.size(); ++i) masses[i] = dist.bins[i].mass;
  dist.total_mass = pairwise_sum(masses);

  if (exact_first_moment) {
    dist.first_moment = ab_time_moment(phi, disp, tol);
  } else if (dist.total_mass > 0.0) {
    std::vector<double> weighted(dist.bins.size());
    for (size_t i = 0; i < dist.bins.size(); ++i)
      weighted[i] = dist.bins[i].mass * dist.bins[i].bin.midpoint();
    dist.first_moment = pairwise_sum(weighted) / dist.total_mass;
  }
  return dist;
}

double ab_time_moment(const MomentumProfile& phi, const Dispersion& disp,
                      double tol) {
  if (disp.kind() == Dispersion::Kind::cosmological)
    throw DomainError(
        "ab_time_moment: particle dispersions only (the cosmological time "
        "operator lives in the cosmology module)");
  const bool away_from_zero =
      phi.support.lo > 1e-3 || phi.support.hi < -1e-3;
  if (!away_from_zero && !samples_vanish_at_zero(phi.amplitude, phi.support))
    throw SingularWeight("ab_time_moment: 1/p-weighted integrals diverge for " +
                         phi.label);
  const double n = tight_norm(phi);
  if (!(n > 0.0)) throw DomainError("ab_time_moment: zero-norm profile");

  const bool nonrel = disp.kind() == Dispersion::Kind::nonrelativistic;
  const double m = disp.parameter();
  // T = -(1/2)(c(p) x + x c(p)) with c = 1/v; (T phi)(p) =
  // -(i/2)(2 c phi' + c' phi) for x = i d/dp.
  auto integrand = [&phi, &disp, nonrel, m](double p) -> cplx {
    if (p == 0.0) return {0.0, 0.0};
    const cplx a = phi.amplitude(p);
    if (a == cplx{0, 0}) return {0.0, 0.0};
    const cplx d = phi.d_dp(p);
    const double c = 1.0 / disp.group_velocity(p);
    const double cp =
        nonrel ? -m / (p * p)
               : -m * m / (disp.energy(p) * p * p);
    const cplx tphi = cplx{0.0, -0.5} * (2.0 * c * d + cp * a);
    return std::conj(a) * tphi;
  };
  cplx total{0, 0};
  for (const Interval& dom : split_at_zero(phi.support)) {
    QuadResult r = integrate_1d(integrand, dom, 0.5 * tol * n);
    if (!r.converged)
      throw NonConvergence("ab_time_moment did not converge",
                           total.real() / n, r.abs_error_estimate / n);
    total += r.value;
  }
  return total.real() / n;
}

double finite_aperture_mass(const MomentumProfile& phi, const Dispersion& disp,
                            double a, const Interval& I, double tol) {
  if (!(a > 0.0)) throw DomainError("finite_aperture_mass: a must be > 0");
  if (!samples_vanish_at_zero(phi.amplitude, phi.support))
    throw NotInLeftIdeal("finite_aperture_mass: profile '" + phi.label +
                         "' does not vanish at p = 0");
  if (I.is_empty()) return 0.0;

  auto parts = even_odd_decompose(phi);
  const MomentumProfile even = parts.first;
  const MomentumProfile odd = parts.second;
  auto even_amp = even.amplitude;
  auto odd_amp = odd.amplitude;
  // V_a reweighting: phi_{+-} -> sqrt(|v|) (a +- sin(ap)/p)^{-1/2} phi_{+-}
  auto amp = [even_amp, odd_amp, disp, a](double p) -> cplx {
    if (std::abs(p) < 1e-10) return {0.0, 0.0};
    const double v = std::abs(disp.group_velocity(p));
    const double we = a + aperture_window(a, p);
    const double wo = a - aperture_window(a, p);
    cplx val = even_amp(p) / std::sqrt(we);
    if (wo > 0.0) val += odd_amp(p) / std::sqrt(wo);
    return std::sqrt(v) * val;
  };

  MomentumProfile tilted;
  tilted.amplitude = amp;
  const double hull =
      std::max(std::abs(phi.support.lo), std::abs(phi.support.hi));
  tilted.support = Interval(-hull, hull);
  tilted.vanishes_at_zero = true;  // sqrt(|v|)/sqrt(a+s) ~ |p|^{1/2} near 0
  tilted.label = phi.label + "~V_a";
  const Wavepacket packet{tilted, disp};

  const Interval aperture_j(-0.5 * a, 0.5 * a);
  const double norm2 = 2.0 * M_PI * tight_norm(phi);

  if (!I.bounded()) {
    if (!is_full_line(I))
      throw UnboundedInterval("finite_aperture_mass: bounded I or full line");
    // dwell of the transformed packet: total mass over all time, which the
    // isometry pins at 1
    auto integrand = [&amp, &disp, &aperture_j, a](double p) -> cplx {
      if (p == 0.0) return {0.0, 0.0};
      const cplx ap = amp(p);
      const cplx term = a * ap + window_transform(aperture_j, p) * amp(-p);
      return std::conj(ap) * term / std::abs(disp.group_velocity(p));
    };
    cplx total{0, 0};
    for (const Interval& dom : split_at_zero(tilted.support)) {
      QuadResult r = integrate_1d(integrand, dom, 0.5 * tol * norm2);
      if (!r.converged)
        throw NonConvergence("finite_aperture_mass did not converge",
                             total.real(), r.abs_error_estimate);
      total += r.value;
    }
    return 2.0 * M_PI * total.real() / norm2;
  }

  const double w = weight_time_space(packet, I, aperture_j, tol * norm2);
  return w / norm2;
}

Interval auto_time_range(const MomentumProfile& phi, const Dispersion& disp,
                         double tail_eps, double tol) {
  const double n = tight_norm(phi);
  if (!(n > 0.0)) throw DomainError("auto_time_range: zero-norm profile");
  const std::vector<Interval> sectors = split_at_zero(phi.support);
  const double amp_tol = std::max(1e-9, 1e-2 * tol * std::sqrt(n));
  bool ok = true;
  long evals = 0;

  const int scan_bins = 512;
  double t_max = 8.0;
  for (int round = 0; round < 26; ++round) {
    // coarse bin masses over [-T, T]
    std::vector<double> mass(scan_bins, 0.0);
    const double dt = 2.0 * t_max / scan_bins;
    for (int i = 0; i < scan_bins; ++i) {
      // midpoint density times bin width: adequate for range finding
      const double t = -t_max + (i + 0.5) * dt;
      double rho = 0.0;
      for (const Interval& s : sectors) {
        const cplx amp = arrival_amplitude(phi, disp, s, t, amp_tol, ok, evals);
        rho += std::norm(amp);
      }
      mass[i] = rho * dt / (2.0 * M_PI * n);
    }
    const double total = pairwise_sum(mass);
    if (1.0 - total <= 0.5 * tail_eps) {
      // trim: keep the central part carrying >= 1 - tail_eps
      double cum = 0.0;
      int lo = 0, hi = scan_bins - 1;
      while (lo < scan_bins && cum + mass[lo] < 0.25 * tail_eps)
        cum += mass[lo++];
      cum = 0.0;
      while (hi >= 0 && cum + mass[hi] < 0.25 * tail_eps) cum += mass[hi--];
      lo = std::max(0, lo - 1);
      hi = std::min(scan_bins - 1, hi + 1);
      return Interval(-t_max + lo * dt, -t_max + (hi + 1) * dt);
    }
    t_max *= 2.0;
  }
  throw NonConvergence("auto_time_range: arrival mass does not concentrate",
                       0.0, 0.0);
}

}  // namespace timeobs
