#include "timeobs/wavepacket.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <vector>

namespace timeobs {

PacketStats packet_stats(const Wavepacket& wp, double mass_eps) {
  const Interval s = wp.profile.support.bounded() ? wp.profile.support
                                                  : Interval(-40.0, 40.0);
  const int n = 512;
  std::vector<double> w(n), speed(n), p(n);
  double total = 0.0;
  for (int i = 0; i < n; ++i) {
    p[i] = s.lo + s.length() * (i + 0.5) / n;
    const double a = std::abs(wp.profile.amplitude(p[i]));
    w[i] = a * a;
    speed[i] = std::abs(wp.dispersion.group_velocity(p[i]));
    total += w[i];
  }
  PacketStats st;
  if (total <= 0.0) return st;

  double mean = 0.0, m2 = 0.0;
  for (int i = 0; i < n; ++i) mean += w[i] * p[i];
  mean /= total;
  for (int i = 0; i < n; ++i) m2 += w[i] * (p[i] - mean) * (p[i] - mean);
  st.p_mean = mean;
  st.sigma_p = std::sqrt(m2 / total);
  st.spatial_width = st.sigma_p > 0.0 ? 0.5 / st.sigma_p : 1.0;

  // v_eff: sort samples by speed, accumulate mass until the quantile
  std::vector<int> idx(n);
  std::iota(idx.begin(), idx.end(), 0);
  std::sort(idx.begin(), idx.end(),
            [&speed](int a, int b) { return speed[a] < speed[b]; });
  double cum = 0.0;
  st.v_eff = speed[idx.back()];
  for (int i : idx) {
    cum += w[i];
    if (cum >= mass_eps * total) {
      st.v_eff = std::max(speed[i], 1e-12);
      break;
    }
  }
  st.v_max = *std::max_element(speed.begin(), speed.end());
  return st;
}

QuadResult psi_quad(double t, double x, const Wavepacket& wp, double tol) {
  const MomentumProfile& phi = wp.profile;
  const Dispersion& disp = wp.dispersion;
  auto f = [&](double p) {
    return std::polar(1.0, -disp.energy(p) * t + p * x) * phi.amplitude(p);
  };
  QuadControl ctrl;
  if (phi.support.bounded()) {
    const double v_max = std::max(std::abs(disp.group_velocity(phi.support.lo)),
                                  std::abs(disp.group_velocity(phi.support.hi)));
    const double rate = std::abs(t) * v_max + std::abs(x);
    ctrl.initial_splits = oscillation_splits(rate, phi.support.length());
  }
  return integrate_1d(f, phi.support, tol, ctrl);
}

cplx psi(double t, double x, const Wavepacket& wp, double tol) {
  QuadResult r = psi_quad(t, x, wp, tol);
  if (!r.converged)
    throw NonConvergence("psi(t=" + std::to_string(t) +
                             ",x=" + std::to_string(x) +
                             ") did not converge for " + wp.profile.label,
                         std::abs(r.value), r.abs_error_estimate);
  return r.value;
}

}  // namespace timeobs
