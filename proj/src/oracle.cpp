#include "timeobs/oracle.hpp"

#include <algorithm>
#include <cmath>
#include <future>
#include <thread>
#include <vector>

namespace timeobs {
namespace oracle {

namespace {

// local pairwise reducer; the oracles share no numerical machinery with the
// adaptive paths
double pair_sum(const std::vector<double>& v, size_t lo, size_t hi) {
  if (hi - lo == 0) return 0.0;
  if (hi - lo == 1) return v[lo];
  const size_t mid = lo + (hi - lo) / 2;
  return pair_sum(v, lo, mid) + pair_sum(v, mid, hi);
}
double pair_sum(const std::vector<double>& v) { return pair_sum(v, 0, v.size()); }

// closed form of int_I e^{i d t} dt, restated locally
cplx osc_window(double d, const Interval& I) {
  if (d == 0.0) return {I.length(), 0.0};
  return std::polar(1.0, d * I.midpoint()) *
         (2.0 * std::sin(0.5 * d * I.length()) / d);
}

// Midpoint sum of |sum_j c_j e^{i p_j x}|^2 over an x grid, by phasor
// stepping: one complex multiply per (j, x) pair.
double row_mass(const std::vector<cplx>& c, const std::vector<double>& p,
                double x0, double dx, int nx) {
  std::vector<cplx> row(nx, cplx{0, 0});
  const size_t np = c.size();
  for (size_t j = 0; j < np; ++j) {
    if (c[j] == cplx{0, 0}) continue;
    cplx phase = std::polar(1.0, p[j] * (x0 + 0.5 * dx));
    const cplx step = std::polar(1.0, p[j] * dx);
    const cplx cj = c[j];
    for (int k = 0; k < nx; ++k) {
      row[k] += cj * phase;
      phase *= step;
    }
  }
  double s = 0.0;
  for (int k = 0; k < nx; ++k) s += std::norm(row[k]);
  return s * dx;
}

// parallel map over rows with a deterministic pairwise reduction
double sum_rows(int nt, const std::function<double(int)>& row_value) {
  std::vector<double> rows(nt, 0.0);
  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int chunks = std::min<int>(nt, static_cast<int>(hw));
  std::vector<std::future<void>> futs;
  for (int c = 0; c < chunks; ++c) {
    futs.push_back(std::async(std::launch::async, [&, c]() {
      for (int i = c; i < nt; i += chunks) rows[i] = row_value(i);
    }));
  }
  for (auto& f : futs) f.get();
  return pair_sum(rows);
}

double weight_pass(const Wavepacket& wp, const Interval& I, const Interval& J,
                   const Interval& p_range, int nt, int nx, int np) {
  const double dt = I.length() / nt;
  const double dx = J.length() / nx;
  const double dp = p_range.length() / np;
  std::vector<double> p(np), e(np);
  std::vector<cplx> amp(np);
  for (int j = 0; j < np; ++j) {
    p[j] = p_range.lo + (j + 0.5) * dp;
    amp[j] = wp.profile.amplitude(p[j]) * dp;
    e[j] = wp.dispersion.energy(p[j]);
  }
  auto row = [&](int i) {
    const double t = I.lo + (i + 0.5) * dt;
    std::vector<cplx> c(np);
    for (int j = 0; j < np; ++j)
      c[j] = amp[j] * std::polar(1.0, -e[j] * t);
    return row_mass(c, p, J.lo, dx, nx);
  };
  return sum_rows(nt, row) * dt;
}

double povm_pass(const MomentumProfile& phi, const Dispersion& disp,
                 const Interval& I, const Interval& p_range, int np) {
  const double dp = p_range.length() / np;
  std::vector<double> p(np), e(np), v(np);
  std::vector<cplx> amp(np);
  for (int j = 0; j < np; ++j) {
    p[j] = p_range.lo + (j + 0.5) * dp;
    amp[j] = phi.amplitude(p[j]);
    e[j] = disp.energy(p[j]);
    v[j] = disp.group_velocity(p[j]);
  }
  double norm = 0.0;
  for (int j = 0; j < np; ++j) norm += std::norm(amp[j]) * dp;
  if (norm == 0.0) return 0.0;

  const unsigned hw = std::max(1u, std::thread::hardware_concurrency());
  const int chunks = std::min<int>(np, static_cast<int>(hw));
  std::vector<double> partial(np, 0.0);
  std::vector<std::future<void>> futs;
  for (int c = 0; c < chunks; ++c) {
    futs.push_back(std::async(std::launch::async, [&, c]() {
      for (int j = c; j < np; j += chunks) {
        if (amp[j] == cplx{0, 0}) continue;
        double acc_re = 0.0;
        for (int k = 0; k < np; ++k) {
          if (p[j] * p[k] <= 0.0 || amp[k] == cplx{0, 0}) continue;
          const double pref = std::sqrt(v[j] * v[k]) / (2.0 * M_PI);
          const cplx term = std::conj(amp[j]) * amp[k] * pref *
                            osc_window(e[j] - e[k], I);
          acc_re += term.real();
        }
        partial[j] = acc_re * dp * dp;
      }
    }));
  }
  for (auto& f : futs) f.get();
  return pair_sum(partial) / norm;
}

double cosmo_pass(const CosmoState& state, const Interval& phi_range,
                  const Interval& J, const Interval& k_range, int nt, int nx,
                  int nk) {
  const double dphi = phi_range.length() / nt;
  const double du = J.length() / nx;
  const double dk = k_range.length() / nk;
  std::vector<double> k(nk), w(nk);
  std::vector<cplx> ap(nk), am(nk);
  const double pref = 1.0 / std::sqrt(2.0 * M_PI);
  for (int j = 0; j < nk; ++j) {
    k[j] = k_range.lo + (j + 0.5) * dk;
    w[j] = state.omega(k[j]);
    ap[j] = state.plus.support.is_empty() ? cplx{0, 0}
                                          : state.plus.amplitude(k[j]);
    am[j] = state.minus.support.is_empty() ? cplx{0, 0}
                                           : state.minus.amplitude(k[j]);
  }
  auto row = [&](int i) {
    const double phi_t = phi_range.lo + (i + 0.5) * dphi;
    std::vector<cplx> c(nk);
    for (int j = 0; j < nk; ++j) {
      const cplx rot = std::polar(1.0, -w[j] * phi_t);
      c[j] = pref * dk * (rot * ap[j] + std::conj(rot) * am[j]);
    }
    return row_mass(c, k, J.lo, du, nx);
  };
  const double kappa = state.params.kappa;
  return kappa * kappa * sum_rows(nt, row) * dphi;
}

}  // namespace

GridSpec default_grid(const Wavepacket& wp, const Interval& I,
                      const Interval& J) {
  const PacketStats st = packet_stats(wp);
  GridSpec g;
  g.t_range = I;
  g.x_range = J;
  g.nt = 2000;
  g.nx = 2000;
  g.p_range = Interval(st.p_mean - 8.0 * std::max(st.sigma_p, 1e-6),
                       st.p_mean + 8.0 * std::max(st.sigma_p, 1e-6));
  g.np = 4096;
  return g;
}

GridValue grid_weight(const Wavepacket& wp, const Interval& I,
                      const Interval& J, const GridSpec& grid) {
  if (I.is_empty() || J.is_empty()) return {0.0, 0.0};
  if (!grid.t_range.contains(I) || !grid.x_range.contains(J))
    throw DomainError("grid_weight: I, J must lie inside the grid ranges");
  const double full =
      weight_pass(wp, I, J, grid.p_range, grid.nt, grid.nx, grid.np);
  const double half = weight_pass(wp, I, J, grid.p_range,
                                  std::max(16, grid.nt / 2),
                                  std::max(16, grid.nx / 2),
                                  std::max(16, grid.np / 2));
  return {full, std::abs(full - half)};
}

GridValue grid_povm(const MomentumProfile& phi, const Dispersion& disp,
                    const Interval& I, const GridSpec& grid) {
  if (I.is_empty()) return {0.0, 0.0};
  const double full = povm_pass(phi, disp, I, grid.p_range, grid.np);
  const double half =
      povm_pass(phi, disp, I, grid.p_range, std::max(16, grid.np / 2));
  return {full, std::abs(full - half)};
}

GridValue grid_cosmo_dwell(const CosmoState& state, const Interval& J,
                           const GridSpec& grid) {
  if (J.is_empty()) return {0.0, 0.0};
  const double full = cosmo_pass(state, grid.t_range, J, grid.p_range,
                                 grid.nt, grid.nx, grid.np);
  const double half = cosmo_pass(state, grid.t_range, J, grid.p_range,
                                 std::max(16, grid.nt / 2),
                                 std::max(16, grid.nx / 2),
                                 std::max(16, grid.np / 2));
  return {full, std::abs(full - half)};
}

cplx gaussian_reference(double p0, double sigma, double m, double t,
                        double x) {
  if (!(sigma > 0.0) || !(m > 0.0))
    throw DomainError("gaussian_reference: sigma, m must be > 0");
  // complete the square: int e^{-alpha p^2 + beta p + gamma} dp
  //                      = sqrt(pi/alpha) e^{beta^2/(4 alpha) + gamma}
  const cplx alpha{1.0 / (2.0 * sigma * sigma), t / (2.0 * m)};
  const cplx beta{p0 / (sigma * sigma), x};
  const double gamma = -p0 * p0 / (2.0 * sigma * sigma);
  return std::sqrt(M_PI / alpha) * std::exp(beta * beta / (4.0 * alpha) + gamma);
}

}  // namespace oracle
}  // namespace timeobs
