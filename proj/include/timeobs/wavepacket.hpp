#pragma once

#include "timeobs/dispersion.hpp"
#include "timeobs/profile.hpp"
#include "timeobs/quadrature.hpp"

namespace timeobs {

// A free solution psi(t,x) = int dp e^{-i E(p) t + i p x} phi(p).
// The Fourier convention carries no 2*pi prefactor; consequently
// int dx |psi(t,x)|^2 = 2*pi*int dp |phi(p)|^2, constant in t.
struct Wavepacket {
  MomentumProfile profile;
  Dispersion dispersion;
};

// Mass-weighted kinematic summary of a packet, used to size truncation
// bounds and oscillation hints.
struct PacketStats {
  double v_max = 0.0;       // max |group velocity| over the support
  double v_eff = 0.0;       // slowest speed carrying >= mass_eps of |phi|^2
  double sigma_p = 0.0;     // momentum spread (std dev of |phi|^2)
  double spatial_width = 1.0;  // ~ 1/(2 sigma_p) at t = 0
  double p_mean = 0.0;
};

PacketStats packet_stats(const Wavepacket& wp, double mass_eps = 1e-4);

// psi(t,x) by adaptive quadrature over the profile support, pre-split to
// resolve the phase (-E(p) t + p x).
QuadResult psi_quad(double t, double x, const Wavepacket& wp, double tol);
cplx psi(double t, double x, const Wavepacket& wp, double tol);

}  // namespace timeobs
