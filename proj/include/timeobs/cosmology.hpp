#pragma once

#include <functional>
#include <utility>

#include "timeobs/profile.hpp"

namespace timeobs {

// Robertson-Walker Wheeler-DeWitt model in log-scale coordinates u = ln p.
// The frequency is omega_k = kappa sqrt(k^2 + 1/16) >= kappa/4 with
// kappa = sqrt(16 pi G / 3); only kappa enters any formula.
struct CosmoParams {
  double kappa = 1.0;
};

// State at scalar-field time zero, specified directly by the two
// frequency-sector amplitudes phi_+(k), phi_-(k).
struct CosmoState {
  MomentumProfile plus;
  MomentumProfile minus;
  CosmoParams params;

  double omega(double k) const {
    return params.kappa * std::sqrt(k * k + 1.0 / 16.0);
  }
};

// Zero amplitude placeholder for single-sector states.
MomentumProfile zero_profile();

enum class VDirection { forward, inverse };

// The change of variables between the log-scale line and the scale half
// line: forward (V f)(p) = p^{1/4} f(ln p), inverse (V^-1 g)(u) =
// e^{-u/4} g(e^u). V is unitary from L2(du) onto the half line with the
// volume measure p^{-3/2} dp (the measure in which the model's kinetic
// operator is symmetric): int_0^inf |Vf|^2 p^{-3/2} dp = int |f|^2 du.
std::function<cplx(double)> v_transform(std::function<cplx(double)> f,
                                        VDirection direction);
double wdw_measure_weight(double p);  // p^{-3/2}

// <phi|phi> = sum_{+-} int |phi_{+-}(k)|^2 dk
double time_zero_norm(const CosmoState& state, double tol);

// Expected scalar-field duration with the scale parameter p = e^u inside
// e^J:  sum_{+-} int dk (omega_k/|k|) conj(phi_{+-}(k))
//         [ |J| phi_{+-}(k) + W_J(k) phi_{+-}(-k) ],
// W_J(k) = int_J e^{-2iku} du. Finite only when the amplitudes vanish at
// k = 0 (gated by the sampled bound).
double scale_dwell(const CosmoState& state, const Interval& J, double tol);

// <T_p> = <T_1> + ln(p_scale) <omega/k>, where T_1 is the symmetrized
// (omega/k) u operator with u = i d/dk and the sector signs
// (omega phi)_{+-} = +- omega_k phi_{+-}. Expanding states (k/omega > 0)
// reach p = 0 at scalar-field time -infinity: <T_p> is affine in ln p with
// positive slope <omega/k>.
double emergent_time_moment(const CosmoState& state, double p_scale,
                            double tol);

// <omega/k> = sum_{+-} int (+- omega_k/k) |phi_{+-}|^2 dk / norm
double expected_omega_over_k(const CosmoState& state, double tol);

// Split by the sign of k/omega: expanding takes k > 0 from the + sector and
// k < 0 from the - sector; contracting the complement. The parts sum back
// to the original state and have orthogonal supports.
std::pair<CosmoState, CosmoState> branch_decompose(const CosmoState& state);

}  // namespace timeobs
