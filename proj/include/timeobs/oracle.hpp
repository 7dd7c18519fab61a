#pragma once

#include "timeobs/cosmology.hpp"
#include "timeobs/wavepacket.hpp"

namespace timeobs {
// Brute-force reference implementations: midpoint Riemann sums on fixed
// grids, sharing no integration machinery with the adaptive paths. Accuracy
// is reported (grid-refinement estimate), never enforced. Deterministic
// given the GridSpec.
namespace oracle {

struct GridSpec {
  Interval t_range;  // time (or scalar-field) axis
  Interval x_range;  // position (or log-scale) axis
  int nt = 2000;
  int nx = 2000;
  Interval p_range;  // momentum axis for the packet reconstruction
  int np = 4096;
};

struct GridValue {
  double value = 0.0;
  // |full grid - half resolution| from one refinement step
  double refinement_estimate = 0.0;
};

// Grid sized per the standard defaults: np=4096, nt=nx=2000, momentum range
// = packet center +- 8 spreads.
GridSpec default_grid(const Wavepacket& wp, const Interval& I,
                      const Interval& J);

// int_I dt int_J dx |psi|^2 by midpoint sums, psi by direct momentum
// Riemann sum. Requires I, J inside the grid ranges.
GridValue grid_weight(const Wavepacket& wp, const Interval& I,
                      const Interval& J, const GridSpec& grid);

// <phi|P0(I)|phi>/<phi|phi> by a direct double momentum sum over the
// diagonal sectors, with the time window in closed form.
GridValue grid_povm(const MomentumProfile& phi, const Dispersion& disp,
                    const Interval& I, const GridSpec& grid);

// Cosmological dwell: kappa^2 int_Phi dphi int_J du |psi(phi,u)|^2 with
// psi(phi,u) = (2 pi)^{-1/2} int dk e^{iku} (e^{-i omega phi} phi_+ +
// e^{+i omega phi} phi_-); t_range supplies the scalar-field truncation.
GridValue grid_cosmo_dwell(const CosmoState& state, const Interval& J,
                           const GridSpec& grid);

// Closed form of int dp e^{-i p^2 t/(2m) + i p x} e^{-(p-p0)^2/(2 sigma^2)}
// by completing the square; validates psi() for Gaussian profiles.
cplx gaussian_reference(double p0, double sigma, double m, double t, double x);

}  // namespace oracle
}  // namespace timeobs
