#include "timeobs/validate.hpp"

#include <algorithm>
#include <cmath>

#include "timeobs/oracle.hpp"
#include "timeobs/povm.hpp"
#include "timeobs/weights.hpp"

namespace timeobs {

namespace {

constexpr double kRelTol = 1e-3;

ValidationCase make_case(const std::string& name, double main_value,
                         double oracle_value) {
  ValidationCase c;
  c.name = name;
  c.main_value = main_value;
  c.oracle_value = oracle_value;
  const double scale =
      std::max({std::abs(main_value), std::abs(oracle_value), 1e-30});
  c.rel_diff = std::abs(main_value - oracle_value) / scale;
  c.tolerance = kRelTol;
  c.pass = c.rel_diff <= kRelTol;
  return c;
}

oracle::GridSpec grid_for(const Interval& I, const Interval& J,
                          const Interval& p_range, int nt, int nx, int np) {
  oracle::GridSpec g;
  g.t_range = I;
  g.x_range = J;
  g.p_range = p_range;
  g.nt = nt;
  g.nx = nx;
  g.np = np;
  return g;
}

}  // namespace

std::vector<ValidationCase> run_validation_suite() {
  std::vector<ValidationCase> out;
  const double tol = 1e-6;

  // --- weights ------------------------------------------------------------
  {
    const Wavepacket wp{profiles::bump(5.0, 1.0),
                        Dispersion::nonrelativistic(1.0)};
    const Interval I(0.0, 1.0), J(0.0, 10.0);
    const double main_value = weight_time_space(wp, I, J, tol);
    const auto g = grid_for(I, J, Interval(3.5, 6.5), 600, 600, 2048);
    out.push_back(make_case("weight/bump", main_value,
                            oracle::grid_weight(wp, I, J, g).value));
  }
  {
    const Wavepacket wp{profiles::gaussian(5.0, 0.5, true),
                        Dispersion::nonrelativistic(1.0)};
    const Interval I(-0.5, 0.5), J(-1.0, 3.0);
    const double main_value = weight_time_space(wp, I, J, tol);
    const auto g = grid_for(I, J, Interval(1.0, 9.0), 600, 600, 2048);
    out.push_back(make_case("weight/trunc-gaussian", main_value,
                            oracle::grid_weight(wp, I, J, g).value));
  }
  {
    const Wavepacket wp{profiles::bump(5.0, 1.0),
                        Dispersion::nonrelativistic(1.0)};
    const Interval J(-2.0, 2.0);
    const double main_value =
        dwell_time(wp, J, tol, DwellMethod::momentum_domain).value;
    const double t_star = time_truncation_bound(wp, J);
    const Interval I(-t_star, t_star);
    const auto g = grid_for(I, J, Interval(3.5, 6.5), 2000, 400, 2048);
    out.push_back(make_case("dwell/bump", main_value,
                            oracle::grid_weight(wp, I, J, g).value));
  }
  {
    const Wavepacket wp{profiles::gaussian(5.0, 0.5, true),
                        Dispersion::nonrelativistic(1.0)};
    const Interval I(-1.0, 1.0), J(-0.5, 0.5);
    const double main_value = conditional_probability(wp, I, J, tol);
    const double t_star = time_truncation_bound(wp, J);
    const auto g_num = grid_for(I, J, Interval(1.0, 9.0), 600, 400, 2048);
    const auto g_den = grid_for(Interval(-t_star, t_star), J,
                                Interval(1.0, 9.0), 2000, 400, 2048);
    const double oracle_value =
        oracle::grid_weight(wp, I, J, g_num).value /
        oracle::grid_weight(wp, Interval(-t_star, t_star), J, g_den).value;
    out.push_back(make_case("condprob/trunc-gaussian", main_value,
                            oracle_value));
  }

  // --- POVM masses ----------------------------------------------------------
  {
    const auto phi = profiles::bump(5.0, 1.0);
    const auto disp = Dispersion::nonrelativistic(1.0);
    const Interval I(0.0, 0.5);
    const auto g = grid_for(I, I, Interval(3.5, 6.5), 16, 16, 4096);
    out.push_back(make_case("povm/bump", povm_mass(phi, disp, I, tol),
                            oracle::grid_povm(phi, disp, I, g).value));
  }
  {
    const auto phi = profiles::position_shift(profiles::bump(5.0, 1.0), -2.0);
    const auto disp = Dispersion::nonrelativistic(1.0);
    const Interval I(0.2, 0.6);
    const auto g = grid_for(I, I, Interval(3.5, 6.5), 16, 16, 4096);
    out.push_back(make_case("povm/shifted-bump", povm_mass(phi, disp, I, tol),
                            oracle::grid_povm(phi, disp, I, g).value));
  }
  {
    const auto phi = profiles::bump(5.0, 1.0);
    const auto disp = Dispersion::relativistic(1.0);
    const Interval I(0.0, 0.5);
    const auto g = grid_for(I, I, Interval(3.5, 6.5), 16, 16, 4096);
    out.push_back(make_case("povm/relativistic-bump",
                            povm_mass(phi, disp, I, tol),
                            oracle::grid_povm(phi, disp, I, g).value));
  }

  // --- cosmological dwell -----------------------------------------------------
  {
    CosmoState state{profiles::bump(2.0, 0.7), zero_profile(), {1.0}};
    const Interval J(-1.0, 1.0);
    const double main_value = scale_dwell(state, J, tol);
    const Wavepacket carrier{state.plus, Dispersion::cosmological(1.0)};
    const double phi_star = time_truncation_bound(carrier, J);
    const auto g = grid_for(Interval(-phi_star, phi_star), J,
                            Interval(1.0, 3.0), 2000, 400, 2048);
    out.push_back(make_case("cosmo-dwell/expanding", main_value,
                            oracle::grid_cosmo_dwell(state, J, g).value));
  }
  {
    CosmoState state{profiles::bump(2.0, 0.7), profiles::bump(-1.5, 0.5),
                     {1.0}};
    const Interval J(0.3, 1.7);
    const double main_value = scale_dwell(state, J, tol);
    const Wavepacket carrier{state.plus, Dispersion::cosmological(1.0)};
    const double phi_star = time_truncation_bound(carrier, J) * 1.5;
    const auto g = grid_for(Interval(-phi_star, phi_star), J,
                            Interval(-3.0, 3.0), 2400, 400, 3072);
    out.push_back(make_case("cosmo-dwell/mixed", main_value,
                            oracle::grid_cosmo_dwell(state, J, g).value));
  }
  {
    CosmoState state{profiles::bump(-2.0, 0.5), zero_profile(), {0.8}};
    const Interval J(-0.5, 1.0);
    const double main_value = scale_dwell(state, J, tol);
    const Wavepacket carrier{state.plus, Dispersion::cosmological(0.8)};
    const double phi_star = time_truncation_bound(carrier, J);
    const auto g = grid_for(Interval(-phi_star, phi_star), J,
                            Interval(-3.0, -1.0), 2000, 400, 2048);
    out.push_back(make_case("cosmo-dwell/contracting", main_value,
                            oracle::grid_cosmo_dwell(state, J, g).value));
  }

  return out;
}

}  // namespace timeobs
