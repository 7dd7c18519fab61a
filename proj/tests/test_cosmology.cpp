// Wheeler-DeWitt model: the log-scale change of variables, time-zero norms,
// scale dwell times, emergent-time moments and the expanding/contracting
// decomposition.

#include <doctest.h>

#include <cmath>
#include <random>

#include "timeobs/cosmology.hpp"
#include "timeobs/oracle.hpp"
#include "timeobs/weights.hpp"

using namespace timeobs;

namespace {

MomentumProfile scaled(const MomentumProfile& phi, double c) {
  MomentumProfile out = phi;
  auto amp = phi.amplitude;
  out.amplitude = [amp, c](double k) { return c * amp(k); };
  if (phi.derivative) {
    auto d = phi.derivative;
    out.derivative = [d, c](double k) { return c * d(k); };
  }
  return out;
}

MomentumProfile momentum_normalized(const MomentumProfile& phi) {
  return scaled(phi, 1.0 / std::sqrt(momentum_norm_sq(phi, 1e-12)));
}

}  // namespace

TEST_CASE("v_transform: round trip, fixed point at p=1, unitarity") {
  auto f = [](double u) -> cplx { return {std::exp(-u * u), 0.0}; };

  auto forward = v_transform(f, VDirection::forward);
  // ln 1 = 0: (Vf)(1) = f(0) = 1
  CHECK(std::abs(forward(1.0) - cplx{1.0, 0.0}) < 1e-15);
  CHECK_THROWS_AS(forward(-0.5), DomainError);
  CHECK_THROWS_AS(forward(0.0), DomainError);

  // inverse(forward(f)) = f pointwise
  auto round_trip = v_transform(forward, VDirection::inverse);
  for (int i = 0; i < 100; ++i) {
    const double u = -4.0 + 8.0 * i / 99.0;
    CHECK(std::abs(round_trip(u) - f(u)) < 1e-12);
  }

  // unitarity onto the half line with the volume measure p^{-3/2} dp, on
  // 20 random u-space profiles
  std::mt19937 rng(31415);
  std::uniform_real_distribution<double> center(-1.5, 1.5);
  std::uniform_real_distribution<double> width(0.4, 1.4);
  std::uniform_int_distribution<int> family(0, 1);
  for (int trial = 0; trial < 20; ++trial) {
    const MomentumProfile prof =
        family(rng) ? profiles::bump(center(rng), width(rng))
                    : profiles::gaussian(center(rng), 0.4 * width(rng));
    auto g = [&prof](double u) { return prof.amplitude(u); };
    auto vg = v_transform(g, VDirection::forward);
    // both sides truncated at the same u window; the p image is wildly
    // nonuniform, so pre-split densely enough for the rule to see the peak
    const Interval udom = prof.support;
    QuadControl ctrl;
    ctrl.initial_splits = 512;
    auto lhs = integrate_1d(
        [&vg](double p) -> cplx {
          return {std::norm(vg(p)) * wdw_measure_weight(p), 0.0};
        },
        Interval(std::exp(udom.lo), std::exp(udom.hi)), 1e-9, ctrl);
    auto rhs = integrate_1d(
        [&g](double u) -> cplx { return {std::norm(g(u)), 0.0}; }, udom,
        1e-12);
    CHECK(lhs.converged);
    CHECK(std::abs(lhs.value.real() - rhs.value.real()) < 1e-8);
  }
}

TEST_CASE("time_zero_norm: sector sums and scaling") {
  const auto unit = momentum_normalized(profiles::bump(2.0, 0.7));
  CosmoState one{unit, zero_profile(), {1.0}};
  CHECK(time_zero_norm(one, 1e-10) == doctest::Approx(1.0).epsilon(1e-9));

  CosmoState tripled{scaled(unit, 3.0), zero_profile(), {1.0}};
  CHECK(time_zero_norm(tripled, 1e-10) == doctest::Approx(9.0).epsilon(1e-9));

  // mixed sectors: sum of the two integrals, against a Riemann oracle
  CosmoState mixed{profiles::bump(2.0, 0.7), profiles::bump(-1.5, 0.5), {1.0}};
  const double got = time_zero_norm(mixed, 1e-10);
  double riemann = 0.0;
  const int n = 200000;
  for (int i = 0; i < n; ++i) {
    const double k = -4.0 + 8.0 * (i + 0.5) / n;
    riemann += (std::norm(mixed.plus.amplitude(k)) +
                std::norm(mixed.minus.amplitude(k))) *
               8.0 / n;
  }
  CHECK(got == doctest::Approx(riemann).epsilon(1e-6));
}

TEST_CASE("scale_dwell: gates and trivial cases") {
  CosmoState state{profiles::bump(2.0, 0.7), zero_profile(), {1.0}};
  CHECK(scale_dwell(state, Interval::empty(), 1e-8) == 0.0);
  CHECK_THROWS_AS(scale_dwell(state, Interval::all(), 1e-8),
                  UnboundedInterval);

  CosmoState bad{profiles::gaussian(0.0, 1.0), zero_profile(), {1.0}};
  CHECK_THROWS_AS(scale_dwell(bad, Interval(-1.0, 1.0), 1e-8), NotInLeftIdeal);
}

TEST_CASE("scale_dwell: monotone in J and positive") {
  CosmoState state{profiles::bump(2.0, 0.7), profiles::bump(-1.5, 0.5), {1.0}};
  double prev = 0.0;
  for (double b : {0.25, 0.5, 1.0, 2.0}) {
    const double d = scale_dwell(state, Interval(-b, b), 1e-8);
    CHECK(d >= prev - 1e-7);
    prev = d;
  }
}

TEST_CASE("scale_dwell vs (phi,u)-space grid oracle") {
  CosmoState state{profiles::bump(2.0, 0.7), zero_profile(), {1.0}};
  const Interval J(-1.0, 1.0);
  const double main_value = scale_dwell(state, J, 1e-8);
  const Wavepacket carrier{state.plus, Dispersion::cosmological(1.0)};
  oracle::GridSpec g;
  const double phi_star = time_truncation_bound(carrier, J);
  g.t_range = Interval(-phi_star, phi_star);
  g.x_range = J;
  g.nt = 1200;
  g.nx = 200;
  g.p_range = Interval(1.0, 3.0);
  g.np = 1024;
  const auto ov = oracle::grid_cosmo_dwell(state, J, g);
  CHECK(std::abs(main_value - ov.value) <= 1e-2 * main_value);
}

TEST_CASE("scale_dwell: classical limit at large J") {
  // symmetric two-sided sector keeps the parity term alive; it dies off as
  // |J| grows and the dwell per unit length tends to the omega/|k| average
  const auto base = profiles::bump(2.0, 0.7);
  MomentumProfile symmetric;
  auto amp = base.amplitude;
  symmetric.amplitude = [amp](double k) { return amp(k) + amp(-k); };
  symmetric.support = Interval(-2.7, 2.7);
  symmetric.vanishes_at_zero = true;
  symmetric.label = "sym-bump";
  CosmoState state{symmetric, zero_profile(), {1.0}};

  auto weighted = integrate_1d(
      [&state, &symmetric](double k) -> cplx {
        if (k == 0.0) return {0.0, 0.0};
        return {state.omega(k) / std::abs(k) *
                    std::norm(symmetric.amplitude(k)),
                0.0};
      },
      Interval(1.3, 2.7), 1e-12);
  const double limit = 2.0 * weighted.value.real();  // both k signs

  const Wavepacket carrier{symmetric, Dispersion::cosmological(1.0)};
  const double width = 100.0 * packet_stats(carrier).spatial_width;
  const double dwell = scale_dwell(state, Interval(-width / 2, width / 2), 1e-9);
  CHECK(std::abs(dwell / width - limit) <= 0.01 * limit);
}

TEST_CASE("emergent time: symmetry zero and covariance in ln p") {
  CosmoState real_state{profiles::bump(2.0, 0.7), zero_profile(), {1.0}};
  CHECK(std::abs(emergent_time_moment(real_state, 1.0, 1e-9)) < 1e-9);

  // position-shifted expanding packet: T_p affine in ln p, exactly
  CosmoState state{profiles::position_shift(profiles::bump(2.0, 0.7), -1.5),
                   zero_profile(),
                   {1.0}};
  const double t1 = emergent_time_moment(state, 1.0, 1e-9);
  const double slope = expected_omega_over_k(state, 1e-9);
  CHECK(slope > 0.0);  // k/omega > 0: expanding
  for (double p : {1e-2, 0.1, 10.0, 100.0}) {
    const double tp = emergent_time_moment(state, p, 1e-9);
    CHECK(std::abs(tp - (t1 + std::log(p) * slope)) < 1e-12);
  }
  // expanding universes reach p = 0 at scalar-field time -infinity:
  // <T_p> decreases without bound as p -> 0+
  CHECK(emergent_time_moment(state, 1e-8, 1e-9) < -10.0);

  CosmoState bad{profiles::gaussian(0.0, 1.0), zero_profile(), {1.0}};
  CHECK_THROWS_AS(emergent_time_moment(bad, 1.0, 1e-8), SingularWeight);
  CHECK_THROWS_AS(emergent_time_moment(state, -1.0, 1e-8), DomainError);
}

TEST_CASE("emergent time: contracting states have negative slope") {
  // + sector supported at k < 0: k/omega < 0, contracting
  CosmoState state{profiles::bump(-2.0, 0.5), zero_profile(), {1.0}};
  CHECK(expected_omega_over_k(state, 1e-9) < 0.0);
  // - sector supported at k < 0: k/omega > 0 again (omega < 0), expanding
  CosmoState flipped{zero_profile(), profiles::bump(-2.0, 0.5), {1.0}};
  CHECK(expected_omega_over_k(flipped, 1e-9) > 0.0);
}

TEST_CASE("branch_decompose: supports, norms, additivity") {
  // one-sided + sector: the contracting part is empty
  CosmoState exp_only{profiles::bump(2.0, 0.7), zero_profile(), {1.0}};
  auto [e1, c1] = branch_decompose(exp_only);
  CHECK(time_zero_norm(c1, 1e-10) == doctest::Approx(0.0));
  CHECK(time_zero_norm(e1, 1e-10) ==
        doctest::Approx(time_zero_norm(exp_only, 1e-10)));

  // symmetric + sector: equal branch norms
  MomentumProfile symmetric;
  const auto base = profiles::bump(2.0, 0.7);
  auto amp = base.amplitude;
  symmetric.amplitude = [amp](double k) { return amp(k) + amp(-k); };
  symmetric.support = Interval(-2.7, 2.7);
  symmetric.vanishes_at_zero = true;
  symmetric.label = "sym";
  CosmoState sym_state{symmetric, zero_profile(), {1.0}};
  auto [e2, c2] = branch_decompose(sym_state);
  const double ne = time_zero_norm(e2, 1e-10);
  const double nc = time_zero_norm(c2, 1e-10);
  CHECK(ne == doctest::Approx(nc).epsilon(1e-9));

  // mixed state: orthogonal supports make the norms exactly additive
  CosmoState mixed{symmetric, profiles::bump(1.5, 0.4), {1.0}};
  auto [e3, c3] = branch_decompose(mixed);
  const double total = time_zero_norm(mixed, 1e-10);
  CHECK(std::abs(time_zero_norm(e3, 1e-10) + time_zero_norm(c3, 1e-10) -
                 total) <= 1e-10 * std::max(total, 1.0));

  // the parts sum back to the original amplitudes pointwise
  for (double k : {-2.0, -0.3, 0.4, 2.2}) {
    CHECK(std::abs(e3.plus.amplitude(k) + c3.plus.amplitude(k) -
                   mixed.plus.amplitude(k)) < 1e-15);
    CHECK(std::abs(e3.minus.amplitude(k) + c3.minus.amplitude(k) -
                   mixed.minus.amplitude(k)) < 1e-15);
  }
}

TEST_CASE("omega floor: omega_k >= kappa/4") {
  for (double kappa : {0.5, 1.0, 2.0}) {
    CosmoState st{zero_profile(), zero_profile(), {kappa}};
    for (double k : {0.0, 0.1, 1.0, 10.0}) {
      CHECK(st.omega(k) >= kappa / 4.0);
      CHECK(st.omega(-k) == st.omega(k));
    }
    CHECK(st.omega(0.0) == doctest::Approx(kappa / 4.0));
  }
}
