// Quadrature engine: closed-form values, an independent trapezoid oracle
// for the oscillatory case, and the linearity/additivity properties.

#include <doctest.h>

#include <cmath>
#include <complex>
#include <random>

#include "timeobs/quadrature.hpp"

using namespace timeobs;

namespace {

// high-resolution trapezoid rule, independent of the adaptive path
cplx trapezoid(const std::function<cplx(double)>& f, double a, double b,
               int n) {
  cplx sum = 0.5 * (f(a) + f(b));
  const double h = (b - a) / n;
  for (int i = 1; i < n; ++i) sum += f(a + i * h);
  return sum * h;
}

}  // namespace

TEST_CASE("integrate_1d: constant on [0,1]") {
  auto r = integrate_1d([](double) { return cplx{1.0, 0.0}; },
                        Interval(0.0, 1.0), 1e-10);
  CHECK(r.converged);
  CHECK(r.abs_error_estimate < 1e-10);
  CHECK(std::abs(r.value - cplx{1.0, 0.0}) < 1e-10);
}

TEST_CASE("integrate_1d: Gaussian over the real line") {
  auto r = integrate_1d(
      [](double x) { return cplx{std::exp(-x * x), 0.0}; }, Interval::all(),
      1e-8);
  CHECK(r.converged);
  CHECK(std::abs(r.value.real() - std::sqrt(M_PI)) < 1e-8);
  CHECK(std::abs(r.value.imag()) < 1e-12);
}

TEST_CASE("integrate_1d: oscillatory Gaussian vs trapezoid oracle") {
  // resolvable modulation: closed form sqrt(pi) e^{-25/4}
  auto f5 = [](double x) {
    return std::polar(1.0, 5.0 * x) * std::exp(-x * x);
  };
  auto r5 = integrate_1d(f5, Interval::all(), 1e-8);
  CHECK(r5.converged);
  const cplx oracle5 = trapezoid(f5, -10.0, 10.0, 200000);
  CHECK(std::abs(r5.value - oracle5) < 1e-8);
  CHECK(std::abs(r5.value.real() - std::sqrt(M_PI) * std::exp(-25.0 / 4.0)) <
        1e-8);

  // fast modulation: the true value sqrt(pi) e^{-625} is below roundoff of
  // an O(1) integrand; adaptive and oracle must agree that it vanishes
  auto f50 = [](double x) {
    return std::polar(1.0, 50.0 * x) * std::exp(-x * x);
  };
  auto r50 = integrate_1d(f50, Interval::all(), 1e-8);
  const cplx oracle50 = trapezoid(f50, -10.0, 10.0, 200000);
  CHECK(std::abs(r50.value - oracle50) < 1e-8);
  CHECK(std::abs(r50.value - std::sqrt(M_PI) * std::exp(-625.0)) < 1e-8);
}

TEST_CASE("integrate_1d: half-infinite domains") {
  auto r = integrate_1d([](double x) { return cplx{std::exp(-x), 0.0}; },
                        Interval::at_least(0.0), 1e-10);
  CHECK(r.converged);
  CHECK(std::abs(r.value.real() - 1.0) < 1e-9);
  auto l = integrate_1d([](double x) { return cplx{std::exp(x), 0.0}; },
                        Interval::at_most(0.0), 1e-10);
  CHECK(std::abs(l.value.real() - 1.0) < 1e-9);
}

TEST_CASE("integrate_1d: budget exhaustion reports converged=false") {
  QuadControl ctrl;
  ctrl.budget = 120;
  auto r = integrate_1d(
      [](double x) { return cplx{std::sin(50.0 * x) * std::sin(51.0 * x), 0.0}; },
      Interval(0.0, 20.0), 1e-14, ctrl);
  CHECK_FALSE(r.converged);
  CHECK(r.evaluations <= 120 + 30);
}

TEST_CASE("integrate_1d: non-finite samples throw") {
  CHECK_THROWS_AS(integrate_1d(
                      [](double x) -> cplx {
                        return x > 0.9 ? cplx{std::nan(""), 0.0} : cplx{1.0, 0.0};
                      },
                      Interval(0.0, 1.0), 1e-8),
                  NonFiniteSample);
}

TEST_CASE("integrate_2d: constant and separable Gaussian") {
  auto one = integrate_2d([](double, double) { return cplx{1.0, 0.0}; },
                          Interval(0.0, 1.0), Interval(0.0, 1.0), 1e-10);
  CHECK(one.converged);
  CHECK(std::abs(one.value - cplx{1.0, 0.0}) < 1e-10);

  auto gauss = integrate_2d(
      [](double p, double q) { return cplx{std::exp(-p * p - q * q), 0.0}; },
      Interval::all(), Interval::all(), 1e-7);
  CHECK(gauss.converged);
  CHECK(std::abs(gauss.value.real() - M_PI) < 1e-7);

  // mixed bounded/half-infinite axes
  auto mixed = integrate_2d(
      [](double x, double y) { return cplx{x * std::exp(-y), 0.0}; },
      Interval(0.0, 1.0), Interval::at_least(0.0), 1e-8);
  CHECK(mixed.converged);
  CHECK(std::abs(mixed.value.real() - 0.5) < 1e-7);
  auto mixed2 = integrate_2d(
      [](double x, double y) { return cplx{std::exp(x) * std::exp(-y * y), 0.0}; },
      Interval::at_most(0.0), Interval(0.0, 2.0), 1e-8);
  CHECK(mixed2.converged);
  const double erf2 = 0.5 * std::sqrt(M_PI) * std::erf(2.0);
  CHECK(std::abs(mixed2.value.real() - erf2) < 1e-7);
}

TEST_CASE("integrate_2d vs nested 1d on an oscillatory Gaussian") {
  auto f = [](double p, double q) {
    return std::polar(1.0, p * p - q * q) * std::exp(-p * p - q * q);
  };
  const Interval box(-6.0, 6.0);  // e^{-36} tails are below everything else
  auto direct = integrate_2d(f, box, box, 1e-8);
  auto nested = integrate_2d_nested(f, box, box, 1e-8);
  CHECK(direct.converged);
  CHECK(nested.converged);
  CHECK(std::abs(std::abs(direct.value) - std::abs(nested.value)) < 1e-7);
}

TEST_CASE("oscillatory_time_integral: closed-form cases") {
  CHECK(std::abs(oscillatory_time_integral(0.0, Interval(0.0, 3.0)) -
                 cplx{3.0, 0.0}) < 1e-15);
  // full period: (e^{2 pi i} - 1)/(i pi) = 0
  CHECK(std::abs(oscillatory_time_integral(M_PI, Interval(0.0, 2.0))) < 1e-15);
  // delta=1 on [0,1]: (e^{i} - 1)/i, cross-checked by direct quadrature
  const cplx expected = (std::polar(1.0, 1.0) - cplx{1.0, 0.0}) / cplx{0.0, 1.0};
  const cplx got = oscillatory_time_integral(1.0, Interval(0.0, 1.0));
  CHECK(std::abs(got - expected) < 1e-15);
  auto quad = integrate_1d([](double t) { return std::polar(1.0, t); },
                           Interval(0.0, 1.0), 1e-12);
  CHECK(std::abs(got - quad.value) < 1e-12);
  CHECK(std::abs(got.real() - 0.8415) < 1e-4);
  CHECK(std::abs(got.imag() - 0.4597) < 1e-4);

  CHECK_THROWS_AS(oscillatory_time_integral(1.0, Interval::all()),
                  UnboundedInterval);
}

TEST_CASE("oscillatory_time_integral matches quadrature up to |delta|=1e3") {
  std::mt19937 rng(20240701);
  std::uniform_real_distribution<double> mag(0.0, 3.0);
  std::uniform_real_distribution<double> edge(-4.0, 4.0);
  for (double delta : {0.0, 1.0, -7.5, 133.0, -512.25, 1000.0}) {
    const double a = edge(rng);
    const Interval I(a, a + mag(rng));
    QuadControl ctrl;
    ctrl.initial_splits = oscillation_splits(delta, I.length());
    auto q = integrate_1d(
        [delta](double t) { return std::polar(1.0, delta * t); }, I, 1e-12,
        ctrl);
    CHECK(q.converged);
    CHECK(std::abs(oscillatory_time_integral(delta, I) - q.value) < 1e-10);
  }
}

TEST_CASE("linearity on random smooth pairs") {
  std::mt19937 rng(987654);
  std::uniform_real_distribution<double> coef(-2.0, 2.0);
  std::uniform_real_distribution<double> center(-1.0, 1.0);
  const double tol = 1e-9;
  for (int trial = 0; trial < 8; ++trial) {
    const double a = coef(rng), b = coef(rng);
    const double c1 = center(rng), c2 = center(rng);
    auto f = [c1](double x) {
      return cplx{std::exp(-(x - c1) * (x - c1)), std::sin(x)};
    };
    const auto g = [c2](double x) {
      return cplx{std::cos(2.0 * x), std::exp(-(x - c2) * (x - c2))};
    };
    const Interval dom(-3.0, 3.0);
    auto combined = integrate_1d(
        [&](double x) { return a * f(x) + b * g(x); }, dom, tol);
    auto fa = integrate_1d(f, dom, tol);
    auto gb = integrate_1d(g, dom, tol);
    CHECK(std::abs(combined.value - (a * fa.value + b * gb.value)) <
          10.0 * tol * (1.0 + std::abs(a) + std::abs(b)));
  }
}

TEST_CASE("interval additivity of the integral") {
  auto f = [](double x) {
    return cplx{std::sin(3.0 * x) * std::exp(-0.1 * x * x), std::cos(x)};
  };
  const double tol = 1e-10;
  auto whole = integrate_1d(f, Interval(-2.0, 5.0), tol);
  auto left = integrate_1d(f, Interval(-2.0, 1.3), tol);
  auto right = integrate_1d(f, Interval(1.3, 5.0), tol);
  CHECK(std::abs(whole.value - (left.value + right.value)) < 10.0 * tol);
}

TEST_CASE("interval type: intersection and disjointness") {
  const Interval a(0.0, 2.0), b(1.0, 3.0), c(5.0, 6.0);
  CHECK(a.intersect(b) == Interval(1.0, 2.0));
  CHECK(a.disjoint(c));
  CHECK_FALSE(a.disjoint(b));
  CHECK(a.intersect(c).is_empty());
  CHECK(Interval(0.0, 2.0).disjoint(Interval(2.0, 4.0)));  // zero overlap
  CHECK(Interval::all().length() ==
        std::numeric_limits<double>::infinity());
  CHECK_THROWS_AS(Interval(2.0, 1.0), DomainError);
}

TEST_CASE("QuadResult invariant: converged implies error within tolerance") {
  for (double tol : {1e-6, 1e-8, 1e-10}) {
    auto r = integrate_1d(
        [](double x) { return cplx{std::cos(7.0 * x), 0.0}; },
        Interval(0.0, 2.0), tol);
    if (r.converged) CHECK(r.abs_error_estimate <= tol);
  }
}
