#include "timeobs/quadrature.hpp"

#include <algorithm>
#include <cmath>
#include <queue>
#include <vector>

namespace timeobs {

namespace {

// QUADPACK (G7,K15) pair. xgk ordered by descending magnitude; gauss nodes
// are the odd-index entries.
constexpr double kXgk[8] = {
    0.991455371120812639206854697526329,
    0.949107912342758524526189684047851,
    0.864864423359769072789712788640926,
    0.741531185599394439863864773280788,
    0.586087235467691130294144838258730,
    0.405845151377397166906606412076961,
    0.207784955007898467600689403773245,
    0.000000000000000000000000000000000};
constexpr double kWgk[8] = {
    0.022935322010529224963732008058970,
    0.063092092629978553290700663189204,
    0.104790010322250183839876322541518,
    0.140653259715525918745189590510238,
    0.169004726639267902826583426598550,
    0.190350578064785409913256402421014,
    0.204432940075298892414161999234649,
    0.209482141084727828012999174891714};
constexpr double kWg[4] = {
    0.129484966168869693270611432679082,
    0.279705391489276667901467771423780,
    0.381830050505118944950369775488975,
    0.417959183673469387755102040816327};

struct Rule15 {
  double x[15];   // nodes on [-1,1], ascending
  double wk[15];  // Kronrod weights
  double wg[15];  // embedded Gauss weights (0 off the Gauss nodes)
  Rule15() {
    for (int j = 0; j < 15; ++j) {
      int k = 7 - std::abs(j - 7);
      double sign = j < 7 ? -1.0 : 1.0;
      x[j] = sign * kXgk[k];
      wk[j] = kWgk[k];
      wg[j] = (k % 2 == 1 || k == 7) ? ((k == 7) ? kWg[3] : kWg[(k - 1) / 2])
                                     : 0.0;
    }
  }
};
const Rule15 kRule;

using Fn1 = std::function<cplx(double)>;
using Fn2 = std::function<cplx(double, double)>;

void check_finite(const cplx& v, double where) {
  if (!std::isfinite(v.real()) || !std::isfinite(v.imag()))
    throw NonFiniteSample("integrand returned a non-finite value near x = " +
                          std::to_string(where));
}

struct Seg {
  double a, b;
  cplx value;
  double err;
  long id;  // insertion order, for a deterministic heap
};
struct SegWorse {
  bool operator()(const Seg& s, const Seg& t) const {
    if (s.err != t.err) return s.err < t.err;
    return s.id > t.id;
  }
};

Seg eval_segment(const Fn1& f, double a, double b, long& evals, long id) {
  const double c = 0.5 * (a + b), h = 0.5 * (b - a);
  cplx sk{0, 0}, sg{0, 0};
  double resabs = 0.0;
  for (int j = 0; j < 15; ++j) {
    const double xj = c + h * kRule.x[j];
    const cplx v = f(xj);
    check_finite(v, xj);
    sk += kRule.wk[j] * v;
    sg += kRule.wg[j] * v;
    resabs += kRule.wk[j] * std::abs(v);
  }
  evals += 15;
  double err = std::abs((sk - sg) * h);
  // roundoff floor: never claim less error than summation noise
  err = std::max(err, 50.0 * std::numeric_limits<double>::epsilon() * resabs * h);
  return Seg{a, b, sk * h, err, id};
}

QuadResult adapt_1d(const Fn1& f, double a, double b, double tol,
                    const QuadControl& ctrl) {
  QuadResult out;
  if (a == b) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Seg, std::vector<Seg>, SegWorse> heap;
  long evals = 0, next_id = 0;
  double total_err = 0.0;
  cplx total{0, 0};

  const int n0 = std::clamp(ctrl.initial_splits, 1, 4096);
  for (int i = 0; i < n0; ++i) {
    double sa = a + (b - a) * i / n0;
    double sb = a + (b - a) * (i + 1) / n0;
    Seg s = eval_segment(f, sa, sb, evals, next_id++);
    total += s.value;
    total_err += s.err;
    heap.push(s);
  }

  while (total_err > tol && evals + 30 <= ctrl.budget) {
    Seg worst = heap.top();
    heap.pop();
    const double mid = 0.5 * (worst.a + worst.b);
    if (mid <= worst.a || mid >= worst.b) {
      // interval at floating-point resolution; cannot refine further
      heap.push(Seg{worst.a, worst.b, worst.value, 0.0, worst.id});
      total_err -= worst.err;
      continue;
    }
    Seg left = eval_segment(f, worst.a, mid, evals, next_id++);
    Seg right = eval_segment(f, mid, worst.b, evals, next_id++);
    total += left.value + right.value - worst.value;
    total_err += left.err + right.err - worst.err;
    heap.push(left);
    heap.push(right);
  }

  out.value = total;
  out.abs_error_estimate = total_err;
  out.converged = total_err <= tol;
  out.evaluations = evals;
  return out;
}

// Map an unbounded interval to a bounded parameter domain.
// Full line:   x = u/(1-u^2),       u in (-1,1)
// [a, inf):    x = a + u/(1-u^2),   u in [0,1)
// (-inf, b]:   x = b - u/(1-u^2),   u in [0,1)
struct Compactified {
  Fn1 g;
  double ua, ub;
};

Compactified compactify(const Fn1& f, const Interval& dom) {
  auto stretch = [](double u) { return u / (1.0 - u * u); };
  auto jac = [](double u) {
    double d = 1.0 - u * u;
    return (1.0 + u * u) / (d * d);
  };
  if (!std::isfinite(dom.lo) && !std::isfinite(dom.hi)) {
    return {[f, stretch, jac](double u) { return f(stretch(u)) * jac(u); },
            -1.0, 1.0};
  }
  if (!std::isfinite(dom.hi)) {
    const double a = dom.lo;
    return {[f, a, stretch, jac](double u) { return f(a + stretch(u)) * jac(u); },
            0.0, 1.0};
  }
  const double b = dom.hi;
  return {[f, b, stretch, jac](double u) { return f(b - stretch(u)) * jac(u); },
          0.0, 1.0};
}

// --- 2d adaptive rectangles ---------------------------------------------

struct Cell {
  double ax, bx, ay, by;
  cplx value;
  double err, err_x, err_y;
  long id;
};
struct CellWorse {
  bool operator()(const Cell& s, const Cell& t) const {
    if (s.err != t.err) return s.err < t.err;
    return s.id > t.id;
  }
};

Cell eval_cell(const Fn2& f, double ax, double bx, double ay, double by,
               long& evals, long id) {
  const double cx = 0.5 * (ax + bx), hx = 0.5 * (bx - ax);
  const double cy = 0.5 * (ay + by), hy = 0.5 * (by - ay);
  cplx fv[15][15];
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) {
      const double xi = cx + hx * kRule.x[i];
      const double yj = cy + hy * kRule.x[j];
      fv[i][j] = f(xi, yj);
      check_finite(fv[i][j], xi);
    }
  evals += 225;
  cplx kk{0, 0}, gk{0, 0}, kg{0, 0};
  double resabs = 0.0;
  for (int i = 0; i < 15; ++i)
    for (int j = 0; j < 15; ++j) {
      const cplx v = fv[i][j];
      kk += kRule.wk[i] * kRule.wk[j] * v;
      gk += kRule.wg[i] * kRule.wk[j] * v;
      kg += kRule.wk[i] * kRule.wg[j] * v;
      resabs += kRule.wk[i] * kRule.wk[j] * std::abs(v);
    }
  const double scale = hx * hy;
  double ex = std::abs((kk - gk) * scale);
  double ey = std::abs((kk - kg) * scale);
  double err = std::max(
      ex + ey,
      50.0 * std::numeric_limits<double>::epsilon() * resabs * scale);
  return Cell{ax, bx, ay, by, kk * scale, err, ex, ey, id};
}

QuadResult adapt_2d(const Fn2& f, double ax, double bx, double ay, double by,
                    double tol, const QuadControl& ctrl) {
  QuadResult out;
  if (ax == bx || ay == by) {
    out.converged = true;
    return out;
  }
  std::priority_queue<Cell, std::vector<Cell>, CellWorse> heap;
  long evals = 0, next_id = 0;
  double total_err = 0.0;
  cplx total{0, 0};

  const int nx = std::clamp(ctrl.initial_splits, 1, 512);
  const int ny = std::clamp(ctrl.initial_splits_2, 1, 512);
  for (int i = 0; i < nx; ++i)
    for (int j = 0; j < ny; ++j) {
      Cell c = eval_cell(f, ax + (bx - ax) * i / nx, ax + (bx - ax) * (i + 1) / nx,
                         ay + (by - ay) * j / ny, ay + (by - ay) * (j + 1) / ny,
                         evals, next_id++);
      total += c.value;
      total_err += c.err;
      heap.push(c);
    }

  while (total_err > tol && evals + 460 <= ctrl.budget) {
    Cell worst = heap.top();
    heap.pop();
    total -= worst.value;
    total_err -= worst.err;
    const bool split_x = worst.err_x >= worst.err_y;
    double m = split_x ? 0.5 * (worst.ax + worst.bx) : 0.5 * (worst.ay + worst.by);
    Cell c1 = split_x
                  ? eval_cell(f, worst.ax, m, worst.ay, worst.by, evals, next_id++)
                  : eval_cell(f, worst.ax, worst.bx, worst.ay, m, evals, next_id++);
    Cell c2 = split_x
                  ? eval_cell(f, m, worst.bx, worst.ay, worst.by, evals, next_id++)
                  : eval_cell(f, worst.ax, worst.bx, m, worst.by, evals, next_id++);
    total += c1.value + c2.value;
    total_err += c1.err + c2.err;
    heap.push(c1);
    heap.push(c2);
  }

  out.value = total;
  out.abs_error_estimate = total_err;
  out.converged = total_err <= tol;
  out.evaluations = evals;
  return out;
}

}  // namespace

QuadResult integrate_1d(const Fn1& f, const Interval& domain, double tol,
                        const QuadControl& ctrl) {
  if (tol <= 0.0) throw DomainError("integrate_1d: tol must be positive");
  if (domain.is_empty()) return QuadResult{cplx{0, 0}, 0.0, true, 0};
  if (domain.bounded()) return adapt_1d(f, domain.lo, domain.hi, tol, ctrl);
  Compactified c = compactify(f, domain);
  return adapt_1d(c.g, c.ua, c.ub, tol, ctrl);
}

QuadResult integrate_2d(const Fn2& f, const Interval& dom1,
                        const Interval& dom2, double tol,
                        const QuadControl& ctrl) {
  if (tol <= 0.0) throw DomainError("integrate_2d: tol must be positive");
  if (dom1.is_empty() || dom2.is_empty())
    return QuadResult{cplx{0, 0}, 0.0, true, 0};
  if (dom1.bounded() && dom2.bounded())
    return adapt_2d(f, dom1.lo, dom1.hi, dom2.lo, dom2.hi, tol, ctrl);
  // compactify each unbounded axis
  Fn2 g = f;
  Interval d1 = dom1, d2 = dom2;
  if (!dom1.bounded()) {
    Compactified cx = compactify([](double) { return cplx{0, 0}; }, dom1);
    // rebuild with the coordinate map only (ignore the probe function)
    auto stretch = [](double u) { return u / (1.0 - u * u); };
    auto jac = [](double u) {
      double d = 1.0 - u * u;
      return (1.0 + u * u) / (d * d);
    };
    const bool lo_fin = std::isfinite(dom1.lo), hi_fin = std::isfinite(dom1.hi);
    const double a = dom1.lo, b = dom1.hi;
    Fn2 prev = g;
    g = [prev, stretch, jac, lo_fin, hi_fin, a, b](double u, double y) {
      double x = (!lo_fin && !hi_fin) ? stretch(u)
                 : (!hi_fin)          ? a + stretch(u)
                                      : b - stretch(u);
      return prev(x, y) * jac(u);
    };
    d1 = Interval(cx.ua, cx.ub);
  }
  if (!dom2.bounded()) {
    auto stretch = [](double u) { return u / (1.0 - u * u); };
    auto jac = [](double u) {
      double d = 1.0 - u * u;
      return (1.0 + u * u) / (d * d);
    };
    const bool lo_fin = std::isfinite(dom2.lo), hi_fin = std::isfinite(dom2.hi);
    const double a = dom2.lo, b = dom2.hi;
    Fn2 prev = g;
    g = [prev, stretch, jac, lo_fin, hi_fin, a, b](double x, double u) {
      double y = (!lo_fin && !hi_fin) ? stretch(u)
                 : (!hi_fin)          ? a + stretch(u)
                                      : b - stretch(u);
      return prev(x, y) * jac(u);
    };
    d2 = !std::isfinite(dom2.lo) && !std::isfinite(dom2.hi) ? Interval(-1, 1)
                                                            : Interval(0, 1);
  }
  return adapt_2d(g, d1.lo, d1.hi, d2.lo, d2.hi, tol, ctrl);
}

QuadResult integrate_2d_nested(const Fn2& f, const Interval& dom1,
                               const Interval& dom2, double tol,
                               const QuadControl& ctrl) {
  if (dom1.is_empty() || dom2.is_empty())
    return QuadResult{cplx{0, 0}, 0.0, true, 0};
  const double inner_tol =
      tol * 0.25 / std::max(1.0, dom1.bounded() ? dom1.length() : 4.0);
  long inner_evals = 0;
  bool inner_ok = true;
  QuadControl ictrl = ctrl;
  ictrl.initial_splits = ctrl.initial_splits_2;
  Fn1 outer = [&](double x) {
    QuadResult r = integrate_1d([&f, x](double y) { return f(x, y); }, dom2,
                                inner_tol, ictrl);
    inner_evals += r.evaluations;
    inner_ok = inner_ok && r.converged;
    return r.value;
  };
  QuadControl octrl = ctrl;
  QuadResult r = integrate_1d(outer, dom1, tol * 0.5, octrl);
  r.evaluations += inner_evals;
  r.converged = r.converged && inner_ok;
  r.abs_error_estimate +=
      inner_tol * std::max(1.0, dom1.bounded() ? dom1.length() : 4.0);
  return r;
}

cplx oscillatory_time_integral(double delta, const Interval& I) {
  if (!I.bounded())
    throw UnboundedInterval(
        "oscillatory_time_integral requires a bounded interval");
  const double len = I.length();
  if (delta == 0.0) return cplx{len, 0.0};
  // (e^{i d hi} - e^{i d lo})/(i d) = e^{i d (lo+hi)/2} * 2 sin(d len/2)/d
  const double mid = I.midpoint();
  const cplx phase = std::polar(1.0, delta * mid);
  return phase * (2.0 * std::sin(0.5 * delta * len) / delta);
}

int oscillation_splits(double rate, double range) {
  const double cycles = std::abs(rate) * std::abs(range) / (2.0 * M_PI);
  if (!std::isfinite(cycles)) return 2048;
  return std::clamp(static_cast<int>(std::ceil(cycles)), 1, 2048);
}

}  // namespace timeobs
