#pragma once

#include <algorithm>
#include <cmath>
#include <limits>
#include <string>

#include "timeobs/errors.hpp"

namespace timeobs {

// Closed real interval [lo, hi]; lo <= hi, +-inf allowed at either end.
// A zero-length interval is treated as empty (it has measure zero and every
// integral over it vanishes).
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  Interval() = default;
  Interval(double lo_, double hi_) : lo(lo_), hi(hi_) {
    if (std::isnan(lo) || std::isnan(hi) || lo > hi)
      throw DomainError("invalid interval [" + std::to_string(lo_) + ", " +
                        std::to_string(hi_) + "]");
  }

  static Interval all() {
    return Interval(-std::numeric_limits<double>::infinity(),
                    std::numeric_limits<double>::infinity());
  }
  static Interval at_least(double a) {
    return Interval(a, std::numeric_limits<double>::infinity());
  }
  static Interval at_most(double b) {
    return Interval(-std::numeric_limits<double>::infinity(), b);
  }
  static Interval empty() { return Interval(0.0, 0.0); }

  double length() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool bounded() const { return std::isfinite(lo) && std::isfinite(hi); }
  bool is_empty() const { return lo == hi; }
  bool contains(double x) const { return lo <= x && x <= hi; }
  bool contains(const Interval& other) const {
    return lo <= other.lo && other.hi <= hi;
  }

  Interval intersect(const Interval& other) const {
    double a = std::max(lo, other.lo);
    double b = std::min(hi, other.hi);
    if (a > b) return empty();
    return Interval(a, b);
  }
  bool disjoint(const Interval& other) const {
    return intersect(*this, other).is_empty();
  }
  static Interval intersect(const Interval& a, const Interval& b) {
    return a.intersect(b);
  }

  Interval shifted(double s) const { return Interval(lo + s, hi + s); }
  Interval reflected() const { return Interval(-hi, -lo); }

  bool operator==(const Interval& other) const {
    return lo == other.lo && hi == other.hi;
  }
};

}  // namespace timeobs
