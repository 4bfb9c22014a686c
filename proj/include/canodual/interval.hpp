#pragma once

#include <cmath>

namespace canodual {

/// Closed numeric interval [lo, hi]; degenerate (lo == hi) allowed.
struct Interval {
  double lo = 0.0;
  double hi = 0.0;

  bool contains(double v) const { return v >= lo && v <= hi; }
  bool contains_interior(double v) const { return v > lo && v < hi; }
  double width() const { return hi - lo; }
  double midpoint() const { return 0.5 * (lo + hi); }
  bool empty() const { return !(lo <= hi); }

  /// Smallest interval covering both operands.
  static Interval hull(const Interval& a, const Interval& b) {
    return {std::fmin(a.lo, b.lo), std::fmax(a.hi, b.hi)};
  }
};

}  // namespace canodual
