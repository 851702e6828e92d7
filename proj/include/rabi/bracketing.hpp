#pragma once

#include <cmath>
#include <span>
#include <vector>

namespace rabi {

struct Interval {
  double lo = 0.0;
  double hi = 0.0;
};

/// Pieces of [lo, hi] left after removing the open zones (c - half_width, c + half_width).
/// Zone edges are nudged outward by a relative 1e-12 so endpoints sit strictly outside.
std::vector<Interval> allowed_segments(double lo, double hi, std::span<const double> zone_centers,
                                       double half_width);

/// Grid lo, lo + step, ... strictly below hi, then hi itself.
std::vector<double> segment_grid(const Interval& seg, double step);

/// Zone centers {n + shift : n integer, n >= n_min} that can touch [lo - w, hi + w].
std::vector<double> integer_zone_centers(double lo, double hi, double shift, double w,
                                         double n_min = -1e300);

/// Bisection on [a, b] with f(a) * f(b) < 0 until b - a < x_tol; returns the midpoint.
template <class F>
double bisect(F&& f, double a, double b, double fa, double x_tol) {
  for (int it = 0; it < 200 && (b - a) >= x_tol; ++it) {
    const double m = 0.5 * (a + b);
    if (m <= a || m >= b) break;
    const double fm = f(m);
    if (fm == 0.0) return m;
    if (std::signbit(fm) == std::signbit(fa)) {
      a = m;
      fa = fm;
    } else {
      b = m;
    }
  }
  return 0.5 * (a + b);
}

}  // namespace rabi
