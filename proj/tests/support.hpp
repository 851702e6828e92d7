#pragma once

// Test-only helpers that do not share code paths with the library.

#include <cmath>
#include <functional>
#include <random>

namespace rabi::testing {

/// Adaptive Simpson quadrature.
inline double simpson(const std::function<double(double)>& f, double a, double b, double tol = 1e-13, int depth = 40) {
  auto rule = [&](double lo, double hi, double flo, double fm, double fhi) {
    return (hi - lo) / 6.0 * (flo + 4.0 * fm + fhi);
  };
  std::function<double(double, double, double, double, double, double, double, int)> rec =
      [&](double lo, double hi, double flo, double fm, double fhi, double whole, double eps, int d) {
        const double m = 0.5 * (lo + hi);
        const double lm = 0.5 * (lo + m), rm = 0.5 * (m + hi);
        const double flm = f(lm), frm = f(rm);
        const double left = rule(lo, m, flo, flm, fm), right = rule(m, hi, fm, frm, fhi);
        if (d <= 0 || std::abs(left + right - whole) <= 15.0 * eps) return left + right + (left + right - whole) / 15.0;
        return rec(lo, m, flo, flm, fm, left, 0.5 * eps, d - 1) + rec(m, hi, fm, frm, fhi, right, 0.5 * eps, d - 1);
      };
  const double fa = f(a), fb = f(b), fm = f(0.5 * (a + b));
  return rec(a, b, fa, fm, fb, rule(a, b, fa, fm, fb), tol, depth);
}

/// lim_{h->0+} g(h) by Richardson extrapolation on h, h/2, h/4, h/8 (g smooth in h).
inline double richardson_limit(const std::function<double(double)>& g, double h = 1e-2) {
  double t[4][4];
  for (int i = 0; i < 4; ++i) t[i][0] = g(h / std::pow(2.0, i));
  for (int j = 1; j < 4; ++j)
    for (int i = j; i < 4; ++i) t[i][j] = t[i][j - 1] + (t[i][j - 1] - t[i - 1][j - 1]) / (std::pow(2.0, j) - 1.0);
  return t[3][3];
}

inline double uniform(std::mt19937& rng, double lo, double hi) {
  return std::uniform_real_distribution<double>(lo, hi)(rng);
}

/// Distance of v to the nearest integer.
inline double int_dist(double v) { return std::abs(v - std::round(v)); }

inline double rel_diff(double a, double b) {
  const double m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

}  // namespace rabi::testing
