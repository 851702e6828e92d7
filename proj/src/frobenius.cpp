#include "rabi/frobenius.hpp"

#include "rabi/errors.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rabi {

namespace {

constexpr double kResonanceTol = 1e-10;

std::size_t declared_index(const OdeSpec& ode, double s) {
  const int i = ode.find_point(s);
  if (i < 0) throw std::invalid_argument("not a declared singular point: " + std::to_string(s));
  return static_cast<std::size_t>(i);
}

bool is_integer(double v) { return v == std::round(v); }

// t^e for real t; non-integer exponents need t >= 0.
double real_power(double t, double e) {
  if (t < 0.0 && !is_integer(e)) throw DomainError("non-integer exponent at a point left of the center");
  return std::pow(t, e);
}

}  // namespace

LocalCoefficients local_coefficients(const OdeSpec& ode, double s, std::size_t order) {
  return {rational_taylor(ode.p_num(), ode.p_den(), s, 1, order),
          rational_taylor(ode.q_num(), ode.q_den(), s, 2, order)};
}

std::pair<double, double> indicial_exponents(const OdeSpec& ode, double s) {
  const double center = ode.singular_points()[declared_index(ode, s)];
  const LocalCoefficients lc = local_coefficients(ode, center, 0);
  const double P0 = lc.P[0];
  const double Q0 = lc.Q[0];

  // rho^2 + (P0 - 1) rho + Q0 = 0
  const double b = P0 - 1.0;
  double disc = b * b - 4.0 * Q0;
  if (disc < 0.0) {
    if (disc < -1e-12 * std::max(1.0, b * b)) throw DomainError("complex indicial exponents");
    disc = 0.0;
  }
  const double root = std::sqrt(disc);
  const double qq = -0.5 * (b + std::copysign(root, b));
  double r1, r2;
  if (qq == 0.0) {
    r1 = r2 = 0.0;
  } else {
    r1 = qq;
    r2 = Q0 / qq;
  }
  return {std::max(r1, r2), std::min(r1, r2)};
}

FrobeniusSolution local_series(const OdeSpec& ode, double s, double rho, const SeriesOptions& opts) {
  const std::size_t idx = declared_index(ode, s);
  FrobeniusSolution sol;
  sol.center = ode.singular_points()[idx];
  sol.exponent = rho;
  sol.radius = ode.radius(idx);
  sol.safety = opts.safety;
  if (!std::isfinite(sol.radius)) throw DomainError("local_series: need at least two singular points");

  const LocalCoefficients lc = local_coefficients(ode, sol.center, opts.n_max);
  const auto& P = lc.P;
  const auto& Q = lc.Q;
  const double R = sol.safe_radius();

  auto indicial = [&](double r) { return r * (r - 1.0) + P[0] * r + Q[0]; };

  std::vector<double>& a = sol.coeffs;
  a.reserve(256);
  a.push_back(1.0);
  double abs_sum = 1.0;
  double rpow = 1.0;
  int small_run = 0;

  for (std::size_t n = 1; n <= opts.n_max; ++n) {
    double rhs = 0.0;
    double rhs_mag = 0.0;
    for (std::size_t k = 1; k <= n; ++k) {
      const double t = (P[k] * (rho + static_cast<double>(n - k)) + Q[k]) * a[n - k];
      rhs -= t;
      rhs_mag += std::abs(t);
    }
    const double F = indicial(rho + static_cast<double>(n));
    double an;
    if (std::abs(F) < kResonanceTol) {
      if (std::abs(rhs) > 1e-12 * std::max(rhs_mag, std::numeric_limits<double>::min()) && rhs_mag > 0.0)
        throw ResonantExponents("local_series: resonant exponents at n = " + std::to_string(n));
      an = 0.0;
    } else {
      an = rhs / F;
    }
    a.push_back(an);

    rpow *= R;
    const double term = std::abs(an) * rpow;
    abs_sum += term;
    small_run = (term <= opts.tol * abs_sum) ? small_run + 1 : 0;
    if (small_run >= opts.consecutive) {
      sol.last_term = term;
      return sol;
    }
  }
  throw NoConvergence("local_series: no convergence within n_max = " + std::to_string(opts.n_max) +
                      " terms at s = " + std::to_string(sol.center));
}

namespace {

// Sum of a_n t^n, its first and second derivatives (in t), for t possibly 0.
struct PowerSums {
  double f0 = 0.0, f1 = 0.0, f2 = 0.0;
};

PowerSums power_sums(const std::vector<double>& a, double t) {
  PowerSums s;
  for (std::size_t n = a.size(); n-- > 0;) {
    s.f2 = s.f2 * t + 2.0 * s.f1;
    s.f1 = s.f1 * t + s.f0;
    s.f0 = s.f0 * t + a[n];
  }
  return s;
}

}  // namespace

SeriesValue evaluate(const FrobeniusSolution& sol, double z, int order) {
  if (order < 0 || order > 2) throw std::invalid_argument("evaluate: order must be 0, 1 or 2");
  const double t = z - sol.center;
  if (std::abs(t) > sol.safe_radius() * (1.0 + 1e-14))
    throw DomainError("evaluate: point outside the certified disc");

  const double rho = sol.exponent;
  const PowerSums ps = power_sums(sol.coeffs, t);

  SeriesValue out;
  const double ratio = std::abs(t) / sol.radius;
  const double n = static_cast<double>(sol.coeffs.size());
  const double last = sol.coeffs.empty() ? 0.0 : std::abs(sol.coeffs.back()) * std::pow(std::abs(t), n - 1.0);
  double tail = ratio < 1.0 ? last * ratio / (1.0 - ratio) : std::numeric_limits<double>::infinity();

  if (rho == 0.0) {
    if (order == 0) out.value = ps.f0;
    if (order == 1) {
      out.value = ps.f1;
      tail *= (n + 1.0) / std::max(std::abs(t), 1e-300);
    }
    if (order == 2) {
      out.value = ps.f2;
      tail *= (n + 1.0) * (n + 2.0) / std::max(t * t, 1e-300);
    }
    out.tail_bound = std::abs(t) == 0.0 ? 0.0 : tail * std::abs(real_power(std::abs(t), rho));
    return out;
  }

  // f = t^rho g  with g = sum a_n t^n.
  if (t == 0.0) {
    if (rho < 0.0) throw DomainError("evaluate: negative exponent at the center");
    double v = 0.0;
    const double k = static_cast<double>(order);
    if (rho == k) {
      v = std::tgamma(k + 1.0) * sol.coeffs[0];
    } else if (rho < k && !is_integer(rho)) {
      throw DomainError("evaluate: derivative of t^rho diverges at the center");
    } else if (rho < k && is_integer(rho)) {
      // lower powers present: d^k t^(rho+n) at 0 picks n = k - rho
      const std::size_t nn = static_cast<std::size_t>(k - rho);
      v = nn < sol.coeffs.size() ? std::tgamma(k + 1.0) * sol.coeffs[nn] : 0.0;
    }
    out.value = v;
    return out;
  }
  const double tr = real_power(t, rho);
  const double tr1 = real_power(t, rho - 1.0);
  switch (order) {
    case 0:
      out.value = tr * ps.f0;
      break;
    case 1:
      out.value = rho * tr1 * ps.f0 + tr * ps.f1;
      break;
    default: {
      const double tr2 = real_power(t, rho - 2.0);
      out.value = rho * (rho - 1.0) * tr2 * ps.f0 + 2.0 * rho * tr1 * ps.f1 + tr * ps.f2;
    }
  }
  out.tail_bound = tail * std::abs(tr) * (order == 0 ? 1.0 : std::pow((n + 2.0) / std::abs(t), order));
  return out;
}

double recurrence_residual(const OdeSpec& ode, const FrobeniusSolution& sol) {
  const auto& a = sol.coeffs;
  if (a.size() < 3) return 0.0;
  const std::size_t N = a.size() - 1;
  const LocalCoefficients lc = local_coefficients(ode, sol.center, N);
  const double rho = sol.exponent;
  double worst = 0.0;
  for (std::size_t n = 0; n + 2 <= N; ++n) {
    const double r = rho + static_cast<double>(n);
    double res = a[n] * r * (r - 1.0);
    double mag = std::abs(res);
    for (std::size_t k = 0; k <= n; ++k) {
      const double t = (lc.P[k] * (rho + static_cast<double>(n - k)) + lc.Q[k]) * a[n - k];
      res += t;
      mag += std::abs(t);
    }
    if (mag > 0.0) worst = std::max(worst, std::abs(res) / mag);
  }
  return worst;
}

std::vector<OverlapRegion> overlap_regions(std::span<const double> centers, std::span<const double> radii) {
  if (centers.size() != radii.size()) throw std::invalid_argument("overlap_regions: size mismatch");
  std::vector<OverlapRegion> out;
  for (std::size_t i = 0; i + 1 < centers.size(); ++i) {
    OverlapRegion u;
    u.index = i;
    u.empty = !(std::abs(centers[i] - centers[i + 1]) < radii[i] + radii[i + 1]);
    if (!u.empty) {
      u.lo = std::max(centers[i] - radii[i], centers[i + 1] - radii[i + 1]);
      u.hi = std::min(centers[i] + radii[i], centers[i + 1] + radii[i + 1]);
    }
    out.push_back(u);
  }
  return out;
}

std::vector<OverlapRegion> overlap_regions(const OdeSpec& ode) {
  const auto pts = ode.singular_points();
  std::vector<double> radii(pts.size());
  for (std::size_t i = 0; i < pts.size(); ++i) radii[i] = ode.radius(i);
  return overlap_regions(pts, radii);
}

WronskianValue pairwise_wronskian(const FrobeniusSolution& a, const FrobeniusSolution& b, double z_star) {
  const double fa = evaluate(a, z_star, 0).value;
  const double da = evaluate(a, z_star, 1).value;
  const double fb = evaluate(b, z_star, 0).value;
  const double db = evaluate(b, z_star, 1).value;
  return {fa * db - da * fb, std::abs(fa * db) + std::abs(da * fb)};
}

}  // namespace rabi
