#include "rabi/heunc.hpp"

#include "rabi/errors.hpp"

#include <cmath>
#include <string>

namespace rabi {

namespace {

constexpr double kResonanceTol = 1e-10;

// Advances the recurrence: given c_{n-1}, c_n returns c_{n+1}.
struct HeunRecurrence {
  explicit HeunRecurrence(const HeunLocalParams& a)
      : alpha(a.alpha), beta(a.beta), s(a.beta + a.gamma + 2.0 - a.alpha), mt(a.mu_tilde()),
        mn(a.mu_tilde() + a.nu_tilde()) {}

  double next(std::size_t n, double c_prev, double c_n) const {
    const double dn = static_cast<double>(n);
    const double den = dn + beta + 1.0;
    if (std::abs(den) < kResonanceTol)
      throw ResonantExponents("HeunC: beta + 1 + n vanishes at n = " + std::to_string(n));
    const double num = (dn * (dn - 1.0) + dn * s - mt) * c_n + (alpha * (dn - 1.0) + mn) * c_prev;
    return num / ((dn + 1.0) * den);
  }

  double alpha, beta, s, mt, mn;
};

}  // namespace

HeunSeries heunc_coefficients(const HeunLocalParams& a, std::size_t n) {
  HeunSeries out;
  out.params = a;
  out.coeffs.reserve(n + 1);
  out.coeffs.push_back(1.0);
  const HeunRecurrence rec(a);
  double prev = 0.0, cur = 1.0;
  for (std::size_t k = 0; k < n; ++k) {
    const double nxt = rec.next(k, prev, cur);
    out.coeffs.push_back(nxt);
    prev = cur;
    cur = nxt;
  }
  out.last_term = std::abs(cur);
  return out;
}

HeunValue heunc_eval(const HeunLocalParams& a, double y, double tol, std::size_t n_max) {
  if (!(y >= 0.0 && y <= kHeunMaxArgument))
    throw DomainError("heunc_eval: argument " + std::to_string(y) + " outside [0, 0.75]");

  const HeunRecurrence rec(a);
  HeunValue out;
  double abs0 = 0.0, abs1 = 0.0, abs2 = 0.0;
  double prev = 0.0, cur = 1.0;
  double ypow = 1.0;   // y^n
  double ypow1 = 0.0;  // y^(n-1)
  double ypow2 = 0.0;  // y^(n-2)
  int small_run = 0;

  for (std::size_t n = 0; n <= n_max; ++n) {
    const double dn = static_cast<double>(n);
    const double t0 = cur * ypow;
    const double t1 = dn * cur * ypow1;
    const double t2 = dn * (dn - 1.0) * cur * ypow2;
    out.value += t0;
    out.derivative += t1;
    out.second += t2;
    abs0 += std::abs(t0);
    abs1 += std::abs(t1);
    abs2 += std::abs(t2);

    const bool negligible = std::abs(t0) <= tol * abs0 && std::abs(t1) <= tol * abs1 &&
                            std::abs(t2) <= tol * abs2;
    small_run = negligible ? small_run + 1 : 0;
    if (small_run >= 5) {
      out.tail = std::abs(t0);
      out.terms = n + 1;
      return out;
    }

    const double nxt = rec.next(n, prev, cur);
    prev = cur;
    cur = nxt;
    ypow2 = ypow1;
    ypow1 = ypow;
    ypow *= y;
  }
  throw NoConvergence("heunc_eval: no convergence within " + std::to_string(n_max) + " terms at y = " +
                      std::to_string(y));
}

H1H2 h1_h2(const ModelParams& p, double y) {
  if (!(y >= 0.25 && y <= 0.75)) throw DomainError("h1_h2: y must lie in [0.25, 0.75]");
  const HeunPair ap = heun_params(p);
  const HeunValue v1 = heunc_eval(ap.a0, y);
  const HeunValue v2 = heunc_eval(ap.a1, 1.0 - y);
  return {v1.value, v1.derivative, v2.value, -v2.derivative};
}

}  // namespace rabi
