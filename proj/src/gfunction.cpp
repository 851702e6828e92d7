#include "rabi/gfunction.hpp"

#include "rabi/bracketing.hpp"
#include "rabi/errors.hpp"
#include "rabi/kernels.hpp"
#include "rabi/wronskian.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rabi {

namespace {

constexpr std::size_t kPhiMaxTerms = 5000;
constexpr double kPhiTol = 1e-16;

void check_pole(double x) {
  const double n = std::round(x);
  if (n >= 0.0 && std::abs(x - n) < kExclusionDelta)
    throw PoleProximity("G-function series: x = " + std::to_string(x) + " is within " +
                        std::to_string(kExclusionDelta) + " of the pole at " + std::to_string(n));
}

struct PhiRecurrence {
  double x, lambda, mu;

  // Phi_{n+1} from Phi_{n-1}, Phi_n.
  double next(std::size_t n, double prev, double cur) const {
    const double dn = static_cast<double>(n);
    const double c = dn - x + 4.0 * lambda * lambda + mu * mu / (x - dn);
    return (c * cur - 2.0 * lambda * prev) / (2.0 * lambda * (dn + 1.0));
  }
  double tilde(std::size_t n, double phi) const { return mu * phi / (x - static_cast<double>(n)); }
};

}  // namespace

PhiCoefficients phi_coefficients(double x, double lambda, double mu, std::size_t N) {
  if (lambda == 0.0) throw std::invalid_argument("phi_coefficients: lambda must be nonzero");
  for (std::size_t n = 0; n <= N; ++n) {
    if (std::abs(x - static_cast<double>(n)) < kExclusionDelta)
      throw PoleProximity("phi_coefficients: x within exclusion distance of " + std::to_string(n));
  }
  const PhiRecurrence rec{x, lambda, mu};
  PhiCoefficients c{x, lambda, mu, {}, {}};
  c.phi.reserve(N + 1);
  c.phi.push_back(1.0);
  double prev = 0.0;
  for (std::size_t n = 0; n < N; ++n) {
    const double nxt = rec.next(n, prev, c.phi[n]);
    prev = c.phi[n];
    c.phi.push_back(nxt);
  }
  c.phi_tilde.resize(c.phi.size());
  for (std::size_t n = 0; n < c.phi.size(); ++n) c.phi_tilde[n] = rec.tilde(n, c.phi[n]);
  return c;
}

double phi_recurrence_residual(const PhiCoefficients& c, std::size_t n) {
  if (n == 0 || n + 1 >= c.phi.size()) throw std::out_of_range("phi_recurrence_residual: index");
  const double dn = static_cast<double>(n);
  const double l = c.lambda;
  const double t1 = 2.0 * l * (dn + 1.0) * c.phi[n + 1];
  const double t2 = (dn - c.x + 4.0 * l * l + c.mu * c.mu / (c.x - dn)) * c.phi[n];
  const double t3 = 2.0 * l * c.phi[n - 1];
  const double mag = std::max({std::abs(t1), std::abs(t2), std::abs(t3)});
  return mag == 0.0 ? 0.0 : std::abs(t1 - t2 + t3) / mag;
}

PhiValues phi_values(double x, double lambda, double mu, double y1, double y2) {
  if (lambda == 0.0) throw std::invalid_argument("phi_values: lambda must be nonzero");
  check_pole(x);
  const PhiRecurrence rec{x, lambda, mu};

  PhiValues v;
  double abs[6] = {0, 0, 0, 0, 0, 0};
  double p1 = 1.0, p1m1 = 0.0, p1m2 = 0.0;  // y1^n, y1^(n-1), y1^(n-2)
  double p2 = 1.0, p2m1 = 0.0, p2m2 = 0.0;
  double prev = 0.0, cur = 1.0;
  int small_run = 0;

  for (std::size_t n = 0; n <= kPhiMaxTerms; ++n) {
    const double dn = static_cast<double>(n);
    const double tl = rec.tilde(n, cur);
    const double t[6] = {tl * p1,  dn * tl * p1m1,  dn * (dn - 1.0) * tl * p1m2,
                         cur * p2, dn * cur * p2m1, dn * (dn - 1.0) * cur * p2m2};
    v.phi1 += t[0];
    v.dphi1 += t[1];
    v.d2phi1 += t[2];
    v.phi2 += t[3];
    v.dphi2 += t[4];
    v.d2phi2 += t[5];
    bool negligible = true;
    for (int k = 0; k < 6; ++k) {
      abs[k] += std::abs(t[k]);
      negligible = negligible && std::abs(t[k]) <= kPhiTol * abs[k];
    }
    small_run = negligible ? small_run + 1 : 0;
    if (small_run >= 5) return v;

    const double nxt = rec.next(n, prev, cur);
    prev = cur;
    cur = nxt;
    p1m2 = p1m1;
    p1m1 = p1;
    p1 *= y1;
    p2m2 = p2m1;
    p2m1 = p2;
    p2 *= y2;
  }
  throw NoConvergence("phi_values: series did not converge at x = " + std::to_string(x));
}

bool in_series_domain(double z, double lambda) {
  const double r = 2.0 * std::abs(lambda);
  return std::abs(z + lambda) < r && std::abs(z - lambda) < r;
}

ParityComponents parity_components(double z, double x, double lambda, double mu) {
  if (!(std::abs(z) < std::abs(lambda)))
    throw DomainError("g_sigma: z = " + std::to_string(z) + " outside (-|lambda|, |lambda|)");
  // psi1(z) = e^{-l z} phi1(l + z);  psi2(-z) = e^{l z} phi2(l - z)
  const PhiValues pv = phi_values(x, lambda, mu, lambda + z, lambda - z);
  const double ep = std::exp(lambda * z);
  const double em = 1.0 / ep;
  const double l = lambda;

  ParityComponents c;
  c.psi2_reflected.v = ep * pv.phi2;
  c.psi2_reflected.d1 = l * c.psi2_reflected.v - ep * pv.dphi2;
  c.psi2_reflected.d2 = l * l * c.psi2_reflected.v - 2.0 * l * ep * pv.dphi2 + ep * pv.d2phi2;
  c.psi1.v = em * pv.phi1;
  c.psi1.d1 = -l * c.psi1.v + em * pv.dphi1;
  c.psi1.d2 = l * l * c.psi1.v - 2.0 * l * em * pv.dphi1 + em * pv.d2phi1;
  return c;
}

ParityFunctionSample make_sample(const ParityComponents& c, double z, double x, double lambda, int sigma) {
  if (sigma != 1 && sigma != -1) throw std::invalid_argument("parity must be +1 or -1");
  const double s = static_cast<double>(sigma);
  ParityFunctionSample out;
  out.z = z;
  out.x = x;
  out.sigma = sigma;
  out.G = c.psi2_reflected.v - s * c.psi1.v;
  out.dG = c.psi2_reflected.d1 - s * c.psi1.d1;
  out.d2G = c.psi2_reflected.d2 - s * c.psi1.d2;
  out.scale = std::abs(c.psi2_reflected.v) + std::abs(c.psi1.v);
  out.in_domain = in_series_domain(z, lambda);
  out.psi2_reflected = c.psi2_reflected;
  out.psi1 = c.psi1;
  return out;
}

ParityFunctionSample g_sigma(double z, double x, double lambda, double mu, int sigma) {
  return make_sample(parity_components(z, x, lambda, mu), z, x, lambda, sigma);
}

namespace {

struct GOdeCoefficients {
  double c2, c1, c0;
};

GOdeCoefficients g_ode_coefficients(double z, double x, double lambda, double mu) {
  const double l = lambda;
  return {z * z - l * l, z * (1.0 - 2.0 * x) - l,
          l * z * (1.0 - l * z) + (x - l * l) * (x - l * l) - l * l - mu * mu};
}

}  // namespace

double g_ode_operator(const ParityFunctionSample& s, double lambda, double mu) {
  const GOdeCoefficients c = g_ode_coefficients(s.z, s.x, lambda, mu);
  return c.c2 * s.d2G + c.c1 * s.dG + c.c0 * s.G;
}

double g_ode_residual(const ParityFunctionSample& s, double lambda, double mu) {
  const GOdeCoefficients c = g_ode_coefficients(s.z, s.x, lambda, mu);
  auto mag = [&](const Jet2& j) {
    return std::abs(c.c2 * j.d2) + std::abs(c.c1 * j.d1) + std::abs(c.c0 * j.v);
  };
  const double m = mag(s.psi2_reflected) + mag(s.psi1);
  return m == 0.0 ? 0.0 : std::abs(g_ode_operator(s, lambda, mu)) / m;
}

double g_ode_residual(double z, double x, double lambda, double mu, int sigma) {
  if (std::abs(z) > std::abs(lambda) - 0.05)
    throw DomainError("g_ode_residual: z must stay 0.05 away from the singular points");
  return g_ode_residual(g_sigma(z, x, lambda, mu, sigma), lambda, mu);
}

ZeroClassification classify_zero(double x0, double z_star, double lambda, double mu, int sigma, double tol) {
  const ParityFunctionSample s = g_sigma(z_star, x0, lambda, mu, sigma);
  ZeroClassification out;
  out.x = x0;
  out.g_rel = std::abs(s.G) / s.scale;
  out.dg_rel = std::abs(s.dG) / s.scale;
  const ModelParams p = ModelParams::from_x(x0, lambda, mu, 0.0);
  // Without a determinant value (exclusion zone) a zero cannot be confirmed.
  out.w_rel = std::numeric_limits<double>::quiet_NaN();
  if (!in_exclusion_zone(p)) {
    const SpectralDeterminantSample w = spectral_determinant(p);
    out.w_rel = std::abs(w.W) / w.scale;
  }
  out.kind = (out.dg_rel < tol && out.w_rel < tol) ? ZeroKind::SpectrumPoint : ZeroKind::IsolatedZero;
  return out;
}

std::vector<double> g_zeros(double z_star, double lambda, double mu, int sigma, double x_lo, double x_hi,
                            const GZeroScanOptions& opts) {
  std::vector<double> roots;
  if (!(x_hi > x_lo)) return roots;
  const auto centers = integer_zone_centers(x_lo, x_hi, 0.0, kExclusionDelta, 0.0);
  auto f = [&](double x) {
    const ParityFunctionSample s = g_sigma(z_star, x, lambda, mu, sigma);
    return s.G / s.scale;
  };
  for (const Interval& seg : allowed_segments(x_lo, x_hi, centers, kExclusionDelta)) {
    const std::vector<double> xs = segment_grid(seg, opts.step);
    double xa = xs.front();
    double fa = f(xa);
    if (fa == 0.0) roots.push_back(xa);
    for (std::size_t i = 1; i < xs.size(); ++i) {
      const double xb = xs[i];
      const double fb = f(xb);
      if (fb == 0.0) {
        roots.push_back(xb);
      } else if (fa != 0.0 && std::signbit(fa) != std::signbit(fb)) {
        const double r = bisect(f, xa, xb, fa, opts.x_tol);
        if (std::abs(f(r)) < opts.dip) roots.push_back(r);
      }
      xa = xb;
      fa = fb;
    }
  }
  std::sort(roots.begin(), roots.end());
  roots.erase(std::unique(roots.begin(), roots.end(), [](double a, double b) { return std::abs(a - b) < 1e-8; }),
              roots.end());
  return roots;
}

std::vector<double> two_condition_roots(double z_star, double lambda, double mu, int sigma, double x_lo,
                                        double x_hi, double tol, const GZeroScanOptions& opts) {
  std::vector<double> out;
  for (double x : g_zeros(z_star, lambda, mu, sigma, x_lo, x_hi, opts)) {
    const ParityFunctionSample s = g_sigma(z_star, x, lambda, mu, sigma);
    if (std::abs(s.dG) / s.scale < tol) out.push_back(x);
  }
  return out;
}

void g_grid_row(double x, std::span<const double> zs, double lambda, double mu, double* plus, double* minus) {
  const double n = std::round(x);
  const bool pole = n >= 0.0 && std::abs(x - n) < kExclusionDelta;
  for (std::size_t j = 0; j < zs.size(); ++j) {
    if (pole) {
      plus[j] = minus[j] = std::numeric_limits<double>::quiet_NaN();
      continue;
    }
    const ParityComponents c = parity_components(zs[j], x, lambda, mu);
    const double scale = std::abs(c.psi2_reflected.v) + std::abs(c.psi1.v);
    plus[j] = (c.psi2_reflected.v - c.psi1.v) / scale;
    minus[j] = (c.psi2_reflected.v + c.psi1.v) / scale;
  }
}

std::vector<double> linspace(double lo, double hi, std::size_t n) {
  std::vector<double> out(n);
  if (n == 1) {
    out[0] = lo;
    return out;
  }
  for (std::size_t i = 0; i < n; ++i)
    out[i] = lo + (hi - lo) * static_cast<double>(i) / static_cast<double>(n - 1);
  return out;
}

GGrid g_grid(double x_lo, double x_hi, std::size_t nx, double z_lo, double z_hi, std::size_t nz, double lambda,
             double mu) {
  if (!(std::abs(z_lo) < std::abs(lambda) && std::abs(z_hi) < std::abs(lambda)))
    throw DomainError("g_grid: z range must lie inside (-|lambda|, |lambda|)");
  return kernels::g_grid_parallel(linspace(x_lo, x_hi, nx), linspace(z_lo, z_hi, nz), lambda, mu);
}

}  // namespace rabi
