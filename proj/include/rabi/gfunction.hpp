#pragma once

#include "rabi/model.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rabi {

/// Series coefficients of the entire-candidate solution about y = 0 (z = -lambda)
/// of the shifted symmetric system
///
///   y phi1' = x phi1 - mu phi2
///   (y - 2 lambda) phi2' = (x - 4 lambda^2 + 2 lambda y) phi2 - mu phi1,
///
/// phi2 = sum Phi_n y^n with Phi_0 = 1 and phi1 = sum PhiT_n y^n, PhiT_n = mu Phi_n / (x - n).
struct PhiCoefficients {
  double x = 0.0, lambda = 0.0, mu = 0.0;
  std::vector<double> phi;        ///< Phi_n
  std::vector<double> phi_tilde;  ///< PhiT_n
};

/// Throws PoleProximity when |x - n| < kExclusionDelta for some 0 <= n <= N.
PhiCoefficients phi_coefficients(double x, double lambda, double mu, std::size_t N);

/// Residual of the Phi recurrence at index n (1 <= n < N), relative to its largest term.
double phi_recurrence_residual(const PhiCoefficients& c, std::size_t n);

/// phi1, phi2 and their first two y-derivatives at one argument each, summed with
/// on-the-fly coefficient generation (5 consecutive negligible terms, cap 5000).
struct PhiValues {
  double phi1 = 0.0, dphi1 = 0.0, d2phi1 = 0.0;
  double phi2 = 0.0, dphi2 = 0.0, d2phi2 = 0.0;
};
PhiValues phi_values(double x, double lambda, double mu, double y1, double y2);

/// A function and its first two z-derivatives at one point.
struct Jet2 {
  double v = 0.0, d1 = 0.0, d2 = 0.0;
};

/// One sample of G_sigma(z) = psi2(-z) - sigma psi1(z), with psi_i(z) = exp(-lambda z) phi_i(z + lambda)
/// (the constant factor exp(-lambda^2) is dropped; it does not move zeros).
struct ParityFunctionSample {
  double z = 0.0, x = 0.0;
  int sigma = 1;
  double G = 0.0, dG = 0.0, d2G = 0.0;
  double scale = 0.0;     ///< |psi2(-z)| + |psi1(z)|
  bool in_domain = false; ///< z inside D(-lambda, 2|lambda|) and D(lambda, 2|lambda|)
  Jet2 psi2_reflected;    ///< z -> psi2(-z)
  Jet2 psi1;              ///< z -> psi1(z)
};

/// psi2(-z) and psi1(z) with derivatives; both parities are combinations of these.
struct ParityComponents {
  Jet2 psi2_reflected;
  Jet2 psi1;
};
ParityComponents parity_components(double z, double x, double lambda, double mu);
ParityFunctionSample make_sample(const ParityComponents& c, double z, double x, double lambda, int sigma);

/// True iff z lies in both discs D(-lambda, 2|lambda|) and D(lambda, 2|lambda|).
bool in_series_domain(double z, double lambda);

/// Requires |z| < |lambda| (real slice of the disc intersection); throws DomainError
/// outside it and PoleProximity for x within kExclusionDelta of a non-negative integer.
ParityFunctionSample g_sigma(double z, double x, double lambda, double mu, int sigma);

/// Relative residual of the second-order equation satisfied by G in z:
///   (z^2 - l^2) g'' + [z(1 - 2x) - l] g' + [l z (1 - l z) + (x - l^2)^2 - l^2 - mu^2] g.
/// Requires |z| <= |lambda| - 0.05.
double g_ode_residual(double z, double x, double lambda, double mu, int sigma);

/// The operator above applied to (G, G', G'') of a sample; linear in the sample.
double g_ode_operator(const ParityFunctionSample& s, double lambda, double mu);

/// |operator| relative to the sum of the magnitudes of its terms evaluated on
/// psi2(-z) and psi1(z) separately (G itself vanishes at eigenvalues).
double g_ode_residual(const ParityFunctionSample& s, double lambda, double mu);

enum class ZeroKind { SpectrumPoint, IsolatedZero };

struct ZeroClassification {
  ZeroKind kind = ZeroKind::IsolatedZero;
  double x = 0.0;
  double g_rel = 0.0;   ///< |G| / scale
  double dg_rel = 0.0;  ///< |G'| / scale
  double w_rel = 0.0;   ///< |W| / scale of the spectral determinant
};

/// A zero x0 of G_sigma(z_star, .) is a spectrum point iff G' also vanishes there and
/// the spectral determinant agrees; otherwise it is an isolated zero.
ZeroClassification classify_zero(double x0, double z_star, double lambda, double mu, int sigma,
                                 double tol = 1e-6);

struct GZeroScanOptions {
  double step = 1e-3;
  double x_tol = 1e-10;
  double dip = 1e-6;  ///< |G|/scale at the refined point must fall below this
};

/// Zeros of x -> G_sigma(z_star, x) in (x_lo, x_hi): sign changes of G/scale on a grid
/// that skips the pole zones around non-negative integers, refined by bisection.
std::vector<double> g_zeros(double z_star, double lambda, double mu, int sigma, double x_lo, double x_hi,
                            const GZeroScanOptions& opts = {});

/// Zeros where both G_sigma(z_star) and G'_sigma(z_star) vanish (|G'|/scale < tol).
std::vector<double> two_condition_roots(double z_star, double lambda, double mu, int sigma, double x_lo,
                                        double x_hi, double tol = 1e-6, const GZeroScanOptions& opts = {});

/// Row-major grid of normalized G_+/scale and G_-/scale; entry (i, j) is (xs[i], zs[j]).
/// Points in a pole zone carry NaN.
struct GGrid {
  std::vector<double> xs, zs;
  std::vector<double> g_plus, g_minus;
  double at_plus(std::size_t i, std::size_t j) const { return g_plus[i * zs.size() + j]; }
  double at_minus(std::size_t i, std::size_t j) const { return g_minus[i * zs.size() + j]; }
};

/// Evaluates one grid row (fixed x) for both parities; used by the grid kernels.
void g_grid_row(double x, std::span<const double> zs, double lambda, double mu, double* plus, double* minus);

/// Convenience front end; runs the parallel kernel.
GGrid g_grid(double x_lo, double x_hi, std::size_t nx, double z_lo, double z_hi, std::size_t nz,
             double lambda, double mu);

/// n equally spaced points covering [lo, hi] (n == 1 gives lo).
std::vector<double> linspace(double lo, double hi, std::size_t n);

}  // namespace rabi
