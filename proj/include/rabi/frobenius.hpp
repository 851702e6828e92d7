#pragma once

#include "rabi/ode_spec.hpp"

#include <cstddef>
#include <span>
#include <utility>
#include <vector>

namespace rabi {

/// Truncation controls for local series.
struct SeriesOptions {
  double tol = 1e-15;            ///< relative term size that counts as negligible
  std::size_t n_max = 5000;      ///< hard cap on the number of coefficients
  int consecutive = 5;           ///< negligible terms in a row before truncating
  double safety = 0.9;           ///< fraction of the convergence radius that is certified
};

/// Local solution sum_n a_n (z - s)^(rho + n) about a regular singular point, a_0 = 1.
struct FrobeniusSolution {
  double center = 0.0;
  double exponent = 0.0;
  double radius = 0.0;           ///< distance to the nearest other singular point
  double safety = 0.9;
  std::vector<double> coeffs;
  double last_term = 0.0;        ///< |a_N| (0.9 r)^N at truncation

  double safe_radius() const { return safety * radius; }
};

struct SeriesValue {
  double value = 0.0;
  double tail_bound = 0.0;  ///< geometric estimate of the discarded tail
};

/// Overlap of the convergence discs of two neighbouring local solutions, on the real line.
struct OverlapRegion {
  std::size_t index = 0;
  double lo = 0.0;
  double hi = 0.0;
  bool empty = true;
};

/// Indicial exponents (rho, sigma) with rho >= sigma at the declared point s.
/// Throws std::invalid_argument for an undeclared point, DomainError for complex exponents.
std::pair<double, double> indicial_exponents(const OdeSpec& ode, double s);

/// Taylor coefficients of (z-s) p(z) and (z-s)^2 q(z) at s, up to `order`.
struct LocalCoefficients {
  std::vector<double> P;
  std::vector<double> Q;
};
LocalCoefficients local_coefficients(const OdeSpec& ode, double s, std::size_t order);

/// Builds the local solution with exponent rho at s by the Frobenius recurrence
///   a_n F(rho+n) = -sum_{k=1..n} [P_k (rho+n-k) + Q_k] a_{n-k},
///   F(r) = r(r-1) + P_0 r + Q_0.
/// Truncates once `consecutive` terms in a row are below tol relative to the running
/// absolute sum at the certified radius. A denominator below 1e-10 with a
/// non-negligible right-hand side raises ResonantExponents; a vanishing right-hand side
/// leaves the free coefficient at zero.
FrobeniusSolution local_series(const OdeSpec& ode, double s, double rho,
                               const SeriesOptions& opts = {});

/// Value (order 0) or first derivative (order 1) of the series at z.
/// Requires |z - s| <= safe radius; non-integer exponents need z >= s.
SeriesValue evaluate(const FrobeniusSolution& sol, double z, int order);

/// Largest |residual coefficient| of the series substituted into the ODE (orders
/// 0..N-2), relative to the largest contributing term.
double recurrence_residual(const OdeSpec& ode, const FrobeniusSolution& sol);

std::vector<OverlapRegion> overlap_regions(const OdeSpec& ode);
std::vector<OverlapRegion> overlap_regions(std::span<const double> centers, std::span<const double> radii);

struct WronskianValue {
  double value = 0.0;
  double scale = 0.0;  ///< |fA fB'| + |fA' fB|
};

/// fA(z) fB'(z) - fA'(z) fB(z); z must lie in both safe discs.
WronskianValue pairwise_wronskian(const FrobeniusSolution& a, const FrobeniusSolution& b, double z_star);

}  // namespace rabi
