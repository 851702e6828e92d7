#pragma once

#include "rabi/model.hpp"

#include <cstddef>
#include <vector>

namespace rabi {

/// Largest series argument accepted by heunc_eval; the singularity sits at 1.
inline constexpr double kHeunMaxArgument = 0.75;

/// Coefficients of the local solution of the confluent Heun equation at y = 0,
/// normalized by c_0 = 1, from the three-term recurrence
///
///   (n+1)(n+beta+1) c_{n+1} = [n(n-1) + n(beta+gamma+2-alpha) - mu~] c_n
///                             + [alpha(n-1) + mu~ + nu~] c_{n-1}.
struct HeunSeries {
  HeunLocalParams params;
  std::vector<double> coeffs;
  double last_term = 0.0;
};

struct HeunValue {
  double value = 0.0;
  double derivative = 0.0;
  double second = 0.0;      ///< v'' summed from the same series
  double tail = 0.0;        ///< magnitude of the last retained value term
  std::size_t terms = 0;
};

/// Sums the series at y in [0, 0.75], extending the coefficients until `consecutive`
/// terms of v, v' and v'' in a row are below tol relative to the running absolute sums.
/// Throws DomainError, ResonantExponents (|n + beta + 1| < 1e-10) or NoConvergence.
HeunValue heunc_eval(const HeunLocalParams& a, double y, double tol = 1e-15,
                     std::size_t n_max = 5000);

/// Coefficients c_0..c_n of the series (no truncation logic).
HeunSeries heunc_coefficients(const HeunLocalParams& a, std::size_t n);

struct H1H2 {
  double h1 = 0.0, dh1 = 0.0;
  double h2 = 0.0, dh2 = 0.0;  ///< dh2 includes the -1 from the reflected argument
};

/// H1(y) = HeunC(a0; y), H2(y) = HeunC(a1; 1 - y) and their y-derivatives,
/// for y in [0.25, 0.75].
H1H2 h1_h2(const ModelParams& p, double y);

}  // namespace rabi
