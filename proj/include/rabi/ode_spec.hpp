#pragma once

#include "rabi/polynomial.hpp"

#include <cstddef>
#include <span>
#include <vector>

namespace rabi {

/// Second-order linear ODE  f'' + p(z) f' + q(z) f = 0  with rational p, q and
/// real finite regular singular points.
///
/// Construction validates that the denominators factor completely over the declared
/// points (no undeclared or complex poles) and that every declared point is a regular
/// singular point: (z-s) p(z) and (z-s)^2 q(z) stay finite there.
class OdeSpec {
 public:
  OdeSpec(Polynomial p_num, Polynomial p_den, Polynomial q_num, Polynomial q_den,
          std::vector<double> singular_points);

  double p(double z) const { return p_num_(z) / p_den_(z); }
  double q(double z) const { return q_num_(z) / q_den_(z); }

  const Polynomial& p_num() const { return p_num_; }
  const Polynomial& p_den() const { return p_den_; }
  const Polynomial& q_num() const { return q_num_; }
  const Polynomial& q_den() const { return q_den_; }

  std::span<const double> singular_points() const { return points_; }

  /// Index of the declared point within 1e-12 of s, or -1.
  int find_point(double s) const;

  /// Distance from point i to the nearest other declared point (infinity if alone).
  double radius(std::size_t i) const;

 private:
  Polynomial p_num_, p_den_, q_num_, q_den_;
  std::vector<double> points_;
};

}  // namespace rabi
