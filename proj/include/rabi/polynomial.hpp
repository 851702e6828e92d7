#pragma once

#include <cstddef>
#include <initializer_list>
#include <span>
#include <vector>

namespace rabi {

/// Real polynomial with coefficients stored in ascending powers.
class Polynomial {
 public:
  Polynomial() = default;
  Polynomial(std::initializer_list<double> coeffs) : coeffs_(coeffs) { trim(); }
  explicit Polynomial(std::vector<double> coeffs) : coeffs_(std::move(coeffs)) { trim(); }

  /// Degree of the zero polynomial is reported as 0.
  std::size_t degree() const { return coeffs_.empty() ? 0 : coeffs_.size() - 1; }
  bool is_zero() const { return coeffs_.empty(); }
  std::span<const double> coeffs() const { return coeffs_; }
  double coeff(std::size_t k) const { return k < coeffs_.size() ? coeffs_[k] : 0.0; }

  double operator()(double z) const;
  Polynomial derivative() const;

  /// Coefficients of t -> P(center + t).
  Polynomial shifted(double center) const;

  /// Synthetic division by (z - root); returns the quotient and writes the remainder.
  Polynomial deflate(double root, double& remainder) const;

  double max_abs_coeff() const;

  friend Polynomial operator*(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator+(const Polynomial& a, const Polynomial& b);
  friend Polynomial operator*(double s, const Polynomial& a);

 private:
  void trim();
  std::vector<double> coeffs_;
};

/// Taylor coefficients c_0..c_order of t^lift * num(center + t) / den(center + t).
///
/// A pole of `den` at `center` of order m is cancelled against the t^lift factor
/// and any zeros of `num`; if the quotient still has a pole there, InvalidOde is thrown.
std::vector<double> rational_taylor(const Polynomial& num, const Polynomial& den,
                                    double center, int lift, std::size_t order);

}  // namespace rabi
