#include "rabi/polynomial.hpp"

#include "rabi/errors.hpp"

#include <algorithm>
#include <cmath>

namespace rabi {

namespace {
constexpr double kZeroCoeffTol = 1e-12;
}

void Polynomial::trim() {
  while (!coeffs_.empty() && coeffs_.back() == 0.0) coeffs_.pop_back();
}

double Polynomial::operator()(double z) const {
  double acc = 0.0;
  for (auto it = coeffs_.rbegin(); it != coeffs_.rend(); ++it) acc = acc * z + *it;
  return acc;
}

Polynomial Polynomial::derivative() const {
  if (coeffs_.size() < 2) return {};
  std::vector<double> d(coeffs_.size() - 1);
  for (std::size_t k = 1; k < coeffs_.size(); ++k) d[k - 1] = static_cast<double>(k) * coeffs_[k];
  return Polynomial(std::move(d));
}

Polynomial Polynomial::shifted(double center) const {
  // Repeated synthetic division: the k-th remainder is the k-th Taylor coefficient.
  std::vector<double> c = coeffs_;
  const std::size_t n = c.size();
  for (std::size_t k = 0; k + 1 < n; ++k) {
    for (std::size_t j = n - 1; j > k; --j) c[j - 1] += center * c[j];
  }
  return Polynomial(std::move(c));
}

Polynomial Polynomial::deflate(double root, double& remainder) const {
  if (coeffs_.empty()) {
    remainder = 0.0;
    return {};
  }
  const std::size_t n = coeffs_.size();
  std::vector<double> q(n - 1);
  double acc = coeffs_[n - 1];
  for (std::size_t j = n - 1; j > 0; --j) {
    q[j - 1] = acc;
    acc = coeffs_[j - 1] + root * acc;
  }
  remainder = acc;
  return Polynomial(std::move(q));
}

double Polynomial::max_abs_coeff() const {
  double m = 0.0;
  for (double c : coeffs_) m = std::max(m, std::abs(c));
  return m;
}

Polynomial operator*(const Polynomial& a, const Polynomial& b) {
  if (a.is_zero() || b.is_zero()) return {};
  std::vector<double> c(a.coeffs_.size() + b.coeffs_.size() - 1, 0.0);
  for (std::size_t i = 0; i < a.coeffs_.size(); ++i)
    for (std::size_t j = 0; j < b.coeffs_.size(); ++j) c[i + j] += a.coeffs_[i] * b.coeffs_[j];
  return Polynomial(std::move(c));
}

Polynomial operator+(const Polynomial& a, const Polynomial& b) {
  std::vector<double> c(std::max(a.coeffs_.size(), b.coeffs_.size()), 0.0);
  for (std::size_t i = 0; i < c.size(); ++i) c[i] = a.coeff(i) + b.coeff(i);
  return Polynomial(std::move(c));
}

Polynomial operator*(double s, const Polynomial& a) {
  std::vector<double> c = a.coeffs_;
  for (double& v : c) v *= s;
  return Polynomial(std::move(c));
}

std::vector<double> rational_taylor(const Polynomial& num, const Polynomial& den,
                                    double center, int lift, std::size_t order) {
  if (den.is_zero()) throw InvalidOde("rational_taylor: zero denominator");

  std::vector<double> n_coef(static_cast<std::size_t>(lift), 0.0);
  {
    const Polynomial ns = num.shifted(center);
    n_coef.insert(n_coef.end(), ns.coeffs().begin(), ns.coeffs().end());
  }
  const Polynomial ds = den.shifted(center);
  std::vector<double> d_coef(ds.coeffs().begin(), ds.coeffs().end());

  const double d_scale = ds.max_abs_coeff();
  double n_scale = 0.0;
  for (double c : n_coef) n_scale = std::max(n_scale, std::abs(c));

  // Valuation of the denominator at the center.
  std::size_t v = 0;
  while (v < d_coef.size() && std::abs(d_coef[v]) <= kZeroCoeffTol * d_scale) ++v;
  for (std::size_t k = 0; k < v && k < n_coef.size(); ++k) {
    if (std::abs(n_coef[k]) > kZeroCoeffTol * std::max(n_scale, 1.0))
      throw InvalidOde("rational_taylor: pole of order exceeding the lift at the expansion point");
  }
  n_coef.erase(n_coef.begin(), n_coef.begin() + static_cast<std::ptrdiff_t>(std::min(v, n_coef.size())));
  d_coef.erase(d_coef.begin(), d_coef.begin() + static_cast<std::ptrdiff_t>(v));

  std::vector<double> out(order + 1, 0.0);
  const double d0 = d_coef.front();
  for (std::size_t k = 0; k <= order; ++k) {
    double acc = k < n_coef.size() ? n_coef[k] : 0.0;
    const std::size_t jmax = std::min(k, d_coef.size() - 1);
    for (std::size_t j = 1; j <= jmax; ++j) acc -= d_coef[j] * out[k - j];
    out[k] = acc / d0;
  }
  return out;
}

}  // namespace rabi
