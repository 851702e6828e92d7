#include "rabi/model.hpp"

#include <cmath>
#include <stdexcept>

namespace rabi {

ModelParams::ModelParams(double E, double lambda, double mu, double epsilon)
    : E_(E), lambda_(lambda), mu_(mu), epsilon_(epsilon), x_(x_from_E(E, lambda)) {}

ModelParams ModelParams::from_energy(double E, double lambda, double mu, double epsilon) {
  return ModelParams(E, lambda, mu, epsilon);
}

ModelParams ModelParams::from_x(double x, double lambda, double mu, double epsilon) {
  return ModelParams(E_from_x(x, lambda), lambda, mu, epsilon);
}

double x_from_E(double E, double lambda) { return E + lambda * lambda; }
double E_from_x(double x, double lambda) { return x - lambda * lambda; }

double resonance_distance(const ModelParams& p) {
  const double a = p.x() - p.epsilon();
  const double b = p.x() + p.epsilon();
  return std::min(std::abs(a - std::round(a)), std::abs(b - std::round(b)));
}

bool in_exclusion_zone(const ModelParams& p, double delta) { return resonance_distance(p) < delta; }

double HeunLocalParams::mu_tilde() const {
  return 0.5 * (alpha - beta - gamma + alpha * beta - beta * gamma) - eta;
}

double HeunLocalParams::nu_tilde() const {
  return 0.5 * (alpha + beta + gamma + alpha * gamma + beta * gamma) + delta + eta;
}

std::pair<double, double> mu_nu_tilde(const HeunLocalParams& a) { return {a.mu_tilde(), a.nu_tilde()}; }

HeunLocalParams reflect(const HeunLocalParams& a) {
  return {-a.alpha, a.gamma, a.beta, -a.delta, a.delta + a.eta};
}

HeunPair heun_params(const ModelParams& p) {
  const double x = p.x();
  const double l2 = p.lambda() * p.lambda();
  const double mu = p.mu();
  const double eps = p.epsilon();

  HeunLocalParams a0;
  a0.alpha = 4.0 * l2;
  a0.beta = -x + eps;
  a0.gamma = -1.0 - x - eps;
  a0.delta = 2.0 * (1.0 - 2.0 * eps) * l2;
  a0.eta = 0.5 * (1.0 - 2.0 * mu * mu + (1.0 + x) * (x - 4.0 * l2) + eps * (1.0 + 4.0 * l2) - eps * eps);
  return {a0, reflect(a0)};
}

OdeSpec eliminated_ode(const ModelParams& p) {
  const double l = p.lambda();
  if (l == 0.0) throw std::invalid_argument("eliminated_ode: lambda must be nonzero");
  const double E = p.E();
  const double eps = p.epsilon();
  const double mu = p.mu();

  // p(z) = -[l + 2 eps l + z(-1 + 2E + 2 l^2)] / (z^2 - l^2)
  Polynomial p_num{-(l + 2.0 * eps * l), -(-1.0 + 2.0 * E + 2.0 * l * l)};
  // q(z) = -[eps^2 - E^2 + 2 z eps l + l (l + z(-1 + z l)) + mu^2] / (z^2 - l^2)
  Polynomial q_num{-(eps * eps - E * E + l * l + mu * mu), -(2.0 * eps * l - l), -(l * l)};
  Polynomial den{-l * l, 0.0, 1.0};
  const double s = std::abs(l);
  return OdeSpec(std::move(p_num), den, std::move(q_num), den, {-s, s});
}

OdeSpec heun_ode(const HeunLocalParams& a) {
  // Multiply through by y(y - 1).
  Polynomial p_num{-(a.beta + 1.0), -a.alpha + (a.beta + 1.0) + (a.gamma + 1.0), a.alpha};
  Polynomial q_num{-a.mu_tilde(), a.mu_tilde() + a.nu_tilde()};
  Polynomial den{0.0, -1.0, 1.0};
  return OdeSpec(std::move(p_num), den, std::move(q_num), den, {0.0, 1.0});
}

double z_to_y(double z, double lambda) {
  if (lambda == 0.0) throw std::invalid_argument("z_to_y: lambda must be nonzero");
  return 0.5 * (1.0 + z / lambda);
}

double y_to_z(double y, double lambda) { return lambda * (2.0 * y - 1.0); }

ValueAndSlope y_gauge(double v, double dv, double y, double lambda) {
  if (lambda == 0.0) throw std::invalid_argument("y_gauge: lambda must be nonzero");
  const double k = 2.0 * lambda * lambda;
  const double g = std::exp(k * y);
  // d/dz = (1 / 2 lambda) d/dy
  return {g * v, g * (dv + k * v) / (2.0 * lambda)};
}

std::pair<double, double> heun_coefficients_in_z(const HeunLocalParams& a, double lambda, double z) {
  const double y = z_to_y(z, lambda);
  const double k = 2.0 * lambda * lambda;
  const double P = a.alpha + (a.beta + 1.0) / y + (a.gamma + 1.0) / (y - 1.0);
  const double Q = a.mu_tilde() / y + a.nu_tilde() / (y - 1.0);
  // v'' + (2k + 2 lambda p) v' + (k^2 + 2 lambda k p + 4 lambda^2 q) v = 0
  const double pz = (P - 2.0 * k) / (2.0 * lambda);
  const double qz = (Q - k * k - 2.0 * lambda * k * pz) / (4.0 * lambda * lambda);
  return {pz, qz};
}

}  // namespace rabi
