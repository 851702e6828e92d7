#pragma once

#include "rabi/ode_spec.hpp"

#include <utility>

namespace rabi {

/// Half-width of the zones around x - eps in Z and x + eps in Z where the local
/// Heun series have vanishing denominators. The Wronskian route refuses these.
inline constexpr double kExclusionDelta = 1e-3;

/// Parameters of the (possibly symmetry-broken) Rabi model in the Bargmann picture.
///
/// Immutable; the shifted spectral parameter x = E + lambda^2 is recomputed from E
/// on construction, whichever of the two was supplied.
class ModelParams {
 public:
  static ModelParams from_energy(double E, double lambda, double mu, double epsilon = 0.0);
  static ModelParams from_x(double x, double lambda, double mu, double epsilon = 0.0);

  double E() const { return E_; }
  double x() const { return x_; }
  double lambda() const { return lambda_; }
  double mu() const { return mu_; }
  double epsilon() const { return epsilon_; }

 private:
  ModelParams(double E, double lambda, double mu, double epsilon);
  double E_, lambda_, mu_, epsilon_, x_;
};

double x_from_E(double E, double lambda);
double E_from_x(double x, double lambda);

/// min(dist(x - eps, Z), dist(x + eps, Z)).
double resonance_distance(const ModelParams& p);
bool in_exclusion_zone(const ModelParams& p, double delta = kExclusionDelta);

/// Parameters (alpha, beta, gamma, delta, eta) of one local confluent Heun solution.
struct HeunLocalParams {
  double alpha = 0.0;
  double beta = 0.0;
  double gamma = 0.0;
  double delta = 0.0;
  double eta = 0.0;

  double mu_tilde() const;
  double nu_tilde() const;

  bool operator==(const HeunLocalParams&) const = default;
};

std::pair<double, double> mu_nu_tilde(const HeunLocalParams& a);

/// Slot rule taking the parameters at y = 0 to those of the solution at y = 1
/// in the reflected argument 1 - y: (-alpha, gamma, beta, -delta, delta + eta).
HeunLocalParams reflect(const HeunLocalParams& a);

struct HeunPair {
  HeunLocalParams a0;  ///< expansion about y = 0 (z = -lambda)
  HeunLocalParams a1;  ///< expansion about y = 1 (z = +lambda), argument 1 - y
};

HeunPair heun_params(const ModelParams& p);

/// Scalar ODE for psi_1 after eliminating psi_2; singular points {-lambda, +lambda}
/// (sorted). Throws std::invalid_argument for lambda == 0.
OdeSpec eliminated_ode(const ModelParams& p);

/// The confluent Heun equation in y with singular points {0, 1}.
OdeSpec heun_ode(const HeunLocalParams& a);

/// y = (1 + z/lambda) / 2.
double z_to_y(double z, double lambda);
/// z = lambda (2y - 1).
double y_to_z(double y, double lambda);

struct ValueAndSlope {
  double value = 0.0;
  double slope = 0.0;
};

/// Map a Heun value (v, dv/dy) at y to (psi_1, dpsi_1/dz) through
/// psi_1(lambda(2y-1)) = exp(2 lambda^2 y) v(y).
ValueAndSlope y_gauge(double v, double dv, double y, double lambda);

/// p(z), q(z) recovered from the Heun form by undoing the gauge and the change of
/// variables. Agrees with eliminated_ode(p) when a = heun_params(p).a0.
std::pair<double, double> heun_coefficients_in_z(const HeunLocalParams& a, double lambda, double z);

}  // namespace rabi
