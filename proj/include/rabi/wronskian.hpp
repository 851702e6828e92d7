#pragma once

#include "rabi/bracketing.hpp"
#include "rabi/model.hpp"

#include <span>
#include <string>
#include <utility>
#include <vector>

namespace rabi {

/// w(p; y) = H1(y) H2'(y) - H1'(y) H2(y) at one evaluation point.
struct SpectralDeterminantSample {
  ModelParams p;
  double y_star = 0.5;
  double W = 0.0;
  double scale = 0.0;  ///< |H1 H2'| + |H1' H2|
  bool excluded = false;

  double relative() const { return W / scale; }
};

/// Throws PoleProximity inside an exclusion zone, std::invalid_argument for lambda == 0.
SpectralDeterminantSample spectral_determinant(const ModelParams& p, double y_star = 0.5);

/// exp(alpha y) y^(beta+1) (1-y)^(gamma+1): w(p; y) times this is independent of y.
double abel_factor(const HeunLocalParams& a0, double y);

/// |w(y1) A(y1) - w(y2) A(y2)| / max(|w(y1) A(y1)|, |w(y2) A(y2)|).
double wronskian_invariance_check(const ModelParams& p, double y1, double y2);

/// The same determinant built in z from the two generic Frobenius solutions of the
/// eliminated ODE at -|lambda| and +|lambda| (exponent 0 at both):
///   phi_+(z) phi_-'(z) - phi_+'(z) phi_-(z).
/// Equals -exp(2 lambda z) / (2 lambda) * w(p; y(z)) for lambda > 0.
double z_route_determinant(const ModelParams& p, double z_star);

enum class Provenance { WronskianRoot, OracleOnly };
const char* to_string(Provenance p);

struct EigenvalueRecord {
  double x = 0.0;
  double E = 0.0;
  Interval bracket;
  double residual = 0.0;  ///< |W| / scale at the refined root (NaN for oracle-only rows)
  Provenance provenance = Provenance::WronskianRoot;
};

struct ScanOptions {
  double y_star = 0.5;
  double x_tol = 1e-10;    ///< bisection width
  double dip = 1e-6;       ///< |W|/scale must fall below this or the bracket is a pole flip
  double merge = 1e-8;     ///< roots closer than this are duplicates
};

struct SpectrumReport {
  double lambda = 0.0, mu = 0.0, epsilon = 0.0;
  double x_lo = 0.0, x_hi = 0.0, step = 0.0;
  ScanOptions options;
  std::vector<EigenvalueRecord> records;  ///< ascending in E
};

/// Brackets sign changes of W/scale on a grid over (x_lo, x_hi) that skips every
/// exclusion zone, then bisects each bracket. Requires 0 < step <= 0.01.
SpectrumReport scan_roots(double lambda, double mu, double epsilon, double x_lo, double x_hi, double step,
                          const ScanOptions& opts = {});

/// Adds oracle eigenvalues (energies) that fall into exclusion zones inside the scanned
/// window as oracle-only rows and re-sorts the report.
void merge_oracle(SpectrumReport& report, std::span<const double> oracle_energies);

struct LambdaSpectrum {
  std::vector<std::pair<double, double>> points;         ///< (lambda, E)
  std::vector<std::pair<double, std::string>> failures;  ///< (lambda, message)
};

/// scan_roots over an energy window for each lambda; failures are recorded per lambda.
LambdaSpectrum spectrum_vs_lambda(double mu, double epsilon, std::span<const double> lambdas, double E_lo,
                                  double E_hi, double step);

}  // namespace rabi
