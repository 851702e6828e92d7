#include "rabi/wronskian.hpp"

#include "rabi/errors.hpp"
#include "rabi/frobenius.hpp"
#include "rabi/heunc.hpp"
#include "rabi/kernels.hpp"

#include <algorithm>
#include <cmath>
#include <limits>
#include <stdexcept>
#include <string>

namespace rabi {

SpectralDeterminantSample spectral_determinant(const ModelParams& p, double y_star) {
  if (p.lambda() == 0.0) throw std::invalid_argument("spectral_determinant: lambda must be nonzero");
  if (in_exclusion_zone(p))
    throw PoleProximity("spectral_determinant: x = " + std::to_string(p.x()) + " lies in an exclusion zone");
  const H1H2 h = h1_h2(p, y_star);
  SpectralDeterminantSample s{p, y_star, 0.0, 0.0, false};
  s.W = h.h1 * h.dh2 - h.dh1 * h.h2;
  s.scale = std::abs(h.h1 * h.dh2) + std::abs(h.dh1 * h.h2);
  return s;
}

double abel_factor(const HeunLocalParams& a0, double y) {
  return std::exp(a0.alpha * y) * std::pow(y, a0.beta + 1.0) * std::pow(1.0 - y, a0.gamma + 1.0);
}

double wronskian_invariance_check(const ModelParams& p, double y1, double y2) {
  const HeunLocalParams a0 = heun_params(p).a0;
  const double c1 = spectral_determinant(p, y1).W * abel_factor(a0, y1);
  const double c2 = spectral_determinant(p, y2).W * abel_factor(a0, y2);
  const double m = std::max(std::abs(c1), std::abs(c2));
  return m == 0.0 ? 0.0 : std::abs(c1 - c2) / m;
}

double z_route_determinant(const ModelParams& p, double z_star) {
  const OdeSpec ode = eliminated_ode(p);
  const auto pts = ode.singular_points();
  const FrobeniusSolution minus = local_series(ode, pts[0], 0.0);
  const FrobeniusSolution plus = local_series(ode, pts[1], 0.0);
  return pairwise_wronskian(plus, minus, z_star).value;
}

const char* to_string(Provenance p) {
  return p == Provenance::WronskianRoot ? "wronskian-root" : "oracle-only";
}

namespace {

std::vector<double> exclusion_centers(double x_lo, double x_hi, double eps) {
  std::vector<double> c = integer_zone_centers(x_lo, x_hi, eps, kExclusionDelta);
  const std::vector<double> c2 = integer_zone_centers(x_lo, x_hi, -eps, kExclusionDelta);
  c.insert(c.end(), c2.begin(), c2.end());
  return c;
}

struct Bracket {
  double a, b, fa;
};

}  // namespace

SpectrumReport scan_roots(double lambda, double mu, double epsilon, double x_lo, double x_hi, double step,
                          const ScanOptions& opts) {
  if (!(step > 0.0 && step <= 0.01)) throw std::invalid_argument("scan_roots: step must lie in (0, 0.01]");
  if (lambda == 0.0) throw std::invalid_argument("scan_roots: lambda must be nonzero");

  SpectrumReport report;
  report.lambda = lambda;
  report.mu = mu;
  report.epsilon = epsilon;
  report.x_lo = x_lo;
  report.x_hi = x_hi;
  report.step = step;
  report.options = opts;
  if (!(x_hi > x_lo)) return report;

  const auto centers = exclusion_centers(x_lo, x_hi, epsilon);
  const auto segments = allowed_segments(x_lo, x_hi, centers, kExclusionDelta);

  // One flat grid; segment boundaries remembered so no bracket straddles a zone.
  std::vector<double> xs;
  std::vector<std::size_t> seg_start;
  for (const Interval& seg : segments) {
    seg_start.push_back(xs.size());
    const auto g = segment_grid(seg, step);
    xs.insert(xs.end(), g.begin(), g.end());
  }
  seg_start.push_back(xs.size());

  const auto samples = kernels::w_grid_parallel(lambda, mu, epsilon, xs, opts.y_star);

  std::vector<Bracket> brackets;
  std::vector<double> exact;
  for (std::size_t s = 0; s + 1 < seg_start.size(); ++s) {
    for (std::size_t i = seg_start[s]; i < seg_start[s + 1]; ++i) {
      const auto& cur = samples[i];
      if (cur.failed) throw NoConvergence("scan_roots: evaluation failed at x = " + std::to_string(cur.x));
      const double fb = cur.W / cur.scale;
      if (fb == 0.0) exact.push_back(cur.x);
      if (i == seg_start[s]) continue;
      const auto& prev = samples[i - 1];
      const double fa = prev.W / prev.scale;
      if (fa != 0.0 && fb != 0.0 && std::signbit(fa) != std::signbit(fb)) brackets.push_back({prev.x, cur.x, fa});
    }
  }

  std::vector<EigenvalueRecord> found(brackets.size());
  std::vector<char> keep(brackets.size(), 0);
  std::vector<std::string> errors(brackets.size());
  auto f = [&](double x) { return spectral_determinant(ModelParams::from_x(x, lambda, mu, epsilon), opts.y_star).relative(); };
  const long nb = static_cast<long>(brackets.size());
#pragma omp parallel for schedule(dynamic) num_threads(kernels::thread_count())
  for (long i = 0; i < nb; ++i) {
    const auto k = static_cast<std::size_t>(i);
    const Bracket& br = brackets[k];
    try {
      const double r = bisect(f, br.a, br.b, br.fa, opts.x_tol);
      const double res = std::abs(f(r));
      found[k] = {r, E_from_x(r, lambda), {br.a, br.b}, res, Provenance::WronskianRoot};
      keep[k] = res < opts.dip;
    } catch (const std::exception& e) {
      errors[k] = e.what();
    }
  }
  for (const auto& e : errors)
    if (!e.empty()) throw NoConvergence("scan_roots: refinement failed: " + e);
  for (std::size_t i = 0; i < found.size(); ++i)
    if (keep[i]) report.records.push_back(found[i]);
  for (double x : exact) report.records.push_back({x, E_from_x(x, lambda), {x, x}, 0.0, Provenance::WronskianRoot});

  auto& r = report.records;
  std::sort(r.begin(), r.end(), [](const auto& a, const auto& b) { return a.x < b.x; });
  r.erase(std::unique(r.begin(), r.end(), [&](const auto& a, const auto& b) { return std::abs(a.x - b.x) < opts.merge; }),
          r.end());
  return report;
}

void merge_oracle(SpectrumReport& report, std::span<const double> oracle_energies) {
  for (double E : oracle_energies) {
    const ModelParams p = ModelParams::from_energy(E, report.lambda, report.mu, report.epsilon);
    if (p.x() <= report.x_lo || p.x() >= report.x_hi) continue;
    if (!in_exclusion_zone(p)) continue;
    report.records.push_back({p.x(), E, {p.x(), p.x()}, std::numeric_limits<double>::quiet_NaN(),
                              Provenance::OracleOnly});
  }
  std::sort(report.records.begin(), report.records.end(), [](const auto& a, const auto& b) {
    if (a.E != b.E) return a.E < b.E;
    return a.provenance == Provenance::WronskianRoot && b.provenance == Provenance::OracleOnly;
  });
}

LambdaSpectrum spectrum_vs_lambda(double mu, double epsilon, std::span<const double> lambdas, double E_lo,
                                  double E_hi, double step) {
  LambdaSpectrum out;
  for (double l : lambdas) {
    if (l == 0.0) {
      out.failures.emplace_back(l, "lambda = 0 is not supported on the Wronskian route");
      continue;
    }
    try {
      const SpectrumReport rep = scan_roots(l, mu, epsilon, x_from_E(E_lo, l), x_from_E(E_hi, l), step);
      for (const auto& rec : rep.records) out.points.emplace_back(l, rec.E);
    } catch (const std::exception& e) {
      out.failures.emplace_back(l, e.what());
    }
  }
  return out;
}

}  // namespace rabi
