#include "rabi/kernels.hpp"

#include "rabi/wronskian.hpp"

#include <cmath>
#include <cstdlib>
#include <limits>
#include <string>

#ifdef RABI_HAVE_OPENMP
#include <omp.h>
#endif

namespace rabi::kernels {

int thread_count() {
#ifdef RABI_HAVE_OPENMP
  int n = omp_get_max_threads();
#else
  int n = 1;
#endif
  if (const char* env = std::getenv("RABI_SPECTRA_THREADS")) {
    char* end = nullptr;
    const long cap = std::strtol(env, &end, 10);
    if (end != env && *end == '\0' && cap > 0 && cap < n) n = static_cast<int>(cap);
  }
  return n;
}

namespace {

WSample w_point(double lambda, double mu, double epsilon, double x, double y_star) {
  constexpr double nan = std::numeric_limits<double>::quiet_NaN();
  const ModelParams p = ModelParams::from_x(x, lambda, mu, epsilon);
  if (in_exclusion_zone(p)) return {x, nan, nan, true, false};
  try {
    const SpectralDeterminantSample s = spectral_determinant(p, y_star);
    return {x, s.W, s.scale, false, false};
  } catch (const std::exception&) {
    return {x, nan, nan, false, true};
  }
}

GGrid make_grid(std::vector<double> xs, std::vector<double> zs) {
  GGrid g;
  g.xs = std::move(xs);
  g.zs = std::move(zs);
  g.g_plus.assign(g.xs.size() * g.zs.size(), 0.0);
  g.g_minus.assign(g.xs.size() * g.zs.size(), 0.0);
  return g;
}

void grid_row_safe(GGrid& g, std::size_t i, double lambda, double mu) {
  double* plus = g.g_plus.data() + i * g.zs.size();
  double* minus = g.g_minus.data() + i * g.zs.size();
  try {
    g_grid_row(g.xs[i], g.zs, lambda, mu, plus, minus);
  } catch (const std::exception&) {
    for (std::size_t j = 0; j < g.zs.size(); ++j) plus[j] = minus[j] = std::numeric_limits<double>::quiet_NaN();
  }
}

}  // namespace

std::vector<WSample> w_grid_serial(double lambda, double mu, double epsilon, std::span<const double> xs,
                                   double y_star) {
  std::vector<WSample> out(xs.size());
  for (std::size_t i = 0; i < xs.size(); ++i) out[i] = w_point(lambda, mu, epsilon, xs[i], y_star);
  return out;
}

std::vector<WSample> w_grid_parallel(double lambda, double mu, double epsilon, std::span<const double> xs,
                                     double y_star) {
  std::vector<WSample> out(xs.size());
  const long n = static_cast<long>(xs.size());
#pragma omp parallel for schedule(static) num_threads(thread_count())
  for (long i = 0; i < n; ++i) {
    const auto k = static_cast<std::size_t>(i);
    out[k] = w_point(lambda, mu, epsilon, xs[k], y_star);
  }
  return out;
}

GGrid g_grid_serial(std::vector<double> xs, std::vector<double> zs, double lambda, double mu) {
  GGrid g = make_grid(std::move(xs), std::move(zs));
  for (std::size_t i = 0; i < g.xs.size(); ++i) grid_row_safe(g, i, lambda, mu);
  return g;
}

GGrid g_grid_parallel(std::vector<double> xs, std::vector<double> zs, double lambda, double mu) {
  GGrid g = make_grid(std::move(xs), std::move(zs));
  const long n = static_cast<long>(g.xs.size());
#pragma omp parallel for schedule(dynamic) num_threads(thread_count())
  for (long i = 0; i < n; ++i) grid_row_safe(g, static_cast<std::size_t>(i), lambda, mu);
  return g;
}

}  // namespace rabi::kernels
