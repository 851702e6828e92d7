#pragma once

// Grid kernels. Each has a serial reference and an OpenMP version; both produce
// identical output in input order, so tests compare them bit for bit.

#include "rabi/gfunction.hpp"

#include <span>
#include <vector>

namespace rabi::kernels {

struct WSample {
  double x = 0.0;
  double W = 0.0;
  double scale = 0.0;
  bool excluded = false;
  bool failed = false;  ///< numerical failure (W and scale are NaN)
};

std::vector<WSample> w_grid_serial(double lambda, double mu, double epsilon, std::span<const double> xs,
                                   double y_star = 0.5);
std::vector<WSample> w_grid_parallel(double lambda, double mu, double epsilon, std::span<const double> xs,
                                     double y_star = 0.5);

GGrid g_grid_serial(std::vector<double> xs, std::vector<double> zs, double lambda, double mu);
GGrid g_grid_parallel(std::vector<double> xs, std::vector<double> zs, double lambda, double mu);

/// Thread count for the parallel kernels: OpenMP's default, capped by the
/// RABI_SPECTRA_THREADS environment variable when it holds a positive integer.
int thread_count();

}  // namespace rabi::kernels
