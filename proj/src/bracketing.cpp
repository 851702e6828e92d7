#include "rabi/bracketing.hpp"

#include <algorithm>

namespace rabi {

std::vector<Interval> allowed_segments(double lo, double hi, std::span<const double> zone_centers,
                                       double half_width) {
  std::vector<Interval> zones;
  for (double c : zone_centers) {
    const double pad = 1e-12 * std::max(1.0, std::abs(c));
    zones.push_back({c - half_width - pad, c + half_width + pad});
  }
  std::sort(zones.begin(), zones.end(), [](const Interval& a, const Interval& b) { return a.lo < b.lo; });

  std::vector<Interval> out;
  double cursor = lo;
  for (const Interval& z : zones) {
    if (z.hi <= cursor) continue;
    if (z.lo >= hi) break;
    if (z.lo > cursor) out.push_back({cursor, z.lo});
    cursor = std::max(cursor, z.hi);
  }
  if (cursor < hi) out.push_back({cursor, hi});
  return out;
}

std::vector<double> segment_grid(const Interval& seg, double step) {
  std::vector<double> xs;
  if (!(seg.hi > seg.lo)) {
    xs.push_back(seg.lo);
    return xs;
  }
  const double n_steps = std::floor((seg.hi - seg.lo) / step);
  for (long i = 0; i <= static_cast<long>(n_steps); ++i) {
    const double x = seg.lo + static_cast<double>(i) * step;
    if (x < seg.hi) xs.push_back(x);
  }
  xs.push_back(seg.hi);
  return xs;
}

std::vector<double> integer_zone_centers(double lo, double hi, double shift, double w, double n_min) {
  std::vector<double> out;
  const double first = std::max(std::floor(lo - w - shift) - 1.0, n_min);
  for (double n = first; n + shift <= hi + w + 1.0; n += 1.0) out.push_back(n + shift);
  return out;
}

}  // namespace rabi
