// Acceptance suite: one PASS/FAIL line per criterion.
// Usage: rabi_acceptance <path-to-rabi_spectra> <scratch-dir>
#include "rabi/fock.hpp"
#include "rabi/frobenius.hpp"
#include "rabi/gfunction.hpp"
#include "rabi/heunc.hpp"
#include "rabi/wronskian.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <cstdlib>
#include <filesystem>
#include <fstream>
#include <functional>
#include <limits>
#include <random>
#include <sstream>
#include <string>
#include <vector>

using namespace rabi;
namespace fs = std::filesystem;

namespace {

struct Outcome {
  bool pass = false;
  std::string detail;
};

std::string num(double v) {
  char buf[40];
  std::snprintf(buf, sizeof buf, "%.3g", v);
  return buf;
}

double uni(std::mt19937& rng, double lo, double hi) { return std::uniform_real_distribution<double>(lo, hi)(rng); }

double rel(double a, double b) {
  const double m = std::max(std::abs(a), std::abs(b));
  return m == 0.0 ? 0.0 : std::abs(a - b) / m;
}

double nearest(double v, const std::vector<double>& set) {
  double best = std::numeric_limits<double>::infinity();
  for (double s : set) best = std::min(best, std::abs(v - s));
  return best;
}

std::vector<double> wronskian_roots(double lambda, double mu, double eps, double lo, double hi) {
  std::vector<double> xs;
  for (const auto& r : scan_roots(lambda, mu, eps, lo, hi, 0.002).records) xs.push_back(r.x);
  return xs;
}

Outcome oracle_agreement() {
  double worst = 0.0;
  std::size_t roots = 0, missed = 0;
  for (double eps : {0.0, 0.2}) {
    const double lambda = 0.7, mu = 0.4;
    const double lo = x_from_E(-2.0, lambda), hi = x_from_E(5.0, lambda);
    const SpectrumReport rep = scan_roots(lambda, mu, eps, lo, hi, 0.002);
    const std::vector<double> oracle = converged_spectrum(lambda, mu, eps, 16, 1e-10).values;
    std::vector<double> found;
    for (const auto& r : rep.records) {
      found.push_back(r.E);
      worst = std::max(worst, nearest(r.E, oracle));
      ++roots;
    }
    for (double E : oracle) {
      const ModelParams p = ModelParams::from_energy(E, lambda, mu, eps);
      if (E >= 5.0 || in_exclusion_zone(p)) continue;
      if (!(nearest(E, found) < 1e-6)) ++missed;
    }
  }
  return {worst < 1e-6 && missed == 0 && roots > 0,
          std::to_string(roots) + " roots, max |dE| = " + num(worst) + ", missed oracle levels = " + std::to_string(missed)};
}

Outcome refutation() {
  std::size_t isolated = 0;
  std::string where;
  for (double x : g_zeros(-0.43, 0.7, 0.4, 1, 0.0, 4.0)) {
    const ZeroClassification c = classify_zero(x, -0.43, 0.7, 0.4, 1);
    if (c.dg_rel > 1e-3 && c.w_rel > 1e-3) {
      ++isolated;
      where += " x=" + num(x) + " |G'|/scale=" + num(c.dg_rel) + " |W|/scale=" + num(c.w_rel);
    }
  }
  return {isolated > 0, std::to_string(isolated) + " isolated zero(s):" + where};
}

Outcome lucky_origin() {
  const std::vector<double> w = wronskian_roots(0.7, 0.4, 0.0, -0.99, 10.0);
  double worst = 0.0;
  std::size_t zeros = 0;
  for (int sigma : {1, -1}) {
    for (double x : g_zeros(0.0, 0.7, 0.4, sigma, -0.99, 10.0)) {
      worst = std::max(worst, nearest(x, w));
      ++zeros;
    }
  }
  return {zeros > 0 && worst < 1e-7, std::to_string(zeros) + " zeros of G at z*=0, max distance to a W root = " + num(worst)};
}

Outcome two_condition() {
  const double lo = -0.99, hi = 6.0;
  const std::vector<double> w = wronskian_roots(0.7, 0.4, 0.0, lo, hi);
  double worst = 0.0;
  bool sizes = true;
  std::string detail;
  for (double zs : {0.0, -0.43, 0.3}) {
    std::vector<double> both;
    for (int sigma : {1, -1}) {
      const auto r = two_condition_roots(zs, 0.7, 0.4, sigma, lo, hi);
      both.insert(both.end(), r.begin(), r.end());
    }
    for (double x : both) worst = std::max(worst, nearest(x, w));
    for (double x : w) worst = std::max(worst, nearest(x, both));
    sizes = sizes && both.size() == w.size();
    detail += " z*=" + num(zs) + ":" + std::to_string(both.size());
  }
  return {sizes && worst < 1e-7,
          std::to_string(w.size()) + " W roots; two-condition roots" + detail + "; max mismatch = " + num(worst)};
}

Outcome abel_invariance() {
  std::mt19937 rng(501);
  double worst = 0.0;
  int done = 0;
  while (done < 50) {
    const ModelParams p = ModelParams::from_x(uni(rng, 0.0, 5.0), uni(rng, 0.2, 1.5), uni(rng, 0.0, 1.0), uni(rng, 0.0, 0.3));
    if (in_exclusion_zone(p)) continue;
    const HeunLocalParams a0 = heun_params(p).a0;
    std::vector<double> c;
    for (double y : {0.3, 0.5, 0.6}) c.push_back(spectral_determinant(p, y).W * abel_factor(a0, y));
    worst = std::max({worst, rel(c[0], c[1]), rel(c[0], c[2])});
    ++done;
  }
  return {worst < 1e-8, "50 draws, max relative spread = " + num(worst)};
}

Outcome engine_cross() {
  std::mt19937 rng(601);
  double worst = 0.0;
  for (int i = 0; i < 50; ++i) {
    double beta;
    do beta = uni(rng, -3, 3);
    while (beta < 0.0 && std::abs(beta - std::round(beta)) < 0.05);
    const HeunLocalParams a{uni(rng, -4, 4), beta, uni(rng, -3, 3), uni(rng, -3, 3), uni(rng, -3, 3)};
    const FrobeniusSolution sol = local_series(heun_ode(a), 0.0, 0.0);
    for (double y : {0.1, 0.25, 0.5}) {
      const HeunValue h = heunc_eval(a, y);
      worst = std::max({worst, rel(evaluate(sol, y, 0).value, h.value), rel(evaluate(sol, y, 1).value, h.derivative)});
    }
  }
  return {worst < 1e-10, "50 draws, max relative difference = " + num(worst)};
}

Outcome g_ode() {
  std::mt19937 rng(701);
  double worst = 0.0;
  int done = 0;
  while (done < 100) {
    const double x = uni(rng, -0.9, 8.0);
    if (x > -kExclusionDelta && std::abs(x - std::round(x)) < kExclusionDelta) continue;
    const double z = uni(rng, -0.65, 0.65);
    worst = std::max(worst, g_ode_residual(z, x, 0.7, 0.4, done % 2 == 0 ? 1 : -1));
    ++done;
  }
  return {worst < 1e-8, "100 samples, max relative residual = " + num(worst)};
}

Outcome closed_forms() {
  double worst = 0.0;
  const auto a = converged_spectrum(0.0, 0.4, 0.0, 8, 1e-10).values;
  for (int i = 0; i < 8; ++i) worst = std::max(worst, std::abs(a[i] - (i / 2 + (i % 2 ? 0.4 : -0.4))));
  const auto b = converged_spectrum(0.7, 0.0, 0.2, 8, 1e-10).values;
  for (int i = 0; i < 8; ++i) worst = std::max(worst, std::abs(b[i] - (i / 2 - 0.49 + (i % 2 ? 0.2 : -0.2))));
  return {worst < 1e-10, "max deviation = " + num(worst)};
}

std::string slurp(const fs::path& p) {
  std::ifstream f(p, std::ios::binary);
  std::ostringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

Outcome figure_data(const std::string& exe, const fs::path& scratch) {
  const fs::path a = scratch / "run_a", b = scratch / "run_b";
  const std::vector<std::string> files{"fig1.csv", "fig2.csv", "fig3.csv", "fig5.csv"};
  double first_run = 0.0;
  for (const fs::path& d : {a, b}) {
    fs::remove_all(d);
    fs::create_directories(d);
    const std::string dir = "\"" + d.string() + "\"";
    const std::vector<std::string> cmds{
        "\"" + exe + "\" fig1 --out-dir " + dir,
        "\"" + exe + "\" fig2 --out-dir " + dir,
        "\"" + exe + "\" scan-w --lambda 0.7 --mu 0.4 --eps 0 --x 0:6:0.002 --out " + dir + "/fig3.csv",
        "\"" + exe + "\" fig5 --out-dir " + dir,
    };
    const auto t0 = std::chrono::steady_clock::now();
    for (const auto& c : cmds) {
      if (std::system((c + " > /dev/null").c_str()) != 0) return {false, "command failed: " + c};
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    if (d == a) first_run = dt.count();
  }
  bool same = true;
  std::string sizes;
  for (const auto& f : files) {
    const std::string x = slurp(a / f), y = slurp(b / f);
    same = same && !x.empty() && x == y;
    sizes += " " + f + "=" + std::to_string(std::count(x.begin(), x.end(), '\n') - 1) + " rows";
  }
  return {same && first_run < 120.0,
          "first run " + num(first_run) + " s," + sizes + (same ? ", byte-identical reruns" : ", reruns DIFFER")};
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 3) {
    std::fprintf(stderr, "usage: %s <rabi_spectra> <scratch-dir>\n", argv[0]);
    return 2;
  }
  const std::string exe = argv[1];
  const fs::path scratch = argv[2];

  struct Criterion {
    const char* name;
    double budget;  // seconds; 0 means no separate limit
    std::function<Outcome()> run;
  };
  const std::vector<Criterion> criteria{
      {"oracle agreement", 60, oracle_agreement},
      {"isolated zero of G+ at z*=-0.43", 30, refutation},
      {"G zeros at z*=0 are W roots (x<10)", 60, lucky_origin},
      {"two-condition roots equal W roots", 0, two_condition},
      {"Abel invariance of w", 0, abel_invariance},
      {"Heun series vs generic Frobenius engine", 0, engine_cross},
      {"G ODE residual", 0, g_ode},
      {"oracle closed-form limits", 0, closed_forms},
      {"figure data commands", 0, [&] { return figure_data(exe, scratch); }},
  };

  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& c = criteria[i];
    Outcome o;
    const auto t0 = std::chrono::steady_clock::now();
    try {
      o = c.run();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    const std::chrono::duration<double> dt = std::chrono::steady_clock::now() - t0;
    if (c.budget > 0 && dt.count() > c.budget) {
      o.pass = false;
      o.detail += "; over the " + num(c.budget) + " s budget";
    }
    if (!o.pass) ++failed;
    std::printf("%s [%zu] %s: %s (%.2f s)\n", o.pass ? "PASS" : "FAIL", i + 1, c.name, o.detail.c_str(), dt.count());
    std::fflush(stdout);
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? 0 : 1;
}
