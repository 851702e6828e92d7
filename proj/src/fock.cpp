#include "rabi/fock.hpp"

#include <algorithm>
#include <cmath>
#include <cstdio>
#include <istream>
#include <numeric>
#include <ostream>
#include <sstream>
#include <stdexcept>
#include <string>

namespace rabi {

double SymmetricMatrix::frobenius_norm() const {
  double s = 0.0;
  for (double v : a_) s += v * v;
  return std::sqrt(s);
}

namespace {

double off_diagonal_norm(const std::vector<double>& a, std::size_t n) {
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i + 1; j < n; ++j) s += 2.0 * a[i * n + j] * a[i * n + j];
  return std::sqrt(s);
}

}  // namespace

EigenSystem jacobi_eigen(const SymmetricMatrix& m, bool want_vectors, double rel_tol, int max_sweeps) {
  const std::size_t n = m.size();
  std::vector<double> a = m.raw();
  std::vector<double> v;
  if (want_vectors) {
    v.assign(n * n, 0.0);
    for (std::size_t i = 0; i < n; ++i) v[i * n + i] = 1.0;
  }
  const double target = rel_tol * m.frobenius_norm();

  EigenSystem out;
  bool converged = false;
  for (int sweep = 0; sweep <= max_sweeps; ++sweep) {
    if (off_diagonal_norm(a, n) <= target) {
      out.sweeps = sweep;
      converged = true;
      break;
    }
    if (sweep == max_sweeps) break;
    for (std::size_t p = 0; p + 1 < n; ++p) {
      for (std::size_t q = p + 1; q < n; ++q) {
        const double apq = a[p * n + q];
        if (apq == 0.0) continue;
        const double app = a[p * n + p];
        const double aqq = a[q * n + q];
        // Skip rotations that cannot change the diagonal at working precision.
        if (std::abs(apq) < 1e-300 ||
            (std::abs(app) + 1e3 * std::abs(apq) == std::abs(app) &&
             std::abs(aqq) + 1e3 * std::abs(apq) == std::abs(aqq) && sweep > 3)) {
          a[p * n + q] = a[q * n + p] = 0.0;
          continue;
        }
        const double theta = (aqq - app) / (2.0 * apq);
        const double t = std::copysign(1.0, theta) / (std::abs(theta) + std::sqrt(theta * theta + 1.0));
        const double c = 1.0 / std::sqrt(t * t + 1.0);
        const double s = t * c;
        const double tau = s / (1.0 + c);

        a[p * n + p] = app - t * apq;
        a[q * n + q] = aqq + t * apq;
        a[p * n + q] = a[q * n + p] = 0.0;
        for (std::size_t r = 0; r < n; ++r) {
          if (r == p || r == q) continue;
          const double g = a[r * n + p];
          const double h = a[r * n + q];
          const double gp = g - s * (h + g * tau);
          const double hq = h + s * (g - h * tau);
          a[r * n + p] = a[p * n + r] = gp;
          a[r * n + q] = a[q * n + r] = hq;
        }
        if (want_vectors) {
          for (std::size_t r = 0; r < n; ++r) {
            const double g = v[r * n + p];
            const double h = v[r * n + q];
            v[r * n + p] = g - s * (h + g * tau);
            v[r * n + q] = h + s * (g - h * tau);
          }
        }
      }
    }
  }
  if (!converged) throw NoConvergence("jacobi_eigen: no convergence after " + std::to_string(max_sweeps) + " sweeps");

  std::vector<std::size_t> order(n);
  std::iota(order.begin(), order.end(), 0);
  std::stable_sort(order.begin(), order.end(), [&](std::size_t i, std::size_t j) { return a[i * n + i] < a[j * n + j]; });
  out.values.resize(n);
  for (std::size_t k = 0; k < n; ++k) out.values[k] = a[order[k] * n + order[k]];
  if (want_vectors) {
    out.vectors.assign(n * n, 0.0);
    for (std::size_t k = 0; k < n; ++k)
      for (std::size_t i = 0; i < n; ++i) out.vectors[i * n + k] = v[i * n + order[k]];
  }
  return out;
}

TruncatedHamiltonian build_hamiltonian(double lambda, double mu, double epsilon, std::size_t N) {
  if (N < 2) throw std::invalid_argument("build_hamiltonian: need N >= 2");
  TruncatedHamiltonian h{lambda, mu, epsilon, N, SymmetricMatrix(2 * N)};
  for (std::size_t n = 0; n < N; ++n) {
    for (int s : {1, -1}) {
      const std::size_t i = basis_index(n, s);
      h.H.set(i, i, static_cast<double>(n) + s * epsilon);
      h.H.set(basis_index(n, -s), i, mu);
      if (n + 1 < N) h.H.set(basis_index(n + 1, s), i, s * lambda * std::sqrt(static_cast<double>(n + 1)));
    }
  }
  return h;
}

std::vector<double> lowest_eigenvalues(const TruncatedHamiltonian& h, std::size_t k) {
  if (k > h.H.size()) throw std::invalid_argument("lowest_eigenvalues: k exceeds the dimension");
  EigenSystem es = jacobi_eigen(h.H, false);
  es.values.resize(k);
  return es.values;
}

ConvergedSpectrum converged_spectrum(double lambda, double mu, double epsilon, std::size_t k, double tol,
                                     std::size_t n_start, std::size_t n_cap) {
  if (!(tol >= 1e-10)) throw std::invalid_argument("converged_spectrum: tol must be >= 1e-10");
  if (k > 2 * n_start) throw std::invalid_argument("converged_spectrum: k exceeds the starting dimension");
  std::size_t N = n_start;
  std::vector<double> prev = lowest_eigenvalues(build_hamiltonian(lambda, mu, epsilon, N), k);
  while (true) {
    if (2 * N > n_cap)
      throw OracleNoConvergence("converged_spectrum: cutoff cap " + std::to_string(n_cap) + " reached", prev, N);
    std::vector<double> cur = lowest_eigenvalues(build_hamiltonian(lambda, mu, epsilon, 2 * N), k);
    double moved = 0.0;
    for (std::size_t i = 0; i < k; ++i) moved = std::max(moved, std::abs(cur[i] - prev[i]));
    if (moved < tol) return {prev, N};
    prev = std::move(cur);
    N *= 2;
  }
}

SymmetricMatrix parity_operator(std::size_t N) {
  SymmetricMatrix p(2 * N);
  for (std::size_t n = 0; n < N; ++n) p.set(basis_index(n, 1), basis_index(n, -1), (n % 2 == 0) ? 1.0 : -1.0);
  return p;
}

double commutator_norm(const SymmetricMatrix& a, const SymmetricMatrix& b) {
  const std::size_t n = a.size();
  if (b.size() != n) throw std::invalid_argument("commutator_norm: size mismatch");
  double s = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) {
      double c = 0.0;
      for (std::size_t k = 0; k < n; ++k) c += a(i, k) * b(k, j) - b(i, k) * a(k, j);
      s += c * c;
    }
  }
  return std::sqrt(s);
}

std::vector<ParityLabel> parity_labels(const TruncatedHamiltonian& h, std::size_t k) {
  if (h.epsilon != 0.0) throw std::invalid_argument("parity_labels: parity is broken for epsilon != 0");
  const std::size_t dim = h.H.size();
  if (k > dim) throw std::invalid_argument("parity_labels: k exceeds the dimension");
  const EigenSystem es = jacobi_eigen(h.H, true);
  std::vector<ParityLabel> out(k);
  for (std::size_t col = 0; col < k; ++col) {
    double e = 0.0;
    for (std::size_t n = 0; n < h.N; ++n) {
      const double up = es.vectors[basis_index(n, 1) * dim + col];
      const double dn = es.vectors[basis_index(n, -1) * dim + col];
      e += ((n % 2 == 0) ? 2.0 : -2.0) * up * dn;
    }
    out[col].expectation = e;
    out[col].sigma = e >= 0.0 ? 1 : -1;
    out[col].ambiguous = std::abs(e) <= 0.99;
  }
  return out;
}

void write_fixture(std::ostream& os, const std::vector<FixtureRow>& rows, double tol) {
  char buf[96];
  std::snprintf(buf, sizeof buf, "%.3g", tol);
  os << "# lambda mu epsilon N_used k E_1 ... E_k  (tol " << buf << ")\n";
  for (const FixtureRow& r : rows) {
    std::snprintf(buf, sizeof buf, "%.17g %.17g %.17g", r.lambda, r.mu, r.epsilon);
    os << buf << ' ' << r.N_used << ' ' << r.values.size();
    for (double v : r.values) {
      std::snprintf(buf, sizeof buf, " %.17g", v);
      os << buf;
    }
    os << '\n';
  }
}

std::vector<FixtureRow> read_fixture(std::istream& is) {
  std::vector<FixtureRow> rows;
  std::string line;
  while (std::getline(is, line)) {
    const auto first = line.find_first_not_of(" \t\r");
    if (first == std::string::npos || line[first] == '#') continue;
    std::istringstream ls(line);
    FixtureRow r;
    std::size_t k = 0;
    if (!(ls >> r.lambda >> r.mu >> r.epsilon >> r.N_used >> k))
      throw std::runtime_error("read_fixture: malformed row: " + line);
    r.values.resize(k);
    for (double& v : r.values)
      if (!(ls >> v)) throw std::runtime_error("read_fixture: row has fewer than k values: " + line);
    rows.push_back(std::move(r));
  }
  return rows;
}

}  // namespace rabi
