#pragma once

#include "rabi/errors.hpp"

#include <cstddef>
#include <iosfwd>
#include <vector>

namespace rabi {

/// Dense symmetric matrix, full row-major storage.
class SymmetricMatrix {
 public:
  SymmetricMatrix() = default;
  explicit SymmetricMatrix(std::size_t n) : n_(n), a_(n * n, 0.0) {}

  std::size_t size() const { return n_; }
  double operator()(std::size_t i, std::size_t j) const { return a_[i * n_ + j]; }
  /// Sets both (i, j) and (j, i).
  void set(std::size_t i, std::size_t j, double v) {
    a_[i * n_ + j] = v;
    a_[j * n_ + i] = v;
  }
  double frobenius_norm() const;

  std::vector<double>& raw() { return a_; }
  const std::vector<double>& raw() const { return a_; }

 private:
  std::size_t n_ = 0;
  std::vector<double> a_;
};

/// Eigenpairs in ascending order. vectors[i * n + k] is component i of eigenvector k.
struct EigenSystem {
  std::vector<double> values;
  std::vector<double> vectors;
  int sweeps = 0;
};

/// Cyclic Jacobi rotations until the off-diagonal Frobenius norm drops below
/// rel_tol * ||A||_F. Throws NoConvergence after max_sweeps.
EigenSystem jacobi_eigen(const SymmetricMatrix& a, bool want_vectors, double rel_tol = 1e-12,
                         int max_sweeps = 100);

/// H = a^dag a + eps sigma_z + mu sigma_x + lambda sigma_z (a + a^dag) on the number
/// states 0..N-1 tensored with s = +1, -1; basis index 2n for s = +1 and 2n + 1 for s = -1.
struct TruncatedHamiltonian {
  double lambda = 0.0, mu = 0.0, epsilon = 0.0;
  std::size_t N = 0;
  SymmetricMatrix H;
};

inline std::size_t basis_index(std::size_t n, int s) { return 2 * n + (s == 1 ? 0 : 1); }

TruncatedHamiltonian build_hamiltonian(double lambda, double mu, double epsilon, std::size_t N);

std::vector<double> lowest_eigenvalues(const TruncatedHamiltonian& h, std::size_t k);

struct ConvergedSpectrum {
  std::vector<double> values;
  std::size_t N_used = 0;
};

/// Thrown when the cutoff cap is reached; carries the last iterate.
class OracleNoConvergence : public NoConvergence {
 public:
  OracleNoConvergence(const std::string& what, std::vector<double> last, std::size_t N)
      : NoConvergence(what), last_iterate(std::move(last)), last_N(N) {}
  std::vector<double> last_iterate;
  std::size_t last_N;
};

/// Doubles N from n_start until the k lowest eigenvalues move by less than tol
/// between N and 2N, and returns the values at N. Requires tol >= 1e-10.
ConvergedSpectrum converged_spectrum(double lambda, double mu, double epsilon, std::size_t k, double tol,
                                     std::size_t n_start = 64, std::size_t n_cap = 2048);

/// P = (-1)^(a^dag a) tensored with sigma_x; commutes with H when eps = 0.
SymmetricMatrix parity_operator(std::size_t N);

double commutator_norm(const SymmetricMatrix& a, const SymmetricMatrix& b);

struct ParityLabel {
  int sigma = 0;
  double expectation = 0.0;
  bool ambiguous = false;  ///< |<v|P|v>| <= 0.99, typically near a level crossing
};

/// Labels the k lowest eigenvectors by the sign of <v|P|v>. Requires eps == 0.
std::vector<ParityLabel> parity_labels(const TruncatedHamiltonian& h, std::size_t k);

/// One row of the oracle fixture: lambda mu epsilon N_used k E_1 ... E_k.
struct FixtureRow {
  double lambda = 0.0, mu = 0.0, epsilon = 0.0;
  std::size_t N_used = 0;
  std::vector<double> values;
};

void write_fixture(std::ostream& os, const std::vector<FixtureRow>& rows, double tol);
/// Skips blank lines and lines starting with '#'.
std::vector<FixtureRow> read_fixture(std::istream& is);

}  // namespace rabi
