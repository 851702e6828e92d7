#include "rabi/fock.hpp"
#include "support.hpp"

#include <gtest/gtest.h>

#include <cmath>
#include <fstream>
#include <random>
#include <sstream>

using namespace rabi;

TEST(Hamiltonian, UncoupledIsNumberOperator) {
  const TruncatedHamiltonian h = build_hamiltonian(0, 0, 0, 6);
  for (std::size_t i = 0; i < 12; ++i)
    for (std::size_t j = 0; j < 12; ++j) EXPECT_EQ(h.H(i, j), i == j ? static_cast<double>(i / 2) : 0.0);
  EXPECT_THROW(build_hamiltonian(0.1, 0, 0, 1), std::invalid_argument);
}

TEST(Hamiltonian, EntryTable) {
  const TruncatedHamiltonian h = build_hamiltonian(0.7, 0.4, 0.2, 5);
  EXPECT_DOUBLE_EQ(h.H(basis_index(3, 1), basis_index(3, 1)), 3.2);
  EXPECT_DOUBLE_EQ(h.H(basis_index(3, -1), basis_index(3, -1)), 2.8);
  EXPECT_DOUBLE_EQ(h.H(basis_index(2, -1), basis_index(2, 1)), 0.4);
  EXPECT_DOUBLE_EQ(h.H(basis_index(3, 1), basis_index(2, 1)), 0.7 * std::sqrt(3.0));
  EXPECT_DOUBLE_EQ(h.H(basis_index(3, -1), basis_index(2, -1)), -0.7 * std::sqrt(3.0));
  EXPECT_EQ(h.H(basis_index(3, -1), basis_index(2, 1)), 0.0);
  for (std::size_t i = 0; i < 10; ++i)
    for (std::size_t j = 0; j < 10; ++j) EXPECT_EQ(h.H(i, j), h.H(j, i));
}

TEST(Jacobi, DiagonalInput) {
  SymmetricMatrix m(4);
  m.set(2, 2, 1.0);
  m.set(3, 3, 1.0);
  const auto es = jacobi_eigen(m, false);
  EXPECT_EQ(es.values[0], 0.0);
  EXPECT_EQ(es.values[1], 0.0);
  EXPECT_EQ(es.sweeps, 0);
}

TEST(Jacobi, EigenpairsOfRandomMatrix) {
  std::mt19937 rng(4);
  const std::size_t n = 30;
  SymmetricMatrix m(n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = i; j < n; ++j) m.set(i, j, rabi::testing::uniform(rng, -1, 1));
  const auto es = jacobi_eigen(m, true);
  double trace = 0.0, sum = 0.0;
  for (std::size_t i = 0; i < n; ++i) {
    trace += m(i, i);
    sum += es.values[i];
  }
  EXPECT_NEAR(trace, sum, 1e-12);
  for (std::size_t k = 0; k < n; ++k) {
    double res = 0.0, norm = 0.0;
    for (std::size_t i = 0; i < n; ++i) {
      double av = 0.0;
      for (std::size_t j = 0; j < n; ++j) av += m(i, j) * es.vectors[j * n + k];
      res = std::max(res, std::abs(av - es.values[k] * es.vectors[i * n + k]));
      norm += es.vectors[i * n + k] * es.vectors[i * n + k];
    }
    EXPECT_LT(res, 1e-10);
    EXPECT_NEAR(norm, 1.0, 1e-12);
    if (k > 0) EXPECT_LE(es.values[k - 1], es.values[k]);
  }
}

TEST(Jacobi, SweepCapRaises) {
  SymmetricMatrix m(3);
  m.set(0, 1, 1.0);
  m.set(1, 2, 0.5);
  m.set(0, 2, 0.3);
  EXPECT_THROW(jacobi_eigen(m, false, 1e-12, 0), NoConvergence);
}

TEST(Oracle, DecoupledQubit) {
  const auto v = lowest_eigenvalues(build_hamiltonian(0.0, 0.4, 0.0, 10), 4);
  const double expected[] = {-0.4, 0.4, 0.6, 1.4};
  for (int i = 0; i < 4; ++i) EXPECT_NEAR(v[i], expected[i], 1e-12);
  EXPECT_THROW(lowest_eigenvalues(build_hamiltonian(0.0, 0.4, 0.0, 2), 5), std::invalid_argument);
}

TEST(Oracle, ClosedFormLimits) {
  // lambda = 0: E = n -+ mu. mu = 0: E = n - lambda^2 -+ eps.
  const auto a = converged_spectrum(0.0, 0.4, 0.0, 8, 1e-10);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(a.values[i], i / 2 + (i % 2 == 0 ? -0.4 : 0.4), 1e-10);
  const auto b = converged_spectrum(0.7, 0.0, 0.2, 8, 1e-10);
  for (int i = 0; i < 8; ++i) EXPECT_NEAR(b.values[i], i / 2 - 0.49 + (i % 2 == 0 ? -0.2 : 0.2), 1e-10);
}

TEST(Oracle, ConvergenceStudy) {
  EXPECT_EQ(converged_spectrum(0.0, 0.4, 0.1, 8, 1e-10).N_used, 64u);
  const auto mid = converged_spectrum(0.7, 0.4, 0.0, 8, 1e-8);
  EXPECT_LT(mid.N_used, 2048u);
  const auto strong = converged_spectrum(1.5, 0.4, 0.0, 8, 1e-8);
  EXPECT_GE(strong.N_used, mid.N_used);
  try {
    converged_spectrum(0.7, 0.4, 0.0, 8, 1e-10, 64, 64);
    FAIL() << "expected OracleNoConvergence";
  } catch (const OracleNoConvergence& e) {
    EXPECT_EQ(e.last_N, 64u);
    EXPECT_EQ(e.last_iterate.size(), 8u);
  }
  EXPECT_THROW(converged_spectrum(0.7, 0.4, 0.0, 8, 1e-12), std::invalid_argument);
}

TEST(Oracle, VariationalMonotonicity) {
  auto prev = lowest_eigenvalues(build_hamiltonian(1.0, 0.4, 0.1, 16), 8);
  for (std::size_t N : {32u, 64u, 128u}) {
    const auto cur = lowest_eigenvalues(build_hamiltonian(1.0, 0.4, 0.1, N), 8);
    for (int i = 0; i < 8; ++i) EXPECT_LE(cur[i], prev[i] + 1e-12) << N << " " << i;
    prev = cur;
  }
}

TEST(Oracle, CouplingSignSymmetry) {
  const auto a = lowest_eigenvalues(build_hamiltonian(0.7, 0.4, 0.0, 80), 10);
  const auto b = lowest_eigenvalues(build_hamiltonian(-0.7, 0.4, 0.0, 80), 10);
  for (int i = 0; i < 10; ++i) EXPECT_NEAR(a[i], b[i], 1e-10);
}

TEST(Parity, CommutesOnlyWithoutBias) {
  const std::size_t N = 20;
  const SymmetricMatrix P = parity_operator(N);
  const auto h0 = build_hamiltonian(0.7, 0.4, 0.0, N);
  EXPECT_LT(commutator_norm(P, h0.H), 1e-12 * h0.H.frobenius_norm());
  const double c1 = commutator_norm(P, build_hamiltonian(0.7, 0.4, 0.1, N).H);
  const double c2 = commutator_norm(P, build_hamiltonian(0.7, 0.4, 0.2, N).H);
  EXPECT_GT(c1, 0.1);
  EXPECT_NEAR(c2 / c1, 2.0, 1e-12);
}

TEST(Parity, DecoupledLabels) {
  // lambda = 0, mu = 0.4: level n -+ mu has sigma = -+(-1)^n.
  const auto labels = parity_labels(build_hamiltonian(0.0, 0.4, 0.0, 10), 8);
  for (int i = 0; i < 8; ++i) {
    const int n = i / 2;
    const int sx = i % 2 == 0 ? -1 : 1;
    EXPECT_FALSE(labels[i].ambiguous);
    EXPECT_EQ(labels[i].sigma, sx * (n % 2 == 0 ? 1 : -1)) << i;
  }
  EXPECT_THROW(parity_labels(build_hamiltonian(0.0, 0.4, 0.2, 10), 2), std::invalid_argument);
}

TEST(Fixture, RoundTrip) {
  std::vector<FixtureRow> rows{{0.7, 0.4, 0.0, 128, {-0.70780506, 0.123456789012345678}}};
  std::stringstream ss;
  write_fixture(ss, rows, 1e-10);
  const auto back = read_fixture(ss);
  ASSERT_EQ(back.size(), 1u);
  EXPECT_EQ(back[0].N_used, 128u);
  EXPECT_EQ(back[0].values, rows[0].values);
  std::stringstream bad("0.7 0.4 0 64 3 1.0 2.0\n");
  EXPECT_THROW(read_fixture(bad), std::runtime_error);
}

TEST(Fixture, ReferenceValuesReproduce) {
  std::ifstream in(std::string(RABI_FIXTURE_DIR) + "/oracle_reference.txt");
  ASSERT_TRUE(in.good());
  const auto rows = read_fixture(in);
  ASSERT_EQ(rows.size(), 3u);
  for (const auto& r : rows) {
    ASSERT_EQ(r.values.size(), 8u);
    const auto now = converged_spectrum(r.lambda, r.mu, r.epsilon, 8, 1e-10);
    EXPECT_EQ(now.N_used, r.N_used);
    for (std::size_t i = 0; i < 8; ++i) EXPECT_NEAR(now.values[i], r.values[i], 1e-11);
  }
}
