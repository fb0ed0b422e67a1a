#pragma once

// Independent reference implementations used only by the test suites.
// Everything here is written directly from the problem statement, not by
// calling the library code it cross-checks.

#include <array>
#include <complex>
#include <cstdint>
#include <random>
#include <vector>

#include "paintseq/problem.hpp"

namespace oracles {

/// Literal three-sum evaluation of the penalized objective on a flat
/// bitstring (index k = (i-1)*n + (t-1)): transition costs over adjacent
/// positions plus the squared row/column one-hot penalties, computed
/// without any algebraic expansion.
inline double penalized_objective(const paintseq::ProblemInstance& instance, double alpha,
                                  const std::vector<int>& bits) {
  const int n = instance.size();
  const auto x = [&](int i, int t) { return bits[(i - 1) * n + (t - 1)]; };

  double value = 0.0;
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j) {
      if (i == j) continue;
      const double pair_cost =
          instance.changeover_between(i, j) * instance.rates.changeover +
          instance.repair_probability(i, j) * instance.rates.repair;
      for (int t = 2; t <= n; ++t) value += pair_cost * x(j, t - 1) * x(i, t);
    }
  for (int i = 1; i <= n; ++i) {
    int row = 0;
    for (int t = 1; t <= n; ++t) row += x(i, t);
    value += alpha * (row - 1) * (row - 1);
  }
  for (int t = 1; t <= n; ++t) {
    int column = 0;
    for (int i = 1; i <= n; ++i) column += x(i, t);
    value += alpha * (column - 1) * (column - 1);
  }
  return value;
}

inline std::vector<int> bits_of(std::uint64_t basis, int num_bits) {
  std::vector<int> bits(num_bits);
  for (int k = 0; k < num_bits; ++k) bits[k] = static_cast<int>((basis >> k) & 1u);
  return bits;
}

/// Mean of the penalized objective over every bitstring.
inline double mean_objective(const paintseq::ProblemInstance& instance, double alpha) {
  const int m = instance.size() * instance.size();
  double sum = 0.0;
  const std::uint64_t dim = std::uint64_t{1} << m;
  for (std::uint64_t b = 0; b < dim; ++b)
    sum += penalized_objective(instance, alpha, bits_of(b, m));
  return sum / static_cast<double>(dim);
}

/// All six orders of three vehicles, written out by hand.
inline const std::vector<std::vector<int>>& all_orders_of_three() {
  static const std::vector<std::vector<int>> orders = {
      {1, 2, 3}, {1, 3, 2}, {2, 1, 3}, {2, 3, 1}, {3, 1, 2}, {3, 2, 1}};
  return orders;
}

// ---------------------------------------------------------------------------
// Dense matrix oracle for the mixer: builds H as a sum of Kronecker-product
// Pauli-X terms and exponentiates it with generic scaling-and-squaring.

using Complex = std::complex<double>;
using Matrix = std::vector<std::vector<Complex>>;

inline Matrix identity_matrix(std::size_t dim) {
  Matrix m(dim, std::vector<Complex>(dim, Complex(0, 0)));
  for (std::size_t i = 0; i < dim; ++i) m[i][i] = Complex(1, 0);
  return m;
}

inline Matrix kronecker(const Matrix& a, const Matrix& b) {
  const std::size_t ra = a.size(), rb = b.size();
  Matrix out(ra * rb, std::vector<Complex>(ra * rb, Complex(0, 0)));
  for (std::size_t i = 0; i < ra; ++i)
    for (std::size_t j = 0; j < ra; ++j)
      for (std::size_t k = 0; k < rb; ++k)
        for (std::size_t l = 0; l < rb; ++l) out[i * rb + k][j * rb + l] = a[i][j] * b[k][l];
  return out;
}

inline Matrix matrix_product(const Matrix& a, const Matrix& b) {
  const std::size_t dim = a.size();
  Matrix out(dim, std::vector<Complex>(dim, Complex(0, 0)));
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t k = 0; k < dim; ++k) {
      const Complex aik = a[i][k];
      if (aik == Complex(0, 0)) continue;
      for (std::size_t j = 0; j < dim; ++j) out[i][j] += aik * b[k][j];
    }
  return out;
}

/// exp(M) by scaling and squaring with a truncated Taylor series.
inline Matrix matrix_exponential(const Matrix& m) {
  const std::size_t dim = m.size();
  double max_row = 0.0;
  for (const auto& row : m) {
    double sum = 0.0;
    for (const Complex& entry : row) sum += std::abs(entry);
    max_row = std::max(max_row, sum);
  }
  int scaling = 0;
  while (max_row / std::pow(2.0, scaling) > 0.5) ++scaling;

  Matrix scaled(dim, std::vector<Complex>(dim));
  const double factor = std::pow(2.0, -scaling);
  for (std::size_t i = 0; i < dim; ++i)
    for (std::size_t j = 0; j < dim; ++j) scaled[i][j] = m[i][j] * factor;

  Matrix result = identity_matrix(dim);
  Matrix term = identity_matrix(dim);
  for (int k = 1; k <= 24; ++k) {
    term = matrix_product(term, scaled);
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) {
        term[i][j] /= static_cast<double>(k);
        result[i][j] += term[i][j];
      }
  }
  for (int s = 0; s < scaling; ++s) result = matrix_product(result, result);
  return result;
}

/// Transverse-field Hamiltonian: a Pauli-X on each of m qubits, qubit 0 on
/// the least-significant bit of the basis index.
inline Matrix transverse_field_hamiltonian(int num_qubits) {
  const Matrix pauli_x = {{Complex(0, 0), Complex(1, 0)}, {Complex(1, 0), Complex(0, 0)}};
  const std::size_t dim = std::size_t{1} << num_qubits;
  Matrix h(dim, std::vector<Complex>(dim, Complex(0, 0)));
  for (int k = 0; k < num_qubits; ++k) {
    Matrix term = kronecker(identity_matrix(std::size_t{1} << (num_qubits - 1 - k)),
                            kronecker(pauli_x, identity_matrix(std::size_t{1} << k)));
    for (std::size_t i = 0; i < dim; ++i)
      for (std::size_t j = 0; j < dim; ++j) h[i][j] += term[i][j];
  }
  return h;
}

/// exp(-i beta H) for the transverse field, as a dense matrix.
inline Matrix dense_mixer(int num_qubits, double beta) {
  Matrix h = transverse_field_hamiltonian(num_qubits);
  for (auto& row : h)
    for (Complex& entry : row) entry *= Complex(0, -beta);
  return matrix_exponential(h);
}

inline std::vector<Complex> apply_matrix(const Matrix& m, const std::vector<Complex>& v) {
  std::vector<Complex> out(v.size(), Complex(0, 0));
  for (std::size_t i = 0; i < m.size(); ++i)
    for (std::size_t j = 0; j < m.size(); ++j) out[i] += m[i][j] * v[j];
  return out;
}

// ---------------------------------------------------------------------------
// Seeded fixture generation shared by the property and acceptance tests.

inline double unit_draw(std::mt19937_64& rng) {
  return static_cast<double>(rng() >> 11) * 0x1.0p-53;
}

inline paintseq::ProblemInstance random_instance(std::uint64_t seed, int n) {
  static const std::array<const char*, 3> kColors = {"red", "white", "black"};
  static const std::array<const char*, 2> kStyles = {"A", "B"};
  std::mt19937_64 rng(seed);

  std::vector<paintseq::Vehicle> vehicles;
  for (int id = 1; id <= n; ++id) {
    paintseq::Vehicle v;
    v.id = id;
    v.color = kColors[rng() % kColors.size()];
    v.style = kStyles[rng() % kStyles.size()];
    vehicles.push_back(std::move(v));
  }

  paintseq::CostRates rates;
  rates.changeover = 5.0 + 25.0 * unit_draw(rng);
  rates.repair = 40.0 + 120.0 * unit_draw(rng);

  paintseq::RepairModel repair(n);
  for (int i = 1; i <= n; ++i)
    for (int j = 1; j <= n; ++j)
      if (i != j) repair.set(i, j, 0.05 + 0.9 * unit_draw(rng));

  return paintseq::make_instance(std::move(vehicles), rates, std::move(repair));
}

}  // namespace oracles
