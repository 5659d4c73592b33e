#pragma once

/// @file random.hpp
/// Seeded random objects over Z_p for property checks and CLI demos.

#include <cstdint>
#include <random>
#include <string>
#include <vector>

#include "mqt/bipartite.hpp"
#include "mqt/channels.hpp"
#include "mqt/linalg.hpp"
#include "mqt/states.hpp"

namespace mqt {

using Rng = std::mt19937_64;

inline Residue random_residue(FieldSpec f, Rng& rng) {
  return std::uniform_int_distribution<Residue>(0, f.modulus() - 1)(rng);
}

inline Matrix random_matrix(FieldSpec f, std::size_t rows, std::size_t cols, Rng& rng) {
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i)
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = random_residue(f, rng);
  return m;
}

inline Matrix random_invertible(FieldSpec f, std::size_t n, Rng& rng) {
  while (true) {
    Matrix m = random_matrix(f, n, n, rng);
    if (rank(m) == n) return m;
  }
}

template <Variance V>
Vector<V> random_nonzero(const StateSpace& s, Rng& rng) {
  while (true) {
    Coords c(s.dim());
    for (auto& x : c) x = random_residue(s.field(), rng);
    Vector<V> v(s, std::move(c));
    if (!v.is_zero()) return v;
  }
}

/// Random subspace of the given dimension (rows of a random full-rank matrix).
template <Variance V>
Subspace<V> random_subspace(const StateSpace& s, std::size_t dim, Rng& rng) {
  while (true) {
    Matrix m = random_matrix(s.field(), dim, s.dim(), rng);
    if (rank(m) == dim) return Subspace<V>(s, m);
  }
}

/// Kraus operators drawn until their kernels meet only in zero.
inline TypeLMap random_unconditional_map(FieldSpec f, std::size_t d, std::size_t terms, Rng& rng) {
  while (true) {
    std::vector<Matrix> ops;
    for (std::size_t k = 0; k < terms; ++k) ops.push_back(random_matrix(f, d, d, rng));
    if (check_unconditional(ops)) return TypeLMap(std::move(ops));
  }
}

/// Pure state on F_p^d (x) F_p^d with Schmidt number d.
inline Ket random_full_schmidt_ket(FieldSpec f, std::size_t d, Rng& rng) {
  const Matrix psi = random_invertible(f, d, rng);
  const StateSpace rq = StateSpace::composite(f, {d, d});
  Coords c(d * d);
  for (std::size_t a = 0; a < d; ++a)
    for (std::size_t b = 0; b < d; ++b) c[a * d + b] = psi(a, b);
  return Ket(rq, std::move(c));
}

/// A basic measurement: the rows of a random invertible matrix, one effect each.
inline Measurement random_basis_measurement(const std::string& label, FieldSpec f, std::size_t d, Rng& rng) {
  const Matrix m = random_invertible(f, d, rng);
  std::vector<Bra> bras;
  for (std::size_t i = 0; i < d; ++i) bras.emplace_back(StateSpace(f, d), m.row(i));
  return basic_measurement(label, bras);
}

}  // namespace mqt
