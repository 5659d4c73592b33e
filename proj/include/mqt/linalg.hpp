#pragma once

/// @file linalg.hpp
/// Dense matrices over Z_p: echelon forms, kernels, solving, inversion,
/// Kronecker products and basis completion. Dimensions in this library are
/// small (a few dozen at most), so everything is plain Gauss-Jordan.

#include <algorithm>
#include <cstddef>
#include <initializer_list>
#include <optional>
#include <ostream>
#include <span>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mqt/field.hpp"

namespace mqt {

using Coords = std::vector<Residue>;

class Matrix {
 public:
  Matrix(FieldSpec f, std::size_t rows, std::size_t cols)
      : field_(f), rows_(rows), cols_(cols), data_(rows * cols, 0) {}

  /// Entries are reduced mod p, so negative literals are fine.
  Matrix(FieldSpec f, std::initializer_list<std::initializer_list<std::int64_t>> rows)
      : field_(f), rows_(rows.size()), cols_(rows.size() ? rows.begin()->size() : 0) {
    data_.reserve(rows_ * cols_);
    for (const auto& r : rows) {
      if (r.size() != cols_) throw std::invalid_argument("ragged matrix literal");
      for (auto v : r) data_.push_back(f.reduce(v));
    }
  }

  static Matrix identity(FieldSpec f, std::size_t n) {
    Matrix m(f, n, n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  static Matrix from_rows(FieldSpec f, std::size_t cols, const std::vector<Coords>& rows) {
    Matrix m(f, rows.size(), cols);
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (rows[i].size() != cols) throw std::invalid_argument("row length mismatch");
      for (std::size_t j = 0; j < cols; ++j) m(i, j) = f.reduce(rows[i][j]);
    }
    return m;
  }

  static Matrix column(FieldSpec f, std::span<const Residue> v) {
    Matrix m(f, v.size(), 1);
    for (std::size_t i = 0; i < v.size(); ++i) m(i, 0) = f.reduce(v[i]);
    return m;
  }

  [[nodiscard]] FieldSpec field() const noexcept { return field_; }
  [[nodiscard]] std::size_t rows() const noexcept { return rows_; }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }

  Residue& operator()(std::size_t i, std::size_t j) { return data_[i * cols_ + j]; }
  Residue operator()(std::size_t i, std::size_t j) const { return data_[i * cols_ + j]; }

  [[nodiscard]] Scalar at(std::size_t i, std::size_t j) const {
    return Scalar(field_, (*this)(i, j));
  }

  [[nodiscard]] Coords row(std::size_t i) const {
    return Coords(data_.begin() + static_cast<std::ptrdiff_t>(i * cols_),
                  data_.begin() + static_cast<std::ptrdiff_t>((i + 1) * cols_));
  }
  [[nodiscard]] std::vector<Coords> row_list() const {
    std::vector<Coords> out;
    out.reserve(rows_);
    for (std::size_t i = 0; i < rows_; ++i) out.push_back(row(i));
    return out;
  }

  [[nodiscard]] bool is_zero() const noexcept {
    return std::all_of(data_.begin(), data_.end(), [](Residue r) { return r == 0; });
  }

  [[nodiscard]] Matrix transpose() const {
    Matrix t(field_, cols_, rows_);
    for (std::size_t i = 0; i < rows_; ++i)
      for (std::size_t j = 0; j < cols_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend Matrix operator*(const Matrix& a, const Matrix& b) {
    if (!(a.field_ == b.field_)) throw std::invalid_argument("modulus mismatch");
    if (a.cols_ != b.rows_) throw std::invalid_argument("matrix product shape mismatch");
    const FieldSpec f = a.field_;
    const std::uint64_t p = f.modulus();
    Matrix c(f, a.rows_, b.cols_);
    for (std::size_t i = 0; i < a.rows_; ++i) {
      for (std::size_t j = 0; j < b.cols_; ++j) {
        std::uint64_t acc = 0;
        for (std::size_t k = 0; k < a.cols_; ++k) {
          acc = (acc + std::uint64_t{a(i, k)} * b(k, j)) % p;
        }
        c(i, j) = static_cast<Residue>(acc);
      }
    }
    return c;
  }

  friend bool operator==(const Matrix& a, const Matrix& b) {
    return a.field_ == b.field_ && a.rows_ == b.rows_ && a.cols_ == b.cols_ &&
           a.data_ == b.data_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Matrix& m) {
    os << '[';
    for (std::size_t i = 0; i < m.rows_; ++i) {
      os << (i ? ",[" : "[");
      for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? "," : "") << m(i, j);
      os << ']';
    }
    return os << ']';
  }

 private:
  FieldSpec field_;
  std::size_t rows_;
  std::size_t cols_;
  std::vector<Residue> data_;
};

/// Stacks matrices vertically; all must share a column count and field.
inline Matrix vstack(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("modulus mismatch");
  if (a.cols() != b.cols()) throw std::invalid_argument("vstack column mismatch");
  Matrix m(a.field(), a.rows() + b.rows(), a.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < a.cols(); ++j) m(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) m(a.rows() + i, j) = b(i, j);
  return m;
}

struct RrefResult {
  Matrix form;
  std::size_t rank;
  std::vector<std::size_t> pivots;
};

/// Reduced row echelon form. Zero rows trail; pivots are 1 and their columns
/// are otherwise zero.
inline RrefResult rref(Matrix m) {
  const FieldSpec f = m.field();
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < m.cols() && r < m.rows(); ++c) {
    std::size_t piv = r;
    while (piv < m.rows() && m(piv, c) == 0) ++piv;
    if (piv == m.rows()) continue;
    if (piv != r)
      for (std::size_t j = 0; j < m.cols(); ++j) std::swap(m(piv, j), m(r, j));
    const Residue scale = f.inv(m(r, c));
    for (std::size_t j = c; j < m.cols(); ++j) m(r, j) = f.mul(m(r, j), scale);
    for (std::size_t i = 0; i < m.rows(); ++i) {
      if (i == r || m(i, c) == 0) continue;
      const Residue factor = m(i, c);
      for (std::size_t j = c; j < m.cols(); ++j)
        m(i, j) = f.sub(m(i, j), f.mul(factor, m(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return {std::move(m), r, std::move(pivots)};
}

inline std::size_t rank(const Matrix& m) { return rref(m).rank; }

/// RREF with the zero rows dropped: the canonical basis of the row space.
inline Matrix row_space(const Matrix& m) {
  auto res = rref(m);
  Matrix out(m.field(), res.rank, m.cols());
  for (std::size_t i = 0; i < res.rank; ++i)
    for (std::size_t j = 0; j < m.cols(); ++j) out(i, j) = res.form(i, j);
  return out;
}

/// Basis (as rows) of { x : m x = 0 }. One row per free column, in column order.
inline Matrix kernel(const Matrix& m) {
  const FieldSpec f = m.field();
  auto res = rref(m);
  std::vector<bool> is_pivot(m.cols(), false);
  for (auto c : res.pivots) is_pivot[c] = true;
  Matrix k(f, m.cols() - res.rank, m.cols());
  std::size_t out = 0;
  for (std::size_t free = 0; free < m.cols(); ++free) {
    if (is_pivot[free]) continue;
    k(out, free) = 1;
    for (std::size_t i = 0; i < res.rank; ++i) k(out, res.pivots[i]) = f.neg(res.form(i, free));
    ++out;
  }
  return k;
}

/// Some x with a x = b, or nullopt when the system is inconsistent.
inline std::optional<Coords> solve(const Matrix& a, std::span<const Residue> b) {
  if (b.size() != a.rows()) throw std::invalid_argument("solve: right-hand side length mismatch");
  const FieldSpec f = a.field();
  Matrix aug(f, a.rows(), a.cols() + 1);
  for (std::size_t i = 0; i < a.rows(); ++i) {
    for (std::size_t j = 0; j < a.cols(); ++j) aug(i, j) = a(i, j);
    aug(i, a.cols()) = f.reduce(b[i]);
  }
  auto res = rref(std::move(aug));
  if (!res.pivots.empty() && res.pivots.back() == a.cols()) return std::nullopt;
  Coords x(a.cols(), 0);
  for (std::size_t i = 0; i < res.rank; ++i) x[res.pivots[i]] = res.form(i, a.cols());
  return x;
}

inline std::optional<Matrix> invert(const Matrix& m) {
  if (m.rows() != m.cols()) throw std::invalid_argument("invert: matrix is not square");
  const std::size_t n = m.rows();
  Matrix aug(m.field(), n, 2 * n);
  for (std::size_t i = 0; i < n; ++i) {
    for (std::size_t j = 0; j < n; ++j) aug(i, j) = m(i, j);
    aug(i, n + i) = 1;
  }
  auto res = rref(std::move(aug));
  if (res.rank < n || (n > 0 && res.pivots[n - 1] != n - 1)) return std::nullopt;
  Matrix inv(m.field(), n, n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) inv(i, j) = res.form(i, n + j);
  return inv;
}

/// Kronecker product, left factor major: kron(a,b)[(i1,i2),(j1,j2)] = a[i1,j1] b[i2,j2].
inline Matrix kron(const Matrix& a, const Matrix& b) {
  if (!(a.field() == b.field())) throw std::invalid_argument("modulus mismatch");
  const FieldSpec f = a.field();
  Matrix k(f, a.rows() * b.rows(), a.cols() * b.cols());
  for (std::size_t i1 = 0; i1 < a.rows(); ++i1)
    for (std::size_t j1 = 0; j1 < a.cols(); ++j1) {
      const Residue x = a(i1, j1);
      if (x == 0) continue;
      for (std::size_t i2 = 0; i2 < b.rows(); ++i2)
        for (std::size_t j2 = 0; j2 < b.cols(); ++j2)
          k(i1 * b.rows() + i2, j1 * b.cols() + j2) = f.mul(x, b(i2, j2));
    }
  return k;
}

inline Coords kron(const FieldSpec f, std::span<const Residue> a, std::span<const Residue> b) {
  Coords out(a.size() * b.size(), 0);
  for (std::size_t i = 0; i < a.size(); ++i)
    for (std::size_t j = 0; j < b.size(); ++j) out[i * b.size() + j] = f.mul(a[i], b[j]);
  return out;
}

/// Completes independent rows to an invertible square matrix. The input rows
/// come first; missing rows are standard basis vectors e_0, e_1, ... taken
/// greedily whenever they are independent of everything chosen so far.
inline Matrix extend_to_basis(const Matrix& rows) {
  if (rank(rows) != rows.rows()) throw std::invalid_argument("extend_to_basis: rows are dependent");
  const std::size_t n = rows.cols();
  Matrix acc = rows;
  for (std::size_t e = 0; e < n && acc.rows() < n; ++e) {
    Matrix unit(rows.field(), 1, n);
    unit(0, e) = 1;
    Matrix trial = vstack(acc, unit);
    if (rank(trial) == trial.rows()) acc = std::move(trial);
  }
  return acc;
}

}  // namespace mqt
