#include <gtest/gtest.h>

#include <random>

#include "mqt/linalg.hpp"
#include "mqt/random.hpp"

using namespace mqt;

namespace {

/// Naive triple loop, used as the reference product.
Matrix naive_product(const Matrix& a, const Matrix& b) {
  const FieldSpec f = a.field();
  Matrix out(f, a.rows(), b.cols());
  for (std::size_t i = 0; i < a.rows(); ++i)
    for (std::size_t j = 0; j < b.cols(); ++j) {
      std::uint64_t s = 0;
      for (std::size_t k = 0; k < a.cols(); ++k) s += static_cast<std::uint64_t>(a(i, k)) * b(k, j);
      out(i, j) = static_cast<Residue>(s % f.modulus());
    }
  return out;
}

bool is_rref(const Matrix& m) {
  std::size_t last_pivot = 0;
  bool seen_zero_row = false;
  for (std::size_t i = 0; i < m.rows(); ++i) {
    std::size_t j = 0;
    while (j < m.cols() && m(i, j) == 0) ++j;
    if (j == m.cols()) {
      seen_zero_row = true;
      continue;
    }
    if (seen_zero_row) return false;
    if (i > 0 && j <= last_pivot) return false;
    if (m(i, j) != 1) return false;
    for (std::size_t k = 0; k < m.rows(); ++k)
      if (k != i && m(k, j) != 0) return false;
    last_pivot = j;
  }
  return true;
}

}  // namespace

TEST(Linalg, RrefOfKnownMatrix) {
  FieldSpec f(5);
  Matrix m(f, {{1, 2, 3}, {0, 1, 4}, {2, 0, 1}});
  auto r = rref(m);
  EXPECT_EQ(r.rank, 3u);
  EXPECT_EQ(r.form, Matrix::identity(f, 3));

  Matrix dep(f, {{1, 2, 3}, {2, 4, 6}});
  auto rd = rref(dep);
  EXPECT_EQ(rd.rank, 1u);
  EXPECT_EQ(rd.pivots, std::vector<std::size_t>{0});
  EXPECT_EQ(row_space(dep), Matrix(f, {{1, 2, 3}}));
}

TEST(Linalg, ProductMatchesNaive) {
  Rng rng(11);
  for (std::uint64_t p : {2, 3, 7, 65521}) {
    FieldSpec f(p);
    for (int i = 0; i < 50; ++i) {
      auto a = random_matrix(f, 1 + rng() % 5, 4, rng);
      auto b = random_matrix(f, 4, 1 + rng() % 5, rng);
      EXPECT_EQ(a * b, naive_product(a, b));
    }
  }
}

TEST(Linalg, RrefProperties) {
  Rng rng(12);
  for (std::uint64_t p : {2, 3, 5}) {
    FieldSpec f(p);
    for (int i = 0; i < 200; ++i) {
      auto m = random_matrix(f, 1 + rng() % 5, 1 + rng() % 6, rng);
      auto r = rref(m);
      EXPECT_TRUE(is_rref(r.form));
      // Same row space: each input row is solvable in the canonical rows and vice versa.
      const Matrix canon = row_space(m);
      EXPECT_EQ(rank(vstack(canon, m)), r.rank);
      EXPECT_EQ(row_space(vstack(m, m)), canon);
    }
  }
}

TEST(Linalg, KernelIsAnnihilatedAndHasComplementaryDimension) {
  Rng rng(13);
  for (std::uint64_t p : {2, 3, 5, 11}) {
    FieldSpec f(p);
    for (int i = 0; i < 200; ++i) {
      auto m = random_matrix(f, 1 + rng() % 5, 1 + rng() % 6, rng);
      auto k = kernel(m);
      EXPECT_EQ(k.rows() + rank(m), m.cols());
      if (k.rows() > 0) {
        EXPECT_TRUE((m * k.transpose()).is_zero());
        EXPECT_EQ(rank(k), k.rows());
      }
    }
  }
}

TEST(Linalg, SolveFindsSolutionsAndDetectsInconsistency) {
  Rng rng(14);
  FieldSpec f(7);
  for (int i = 0; i < 200; ++i) {
    auto a = random_matrix(f, 3, 4, rng);
    auto x = random_matrix(f, 4, 1, rng);
    Matrix b = a * x;
    Coords rhs(3);
    for (std::size_t r = 0; r < 3; ++r) rhs[r] = b(r, 0);
    auto sol = solve(a, rhs);
    ASSERT_TRUE(sol);
    Matrix xs(f, 4, 1);
    for (std::size_t r = 0; r < 4; ++r) xs(r, 0) = (*sol)[r];
    EXPECT_EQ(a * xs, b);
  }
  Matrix a(f, {{1, 1}, {2, 2}});
  EXPECT_FALSE(solve(a, Coords{1, 1}));
  EXPECT_TRUE(solve(a, Coords{1, 2}));
}

TEST(Linalg, InverseOfRandomInvertible) {
  Rng rng(15);
  for (std::uint64_t p : {2, 3, 5, 13}) {
    FieldSpec f(p);
    for (int i = 0; i < 100; ++i) {
      auto m = random_invertible(f, 1 + rng() % 5, rng);
      auto inv = invert(m);
      ASSERT_TRUE(inv);
      EXPECT_EQ(m * *inv, Matrix::identity(f, m.rows()));
      EXPECT_EQ(*inv * m, Matrix::identity(f, m.rows()));
    }
  }
  FieldSpec f(3);
  EXPECT_FALSE(invert(Matrix(f, {{1, 2}, {2, 1}})));
  EXPECT_THROW((void)invert(Matrix(f, 2, 3)), std::invalid_argument);
}

TEST(Linalg, KroneckerEntriesAndMixedProduct) {
  Rng rng(16);
  FieldSpec f(5);
  for (int i = 0; i < 50; ++i) {
    auto a = random_matrix(f, 2, 3, rng), b = random_matrix(f, 3, 2, rng);
    auto c = random_matrix(f, 3, 2, rng), d = random_matrix(f, 2, 2, rng);
    auto k = kron(a, b);
    ASSERT_EQ(k.rows(), 6u);
    ASSERT_EQ(k.cols(), 6u);
    for (std::size_t i1 = 0; i1 < 2; ++i1)
      for (std::size_t i2 = 0; i2 < 3; ++i2)
        for (std::size_t j1 = 0; j1 < 3; ++j1)
          for (std::size_t j2 = 0; j2 < 2; ++j2)
            EXPECT_EQ(k(i1 * 3 + i2, j1 * 2 + j2), (a(i1, j1) * b(i2, j2)) % 5);
    EXPECT_EQ(kron(a, b) * kron(c, d), kron(a * c, b * d));
  }
  Coords u{1, 2}, v{3, 4};
  EXPECT_EQ(kron(f, u, v), (Coords{3, 4, 1, 3}));
}

TEST(Linalg, ExtendToBasisIsGreedyAndKeepsInput) {
  FieldSpec f(2);
  Matrix rows(f, {{0, 1, 0}});
  auto full = extend_to_basis(rows);
  EXPECT_EQ(full, Matrix(f, {{0, 1, 0}, {1, 0, 0}, {0, 0, 1}}));
  EXPECT_THROW((void)extend_to_basis(Matrix(f, {{1, 1}, {1, 1}})), std::invalid_argument);

  Rng rng(17);
  FieldSpec f3(3);
  for (int i = 0; i < 100; ++i) {
    auto sub = random_matrix(f3, 1 + rng() % 3, 4, rng);
    if (rank(sub) != sub.rows()) continue;
    auto ext = extend_to_basis(sub);
    EXPECT_EQ(rank(ext), 4u);
    for (std::size_t r = 0; r < sub.rows(); ++r) EXPECT_EQ(ext.row(r), sub.row(r));
  }
}
