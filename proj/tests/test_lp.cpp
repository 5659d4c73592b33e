#include <gtest/gtest.h>

#include <optional>
#include <random>

#include "mqt/lp.hpp"

using namespace mqt;

namespace {

LinearConstraint row(std::vector<std::pair<std::size_t, Rational>> terms, Relation rel, Rational rhs) {
  return {std::move(terms), rel, std::move(rhs), ""};
}

/// Solves the square system a x = b; empty when singular.
std::optional<std::vector<Rational>> gauss(std::vector<std::vector<Rational>> a, std::vector<Rational> b) {
  const std::size_t n = b.size();
  for (std::size_t c = 0; c < n; ++c) {
    std::size_t p = c;
    while (p < n && a[p][c] == 0) ++p;
    if (p == n) return std::nullopt;
    std::swap(a[p], a[c]);
    std::swap(b[p], b[c]);
    for (std::size_t r = 0; r < n; ++r) {
      if (r == c || a[r][c] == 0) continue;
      const Rational k = a[r][c] / a[c][c];
      for (std::size_t j = c; j < n; ++j) a[r][j] -= k * a[c][j];
      b[r] -= k * b[c];
    }
  }
  for (std::size_t i = 0; i < n; ++i) b[i] /= a[i][i];
  return b;
}

/// Best objective over the vertices of a bounded problem; empty if none are feasible.
std::optional<Rational> vertex_oracle(const LinearProgram& lp) {
  const std::size_t n = lp.variables();
  std::vector<std::vector<Rational>> rows;
  std::vector<Rational> rhs;
  for (const auto& c : lp.constraints()) {
    std::vector<Rational> dense(n);
    for (const auto& [v, a] : c.terms) dense[v] += a;
    rows.push_back(dense);
    rhs.push_back(c.rhs);
  }
  for (std::size_t j = 0; j < n; ++j) {
    std::vector<Rational> e(n);
    e[j] = 1;
    rows.push_back(e);
    rhs.push_back(0);
  }
  std::optional<Rational> best;
  std::vector<std::size_t> pick(n);
  auto recurse = [&](auto&& self, std::size_t depth, std::size_t start) -> void {
    if (depth == n) {
      std::vector<std::vector<Rational>> a;
      std::vector<Rational> b;
      for (auto i : pick) {
        a.push_back(rows[i]);
        b.push_back(rhs[i]);
      }
      const auto x = gauss(a, b);
      if (!x || !is_feasible_point(lp, *x)) return;
      Rational v = 0;
      for (std::size_t j = 0; j < n; ++j) v += lp.objective()[j] * (*x)[j];
      if (!best || (lp.sense() == Sense::maximize ? v > *best : v < *best)) best = v;
      return;
    }
    for (std::size_t i = start; i < rows.size(); ++i) {
      pick[depth] = i;
      self(self, depth + 1, i + 1);
    }
  };
  recurse(recurse, 0, 0);
  return best;
}

}  // namespace

TEST(Lp, KnownOptimum) {
  LinearProgram lp(2);
  lp.add(row({{0, 1}, {1, 2}}, Relation::le, 4));
  lp.add(row({{0, 3}, {1, 1}}, Relation::le, 6));
  lp.set_objective({1, 1}, Sense::maximize);
  const auto r = solve(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.value, Rational(14, 5));
  EXPECT_EQ(r.x[0], Rational(8, 5));
  EXPECT_EQ(r.x[1], Rational(6, 5));
  EXPECT_TRUE(is_feasible_point(lp, r.x));
}

TEST(Lp, EqualityAndGreaterRows) {
  LinearProgram lp(3);
  lp.add(row({{0, 1}, {1, 1}, {2, 1}}, Relation::eq, 1));
  lp.add(row({{0, 1}, {1, -1}}, Relation::ge, Rational(1, 3)));
  lp.set_objective({0, 1, 2}, Sense::minimize);
  const auto r = solve(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.value, 0);
  EXPECT_TRUE(is_feasible_point(lp, r.x));
}

TEST(Lp, InfeasibleWithCertificate) {
  LinearProgram lp(2);
  lp.add(row({{0, 1}, {1, 1}}, Relation::eq, 1));
  lp.add(row({{0, 1}}, Relation::ge, 2));
  const auto r = solve(lp);
  ASSERT_EQ(r.status, LpStatus::infeasible);
  EXPECT_TRUE(verify_farkas(lp, r.farkas));
  std::vector<Rational> wrong(r.farkas.size());
  EXPECT_FALSE(verify_farkas(lp, wrong));
}

TEST(Lp, NegativeRightHandSides) {
  LinearProgram lp(1);
  lp.add(row({{0, -1}}, Relation::le, -3));
  lp.add(row({{0, 1}}, Relation::le, 2));
  const auto r = solve(lp);
  ASSERT_EQ(r.status, LpStatus::infeasible);
  EXPECT_TRUE(verify_farkas(lp, r.farkas));
}

TEST(Lp, Unbounded) {
  LinearProgram lp(2);
  lp.add(row({{0, 1}, {1, -1}}, Relation::le, 1));
  lp.set_objective({1, 0}, Sense::maximize);
  EXPECT_EQ(solve(lp).status, LpStatus::unbounded);
}

TEST(Lp, CyclingExampleTerminates) {
  LinearProgram lp(4);
  lp.add(row({{0, Rational(1, 2)}, {1, Rational(-11, 2)}, {2, Rational(-5, 2)}, {3, 9}}, Relation::le, 0));
  lp.add(row({{0, Rational(1, 2)}, {1, Rational(-3, 2)}, {2, Rational(-1, 2)}, {3, 1}}, Relation::le, 0));
  lp.add(row({{0, 1}}, Relation::le, 1));
  lp.set_objective({10, -57, -9, -24}, Sense::maximize);
  const auto r = solve(lp);
  ASSERT_EQ(r.status, LpStatus::optimal);
  EXPECT_EQ(r.value, 1);
  EXPECT_TRUE(is_feasible_point(lp, r.x));
}

TEST(Lp, RejectsUnknownVariables) {
  LinearProgram lp(1);
  EXPECT_THROW(lp.add(row({{3, 1}}, Relation::le, 1)), std::out_of_range);
  EXPECT_THROW(lp.set_objective({1, 2}, Sense::minimize), std::invalid_argument);
}

TEST(Lp, RandomProblemsAgreeWithVertexEnumeration) {
  std::mt19937_64 rng(51);
  std::uniform_int_distribution<int> coeff(-4, 4);
  int optimal = 0, infeasible = 0;
  for (int trial = 0; trial < 300; ++trial) {
    const std::size_t n = 2 + rng() % 2;
    LinearProgram lp(n);
    for (std::size_t j = 0; j < n; ++j) lp.add(row({{j, 1}}, Relation::le, 6));
    const std::size_t m = 1 + rng() % 4;
    for (std::size_t i = 0; i < m; ++i) {
      std::vector<std::pair<std::size_t, Rational>> terms;
      for (std::size_t j = 0; j < n; ++j) terms.emplace_back(j, coeff(rng));
      const auto rel = static_cast<Relation>(rng() % 3);
      lp.add(row(std::move(terms), rel, coeff(rng) * 2));
    }
    std::vector<Rational> obj;
    for (std::size_t j = 0; j < n; ++j) obj.emplace_back(coeff(rng));
    lp.set_objective(obj, rng() % 2 ? Sense::maximize : Sense::minimize);

    const auto r = solve(lp);
    const auto expect = vertex_oracle(lp);
    ASSERT_NE(r.status, LpStatus::unbounded);
    if (expect) {
      ASSERT_EQ(r.status, LpStatus::optimal) << trial;
      EXPECT_EQ(r.value, *expect) << trial;
      EXPECT_TRUE(is_feasible_point(lp, r.x));
      ++optimal;
    } else {
      ASSERT_EQ(r.status, LpStatus::infeasible) << trial;
      EXPECT_TRUE(verify_farkas(lp, r.farkas)) << trial;
      ++infeasible;
    }
  }
  EXPECT_GT(optimal, 30);
  EXPECT_GT(infeasible, 30);
}
