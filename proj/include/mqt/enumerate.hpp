#pragma once

/// @file enumerate.hpp
/// Exhaustive enumeration of projective points, subspaces and bases of a
/// small space. All orders are deterministic and lexicographic.

#include <algorithm>
#include <cstdint>
#include <stdexcept>
#include <vector>

#include "mqt/states.hpp"

namespace mqt {

inline constexpr std::uint64_t kDefaultEnumerationBudget = std::uint64_t{1} << 22;

namespace detail {

inline std::uint64_t checked_pow(std::uint64_t base, std::size_t exp, std::uint64_t budget) {
  std::uint64_t r = 1;
  for (std::size_t i = 0; i < exp; ++i) {
    if (r > budget / base) throw std::length_error("enumeration budget exceeded");
    r *= base;
  }
  return r;
}

/// Advances a base-p odometer (last coordinate fastest). False on wrap-around.
inline bool next_coords(Coords& c, Residue p) {
  for (std::size_t i = c.size(); i-- > 0;) {
    if (++c[i] < p) return true;
    c[i] = 0;
  }
  return false;
}

inline bool next_combination(std::vector<std::size_t>& idx, std::size_t n) {
  const std::size_t k = idx.size();
  for (std::size_t i = k; i-- > 0;) {
    if (idx[i] < n - k + i) {
      ++idx[i];
      for (std::size_t j = i + 1; j < k; ++j) idx[j] = idx[j - 1] + 1;
      return true;
    }
  }
  return false;
}

}  // namespace detail

/// One representative per line: first nonzero coordinate equal to 1.
template <Variance V>
std::vector<Vector<V>> projective_points(const StateSpace& space,
                                         std::uint64_t budget = kDefaultEnumerationBudget) {
  const Residue p = space.field().modulus();
  detail::checked_pow(p, space.dim(), budget);
  std::vector<Vector<V>> out;
  Coords c(space.dim(), 0);
  while (detail::next_coords(c, p)) {
    auto it = std::find_if(c.begin(), c.end(), [](Residue r) { return r != 0; });
    if (*it == 1) out.emplace_back(space, c);
  }
  return out;
}

/// Every subspace, by increasing dimension, then pivot set, then free entries.
template <Variance V>
std::vector<Subspace<V>> all_subspaces(const StateSpace& space,
                                       std::uint64_t budget = kDefaultEnumerationBudget) {
  const FieldSpec f = space.field();
  const Residue p = f.modulus();
  const std::size_t d = space.dim();
  detail::checked_pow(p, d, budget);
  std::vector<Subspace<V>> out;
  out.push_back(Subspace<V>::null(space));
  for (std::size_t k = 1; k <= d; ++k) {
    std::vector<std::size_t> piv(k);
    for (std::size_t i = 0; i < k; ++i) piv[i] = i;
    do {
      std::vector<bool> is_piv(d, false);
      for (auto c : piv) is_piv[c] = true;
      std::vector<std::pair<std::size_t, std::size_t>> free_cells;
      for (std::size_t i = 0; i < k; ++i)
        for (std::size_t j = piv[i] + 1; j < d; ++j)
          if (!is_piv[j]) free_cells.emplace_back(i, j);
      detail::checked_pow(p, free_cells.size(), budget);
      Coords vals(free_cells.size(), 0);
      do {
        Matrix m(f, k, d);
        for (std::size_t i = 0; i < k; ++i) m(i, piv[i]) = 1;
        for (std::size_t t = 0; t < free_cells.size(); ++t)
          m(free_cells[t].first, free_cells[t].second) = vals[t];
        out.emplace_back(space, m);
        if (out.size() > budget) throw std::length_error("enumeration budget exceeded");
      } while (detail::next_coords(vals, p));
    } while (detail::next_combination(piv, d));
  }
  return out;
}

/// Unordered bases made of projective points, each listed in point order.
template <Variance V>
std::vector<std::vector<Vector<V>>> all_bases(const StateSpace& space,
                                              std::uint64_t budget = kDefaultEnumerationBudget) {
  const auto points = projective_points<V>(space, budget);
  const std::size_t d = space.dim();
  std::vector<std::vector<Vector<V>>> out;
  std::vector<std::size_t> chosen;
  std::uint64_t visited = 0;
  // Depth-first over increasing index sets, pruning dependent prefixes.
  auto recurse = [&](auto&& self, std::size_t start, const Matrix& acc) -> void {
    if (chosen.size() == d) {
      std::vector<Vector<V>> b;
      for (auto i : chosen) b.push_back(points[i]);
      out.push_back(std::move(b));
      return;
    }
    for (std::size_t i = start; i < points.size(); ++i) {
      if (++visited > budget) throw std::length_error("enumeration budget exceeded");
      Matrix next = vstack(acc, Matrix::from_rows(space.field(), d, {points[i].coords()}));
      if (rank(next) != next.rows()) continue;
      chosen.push_back(i);
      self(self, i + 1, next);
      chosen.pop_back();
    }
  };
  recurse(recurse, 0, Matrix(space.field(), 0, d));
  return out;
}

inline std::uint64_t projective_point_count(std::uint64_t p, std::size_t d) {
  std::uint64_t n = 1;
  for (std::size_t i = 0; i < d; ++i) n *= p;
  return (n - 1) / (p - 1);
}

}  // namespace mqt
