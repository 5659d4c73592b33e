#pragma once

/// @file bipartite.hpp
/// Pure bipartite states: Schmidt decomposition, purification, and the
/// invertible maps relating purifications or mixtures of one mixed state.

#include <optional>
#include <stdexcept>
#include <vector>

#include "mqt/linalg.hpp"
#include "mqt/states.hpp"

namespace mqt {

namespace detail {

inline void require_bipartite(const StateSpace& s) {
  if (s.factor_count() != 2) throw std::invalid_argument("expected a bipartite space");
}

/// Psi(a, b) = coefficient of |a> (x) |b>.
inline Matrix coefficient_matrix(const Ket& psi) {
  require_bipartite(psi.space());
  const auto dr = psi.space().factors()[0];
  const auto dq = psi.space().factors()[1];
  Matrix m(psi.space().field(), dr, dq);
  for (std::size_t a = 0; a < dr; ++a)
    for (std::size_t b = 0; b < dq; ++b) m(a, b) = psi.coords()[a * dq + b];
  return m;
}

/// Coordinates of each row of `rows` in the (independent) rows of `basis`.
inline Matrix coordinates_in(const Matrix& rows, const Matrix& basis) {
  Matrix bt = basis.transpose();
  Matrix out(rows.field(), rows.rows(), basis.rows());
  for (std::size_t i = 0; i < rows.rows(); ++i) {
    auto x = solve(bt, rows.row(i));
    if (!x) throw std::invalid_argument("vector outside the expected span");
    for (std::size_t j = 0; j < basis.rows(); ++j) out(i, j) = (*x)[j];
  }
  return out;
}

}  // namespace detail

struct SchmidtDecomposition {
  std::size_t rank;  ///< Schmidt number s
  Matrix r_basis;    ///< rows |k^R>, invertible
  Matrix q_basis;    ///< rows |k^Q>, invertible
};

/// psi = sum_{k<s} |k^R> (x) |k^Q> in the returned bases. The R basis
/// completes the reduced R state greedily; the Q basis starts with the
/// conditional states psi_k.
inline SchmidtDecomposition schmidt(const Ket& psi) {
  detail::require_bipartite(psi.space());
  if (psi.is_zero()) throw std::invalid_argument("schmidt: zero vector");
  const FieldSpec f = psi.space().field();
  const auto state = span(psi);
  const auto m_r = reduce(state, 1);
  const auto m_q = reduce(state, 0);
  if (m_r.dim() != m_q.dim()) throw std::logic_error("schmidt: reduction dimensions disagree");
  const std::size_t s = m_r.dim();

  Matrix r_basis = extend_to_basis(m_r.basis());
  Matrix coeffs = invert(r_basis)->transpose() * detail::coefficient_matrix(psi);
  Matrix leading(f, s, coeffs.cols());
  for (std::size_t k = 0; k < coeffs.rows(); ++k)
    for (std::size_t j = 0; j < coeffs.cols(); ++j) {
      if (k < s) {
        leading(k, j) = coeffs(k, j);
      } else if (coeffs(k, j) != 0) {
        throw std::logic_error("schmidt: state escapes its reduced R support");
      }
    }
  return {s, std::move(r_basis), extend_to_basis(leading)};
}

/// sum_i |i^R> (x) |m_i^Q> over the canonical basis of m; dim R = dim m.
inline Ket purify(const MixedState& m) {
  if (m.is_null()) throw std::invalid_argument("purify: null subspace");
  const FieldSpec f = m.space().field();
  StateSpace r(f, m.dim());
  StateSpace rq = tensor(r, m.space());
  Coords c(rq.dim(), 0);
  for (std::size_t i = 0; i < m.dim(); ++i) {
    auto term = kron(f, Ket::basis_vector(r, i).coords(), m.basis().row(i));
    for (std::size_t j = 0; j < c.size(); ++j) c[j] = f.add(c[j], term[j]);
  }
  return Ket(rq, std::move(c));
}

/// Invertible T on R with (T (x) 1)|psi1> = |psi2>, found by matching the
/// R-side coefficient matrices over a common Q basis. Empty when the two
/// states reduce to different Q states.
inline std::optional<Matrix> connect_purifications(const Ket& psi1, const Ket& psi2) {
  require_same_space(psi1.space(), psi2.space());
  detail::require_bipartite(psi1.space());
  if (psi1.is_zero() || psi2.is_zero()) throw std::invalid_argument("connect_purifications: zero vector");
  const auto q1 = reduce(span(psi1), 0);
  const auto q2 = reduce(span(psi2), 0);
  if (!(q1 == q2)) return std::nullopt;

  const Matrix& qb = q1.basis();
  Matrix x1 = detail::coordinates_in(detail::coefficient_matrix(psi1), qb);
  Matrix x2 = detail::coordinates_in(detail::coefficient_matrix(psi2), qb);
  Matrix p1 = extend_to_basis(x1.transpose()).transpose();
  Matrix p2 = extend_to_basis(x2.transpose()).transpose();
  return p2 * *invert(p1);
}

/// T with |psi_{l,2}> = sum_k T_lk |psi_{k,1}>, for two bases of one subspace.
inline Matrix connect_mixtures(const std::vector<Ket>& set1, const std::vector<Ket>& set2) {
  if (set1.empty() || set1.size() != set2.size())
    throw std::invalid_argument("connect_mixtures: cardinality mismatch");
  const StateSpace& space = set1.front().space();
  const auto m1 = span(set1, space);
  const auto m2 = span(set2, space);
  if (!(m1 == m2)) throw std::invalid_argument("connect_mixtures: sets span different subspaces");
  if (m1.dim() != set1.size()) throw std::invalid_argument("connect_mixtures: sets are not bases");
  std::vector<Coords> r1, r2;
  for (const auto& k : set1) r1.push_back(k.coords());
  for (const auto& k : set2) r2.push_back(k.coords());
  const FieldSpec f = space.field();
  return detail::coordinates_in(Matrix::from_rows(f, space.dim(), r2),
                                Matrix::from_rows(f, space.dim(), r1));
}

}  // namespace mqt
