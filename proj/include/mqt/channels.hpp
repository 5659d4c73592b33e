#pragma once

/// @file channels.hpp
/// Open-system dynamics on subspaces: Kraus-style (Type L) maps, their
/// dilation to invertible evolution with an environment, the induced joint
/// extension on R (x) S, and recovery of Kraus operators from an extension.

#include <cstdint>
#include <functional>
#include <optional>
#include <stdexcept>
#include <utility>
#include <vector>

#include "mqt/enumerate.hpp"
#include "mqt/linalg.hpp"
#include "mqt/states.hpp"

namespace mqt {

using SubspaceMap = std::function<MixedState(const MixedState&)>;

/// True iff the kernels of the operators meet only in zero.
inline bool check_unconditional(const std::vector<Matrix>& kraus) {
  if (kraus.empty()) return false;
  const std::size_t d = kraus.front().cols();
  Matrix stacked(kraus.front().field(), 0, d);
  for (const auto& a : kraus) {
    if (a.cols() != d) throw std::invalid_argument("check_unconditional: dimension mismatch");
    stacked = vstack(stacked, a);
  }
  return rank(stacked) == d;
}

/// M -> join_k A_k M. An unconditional map never sends a nonnull state to null.
class TypeLMap {
 public:
  explicit TypeLMap(std::vector<Matrix> kraus, bool unconditional = true)
      : kraus_(std::move(kraus)), unconditional_(unconditional) {
    if (kraus_.empty()) throw std::invalid_argument("TypeLMap: no Kraus operators");
    const auto d = kraus_.front().rows();
    for (const auto& a : kraus_) {
      if (a.rows() != d || a.cols() != d || !(a.field() == kraus_.front().field()))
        throw std::invalid_argument("TypeLMap: Kraus operators must be square and conforming");
    }
    if (unconditional_ && !check_unconditional(kraus_))
      throw std::invalid_argument("TypeLMap: Kraus kernels intersect nontrivially");
  }

  [[nodiscard]] const std::vector<Matrix>& kraus() const noexcept { return kraus_; }
  [[nodiscard]] bool unconditional() const noexcept { return unconditional_; }
  [[nodiscard]] std::size_t dim() const noexcept { return kraus_.front().cols(); }
  [[nodiscard]] FieldSpec field() const noexcept { return kraus_.front().field(); }

 private:
  std::vector<Matrix> kraus_;
  bool unconditional_;
};

/// Image A M of a subspace under a linear operator.
inline MixedState image(const Matrix& a, const MixedState& m) {
  if (a.cols() != m.space().dim() || a.rows() != m.space().dim())
    throw std::invalid_argument("image: dimension mismatch");
  return MixedState(m.space(), m.basis() * a.transpose());
}

inline MixedState apply_type_l(const TypeLMap& map, const MixedState& m) {
  if (m.space().dim() != map.dim()) throw std::invalid_argument("apply_type_l: dimension mismatch");
  auto out = MixedState::null(m.space());
  for (const auto& a : map.kraus()) out = join(out, image(a, m));
  return out;
}

/// Invertible evolution T on S (x) E with the environment starting in |0>.
struct Dilation {
  std::size_t system_dim;
  std::size_t env_dim;
  Ket env_state;
  Matrix joint;

  /// reduce_E( T (M (x) span{|0>}) )
  [[nodiscard]] MixedState apply(const MixedState& m) const {
    if (m.space().dim() != system_dim) throw std::invalid_argument("dilation: dimension mismatch");
    StateSpace env(m.space().field(), env_dim);
    MixedState lifted = tensor(m, span(Ket(env, env_state.coords())));
    MixedState evolved(lifted.space(), lifted.basis() * joint.transpose());
    return reduce(evolved, evolved.space().factor_count() - 1);
  }
};

/// Builds T with T|phi,0> = sum_k A_k|phi> (x) |k> and completes it to an
/// invertible operator. The environment has one basis state per Kraus term.
inline Dilation dilate(const TypeLMap& map) {
  if (!map.unconditional()) throw std::invalid_argument("dilate: map is conditional");
  const FieldSpec f = map.field();
  const std::size_t d = map.dim();
  const std::size_t k_terms = map.kraus().size();
  const std::size_t n = d * k_terms;

  // Row j holds the column T(:, (j,0)).
  Matrix images(f, d, n);
  for (std::size_t j = 0; j < d; ++j)
    for (std::size_t k = 0; k < k_terms; ++k)
      for (std::size_t i = 0; i < d; ++i) images(j, i * k_terms + k) = map.kraus()[k](i, j);
  Matrix cols = extend_to_basis(images);

  Matrix t(f, n, n);
  std::size_t spare = d;
  for (std::size_t j = 0; j < d; ++j) {
    for (std::size_t e = 0; e < k_terms; ++e) {
      const std::size_t src = e == 0 ? j : spare++;
      for (std::size_t r = 0; r < n; ++r) t(r, j * k_terms + e) = cols(src, r);
    }
  }
  StateSpace env(f, k_terms);
  return {d, k_terms, Ket::basis_vector(env, 0), std::move(t)};
}

/// G^RS(M) = reduce_E[ (1_R (x) T)(M (x) span{|0_E>}) ] on R (x) S.
inline SubspaceMap extend_to_joint(const Dilation& dil, std::size_t r_dim) {
  const FieldSpec f = dil.joint.field();
  Matrix lifted_op = kron(Matrix::identity(f, r_dim), dil.joint);
  return [dil, r_dim, lifted_op, f](const MixedState& m) {
    if (m.space().dim() != r_dim * dil.system_dim)
      throw std::invalid_argument("joint extension: dimension mismatch");
    StateSpace rs = StateSpace::composite(f, {r_dim, dil.system_dim});
    MixedState input = m.in_space(rs);
    StateSpace env(f, dil.env_dim);
    MixedState lifted = tensor(input, span(Ket(env, dil.env_state.coords())));
    MixedState evolved(lifted.space(), lifted.basis() * lifted_op.transpose());
    return reduce(evolved, 2).in_space(m.space());
  };
}

/// Reads Kraus operators off the image of the maximally entangled state
/// sum_k |k,k> under a joint map: (A_l)_{jk} = coefficient of |k^R, j^S>.
inline TypeLMap kraus_from_extension(const SubspaceMap& joint_map, std::size_t s_dim, FieldSpec f) {
  StateSpace rs = StateSpace::composite(f, {s_dim, s_dim});
  Coords phi(rs.dim(), 0);
  for (std::size_t k = 0; k < s_dim; ++k) phi[k * s_dim + k] = 1;
  MixedState out = joint_map(span(Ket(rs, phi)));
  if (out.space().dim() != rs.dim()) throw std::invalid_argument("kraus_from_extension: dimension mismatch");

  std::vector<Matrix> kraus;
  for (std::size_t l = 0; l < out.dim(); ++l) {
    Matrix a(f, s_dim, s_dim);
    for (std::size_t j = 0; j < s_dim; ++j)
      for (std::size_t k = 0; k < s_dim; ++k) a(j, k) = out.basis()(l, k * s_dim + j);
    kraus.push_back(std::move(a));
  }
  if (kraus.empty()) kraus.emplace_back(f, s_dim, s_dim);
  const bool unconditional = check_unconditional(kraus);
  return TypeLMap(std::move(kraus), unconditional);
}

/// Two subspace maps agree on every line of the space (and hence, for maps
/// that respect joins, on every subspace).
inline bool same_action_on_lines(const SubspaceMap& a, const SubspaceMap& b, const StateSpace& space,
                                 std::uint64_t budget = kDefaultEnumerationBudget) {
  for (const auto& pt : projective_points<Variance::primal>(space, budget)) {
    const auto line = span(pt);
    if (!(a(line) == b(line))) return false;
  }
  return true;
}

inline SubspaceMap as_subspace_map(const TypeLMap& map) {
  return [map](const MixedState& m) { return apply_type_l(map, m); };
}

struct DiagramCheck {
  bool commutes = true;
  std::uint64_t instances = 0;
  std::optional<std::pair<MixedState, Effect>> counterexample;
};

/// Checks s_map(M / E) == joint_map(M) / E over every nonnull joint state M
/// on R (x) S and every nonnull R-effect E.
inline DiagramCheck verify_diagram(const SubspaceMap& s_map, const SubspaceMap& joint_map, FieldSpec f,
                                   std::size_t r_dim, std::size_t s_dim, std::uint64_t budget) {
  StateSpace rs = StateSpace::composite(f, {r_dim, s_dim});
  const auto states = all_subspaces<Variance::primal>(rs, budget);
  const auto effects = all_subspaces<Variance::dual>(StateSpace(f, r_dim), budget);
  if ((states.size() - 1) * (effects.size() - 1) > budget)
    throw std::length_error("verify_type_e: budget exceeded");
  DiagramCheck check;
  for (const auto& m : states) {
    if (m.is_null()) continue;
    const MixedState evolved = joint_map(m).in_space(rs);
    for (const auto& e : effects) {
      if (e.is_null()) continue;
      ++check.instances;
      const auto before = s_map(conditional_state(m, e, 0));
      const auto after = conditional_state(evolved, e, 0);
      if (!(before == after)) {
        check.commutes = false;
        check.counterexample.emplace(m, e);
        return check;
      }
    }
  }
  return check;
}

/// The canonical extension (dilate, then extend with 1_R) commutes with
/// conditioning on R for every joint state and R-effect.
inline bool verify_type_e(const TypeLMap& s_map, std::size_t r_dim,
                          std::uint64_t exhaustive_budget = kDefaultEnumerationBudget) {
  const auto joint = extend_to_joint(dilate(s_map), r_dim);
  return verify_diagram(as_subspace_map(s_map), joint, s_map.field(), r_dim, s_map.dim(),
                        exhaustive_budget)
      .commutes;
}

}  // namespace mqt
