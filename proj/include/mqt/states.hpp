#pragma once

/// @file states.hpp
/// State spaces, kets and bras, and subspaces as mixed states (primal) or
/// generalized effects (dual). The two variances are separate types, so
/// handing an effect where a state is expected does not compile.

#include <algorithm>
#include <cstddef>
#include <functional>
#include <numeric>
#include <ostream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mqt/field.hpp"
#include "mqt/linalg.hpp"

namespace mqt {

enum class Variance { primal, dual };

constexpr Variance opposite(Variance v) {
  return v == Variance::primal ? Variance::dual : Variance::primal;
}

/// A vector space F_p^dim, optionally a tensor product of factors
/// (row-major index order, first factor most significant).
class StateSpace {
 public:
  StateSpace(FieldSpec f, std::size_t dim) : field_(f), dim_(dim), factors_{dim} {
    if (dim == 0) throw std::invalid_argument("state space dimension must be positive");
  }

  static StateSpace composite(FieldSpec f, std::vector<std::size_t> factors) {
    if (factors.empty()) throw std::invalid_argument("composite space needs factors");
    std::size_t d = 1;
    for (auto k : factors) {
      if (k == 0) throw std::invalid_argument("factor dimension must be positive");
      d *= k;
    }
    StateSpace s(f, d);
    s.factors_ = std::move(factors);
    return s;
  }

  [[nodiscard]] FieldSpec field() const noexcept { return field_; }
  [[nodiscard]] std::size_t dim() const noexcept { return dim_; }
  [[nodiscard]] const std::vector<std::size_t>& factors() const noexcept { return factors_; }
  [[nodiscard]] std::size_t factor_count() const noexcept { return factors_.size(); }

  [[nodiscard]] StateSpace factor(std::size_t k) const {
    return StateSpace(field_, factors_.at(k));
  }

  /// The space left after removing factor k.
  [[nodiscard]] StateSpace without(std::size_t k) const {
    if (factors_.size() < 2) throw std::invalid_argument("space has no factor structure");
    auto rest = factors_;
    rest.erase(rest.begin() + static_cast<std::ptrdiff_t>(k));
    return composite(field_, std::move(rest));
  }

  /// Same dimensions, factor metadata dropped.
  [[nodiscard]] StateSpace flattened() const { return StateSpace(field_, dim_); }

  friend StateSpace tensor(const StateSpace& a, const StateSpace& b) {
    if (!(a.field_ == b.field_)) throw std::invalid_argument("modulus mismatch");
    auto f = a.factors_;
    f.insert(f.end(), b.factors_.begin(), b.factors_.end());
    return composite(a.field_, std::move(f));
  }

  friend bool operator==(const StateSpace& a, const StateSpace& b) {
    return a.field_ == b.field_ && a.dim_ == b.dim_ && a.factors_ == b.factors_;
  }

 private:
  FieldSpec field_;
  std::size_t dim_;
  std::vector<std::size_t> factors_;
};

inline void require_same_space(const StateSpace& a, const StateSpace& b) {
  if (!(a == b)) throw std::invalid_argument("state space mismatch");
}

/// A coordinate vector. Kets are states, bras are effect vectors.
template <Variance V>
class Vector {
 public:
  Vector(StateSpace space, Coords coords) : space_(std::move(space)), coords_(std::move(coords)) {
    if (coords_.size() != space_.dim()) throw std::invalid_argument("vector length mismatch");
    for (auto& c : coords_) c = space_.field().reduce(c);
  }
  Vector(StateSpace space, std::initializer_list<std::int64_t> coords)
      : space_(std::move(space)) {
    if (coords.size() != space_.dim()) throw std::invalid_argument("vector length mismatch");
    for (auto c : coords) coords_.push_back(space_.field().reduce(c));
  }

  static Vector basis_vector(StateSpace space, std::size_t k) {
    Coords c(space.dim(), 0);
    c.at(k) = 1;
    return Vector(std::move(space), std::move(c));
  }

  [[nodiscard]] const StateSpace& space() const noexcept { return space_; }
  [[nodiscard]] const Coords& coords() const noexcept { return coords_; }
  [[nodiscard]] bool is_zero() const noexcept {
    return std::all_of(coords_.begin(), coords_.end(), [](Residue r) { return r == 0; });
  }

  /// Scaled so the first nonzero coordinate is 1.
  [[nodiscard]] Vector projective() const {
    const FieldSpec f = space_.field();
    auto it = std::find_if(coords_.begin(), coords_.end(), [](Residue r) { return r != 0; });
    if (it == coords_.end()) return *this;
    const Residue s = f.inv(*it);
    Coords c = coords_;
    for (auto& x : c) x = f.mul(x, s);
    return Vector(space_, std::move(c));
  }

  friend bool operator==(const Vector& a, const Vector& b) {
    return a.space_ == b.space_ && a.coords_ == b.coords_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Vector& v) {
    os << (V == Variance::primal ? "|" : "<");
    for (std::size_t i = 0; i < v.coords_.size(); ++i) os << (i ? "," : "") << v.coords_[i];
    return os << (V == Variance::primal ? ">" : "|");
  }

 private:
  StateSpace space_;
  Coords coords_;
};

using Ket = Vector<Variance::primal>;
using Bra = Vector<Variance::dual>;

inline Residue pairing(const Bra& e, const Ket& m) {
  require_same_space(e.space(), m.space());
  const FieldSpec f = m.space().field();
  Residue acc = 0;
  for (std::size_t i = 0; i < m.coords().size(); ++i)
    acc = f.add(acc, f.mul(e.coords()[i], m.coords()[i]));
  return acc;
}

template <Variance V>
Vector<V> tensor(const Vector<V>& a, const Vector<V>& b) {
  const FieldSpec f = a.space().field();
  return Vector<V>(tensor(a.space(), b.space()), kron(f, a.coords(), b.coords()));
}

/// A subspace held as its canonical RREF basis (rows, no zero rows), so
/// equality of subspaces is equality of representations.
template <Variance V>
class Subspace {
 public:
  using vector_type = Vector<V>;

  /// Canonicalizes the row span of `spanning` (rows are vectors of `space`).
  Subspace(StateSpace space, const Matrix& spanning)
      : space_(std::move(space)), basis_(row_space(check_cols(spanning))) {}

  static Subspace null(StateSpace space) {
    const auto d = space.dim();
    const auto f = space.field();
    return Subspace(std::move(space), Matrix(f, 0, d));
  }
  static Subspace full(StateSpace space) {
    const auto d = space.dim();
    const auto f = space.field();
    return Subspace(std::move(space), Matrix::identity(f, d));
  }

  [[nodiscard]] const StateSpace& space() const noexcept { return space_; }
  [[nodiscard]] const Matrix& basis() const noexcept { return basis_; }
  [[nodiscard]] std::size_t dim() const noexcept { return basis_.rows(); }
  [[nodiscard]] bool is_null() const noexcept { return basis_.rows() == 0; }
  [[nodiscard]] bool is_full() const noexcept { return basis_.rows() == space_.dim(); }

  [[nodiscard]] std::vector<vector_type> basis_vectors() const {
    std::vector<vector_type> out;
    for (std::size_t i = 0; i < basis_.rows(); ++i) out.emplace_back(space_, basis_.row(i));
    return out;
  }

  [[nodiscard]] bool contains(const vector_type& v) const {
    require_same_space(space_, v.space());
    Matrix one = Matrix::from_rows(space_.field(), space_.dim(), {v.coords()});
    return rank(vstack(basis_, one)) == dim();
  }

  /// Inclusion: *this is a subspace of other.
  [[nodiscard]] bool leq(const Subspace& other) const {
    require_same_space(space_, other.space_);
    return rank(vstack(other.basis_, basis_)) == other.dim();
  }

  /// Same subspace with the space's factor metadata replaced.
  [[nodiscard]] Subspace in_space(StateSpace s) const {
    if (s.dim() != space_.dim() || !(s.field() == space_.field()))
      throw std::invalid_argument("in_space: dimension mismatch");
    return Subspace(std::move(s), basis_);
  }

  friend bool operator==(const Subspace& a, const Subspace& b) {
    return a.space_ == b.space_ && a.basis_ == b.basis_;
  }

  friend std::ostream& operator<<(std::ostream& os, const Subspace& s) {
    os << "span{";
    for (std::size_t i = 0; i < s.basis_.rows(); ++i) {
      if (i) os << ", ";
      os << vector_type(s.space_, s.basis_.row(i));
    }
    return os << '}';
  }

 private:
  const Matrix& check_cols(const Matrix& m) const {
    if (m.cols() != space_.dim() || !(m.field() == space_.field()))
      throw std::invalid_argument("subspace: spanning rows do not fit the space");
    return m;
  }

  StateSpace space_;
  Matrix basis_;
};

using MixedState = Subspace<Variance::primal>;
using Effect = Subspace<Variance::dual>;

template <Variance V>
Subspace<V> span(const std::vector<Vector<V>>& vectors, const StateSpace& space) {
  std::vector<Coords> rows;
  rows.reserve(vectors.size());
  for (const auto& v : vectors) {
    if (v.space().dim() != space.dim() || !(v.space().field() == space.field()))
      throw std::invalid_argument("span: dimension mismatch");
    rows.push_back(v.coords());
  }
  return Subspace<V>(space, Matrix::from_rows(space.field(), space.dim(), rows));
}

template <Variance V>
Subspace<V> span(const Vector<V>& v) {
  return span(std::vector<Vector<V>>{v}, v.space());
}

template <Variance V>
Subspace<V> join(const Subspace<V>& a, const Subspace<V>& b) {
  require_same_space(a.space(), b.space());
  return Subspace<V>(a.space(), vstack(a.basis(), b.basis()));
}

/// The annihilator of a subspace, living in the opposite space.
template <Variance V>
Subspace<opposite(V)> annihilator(const Subspace<V>& s) {
  Matrix k = s.is_null() ? Matrix::identity(s.space().field(), s.space().dim()) : kernel(s.basis());
  return Subspace<opposite(V)>(s.space(), k);
}

/// Intersection, as the solution set of both constraint systems.
template <Variance V>
Subspace<V> meet(const Subspace<V>& a, const Subspace<V>& b) {
  require_same_space(a.space(), b.space());
  Matrix constraints = vstack(annihilator(a).basis(), annihilator(b).basis());
  if (constraints.rows() == 0) return Subspace<V>::full(a.space());
  return Subspace<V>(a.space(), kernel(constraints));
}

template <Variance V>
Subspace<V> tensor(const Subspace<V>& a, const Subspace<V>& b) {
  return Subspace<V>(tensor(a.space(), b.space()), kron(a.basis(), b.basis()));
}

/// E(M) is possible iff some <e| in E and |m> in M pair to a nonzero value.
inline bool is_possible(const Effect& e, const MixedState& m) {
  require_same_space(e.space(), m.space());
  if (e.is_null() || m.is_null()) return false;
  return !(e.basis() * m.basis().transpose()).is_zero();
}

struct Measurement {
  std::string label;
  std::vector<Effect> effects;

  [[nodiscard]] std::size_t outcomes() const noexcept { return effects.size(); }
  [[nodiscard]] const StateSpace& space() const {
    if (effects.empty()) throw std::invalid_argument("measurement has no effects");
    return effects.front().space();
  }
};

/// Basic measurement from a list of bras, one per outcome.
inline Measurement basic_measurement(std::string label, const std::vector<Bra>& bras) {
  Measurement m{std::move(label), {}};
  for (const auto& b : bras) m.effects.push_back(span(b));
  return m;
}

/// Normalization: the effects jointly span the whole dual space.
inline bool validate_measurement(const Measurement& m) {
  if (m.effects.empty()) return false;
  auto acc = Effect::null(m.effects.front().space());
  for (const auto& e : m.effects) {
    if (!(e.space() == acc.space())) return false;
    acc = join(acc, e);
  }
  return acc.is_full();
}

namespace detail {

/// Contracts a coordinate vector on a composite space with `eta` on factor k.
inline Coords contract(const StateSpace& space, const Coords& mu, const Coords& eta, std::size_t k) {
  const FieldSpec f = space.field();
  const auto& fac = space.factors();
  std::size_t stride = 1;
  for (std::size_t j = k + 1; j < fac.size(); ++j) stride *= fac[j];
  const std::size_t block = fac[k] * stride;
  Coords out(space.dim() / fac[k], 0);
  for (std::size_t idx = 0; idx < mu.size(); ++idx) {
    if (mu[idx] == 0) continue;
    const std::size_t digit = (idx / stride) % fac[k];
    if (eta[digit] == 0) continue;
    const std::size_t o = (idx / block) * stride + idx % stride;
    out[o] = f.add(out[o], f.mul(eta[digit], mu[idx]));
  }
  return out;
}

}  // namespace detail

/// Conditional state of the remaining factors given effect `e` on factor k:
/// the span of all partial pairings <eta|mu> over spanning sets.
inline MixedState conditional_state(const MixedState& m, const Effect& e, std::size_t factor = 0) {
  const auto& space = m.space();
  if (space.factor_count() < 2) throw std::invalid_argument("conditional_state: space has no factor structure");
  if (factor >= space.factor_count()) throw std::invalid_argument("conditional_state: factor out of range");
  if (!(e.space() == space.factor(factor))) throw std::invalid_argument("conditional_state: effect space mismatch");
  StateSpace rest = space.without(factor);
  std::vector<Coords> rows;
  for (std::size_t i = 0; i < m.basis().rows(); ++i) {
    const Coords mu = m.basis().row(i);
    for (std::size_t j = 0; j < e.basis().rows(); ++j)
      rows.push_back(detail::contract(space, mu, e.basis().row(j), factor));
  }
  return MixedState(rest, Matrix::from_rows(space.field(), rest.dim(), rows));
}

/// Reduced state: condition on the full dual space of the traced factor.
inline MixedState reduce(const MixedState& m, std::size_t traced) {
  return conditional_state(m, Effect::full(m.space().factor(traced)), traced);
}

/// Joint product effect E (x) F as a dual subspace of the composite space.
inline Effect product_effect(const Effect& e, const Effect& f) { return tensor(e, f); }

}  // namespace mqt
