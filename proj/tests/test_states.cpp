#include <gtest/gtest.h>

#include <map>

#include "mqt/bipartite.hpp"
#include "mqt/enumerate.hpp"
#include "mqt/fixtures.hpp"
#include "mqt/random.hpp"
#include "mqt/states.hpp"

using namespace mqt;

namespace {

/// Number of k-dimensional subspaces of F_p^d (Gaussian binomial).
std::uint64_t gaussian_binomial(std::uint64_t p, std::size_t d, std::size_t k) {
  std::uint64_t num = 1, den = 1;
  for (std::size_t i = 0; i < k; ++i) {
    std::uint64_t a = 1, b = 1;
    for (std::size_t j = 0; j < d - i; ++j) a *= p;
    for (std::size_t j = 0; j < i + 1; ++j) b *= p;
    num *= a - 1;
    den *= b - 1;
  }
  return num / den;
}

/// psi recomputed from its Schmidt data: sum_k r_k (x) q_k.
Coords schmidt_sum(const SchmidtDecomposition& sd, FieldSpec f) {
  Coords out(sd.r_basis.cols() * sd.q_basis.cols(), 0);
  for (std::size_t k = 0; k < sd.rank; ++k) {
    auto term = kron(f, sd.r_basis.row(k), sd.q_basis.row(k));
    for (std::size_t i = 0; i < out.size(); ++i) out[i] = f.add(out[i], term[i]);
  }
  return out;
}

}  // namespace

// Bras and kets are different types; pairing a ket with a ket does not compile.
template <class A, class B>
concept Pairable = requires(A a, B b) { pairing(a, b); };
static_assert(Pairable<Bra, Ket>);
static_assert(!Pairable<Ket, Ket>);
static_assert(!Pairable<Bra, Bra>);
static_assert(!Pairable<Ket, Bra>);
static_assert(std::is_same_v<decltype(annihilator(std::declval<MixedState>())), Effect>);

TEST(States, MobitPairings) {
  using namespace fixtures;
  EXPECT_EQ(pairing(bra_a(), ket_0()), 1u);
  EXPECT_EQ(pairing(bra_a(), ket_1()), 0u);
  EXPECT_EQ(pairing(bra_b(), ket_0()), 0u);
  EXPECT_EQ(pairing(bra_b(), ket_1()), 1u);
  EXPECT_EQ(pairing(bra_c(), ket_0()), 1u);
  EXPECT_EQ(pairing(bra_c(), ket_1()), 1u);
  EXPECT_EQ(pairing(bra_c(), ket_sigma()), 0u);
  for (const auto& m : mobit_measurements()) EXPECT_TRUE(validate_measurement(m)) << m.label;
}

TEST(States, PossibilityRule) {
  using namespace fixtures;
  EXPECT_TRUE(is_possible(span(bra_a()), span(ket_0())));
  EXPECT_FALSE(is_possible(span(bra_b()), span(ket_0())));
  EXPECT_FALSE(is_possible(Effect::null(mobit_space()), MixedState::full(mobit_space())));
  EXPECT_TRUE(is_possible(span(bra_b()), join(span(ket_0()), span(ket_1()))));
}

TEST(States, FifteenStatesOfTheMobitPair) {
  const StateSpace pair = tensor(fixtures::mobit_space(), fixtures::mobit_space());
  const auto points = projective_points<Variance::primal>(pair);
  ASSERT_EQ(points.size(), 15u);
  std::size_t product = 0, entangled = 0;
  for (const auto& psi : points) (schmidt(psi).rank == 1 ? product : entangled)++;
  EXPECT_EQ(product, 9u);
  EXPECT_EQ(entangled, 6u);
}

TEST(States, ProjectiveCountsMatchFormula) {
  for (std::uint64_t p : {2, 3, 5})
    for (std::size_t d = 1; d <= 3; ++d) {
      StateSpace s(FieldSpec(p), d);
      EXPECT_EQ(projective_points<Variance::primal>(s).size(), projective_point_count(p, d));
    }
}

TEST(States, SubspaceCountsAreGaussianBinomials) {
  for (std::uint64_t p : {2, 3})
    for (std::size_t d = 1; d <= 4; ++d) {
      if (p == 3 && d == 4) continue;
      StateSpace s(FieldSpec(p), d);
      const auto subs = all_subspaces<Variance::primal>(s);
      std::map<std::size_t, std::uint64_t> by_dim;
      for (const auto& m : subs) by_dim[m.dim()]++;
      for (std::size_t k = 0; k <= d; ++k) EXPECT_EQ(by_dim[k], gaussian_binomial(p, d, k)) << p << " " << d << " " << k;
      for (std::size_t i = 0; i < subs.size(); ++i)
        for (std::size_t j = 0; j < i; ++j) ASSERT_FALSE(subs[i] == subs[j]);
    }
}

TEST(States, BasesOfTheMobit) {
  const auto z2 = all_bases<Variance::dual>(fixtures::mobit_space());
  EXPECT_EQ(z2.size(), 3u);
  const auto z3 = all_bases<Variance::dual>(StateSpace(FieldSpec(3), 2));
  EXPECT_EQ(z3.size(), 6u);
}

TEST(States, LatticeIdentitiesExhaustiveOnZ2Cubed) {
  const StateSpace s(FieldSpec(2), 3);
  const auto subs = all_subspaces<Variance::primal>(s);
  ASSERT_EQ(subs.size(), 16u);
  for (const auto& a : subs) {
    EXPECT_EQ(annihilator(annihilator(a)), a);
    EXPECT_EQ(annihilator(a).dim() + a.dim(), 3u);
    for (const auto& b : subs) {
      EXPECT_EQ(a.leq(b), annihilator(b).leq(annihilator(a)));
      EXPECT_EQ(annihilator(join(a, b)), meet(annihilator(a), annihilator(b)));
      EXPECT_EQ(annihilator(meet(a, b)), join(annihilator(a), annihilator(b)));
      EXPECT_EQ(join(a, b).dim() + meet(a, b).dim(), a.dim() + b.dim());
      EXPECT_TRUE(meet(a, b).leq(a));
      EXPECT_TRUE(a.leq(join(a, b)));
    }
  }
}

TEST(States, ConditionalStatesOfTheSinglet) {
  using namespace fixtures;
  const auto s = span(singlet());
  // <a| on system 1 leaves |1>, <b| leaves |0>.
  EXPECT_EQ(conditional_state(s, span(bra_a()), 0), span(ket_1()));
  EXPECT_EQ(conditional_state(s, span(bra_b()), 0), span(ket_0()));
  EXPECT_EQ(conditional_state(s, span(bra_c()), 1), span(ket_sigma()));
  EXPECT_TRUE(reduce(s, 0).is_full());
  EXPECT_TRUE(reduce(s, 1).is_full());
}

TEST(States, ConditioningProductStates) {
  Rng rng(21);
  FieldSpec f(3);
  StateSpace a(f, 2), b(f, 3);
  for (int i = 0; i < 100; ++i) {
    const auto u = random_nonzero<Variance::primal>(a, rng);
    const auto v = random_nonzero<Variance::primal>(b, rng);
    const auto e = random_nonzero<Variance::dual>(a, rng);
    const auto cond = conditional_state(span(tensor(u, v)), span(e), 0);
    if (pairing(e, u) == 0) {
      EXPECT_TRUE(cond.is_null());
    } else {
      EXPECT_EQ(cond, span(v));
    }
  }
}

TEST(States, SchmidtNumbersAgreeOnRandomStates) {
  Rng rng(22);
  const std::vector<std::uint64_t> primes{2, 3, 5};
  for (int i = 0; i < 500; ++i) {
    const FieldSpec f(primes[i % 3]);
    const std::size_t dr = 1 + rng() % 4, dq = 1 + rng() % 4;
    const StateSpace rq = StateSpace::composite(f, {dr, dq});
    const auto psi = random_nonzero<Variance::primal>(rq, rng);
    const auto st = span(psi);
    ASSERT_EQ(reduce(st, 1).dim(), reduce(st, 0).dim());
    const auto sd = schmidt(psi);
    EXPECT_EQ(sd.rank, rank(detail::coefficient_matrix(psi)));
    EXPECT_EQ(schmidt_sum(sd, f), psi.coords());
    EXPECT_EQ(rank(sd.r_basis), dr);
    EXPECT_EQ(rank(sd.q_basis), dq);
  }
}

TEST(States, PurificationRoundTripAndConnection) {
  Rng rng(23);
  for (int i = 0; i < 100; ++i) {
    const FieldSpec f(i % 2 ? 3 : 2);
    const StateSpace q(f, 2 + rng() % 3);
    const auto m = random_subspace<Variance::primal>(q, 1 + rng() % q.dim(), rng);
    const auto psi = purify(m);
    ASSERT_EQ(psi.space().factors()[0], m.dim());
    EXPECT_EQ(reduce(span(psi), 0), m);

    // Any other purification with the same R is (T (x) 1) psi for invertible T.
    const Matrix g = random_invertible(f, m.dim(), rng);
    const Matrix row = Matrix::from_rows(f, psi.space().dim(), {psi.coords()});
    const Ket moved(psi.space(), (row * kron(g, Matrix::identity(f, q.dim())).transpose()).row(0));
    const auto t = connect_purifications(psi, moved);
    ASSERT_TRUE(t);
    ASSERT_TRUE(invert(*t));
    const auto image = row * kron(*t, Matrix::identity(f, q.dim())).transpose();
    EXPECT_EQ(image.row(0), moved.coords());
  }
}

TEST(States, PurificationsOfDifferentStatesDoNotConnect) {
  using namespace fixtures;
  const StateSpace pair = tensor(mobit_space(), mobit_space());
  const Ket a(pair, {1, 0, 0, 0});
  const Ket b(pair, {0, 1, 0, 0});
  EXPECT_FALSE(connect_purifications(a, b));
}

TEST(States, MixturesOfOneSubspaceAreRelatedByAnInvertibleMap) {
  Rng rng(24);
  FieldSpec f(5);
  StateSpace s(f, 4);
  for (int i = 0; i < 50; ++i) {
    const auto m = random_subspace<Variance::primal>(s, 2, rng);
    const Matrix g = random_invertible(f, 2, rng);
    const Matrix other = g * m.basis();
    std::vector<Ket> set1, set2;
    for (std::size_t r = 0; r < 2; ++r) {
      set1.emplace_back(s, m.basis().row(r));
      set2.emplace_back(s, other.row(r));
    }
    EXPECT_EQ(connect_mixtures(set1, set2), g);
  }
  EXPECT_THROW((void)connect_mixtures({Ket(s, {1, 0, 0, 0})}, {Ket(s, {0, 1, 0, 0})}), std::invalid_argument);
}
