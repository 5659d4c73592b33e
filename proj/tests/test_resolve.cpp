#include <gtest/gtest.h>

#include <algorithm>
#include <numeric>

#include "mqt/classify.hpp"
#include "mqt/fixtures.hpp"
#include "mqt/random.hpp"
#include "mqt/render.hpp"
#include "mqt/resolve.hpp"

using namespace mqt;

namespace {

const Rational kHalf(1, 2);

ProbabilityTable from_blocks(const Scenario& sc, const std::vector<std::vector<std::vector<Rational>>>& blocks) {
  ProbabilityTable pt(sc, Rational(0));
  std::size_t k = 0;
  for (std::size_t r = 0; r < sc.rows.size(); ++r)
    for (std::size_t c = 0; c < sc.cols.size(); ++c, ++k)
      for (std::size_t a = 0; a < sc.rows[r].outcomes; ++a)
        for (std::size_t b = 0; b < sc.cols[c].outcomes; ++b) pt.set(r, c, a, b, blocks[k][a][b]);
  return pt;
}

/// Each mixed block of the singlet table has its row and column marginal
/// pinned to 1/2 by the same-measurement blocks; that leaves one resolution.
ProbabilityTable expected_singlet_resolution() {
  const std::vector<std::vector<Rational>> anti{{0, kHalf}, {kHalf, 0}};
  const std::vector<std::vector<Rational>> diag{{kHalf, 0}, {0, kHalf}};
  return from_blocks(fixtures::singlet_table().scenario(), {anti, diag, diag, diag, anti, diag, diag, diag, anti});
}

ProbabilityTable halves_on_marks(const PossibilityTable& t) {
  ProbabilityTable pt(t.scenario(), Rational(0));
  t.for_each_cell([&](auto r, auto c, auto a, auto b) {
    if (t.at(r, c, a, b)) pt.set(r, c, a, b, kHalf);
  });
  return pt;
}

/// Size of a maximum matching by subset dynamic programming over columns.
std::size_t matching_oracle(const std::vector<std::vector<bool>>& adj, std::size_t cols) {
  std::vector<int> best(std::size_t{1} << cols, -1);
  best[0] = 0;
  std::size_t answer = 0;
  for (std::size_t u = 0; u < adj.size(); ++u) {
    auto next = best;
    for (std::size_t mask = 0; mask < best.size(); ++mask) {
      if (best[mask] < 0) continue;
      for (std::size_t v = 0; v < cols; ++v)
        if (adj[u][v] && !(mask >> v & 1U)) next[mask | (std::size_t{1} << v)] = std::max(next[mask | (std::size_t{1} << v)], best[mask] + 1);
    }
    best = std::move(next);
  }
  for (auto b : best) answer = std::max<std::size_t>(answer, b < 0 ? 0 : static_cast<std::size_t>(b));
  return answer;
}

bool block_sums_are_one(const ProbabilityTable& pt) {
  for (std::size_t r = 0; r < pt.row_count(); ++r)
    for (std::size_t c = 0; c < pt.col_count(); ++c)
      if (block_sum(pt, r, c) != 1) return false;
  return true;
}

}  // namespace

TEST(Resolve, SingletHasOnlyItsWeakResolution) {
  const auto s = fixtures::singlet_table();
  const auto weak = weak_resolution(s);
  ASSERT_TRUE(weak);
  EXPECT_EQ(*weak, expected_singlet_resolution());
  EXPECT_TRUE(check_prob_ns(*weak));
  EXPECT_TRUE(zero_on_blanks(*weak, s));
  EXPECT_TRUE(resolution_unique(s));

  const auto strong = analyze_strong(s);
  ASSERT_TRUE(strong.margin);
  EXPECT_EQ(*strong.margin, 0);
  EXPECT_FALSE(strong.table);
}

TEST(Resolve, SingletResolutionIsRigid) {
  // Moving mass between any two cells of one block breaks a marginal.
  const auto base = expected_singlet_resolution();
  const Rational eps(1, 10);
  base.for_each_cell([&](auto r, auto c, auto a, auto b) {
    for (std::size_t a2 = 0; a2 < 2; ++a2)
      for (std::size_t b2 = 0; b2 < 2; ++b2) {
        if (a2 == a && b2 == b) continue;
        auto moved = base;
        moved.set(r, c, a, b, moved.at(r, c, a, b) + eps);
        moved.set(r, c, a2, b2, moved.at(r, c, a2, b2) - eps);
        EXPECT_FALSE(check_prob_ns(moved) && zero_on_blanks(moved, fixtures::singlet_table()));
      }
  });
}

TEST(Resolve, PrBoxHasTheHalvesResolution) {
  const auto p = fixtures::prbox_table();
  const auto strong = analyze_strong(p);
  ASSERT_TRUE(strong.table);
  EXPECT_EQ(*strong.margin, kHalf);
  EXPECT_EQ(*strong.table, halves_on_marks(p));
  EXPECT_TRUE(resolution_unique(p));
  EXPECT_EQ(support(*strong.table), p);
}

TEST(Resolve, TableNHasNoResolution) {
  const auto n = fixtures::table_n();
  EXPECT_TRUE(check_modal_ns(n));
  const auto weak = analyze_weak(n);
  EXPECT_FALSE(weak.table);
  ASSERT_TRUE(weak.certificate);
  EXPECT_TRUE(weak.certificate->verify());
  EXPECT_FALSE(strong_resolution(n));
  EXPECT_THROW((void)resolution_unique(n), std::invalid_argument);
}

TEST(Resolve, TableNBreaksAtTheWWBlock) {
  const auto n = fixtures::table_n();
  const auto conflicts = localize_infeasibility(n);
  ASSERT_FALSE(conflicts.empty());
  const auto& first = conflicts.front();
  EXPECT_EQ(first.row, 2u);
  EXPECT_EQ(first.col, 2u);
  EXPECT_TRUE(first.fully_determined);
  ASSERT_EQ(first.cells.size(), 2u);
  const std::vector<std::optional<Rational>> by_row{Rational(2, 3), Rational(1, 3)};
  const std::vector<std::optional<Rational>> by_col{Rational(1, 3), Rational(2, 3)};
  EXPECT_EQ(first.from_row, by_row);
  EXPECT_EQ(first.from_col, by_col);
  EXPECT_EQ(describe_conflict(n.scenario(), first),
            "block (W,W): the W row forces p = 2/3, q = 1/3, the W column forces p = 1/3, q = 2/3");
}

TEST(Resolve, FeasibleTablesHaveNoConflicts) {
  EXPECT_TRUE(localize_infeasibility(fixtures::singlet_table()).empty());
  EXPECT_TRUE(localize_infeasibility(fixtures::prbox_table()).empty());
}

TEST(Resolve, FullBlockIsNotUnique) {
  PossibilityTable t(Scenario{{{"A", 2}}, {{"B", 2}}});
  set_block(t, 0, 0, {{1, 1}, {1, 1}});
  EXPECT_FALSE(resolution_unique(t));
  const auto strong = analyze_strong(t);
  ASSERT_TRUE(strong.table);
  EXPECT_EQ(*strong.margin, Rational(1, 4));
}

TEST(Resolve, MalformedProbabilityTablesFailTheCheck) {
  auto pt = halves_on_marks(fixtures::prbox_table());
  EXPECT_TRUE(check_prob_ns(pt));
  pt.set(0, 0, 0, 0, Rational(-1, 2));
  EXPECT_FALSE(check_prob_ns(pt));
  auto skew = halves_on_marks(fixtures::prbox_table());
  skew.set(0, 0, 0, 0, Rational(3, 4));
  skew.set(0, 0, 1, 1, Rational(1, 4));
  EXPECT_FALSE(check_prob_ns(skew));
}

TEST(Resolve, MatchingAgreesWithSubsetOracle) {
  Rng rng(61);
  for (int i = 0; i < 500; ++i) {
    const std::size_t rows = 1 + rng() % 7, cols = 1 + rng() % 7;
    const auto density = rng() % 4;
    std::vector<std::vector<bool>> adj(rows, std::vector<bool>(cols));
    for (auto& row : adj)
      for (std::size_t v = 0; v < cols; ++v) row[v] = rng() % 4 <= density;
    const auto m = max_matching(adj);
    EXPECT_EQ(m.size(), matching_oracle(adj, cols));
    std::vector<bool> used_r(rows), used_c(cols);
    for (const auto& [u, v] : m) {
      EXPECT_TRUE(adj[u][v]);
      EXPECT_FALSE(used_r[u]);
      EXPECT_FALSE(used_c[v]);
      used_r[u] = used_c[v] = true;
    }
    EXPECT_TRUE(std::is_sorted(m.begin(), m.end()));
  }
}

TEST(Resolve, HallReproducesTheSingletResolution) {
  const auto pt = hall_resolution(fixtures::singlet(), fixtures::mobit_measurements(), fixtures::mobit_measurements());
  EXPECT_EQ(pt, expected_singlet_resolution());
}

TEST(Resolve, HallOnRandomMaximalStates) {
  Rng rng(62);
  const std::vector<std::uint64_t> primes{2, 3, 5};
  for (int i = 0; i < 200; ++i) {
    const FieldSpec f(primes[i % 3]);
    const std::size_t d = 2 + rng() % 3;
    const auto psi = random_full_schmidt_ket(f, d, rng);
    std::vector<Measurement> m1, m2;
    for (int k = 0; k < 2; ++k) {
      m1.push_back(random_basis_measurement("R" + std::to_string(k), f, d, rng));
      m2.push_back(random_basis_measurement("C" + std::to_string(k), f, d, rng));
    }
    const auto pt = hall_resolution(psi, m1, m2);
    EXPECT_TRUE(check_prob_ns(pt));
    EXPECT_TRUE(block_sums_are_one(pt));
    EXPECT_TRUE(zero_on_blanks(pt, build_table(span(psi), m1, m2)));
  }
}

TEST(Resolve, HallHandlesCoarseAndOvercompleteMeasurements) {
  using namespace fixtures;
  const Measurement coarse{"T", {Effect::full(mobit_space())}};
  const auto over = basic_measurement("O", {bra_a(), bra_b(), bra_c()});
  const std::vector<Measurement> m1{coarse, over, measurement_x()};
  const std::vector<Measurement> m2{measurement_z(), over};
  const auto pt = hall_resolution(singlet(), m1, m2);
  EXPECT_TRUE(check_prob_ns(pt));
  EXPECT_TRUE(block_sums_are_one(pt));
  EXPECT_TRUE(zero_on_blanks(pt, build_table(span(singlet()), m1, m2)));
}

TEST(Resolve, HallRequiresMaximalSchmidtNumber) {
  using namespace fixtures;
  EXPECT_THROW((void)hall_resolution(tensor(ket_0(), ket_1()), mobit_measurements(), mobit_measurements()),
               std::invalid_argument);
}

TEST(Resolve, LocalTablesHaveStrongResolutions) {
  const Scenario sc{{{"A", 2}, {"B", 3}}, {{"C", 2}, {"D", 2}}};
  std::vector<DeterministicLocalStrategy> all;
  for_each_strategy(sc, [&](const DeterministicLocalStrategy& s) { all.push_back(s); });
  Rng rng(63);
  for (int i = 0; i < 100; ++i) {
    PossibilityTable t(sc);
    const std::size_t n = 1 + rng() % 5;
    for (std::size_t k = 0; k < n; ++k) t = table_join(t, deterministic_table(sc, all[rng() % all.size()]));
    const auto lhv = lhv_membership(t);
    ASSERT_TRUE(lhv);

    // The uniform mixture of the surviving strategies is itself a strong resolution.
    ProbabilityTable mix(sc, Rational(0));
    const Rational w(1, static_cast<long long>(lhv->size()));
    for (const auto& s : *lhv)
      for (std::size_t r = 0; r < 2; ++r)
        for (std::size_t c = 0; c < 2; ++c) mix.set(r, c, s.f1[r], s.f2[c], mix.at(r, c, s.f1[r], s.f2[c]) + w);
    EXPECT_TRUE(check_prob_ns(mix));
    EXPECT_EQ(support(mix), t);

    const auto strong = strong_resolution(t);
    ASSERT_TRUE(strong);
    EXPECT_EQ(support(*strong), t);
    EXPECT_TRUE(check_prob_ns(*strong));
  }
}

TEST(Resolve, JoinsOfResolvableTablesStayResolvable) {
  Rng rng(64);
  const FieldSpec f(3);
  for (int i = 0; i < 30; ++i) {
    std::vector<Measurement> m1, m2;
    for (int k = 0; k < 2; ++k) {
      m1.push_back(random_basis_measurement("R" + std::to_string(k), f, 2, rng));
      m2.push_back(random_basis_measurement("C" + std::to_string(k), f, 2, rng));
    }
    const auto x = build_table(span(random_full_schmidt_ket(f, 2, rng)), m1, m2);
    const auto y = build_table(span(random_full_schmidt_ket(f, 2, rng)), m1, m2);
    ASSERT_TRUE(weak_resolution(x));
    ASSERT_TRUE(weak_resolution(y));
    EXPECT_TRUE(weak_resolution(table_join(x, y)));
    if (strong_resolution(x) && strong_resolution(y)) {
      EXPECT_TRUE(strong_resolution(table_join(x, y)));
    }
  }
}

TEST(Classify, Hierarchy) {
  MqtSearchBounds bounds;
  bounds.max_dim = 2;

  const auto s = classify(fixtures::singlet_table(), bounds);
  EXPECT_TRUE(s.ns && s.wpr && !s.spr && !s.lhv);
  EXPECT_EQ(s.mqt.verdict, Verdict::yes);
  ASSERT_TRUE(s.mqt.witness);
  const auto& w = *s.mqt.witness;
  EXPECT_EQ(build_table(span(w.state), w.meas1, w.meas2), fixtures::singlet_table());

  const auto p = classify(fixtures::prbox_table(), bounds);
  EXPECT_TRUE(p.ns && p.wpr && p.spr && !p.lhv);
  EXPECT_EQ(p.mqt.verdict, Verdict::no);
  EXPECT_FALSE(p.mqt.witness);

  const auto n = classify(fixtures::table_n(), bounds);
  EXPECT_TRUE(n.ns && !n.wpr && !n.spr && !n.lhv);
  EXPECT_EQ(n.mqt.verdict, Verdict::no);
  EXPECT_EQ(n.mqt.reason, "not in WPR");

  auto broken = fixtures::prbox_table();
  broken.set(1, 1, 0, 1, false);
  const auto b = classify(broken, bounds);
  EXPECT_FALSE(b.ns);
  EXPECT_EQ(b.mqt.reason, "not no-signalling");
}

TEST(Classify, ProductTablesAreFoundQuickly) {
  using namespace fixtures;
  const auto t = build_table(span(tensor(ket_0(), ket_1())), mobit_measurements(), mobit_measurements());
  const auto c = classify(t);
  EXPECT_TRUE(c.lhv && c.spr && c.wpr);
  ASSERT_EQ(c.mqt.verdict, Verdict::yes);
  const auto& w = *c.mqt.witness;
  EXPECT_EQ(build_table(span(w.state), w.meas1, w.meas2), t);
}

TEST(Classify, TinyBudgetGivesUnknown) {
  MqtSearchBounds bounds;
  bounds.work_budget = 3;
  const auto r = mqt_search(fixtures::prbox_table(), bounds);
  EXPECT_EQ(r.verdict, Verdict::unknown);
  EXPECT_FALSE(r.reason.empty());
}

TEST(Classify, OutcomeBoundGivesUnknown) {
  MqtSearchBounds bounds;
  bounds.max_outcomes = 2;
  EXPECT_EQ(mqt_search(fixtures::table_n(), bounds).verdict, Verdict::unknown);
}
