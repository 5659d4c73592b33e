#pragma once

/// @file hvgames.hpp
/// Hidden-variable refutations: noncontextual yes/no assignments, elimination
/// of joint outcome assignments, the Hardy chain, and the possibility game.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <variant>
#include <vector>

#include "mqt/enumerate.hpp"
#include "mqt/states.hpp"
#include "mqt/tables.hpp"

namespace mqt {

/// Basic effects (one per projective point) and the bases they form.
struct ContextFamily {
  StateSpace space;
  std::vector<Bra> effects;
  std::vector<std::vector<std::size_t>> contexts;

  /// Effects are projectively distinct; each context is a basis of the dual.
  void validate() const {
    for (std::size_t i = 0; i < effects.size(); ++i) {
      require_same_space(effects[i].space(), space);
      if (effects[i].is_zero()) throw std::invalid_argument("context family: zero effect");
      for (std::size_t j = 0; j < i; ++j)
        if (effects[i].projective() == effects[j].projective())
          throw std::invalid_argument("context family: repeated effect");
    }
    for (const auto& ctx : contexts) {
      std::vector<Bra> members;
      for (auto k : ctx) members.push_back(effects.at(k));
      if (ctx.size() != space.dim() || span(members, space).dim() != space.dim())
        throw std::invalid_argument("context family: context is not a basis");
    }
  }
};

/// Every projective dual point, with every unordered basis as a context.
inline ContextFamily all_basis_contexts(const StateSpace& space,
                                        std::uint64_t budget = kDefaultEnumerationBudget) {
  ContextFamily fam{space, projective_points<Variance::dual>(space, budget), {}};
  for (const auto& basis : all_bases<Variance::dual>(space, budget)) {
    std::vector<std::size_t> ctx;
    for (const auto& b : basis)
      for (std::size_t k = 0; k < fam.effects.size(); ++k)
        if (fam.effects[k] == b.projective()) ctx.push_back(k);
    fam.contexts.push_back(std::move(ctx));
  }
  return fam;
}

struct NoncontextualResult {
  std::optional<std::vector<bool>> assignment;
  std::uint64_t examined = 0;
};

inline constexpr std::size_t kMaxAssignmentEffects = 30;

/// Searches yes/no values, one per effect, with exactly one "yes" in every
/// context. Assignments are visited as binary numbers (effect 0 is bit 0).
inline NoncontextualResult noncontextual_search(const ContextFamily& fam,
                                                std::size_t max_effects = kMaxAssignmentEffects) {
  fam.validate();
  const std::size_t n = fam.effects.size();
  if (n > max_effects || n >= 64) throw std::length_error("noncontextual_search: too many effects");
  NoncontextualResult res;
  const std::uint64_t total = std::uint64_t{1} << n;
  for (std::uint64_t mask = 0; mask < total; ++mask) {
    ++res.examined;
    bool ok = true;
    for (const auto& ctx : fam.contexts) {
      std::size_t yes = 0;
      for (auto k : ctx) yes += (mask >> k) & 1U;
      if (yes != 1) {
        ok = false;
        break;
      }
    }
    if (!ok) continue;
    std::vector<bool> a(n);
    for (std::size_t k = 0; k < n; ++k) a[k] = (mask >> k) & 1U;
    res.assignment = std::move(a);
    return res;
  }
  return res;
}

/// Definite outcomes for every measurement of both parties.
using JointAssignment = DeterministicLocalStrategy;

struct SurvivorReport {
  std::vector<JointAssignment> survivors;
  std::uint64_t candidates = 0;
};

/// Joint assignments consistent with every block of t.
inline SurvivorReport joint_assignment_survivors(const PossibilityTable& t,
                                                 std::uint64_t budget = kDefaultStrategyBudget) {
  SurvivorReport rep;
  rep.candidates = strategy_count(t.scenario(), budget);
  for_each_strategy(
      t.scenario(),
      [&](const JointAssignment& h) {
        if (strategy_fits(t, h)) rep.survivors.push_back(h);
      },
      budget);
  return rep;
}

/// A measurement of the table, read with outcomes swapped when negated.
struct HardyRole {
  std::string measurement;
  bool negated = false;
};

/// A, B on system 1; C, D on system 2.
struct HardyMapping {
  HardyRole a, b, c, d;
};

/// (+,+|A,D) and (+,+|B,C) impossible, (+,+|B,D) possible, (-,-|A,C)
/// impossible. Outcome 0 is "+" and 1 is "-" before negation.
inline bool hardy_check(const PossibilityTable& t, const HardyMapping& m) {
  const auto& sc = t.scenario();
  auto resolve = [&](const HardyRole& role, bool row) {
    auto idx = row ? find_row(sc, role.measurement) : find_col(sc, role.measurement);
    if (!idx) throw std::invalid_argument("hardy_check: unknown measurement '" + role.measurement + "'");
    const auto outcomes = row ? sc.rows[*idx].outcomes : sc.cols[*idx].outcomes;
    if (outcomes != 2) throw std::invalid_argument("hardy_check: '" + role.measurement + "' is not two-outcome");
    return std::pair{*idx, role.negated};
  };
  const auto a = resolve(m.a, true);
  const auto b = resolve(m.b, true);
  const auto c = resolve(m.c, false);
  const auto d = resolve(m.d, false);
  auto marked = [&](std::pair<std::size_t, bool> x, std::size_t ox, std::pair<std::size_t, bool> y, std::size_t oy) {
    return t.at(x.first, y.first, x.second ? 1 - ox : ox, y.second ? 1 - oy : oy);
  };
  return !marked(a, 0, d, 0) && !marked(b, 0, c, 0) && marked(b, 0, d, 0) && !marked(a, 1, c, 1);
}

/// Players share a state and answer each question with a measurement.
struct SharedStateStrategy {
  MixedState state;
  std::vector<Measurement> meas1;
  std::vector<Measurement> meas2;
};

using GameStrategy = std::variant<DeterministicLocalStrategy, SharedStateStrategy>;

struct GameOutcome {
  bool wins_all = true;
  std::optional<std::pair<std::size_t, std::size_t>> losing_pair;
  std::size_t pairs_checked = 0;
};

/// Question pairs (U, V) are checked in row-major order. A shared-state
/// strategy wins a pair when every jointly possible answer is a mark of t.
inline GameOutcome play_game(const PossibilityTable& t, const GameStrategy& strategy) {
  GameOutcome out;
  PossibilityTable answers(t.scenario());
  if (const auto* s = std::get_if<DeterministicLocalStrategy>(&strategy)) {
    answers = deterministic_table(t.scenario(), *s);
  } else {
    const auto& q = std::get<SharedStateStrategy>(strategy);
    answers = build_table(q.state, q.meas1, q.meas2);
    if (!(answers.scenario() == t.scenario()))
      throw std::invalid_argument("play_game: strategy measurements do not match the table");
  }
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    for (std::size_t c = 0; c < t.col_count(); ++c) {
      ++out.pairs_checked;
      bool ok = true;
      for (std::size_t a = 0; a < t.row_outcomes(r); ++a)
        for (std::size_t b = 0; b < t.col_outcomes(c); ++b)
          if (answers.at(r, c, a, b) && !t.at(r, c, a, b)) ok = false;
      if (!ok) {
        out.wins_all = false;
        out.losing_pair.emplace(r, c);
        return out;
      }
    }
  }
  return out;
}

/// Number of deterministic strategies that win every question pair.
inline std::pair<std::uint64_t, std::uint64_t> count_classical_winners(const PossibilityTable& t) {
  std::uint64_t wins = 0;
  std::uint64_t total = 0;
  for_each_strategy(t.scenario(), [&](const DeterministicLocalStrategy& s) {
    ++total;
    if (play_game(t, s).wins_all) ++wins;
  });
  return {wins, total};
}

}  // namespace mqt
