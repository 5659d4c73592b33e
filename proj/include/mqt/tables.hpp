#pragma once

/// @file tables.hpp
/// Bipartite tables indexed by (row measurement, column measurement,
/// row outcome, column outcome). Possibility tables carry marks; the same
/// grid holds exact probabilities in resolve.hpp.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mqt/states.hpp"

namespace mqt {

struct MeasurementSpec {
  std::string label;
  std::size_t outcomes;

  friend bool operator==(const MeasurementSpec&, const MeasurementSpec&) = default;
};

struct Scenario {
  std::vector<MeasurementSpec> rows;  ///< system 1
  std::vector<MeasurementSpec> cols;  ///< system 2

  void validate() const {
    if (rows.empty() || cols.empty()) throw std::invalid_argument("scenario needs measurements on both sides");
    for (const auto* side : {&rows, &cols})
      for (const auto& m : *side)
        if (m.outcomes == 0) throw std::invalid_argument("measurement '" + m.label + "' has no outcomes");
  }

  friend bool operator==(const Scenario&, const Scenario&) = default;
};

template <class Cell>
class BlockTable {
 public:
  explicit BlockTable(Scenario scenario, const Cell& fill = Cell{}) : scenario_(std::move(scenario)) {
    scenario_.validate();
    for (const auto& r : scenario_.rows)
      for (const auto& c : scenario_.cols) blocks_.emplace_back(r.outcomes * c.outcomes, fill);
  }

  [[nodiscard]] const Scenario& scenario() const noexcept { return scenario_; }
  [[nodiscard]] std::size_t row_count() const noexcept { return scenario_.rows.size(); }
  [[nodiscard]] std::size_t col_count() const noexcept { return scenario_.cols.size(); }
  [[nodiscard]] std::size_t row_outcomes(std::size_t r) const { return scenario_.rows.at(r).outcomes; }
  [[nodiscard]] std::size_t col_outcomes(std::size_t c) const { return scenario_.cols.at(c).outcomes; }

  [[nodiscard]] Cell at(std::size_t r, std::size_t c, std::size_t a, std::size_t b) const {
    return blocks_[block_index(r, c)][cell_index(c, a, b)];
  }
  void set(std::size_t r, std::size_t c, std::size_t a, std::size_t b, const Cell& v) {
    blocks_[block_index(r, c)][cell_index(c, a, b)] = v;
  }

  /// Calls fn(r, c, a, b) for every cell in row-major block order.
  template <class Fn>
  void for_each_cell(Fn&& fn) const {
    for (std::size_t r = 0; r < row_count(); ++r)
      for (std::size_t c = 0; c < col_count(); ++c)
        for (std::size_t a = 0; a < row_outcomes(r); ++a)
          for (std::size_t b = 0; b < col_outcomes(c); ++b) fn(r, c, a, b);
  }

  friend bool operator==(const BlockTable& x, const BlockTable& y) {
    return x.scenario_ == y.scenario_ && x.blocks_ == y.blocks_;
  }

 private:
  std::size_t block_index(std::size_t r, std::size_t c) const {
    if (r >= row_count() || c >= col_count()) throw std::out_of_range("table block out of range");
    return r * col_count() + c;
  }
  std::size_t cell_index(std::size_t c, std::size_t a, std::size_t b) const {
    return a * scenario_.cols[c].outcomes + b;
  }

  Scenario scenario_;
  std::vector<std::vector<Cell>> blocks_;
};

using PossibilityTable = BlockTable<bool>;

/// Fills one block from rows of 0/1 marks.
inline void set_block(PossibilityTable& t, std::size_t r, std::size_t c,
                      const std::vector<std::vector<int>>& marks) {
  if (marks.size() != t.row_outcomes(r)) throw std::invalid_argument("block row count mismatch");
  for (std::size_t a = 0; a < marks.size(); ++a) {
    if (marks[a].size() != t.col_outcomes(c)) throw std::invalid_argument("block column count mismatch");
    for (std::size_t b = 0; b < marks[a].size(); ++b) t.set(r, c, a, b, marks[a][b] != 0);
  }
}

inline bool block_nonempty(const PossibilityTable& t, std::size_t r, std::size_t c) {
  for (std::size_t a = 0; a < t.row_outcomes(r); ++a)
    for (std::size_t b = 0; b < t.col_outcomes(c); ++b)
      if (t.at(r, c, a, b)) return true;
  return false;
}

inline bool has_nonempty_blocks(const PossibilityTable& t) {
  for (std::size_t r = 0; r < t.row_count(); ++r)
    for (std::size_t c = 0; c < t.col_count(); ++c)
      if (!block_nonempty(t, r, c)) return false;
  return true;
}

inline std::size_t mark_count(const PossibilityTable& t) {
  std::size_t n = 0;
  t.for_each_cell([&](auto r, auto c, auto a, auto b) { n += t.at(r, c, a, b) ? 1 : 0; });
  return n;
}

/// Mark (a,c|A,C) iff the product effect E_a (x) F_c is possible for the state.
inline PossibilityTable build_table(const MixedState& state, const std::vector<Measurement>& meas1,
                                    const std::vector<Measurement>& meas2) {
  const auto& space = state.space();
  if (space.factor_count() != 2) throw std::invalid_argument("build_table: state must be bipartite");
  Scenario sc;
  for (const auto& m : meas1) {
    if (!validate_measurement(m)) throw std::invalid_argument("build_table: invalid measurement '" + m.label + "'");
    if (!(m.space() == space.factor(0))) throw std::invalid_argument("build_table: measurement '" + m.label + "' is not on system 1");
    sc.rows.push_back({m.label, m.outcomes()});
  }
  for (const auto& m : meas2) {
    if (!validate_measurement(m)) throw std::invalid_argument("build_table: invalid measurement '" + m.label + "'");
    if (!(m.space() == space.factor(1))) throw std::invalid_argument("build_table: measurement '" + m.label + "' is not on system 2");
    sc.cols.push_back({m.label, m.outcomes()});
  }
  PossibilityTable t(std::move(sc));
  for (std::size_t r = 0; r < meas1.size(); ++r)
    for (std::size_t c = 0; c < meas2.size(); ++c)
      for (std::size_t a = 0; a < meas1[r].outcomes(); ++a)
        for (std::size_t b = 0; b < meas2[c].outcomes(); ++b) {
          const Effect joint = product_effect(meas1[r].effects[a], meas2[c].effects[b]).in_space(space);
          t.set(r, c, a, b, is_possible(joint, state));
        }
  return t;
}

inline bool sub_row_marked(const PossibilityTable& t, std::size_t r, std::size_t c, std::size_t a) {
  for (std::size_t b = 0; b < t.col_outcomes(c); ++b)
    if (t.at(r, c, a, b)) return true;
  return false;
}

inline bool sub_col_marked(const PossibilityTable& t, std::size_t r, std::size_t c, std::size_t b) {
  for (std::size_t a = 0; a < t.row_outcomes(r); ++a)
    if (t.at(r, c, a, b)) return true;
  return false;
}

/// Modal no-signalling: whether outcome a of row measurement A is possible
/// does not depend on the column measurement, and dually for columns.
inline bool check_modal_ns(const PossibilityTable& t) {
  for (std::size_t r = 0; r < t.row_count(); ++r)
    for (std::size_t a = 0; a < t.row_outcomes(r); ++a) {
      const bool first = sub_row_marked(t, r, 0, a);
      for (std::size_t c = 1; c < t.col_count(); ++c)
        if (sub_row_marked(t, r, c, a) != first) return false;
    }
  for (std::size_t c = 0; c < t.col_count(); ++c)
    for (std::size_t b = 0; b < t.col_outcomes(c); ++b) {
      const bool first = sub_col_marked(t, 0, c, b);
      for (std::size_t r = 1; r < t.row_count(); ++r)
        if (sub_col_marked(t, r, c, b) != first) return false;
    }
  return true;
}

inline void require_same_scenario(const Scenario& a, const Scenario& b) {
  if (!(a == b)) throw std::invalid_argument("scenario mismatch");
}

/// Mixture of tables: possible in either.
inline PossibilityTable table_join(const PossibilityTable& x, const PossibilityTable& y) {
  require_same_scenario(x.scenario(), y.scenario());
  PossibilityTable out(x.scenario());
  x.for_each_cell([&](auto r, auto c, auto a, auto b) { out.set(r, c, a, b, x.at(r, c, a, b) || y.at(r, c, a, b)); });
  return out;
}

/// x precedes y: every mark of x is a mark of y.
inline bool table_leq(const PossibilityTable& x, const PossibilityTable& y) {
  require_same_scenario(x.scenario(), y.scenario());
  bool ok = true;
  x.for_each_cell([&](auto r, auto c, auto a, auto b) {
    if (x.at(r, c, a, b) && !y.at(r, c, a, b)) ok = false;
  });
  return ok;
}

/// Largest no-signalling table below t. An outcome whose sub-row (or
/// sub-column) is empty in one block is impossible in every NS table below t,
/// so its marks are cleared everywhere; repeat until stable.
inline PossibilityTable ns_closure(PossibilityTable t) {
  bool changed = true;
  while (changed) {
    changed = false;
    for (std::size_t r = 0; r < t.row_count(); ++r)
      for (std::size_t a = 0; a < t.row_outcomes(r); ++a) {
        bool dead = false;
        for (std::size_t c = 0; c < t.col_count() && !dead; ++c) dead = !sub_row_marked(t, r, c, a);
        if (!dead) continue;
        for (std::size_t c = 0; c < t.col_count(); ++c)
          for (std::size_t b = 0; b < t.col_outcomes(c); ++b)
            if (t.at(r, c, a, b)) {
              t.set(r, c, a, b, false);
              changed = true;
            }
      }
    for (std::size_t c = 0; c < t.col_count(); ++c)
      for (std::size_t b = 0; b < t.col_outcomes(c); ++b) {
        bool dead = false;
        for (std::size_t r = 0; r < t.row_count() && !dead; ++r) dead = !sub_col_marked(t, r, c, b);
        if (!dead) continue;
        for (std::size_t r = 0; r < t.row_count(); ++r)
          for (std::size_t a = 0; a < t.row_outcomes(r); ++a)
            if (t.at(r, c, a, b)) {
              t.set(r, c, a, b, false);
              changed = true;
            }
      }
  }
  return t;
}

/// Minimal among NS tables with nonempty blocks. Every strictly smaller NS
/// table misses some mark m and so lies below ns_closure(t - m); checking
/// each single removal is therefore exhaustive.
inline bool is_minimal_ns(const PossibilityTable& t) {
  if (!check_modal_ns(t)) throw std::invalid_argument("is_minimal_ns: table is not no-signalling");
  bool minimal = true;
  t.for_each_cell([&](auto r, auto c, auto a, auto b) {
    if (!minimal || !t.at(r, c, a, b)) return;
    PossibilityTable smaller = t;
    smaller.set(r, c, a, b, false);
    if (has_nonempty_blocks(ns_closure(std::move(smaller)))) minimal = false;
  });
  return minimal;
}

/// One definite outcome per measurement on each side.
struct DeterministicLocalStrategy {
  std::vector<std::size_t> f1;
  std::vector<std::size_t> f2;

  friend bool operator==(const DeterministicLocalStrategy&, const DeterministicLocalStrategy&) = default;
};

inline void validate_strategy(const Scenario& sc, const DeterministicLocalStrategy& s) {
  if (s.f1.size() != sc.rows.size() || s.f2.size() != sc.cols.size())
    throw std::invalid_argument("strategy does not match the scenario");
  for (std::size_t i = 0; i < s.f1.size(); ++i)
    if (s.f1[i] >= sc.rows[i].outcomes) throw std::invalid_argument("strategy outcome out of range");
  for (std::size_t i = 0; i < s.f2.size(); ++i)
    if (s.f2[i] >= sc.cols[i].outcomes) throw std::invalid_argument("strategy outcome out of range");
}

inline PossibilityTable deterministic_table(const Scenario& sc, const DeterministicLocalStrategy& s) {
  validate_strategy(sc, s);
  PossibilityTable t(sc);
  for (std::size_t r = 0; r < sc.rows.size(); ++r)
    for (std::size_t c = 0; c < sc.cols.size(); ++c) t.set(r, c, s.f1[r], s.f2[c], true);
  return t;
}

/// The strategy's answers land on a mark for every question pair.
inline bool strategy_fits(const PossibilityTable& t, const DeterministicLocalStrategy& s) {
  for (std::size_t r = 0; r < t.row_count(); ++r)
    for (std::size_t c = 0; c < t.col_count(); ++c)
      if (!t.at(r, c, s.f1[r], s.f2[c])) return false;
  return true;
}

inline constexpr std::uint64_t kDefaultStrategyBudget = std::uint64_t{1} << 24;

inline std::uint64_t strategy_count(const Scenario& sc, std::uint64_t budget = kDefaultStrategyBudget) {
  std::uint64_t n = 1;
  for (const auto* side : {&sc.rows, &sc.cols})
    for (const auto& m : *side) {
      if (n > budget / m.outcomes) throw std::length_error("strategy enumeration budget exceeded");
      n *= m.outcomes;
    }
  return n;
}

/// Visits every deterministic strategy pair, f1 then f2 in odometer order
/// (last measurement fastest).
template <class Fn>
void for_each_strategy(const Scenario& sc, Fn&& fn, std::uint64_t budget = kDefaultStrategyBudget) {
  strategy_count(sc, budget);
  DeterministicLocalStrategy s{std::vector<std::size_t>(sc.rows.size(), 0),
                               std::vector<std::size_t>(sc.cols.size(), 0)};
  std::vector<std::pair<std::size_t*, std::size_t>> digits;
  for (std::size_t i = 0; i < sc.rows.size(); ++i) digits.emplace_back(&s.f1[i], sc.rows[i].outcomes);
  for (std::size_t i = 0; i < sc.cols.size(); ++i) digits.emplace_back(&s.f2[i], sc.cols[i].outcomes);
  while (true) {
    fn(static_cast<const DeterministicLocalStrategy&>(s));
    std::size_t i = digits.size();
    while (i > 0) {
      --i;
      if (++*digits[i].first < digits[i].second) break;
      *digits[i].first = 0;
      if (i == 0) return;
    }
  }
}

/// Local hidden variable model: the strategies whose deterministic tables
/// lie below t, provided their join is t itself.
inline std::optional<std::vector<DeterministicLocalStrategy>> lhv_membership(
    const PossibilityTable& t, std::uint64_t budget = kDefaultStrategyBudget) {
  std::vector<DeterministicLocalStrategy> survivors;
  PossibilityTable covered(t.scenario());
  for_each_strategy(
      t.scenario(),
      [&](const DeterministicLocalStrategy& s) {
        if (!strategy_fits(t, s)) return;
        survivors.push_back(s);
        for (std::size_t r = 0; r < t.row_count(); ++r)
          for (std::size_t c = 0; c < t.col_count(); ++c) covered.set(r, c, s.f1[r], s.f2[c], true);
      },
      budget);
  if (!(covered == t)) return std::nullopt;
  return survivors;
}

inline std::optional<std::size_t> find_row(const Scenario& sc, const std::string& label) {
  for (std::size_t i = 0; i < sc.rows.size(); ++i)
    if (sc.rows[i].label == label) return i;
  return std::nullopt;
}

inline std::optional<std::size_t> find_col(const Scenario& sc, const std::string& label) {
  for (std::size_t i = 0; i < sc.cols.size(); ++i)
    if (sc.cols[i].label == label) return i;
  return std::nullopt;
}

}  // namespace mqt
