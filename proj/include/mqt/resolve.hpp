#pragma once

/// @file resolve.hpp
/// Probabilistic resolutions of possibility tables: exact LP feasibility
/// (weak), max-min margin (strong), uniqueness, localization of
/// infeasibility, and the matching construction for pure bipartite states.

#include <algorithm>
#include <functional>
#include <map>
#include <optional>
#include <stdexcept>
#include <string>
#include <tuple>
#include <utility>
#include <vector>

#include "mqt/bipartite.hpp"
#include "mqt/lp.hpp"
#include "mqt/rational.hpp"
#include "mqt/states.hpp"
#include "mqt/tables.hpp"

namespace mqt {

using ProbabilityTable = BlockTable<Rational>;

inline Rational block_sum(const ProbabilityTable& pt, std::size_t r, std::size_t c) {
  Rational s = 0;
  for (std::size_t a = 0; a < pt.row_outcomes(r); ++a)
    for (std::size_t b = 0; b < pt.col_outcomes(c); ++b) s += pt.at(r, c, a, b);
  return s;
}

inline Rational row_marginal(const ProbabilityTable& pt, std::size_t r, std::size_t c, std::size_t a) {
  Rational s = 0;
  for (std::size_t b = 0; b < pt.col_outcomes(c); ++b) s += pt.at(r, c, a, b);
  return s;
}

inline Rational col_marginal(const ProbabilityTable& pt, std::size_t r, std::size_t c, std::size_t b) {
  Rational s = 0;
  for (std::size_t a = 0; a < pt.row_outcomes(r); ++a) s += pt.at(r, c, a, b);
  return s;
}

/// Nonnegative, normalized blocks, and marginals independent of the other
/// party's measurement.
inline bool check_prob_ns(const ProbabilityTable& pt) {
  bool ok = true;
  pt.for_each_cell([&](auto r, auto c, auto a, auto b) { ok = ok && pt.at(r, c, a, b) >= 0; });
  if (!ok) return false;
  for (std::size_t r = 0; r < pt.row_count(); ++r)
    for (std::size_t c = 0; c < pt.col_count(); ++c)
      if (block_sum(pt, r, c) != 1) return false;
  for (std::size_t r = 0; r < pt.row_count(); ++r)
    for (std::size_t a = 0; a < pt.row_outcomes(r); ++a)
      for (std::size_t c = 1; c < pt.col_count(); ++c)
        if (row_marginal(pt, r, c, a) != row_marginal(pt, r, 0, a)) return false;
  for (std::size_t c = 0; c < pt.col_count(); ++c)
    for (std::size_t b = 0; b < pt.col_outcomes(c); ++b)
      for (std::size_t r = 1; r < pt.row_count(); ++r)
        if (col_marginal(pt, r, c, b) != col_marginal(pt, 0, c, b)) return false;
  return true;
}

inline bool zero_on_blanks(const ProbabilityTable& pt, const PossibilityTable& t) {
  require_same_scenario(pt.scenario(), t.scenario());
  bool ok = true;
  pt.for_each_cell([&](auto r, auto c, auto a, auto b) {
    if (!t.at(r, c, a, b) && pt.at(r, c, a, b) != 0) ok = false;
  });
  return ok;
}

/// Cells with nonzero probability.
inline PossibilityTable support(const ProbabilityTable& pt) {
  PossibilityTable t(pt.scenario());
  pt.for_each_cell([&](auto r, auto c, auto a, auto b) { t.set(r, c, a, b, pt.at(r, c, a, b) != 0); });
  return t;
}

namespace detail {

/// One LP variable per marked cell, one per row-party marginal (r, a) and
/// one per column-party marginal (c, b). Blank cells are fixed at zero by
/// having no variable. Every block is tied to both marginals, so dropping a
/// block's row-side or column-side ties is a single filter on tags.
struct ResolutionModel {
  LinearProgram lp{0};
  std::map<std::tuple<std::size_t, std::size_t, std::size_t, std::size_t>, std::size_t> cell_var;
  std::optional<std::size_t> margin_var;

  [[nodiscard]] std::optional<std::size_t> var(std::size_t r, std::size_t c, std::size_t a, std::size_t b) const {
    auto it = cell_var.find({r, c, a, b});
    if (it == cell_var.end()) return std::nullopt;
    return it->second;
  }
};

inline std::string block_tag(const char* kind, std::size_t r, std::size_t c, std::size_t o) {
  return std::string(kind) + ":" + std::to_string(r) + "," + std::to_string(c) + ":" + std::to_string(o);
}

inline ResolutionModel resolution_model(const PossibilityTable& t, bool with_margin) {
  ResolutionModel m;
  t.for_each_cell([&](auto r, auto c, auto a, auto b) {
    if (t.at(r, c, a, b)) m.cell_var[{r, c, a, b}] = m.lp.add_variable();
  });
  std::vector<std::vector<std::size_t>> row_marg(t.row_count()), col_marg(t.col_count());
  for (std::size_t r = 0; r < t.row_count(); ++r)
    for (std::size_t a = 0; a < t.row_outcomes(r); ++a) row_marg[r].push_back(m.lp.add_variable());
  for (std::size_t c = 0; c < t.col_count(); ++c)
    for (std::size_t b = 0; b < t.col_outcomes(c); ++b) col_marg[c].push_back(m.lp.add_variable());

  for (std::size_t r = 0; r < t.row_count(); ++r) {
    for (std::size_t c = 0; c < t.col_count(); ++c) {
      LinearConstraint norm{{}, Relation::eq, 1, block_tag("norm", r, c, 0)};
      for (std::size_t a = 0; a < t.row_outcomes(r); ++a)
        for (std::size_t b = 0; b < t.col_outcomes(c); ++b)
          if (auto v = m.var(r, c, a, b)) norm.terms.emplace_back(*v, 1);
      m.lp.add(std::move(norm));

      for (std::size_t a = 0; a < t.row_outcomes(r); ++a) {
        LinearConstraint tie{{{row_marg[r][a], -1}}, Relation::eq, 0, block_tag("row", r, c, a)};
        for (std::size_t b = 0; b < t.col_outcomes(c); ++b)
          if (auto v = m.var(r, c, a, b)) tie.terms.emplace_back(*v, 1);
        m.lp.add(std::move(tie));
      }
      for (std::size_t b = 0; b < t.col_outcomes(c); ++b) {
        LinearConstraint tie{{{col_marg[c][b], -1}}, Relation::eq, 0, block_tag("col", r, c, b)};
        for (std::size_t a = 0; a < t.row_outcomes(r); ++a)
          if (auto v = m.var(r, c, a, b)) tie.terms.emplace_back(*v, 1);
        m.lp.add(std::move(tie));
      }
    }
  }

  if (with_margin) {
    m.margin_var = m.lp.add_variable();
    for (const auto& [cell, v] : m.cell_var)
      m.lp.add({{{v, 1}, {*m.margin_var, -1}}, Relation::ge, 0, "margin"});
    m.lp.optimize_variable(*m.margin_var, Sense::maximize);
  }
  return m;
}

inline ProbabilityTable extract_table(const PossibilityTable& t, const ResolutionModel& m,
                                      const std::vector<Rational>& x) {
  ProbabilityTable pt(t.scenario(), Rational(0));
  for (const auto& [cell, v] : m.cell_var) {
    const auto& [r, c, a, b] = cell;
    pt.set(r, c, a, b, x[v]);
  }
  return pt;
}

}  // namespace detail

/// Infeasibility proof: multipliers on the named constraints of the
/// resolution LP (see verify_farkas).
struct InfeasibilityCertificate {
  LinearProgram program{0};
  std::vector<Rational> multipliers;

  [[nodiscard]] bool verify() const { return verify_farkas(program, multipliers); }
};

struct WeakResolution {
  std::optional<ProbabilityTable> table;
  std::optional<InfeasibilityCertificate> certificate;
};

/// A feasible point of the resolution polytope, or a certificate that the
/// polytope is empty.
inline WeakResolution analyze_weak(const PossibilityTable& t) {
  auto model = detail::resolution_model(t, false);
  auto res = solve(model.lp);
  WeakResolution out;
  if (res.status == LpStatus::optimal) {
    out.table = detail::extract_table(t, model, res.x);
  } else {
    out.certificate = InfeasibilityCertificate{std::move(model.lp), std::move(res.farkas)};
  }
  return out;
}

inline std::optional<ProbabilityTable> weak_resolution(const PossibilityTable& t) { return analyze_weak(t).table; }

struct StrongResolution {
  /// max over resolutions of the smallest probability on a mark; absent if
  /// no weak resolution exists.
  std::optional<Rational> margin;
  std::optional<ProbabilityTable> table;
};

inline StrongResolution analyze_strong(const PossibilityTable& t) {
  auto model = detail::resolution_model(t, true);
  auto res = solve(model.lp);
  StrongResolution out;
  if (res.status != LpStatus::optimal) return out;
  out.margin = res.value;
  if (res.value > 0) out.table = detail::extract_table(t, model, res.x);
  return out;
}

inline std::optional<ProbabilityTable> strong_resolution(const PossibilityTable& t) {
  return analyze_strong(t).table;
}

namespace detail {

inline std::pair<Rational, Rational> cell_range(LinearProgram lp, std::size_t v) {
  lp.optimize_variable(v, Sense::minimize);
  auto lo = solve(lp);
  lp.optimize_variable(v, Sense::maximize);
  auto hi = solve(lp);
  if (lo.status != LpStatus::optimal || hi.status != LpStatus::optimal)
    throw std::logic_error("cell_range: program is not bounded and feasible");
  return {lo.value, hi.value};
}

}  // namespace detail

/// Every marked cell takes the same value in all resolutions.
inline bool resolution_unique(const PossibilityTable& t) {
  auto model = detail::resolution_model(t, false);
  if (solve(model.lp).status != LpStatus::optimal)
    throw std::invalid_argument("resolution_unique: table has no weak resolution");
  for (const auto& [cell, v] : model.cell_var) {
    auto [lo, hi] = detail::cell_range(model.lp, v);
    if (lo != hi) return false;
  }
  return true;
}

/// One block whose own no-signalling ties cannot both hold: keeping only the
/// ties to its row party's marginals pins the block to `from_row`, keeping
/// only the column ties pins it to `from_col`, and the two disagree.
struct BlockConflict {
  std::size_t row = 0;
  std::size_t col = 0;
  /// Marked cells (a, b) of the block, in row-major order.
  std::vector<std::pair<std::size_t, std::size_t>> cells;
  /// Value forced on each marked cell, absent where the relaxation leaves
  /// it free.
  std::vector<std::optional<Rational>> from_row;
  std::vector<std::optional<Rational>> from_col;
  /// Both relaxations pin every marked cell of the block.
  bool fully_determined = false;
};

namespace detail {

inline std::optional<std::vector<std::optional<Rational>>> forced_values(
    const PossibilityTable& t, std::size_t r, std::size_t c, const char* dropped_kind) {
  auto model = resolution_model(t, false);
  const std::string prefix = std::string(dropped_kind) + ":" + std::to_string(r) + "," + std::to_string(c) + ":";
  model.lp.drop_constraints_if([&](const LinearConstraint& k) { return k.tag.starts_with(prefix); });
  if (solve(model.lp).status != LpStatus::optimal) return std::nullopt;
  std::vector<std::optional<Rational>> out;
  for (std::size_t a = 0; a < t.row_outcomes(r); ++a)
    for (std::size_t b = 0; b < t.col_outcomes(c); ++b) {
      auto v = model.var(r, c, a, b);
      if (!v) continue;
      auto [lo, hi] = cell_range(model.lp, *v);
      out.push_back(lo == hi ? std::optional<Rational>(lo) : std::nullopt);
    }
  return out;
}

}  // namespace detail

/// Blocks at which an infeasible table breaks: for each block, relax its
/// column-side ties (resp. row-side ties) and read off the forced values.
/// Reported blocks have some cell forced to two different values; fully
/// determined conflicts are listed first.
inline std::vector<BlockConflict> localize_infeasibility(const PossibilityTable& t) {
  std::vector<BlockConflict> full, partial;
  for (std::size_t r = 0; r < t.row_count(); ++r) {
    for (std::size_t c = 0; c < t.col_count(); ++c) {
      if (!block_nonempty(t, r, c)) continue;
      auto by_row = detail::forced_values(t, r, c, "col");
      if (!by_row) continue;
      auto by_col = detail::forced_values(t, r, c, "row");
      if (!by_col) continue;
      BlockConflict bc{r, c, {}, std::move(*by_row), std::move(*by_col), true};
      bool clash = false;
      for (std::size_t a = 0; a < t.row_outcomes(r); ++a)
        for (std::size_t b = 0; b < t.col_outcomes(c); ++b)
          if (t.at(r, c, a, b)) bc.cells.emplace_back(a, b);
      for (std::size_t i = 0; i < bc.cells.size(); ++i) {
        const auto& x = bc.from_row[i];
        const auto& y = bc.from_col[i];
        if (!x || !y) bc.fully_determined = false;
        if (x && y && *x != *y) clash = true;
      }
      if (!clash) continue;
      (bc.fully_determined ? full : partial).push_back(std::move(bc));
    }
  }
  full.insert(full.end(), std::make_move_iterator(partial.begin()), std::make_move_iterator(partial.end()));
  return full;
}

/// Maximum bipartite matching by augmenting paths (Kuhn). Rows are taken in
/// index order and columns are tried in index order, so the result is
/// deterministic. Returns (row, col) pairs sorted by row.
inline std::vector<std::pair<std::size_t, std::size_t>> max_matching(const std::vector<std::vector<bool>>& adj) {
  const std::size_t rows = adj.size();
  std::size_t cols = 0;
  for (const auto& row : adj) cols = std::max(cols, row.size());
  constexpr auto none = static_cast<std::size_t>(-1);
  std::vector<std::size_t> match_col(cols, none);
  std::vector<bool> seen;

  std::function<bool(std::size_t)> augment = [&](std::size_t u) {
    for (std::size_t v = 0; v < adj[u].size(); ++v) {
      if (!adj[u][v] || seen[v]) continue;
      seen[v] = true;
      if (match_col[v] == none || augment(match_col[v])) {
        match_col[v] = u;
        return true;
      }
    }
    return false;
  };
  for (std::size_t u = 0; u < rows; ++u) {
    seen.assign(cols, false);
    augment(u);
  }
  std::vector<std::pair<std::size_t, std::size_t>> out;
  for (std::size_t v = 0; v < cols; ++v)
    if (match_col[v] != none) out.emplace_back(match_col[v], v);
  std::sort(out.begin(), out.end());
  return out;
}

namespace detail {

/// Splits every effect into its basis bras and keeps a maximal independent
/// family, remembering the coarse outcome each bra came from. Surplus bras
/// of an over-complete measurement are dropped.
struct FineGrained {
  std::vector<Bra> bras;
  std::vector<std::size_t> parent;
};

inline FineGrained fine_grain(const Measurement& m) {
  FineGrained fg;
  const StateSpace& s = m.space();
  Matrix acc(s.field(), 0, s.dim());
  for (std::size_t o = 0; o < m.effects.size(); ++o) {
    for (const auto& bra : m.effects[o].basis_vectors()) {
      Matrix next = vstack(acc, Matrix::from_rows(s.field(), s.dim(), {bra.coords()}));
      if (rank(next) == acc.rows()) continue;
      acc = std::move(next);
      fg.bras.push_back(bra);
      fg.parent.push_back(o);
    }
  }
  if (fg.bras.size() != s.dim()) throw std::invalid_argument("hall_resolution: measurement does not span");
  return fg;
}

}  // namespace detail

/// Weak resolution of the table of a pure state with full Schmidt number:
/// in every block, a perfect matching between the two fine-grained bases
/// along possible outcome pairs receives probability 1/d each.
inline ProbabilityTable hall_resolution(const Ket& psi, const std::vector<Measurement>& meas1,
                                        const std::vector<Measurement>& meas2) {
  detail::require_bipartite(psi.space());
  const std::size_t d1 = psi.space().factors()[0];
  const std::size_t d2 = psi.space().factors()[1];
  if (d1 != d2) throw std::invalid_argument("hall_resolution: subsystems differ in dimension");
  if (schmidt(psi).rank != d1) throw std::invalid_argument("hall_resolution: Schmidt number is not maximal");
  const std::size_t d = d1;

  std::vector<MeasurementSpec> rows, cols;
  std::vector<detail::FineGrained> fine1, fine2;
  for (const auto& m : meas1) {
    if (!validate_measurement(m)) throw std::invalid_argument("hall_resolution: invalid measurement " + m.label);
    rows.push_back({m.label, m.outcomes()});
    fine1.push_back(detail::fine_grain(m));
  }
  for (const auto& m : meas2) {
    if (!validate_measurement(m)) throw std::invalid_argument("hall_resolution: invalid measurement " + m.label);
    cols.push_back({m.label, m.outcomes()});
    fine2.push_back(detail::fine_grain(m));
  }

  ProbabilityTable pt(Scenario{rows, cols}, Rational(0));
  const Rational share(1, static_cast<long long>(d));
  for (std::size_t r = 0; r < meas1.size(); ++r) {
    for (std::size_t c = 0; c < meas2.size(); ++c) {
      std::vector<std::vector<bool>> adj(d, std::vector<bool>(d));
      for (std::size_t j = 0; j < d; ++j)
        for (std::size_t k = 0; k < d; ++k) adj[j][k] = pairing(tensor(fine1[r].bras[j], fine2[c].bras[k]), psi) != 0;
      auto matching = max_matching(adj);
      if (matching.size() != d)
        throw std::logic_error("hall_resolution: no perfect matching in block (" + meas1[r].label + "," +
                               meas2[c].label + ")");
      for (const auto& [j, k] : matching) {
        const auto a = fine1[r].parent[j];
        const auto b = fine2[c].parent[k];
        pt.set(r, c, a, b, pt.at(r, c, a, b) + share);
      }
    }
  }
  return pt;
}

}  // namespace mqt
