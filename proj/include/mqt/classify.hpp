#pragma once

/// @file classify.hpp
/// Where a possibility table sits in the hierarchy LHV < SPR < WPR < NSP, and
/// whether a pure bipartite MQT state with local measurements produces it,
/// decided by bounded exhaustive search.

#include <algorithm>
#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "mqt/bipartite.hpp"
#include "mqt/enumerate.hpp"
#include "mqt/resolve.hpp"
#include "mqt/states.hpp"
#include "mqt/tables.hpp"

namespace mqt {

enum class Verdict { yes, no, unknown };

inline const char* to_string(Verdict v) {
  switch (v) {
    case Verdict::yes: return "yes";
    case Verdict::no: return "no";
    case Verdict::unknown: return "unknown";
  }
  return "?";
}

struct MqtSearchBounds {
  std::vector<std::uint32_t> primes{2, 3};
  std::size_t max_dim = 3;
  std::size_t max_outcomes = 3;
  /// Effects of one measurement meet pairwise in the null subspace.
  bool non_overlapping = true;
  /// Enumerate every pure state when the projective count is at most this;
  /// otherwise one Schmidt normal form per rank.
  std::uint64_t full_state_limit = 64;
  std::uint64_t work_budget = std::uint64_t{1} << 30;
};

struct MqtWitness {
  Ket state;
  std::vector<Measurement> meas1;
  std::vector<Measurement> meas2;
};

struct MqtSearchResult {
  Verdict verdict = Verdict::unknown;
  std::optional<MqtWitness> witness;
  std::string reason;
  std::uint64_t work = 0;
  std::uint64_t states_tried = 0;
};

namespace detail {

/// Nonnull dual subspaces of one local space, with the ordered effect
/// tuples that form admissible measurements.
class LocalCatalogue {
 public:
  LocalCatalogue(FieldSpec f, std::size_t dim, bool non_overlapping)
      : space_(f, dim), non_overlapping_(non_overlapping) {
    for (auto& e : all_subspaces<Variance::dual>(space_))
      if (!e.is_null()) subspaces_.push_back(std::move(e));
    const auto n = subspaces_.size();
    disjoint_.assign(n, std::vector<bool>(n));
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j)
        disjoint_[i][j] = join(subspaces_[i], subspaces_[j]).dim() == subspaces_[i].dim() + subspaces_[j].dim();
  }

  [[nodiscard]] const StateSpace& space() const noexcept { return space_; }
  [[nodiscard]] const std::vector<Effect>& subspaces() const noexcept { return subspaces_; }

  const std::vector<std::vector<std::size_t>>& measurements(std::size_t outcomes) {
    if (auto it = cache_.find(outcomes); it != cache_.end()) return it->second;
    std::vector<std::vector<std::size_t>> out;
    std::vector<std::size_t> tuple;
    auto rec = [&](auto&& self, const Effect& acc) -> void {
      if (tuple.size() == outcomes) {
        if (acc.is_full()) out.push_back(tuple);
        return;
      }
      for (std::size_t i = 0; i < subspaces_.size(); ++i) {
        bool ok = true;
        for (auto j : tuple)
          if (j == i || (non_overlapping_ && !disjoint_[i][j])) ok = false;
        if (!ok) continue;
        tuple.push_back(i);
        self(self, join(acc, subspaces_[i]));
        tuple.pop_back();
      }
    };
    rec(rec, Effect::null(space_));
    return cache_.emplace(outcomes, std::move(out)).first->second;
  }

 private:
  StateSpace space_;
  bool non_overlapping_;
  std::vector<Effect> subspaces_;
  std::vector<std::vector<bool>> disjoint_;
  std::map<std::size_t, std::vector<std::vector<std::size_t>>> cache_;
};

/// Arc-consistent backtracking over measurement choices for one fixed state.
class RealizationSearch {
 public:
  RealizationSearch(const PossibilityTable& t, const std::vector<std::vector<bool>>& possible,
                    std::vector<const std::vector<std::vector<std::size_t>>*> row_cands,
                    std::vector<const std::vector<std::vector<std::size_t>>*> col_cands, std::uint64_t& work,
                    std::uint64_t budget)
      : t_(t), possible_(possible), row_cands_(std::move(row_cands)), col_cands_(std::move(col_cands)),
        work_(work), budget_(budget) {}

  /// Chosen candidate index per row and column measurement; empty if none.
  /// Sets `exhausted` when the work budget ran out first.
  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> run(bool& exhausted) {
    exhausted = false;
    Domains rows(t_.row_count()), cols(t_.col_count());
    for (std::size_t r = 0; r < rows.size(); ++r)
      for (std::size_t i = 0; i < row_cands_[r]->size(); ++i) rows[r].push_back(i);
    for (std::size_t c = 0; c < cols.size(); ++c)
      for (std::size_t i = 0; i < col_cands_[c]->size(); ++i) cols[c].push_back(i);
    std::vector<std::size_t> chosen;
    auto found = assign(0, rows, cols, chosen, exhausted);
    if (!found) return std::nullopt;
    return found;
  }

 private:
  using Domains = std::vector<std::vector<std::size_t>>;

  bool matches(std::size_t r, std::size_t c, std::size_t i, std::size_t j) {
    ++work_;
    const auto& e = (*row_cands_[r])[i];
    const auto& f = (*col_cands_[c])[j];
    for (std::size_t a = 0; a < e.size(); ++a)
      for (std::size_t b = 0; b < f.size(); ++b)
        if (possible_[e[a]][f[b]] != t_.at(r, c, a, b)) return false;
    return true;
  }

  /// Removes unsupported values until stable; false when a domain empties.
  bool propagate(Domains& rows, Domains& cols, std::size_t first_row, bool& exhausted) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (std::size_t r = first_row; r < rows.size(); ++r) {
        auto& dom = rows[r];
        const auto before = dom.size();
        std::erase_if(dom, [&](std::size_t i) {
          for (std::size_t c = 0; c < cols.size(); ++c) {
            bool support = false;
            for (auto j : cols[c])
              if (matches(r, c, i, j)) {
                support = true;
                break;
              }
            if (!support) return true;
          }
          return false;
        });
        if (dom.empty()) return false;
        changed = changed || dom.size() != before;
      }
      for (std::size_t c = 0; c < cols.size(); ++c) {
        auto& dom = cols[c];
        const auto before = dom.size();
        std::erase_if(dom, [&](std::size_t j) {
          for (std::size_t r = 0; r < rows.size(); ++r) {
            bool support = false;
            for (auto i : rows[r])
              if (matches(r, c, i, j)) {
                support = true;
                break;
              }
            if (!support) return true;
          }
          return false;
        });
        if (dom.empty()) return false;
        changed = changed || dom.size() != before;
      }
      if (work_ > budget_) {
        exhausted = true;
        return false;
      }
    }
    return true;
  }

  std::optional<std::pair<std::vector<std::size_t>, std::vector<std::size_t>>> assign(
      std::size_t r, Domains rows, Domains cols, std::vector<std::size_t>& chosen, bool& exhausted) {
    if (!propagate(rows, cols, r, exhausted)) return std::nullopt;
    if (r == rows.size()) {
      std::vector<std::size_t> col_choice;
      for (const auto& d : cols) col_choice.push_back(d.front());
      return std::pair{chosen, col_choice};
    }
    for (auto i : rows[r]) {
      Domains next_cols = cols;
      bool dead = false;
      for (std::size_t c = 0; c < cols.size() && !dead; ++c) {
        std::erase_if(next_cols[c], [&](std::size_t j) { return !matches(r, c, i, j); });
        dead = next_cols[c].empty();
      }
      if (dead) continue;
      Domains next_rows = rows;
      next_rows[r] = {i};
      chosen.push_back(i);
      auto found = assign(r + 1, next_rows, std::move(next_cols), chosen, exhausted);
      chosen.pop_back();
      if (found || exhausted) return found;
    }
    return std::nullopt;
  }

  const PossibilityTable& t_;
  const std::vector<std::vector<bool>>& possible_;
  std::vector<const std::vector<std::vector<std::size_t>>*> row_cands_;
  std::vector<const std::vector<std::vector<std::size_t>>*> col_cands_;
  std::uint64_t& work_;
  std::uint64_t budget_;
};

/// Pure states to try on F_p^d1 (x) F_p^d2: all of them when few, else the
/// Schmidt normal forms sum_{k<s} |k,k>, one per rank. Every pure state is
/// a local invertible image of one of these, and local invertible maps
/// permute effect subspaces, so both lists reach the same tables.
inline std::vector<Ket> candidate_states(const StateSpace& joint, std::uint64_t full_limit) {
  const auto p = joint.field().modulus();
  if (projective_point_count(p, joint.dim()) <= full_limit) return projective_points<Variance::primal>(joint);
  const auto d1 = joint.factors()[0];
  const auto d2 = joint.factors()[1];
  std::vector<Ket> out;
  for (std::size_t s = 1; s <= std::min(d1, d2); ++s) {
    Coords c(joint.dim(), 0);
    for (std::size_t k = 0; k < s; ++k) c[k * d2 + k] = 1;
    out.emplace_back(joint, std::move(c));
  }
  return out;
}

}  // namespace detail

/// Searches p in bounds.primes, then local dimensions by increasing total,
/// for a pure state and local measurements whose table is exactly t.
inline MqtSearchResult mqt_search(const PossibilityTable& t, const MqtSearchBounds& bounds = {}) {
  MqtSearchResult res;
  const auto& sc = t.scenario();
  for (const auto* side : {&sc.rows, &sc.cols})
    for (const auto& m : *side)
      if (m.outcomes > bounds.max_outcomes) {
        res.reason = "measurement '" + m.label + "' exceeds the outcome bound";
        return res;
      }

  std::vector<std::pair<std::size_t, std::size_t>> dims;
  for (std::size_t d1 = 1; d1 <= bounds.max_dim; ++d1)
    for (std::size_t d2 = 1; d2 <= bounds.max_dim; ++d2) dims.emplace_back(d1, d2);
  std::stable_sort(dims.begin(), dims.end(),
                   [](auto x, auto y) { return x.first + x.second < y.first + y.second; });

  for (auto p : bounds.primes) {
    const FieldSpec f(p);
    std::map<std::size_t, detail::LocalCatalogue> catalogues;
    auto catalogue = [&](std::size_t d) -> detail::LocalCatalogue& {
      auto it = catalogues.find(d);
      if (it == catalogues.end()) it = catalogues.emplace(d, detail::LocalCatalogue(f, d, bounds.non_overlapping)).first;
      return it->second;
    };
    for (auto [d1, d2] : dims) {
      auto& cat1 = catalogue(d1);
      auto& cat2 = catalogue(d2);
      std::vector<const std::vector<std::vector<std::size_t>>*> rc, cc;
      bool empty = false;
      for (const auto& m : sc.rows) {
        rc.push_back(&cat1.measurements(m.outcomes));
        empty = empty || rc.back()->empty();
      }
      for (const auto& m : sc.cols) {
        cc.push_back(&cat2.measurements(m.outcomes));
        empty = empty || cc.back()->empty();
      }
      if (empty) continue;

      const StateSpace joint = tensor(cat1.space(), cat2.space());
      for (const auto& psi : detail::candidate_states(joint, bounds.full_state_limit)) {
        ++res.states_tried;
        const Matrix coeff = detail::coefficient_matrix(psi);
        const auto& s1 = cat1.subspaces();
        const auto& s2 = cat2.subspaces();
        std::vector<std::vector<bool>> possible(s1.size(), std::vector<bool>(s2.size()));
        for (std::size_t i = 0; i < s1.size(); ++i) {
          const Matrix left = s1[i].basis() * coeff;
          for (std::size_t j = 0; j < s2.size(); ++j) possible[i][j] = !(left * s2[j].basis().transpose()).is_zero();
        }
        res.work += s1.size() * s2.size();
        bool exhausted = false;
        detail::RealizationSearch search(t, possible, rc, cc, res.work, bounds.work_budget);
        auto found = search.run(exhausted);
        if (found) {
          MqtWitness w{psi, {}, {}};
          for (std::size_t r = 0; r < sc.rows.size(); ++r) {
            Measurement m{sc.rows[r].label, {}};
            for (auto k : (*rc[r])[found->first[r]]) m.effects.push_back(s1[k]);
            w.meas1.push_back(std::move(m));
          }
          for (std::size_t c = 0; c < sc.cols.size(); ++c) {
            Measurement m{sc.cols[c].label, {}};
            for (auto k : (*cc[c])[found->second[c]]) m.effects.push_back(s2[k]);
            w.meas2.push_back(std::move(m));
          }
          res.verdict = Verdict::yes;
          res.witness = std::move(w);
          res.reason = "realized over Z_" + std::to_string(p) + " with local dimensions " + std::to_string(d1) +
                       " and " + std::to_string(d2);
          return res;
        }
        if (exhausted || res.work > bounds.work_budget) {
          res.reason = "work budget exhausted";
          return res;
        }
      }
    }
  }
  res.verdict = Verdict::no;
  res.reason = "no realization within the search bounds";
  return res;
}

struct Classification {
  bool ns = false;
  bool wpr = false;
  bool spr = false;
  bool lhv = false;
  MqtSearchResult mqt;
};

inline Classification classify(const PossibilityTable& t, const MqtSearchBounds& bounds = {}) {
  Classification c;
  c.ns = check_modal_ns(t);
  c.wpr = weak_resolution(t).has_value();
  c.spr = strong_resolution(t).has_value();
  c.lhv = lhv_membership(t).has_value();
  if (!c.ns) {
    c.mqt.verdict = Verdict::no;
    c.mqt.reason = "not no-signalling";
  } else if (!c.wpr) {
    c.mqt.verdict = Verdict::no;
    c.mqt.reason = "not in WPR";
  } else {
    c.mqt = mqt_search(t, bounds);
  }
  return c;
}

}  // namespace mqt
