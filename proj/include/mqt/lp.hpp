#pragma once

/// @file lp.hpp
/// Exact rational linear programming over x >= 0: two-phase tableau simplex
/// with Bland's anti-cycling rule. Infeasible programs come back with a
/// Farkas certificate that can be re-checked independently.

#include <cstddef>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include "mqt/rational.hpp"

namespace mqt {

enum class Relation { eq, le, ge };
enum class Sense { minimize, maximize };
enum class LpStatus { optimal, infeasible, unbounded };

/// Sparse row: sum of coeff * x[var] (relation) rhs.
struct LinearConstraint {
  std::vector<std::pair<std::size_t, Rational>> terms;
  Relation relation = Relation::eq;
  Rational rhs;
  std::string tag;
};

class LinearProgram {
 public:
  explicit LinearProgram(std::size_t variables) : objective_(variables) {}

  [[nodiscard]] std::size_t variables() const noexcept { return objective_.size(); }
  [[nodiscard]] const std::vector<LinearConstraint>& constraints() const noexcept { return constraints_; }
  [[nodiscard]] const std::vector<Rational>& objective() const noexcept { return objective_; }
  [[nodiscard]] Sense sense() const noexcept { return sense_; }

  std::size_t add_variable() {
    objective_.emplace_back();
    return objective_.size() - 1;
  }

  void add(LinearConstraint c) {
    for (const auto& [v, _] : c.terms)
      if (v >= variables()) throw std::out_of_range("LinearProgram: unknown variable");
    constraints_.push_back(std::move(c));
  }

  void set_objective(std::vector<Rational> c, Sense sense) {
    if (c.size() != variables()) throw std::invalid_argument("LinearProgram: objective size mismatch");
    objective_ = std::move(c);
    sense_ = sense;
  }

  /// Objective that optimizes a single variable.
  void optimize_variable(std::size_t v, Sense sense) {
    std::vector<Rational> c(variables());
    c.at(v) = 1;
    set_objective(std::move(c), sense);
  }

  void drop_constraints_if(auto&& pred) { std::erase_if(constraints_, pred); }

 private:
  std::vector<LinearConstraint> constraints_;
  std::vector<Rational> objective_;
  Sense sense_ = Sense::minimize;
};

struct LpResult {
  LpStatus status = LpStatus::infeasible;
  std::vector<Rational> x;
  Rational value;
  /// One multiplier per constraint when infeasible (see verify_farkas).
  std::vector<Rational> farkas;
  std::size_t pivots = 0;
};

inline Rational evaluate(const LinearConstraint& c, const std::vector<Rational>& x) {
  Rational s = 0;
  for (const auto& [v, a] : c.terms) s += a * x.at(v);
  return s;
}

/// x >= 0 and every constraint holds exactly.
inline bool is_feasible_point(const LinearProgram& lp, const std::vector<Rational>& x) {
  if (x.size() != lp.variables()) return false;
  for (const auto& v : x)
    if (v < 0) return false;
  for (const auto& c : lp.constraints()) {
    const Rational lhs = evaluate(c, x);
    const bool ok = c.relation == Relation::eq   ? lhs == c.rhs
                    : c.relation == Relation::le ? lhs <= c.rhs
                                                 : lhs >= c.rhs;
    if (!ok) return false;
  }
  return true;
}

/// y proves infeasibility when sum_i y_i a_ij <= 0 for every variable j,
/// y_i <= 0 on "le" rows, y_i >= 0 on "ge" rows, and sum_i y_i b_i > 0:
/// any x >= 0 would give 0 >= y.Ax >= y.b > 0.
inline bool verify_farkas(const LinearProgram& lp, const std::vector<Rational>& y) {
  const auto& cs = lp.constraints();
  if (y.size() != cs.size()) return false;
  std::vector<Rational> combo(lp.variables());
  Rational rhs = 0;
  for (std::size_t i = 0; i < cs.size(); ++i) {
    if (cs[i].relation == Relation::le && y[i] > 0) return false;
    if (cs[i].relation == Relation::ge && y[i] < 0) return false;
    if (y[i] == 0) continue;
    for (const auto& [v, a] : cs[i].terms) combo[v] += y[i] * a;
    rhs += y[i] * cs[i].rhs;
  }
  for (const auto& v : combo)
    if (v > 0) return false;
  return rhs > 0;
}

namespace detail {

class Tableau {
 public:
  Tableau(std::size_t rows, std::size_t cols) : cols_(cols), a_(rows, std::vector<Rational>(cols + 1)), basis_(rows) {}

  [[nodiscard]] std::size_t rows() const noexcept { return a_.size(); }
  [[nodiscard]] std::size_t cols() const noexcept { return cols_; }
  Rational& at(std::size_t i, std::size_t j) { return a_[i][j]; }
  Rational& rhs(std::size_t i) { return a_[i][cols_]; }
  std::size_t& basic(std::size_t i) { return basis_[i]; }
  std::vector<Rational>& cost() { return cost_; }

  void set_cost(std::vector<Rational> c) {
    c.resize(cols_ + 1);
    cost_ = std::move(c);
    for (std::size_t i = 0; i < rows(); ++i) {
      const Rational cb = cost_[basis_[i]];
      if (cb == 0) continue;
      for (std::size_t j = 0; j <= cols_; ++j)
        if (a_[i][j] != 0) cost_[j] -= cb * a_[i][j];
    }
  }

  void pivot(std::size_t r, std::size_t c) {
    auto& pr = a_[r];
    const Rational inv = 1 / pr[c];
    std::vector<std::size_t> nz;
    for (std::size_t j = 0; j <= cols_; ++j) {
      if (pr[j] == 0) continue;
      pr[j] *= inv;
      nz.push_back(j);
    }
    auto eliminate = [&](std::vector<Rational>& row) {
      if (row[c] == 0) return;
      const Rational factor = row[c];
      for (auto j : nz) row[j] -= factor * pr[j];
    };
    for (std::size_t i = 0; i < rows(); ++i)
      if (i != r) eliminate(a_[i]);
    eliminate(cost_);
    basis_[r] = c;
  }

  /// Bland's rule: smallest improving column, then smallest leaving basic
  /// index among tied ratios. Returns false on unboundedness.
  bool optimize(const std::vector<bool>& allowed, std::size_t& pivots) {
    while (true) {
      std::size_t enter = cols_;
      for (std::size_t j = 0; j < cols_; ++j)
        if (allowed[j] && cost_[j] < 0) {
          enter = j;
          break;
        }
      if (enter == cols_) return true;
      std::size_t leave = rows();
      Rational best;
      for (std::size_t i = 0; i < rows(); ++i) {
        if (a_[i][enter] <= 0) continue;
        Rational ratio = a_[i][cols_] / a_[i][enter];
        if (leave == rows() || ratio < best || (ratio == best && basis_[i] < basis_[leave])) {
          leave = i;
          best = std::move(ratio);
        }
      }
      if (leave == rows()) return false;
      pivot(leave, enter);
      ++pivots;
    }
  }

 private:
  std::size_t cols_;
  std::vector<std::vector<Rational>> a_;
  std::vector<std::size_t> basis_;
  std::vector<Rational> cost_;
};

}  // namespace detail

/// Column layout: structural variables, one slack per inequality, one
/// artificial per row. Phase 1 minimizes the artificial sum; its final
/// duals give the Farkas certificate when the minimum is positive.
inline LpResult solve(const LinearProgram& lp) {
  const auto& cs = lp.constraints();
  const std::size_t n = lp.variables();
  const std::size_t m = cs.size();
  std::size_t slacks = 0;
  for (const auto& c : cs) slacks += c.relation != Relation::eq;
  const std::size_t art0 = n + slacks;
  const std::size_t cols = art0 + m;

  detail::Tableau tab(m, cols);
  std::vector<int> sign(m, 1);
  std::size_t slack = n;
  for (std::size_t i = 0; i < m; ++i) {
    const auto& c = cs[i];
    sign[i] = c.rhs < 0 ? -1 : 1;
    for (const auto& [v, a] : c.terms) tab.at(i, v) += sign[i] * a;
    if (c.relation != Relation::eq) tab.at(i, slack++) = sign[i] * (c.relation == Relation::le ? 1 : -1);
    tab.rhs(i) = sign[i] * c.rhs;
    tab.at(i, art0 + i) = 1;
    tab.basic(i) = art0 + i;
  }

  LpResult res;
  std::vector<Rational> phase1(cols);
  for (std::size_t i = 0; i < m; ++i) phase1[art0 + i] = 1;
  tab.set_cost(phase1);
  std::vector<bool> allowed(cols, true);
  tab.optimize(allowed, res.pivots);

  if (tab.cost()[cols] != 0) {
    // Reduced cost of artificial i is 1 - y_i.
    res.status = LpStatus::infeasible;
    res.farkas.resize(m);
    for (std::size_t i = 0; i < m; ++i) res.farkas[i] = sign[i] * (1 - tab.cost()[art0 + i]);
    return res;
  }

  for (std::size_t i = 0; i < m; ++i) {
    if (tab.basic(i) < art0) continue;
    for (std::size_t j = 0; j < art0; ++j)
      if (tab.at(i, j) != 0) {
        tab.pivot(i, j);
        ++res.pivots;
        break;
      }
  }
  for (std::size_t j = art0; j < cols; ++j) allowed[j] = false;

  std::vector<Rational> phase2(cols);
  for (std::size_t j = 0; j < n; ++j)
    phase2[j] = lp.sense() == Sense::maximize ? Rational(-lp.objective()[j]) : lp.objective()[j];
  tab.set_cost(phase2);
  if (!tab.optimize(allowed, res.pivots)) {
    res.status = LpStatus::unbounded;
    return res;
  }

  res.status = LpStatus::optimal;
  res.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < m; ++i)
    if (tab.basic(i) < n) res.x[tab.basic(i)] = tab.rhs(i);
  for (std::size_t j = 0; j < n; ++j) res.value += lp.objective()[j] * res.x[j];
  return res;
}

}  // namespace mqt
