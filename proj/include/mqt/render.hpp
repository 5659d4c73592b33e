#pragma once

/// @file render.hpp
/// Plain-text grids: one bracketed block per measurement pair, "X" for a
/// mark and a space for a blank.

#include <algorithm>
#include <functional>
#include <sstream>
#include <string>
#include <vector>

#include "mqt/resolve.hpp"
#include "mqt/tables.hpp"

namespace mqt {

namespace detail {

inline std::string pad(const std::string& s, std::size_t w) {
  const auto left = (w > s.size()) ? (w - s.size()) / 2 : 0;
  const auto right = (w > s.size() + left) ? w - s.size() - left : 0;
  return std::string(left, ' ') + s + std::string(right, ' ');
}

inline std::string render_grid(const Scenario& sc,
                               const std::function<std::string(std::size_t, std::size_t, std::size_t, std::size_t)>& text,
                               std::size_t cell_width) {
  std::size_t label_w = 0;
  for (const auto& m : sc.rows) label_w = std::max(label_w, m.label.size());
  label_w += 2;
  std::vector<std::size_t> block_w;
  for (const auto& m : sc.cols) block_w.push_back(m.outcomes * (cell_width + 1) + 1);

  std::ostringstream os;
  std::string header(label_w, ' ');
  for (std::size_t c = 0; c < sc.cols.size(); ++c) header += pad(sc.cols[c].label, block_w[c]) + "  ";
  while (header.back() == ' ') header.pop_back();
  os << header << '\n';
  for (std::size_t r = 0; r < sc.rows.size(); ++r) {
    for (std::size_t a = 0; a < sc.rows[r].outcomes; ++a) {
      std::string line = a == 0 ? sc.rows[r].label : "";
      line.resize(label_w, ' ');
      for (std::size_t c = 0; c < sc.cols.size(); ++c) {
        line += '[';
        for (std::size_t b = 0; b < sc.cols[c].outcomes; ++b) {
          if (b > 0) line += '|';
          line += pad(text(r, c, a, b), cell_width);
        }
        line += "]  ";
      }
      while (!line.empty() && line.back() == ' ') line.pop_back();
      os << line << '\n';
    }
    if (r + 1 < sc.rows.size()) os << '\n';
  }
  return os.str();
}

}  // namespace detail

inline std::string render(const PossibilityTable& t) {
  return detail::render_grid(
      t.scenario(), [&](auto r, auto c, auto a, auto b) { return std::string(t.at(r, c, a, b) ? "X" : " "); }, 1);
}

inline std::string render(const ProbabilityTable& pt) {
  std::size_t w = 1;
  pt.for_each_cell([&](auto r, auto c, auto a, auto b) { w = std::max(w, to_display_string(pt.at(r, c, a, b)).size()); });
  return detail::render_grid(
      pt.scenario(), [&](auto r, auto c, auto a, auto b) { return to_display_string(pt.at(r, c, a, b)); }, w);
}

/// "p = 2/3, q = 1/3" with the block's marked cells named p, q, r, ...
inline std::string describe_values(const std::vector<std::optional<Rational>>& values) {
  static const std::string names = "pqrstuvwxyzabcdefghijklmno";
  std::string out;
  for (std::size_t i = 0; i < values.size(); ++i) {
    if (!out.empty()) out += ", ";
    const std::string name = i < names.size() ? std::string(1, names[i]) : "x" + std::to_string(i);
    out += name + " = " + (values[i] ? to_display_string(*values[i]) : std::string("free"));
  }
  return out;
}

inline std::string describe_conflict(const Scenario& sc, const BlockConflict& bc) {
  const auto& rl = sc.rows[bc.row].label;
  const auto& cl = sc.cols[bc.col].label;
  std::ostringstream os;
  os << "block (" << rl << "," << cl << "): the " << rl << " row forces " << describe_values(bc.from_row)
     << ", the " << cl << " column forces " << describe_values(bc.from_col);
  return os.str();
}

}  // namespace mqt
