#pragma once

/// @file json_io.hpp
/// JSON forms of tables, vectors, subspaces, measurements, operators and
/// strategies. Readers report failures with the path of the offending node.
///
///   table:  {"scenario": {"rows": [{"label","outcomes"}], "cols": [...]},
///            "blocks": [{"row", "col", "marks": [[0,1],...]}]}
///   probs:  same, with "probs": [["1/2","0"],...]
///   ket:    {"field": p, "factors": [d1,d2], "coords": [...]}
///   state:  {"field": p, "factors": [...], "basis": [[...],...]}  (or a ket)
///   measurements: [{"label": "X", "effects": [[[1,1]], [[1,0]]]}]

#include <cstdint>
#include <fstream>
#include <iostream>
#include <iterator>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <json.hpp>

#include "mqt/classify.hpp"
#include "mqt/hvgames.hpp"
#include "mqt/rational.hpp"
#include "mqt/resolve.hpp"
#include "mqt/states.hpp"
#include "mqt/tables.hpp"

namespace mqt::io {

using Json = nlohmann::json;

class JsonError : public std::runtime_error {
 public:
  JsonError(const std::string& path, const std::string& what)
      : std::runtime_error(path + ": " + what), path_(path) {}
  [[nodiscard]] const std::string& path() const noexcept { return path_; }

 private:
  std::string path_;
};

/// A node together with its location, for error messages.
class Node {
 public:
  Node(const Json& j, std::string path) : j_(&j), path_(std::move(path)) {}

  [[nodiscard]] const Json& json() const noexcept { return *j_; }
  [[nodiscard]] const std::string& path() const noexcept { return path_; }
  [[noreturn]] void fail(const std::string& what) const { throw JsonError(path_, what); }

  [[nodiscard]] bool has(const std::string& key) const { return j_->is_object() && j_->contains(key); }

  [[nodiscard]] Node operator[](const std::string& key) const {
    if (!j_->is_object()) fail("expected an object");
    auto it = j_->find(key);
    if (it == j_->end()) fail("missing key '" + key + "'");
    return Node(*it, path_ + "/" + key);
  }

  [[nodiscard]] std::optional<Node> find(const std::string& key) const {
    if (!has(key)) return std::nullopt;
    return (*this)[key];
  }

  [[nodiscard]] std::size_t size() const {
    if (!j_->is_array()) fail("expected an array");
    return j_->size();
  }

  [[nodiscard]] Node operator[](std::size_t i) const {
    if (i >= size()) fail("index " + std::to_string(i) + " out of range");
    return Node((*j_)[i], path_ + "/" + std::to_string(i));
  }

  [[nodiscard]] std::int64_t integer() const {
    if (!j_->is_number_integer()) fail("expected an integer");
    return j_->get<std::int64_t>();
  }

  [[nodiscard]] std::size_t count() const {
    const auto v = integer();
    if (v < 0) fail("expected a nonnegative integer");
    return static_cast<std::size_t>(v);
  }

  [[nodiscard]] std::string string() const {
    if (!j_->is_string()) fail("expected a string");
    return j_->get<std::string>();
  }

  [[nodiscard]] bool flag() const {
    if (j_->is_boolean()) return j_->get<bool>();
    if (j_->is_number_integer() && (j_->get<std::int64_t>() == 0 || j_->get<std::int64_t>() == 1))
      return j_->get<std::int64_t>() == 1;
    fail("expected 0, 1, true or false");
  }

  [[nodiscard]] Rational rational() const {
    if (j_->is_number_integer()) return Rational(j_->get<std::int64_t>());
    try {
      return parse_fraction(string());
    } catch (const std::invalid_argument& e) {
      fail(e.what());
    }
  }

 private:
  const Json* j_;
  std::string path_;
};

/// Parses text; syntax errors carry the given path.
inline Json parse(const std::string& text, const std::string& path = "") {
  try {
    return Json::parse(text);
  } catch (const Json::parse_error& e) {
    throw JsonError(path.empty() ? "/" : path, std::string("malformed JSON: ") + e.what());
  }
}

/// Inline JSON when the argument starts with '{' or '[', "-" for standard
/// input, otherwise a file name.
inline Json load_argument(const std::string& arg, const std::string& what) {
  const auto first = arg.find_first_not_of(" \t\r\n");
  if (first != std::string::npos && (arg[first] == '{' || arg[first] == '[')) return parse(arg, what);
  std::string text;
  if (arg == "-") {
    text.assign(std::istreambuf_iterator<char>(std::cin), std::istreambuf_iterator<char>());
  } else {
    std::ifstream in(arg);
    if (!in) throw JsonError(what, "cannot open '" + arg + "'");
    std::ostringstream ss;
    ss << in.rdbuf();
    text = ss.str();
  }
  return parse(text, what);
}

// ---- tables -------------------------------------------------------------

inline Json to_json(const Scenario& sc) {
  Json out = {{"rows", Json::array()}, {"cols", Json::array()}};
  for (const auto& m : sc.rows) out["rows"].push_back({{"label", m.label}, {"outcomes", m.outcomes}});
  for (const auto& m : sc.cols) out["cols"].push_back({{"label", m.label}, {"outcomes", m.outcomes}});
  return out;
}

inline Scenario scenario_from_json(const Node& n) {
  Scenario sc;
  for (const char* side : {"rows", "cols"}) {
    const Node list = n[side];
    auto& dst = std::string(side) == "rows" ? sc.rows : sc.cols;
    for (std::size_t i = 0; i < list.size(); ++i) {
      const Node m = list[i];
      const auto outcomes = m["outcomes"].count();
      if (outcomes == 0) m["outcomes"].fail("a measurement needs at least one outcome");
      dst.push_back({m["label"].string(), outcomes});
    }
    if (dst.empty()) list.fail("no measurements");
  }
  return sc;
}

namespace detail {

template <class Cell, class Encode>
Json table_to_json(const BlockTable<Cell>& t, const char* key, Encode encode) {
  Json blocks = Json::array();
  const auto& sc = t.scenario();
  for (std::size_t r = 0; r < t.row_count(); ++r)
    for (std::size_t c = 0; c < t.col_count(); ++c) {
      Json grid = Json::array();
      for (std::size_t a = 0; a < t.row_outcomes(r); ++a) {
        Json line = Json::array();
        for (std::size_t b = 0; b < t.col_outcomes(c); ++b) line.push_back(encode(t.at(r, c, a, b)));
        grid.push_back(std::move(line));
      }
      blocks.push_back({{"row", sc.rows[r].label}, {"col", sc.cols[c].label}, {key, std::move(grid)}});
    }
  return {{"scenario", to_json(sc)}, {"blocks", std::move(blocks)}};
}

inline std::size_t measurement_index(const Node& n, const std::vector<MeasurementSpec>& side) {
  if (n.json().is_number_integer()) {
    const auto i = n.count();
    if (i >= side.size()) n.fail("measurement index out of range");
    return i;
  }
  const auto label = n.string();
  for (std::size_t i = 0; i < side.size(); ++i)
    if (side[i].label == label) return i;
  n.fail("unknown measurement '" + label + "'");
}

template <class Cell, class Decode>
BlockTable<Cell> table_from_json(const Node& n, const char* key, const Cell& fill, Decode decode) {
  BlockTable<Cell> t(scenario_from_json(n["scenario"]), fill);
  const auto& sc = t.scenario();
  const Node blocks = n["blocks"];
  for (std::size_t k = 0; k < blocks.size(); ++k) {
    const Node blk = blocks[k];
    const auto r = measurement_index(blk["row"], sc.rows);
    const auto c = measurement_index(blk["col"], sc.cols);
    const Node grid = blk[key];
    if (grid.size() != sc.rows[r].outcomes) grid.fail("expected " + std::to_string(sc.rows[r].outcomes) + " rows");
    for (std::size_t a = 0; a < grid.size(); ++a) {
      const Node line = grid[a];
      if (line.size() != sc.cols[c].outcomes)
        line.fail("expected " + std::to_string(sc.cols[c].outcomes) + " entries");
      for (std::size_t b = 0; b < line.size(); ++b) t.set(r, c, a, b, decode(line[b]));
    }
  }
  return t;
}

}  // namespace detail

/// Blocks absent from the input stay blank.
inline Json to_json(const PossibilityTable& t) {
  return detail::table_to_json(t, "marks", [](bool v) { return v ? 1 : 0; });
}

inline PossibilityTable table_from_json(const Node& n) {
  return detail::table_from_json<bool>(n, "marks", false, [](const Node& x) { return x.flag(); });
}

inline Json to_json(const ProbabilityTable& t) {
  return detail::table_to_json(t, "probs", [](const Rational& v) { return to_fraction_string(v); });
}

inline ProbabilityTable prob_table_from_json(const Node& n) {
  return detail::table_from_json<Rational>(n, "probs", Rational(0), [](const Node& x) { return x.rational(); });
}

// ---- vectors and subspaces ------------------------------------------------

inline FieldSpec field_from_json(const Node& n, std::optional<FieldSpec> fallback) {
  if (auto f = n.find("field")) {
    const auto p = f->integer();
    try {
      FieldSpec spec(p);
      if (fallback && !(*fallback == spec)) f->fail("field disagrees with --field");
      return spec;
    } catch (const std::invalid_argument& e) {
      f->fail(e.what());
    }
  }
  if (!fallback) n.fail("missing key 'field' (or pass --field)");
  return *fallback;
}

inline Coords coords_from_json(const Node& n, FieldSpec f, std::optional<std::size_t> dim = std::nullopt) {
  const auto len = n.size();
  if (dim && len != *dim) n.fail("expected " + std::to_string(*dim) + " coordinates");
  Coords c(len);
  for (std::size_t i = 0; i < len; ++i) c[i] = f.reduce(n[i].integer());
  return c;
}

inline Json coords_to_json(const Coords& c) {
  Json out = Json::array();
  for (auto v : c) out.push_back(v);
  return out;
}

inline Json to_json(const StateSpace& s) {
  return {{"field", s.field().modulus()}, {"factors", s.factors()}};
}

/// "factors" defaults to a single factor of the given length.
inline StateSpace space_from_json(const Node& n, FieldSpec f, std::size_t default_dim) {
  auto fac = n.find("factors");
  if (!fac) return StateSpace(f, default_dim);
  std::vector<std::size_t> factors;
  for (std::size_t i = 0; i < fac->size(); ++i) {
    const auto d = (*fac)[i].count();
    if (d == 0) (*fac)[i].fail("factor dimension must be positive");
    factors.push_back(d);
  }
  if (factors.empty()) fac->fail("no factors");
  return StateSpace::composite(f, factors);
}

template <Variance V>
Json to_json(const Vector<V>& v) {
  Json out = to_json(v.space());
  out["coords"] = coords_to_json(v.coords());
  return out;
}

template <Variance V>
Vector<V> vector_from_json(const Node& n, std::optional<FieldSpec> fallback = std::nullopt) {
  const FieldSpec f = field_from_json(n, fallback);
  const Node cn = n["coords"];
  const StateSpace s = space_from_json(n, f, cn.size());
  return Vector<V>(s, coords_from_json(cn, f, s.dim()));
}

inline Json to_json(const Matrix& m) {
  Json out = Json::array();
  for (std::size_t i = 0; i < m.rows(); ++i) out.push_back(coords_to_json(m.row(i)));
  return out;
}

template <Variance V>
Json to_json(const Subspace<V>& s) {
  Json out = to_json(s.space());
  out["basis"] = to_json(s.basis());
  return out;
}

/// Accepts {"basis": [...]} or a single vector {"coords": [...]}.
template <Variance V>
Subspace<V> subspace_from_json(const Node& n, std::optional<FieldSpec> fallback = std::nullopt) {
  if (n.has("coords") && !n.has("basis")) return span(vector_from_json<V>(n, fallback));
  const FieldSpec f = field_from_json(n, fallback);
  const Node bn = n["basis"];
  std::optional<std::size_t> width;
  if (bn.size() > 0) width = bn[0].size();
  if (!width && !n.has("factors")) bn.fail("an empty basis needs 'factors'");
  const StateSpace s = space_from_json(n, f, width.value_or(0));
  Matrix m(f, bn.size(), s.dim());
  for (std::size_t i = 0; i < bn.size(); ++i) {
    auto row = coords_from_json(bn[i], f, s.dim());
    for (std::size_t j = 0; j < row.size(); ++j) m(i, j) = row[j];
  }
  return Subspace<V>(s, m);
}

// ---- measurements, operators, strategies -----------------------------------

inline Json to_json(const Measurement& m) {
  Json effects = Json::array();
  for (const auto& e : m.effects) effects.push_back(to_json(e.basis()));
  return {{"label", m.label}, {"effects", std::move(effects)}};
}

inline Json to_json(const std::vector<Measurement>& ms) {
  Json out = Json::array();
  for (const auto& m : ms) out.push_back(to_json(m));
  return out;
}

/// Each effect is a list of bras spanning it; all measurements act on
/// a space of dimension `dim`.
inline std::vector<Measurement> measurements_from_json(const Node& n, FieldSpec f, std::size_t dim) {
  std::vector<Measurement> out;
  const StateSpace s(f, dim);
  for (std::size_t i = 0; i < n.size(); ++i) {
    const Node mn = n[i];
    Measurement m{mn["label"].string(), {}};
    const Node en = mn["effects"];
    if (en.size() == 0) en.fail("a measurement needs at least one effect");
    for (std::size_t k = 0; k < en.size(); ++k) {
      const Node rows = en[k];
      Matrix basis(f, rows.size(), dim);
      for (std::size_t r = 0; r < rows.size(); ++r) {
        auto c = coords_from_json(rows[r], f, dim);
        for (std::size_t j = 0; j < dim; ++j) basis(r, j) = c[j];
      }
      m.effects.emplace_back(s, basis);
    }
    if (!validate_measurement(m)) mn.fail("effects of '" + m.label + "' do not span the dual space");
    out.push_back(std::move(m));
  }
  return out;
}

inline Matrix matrix_from_json(const Node& n, FieldSpec f) {
  const auto rows = n.size();
  if (rows == 0) n.fail("empty matrix");
  const auto cols = n[0].size();
  Matrix m(f, rows, cols);
  for (std::size_t i = 0; i < rows; ++i) {
    auto c = coords_from_json(n[i], f, cols);
    for (std::size_t j = 0; j < cols; ++j) m(i, j) = c[j];
  }
  return m;
}

inline std::vector<Matrix> kraus_from_json(const Node& n, FieldSpec f, std::size_t dim) {
  std::vector<Matrix> out;
  if (n.size() == 0) n.fail("no Kraus operators");
  for (std::size_t i = 0; i < n.size(); ++i) {
    auto m = matrix_from_json(n[i], f);
    if (m.rows() != dim || m.cols() != dim) n[i].fail("expected a " + std::to_string(dim) + "x" + std::to_string(dim) + " matrix");
    out.push_back(std::move(m));
  }
  return out;
}

inline Json to_json(const DeterministicLocalStrategy& s) { return {{"f1", s.f1}, {"f2", s.f2}}; }

inline DeterministicLocalStrategy deterministic_from_json(const Node& n) {
  DeterministicLocalStrategy s;
  for (const char* key : {"f1", "f2"}) {
    const Node list = n[key];
    auto& dst = std::string(key) == "f1" ? s.f1 : s.f2;
    for (std::size_t i = 0; i < list.size(); ++i) dst.push_back(list[i].count());
  }
  return s;
}

/// {"classical": {"f1": [...], "f2": [...]}} or
/// {"shared_state": {"state": <state>, "meas1": [...], "meas2": [...]}}.
inline GameStrategy strategy_from_json(const Node& n, std::optional<FieldSpec> fallback) {
  if (n.has("classical")) return deterministic_from_json(n["classical"]);
  if (!n.has("shared_state")) n.fail("expected 'classical' or 'shared_state'");
  const Node sn = n["shared_state"];
  const auto state = subspace_from_json<Variance::primal>(sn["state"], fallback);
  if (state.space().factor_count() != 2) sn["state"].fail("state must be bipartite ('factors' of length 2)");
  const FieldSpec f = state.space().field();
  return SharedStateStrategy{state, measurements_from_json(sn["meas1"], f, state.space().factors()[0]),
                             measurements_from_json(sn["meas2"], f, state.space().factors()[1])};
}

// ---- results -------------------------------------------------------------

inline Json to_json(const MqtSearchResult& r) {
  Json out = {{"verdict", to_string(r.verdict)}, {"reason", r.reason}, {"work", r.work}};
  if (r.witness) {
    out["witness"] = {{"state", to_json(r.witness->state)},
                      {"meas1", to_json(r.witness->meas1)},
                      {"meas2", to_json(r.witness->meas2)}};
  }
  return out;
}

inline Json to_json(const Classification& c) {
  return {{"ns", c.ns}, {"wpr", c.wpr}, {"spr", c.spr}, {"lhv", c.lhv}, {"mqt", to_json(c.mqt)}};
}

}  // namespace mqt::io
