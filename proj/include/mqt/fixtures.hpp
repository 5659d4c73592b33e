#pragma once

/// @file fixtures.hpp
/// The Z_2 mobit, the modal singlet, and the three reference
/// tables (singlet S, modal PR box P, and the NS-but-unresolvable table N).

#include <vector>

#include "mqt/states.hpp"
#include "mqt/tables.hpp"

namespace mqt::fixtures {

inline StateSpace mobit_space(FieldSpec f = FieldSpec(2)) { return StateSpace(f, 2); }

// Z_2 mobit effects: <a|0>=1 <a|1>=0, <b|0>=0 <b|1>=1, <c|0>=<c|1>=1.
inline Bra bra_a() { return Bra(mobit_space(), {1, 0}); }
inline Bra bra_b() { return Bra(mobit_space(), {0, 1}); }
inline Bra bra_c() { return Bra(mobit_space(), {1, 1}); }

inline Ket ket_0(FieldSpec f = FieldSpec(2)) { return Ket(mobit_space(f), {1, 0}); }
inline Ket ket_1(FieldSpec f = FieldSpec(2)) { return Ket(mobit_space(f), {0, 1}); }
inline Ket ket_sigma() { return Ket(mobit_space(), {1, 1}); }

/// Outcome order is (+, -): X = {c, a}, Y = {b, c}, Z = {a, b}.
inline Measurement measurement_x() { return basic_measurement("X", {bra_c(), bra_a()}); }
inline Measurement measurement_y() { return basic_measurement("Y", {bra_b(), bra_c()}); }
inline Measurement measurement_z() { return basic_measurement("Z", {bra_a(), bra_b()}); }
inline std::vector<Measurement> mobit_measurements() {
  return {measurement_x(), measurement_y(), measurement_z()};
}

/// |S> = |0,1> - |1,0>.
inline Ket singlet(FieldSpec f = FieldSpec(2)) {
  StateSpace pair = tensor(mobit_space(f), mobit_space(f));
  return Ket(pair, {0, 1, -1, 0});
}

inline PossibilityTable singlet_table() {
  Scenario sc{{{"X", 2}, {"Y", 2}, {"Z", 2}}, {{"X", 2}, {"Y", 2}, {"Z", 2}}};
  PossibilityTable t(sc);
  const std::vector<std::vector<int>> same{{0, 1}, {1, 0}};
  const std::vector<std::vector<int>> lower{{1, 0}, {1, 1}};
  const std::vector<std::vector<int>> upper{{1, 1}, {0, 1}};
  set_block(t, 0, 0, same);
  set_block(t, 0, 1, lower);
  set_block(t, 0, 2, upper);
  set_block(t, 1, 0, upper);
  set_block(t, 1, 1, same);
  set_block(t, 1, 2, lower);
  set_block(t, 2, 0, lower);
  set_block(t, 2, 1, upper);
  set_block(t, 2, 2, same);
  return t;
}

inline PossibilityTable prbox_table() {
  Scenario sc{{{"A", 2}, {"B", 2}}, {{"C", 2}, {"D", 2}}};
  PossibilityTable t(sc);
  const std::vector<std::vector<int>> agree{{1, 0}, {0, 1}};
  const std::vector<std::vector<int>> disagree{{0, 1}, {1, 0}};
  set_block(t, 0, 0, agree);
  set_block(t, 0, 1, agree);
  set_block(t, 1, 0, agree);
  set_block(t, 1, 1, disagree);
  return t;
}

/// Table N. Its (U,W) and (W,U) blocks are left open by the definition and
/// are filled here with every mark that no-signalling allows. Outcome 3 of W is
/// impossible in the (W,V), (W,W), (V,W) blocks, so those are the only marks
/// left out.
inline PossibilityTable table_n() {
  Scenario sc{{{"U", 3}, {"V", 3}, {"W", 3}}, {{"U", 3}, {"V", 3}, {"W", 3}}};
  PossibilityTable t(sc);
  const std::vector<std::vector<int>> ident{{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  set_block(t, 0, 0, {{0, 1, 0}, {0, 0, 1}, {1, 0, 0}});
  set_block(t, 0, 1, ident);
  set_block(t, 0, 2, {{1, 1, 0}, {1, 1, 0}, {1, 1, 0}});
  set_block(t, 1, 0, ident);
  set_block(t, 1, 1, ident);
  set_block(t, 1, 2, {{1, 0, 0}, {0, 1, 0}, {0, 1, 0}});
  set_block(t, 2, 0, {{1, 1, 1}, {1, 1, 1}, {0, 0, 0}});
  set_block(t, 2, 1, {{1, 1, 0}, {0, 0, 1}, {0, 0, 0}});
  set_block(t, 2, 2, {{1, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  return t;
}

}  // namespace mqt::fixtures
