#pragma once

/// @file cli.hpp
/// The mqt command line, as a library call so it can be tested in-process.
/// Exit codes: 0 affirmative or success, 1 decided negative, 2 error or
/// undecided.

#include <algorithm>
#include <cstdint>
#include <optional>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

#include <CLI11.hpp>

#include "mqt/bipartite.hpp"
#include "mqt/channels.hpp"
#include "mqt/classify.hpp"
#include "mqt/fixtures.hpp"
#include "mqt/hvgames.hpp"
#include "mqt/json_io.hpp"
#include "mqt/random.hpp"
#include "mqt/render.hpp"
#include "mqt/resolve.hpp"

namespace mqt::cli {

struct CommandResult {
  int exit_code = 0;
  std::string text;
  std::optional<io::Json> payload;
  bool json_output = false;
};

/// "primes=2/3,dim=2,outcomes=3,work=100000,overlap=0,full=64"
inline MqtSearchBounds parse_bounds(const std::string& spec) {
  MqtSearchBounds b;
  std::stringstream items(spec);
  std::string item;
  auto number = [](const std::string& key, const std::string& v) {
    try {
      std::size_t used = 0;
      const auto n = std::stoull(v, &used);
      if (used != v.size()) throw std::invalid_argument(v);
      return static_cast<std::uint64_t>(n);
    } catch (const std::exception&) {
      throw std::invalid_argument("--budget: '" + key + "' needs a nonnegative integer, got '" + v + "'");
    }
  };
  while (std::getline(items, item, ',')) {
    if (item.empty()) continue;
    const auto eq = item.find('=');
    if (eq == std::string::npos) throw std::invalid_argument("--budget: expected key=value, got '" + item + "'");
    const auto key = item.substr(0, eq);
    const auto val = item.substr(eq + 1);
    if (key == "primes") {
      b.primes.clear();
      std::stringstream ps(val);
      std::string p;
      while (std::getline(ps, p, '/')) {
        const auto v = number(key, p);
        FieldSpec check(static_cast<std::int64_t>(v));
        b.primes.push_back(static_cast<std::uint32_t>(v));
      }
    } else if (key == "dim") {
      b.max_dim = number(key, val);
    } else if (key == "outcomes") {
      b.max_outcomes = number(key, val);
    } else if (key == "work") {
      b.work_budget = number(key, val);
    } else if (key == "overlap") {
      b.non_overlapping = number(key, val) == 0;
    } else if (key == "full") {
      b.full_state_limit = number(key, val);
    } else {
      throw std::invalid_argument("--budget: unknown key '" + key + "'");
    }
  }
  return b;
}

namespace detail {

inline const char* yes_no(bool b) { return b ? "yes" : "no"; }

inline std::string classification_line(const Classification& c) {
  std::ostringstream os;
  os << "NS " << yes_no(c.ns) << ", WPR " << yes_no(c.wpr) << ", SPR " << yes_no(c.spr) << ", LHV " << yes_no(c.lhv)
     << ", MQT " << to_string(c.mqt.verdict) << " (" << c.mqt.reason << ")";
  return os.str();
}

inline std::string first_ns_violation(const PossibilityTable& t) {
  const auto& sc = t.scenario();
  for (std::size_t r = 0; r < t.row_count(); ++r)
    for (std::size_t a = 0; a < t.row_outcomes(r); ++a)
      for (std::size_t c = 1; c < t.col_count(); ++c)
        if (sub_row_marked(t, r, c, a) != sub_row_marked(t, r, 0, a))
          return "outcome " + std::to_string(a + 1) + " of " + sc.rows[r].label + " is possible with " +
                 (sub_row_marked(t, r, 0, a) ? sc.cols[0].label : sc.cols[c].label) + " but not with " +
                 (sub_row_marked(t, r, 0, a) ? sc.cols[c].label : sc.cols[0].label);
  for (std::size_t c = 0; c < t.col_count(); ++c)
    for (std::size_t b = 0; b < t.col_outcomes(c); ++b)
      for (std::size_t r = 1; r < t.row_count(); ++r)
        if (sub_col_marked(t, r, c, b) != sub_col_marked(t, 0, c, b))
          return "outcome " + std::to_string(b + 1) + " of " + sc.cols[c].label + " is possible with " +
                 (sub_col_marked(t, 0, c, b) ? sc.rows[0].label : sc.rows[r].label) + " but not with " +
                 (sub_col_marked(t, 0, c, b) ? sc.rows[r].label : sc.rows[0].label);
  for (std::size_t r = 0; r < t.row_count(); ++r)
    for (std::size_t c = 0; c < t.col_count(); ++c)
      if (!block_nonempty(t, r, c)) return "block (" + sc.rows[r].label + "," + sc.cols[c].label + ") is empty";
  return "";
}

/// Human and JSON report of a weak resolution attempt.
inline CommandResult report_weak(const PossibilityTable& t) {
  CommandResult res;
  std::ostringstream os;
  auto weak = analyze_weak(t);
  if (weak.table) {
    os << "weak resolution:\n" << render(*weak.table);
    const bool unique = resolution_unique(t);
    os << "unique: " << yes_no(unique) << '\n';
    res.payload = io::Json{{"resolution", io::to_json(*weak.table)}, {"unique", unique}};
  } else {
    os << "no weak resolution exists\n";
    io::Json conflicts = io::Json::array();
    for (const auto& bc : localize_infeasibility(t)) {
      os << "  " << describe_conflict(t.scenario(), bc) << '\n';
      io::Json from_row = io::Json::array(), from_col = io::Json::array(), cells = io::Json::array();
      for (std::size_t i = 0; i < bc.cells.size(); ++i) {
        cells.push_back({bc.cells[i].first, bc.cells[i].second});
        from_row.push_back(bc.from_row[i] ? io::Json(to_fraction_string(*bc.from_row[i])) : io::Json());
        from_col.push_back(bc.from_col[i] ? io::Json(to_fraction_string(*bc.from_col[i])) : io::Json());
      }
      conflicts.push_back({{"row", t.scenario().rows[bc.row].label},
                           {"col", t.scenario().cols[bc.col].label},
                           {"cells", cells},
                           {"from_row", from_row},
                           {"from_col", from_col}});
    }
    os << "certificate verified: " << yes_no(weak.certificate && weak.certificate->verify()) << '\n';
    res.payload = io::Json{{"resolution", nullptr}, {"conflicts", conflicts}};
    res.exit_code = 1;
  }
  res.text = os.str();
  return res;
}

inline CommandResult report_strong(const PossibilityTable& t) {
  CommandResult res;
  std::ostringstream os;
  auto strong = analyze_strong(t);
  res.payload = io::Json{{"margin", strong.margin ? io::Json(to_fraction_string(*strong.margin)) : io::Json()},
                         {"resolution", strong.table ? io::to_json(*strong.table) : io::Json()}};
  if (strong.table) {
    os << "strong resolution (smallest marked probability " << to_display_string(*strong.margin) << "):\n"
       << render(*strong.table);
  } else if (strong.margin) {
    os << "no strong resolution: every resolution leaves a mark at probability 0\n";
    res.exit_code = 1;
  } else {
    os << "no strong resolution: the table has no weak resolution\n";
    res.exit_code = 1;
  }
  res.text = os.str();
  return res;
}

inline CommandResult demo(const std::string& name) {
  PossibilityTable t = name == "singlet" ? fixtures::singlet_table()
                       : name == "prbox" ? fixtures::prbox_table()
                                         : fixtures::table_n();
  const char* title = name == "singlet" ? "singlet table S (Z_2 mobit pair, X/Y/Z on both sides)"
                      : name == "prbox" ? "modal PR box P"
                                        : "table N (no-signalling, no probabilistic resolution)";
  std::ostringstream os;
  os << title << '\n' << render(t) << '\n';
  const bool ns = check_modal_ns(t);
  os << "modal no-signalling: " << yes_no(ns) << "\n\n";
  auto weak = report_weak(t);
  os << weak.text << '\n';
  auto strong = report_strong(t);
  os << strong.text << '\n';
  const auto cls = classify(t);
  os << "classification: " << classification_line(cls) << '\n';
  CommandResult res;
  res.text = os.str();
  res.payload = io::Json{{"table", io::to_json(t)},
                         {"ns", ns},
                         {"weak", *weak.payload},
                         {"strong", *strong.payload},
                         {"classification", io::to_json(cls)}};
  return res;
}

inline PossibilityTable load_table(const std::string& arg) {
  const auto j = io::load_argument(arg, "table");
  return io::table_from_json(io::Node(j, "table"));
}

inline std::optional<FieldSpec> optional_field(std::int64_t p) {
  if (p == 0) return std::nullopt;
  return FieldSpec(p);
}

}  // namespace detail

/// Parses and runs one command. Arguments exclude the program name.
inline CommandResult run(const std::vector<std::string>& args) {
  CLI::App app{"Modal quantum theory over prime fields", "mqt"};
  app.require_subcommand(1);
  app.fallthrough();
  bool json = false;
  app.add_flag("--json", json, "print the JSON payload instead of text");

  CommandResult res;
  std::function<void()> action;

  // demo
  auto* demo = app.add_subcommand("demo", "show a reference table with its analysis");
  std::string demo_name;
  demo->add_option("name", demo_name, "singlet, prbox or table-n")
      ->required()
      ->check(CLI::IsMember({"singlet", "prbox", "table-n"}));
  demo->callback([&] { action = [&] { res = detail::demo(demo_name); }; });

  // table
  auto* table = app.add_subcommand("table", "possibility tables");
  table->require_subcommand(1);
  std::string table_arg = "-";
  std::int64_t field = 0;

  auto* build = table->add_subcommand("build", "table of a bipartite state under local measurements");
  std::string state_arg, meas1_arg, meas2_arg;
  build->add_option("--field", field, "prime modulus")->required();
  build->add_option("--state", state_arg, "bipartite state JSON (ket or basis)")->required();
  build->add_option("--meas1", meas1_arg, "system 1 measurements JSON")->required();
  build->add_option("--meas2", meas2_arg, "system 2 measurements JSON")->required();
  build->callback([&] {
    action = [&] {
      const FieldSpec f(field);
      const auto sj = io::load_argument(state_arg, "state");
      const auto state = io::subspace_from_json<Variance::primal>(io::Node(sj, "state"), f);
      if (state.space().factor_count() != 2) throw io::JsonError("state/factors", "expected two factors");
      const auto m1j = io::load_argument(meas1_arg, "meas1");
      const auto m2j = io::load_argument(meas2_arg, "meas2");
      const auto m1 = io::measurements_from_json(io::Node(m1j, "meas1"), f, state.space().factors()[0]);
      const auto m2 = io::measurements_from_json(io::Node(m2j, "meas2"), f, state.space().factors()[1]);
      const auto t = build_table(state, m1, m2);
      res.text = render(t);
      res.payload = io::to_json(t);
    };
  });

  auto* check_ns = table->add_subcommand("check-ns", "modal no-signalling check");
  check_ns->add_option("--table", table_arg, "table JSON, file, or - for stdin");
  check_ns->callback([&] {
    action = [&] {
      const auto t = detail::load_table(table_arg);
      const bool ok = check_modal_ns(t);
      const auto why = ok ? std::string() : detail::first_ns_violation(t);
      res.text = ok ? "no-signalling: yes\n" : "no-signalling: no (" + why + ")\n";
      res.payload = io::Json{{"ns", ok}};
      if (!ok) res.payload->emplace("violation", why);
      res.exit_code = ok ? 0 : 1;
    };
  });

  auto* resolve = table->add_subcommand("resolve", "probabilistic resolution");
  bool weak = false, strong = false;
  resolve->add_option("--table", table_arg, "table JSON, file, or - for stdin");
  auto* weak_flag = resolve->add_flag("--weak", weak, "zero on blanks (default)");
  resolve->add_flag("--strong", strong, "positive on every mark")->excludes(weak_flag);
  resolve->callback([&] {
    action = [&] {
      const auto t = detail::load_table(table_arg);
      res = strong ? detail::report_strong(t) : detail::report_weak(t);
    };
  });

  auto* cls = table->add_subcommand("classify", "place the table in LHV < SPR < WPR < NSP and search for MQT");
  std::string budget;
  cls->add_option("--table", table_arg, "table JSON, file, or - for stdin");
  cls->add_option("--budget", budget, "search bounds, e.g. primes=2/3,dim=3,outcomes=3,work=1000000000");
  cls->callback([&] {
    action = [&] {
      const auto t = detail::load_table(table_arg);
      const auto c = classify(t, parse_bounds(budget));
      res.text = detail::classification_line(c) + "\n";
      if (c.mqt.witness) {
        std::ostringstream os;
        os << "witness state " << c.mqt.witness->state << '\n';
        res.text += os.str();
      }
      res.payload = io::to_json(c);
      res.exit_code = c.mqt.verdict == Verdict::yes ? 0 : c.mqt.verdict == Verdict::no ? 1 : 2;
    };
  });

  // state
  auto* state = app.add_subcommand("state", "bipartite and mixed state tools");
  state->require_subcommand(1);
  std::string subject_arg, effect_arg;
  std::size_t factor = 0;

  auto* schmidt_cmd = state->add_subcommand("schmidt", "Schmidt decomposition of a bipartite ket");
  schmidt_cmd->add_option("--field", field, "prime modulus");
  schmidt_cmd->add_option("--ket", subject_arg, "ket JSON")->required();
  schmidt_cmd->callback([&] {
    action = [&] {
      const auto j = io::load_argument(subject_arg, "ket");
      const auto psi = io::vector_from_json<Variance::primal>(io::Node(j, "ket"), detail::optional_field(field));
      if (psi.space().factor_count() != 2) throw io::JsonError("ket/factors", "expected two factors");
      const auto sd = schmidt(psi);
      std::ostringstream os;
      os << "Schmidt number " << sd.rank << "\nR basis " << sd.r_basis << "\nQ basis " << sd.q_basis << '\n';
      res.text = os.str();
      res.payload = io::Json{{"rank", sd.rank}, {"r_basis", io::to_json(sd.r_basis)}, {"q_basis", io::to_json(sd.q_basis)}};
    };
  });

  auto load_state = [&](const std::string& what) {
    const auto j = io::load_argument(subject_arg, what);
    return io::subspace_from_json<Variance::primal>(io::Node(j, what), detail::optional_field(field));
  };

  auto* reduce_cmd = state->add_subcommand("reduce", "condition on the full dual of one factor");
  reduce_cmd->add_option("--field", field, "prime modulus");
  reduce_cmd->add_option("--state", subject_arg, "state JSON")->required();
  reduce_cmd->add_option("--factor", factor, "factor to remove (default 0)");
  reduce_cmd->callback([&] {
    action = [&] {
      const auto m = load_state("state");
      if (factor >= m.space().factor_count()) throw std::invalid_argument("--factor out of range");
      const auto out = reduce(m, factor);
      std::ostringstream os;
      os << out << '\n';
      res.text = os.str();
      res.payload = io::to_json(out);
    };
  });

  auto* cond_cmd = state->add_subcommand("conditional", "conditional state given an effect on one factor");
  cond_cmd->add_option("--field", field, "prime modulus");
  cond_cmd->add_option("--state", subject_arg, "state JSON")->required();
  cond_cmd->add_option("--effect", effect_arg, "effect JSON (basis or coords)")->required();
  cond_cmd->add_option("--factor", factor, "factor the effect acts on (default 0)");
  cond_cmd->callback([&] {
    action = [&] {
      const auto m = load_state("state");
      if (factor >= m.space().factor_count()) throw std::invalid_argument("--factor out of range");
      const auto ej = io::load_argument(effect_arg, "effect");
      const auto e = io::subspace_from_json<Variance::dual>(io::Node(ej, "effect"), m.space().field());
      const auto out = conditional_state(m, e.in_space(m.space().factor(factor)), factor);
      std::ostringstream os;
      os << out << '\n';
      res.text = os.str();
      res.payload = io::to_json(out);
    };
  });

  auto* purify_cmd = state->add_subcommand("purify", "pure state on R (x) Q reducing to the given state");
  purify_cmd->add_option("--field", field, "prime modulus");
  purify_cmd->add_option("--state", subject_arg, "state JSON")->required();
  purify_cmd->callback([&] {
    action = [&] {
      const auto m = load_state("state");
      const auto psi = purify(m);
      std::ostringstream os;
      os << psi << '\n';
      res.text = os.str();
      res.payload = io::to_json(psi);
    };
  });

  // channel
  auto* channel = app.add_subcommand("channel", "Kraus maps and their dilations");
  channel->require_subcommand(1);
  auto* roundtrip = channel->add_subcommand("roundtrip", "dilate, extend, recover Kraus operators, compare");
  std::size_t dim = 2, terms = 2, r_dim = 0;
  std::uint64_t seed = 1;
  std::string kraus_arg;
  roundtrip->add_option("--field", field, "prime modulus")->required();
  roundtrip->add_option("--dim", dim, "system dimension")->required()->check(CLI::PositiveNumber);
  roundtrip->add_option("--kraus", kraus_arg, "Kraus operators JSON; random when omitted");
  roundtrip->add_option("--seed", seed, "seed for a random map");
  roundtrip->add_option("--terms", terms, "Kraus terms of a random map")->check(CLI::PositiveNumber);
  roundtrip->add_option("--r-dim", r_dim, "also check the conditioning diagram with this R dimension");
  roundtrip->callback([&] {
    action = [&] {
      const FieldSpec f(field);
      std::optional<TypeLMap> map;
      if (kraus_arg.empty()) {
        Rng rng(seed);
        map = random_unconditional_map(f, dim, terms, rng);
      } else {
        const auto j = io::load_argument(kraus_arg, "kraus");
        map = TypeLMap(io::kraus_from_json(io::Node(j, "kraus"), f, dim));
      }
      const auto recovered = kraus_from_extension(extend_to_joint(dilate(*map), dim), dim, f);
      const bool same =
          same_action_on_lines(as_subspace_map(*map), as_subspace_map(recovered), StateSpace(f, dim));
      std::ostringstream os;
      os << "Kraus terms: " << map->kraus().size() << " in, " << recovered.kraus().size() << " recovered\n"
         << "same action on every state: " << detail::yes_no(same) << '\n';
      io::Json kin = io::Json::array(), kout = io::Json::array();
      for (const auto& a : map->kraus()) kin.push_back(io::to_json(a));
      for (const auto& a : recovered.kraus()) kout.push_back(io::to_json(a));
      res.payload = io::Json{{"kraus", kin}, {"recovered", kout}, {"equal", same}};
      bool ok = same;
      if (r_dim > 0) {
        const bool diagram = verify_type_e(*map, r_dim);
        os << "conditioning diagram commutes for R dimension " << r_dim << ": " << detail::yes_no(diagram) << '\n';
        (*res.payload)["diagram"] = diagram;
        ok = ok && diagram;
      }
      res.text = os.str();
      res.exit_code = ok ? 0 : 1;
    };
  });

  // hv
  auto* hv = app.add_subcommand("hv", "hidden-variable refutations");
  hv->require_subcommand(1);
  auto* ks = hv->add_subcommand("ks", "yes/no assignments with one yes per basis");
  std::int64_t ks_field = 2;
  std::size_t ks_dim = 2;
  ks->add_option("--field", ks_field, "prime modulus (default 2)");
  ks->add_option("--dim", ks_dim, "dimension (default 2)")->check(CLI::PositiveNumber);
  ks->callback([&] {
    action = [&] {
      const auto fam = all_basis_contexts(StateSpace(FieldSpec(ks_field), ks_dim));
      const auto r = noncontextual_search(fam);
      std::ostringstream os;
      os << fam.effects.size() << " effects, " << fam.contexts.size() << " contexts, " << r.examined
         << " assignments examined\n";
      io::Json assignment;
      if (r.assignment) {
        os << "noncontextual assignment found:";
        for (std::size_t k = 0; k < r.assignment->size(); ++k) {
          os << ' ' << fam.effects[k] << '=' << ((*r.assignment)[k] ? "yes" : "no");
          assignment.push_back(static_cast<bool>((*r.assignment)[k]));
        }
        os << '\n';
      } else {
        os << "no noncontextual assignment exists\n";
      }
      res.text = os.str();
      res.payload = io::Json{{"effects", fam.effects.size()},
                             {"contexts", fam.contexts.size()},
                             {"examined", r.examined},
                             {"assignment", assignment}};
    };
  });

  auto* survivors = hv->add_subcommand("survivors", "joint outcome assignments consistent with a table");
  survivors->add_option("--table", table_arg, "table JSON, file, or - for stdin");
  survivors->callback([&] {
    action = [&] {
      const auto t = detail::load_table(table_arg);
      const auto rep = joint_assignment_survivors(t);
      std::ostringstream os;
      os << rep.survivors.size() << " of " << rep.candidates << " joint assignments survive\n";
      io::Json list = io::Json::array();
      for (const auto& h : rep.survivors) list.push_back(io::to_json(h));
      res.text = os.str();
      res.payload = io::Json{{"candidates", rep.candidates}, {"survivors", list}};
    };
  });

  // game
  auto* game = app.add_subcommand("game", "the possibility game defined by a table");
  game->require_subcommand(1);
  auto* play = game->add_subcommand("play", "check a strategy against every question pair");
  std::string strategy_arg;
  play->add_option("--table", table_arg, "table JSON, file, or - for stdin");
  play->add_option("--strategy", strategy_arg, "strategy JSON")->required();
  play->add_option("--field", field, "prime modulus for a shared state");
  play->callback([&] {
    action = [&] {
      const auto t = detail::load_table(table_arg);
      const auto sj = io::load_argument(strategy_arg, "strategy");
      const auto strategy = io::strategy_from_json(io::Node(sj, "strategy"), detail::optional_field(field));
      const auto out = play_game(t, strategy);
      std::ostringstream os;
      os << (out.wins_all ? "wins every question pair" : "loses") << " (" << out.pairs_checked << " pairs checked)";
      io::Json payload = {{"wins_all", out.wins_all}, {"pairs_checked", out.pairs_checked}};
      if (out.losing_pair) {
        const auto& [r, c] = *out.losing_pair;
        os << " at (" << t.scenario().rows[r].label << "," << t.scenario().cols[c].label << ")";
        payload["losing_pair"] = {t.scenario().rows[r].label, t.scenario().cols[c].label};
      }
      os << '\n';
      res.text = os.str();
      res.payload = payload;
      res.exit_code = out.wins_all ? 0 : 1;
    };
  });

  std::vector<std::string> reversed(args.rbegin(), args.rend());
  try {
    app.parse(reversed);
  } catch (const CLI::ParseError& e) {
    std::ostringstream out, err;
    const int code = app.exit(e, out, err);
    return {code == 0 ? 0 : 2, out.str() + err.str(), std::nullopt, false};
  }

  try {
    if (action) action();
  } catch (const io::JsonError& e) {
    return {2, std::string("invalid input at ") + e.what() + "\n", std::nullopt, false};
  } catch (const std::exception& e) {
    return {2, std::string("error: ") + e.what() + "\n", std::nullopt, false};
  }
  res.json_output = json;
  return res;
}

}  // namespace mqt::cli
