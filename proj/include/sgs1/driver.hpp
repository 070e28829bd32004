#pragma once

// Batch front end shared by the command line tool and the tests.  Every
// command is a pure function of its JobConfig: structured output is a
// schema-versioned stream of line-delimited JSON records in canonical key
// order, so identical inputs produce byte-identical output.

#include <fstream>
#include <random>
#include <sstream>
#include <string>

#include <json.hpp>

#include "sgs1/bracket.hpp"
#include "sgs1/canonical.hpp"
#include "sgs1/code.hpp"
#include "sgs1/labels.hpp"
#include "sgs1/lift.hpp"
#include "sgs1/moves.hpp"
#include "sgs1/parse.hpp"
#include "sgs1/quandle.hpp"
#include "sgs1/random.hpp"
#include "sgs1/unknot.hpp"

namespace sgs1 {

inline constexpr const char* kSchemaVersion = "sgs1/1";
inline constexpr const char* kSearchOrderVersion = "1";

enum class OutputFormat { human, structured };

struct JobConfig {
  std::string command;
  std::string input_path;        // primary code file
  std::string other_path;        // second code (equiv)
  std::string quandle_path;      // colorings
  std::string special_path;      // specialization json; "kauffman" builtin
  std::string cache_dir;         // quandle-search cache ("" = off)
  OutputFormat format = OutputFormat::human;

  long long window_min = 0, window_max = 0;
  bool has_window = false;
  long long k = 0;
  bool has_k = false;
  bool allow_mixed = false;
  int q = 2, n = 1;
  long long budget = 4000000;
  int relation_window = 3;
  bool solve_cd = false;
  std::size_t quandle_index = 0;
  int trivial_q = 0;  // colorings without a file
  std::size_t max_symbols = 12, max_states = 20000;
  std::uint64_t seed = 20240801;
  std::size_t count = 10000;

  // moves-apply
  bool list_sites = false;
  bool all_variants = false;
  std::string move_kind;
  std::string kinds_filter;  // comma separated for --list
  long long comp_a = 0, pos_a = 0, comp_b = 0, pos_b = 0, comp_c = 0,
            pos_c = 0;
  int move_sign = +1;
  bool flag_a = false;
};

struct JobResult {
  int status = 0;
  std::string out;
};

namespace detail {

inline std::string read_file(const std::string& path) {
  std::ifstream in(path, std::ios::binary);
  if (!in) throw Error("cannot open " + path);
  std::ostringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline MarkedGaussCode load_code(const std::string& path) {
  MarkedGaussCode code = parse_code(read_file(path));
  require_valid(code);
  return code;
}

inline nlohmann::json site_json(const MoveSite& s) {
  nlohmann::json j;
  j["kind"] = move_kind_name(s.kind);
  nlohmann::json pos = nlohmann::json::array();
  pos.push_back({s.comp_a, s.pos_a});
  if (s.kind == MoveKind::r2_add || s.kind == MoveKind::r2_remove ||
      s.kind == MoveKind::r3)
    pos.push_back({s.comp_b, s.pos_b});
  if (s.kind == MoveKind::r3) pos.push_back({s.comp_c, s.pos_c});
  if (s.kind == MoveKind::slide) pos.push_back({s.comp_a, s.pos_b});
  j["positions"] = pos;
  j["sign"] = s.sign;
  j["variant"] = s.flag_a;
  return j;
}

inline nlohmann::json laurent_json(const LaurentPoly& p) {
  nlohmann::json terms = nlohmann::json::array();
  for (const auto& [e, c] : p.coeffs) terms.push_back({e, c});
  return terms;
}

inline Specialization load_specialization(const std::string& source,
                                          int window) {
  if (source.empty() || source == "kauffman")
    return Specialization::kauffman(window);
  nlohmann::json j = nlohmann::json::parse(read_file(source));
  Specialization s;
  s.window = j.value("window", window);
  s.var_name = j.value("var", std::string("A"));
  s.a_expr = detail::parse_expr(j.at("A").get<std::string>());
  s.b_expr = detail::parse_expr(j.at("B").get<std::string>());
  detail::ExprParser d0(j.at("delta0").get<std::string>());
  detail::ExprParser d1(j.at("delta1").get<std::string>());
  s.delta0 = d0.parse()->eval(0, 0);
  s.delta1 = d1.parse()->eval(0, 0);
  if (j.contains("C")) s.c_expr = detail::parse_expr(j["C"].get<std::string>());
  if (j.contains("D")) s.d_expr = detail::parse_expr(j["D"].get<std::string>());
  return s;
}

}  // namespace detail

inline JobResult run_job(const JobConfig& cfg) {
  std::ostringstream out;
  auto emit_header = [&](const std::string& command) {
    if (cfg.format == OutputFormat::structured) {
      nlohmann::json j;
      j["schema"] = kSchemaVersion;
      j["command"] = command;
      out << j.dump() << "\n";
    }
  };

  try {
    if (cfg.command == "validate") {
      MarkedGaussCode code = parse_code(detail::read_file(cfg.input_path));
      ValidationReport rep = validate(code);
      emit_header("validate");
      if (cfg.format == OutputFormat::structured) {
        nlohmann::json j;
        j["ok"] = rep.ok();
        nlohmann::json v = nlohmann::json::array();
        for (const auto& violation : rep.violations)
          v.push_back(violation.message);
        j["violations"] = v;
        out << j.dump() << "\n";
      } else {
        out << (rep.ok() ? "ok" : rep.to_string()) << "\n";
      }
      return {rep.ok() ? 0 : 1, out.str()};
    }

    if (cfg.command == "label") {
      MarkedGaussCode code = detail::load_code(cfg.input_path);
      LabeledDiagram d = compute_labels(code);
      emit_header("label");
      bool uniform_k = !d.degrees.empty();
      long long kk = d.degrees.empty() ? 0 : d.degrees[0];
      for (int deg : d.degrees)
        if (deg != kk) uniform_k = false;
      bool mod_view = uniform_k && kk != 0;
      long long mod = mod_view ? (kk < 0 ? -kk : kk) : 0;
      if (cfg.format == OutputFormat::structured) {
        for (std::size_t c = 0; c < code.components.size(); ++c) {
          nlohmann::json j;
          j["record"] = "component";
          j["index"] = c;
          j["base_point"] = code.base_points[c];
          j["degree"] = d.degrees[c];
          j["arc_labels"] = d.arc_labels[c];
          j["position_labels"] = d.position_labels[c];
          out << j.dump() << "\n";
        }
        for (const auto& [id, label] : d.crossing_labels) {
          nlohmann::json j;
          j["record"] = "crossing";
          j["id"] = id;
          j["label"] = label;
          j["parity"] = parity(d, id);
          j["weak_parity"] =
              weak_parity(d, id) == WeakParity::zero ? "zero" : "nonzero";
          if (mod_view) j["label_mod_k"] = ((label % mod) + mod) % mod;
          out << j.dump() << "\n";
        }
      } else {
        for (std::size_t c = 0; c < code.components.size(); ++c) {
          out << "component " << c << " (base point "
              << code.base_points[c] << ", degree " << d.degrees[c] << ")\n";
          out << "  arcs from base:";
          for (int a : d.arc_labels[c]) out << ' ' << a;
          out << "\n";
        }
        out << "crossings (label = over arc - under arc";
        if (mod_view) out << "; mod " << mod << " in brackets";
        out << "):\n";
        for (const auto& [id, label] : d.crossing_labels) {
          out << "  " << id << ": " << label;
          if (mod_view) out << " [" << ((label % mod) + mod) % mod << "]";
          out << "  parity " << parity(d, id) << ", "
              << (weak_parity(d, id) == WeakParity::zero ? "zero" : "nonzero")
              << "\n";
        }
      }
      return {0, out.str()};
    }

    if (cfg.command == "degree") {
      MarkedGaussCode code = detail::load_code(cfg.input_path);
      std::vector<int> d = degrees(code);
      emit_header("degree");
      if (cfg.format == OutputFormat::structured) {
        nlohmann::json j;
        j["degrees"] = d;
        out << j.dump() << "\n";
      } else {
        for (std::size_t c = 0; c < d.size(); ++c)
          out << "component " << c << ": degree " << d[c] << "\n";
        if (d.empty()) out << "empty code\n";
      }
      return {0, out.str()};
    }

    if (cfg.command == "lift") {
      MarkedGaussCode code = detail::load_code(cfg.input_path);
      LabeledDiagram d = compute_labels(code);
      CoveringLink cover;
      if (cfg.has_k)
        cover = lift_cyclic(d, cfg.k, cfg.allow_mixed);
      else if (cfg.has_window)
        cover = lift_degree0(d, cfg.window_min, cfg.window_max);
      else
        throw Error("lift needs either --k or --smin/--smax");
      emit_header("lift");
      if (cfg.format == OutputFormat::structured) {
        for (std::size_t i = 0; i < cover.code.components.size(); ++i) {
          nlohmann::json j;
          j["record"] = "sheet";
          j["base_component"] = cover.keys[i].base_component;
          j["sheet"] = cover.keys[i].sheet;
          std::string line;
          for (std::size_t p = 0; p < cover.code.components[i].size(); ++p) {
            if (p) line += ' ';
            line += format_symbol(cover.code.components[i][p]);
          }
          j["code"] = line;
          out << j.dump() << "\n";
        }
        for (const auto& [id, origin] : cover.origins) {
          nlohmann::json j;
          j["record"] = "crossing";
          j["id"] = id;
          j["base_id"] = origin.base_id;
          j["over_sheet"] = origin.over_sheet;
          out << j.dump() << "\n";
        }
        for (const auto& drop : cover.dropped) {
          nlohmann::json j;
          j["record"] = "dropped";
          j["base_id"] = drop.base_id;
          j["over_sheet"] = drop.over_sheet;
          j["under_sheet"] = drop.under_sheet;
          out << j.dump() << "\n";
        }
      } else {
        out << format_cover(cover);
        if (!cover.dropped.empty()) {
          out << "window boundary (omitted crossings):\n";
          for (const auto& drop : cover.dropped)
            out << "  base crossing " << drop.base_id << " between sheets "
                << drop.over_sheet << " and " << drop.under_sheet << "\n";
        }
      }
      return {0, out.str()};
    }

    if (cfg.command == "colorings") {
      MarkedGaussCode code = detail::load_code(cfg.input_path);
      LabeledDiagram d = compute_labels(code);
      LabeledQuandle Q;
      if (cfg.trivial_q > 0) {
        Q = LabeledQuandle::trivial(cfg.trivial_q, cfg.n);
      } else {
        std::istringstream lines(detail::read_file(cfg.quandle_path));
        std::string line;
        std::vector<std::string> records;
        while (std::getline(lines, line)) {
          if (line.empty() || line[0] == '#' || line[0] == '{') continue;
          records.push_back(line);
        }
        if (cfg.quandle_index >= records.size())
          throw Error("quandle index out of range");
        Q = LabeledQuandle::from_record(records[cfg.quandle_index]);
      }
      std::vector<AxiomWitness> bad = certify(Q);
      if (!bad.empty())
        throw Error("structure fails certification (" +
                    std::to_string(bad.size()) + " witnesses)");
      long long count = count_colorings(d, Q);
      emit_header("colorings");
      if (cfg.format == OutputFormat::structured) {
        nlohmann::json j;
        j["q"] = Q.q;
        j["n"] = Q.n;
        j["count"] = count;
        out << j.dump() << "\n";
      } else {
        out << "colorings: " << count << " (carrier " << Q.q << ", degree "
            << Q.n << ")\n";
      }
      return {0, out.str()};
    }

    if (cfg.command == "quandle-search") {
      std::string cache_file;
      if (!cfg.cache_dir.empty()) {
        cache_file = cfg.cache_dir + "/quandle-q" + std::to_string(cfg.q) +
                     "-n" + std::to_string(cfg.n) + "-b" +
                     std::to_string(cfg.budget) + "-v" + kSearchOrderVersion +
                     ".records";
        std::ifstream in(cache_file);
        if (in) {
          std::string line;
          bool done = false;
          std::vector<std::string> records;
          while (std::getline(in, line)) {
            if (line.rfind("#done", 0) == 0) done = true;
            else if (!line.empty() && line[0] != '#') records.push_back(line);
          }
          if (done) {
            emit_header("quandle-search");
            for (const auto& r : records) out << r << "\n";
            return {0, out.str()};
          }
        }
      }
      SearchResult r = search_quandles(cfg.q, cfg.n, cfg.budget);
      emit_header("quandle-search");
      std::ostringstream records;
      for (const LabeledQuandle& Q : r.found) records << Q.to_record() << "\n";
      if (cfg.format == OutputFormat::structured) {
        nlohmann::json j;
        j["q"] = cfg.q;
        j["n"] = cfg.n;
        j["budget"] = cfg.budget;
        j["complete"] = r.complete;
        j["found"] = r.found.size();
        j["nodes"] = r.nodes;
        out << j.dump() << "\n";
      } else {
        out << "# q=" << cfg.q << " n=" << cfg.n << " budget=" << cfg.budget
            << " complete=" << (r.complete ? "yes" : "no (budget exhausted)")
            << " found=" << r.found.size() << "\n";
      }
      out << records.str();
      if (!cache_file.empty()) {
        std::ofstream cache(cache_file, std::ios::trunc);
        cache << "# schema=" << kSchemaVersion << " q=" << cfg.q
              << " n=" << cfg.n << " budget=" << cfg.budget
              << " order=" << kSearchOrderVersion << "\n";
        cache << records.str();
        if (r.complete) cache << "#done\n";
      }
      return {r.complete ? 0 : 3, out.str()};
    }

    if (cfg.command == "bracket") {
      MarkedGaussCode code = detail::load_code(cfg.input_path);
      LabeledDiagram d = compute_labels(code);
      BracketPolynomial p = state_sum(d);
      emit_header("bracket");
      if (cfg.format == OutputFormat::structured) {
        for (const auto& [m, c] : p.terms) {
          nlohmann::json j;
          j["record"] = "term";
          j["monomial"] = m.to_string();
          j["coefficient"] = c;
          out << j.dump() << "\n";
        }
      } else {
        out << "[D] = " << p.to_string() << "\n";
      }
      if (!cfg.special_path.empty()) {
        Specialization s =
            detail::load_specialization(cfg.special_path, cfg.relation_window);
        LaurentPoly v = evaluate(p, s);
        if (cfg.format == OutputFormat::structured) {
          nlohmann::json j;
          j["record"] = "value";
          j["value"] = detail::laurent_json(v);
          out << j.dump() << "\n";
        } else {
          out << "value = " << v.to_string(s.var_name) << "\n";
        }
      }
      return {0, out.str()};
    }

    if (cfg.command == "check-relations") {
      Specialization s =
          detail::load_specialization(cfg.special_path, cfg.relation_window);
      RelationReport rep = check_relations(s, s.has_cd());
      emit_header("check-relations");
      if (cfg.format == OutputFormat::structured) {
        nlohmann::json j;
        j["family1"] = rep.family1_ok;
        j["family2"] = rep.family2_ok;
        if (rep.family3_checked) j["family3"] = rep.family3_ok;
        j["failures"] = rep.failures.size();
        out << j.dump() << "\n";
        for (const auto& f : rep.failures) {
          nlohmann::json r;
          r["record"] = "failure";
          r["family"] = f.family;
          r["a"] = f.a;
          r["b"] = f.b;
          if (f.family == 2) r["c"] = f.c;
          if (f.family == 3) r["loops"] = f.idx;
          r["residual"] = f.residual.to_string(s.var_name);
          out << r.dump() << "\n";
        }
      } else {
        out << "family 1: " << (rep.family1_ok ? "satisfied" : "fails")
            << "\n";
        out << "family 2: " << (rep.family2_ok ? "satisfied" : "fails")
            << "\n";
        if (rep.family3_checked)
          out << "family 3: " << (rep.family3_ok ? "satisfied" : "fails")
              << "\n";
        if (!rep.failures.empty())
          out << rep.failures.size() << " failing instances\n";
      }
      if (cfg.solve_cd) {
        for (int a = -s.window; a <= s.window; ++a)
          for (int b = -s.window; b <= s.window; ++b) {
            CDSolution sol = solve_family3(s, a, b);
            if (cfg.format == OutputFormat::structured) {
              nlohmann::json j;
              j["record"] = "cd";
              j["a"] = a;
              j["b"] = b;
              j["status"] = sol.status == CDSolution::Status::unique
                                ? "unique"
                                : sol.status == CDSolution::Status::particular
                                      ? "particular"
                                      : "none";
              if (sol.status != CDSolution::Status::none) {
                j["C"] = sol.c_value.to_string(s.var_name);
                j["D"] = sol.d_value.to_string(s.var_name);
              }
              out << j.dump() << "\n";
            } else if (a == 0 && b == 0) {
              out << "C,D at (0,0): ";
              if (sol.status == CDSolution::Status::none)
                out << "no solution\n";
              else
                out << sol.c_value.to_string(s.var_name) << ", "
                    << sol.d_value.to_string(s.var_name)
                    << (sol.status == CDSolution::Status::unique
                            ? " (unique)"
                            : " (particular)")
                    << "\n";
            }
          }
      }
      return {rep.family1_ok ? 0 : 1, out.str()};
    }

    if (cfg.command == "unknot-bound") {
      MarkedGaussCode code = detail::load_code(cfg.input_path);
      UnknottingReport rep = unknotting_bound(code);
      emit_header("unknot-bound");
      if (cfg.format == OutputFormat::structured) {
        nlohmann::json j;
        j["bound"] = rep.total();
        j["target_slot"] = rep.target_slot;
        j["base_point"] = rep.base_point;
        nlohmann::json p1 = nlohmann::json::array(), p2 = nlohmann::json::array();
        for (auto id : rep.phase1) p1.push_back(id);
        for (auto id : rep.phase2) p2.push_back(id);
        j["phase1_changes"] = p1;
        j["phase2_changes"] = p2;
        j["final"] = format_code(rep.final_code);
        out << j.dump() << "\n";
      } else {
        out << "unknotting bound: " << rep.total() << "\n";
        out << "  mark collection changes:";
        for (auto id : rep.phase1) out << ' ' << id;
        out << "\n  descending changes:";
        for (auto id : rep.phase2) out << ' ' << id;
        out << "\n  final: " << format_code(rep.final_code);
      }
      return {0, out.str()};
    }

    if (cfg.command == "moves-apply") {
      MarkedGaussCode code = detail::load_code(cfg.input_path);
      if (cfg.list_sites) {
        std::vector<MoveKind> kinds;
        if (cfg.kinds_filter.empty()) {
          kinds = all_move_kinds();
        } else {
          std::istringstream ss(cfg.kinds_filter);
          std::string tok;
          while (std::getline(ss, tok, ',')) {
            auto k = move_kind_from_name(tok);
            if (!k) throw Error("unknown move kind " + tok);
            kinds.push_back(*k);
          }
        }
        std::vector<MoveSite> sites =
            enumerate_sites(code, kinds, cfg.all_variants);
        emit_header("moves-apply");
        if (cfg.format == OutputFormat::structured) {
          for (const MoveSite& s : sites)
            out << detail::site_json(s).dump() << "\n";
        } else {
          for (const MoveSite& s : sites) {
            out << move_kind_name(s.kind) << " at " << s.comp_a << ":"
                << s.pos_a;
            if (s.kind == MoveKind::r2_add || s.kind == MoveKind::r2_remove)
              out << " / " << s.comp_b << ":" << s.pos_b;
            if (s.kind == MoveKind::r3)
              out << " / " << s.comp_b << ":" << s.pos_b << " / " << s.comp_c
                  << ":" << s.pos_c;
            if (s.kind == MoveKind::slide) out << " pass " << s.pos_b;
            out << "\n";
          }
        }
        return {0, out.str()};
      }
      auto kind = move_kind_from_name(cfg.move_kind);
      if (!kind) throw Error("unknown move kind " + cfg.move_kind);
      MoveSite site;
      site.kind = *kind;
      site.comp_a = static_cast<std::size_t>(cfg.comp_a);
      site.pos_a = static_cast<std::size_t>(cfg.pos_a);
      site.comp_b = static_cast<std::size_t>(cfg.comp_b);
      site.pos_b = static_cast<std::size_t>(cfg.pos_b);
      site.comp_c = static_cast<std::size_t>(cfg.comp_c);
      site.pos_c = static_cast<std::size_t>(cfg.pos_c);
      site.sign = cfg.move_sign;
      site.flag_a = cfg.flag_a;
      MoveTrace t = apply_move(code, site);
      emit_header("moves-apply");
      if (cfg.format == OutputFormat::structured) {
        nlohmann::json j;
        j["site"] = detail::site_json(site);
        j["result"] = format_code(t.after);
        nlohmann::json delta = nlohmann::json::array();
        for (const auto& [id, ch] : t.label_delta) {
          nlohmann::json e;
          e["id"] = id;
          if (ch.before) e["before"] = *ch.before;
          if (ch.after) e["after"] = *ch.after;
          delta.push_back(e);
        }
        j["label_delta"] = delta;
        out << j.dump() << "\n";
      } else {
        out << format_code(t.after);
      }
      return {0, out.str()};
    }

    if (cfg.command == "equiv") {
      MarkedGaussCode a = detail::load_code(cfg.input_path);
      MarkedGaussCode b = detail::load_code(cfg.other_path);
      EquivalenceResult r =
          equivalent_bounded(a, b, cfg.max_symbols, cfg.max_states);
      emit_header("equiv");
      if (cfg.format == OutputFormat::structured) {
        nlohmann::json j;
        j["verdict"] = r.equivalent ? "equivalent" : "not_found";
        j["states"] = r.states_explored;
        nlohmann::json fa = nlohmann::json::array(), fb = nlohmann::json::array();
        for (const MoveSite& s : r.from_a) fa.push_back(detail::site_json(s));
        for (const MoveSite& s : r.from_b) fb.push_back(detail::site_json(s));
        j["from_a"] = fa;
        j["from_b"] = fb;
        out << j.dump() << "\n";
      } else {
        out << (r.equivalent ? "equivalent" : "not_found") << " ("
            << r.states_explored << " states)\n";
        if (r.equivalent) {
          out << "moves from first:";
          for (const MoveSite& s : r.from_a)
            out << ' ' << move_kind_name(s.kind);
          out << "\nmoves from second:";
          for (const MoveSite& s : r.from_b)
            out << ' ' << move_kind_name(s.kind);
          out << "\n";
        }
      }
      return {r.equivalent ? 0 : 2, out.str()};
    }

    if (cfg.command == "selfcheck") {
      std::mt19937_64 rng(cfg.seed);
      CodeGenOptions opt;
      opt.max_components = 3;
      opt.max_crossings = 6;
      opt.max_marks = 5;
      std::size_t bad = 0;
      for (std::size_t i = 0; i < cfg.count; ++i) {
        MarkedGaussCode code = random_code(rng, opt);
        if (parse_code(format_code(code)) != code) ++bad;
      }
      emit_header("selfcheck");
      if (cfg.format == OutputFormat::structured) {
        nlohmann::json j;
        j["count"] = cfg.count;
        j["seed"] = cfg.seed;
        j["failures"] = bad;
        out << j.dump() << "\n";
      } else {
        out << "round trips: " << cfg.count - bad << "/" << cfg.count
            << " ok (seed " << cfg.seed << ")\n";
      }
      return {bad == 0 ? 0 : 1, out.str()};
    }

    throw Error("unknown command " + cfg.command);
  } catch (const Error& e) {
    out << "error: " << e.what() << "\n";
    return {1, out.str()};
  }
}

}  // namespace sgs1
