// Command line front end for the diagram toolkit.

#include <cstdlib>
#include <fstream>
#include <iostream>

#include <CLI11.hpp>

#include "sgs1/driver.hpp"

int main(int argc, char** argv) {
  CLI::App app{"sgs1: marked Gauss code toolkit for links in S_g x S^1"};
  app.require_subcommand(1);

  sgs1::JobConfig cfg;
  std::string format = "human";
  std::string out_path;

  auto add_common = [&](CLI::App* sub, bool needs_input) {
    sub->add_option("--format", format, "output format: human or json")
        ->check(CLI::IsMember({"human", "json"}));
    sub->add_option("-o,--out", out_path, "write output to a file");
    if (needs_input)
      sub->add_option("-i,--input", cfg.input_path, "code file")->required();
  };

  auto* validate = app.add_subcommand("validate", "check a code file");
  add_common(validate, true);

  auto* label = app.add_subcommand("label", "arc and crossing labels");
  add_common(label, true);

  auto* degree = app.add_subcommand("degree", "per-component degrees");
  add_common(degree, true);

  auto* lift = app.add_subcommand("lift", "covering-space lifts");
  add_common(lift, true);
  lift->add_option("--smin", cfg.window_min, "window lower sheet");
  lift->add_option("--smax", cfg.window_max, "window upper sheet");
  lift->add_option("--k", cfg.k, "cyclic cover degree (nonzero)");
  lift->add_flag("--allow-mixed", cfg.allow_mixed,
                 "lift even when component degrees differ from k");

  auto* colorings = app.add_subcommand("colorings", "coloring count");
  add_common(colorings, true);
  colorings->add_option("--quandle", cfg.quandle_path,
                        "file of structure records");
  colorings->add_option("--index", cfg.quandle_index,
                        "record index in the file");
  colorings->add_option("--trivial", cfg.trivial_q,
                        "use the trivial structure of this carrier size");
  colorings->add_option("--n", cfg.n, "degree for --trivial");

  auto* qsearch = app.add_subcommand("quandle-search",
                                     "enumerate certified structures");
  add_common(qsearch, false);
  qsearch->add_option("--q", cfg.q, "carrier size")->required();
  qsearch->add_option("--n", cfg.n, "degree")->required();
  qsearch->add_option("--budget", cfg.budget, "search node budget");
  bool use_cache = false;
  qsearch->add_flag("--cache", use_cache,
                    "cache results under $SGS1_CACHE_DIR");

  auto* bracket = app.add_subcommand("bracket", "bracket polynomial");
  add_common(bracket, true);
  bracket->add_option("--special", cfg.special_path,
                      "specialization: 'kauffman' or a json file");
  bracket->add_option("--window", cfg.relation_window,
                      "label window for specializations");

  auto* relations = app.add_subcommand("check-relations",
                                       "specialization relation families");
  add_common(relations, false);
  relations->add_option("--special", cfg.special_path,
                        "specialization: 'kauffman' or a json file");
  relations->add_option("--window", cfg.relation_window, "label window");
  relations->add_flag("--solve-cd", cfg.solve_cd,
                      "solve the third family for C and D");

  auto* unknot = app.add_subcommand("unknot-bound",
                                    "upper bound on the unknotting number");
  add_common(unknot, true);

  auto* moves = app.add_subcommand("moves-apply", "apply or list moves");
  add_common(moves, true);
  moves->add_flag("--list", cfg.list_sites, "list applicable sites");
  moves->add_flag("--all-variants", cfg.all_variants,
                  "include orientation/sign variants when listing");
  moves->add_option("--kinds", cfg.kinds_filter,
                    "comma separated kinds for --list");
  moves->add_option("--kind", cfg.move_kind, "move kind to apply");
  moves->add_option("--comp-a", cfg.comp_a, "first component");
  moves->add_option("--pos-a", cfg.pos_a, "first position/slot");
  moves->add_option("--comp-b", cfg.comp_b, "second component");
  moves->add_option("--pos-b", cfg.pos_b, "second position/slot");
  moves->add_option("--comp-c", cfg.comp_c, "third component");
  moves->add_option("--pos-c", cfg.pos_c, "third position");
  moves->add_option("--sign", cfg.move_sign, "crossing sign / mark direction");
  moves->add_flag("--variant", cfg.flag_a,
                  "kind-specific flag (over first / parallel / pass after "
                  "mark)");

  auto* equiv = app.add_subcommand("equiv", "bounded equivalence search");
  add_common(equiv, true);
  equiv->add_option("--other", cfg.other_path, "second code file")->required();
  equiv->add_option("--max-symbols", cfg.max_symbols, "symbol budget");
  equiv->add_option("--max-states", cfg.max_states, "state budget");

  auto* selfcheck = app.add_subcommand("selfcheck",
                                       "parser round-trip self test");
  add_common(selfcheck, false);
  selfcheck->add_option("--seed", cfg.seed, "corpus seed");
  selfcheck->add_option("--count", cfg.count, "corpus size");

  CLI11_PARSE(app, argc, argv);

  cfg.command = app.get_subcommands().front()->get_name();
  cfg.format = format == "json" ? sgs1::OutputFormat::structured
                                : sgs1::OutputFormat::human;
  cfg.has_window = lift->count("--smin") || lift->count("--smax");
  cfg.has_k = lift->count("--k");
  if (use_cache) {
    const char* dir = std::getenv("SGS1_CACHE_DIR");
    cfg.cache_dir = dir ? dir : ".";
  }

  sgs1::JobResult result = sgs1::run_job(cfg);
  if (out_path.empty()) {
    std::cout << result.out;
  } else {
    std::ofstream f(out_path, std::ios::binary);
    f << result.out;
  }
  return result.status;
}
