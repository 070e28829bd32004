#include <catch2/catch_amalgamated.hpp>

#include "sgs1/moves.hpp"
#include "sgs1/parse.hpp"
#include "sgs1/random.hpp"
#include "sgs1/unknot.hpp"

using namespace sgs1;

namespace {

MarkedGaussCode code_of(const std::string& text) { return parse_code(text); }

MoveSite first_site(const MarkedGaussCode& code, MoveKind kind) {
  auto sites = enumerate_sites(code, {kind}, true);
  REQUIRE_FALSE(sites.empty());
  return sites.front();
}

// A three-strand triangle carrying an applicable r3 site, with marks so the
// three strands sit on distinct labels.
MarkedGaussCode r3_gadget() {
  return code_of(
      "M+ O1+ O2+ M-\n"
      "O3- U1+\n"
      "M- U3- U2+ M+");
}

}  // namespace

TEST_CASE("r1+ creates a kink with label zero") {
  MoveSite site{MoveKind::r1_add, 0, 0};
  site.flag_a = true;
  MoveTrace t = apply_move(code_of("*"), site);
  CHECK(t.after.components[0].size() == 2);
  CHECK(t.created.size() == 1);
  CHECK(compute_labels(t.after).crossing_labels.at(t.created[0]) == 0);
}

TEST_CASE("r2+ labels equal the over/under arc difference") {
  // Arc labeled 5 pushed over an arc labeled 2.
  MarkedGaussCode code = code_of("*M+ M+ M+ M+ M+\n*M+ M+");
  MoveSite site{MoveKind::r2_add, 0, 0, 1, 0};
  site.flag_a = true;
  MoveTrace t = apply_move(code, site);
  LabeledDiagram d = compute_labels(t.after);
  REQUIRE(t.created.size() == 2);
  CHECK(d.crossing_labels.at(t.created[0]) == 3);
  CHECK(d.crossing_labels.at(t.created[1]) == 3);

  // The mirrored application (other strand on top) negates the label; the
  // two readings pair to zero.
  MoveSite mirror{MoveKind::r2_add, 1, 0, 0, 0};
  mirror.flag_a = true;
  MoveTrace tm = apply_move(code, mirror);
  LabeledDiagram dm = compute_labels(tm.after);
  int i = d.crossing_labels.at(t.created[0]);
  int j = dm.crossing_labels.at(tm.created[0]);
  CHECK(i + j == 0);
}

TEST_CASE("mark pair cancellation empties the two-mark loop") {
  MoveTrace t = apply_move(code_of("*M+ M-"),
                           MoveSite{MoveKind::cancel_remove, 0, 0});
  CHECK(t.after.components[0].empty());
  CHECK(degrees(t.after) == std::vector<int>{0});
}

TEST_CASE("slide satisfies i + j = -1 in every configuration") {
  struct Case {
    std::string text;
    std::size_t mark_pos, pass_pos;
    bool after_mark;
  };
  // Over pass before M+; under pass before M-; and the reverse slides.
  std::vector<Case> cases = {
      {"O1+ M+\n*U1+", 1, 0, false},
      {"M+ U1+\n*O1+", 0, 1, true},
      {"U1+ M-\n*O1+", 1, 0, false},
      {"M- O1+\n*U1+", 0, 1, true},
  };
  for (const auto& kase : cases) {
    MarkedGaussCode code = code_of(kase.text);
    MoveSite site{MoveKind::slide, 0, kase.mark_pos};
    site.pos_b = kase.pass_pos;
    site.flag_a = kase.after_mark;
    MoveTrace t = apply_move(code, site);
    REQUIRE(t.label_delta.size() == 1);
    const LabelChange& ch = t.label_delta.begin()->second;
    REQUIRE(ch.before.has_value());
    REQUIRE(ch.after.has_value());
    CHECK(*ch.before + *ch.after == -1);
    // The crossing's over/under and sign flip as it crosses the mark.
    CHECK(t.after.components[0][kase.mark_pos].is_pass());
  }
}

TEST_CASE("slide rejects the blocked side") {
  // For a +1 mark the pass after it must be under; an over pass is blocked.
  MarkedGaussCode code = code_of("M+ O1+\n*U1+");
  MoveSite site{MoveKind::slide, 0, 0};
  site.pos_b = 1;
  site.flag_a = true;
  CHECK_THROWS_AS(apply_move(code, site), Error);
}

TEST_CASE("r3 preserves labels and the triple relation") {
  MarkedGaussCode code = r3_gadget();
  LabeledDiagram before = compute_labels(code);
  // Labels: top strand 1, middle 0, bottom -1 at the crossings.
  CHECK(before.crossing_labels.at(1) == 1);   // top/middle
  CHECK(before.crossing_labels.at(2) == 2);   // top/bottom
  CHECK(before.crossing_labels.at(3) == 1);   // middle/bottom
  // i + j - k = 0 with i = top/middle, j = middle/bottom, k = top/bottom.
  CHECK(before.crossing_labels.at(1) + before.crossing_labels.at(3) -
            before.crossing_labels.at(2) ==
        0);

  MoveSite site = first_site(code, MoveKind::r3);
  MoveTrace t = apply_move(code, site);
  CHECK(t.label_delta.empty());
  LabeledDiagram after = compute_labels(t.after);
  CHECK(after.crossing_labels == before.crossing_labels);
  CHECK_FALSE(same_diagram(code, t.after));
}

TEST_CASE("enumerate counts match the small examples") {
  CHECK(enumerate_sites(code_of("*"), {MoveKind::r1_add}).size() == 1);
  CHECK(enumerate_sites(code_of("*M+ M-"), {MoveKind::cancel_remove}).size() ==
        1);
  CHECK(enumerate_sites(code_of("*O1+ U2+ O3+ U1+ O2+ U3+"),
                        {MoveKind::r2_remove})
            .empty());
  CHECK(enumerate_sites(code_of("*"), {MoveKind::r2_add}).size() == 1);
}

TEST_CASE("moves are involutive up to rotation") {
  std::mt19937_64 rng(4001);
  CodeGenOptions opt;
  opt.max_crossings = 4;
  opt.max_marks = 4;
  opt.max_components = 2;
  int applied = 0;
  for (int iter = 0; iter < 400; ++iter) {
    MarkedGaussCode code = random_code(rng, opt);
    std::vector<MoveSite> sites =
        enumerate_sites(code, all_move_kinds(), true);
    if (sites.empty()) continue;
    const MoveSite& site = sites[rng() % sites.size()];
    MoveTrace t = apply_move(code, site);
    MoveTrace back = apply_move(t.after, t.inverse);
    CHECK(same_diagram(back.after, code));
    ++applied;
  }
  CHECK(applied > 300);
}

TEST_CASE("moves preserve per-component degrees") {
  std::mt19937_64 rng(4002);
  CodeGenOptions opt;
  opt.max_crossings = 4;
  opt.max_marks = 5;
  for (int iter = 0; iter < 400; ++iter) {
    MarkedGaussCode code = random_code(rng, opt);
    std::vector<MoveSite> sites =
        enumerate_sites(code, all_move_kinds(), true);
    if (sites.empty()) continue;
    const MoveSite& site = sites[rng() % sites.size()];
    MoveTrace t = apply_move(code, site);
    CHECK(degrees(t.after) == degrees(code));
  }
}

TEST_CASE("moves preserve planarity of planar codes") {
  std::mt19937_64 rng(4003);
  int applied = 0;
  for (int iter = 0; iter < 120; ++iter) {
    MarkedGaussCode code = random_planar_code(rng, 4, 3);
    REQUIRE(planar_signed(code));
    std::vector<MoveSite> sites = enumerate_sites(
        code,
        {MoveKind::r1_add, MoveKind::r1_remove, MoveKind::r2_remove,
         MoveKind::r3, MoveKind::slide, MoveKind::cancel_add,
         MoveKind::cancel_remove},
        true);
    if (sites.empty()) continue;
    const MoveSite& site = sites[rng() % sites.size()];
    MoveTrace t = apply_move(code, site);
    CHECK(planar_signed(t.after));
    ++applied;
  }
  CHECK(applied > 80);
  // r3 specifically: a planar closure of the triangle (top and middle strand
  // joined into one loop, bottom closed separately).
  MarkedGaussCode gadget = code_of("O1+ O2+ O3- U1+\nU3- U2+");
  REQUIRE(planar_signed(gadget));
  MoveTrace t = apply_move(gadget, first_site(gadget, MoveKind::r3));
  CHECK(planar_signed(t.after));
}

TEST_CASE("apply rejects mismatched sites with a position") {
  MarkedGaussCode code = code_of("*O1+ U1+");
  try {
    apply_move(code, MoveSite{MoveKind::cancel_remove, 0, 0});
    FAIL("expected rejection");
  } catch (const Error& e) {
    CHECK(std::string(e.what()).find("position 0") != std::string::npos);
  }
}

TEST_CASE("bounded search: reflexivity") {
  MarkedGaussCode trefoil = code_of("*O1+ U2+ O3+ U1+ O2+ U3+");
  EquivalenceResult r = equivalent_bounded(trefoil, trefoil, 10, 100);
  CHECK(r.equivalent);
  CHECK(r.from_a.empty());
  CHECK(r.from_b.empty());
}

TEST_CASE("bounded search: unknot vs kinked unknot") {
  MarkedGaussCode unknot = code_of("*");
  MarkedGaussCode kink = code_of("*O1- U1-");
  EquivalenceResult r = equivalent_bounded(unknot, kink, 6, 2000);
  REQUIRE(r.equivalent);
  CHECK(r.from_a.size() + r.from_b.size() == 1);
  // Certificate replays.
  MarkedGaussCode x = unknot;
  for (const MoveSite& s : r.from_a) x = apply_move(x, s).after;
  MarkedGaussCode y = kink;
  for (const MoveSite& s : r.from_b) y = apply_move(y, s).after;
  CHECK(same_diagram(x, y));
}

TEST_CASE("bounded search connects the braid-relation closures") {
  // Trace closures of the three-strand words s1 s2 s1 and s2 s1 s2: related
  // by an r3 variant outside the implemented oriented form, so the search
  // must bridge it through other moves.
  MarkedGaussCode a = code_of("O1+ O2+ U2+ U3+\nU1+ O3+");
  MarkedGaussCode b = code_of("O1+ O2+ U3+ U1+\nO3+ U2+");
  REQUIRE(planar_signed(a));
  REQUIRE(planar_signed(b));
  EquivalenceResult r = equivalent_bounded(a, b, 14, 20000);
  REQUIRE(r.equivalent);
  MarkedGaussCode x = a, y = b;
  for (const MoveSite& s : r.from_a) x = apply_move(x, s).after;
  for (const MoveSite& s : r.from_b) y = apply_move(y, s).after;
  CHECK(same_diagram(x, y));
}

TEST_CASE("bounded search: degree obstruction returns not found") {
  EquivalenceResult r = equivalent_bounded(code_of("*"), code_of("*M+"), 8,
                                           5000);
  CHECK_FALSE(r.equivalent);
  CHECK(degrees(code_of("*")) != degrees(code_of("*M+")));
}

TEST_CASE("bounded search rejects non-positive budgets") {
  CHECK_THROWS_AS(equivalent_bounded(code_of("*"), code_of("*"), 0, 10),
                  Error);
  CHECK_THROWS_AS(equivalent_bounded(code_of("*"), code_of("*"), 10, 0),
                  Error);
}

TEST_CASE("label relations hold across a random move corpus") {
  std::mt19937_64 rng(4004);
  CodeGenOptions opt;
  opt.max_crossings = 4;
  opt.max_marks = 4;
  int slides = 0, r2s = 0;
  for (int iter = 0; iter < 300; ++iter) {
    MarkedGaussCode code = random_code(rng, opt);
    for (MoveKind kind : {MoveKind::r2_add, MoveKind::slide}) {
      std::vector<MoveSite> sites = enumerate_sites(code, {kind}, true);
      if (sites.empty()) continue;
      const MoveSite& site = sites[rng() % sites.size()];
      MoveTrace t = apply_move(code, site);  // relations verified inside
      if (kind == MoveKind::slide) ++slides;
      if (kind == MoveKind::r2_add) ++r2s;
      LabeledDiagram la = compute_labels(t.after);
      if (kind == MoveKind::r2_add)
        CHECK(la.crossing_labels.at(t.created[0]) ==
              la.crossing_labels.at(t.created[1]));
    }
  }
  CHECK(slides > 50);
  CHECK(r2s > 200);
}
