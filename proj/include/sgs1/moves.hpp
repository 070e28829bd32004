#pragma once

// Move calculus on marked Gauss codes: the classical Reidemeister moves
// R1/R2/R3 plus two mark moves, with exact label bookkeeping.
//
//   slide   — a crossing adjacent to a cut mark moves across it.  Near the
//             mark one side of the strand runs against the top of the
//             thickening and the other against the bottom, so the move only
//             applies when the crossing's over/under pattern matches that
//             side, and carrying the crossing across flips its over/under
//             (and hence its sign).  The crossing label changes from i to j
//             with i + j = -1.
//   cancel  — two adjacent marks of opposite direction cancel (or are
//             inserted); no crossing label changes.
//
// R3 is implemented in one oriented form (the variant below together with
// its own after-state); the remaining oriented variants are generated by
// combining with R2 moves, so the bounded search still reaches them.
//
// Detour moves are invisible here: abstract Gauss codes already quotient by
// them.

#include <deque>
#include <map>
#include <optional>
#include <set>
#include <string>
#include <vector>

#include "sgs1/canonical.hpp"
#include "sgs1/code.hpp"
#include "sgs1/labels.hpp"

namespace sgs1 {

enum class MoveKind {
  r1_add,
  r1_remove,
  r2_add,
  r2_remove,
  r3,
  slide,
  cancel_add,
  cancel_remove,
};

inline const std::vector<MoveKind>& all_move_kinds() {
  static const std::vector<MoveKind> kinds = {
      MoveKind::r1_add,  MoveKind::r1_remove,  MoveKind::r2_add,
      MoveKind::r2_remove, MoveKind::r3,       MoveKind::slide,
      MoveKind::cancel_add, MoveKind::cancel_remove};
  return kinds;
}

inline std::string move_kind_name(MoveKind k) {
  switch (k) {
    case MoveKind::r1_add: return "r1+";
    case MoveKind::r1_remove: return "r1-";
    case MoveKind::r2_add: return "r2+";
    case MoveKind::r2_remove: return "r2-";
    case MoveKind::r3: return "r3";
    case MoveKind::slide: return "slide";
    case MoveKind::cancel_add: return "cancel+";
    case MoveKind::cancel_remove: return "cancel-";
  }
  return "?";
}

inline std::optional<MoveKind> move_kind_from_name(const std::string& s) {
  for (MoveKind k : all_move_kinds())
    if (move_kind_name(k) == s) return k;
  return std::nullopt;
}

// A move site.  Field use by kind:
//   r1+      comp_a, pos_a = slot; flag_a = over pass first; sign.
//   r1-      comp_a, pos_a = first position of the adjacent pass pair.
//   r2+      (comp_a, pos_a) = slot of the over strand, (comp_b, pos_b) =
//            slot of the under strand; flag_a = parallel orientation; sign =
//            sign of the first inserted crossing.
//   r2-      (comp_a, pos_a) = first position of the over pair, (comp_b,
//            pos_b) = first position of the under pair.
//   r3       (comp_a, pos_a) / (comp_b, pos_b) / (comp_c, pos_c) = first
//            positions of the top, middle and bottom adjacent pairs.
//   slide    comp_a; pos_a = mark position, pos_b = pass position; flag_a =
//            pass sits after the mark in traversal order.
//   cancel+  comp_a, pos_a = slot; sign = direction of the first mark.
//   cancel-  comp_a, pos_a = first position of the adjacent mark pair.
struct MoveSite {
  MoveKind kind{};
  std::size_t comp_a = 0, pos_a = 0;
  std::size_t comp_b = 0, pos_b = 0;
  std::size_t comp_c = 0, pos_c = 0;
  int sign = +1;
  bool flag_a = false;
};

struct LabelChange {
  std::optional<int> before, after;
};

struct MoveTrace {
  MarkedGaussCode before, after;
  MoveSite site;
  MoveSite inverse;  // applicable to `after`; round-trips up to rotation
  std::map<std::uint32_t, LabelChange> label_delta;
  std::vector<std::uint32_t> created, removed;
};

namespace detail {

inline void insert_symbols(MarkedGaussCode& code, std::size_t comp,
                           std::size_t slot, const std::vector<Symbol>& syms) {
  auto& v = code.components[comp];
  if (slot > v.size())
    throw Error("insertion slot " + std::to_string(slot) +
                " out of range in component " + std::to_string(comp));
  bool was_empty = v.empty();
  v.insert(v.begin() + static_cast<std::ptrdiff_t>(slot), syms.begin(),
           syms.end());
  if (!was_empty && code.base_points[comp] >= slot)
    code.base_points[comp] += syms.size();
}

inline void remove_positions(MarkedGaussCode& code, std::size_t comp,
                             std::vector<std::size_t> positions) {
  auto& v = code.components[comp];
  std::size_t n = v.size();
  std::set<std::size_t> rem(positions.begin(), positions.end());
  std::size_t base = code.base_points[comp];
  if (rem.count(base)) {
    std::size_t b = base;
    for (std::size_t step = 0; step + 1 < n; ++step) {
      b = (b + 1) % n;
      if (!rem.count(b)) break;
    }
    base = rem.count(b) ? 0 : b;
  }
  std::size_t shift = 0;
  for (std::size_t r : rem)
    if (r < base) ++shift;
  base -= shift;
  std::sort(positions.begin(), positions.end(), std::greater<>());
  for (std::size_t p : positions)
    v.erase(v.begin() + static_cast<std::ptrdiff_t>(p));
  if (v.empty()) base = 0;
  if (!v.empty() && base >= v.size()) base = 0;
  code.base_points[comp] = base;
}

inline void flip_crossing(MarkedGaussCode& code, std::uint32_t id) {
  for (auto& comp : code.components)
    for (auto& s : comp)
      if (s.is_pass() && s.id == id) {
        s.role = flip(s.role);
        s.sign = -s.sign;
      }
}

// Role a pass must have for a mark of direction `dir` to slide across it.
// Walking positively, the strand approaches the cut against the top of the
// thickening and leaves it along the bottom, so the side with the smaller
// arc label is forced over.
inline Role slide_required_role(int dir, bool pass_after_mark) {
  if (pass_after_mark) return dir > 0 ? Role::under : Role::over;
  return dir > 0 ? Role::over : Role::under;
}

}  // namespace detail

inline MoveTrace apply_move(const MarkedGaussCode& before,
                            const MoveSite& site) {
  auto fail = [&](const std::string& msg) -> MoveTrace {
    throw Error(move_kind_name(site.kind) + " does not apply: " + msg);
  };
  auto check_comp = [&](std::size_t comp) {
    if (comp >= before.components.size())
      fail("component " + std::to_string(comp) + " out of range");
  };
  auto check_pos = [&](std::size_t comp, std::size_t pos) {
    if (pos >= before.components[comp].size())
      fail("position " + std::to_string(pos) + " out of range in component " +
           std::to_string(comp));
  };

  MoveTrace trace;
  trace.before = before;
  trace.site = site;
  MarkedGaussCode after = before;

  switch (site.kind) {
    case MoveKind::r1_add: {
      check_comp(site.comp_a);
      if (site.sign != 1 && site.sign != -1) fail("sign must be +1 or -1");
      std::uint32_t id = fresh_crossing_id(before);
      Symbol o = Symbol::pass(id, Role::over, site.sign);
      Symbol u = Symbol::pass(id, Role::under, site.sign);
      std::vector<Symbol> syms =
          site.flag_a ? std::vector<Symbol>{o, u} : std::vector<Symbol>{u, o};
      detail::insert_symbols(after, site.comp_a, site.pos_a, syms);
      trace.created.push_back(id);
      trace.inverse = MoveSite{MoveKind::r1_remove, site.comp_a, site.pos_a};
      break;
    }
    case MoveKind::r1_remove: {
      check_comp(site.comp_a);
      check_pos(site.comp_a, site.pos_a);
      std::size_t p = site.pos_a;
      std::size_t q = before.next(site.comp_a, p);
      if (q == p) fail("component too small");
      const Symbol& sp = before.at(site.comp_a, p);
      const Symbol& sq = before.at(site.comp_a, q);
      if (!sp.is_pass() || !sq.is_pass() || sp.id != sq.id)
        fail("position " + std::to_string(p) +
             ": expected both passes of one crossing");
      trace.removed.push_back(sp.id);
      bool wrap = q != p + 1;
      detail::remove_positions(after, site.comp_a, {p, q});
      std::size_t slot = wrap ? after.components[site.comp_a].size() : p;
      trace.inverse = MoveSite{MoveKind::r1_add, site.comp_a, slot};
      trace.inverse.flag_a = sp.role == Role::over;
      trace.inverse.sign = sp.sign;
      break;
    }
    case MoveKind::r2_add: {
      check_comp(site.comp_a);
      check_comp(site.comp_b);
      if (site.sign != 1 && site.sign != -1) fail("sign must be +1 or -1");
      std::uint32_t c1 = fresh_crossing_id(before);
      std::uint32_t c2 = c1 + 1;
      std::vector<Symbol> over = {Symbol::pass(c1, Role::over, site.sign),
                                  Symbol::pass(c2, Role::over, -site.sign)};
      std::vector<Symbol> under =
          site.flag_a ? std::vector<Symbol>{Symbol::pass(c1, Role::under,
                                                         site.sign),
                                            Symbol::pass(c2, Role::under,
                                                         -site.sign)}
                      : std::vector<Symbol>{Symbol::pass(c2, Role::under,
                                                         -site.sign),
                                            Symbol::pass(c1, Role::under,
                                                         site.sign)};
      std::size_t over_pos, under_pos;
      if (site.comp_a != site.comp_b) {
        detail::insert_symbols(after, site.comp_a, site.pos_a, over);
        detail::insert_symbols(after, site.comp_b, site.pos_b, under);
        over_pos = site.pos_a;
        under_pos = site.pos_b;
      } else if (site.pos_a == site.pos_b) {
        std::vector<Symbol> both = over;
        both.insert(both.end(), under.begin(), under.end());
        detail::insert_symbols(after, site.comp_a, site.pos_a, both);
        over_pos = site.pos_a;
        under_pos = site.pos_a + 2;
      } else if (site.pos_a < site.pos_b) {
        detail::insert_symbols(after, site.comp_a, site.pos_b, under);
        detail::insert_symbols(after, site.comp_a, site.pos_a, over);
        over_pos = site.pos_a;
        under_pos = site.pos_b + 2;
      } else {
        detail::insert_symbols(after, site.comp_a, site.pos_a, over);
        detail::insert_symbols(after, site.comp_b, site.pos_b, under);
        over_pos = site.pos_a + 2;
        under_pos = site.pos_b;
      }
      trace.created = {c1, c2};
      trace.inverse = MoveSite{MoveKind::r2_remove, site.comp_a, over_pos,
                               site.comp_b, under_pos};
      break;
    }
    case MoveKind::r2_remove: {
      check_comp(site.comp_a);
      check_comp(site.comp_b);
      check_pos(site.comp_a, site.pos_a);
      check_pos(site.comp_b, site.pos_b);
      std::size_t pa = site.pos_a, pa2 = before.next(site.comp_a, pa);
      std::size_t pb = site.pos_b, pb2 = before.next(site.comp_b, pb);
      if (pa2 == pa || pb2 == pb) fail("component too small");
      const Symbol& o1 = before.at(site.comp_a, pa);
      const Symbol& o2 = before.at(site.comp_a, pa2);
      const Symbol& u1 = before.at(site.comp_b, pb);
      const Symbol& u2 = before.at(site.comp_b, pb2);
      if (!o1.is_pass() || !o2.is_pass() || o1.role != Role::over ||
          o2.role != Role::over || o1.id == o2.id)
        fail("position " + std::to_string(pa) +
             ": expected adjacent over passes of two crossings");
      if (!u1.is_pass() || !u2.is_pass() || u1.role != Role::under ||
          u2.role != Role::under)
        fail("position " + std::to_string(pb) +
             ": expected adjacent under passes");
      bool parallel = u1.id == o1.id && u2.id == o2.id;
      bool anti = u1.id == o2.id && u2.id == o1.id;
      if (!parallel && !anti)
        fail("position " + std::to_string(pb) +
             ": under passes do not match the over pair");
      if (o1.sign != -o2.sign) fail("crossing signs are not opposite");
      std::set<std::pair<std::size_t, std::size_t>> all = {
          {site.comp_a, pa}, {site.comp_a, pa2}, {site.comp_b, pb},
          {site.comp_b, pb2}};
      if (all.size() != 4) fail("positions overlap");
      trace.removed = {o1.id, o2.id};

      bool over_wrap = pa2 != pa + 1;
      bool under_wrap = pb2 != pb + 1;
      if (site.comp_a == site.comp_b) {
        std::vector<std::size_t> rem = {pa, pa2, pb, pb2};
        detail::remove_positions(after, site.comp_a, rem);
        auto reduced = [&](std::size_t q) {
          std::size_t s = 0;
          for (std::size_t r : rem)
            if (r < q) ++s;
          return q - s;
        };
        std::size_t slot_over =
            over_wrap ? after.components[site.comp_a].size() : reduced(pa);
        std::size_t slot_under =
            under_wrap ? after.components[site.comp_a].size() : reduced(pb);
        trace.inverse = MoveSite{MoveKind::r2_add, site.comp_a, slot_over,
                                 site.comp_b, slot_under};
      } else {
        detail::remove_positions(after, site.comp_a, {pa, pa2});
        detail::remove_positions(after, site.comp_b, {pb, pb2});
        std::size_t slot_over =
            over_wrap ? after.components[site.comp_a].size() : pa;
        std::size_t slot_under =
            under_wrap ? after.components[site.comp_b].size() : pb;
        trace.inverse = MoveSite{MoveKind::r2_add, site.comp_a, slot_over,
                                 site.comp_b, slot_under};
      }
      trace.inverse.flag_a = parallel;
      trace.inverse.sign = o1.sign;
      break;
    }
    case MoveKind::r3: {
      check_comp(site.comp_a);
      check_comp(site.comp_b);
      check_comp(site.comp_c);
      check_pos(site.comp_a, site.pos_a);
      check_pos(site.comp_b, site.pos_b);
      check_pos(site.comp_c, site.pos_c);
      std::size_t pt = site.pos_a, pt2 = before.next(site.comp_a, pt);
      std::size_t pm = site.pos_b, pm2 = before.next(site.comp_b, pm);
      std::size_t pb = site.pos_c, pb2 = before.next(site.comp_c, pb);
      const Symbol& t1 = before.at(site.comp_a, pt);
      const Symbol& t2 = before.at(site.comp_a, pt2);
      const Symbol& m1 = before.at(site.comp_b, pm);
      const Symbol& m2 = before.at(site.comp_b, pm2);
      const Symbol& b1 = before.at(site.comp_c, pb);
      const Symbol& b2 = before.at(site.comp_c, pb2);
      if (!t1.is_pass() || !t2.is_pass() || t1.role != Role::over ||
          t2.role != Role::over || t1.id == t2.id)
        fail("position " + std::to_string(pt) +
             ": expected the top strand's two over passes");
      if (!m1.is_pass() || !m2.is_pass() || !b1.is_pass() || !b2.is_pass())
        fail("middle/bottom pairs must be crossing passes");
      // Orientation pattern: either (t: u,v | m: w,u | b: w,v) or its full
      // reversal; signs (+, +, -) for (u, v, w).
      std::uint32_t u, v, w;
      if (m2.is_pass() && m2.role == Role::under && m2.id == t1.id &&
          m1.role == Role::over) {
        u = t1.id;
        v = t2.id;
        w = m1.id;
        if (!(b1.role == Role::under && b1.id == w && b2.role == Role::under &&
              b2.id == v))
          fail("bottom pair does not match pattern");
      } else if (m1.role == Role::under && m1.id == t2.id &&
                 m2.role == Role::over) {
        u = t2.id;
        v = t1.id;
        w = m2.id;
        if (!(b1.role == Role::under && b1.id == v && b2.role == Role::under &&
              b2.id == w))
          fail("bottom pair does not match pattern");
      } else {
        return fail("middle pair does not match pattern");
      }
      if (u == v || v == w || u == w) fail("crossings are not distinct");
      CrossingIndex idx = index_crossings(before);
      if (idx.sign[u] != 1 || idx.sign[v] != 1 || idx.sign[w] != -1)
        fail("signs do not match the implemented oriented form");
      std::set<std::pair<std::size_t, std::size_t>> all = {
          {site.comp_a, pt}, {site.comp_a, pt2}, {site.comp_b, pm},
          {site.comp_b, pm2}, {site.comp_c, pb}, {site.comp_c, pb2}};
      if (all.size() != 6) fail("positions overlap");
      // A pair straddling its component's base point would re-anchor labels.
      if (before.base_points[site.comp_a] == pt2 ||
          before.base_points[site.comp_b] == pm2 ||
          before.base_points[site.comp_c] == pb2)
        fail("base point lies inside a swapped pair");
      std::swap(after.components[site.comp_a][pt],
                after.components[site.comp_a][pt2]);
      std::swap(after.components[site.comp_b][pm],
                after.components[site.comp_b][pm2]);
      std::swap(after.components[site.comp_c][pb],
                after.components[site.comp_c][pb2]);
      trace.inverse = site;
      break;
    }
    case MoveKind::slide: {
      check_comp(site.comp_a);
      check_pos(site.comp_a, site.pos_a);
      check_pos(site.comp_a, site.pos_b);
      std::size_t m = site.pos_a, p = site.pos_b;
      bool after_mark = site.flag_a;
      std::size_t expect =
          after_mark ? before.next(site.comp_a, m) : before.prev(site.comp_a, m);
      if (p != expect)
        fail("positions " + std::to_string(m) + "," + std::to_string(p) +
             " are not adjacent on the stated side");
      const Symbol& ms = before.at(site.comp_a, m);
      const Symbol& ps = before.at(site.comp_a, p);
      if (!ms.is_mark())
        fail("position " + std::to_string(m) + " is not a mark");
      if (!ps.is_pass())
        fail("position " + std::to_string(p) + " is not a crossing pass");
      if (ps.role != detail::slide_required_role(ms.direction, after_mark))
        fail("crossing is on the blocked side of the mark");
      // Reject the degenerate anchoring where the base point sits between
      // the two swapped symbols.
      std::size_t between = after_mark ? p : m;
      if (before.base_points[site.comp_a] == between &&
          before.components[site.comp_a].size() > 1)
        fail("base point lies between mark and crossing");
      std::swap(after.components[site.comp_a][m],
                after.components[site.comp_a][p]);
      detail::flip_crossing(after, ps.id);
      trace.inverse = MoveSite{MoveKind::slide, site.comp_a, p};
      trace.inverse.pos_b = m;
      trace.inverse.flag_a = !after_mark;
      break;
    }
    case MoveKind::cancel_add: {
      check_comp(site.comp_a);
      if (site.sign != 1 && site.sign != -1) fail("sign must be +1 or -1");
      std::vector<Symbol> syms = {Symbol::mark(site.sign),
                                  Symbol::mark(-site.sign)};
      detail::insert_symbols(after, site.comp_a, site.pos_a, syms);
      trace.inverse = MoveSite{MoveKind::cancel_remove, site.comp_a,
                               site.pos_a};
      break;
    }
    case MoveKind::cancel_remove: {
      check_comp(site.comp_a);
      check_pos(site.comp_a, site.pos_a);
      std::size_t p = site.pos_a;
      std::size_t q = before.next(site.comp_a, p);
      if (q == p) fail("component too small");
      const Symbol& sp = before.at(site.comp_a, p);
      const Symbol& sq = before.at(site.comp_a, q);
      if (!sp.is_mark() || !sq.is_mark() || sp.direction != -sq.direction)
        fail("position " + std::to_string(p) +
             ": expected adjacent opposite marks");
      if (before.base_points[site.comp_a] == q)
        fail("base point lies between the two marks");
      bool wrap = q != p + 1;
      detail::remove_positions(after, site.comp_a, {p, q});
      std::size_t slot = wrap ? after.components[site.comp_a].size() : p;
      trace.inverse = MoveSite{MoveKind::cancel_add, site.comp_a, slot};
      trace.inverse.sign = sp.direction;
      break;
    }
  }

  trace.after = std::move(after);

  // Label bookkeeping and the per-kind relations, verified on every call.
  LabeledDiagram lb = compute_labels(trace.before);
  LabeledDiagram la = compute_labels(trace.after);
  std::set<std::uint32_t> ids;
  for (const auto& [id, x] : lb.crossing_labels) ids.insert(id);
  for (const auto& [id, x] : la.crossing_labels) ids.insert(id);
  for (std::uint32_t id : ids) {
    auto itb = lb.crossing_labels.find(id);
    auto ita = la.crossing_labels.find(id);
    LabelChange ch;
    if (itb != lb.crossing_labels.end()) ch.before = itb->second;
    if (ita != la.crossing_labels.end()) ch.after = ita->second;
    bool changed = !(ch.before.has_value() && ch.after.has_value() &&
                     *ch.before == *ch.after);
    if (changed) trace.label_delta[id] = ch;
  }

  auto relation_bug = [&](const std::string& msg) {
    throw std::logic_error("move relation violated (" +
                           move_kind_name(site.kind) + "): " + msg);
  };
  switch (site.kind) {
    case MoveKind::r1_add:
      if (la.crossing_labels.at(trace.created[0]) != 0)
        relation_bug("new kink crossing label is not 0");
      break;
    case MoveKind::r2_add: {
      int i = la.crossing_labels.at(trace.created[0]);
      int j = la.crossing_labels.at(trace.created[1]);
      if (i != j) relation_bug("the two poke crossings differ in label");
      break;
    }
    case MoveKind::slide: {
      std::uint32_t slid = trace.before.components[site.comp_a][site.pos_b].id;
      auto dit = trace.label_delta.find(slid);
      if (dit == trace.label_delta.end() || !dit->second.before ||
          !dit->second.after ||
          *dit->second.before + *dit->second.after != -1)
        relation_bug("slide labels do not satisfy i + j = -1");
      if (trace.label_delta.size() != 1)
        relation_bug("slide changed more than one crossing label");
      break;
    }
    case MoveKind::r3: {
      if (!trace.label_delta.empty())
        relation_bug("r3 changed a crossing label");
      break;
    }
    case MoveKind::r1_remove:
    case MoveKind::r2_remove: {
      for (const auto& [id, ch] : trace.label_delta)
        if (ch.after.has_value() && ch.before.has_value())
          relation_bug("removal relabeled a surviving crossing");
      break;
    }
    case MoveKind::cancel_add:
    case MoveKind::cancel_remove:
      if (!trace.label_delta.empty())
        relation_bug("mark cancellation changed a crossing label");
      break;
  }
  (void)relation_bug;
  return trace;
}

inline std::vector<MoveSite> enumerate_sites(
    const MarkedGaussCode& code, const std::vector<MoveKind>& kinds,
    bool all_variants = false) {
  std::vector<MoveSite> sites;
  auto want = [&kinds](MoveKind k) {
    for (MoveKind x : kinds)
      if (x == k) return true;
    return false;
  };

  // Emit adjacent pairs once: (p, p+1), plus the wrap pair for n > 2.
  auto pair_starts = [](std::size_t n) {
    std::vector<std::size_t> ps;
    if (n < 2) return ps;
    for (std::size_t p = 0; p + 1 < n; ++p) ps.push_back(p);
    if (n > 2) ps.push_back(n - 1);
    return ps;
  };

  if (want(MoveKind::r1_add)) {
    for (std::size_t c = 0; c < code.components.size(); ++c)
      for (std::size_t s = 0; s < code.slot_count(c); ++s) {
        if (!all_variants) {
          MoveSite site{MoveKind::r1_add, c, s};
          site.flag_a = true;
          sites.push_back(site);
        } else {
          for (bool of : {true, false})
            for (int sg : {+1, -1}) {
              MoveSite site{MoveKind::r1_add, c, s};
              site.flag_a = of;
              site.sign = sg;
              sites.push_back(site);
            }
        }
      }
  }
  if (want(MoveKind::r1_remove)) {
    for (std::size_t c = 0; c < code.components.size(); ++c) {
      std::size_t n = code.components[c].size();
      for (std::size_t p : pair_starts(n)) {
        const Symbol& a = code.at(c, p);
        const Symbol& b = code.at(c, code.next(c, p));
        if (a.is_pass() && b.is_pass() && a.id == b.id)
          sites.push_back(MoveSite{MoveKind::r1_remove, c, p});
      }
    }
  }
  if (want(MoveKind::r2_add)) {
    for (std::size_t ca = 0; ca < code.components.size(); ++ca)
      for (std::size_t sa = 0; sa < code.slot_count(ca); ++sa)
        for (std::size_t cb = 0; cb < code.components.size(); ++cb)
          for (std::size_t sb = 0; sb < code.slot_count(cb); ++sb) {
            if (!all_variants) {
              MoveSite site{MoveKind::r2_add, ca, sa, cb, sb};
              site.flag_a = true;
              sites.push_back(site);
            } else {
              for (bool par : {true, false})
                for (int sg : {+1, -1}) {
                  MoveSite site{MoveKind::r2_add, ca, sa, cb, sb};
                  site.flag_a = par;
                  site.sign = sg;
                  sites.push_back(site);
                }
            }
          }
  }
  if (want(MoveKind::r2_remove)) {
    CrossingIndex idx = index_crossings(code);
    for (std::size_t ca = 0; ca < code.components.size(); ++ca) {
      std::size_t n = code.components[ca].size();
      for (std::size_t pa : pair_starts(n)) {
        const Symbol& o1 = code.at(ca, pa);
        const Symbol& o2 = code.at(ca, code.next(ca, pa));
        if (!o1.is_pass() || !o2.is_pass()) continue;
        if (o1.role != Role::over || o2.role != Role::over) continue;
        if (o1.id == o2.id || o1.sign != -o2.sign) continue;
        auto ux = idx.under.find(o1.id);
        auto uy = idx.under.find(o2.id);
        if (ux == idx.under.end() || uy == idx.under.end()) continue;
        if (ux->second.component != uy->second.component) continue;
        std::size_t cb = ux->second.component;
        std::size_t qx = ux->second.position, qy = uy->second.position;
        std::size_t pb;
        if (code.next(cb, qx) == qy)
          pb = qx;
        else if (code.next(cb, qy) == qx)
          pb = qy;
        else
          continue;
        std::set<std::pair<std::size_t, std::size_t>> all = {
            {ca, pa}, {ca, code.next(ca, pa)}, {cb, pb},
            {cb, code.next(cb, pb)}};
        if (all.size() != 4) continue;
        sites.push_back(MoveSite{MoveKind::r2_remove, ca, pa, cb, pb});
      }
    }
  }
  if (want(MoveKind::r3)) {
    CrossingIndex idx = index_crossings(code);
    for (std::size_t ct = 0; ct < code.components.size(); ++ct) {
      std::size_t n = code.components[ct].size();
      for (std::size_t pt : pair_starts(n)) {
        const Symbol& t1 = code.at(ct, pt);
        const Symbol& t2 = code.at(ct, code.next(ct, pt));
        if (!t1.is_pass() || !t2.is_pass()) continue;
        if (t1.role != Role::over || t2.role != Role::over) continue;
        if (t1.id == t2.id) continue;
        if (t1.sign != 1 || t2.sign != 1) continue;
        // Try both readings of which pass is u.
        for (int bit = 0; bit < 2; ++bit) {
          std::uint32_t u = bit == 0 ? t1.id : t2.id;
          std::uint32_t v = bit == 0 ? t2.id : t1.id;
          auto uit = idx.under.find(u);
          auto vit = idx.under.find(v);
          if (uit == idx.under.end() || vit == idx.under.end()) continue;
          std::size_t cm = uit->second.component, pu = uit->second.position;
          std::size_t pm = bit == 0 ? code.prev(cm, pu) : pu;
          const Symbol& other_m = code.at(cm, bit == 0 ? pm : code.next(cm, pm));
          if (!other_m.is_pass() || other_m.role != Role::over) continue;
          std::uint32_t w = other_m.id;
          if (w == u || w == v) continue;
          if (idx.sign[w] != -1) continue;
          std::size_t cbv = vit->second.component, pv = vit->second.position;
          auto wit = idx.under.find(w);
          if (wit == idx.under.end()) continue;
          if (wit->second.component != cbv) continue;
          std::size_t pw = wit->second.position;
          std::size_t pbs;  // bottom pair start
          if (bit == 0) {
            if (code.next(cbv, pw) != pv) continue;
            pbs = pw;
          } else {
            if (code.next(cbv, pv) != pw) continue;
            pbs = pv;
          }
          MoveSite site{MoveKind::r3, ct, pt, cm, pm, cbv, pbs};
          // Validate fully (distinctness etc.) by a dry run.
          try {
            apply_move(code, site);
          } catch (const Error&) {
            continue;
          }
          sites.push_back(site);
        }
      }
    }
  }
  if (want(MoveKind::slide)) {
    for (std::size_t c = 0; c < code.components.size(); ++c) {
      std::size_t n = code.components[c].size();
      if (n < 2) continue;
      for (std::size_t m = 0; m < n; ++m) {
        if (!code.at(c, m).is_mark()) continue;
        int dir = code.at(c, m).direction;
        for (bool after_mark : {true, false}) {
          std::size_t p = after_mark ? code.next(c, m) : code.prev(c, m);
          const Symbol& ps = code.at(c, p);
          if (!ps.is_pass()) continue;
          if (ps.role != detail::slide_required_role(dir, after_mark))
            continue;
          std::size_t between = after_mark ? p : m;
          if (code.base_points[c] == between && n > 1) continue;
          MoveSite site{MoveKind::slide, c, m};
          site.pos_b = p;
          site.flag_a = after_mark;
          sites.push_back(site);
        }
      }
    }
  }
  if (want(MoveKind::cancel_add)) {
    for (std::size_t c = 0; c < code.components.size(); ++c)
      for (std::size_t s = 0; s < code.slot_count(c); ++s) {
        if (!all_variants) {
          MoveSite site{MoveKind::cancel_add, c, s};
          site.sign = +1;
          sites.push_back(site);
        } else {
          for (int sg : {+1, -1}) {
            MoveSite site{MoveKind::cancel_add, c, s};
            site.sign = sg;
            sites.push_back(site);
          }
        }
      }
  }
  if (want(MoveKind::cancel_remove)) {
    for (std::size_t c = 0; c < code.components.size(); ++c) {
      std::size_t n = code.components[c].size();
      for (std::size_t p : pair_starts(n)) {
        std::size_t q = code.next(c, p);
        const Symbol& a = code.at(c, p);
        const Symbol& b = code.at(c, q);
        if (a.is_mark() && b.is_mark() && a.direction == -b.direction &&
            code.base_points[c] != q)
          sites.push_back(MoveSite{MoveKind::cancel_remove, c, p});
      }
    }
  }
  return sites;
}

struct EquivalenceResult {
  bool equivalent = false;
  // Move sequences from each input to a common diagram; replaying them and
  // comparing canonical forms verifies the certificate.
  std::vector<MoveSite> from_a, from_b;
  std::size_t states_explored = 0;
};

inline EquivalenceResult equivalent_bounded(const MarkedGaussCode& a,
                                            const MarkedGaussCode& b,
                                            std::size_t max_symbols,
                                            std::size_t max_states) {
  if (max_symbols == 0 || max_states == 0)
    throw Error("search budgets must be positive");
  require_valid(a);
  require_valid(b);

  EquivalenceResult result;

  // Degree and component count are move invariants; mismatch means the
  // search cannot succeed (the caller can use degrees() as a certificate of
  // inequivalence).
  {
    std::vector<int> da = degrees(a), db = degrees(b);
    std::sort(da.begin(), da.end());
    std::sort(db.begin(), db.end());
    if (a.components.size() != b.components.size() || da != db) return result;
  }

  struct Node {
    MarkedGaussCode code;
    std::vector<MoveSite> path;
  };
  // visited[side]: canonical key -> node
  std::map<std::string, Node> visited[2];
  // Deterministic best-first queues ordered by (symbols, depth, key).
  using QKey = std::tuple<std::size_t, std::size_t, std::string>;
  std::set<QKey> open[2];

  std::string ka = canonical_key(a), kb = canonical_key(b);
  visited[0].emplace(ka, Node{a, {}});
  visited[1].emplace(kb, Node{b, {}});
  if (ka == kb) {
    result.equivalent = true;
    result.states_explored = 2;
    return result;
  }
  open[0].insert({a.total_symbols(), 0, ka});
  open[1].insert({b.total_symbols(), 0, kb});
  std::size_t states = 2;

  while ((!open[0].empty() || !open[1].empty()) && states < max_states) {
    int side = (open[0].size() <= open[1].size() && !open[0].empty()) ? 0 : 1;
    if (open[side].empty()) side = 1 - side;
    auto it = open[side].begin();
    QKey qk = *it;
    open[side].erase(it);
    const std::string& key = std::get<2>(qk);
    Node node = visited[side].at(key);

    std::vector<MoveSite> sites =
        enumerate_sites(node.code, all_move_kinds(), /*all_variants=*/true);
    for (const MoveSite& site : sites) {
      MoveTrace trace;
      try {
        trace = apply_move(node.code, site);
      } catch (const Error&) {
        continue;
      }
      if (trace.after.total_symbols() > max_symbols) continue;
      std::string nk = canonical_key(trace.after);
      if (visited[side].count(nk)) continue;
      Node next{trace.after, node.path};
      next.path.push_back(site);
      auto other = visited[1 - side].find(nk);
      if (other != visited[1 - side].end()) {
        result.equivalent = true;
        result.from_a = side == 0 ? next.path : other->second.path;
        result.from_b = side == 0 ? other->second.path : next.path;
        result.states_explored = states;
        return result;
      }
      open[side].insert({trace.after.total_symbols(), next.path.size(), nk});
      visited[side].emplace(nk, std::move(next));
      if (++states >= max_states) break;
    }
  }
  result.states_explored = states;
  return result;
}

}  // namespace sgs1
