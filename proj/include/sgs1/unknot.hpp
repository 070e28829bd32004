#pragma once

// Unknotting machinery for knot diagrams on the sphere (genus-0 codes):
// crossing change, gathering all cut marks onto one semi-arc, the descending
// pass, and the resulting upper bound on the unknotting number.
//
// Planarity of a signed code is decided by the genus of its ribbon graph:
// each crossing fixes the counterclockwise order of its four strand ends
// (over-out, under-out, over-in, under-in for a positive crossing, the
// reflected order for a negative one), faces are traced, and the code is
// planar exactly when every connected piece has Euler characteristic 2.

#include <array>
#include <functional>
#include <map>
#include <set>
#include <vector>

#include "sgs1/code.hpp"
#include "sgs1/labels.hpp"
#include "sgs1/moves.hpp"

namespace sgs1 {

// Swaps over/under at both passes of the crossing.  The local writhe sign
// flips with the roles: the sign is the orientation of the (over, under)
// frame, which is antisymmetric under exchange.
inline MarkedGaussCode crossing_change(const MarkedGaussCode& code,
                                       std::uint32_t id) {
  bool found = false;
  MarkedGaussCode out = code;
  for (auto& comp : out.components)
    for (auto& s : comp)
      if (s.is_pass() && s.id == id) {
        s.role = flip(s.role);
        s.sign = -s.sign;
        found = true;
      }
  if (!found) throw Error("unknown crossing id " + std::to_string(id));
  return out;
}

namespace detail {

// Stub codes around a crossing: over-in, over-out, under-in, under-out.
enum Stub { o_in = 0, o_out = 1, u_in = 2, u_out = 3 };

struct RibbonGenus {
  std::vector<int> genus_per_piece;
  bool planar() const {
    for (int g : genus_per_piece)
      if (g != 0) return false;
    return true;
  }
};

inline RibbonGenus ribbon_genus(const MarkedGaussCode& code) {
  CrossingIndex idx = index_crossings(code);
  std::vector<std::uint32_t> ids;
  for (const auto& [id, s] : idx.sign) ids.push_back(id);
  std::map<std::uint32_t, std::size_t> vertex;
  for (std::size_t i = 0; i < ids.size(); ++i) vertex[ids[i]] = i;
  std::size_t V = ids.size();

  RibbonGenus out;
  if (V == 0) return out;  // only free loops

  // dart_at_stub[v][stub] = dart id; darts come in pairs (2e, 2e+1).
  std::vector<std::array<int, 4>> dart_at_stub(
      V, std::array<int, 4>{-1, -1, -1, -1});
  std::vector<std::pair<std::size_t, int>> dart_stub;  // dart -> (v, stub)

  int dart_count = 0;
  for (std::size_t c = 0; c < code.components.size(); ++c) {
    std::vector<std::size_t> passes;
    for (std::size_t p = 0; p < code.components[c].size(); ++p)
      if (code.at(c, p).is_pass()) passes.push_back(p);
    for (std::size_t t = 0; t < passes.size(); ++t) {
      const Symbol& from = code.at(c, passes[t]);
      const Symbol& to = code.at(c, passes[(t + 1) % passes.size()]);
      std::size_t vf = vertex[from.id], vt = vertex[to.id];
      int sf = from.role == Role::over ? o_out : u_out;
      int st = to.role == Role::over ? o_in : u_in;
      int d1 = dart_count++, d2 = dart_count++;
      dart_at_stub[vf][sf] = d1;
      dart_at_stub[vt][st] = d2;
      dart_stub.emplace_back(vf, sf);
      dart_stub.emplace_back(vt, st);
    }
  }

  // Counterclockwise stub order per vertex.
  auto rotation = [&](std::size_t v) -> std::array<int, 4> {
    int sign = idx.sign.at(ids[v]);
    if (sign > 0) return {o_out, u_out, o_in, u_in};
    return {o_out, u_in, o_in, u_out};
  };

  auto rho = [&](int dart) {
    auto [v, stub] = dart_stub[dart];
    std::array<int, 4> order = rotation(v);
    int at = 0;
    for (int i = 0; i < 4; ++i)
      if (order[i] == stub) at = i;
    for (int step = 1; step <= 4; ++step) {
      int s = order[(at + step) % 4];
      if (dart_at_stub[v][s] >= 0) return dart_at_stub[v][s];
    }
    return dart;
  };
  auto alpha = [](int dart) { return dart ^ 1; };

  // Faces: orbits of rho(alpha(.)).
  std::vector<char> seen(dart_count, 0);
  std::vector<std::size_t> face_count_of_piece;
  // Union-find over vertices via edges.
  std::vector<std::size_t> parent(V);
  for (std::size_t v = 0; v < V; ++v) parent[v] = v;
  std::function<std::size_t(std::size_t)> find = [&](std::size_t x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (int d = 0; d < dart_count; d += 2) {
    std::size_t a = find(dart_stub[d].first), b = find(dart_stub[d + 1].first);
    if (a != b) parent[a] = b;
  }

  std::map<std::size_t, std::size_t> faces, verts, edges;
  for (int d = 0; d < dart_count; ++d) {
    if (seen[d]) continue;
    int x = d;
    do {
      seen[x] = 1;
      x = rho(alpha(x));
    } while (x != d);
    faces[find(dart_stub[d].first)]++;
  }
  for (std::size_t v = 0; v < V; ++v) verts[find(v)]++;
  for (int d = 0; d < dart_count; d += 2) edges[find(dart_stub[d].first)]++;

  for (const auto& [root, f] : faces) {
    long long chi = static_cast<long long>(verts[root]) -
                    static_cast<long long>(edges[root]) +
                    static_cast<long long>(f);
    out.genus_per_piece.push_back(static_cast<int>((2 - chi) / 2));
  }
  return out;
}

}  // namespace detail

inline bool planar_signed(const MarkedGaussCode& code) {
  return detail::ribbon_genus(code).planar();
}

inline int ribbon_genus_total(const MarkedGaussCode& code) {
  int g = 0;
  for (int x : detail::ribbon_genus(code).genus_per_piece) g += x;
  return g;
}

struct CollectResult {
  MarkedGaussCode code;
  std::vector<std::uint32_t> changed;  // crossing changes in performed order
  std::size_t block_start = 0;         // first position of the mark block
  std::size_t base_after_block = 0;    // position right after the block
};

// Slides every mark forward along the knot to the semi-arc ending at
// `target_slot`.  Carrying a mark across a pass is free when the pass sits
// on the slidable side of the mark (direction-dependent); otherwise the
// crossing is changed first (counted) and then carried.  Either way the
// crossing's over/under flips as the mark passes; a change followed by the
// carry restores the original roles.
inline CollectResult collect_marks(const MarkedGaussCode& code,
                                   std::size_t target_slot) {
  if (code.components.size() != 1)
    throw Error("mark collection expects a one-component code");
  if (!planar_signed(code))
    throw Error("mark collection expects a planar (genus-0) code");
  std::size_t n = code.components[0].size();
  if (target_slot >= std::max<std::size_t>(1, n))
    throw Error("target slot out of range");

  CollectResult result;
  result.code = code;
  auto& comp = result.code.components[0];
  if (n == 0) return result;

  std::size_t total_marks = 0;
  for (const auto& s : comp)
    if (s.is_mark()) ++total_marks;

  std::set<std::size_t> parked;
  std::size_t boundary = target_slot;  // parked block accumulates before it

  auto fwd_distance = [&](std::size_t m) {
    return (boundary + n - m - 1) % n;
  };

  for (std::size_t round = 0; round < total_marks; ++round) {
    // Closest unparked mark ahead of the boundary parks next.
    std::size_t best = n, best_dist = n + 1;
    for (std::size_t p = 0; p < n; ++p) {
      if (!comp[p].is_mark() || parked.count(p)) continue;
      std::size_t dist = fwd_distance(p);
      if (dist < best_dist) {
        best = p;
        best_dist = dist;
      }
    }
    std::size_t m = best;
    for (std::size_t step = 0; step < best_dist; ++step) {
      std::size_t next = (m + 1) % n;
      Symbol& pass = comp[next];
      if (!pass.is_pass())
        throw std::logic_error("mark collection hit an unexpected symbol");
      Role free_role = detail::slide_required_role(comp[m].direction,
                                                   /*pass_after_mark=*/true);
      if (pass.role != free_role) {
        std::uint32_t cid = pass.id;
        for (auto& s : comp)
          if (s.is_pass() && s.id == cid) {
            s.role = flip(s.role);
            s.sign = -s.sign;
          }
        result.changed.push_back(cid);
      }
      std::uint32_t slid = comp[next].id;
      std::swap(comp[m], comp[next]);
      // Carrying across the mark flips the crossing.
      for (auto& s : comp)
        if (s.is_pass() && s.id == slid) {
          s.role = flip(s.role);
          s.sign = -s.sign;
        }
      m = next;
    }
    parked.insert(m);
    boundary = m;
  }

  result.block_start = (target_slot + n - total_marks) % n;
  result.base_after_block = target_slot % n;
  result.code.base_points[0] = result.base_after_block;
  return result;
}

struct DescendResult {
  MarkedGaussCode code;
  std::vector<std::uint32_t> changed;
};

// Changes crossings so that every crossing is first met on its over strand
// when traversing from `base`.  Requires the marks (if any) to form one
// block ending right before the base position.
inline DescendResult make_descending(const MarkedGaussCode& code,
                                     std::size_t base) {
  if (code.components.size() != 1)
    throw Error("descending pass expects a one-component code");
  std::size_t n = code.components[0].size();
  if (n == 0) return DescendResult{code, {}};
  if (base >= n) throw Error("base position out of range");

  std::size_t marks = 0;
  for (const auto& s : code.components[0])
    if (s.is_mark()) ++marks;
  for (std::size_t t = 0; t < marks; ++t) {
    std::size_t p = (base + n - 1 - t) % n;
    if (!code.components[0][p].is_mark())
      throw Error("marks must form one block ending at the base position");
  }

  DescendResult result;
  result.code = code;
  result.code.base_points[0] = base;
  auto& comp = result.code.components[0];
  std::set<std::uint32_t> visited;
  for (std::size_t step = 0; step < n; ++step) {
    const Symbol& s = comp[(base + step) % n];
    if (!s.is_pass()) continue;
    if (visited.count(s.id)) continue;
    visited.insert(s.id);
    if (s.role == Role::under) {
      std::uint32_t cid = s.id;
      for (auto& sym : comp)
        if (sym.is_pass() && sym.id == cid) {
          sym.role = flip(sym.role);
          sym.sign = -sym.sign;
        }
      result.changed.push_back(cid);
    }
  }
  return result;
}

inline bool is_descending(const MarkedGaussCode& code, std::size_t base) {
  const auto& comp = code.components[0];
  std::size_t n = comp.size();
  std::set<std::uint32_t> visited;
  for (std::size_t step = 0; step < n; ++step) {
    const Symbol& s = comp[(base + step) % n];
    if (!s.is_pass()) continue;
    if (visited.count(s.id)) {
      continue;
    }
    visited.insert(s.id);
    if (s.role == Role::under) return false;
  }
  return true;
}

struct UnknottingReport {
  MarkedGaussCode input;
  MarkedGaussCode final_code;
  std::size_t target_slot = 0;
  std::size_t base_point = 0;
  std::vector<std::uint32_t> phase1, phase2;
  std::size_t total() const { return phase1.size() + phase2.size(); }
};

// Upper bound on the unknotting number: gather marks, descend, count the
// crossing changes, minimized over the choice of target semi-arc (which
// fixes the descending base point).  The output diagram is descending with a
// consolidated mark block, hence trivial in the genus-0 setting.
inline UnknottingReport unknotting_bound(const MarkedGaussCode& code) {
  if (code.components.size() != 1)
    throw Error("unknotting bound expects a one-component code");
  if (!planar_signed(code))
    throw Error("unknotting bound expects a planar (genus-0) code");

  std::size_t n = code.components[0].size();
  UnknottingReport best;
  bool have = false;
  for (std::size_t t = 0; t < std::max<std::size_t>(1, n); ++t) {
    CollectResult c = collect_marks(code, t);
    DescendResult d_res =
        n == 0 ? DescendResult{c.code, {}}
               : make_descending(c.code, c.base_after_block);
    UnknottingReport rep;
    rep.input = code;
    rep.final_code = d_res.code;
    rep.target_slot = t;
    rep.base_point = c.base_after_block;
    rep.phase1 = c.changed;
    rep.phase2 = d_res.changed;
    if (!have || rep.total() < best.total()) {
      best = rep;
      have = true;
    }
  }
  return best;
}

}  // namespace sgs1
