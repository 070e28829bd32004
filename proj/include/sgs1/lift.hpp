#pragma once

// Lifting constructions along the vertical coverings.
//
// Degree 0: the lift to the product with the real line is an infinite
// disjoint family of copies, one per integer sheet; we materialize a finite
// window of sheets.  A copy places the arc labeled l on level l + s, so a
// base crossing of label i produces exactly one cover crossing between
// copies s and s+i for every s with both sheets in the window; crossings
// with a partner outside the window are omitted and reported.  Over/under
// and signs are inherited from the base crossing.  Cut marks dissolve: the
// cover lives over the line, so cover components carry no marks.
//
// Degree k != 0: the lift along the k-fold self-covering of the circle
// factor.  Sheets live in Z_k; a component of degree d splits into
// gcd(d, k) cover components, each traversing the base k/gcd(d, k) times.
// Whenever the running level wraps past a multiple of k the connecting arc
// receives one new cut mark, so a component of degree k lifts to components
// of degree +1 (degree -k to -1).

#include <map>
#include <numeric>
#include <vector>

#include "sgs1/code.hpp"
#include "sgs1/labels.hpp"
#include "sgs1/parse.hpp"

namespace sgs1 {

struct CoverComponentKey {
  std::size_t base_component = 0;
  long long sheet = 0;
};

struct DroppedCrossing {
  std::uint32_t base_id = 0;
  long long over_sheet = 0;
  long long under_sheet = 0;
};

struct CrossingOrigin {
  std::uint32_t base_id = 0;
  long long over_sheet = 0;  // sheet (degree 0) or level mod k (cyclic)
};

struct CoveringLink {
  bool cyclic = false;
  long long k = 0;          // cyclic case
  long long s_min = 0, s_max = 0;  // window case
  MarkedGaussCode code;
  std::vector<CoverComponentKey> keys;
  std::vector<DroppedCrossing> dropped;  // window case only
  std::map<std::uint32_t, CrossingOrigin> origins;
};

inline CoveringLink lift_degree0(const LabeledDiagram& d, long long s_min,
                                 long long s_max) {
  if (s_min > s_max) throw Error("window is empty (s_min > s_max)");
  for (std::size_t j = 0; j < d.degrees.size(); ++j)
    if (d.degrees[j] != 0)
      throw Error("component " + std::to_string(j) + " has degree " +
                  std::to_string(d.degrees[j]) +
                  "; use the cyclic lift for nonzero degree");

  CoveringLink cover;
  cover.cyclic = false;
  cover.s_min = s_min;
  cover.s_max = s_max;

  std::map<std::pair<std::uint32_t, long long>, std::uint32_t> ids;
  std::uint32_t next_id = 1;
  auto id_for = [&](std::uint32_t base, long long sheet) {
    auto key = std::make_pair(base, sheet);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    std::uint32_t id = next_id++;
    ids.emplace(key, id);
    cover.origins[id] = CrossingOrigin{base, sheet};
    return id;
  };

  const MarkedGaussCode& base = d.code;
  for (std::size_t j = 0; j < base.components.size(); ++j) {
    for (long long s = s_min; s <= s_max; ++s) {
      std::vector<Symbol> comp;
      std::size_t n = base.components[j].size();
      std::size_t bp = n == 0 ? 0 : base.base_points[j];
      for (std::size_t step = 0; step < n; ++step) {
        std::size_t pos = (bp + step) % n;
        const Symbol& sym = base.components[j][pos];
        if (sym.is_mark()) continue;  // no cut in the cover
        int label = d.crossing_labels.at(sym.id);
        long long over_sheet =
            sym.role == Role::over ? s : s - static_cast<long long>(label);
        long long under_sheet = over_sheet + label;
        if (over_sheet < s_min || over_sheet > s_max ||
            under_sheet < s_min || under_sheet > s_max) {
          cover.dropped.push_back(
              DroppedCrossing{sym.id, over_sheet, under_sheet});
          continue;
        }
        comp.push_back(
            Symbol::pass(id_for(sym.id, over_sheet), sym.role, sym.sign));
      }
      cover.code.components.push_back(std::move(comp));
      cover.code.base_points.push_back(0);
      cover.keys.push_back(CoverComponentKey{j, s});
    }
  }
  std::sort(cover.dropped.begin(), cover.dropped.end(),
            [](const DroppedCrossing& a, const DroppedCrossing& b) {
              return std::tie(a.base_id, a.over_sheet) <
                     std::tie(b.base_id, b.over_sheet);
            });
  require_valid(cover.code);
  return cover;
}

inline CoveringLink lift_cyclic(const LabeledDiagram& d, long long k,
                                bool allow_mixed_degrees = false) {
  if (k == 0) throw Error("cover degree k must be nonzero");
  if (!allow_mixed_degrees)
    for (std::size_t j = 0; j < d.degrees.size(); ++j)
      if (d.degrees[j] != k)
        throw Error("component " + std::to_string(j) + " has degree " +
                    std::to_string(d.degrees[j]) + ", expected " +
                    std::to_string(k) +
                    " (pass allow_mixed_degrees to lift anyway)");

  long long m = k < 0 ? -k : k;
  CoveringLink cover;
  cover.cyclic = true;
  cover.k = k;

  auto layer_of = [m](long long v) { return ((v % m) + m) % m; };

  std::map<std::pair<std::uint32_t, long long>, std::uint32_t> ids;
  std::uint32_t next_id = 1;
  auto id_for = [&](std::uint32_t base, long long layer) {
    auto key = std::make_pair(base, layer);
    auto it = ids.find(key);
    if (it != ids.end()) return it->second;
    std::uint32_t id = next_id++;
    ids.emplace(key, id);
    cover.origins[id] = CrossingOrigin{base, layer};
    return id;
  };

  const MarkedGaussCode& base = d.code;
  for (std::size_t j = 0; j < base.components.size(); ++j) {
    long long deg = d.degrees[j];
    long long g = std::gcd(layer_of(deg), m);  // gcd(0, m) == m: disjoint copies
    long long traversals = m / g;
    std::size_t n = base.components[j].size();
    std::size_t bp = n == 0 ? 0 : base.base_points[j];
    for (long long start = 0; start < g; ++start) {
      std::vector<Symbol> comp;
      long long level = 0;
      for (long long t = 0; t < traversals; ++t) {
        for (std::size_t step = 0; step < n; ++step) {
          std::size_t pos = (bp + step) % n;
          const Symbol& sym = base.components[j][pos];
          if (sym.is_mark()) {
            long long old_layer = layer_of(start + level);
            if (sym.direction > 0 && old_layer == m - 1)
              comp.push_back(Symbol::mark(+1));
            if (sym.direction < 0 && old_layer == 0)
              comp.push_back(Symbol::mark(-1));
            level += sym.direction;
          } else {
            long long layer = layer_of(start + level);
            comp.push_back(
                Symbol::pass(id_for(sym.id, layer), sym.role, sym.sign));
          }
        }
      }
      cover.code.components.push_back(std::move(comp));
      cover.code.base_points.push_back(0);
      cover.keys.push_back(CoverComponentKey{j, start});
    }
  }
  require_valid(cover.code);
  return cover;
}

// Same text format as plain codes, with a per-component sheet header.
inline std::string format_cover(const CoveringLink& cover) {
  bool single_base = true;
  for (const auto& key : cover.keys)
    if (key.base_component != 0) single_base = false;
  std::string out;
  for (std::size_t i = 0; i < cover.code.components.size(); ++i) {
    const auto& key = cover.keys[i];
    out += "sheet ";
    if (!single_base) out += std::to_string(key.base_component) + "/";
    out += std::to_string(key.sheet);
    out += ": ";
    const auto& comp = cover.code.components[i];
    if (comp.empty()) {
      out += "*\n";
      continue;
    }
    for (std::size_t p = 0; p < comp.size(); ++p) {
      if (p) out += ' ';
      if (p == cover.code.base_points[i]) out += '*';
      out += format_symbol(comp[p]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace sgs1
