#pragma once

// Canonical string form of a marked Gauss code, invariant under cyclic
// rotation of each component, reordering of components, and renaming of
// crossing ids.  Base points are ignored: the key identifies the diagram,
// not a labeling of it.  Used for visited sets in bounded search and for
// byte-stable structured output.

#include <algorithm>
#include <numeric>
#include <string>
#include <vector>

#include "sgs1/code.hpp"

namespace sgs1 {
namespace detail {

inline std::string erased_token(const Symbol& s) {
  if (s.is_mark()) return s.direction > 0 ? "M+" : "M-";
  std::string t = s.role == Role::over ? "Po" : "Pu";
  t += s.sign > 0 ? '+' : '-';
  return t;
}

inline std::string erased_rotation(const std::vector<Symbol>& comp,
                                   std::size_t rot) {
  std::string out;
  std::size_t n = comp.size();
  for (std::size_t i = 0; i < n; ++i) {
    out += erased_token(comp[(rot + i) % n]);
    out += ' ';
  }
  return out;
}

struct CanonComponent {
  const std::vector<Symbol>* symbols;
  std::string erased_min;
  std::vector<std::size_t> rotations;  // rotations achieving erased_min
};

}  // namespace detail

inline std::string canonical_key(const MarkedGaussCode& code) {
  using detail::CanonComponent;

  std::vector<CanonComponent> comps;
  comps.reserve(code.components.size());
  for (const auto& c : code.components) {
    CanonComponent cc;
    cc.symbols = &c;
    if (c.empty()) {
      cc.erased_min = "";
      cc.rotations = {0};
    } else {
      std::vector<std::string> rots(c.size());
      for (std::size_t r = 0; r < c.size(); ++r)
        rots[r] = detail::erased_rotation(c, r);
      cc.erased_min = *std::min_element(rots.begin(), rots.end());
      for (std::size_t r = 0; r < c.size(); ++r)
        if (rots[r] == cc.erased_min) cc.rotations.push_back(r);
    }
    comps.push_back(std::move(cc));
  }

  std::stable_sort(comps.begin(), comps.end(),
                   [](const CanonComponent& a, const CanonComponent& b) {
                     return a.erased_min < b.erased_min;
                   });

  // Tie groups of components with identical erased forms may be permuted.
  std::vector<std::pair<std::size_t, std::size_t>> groups;
  for (std::size_t i = 0; i < comps.size();) {
    std::size_t j = i + 1;
    while (j < comps.size() && comps[j].erased_min == comps[i].erased_min) ++j;
    groups.emplace_back(i, j);
    i = j;
  }

  auto serialize = [&](const std::vector<std::size_t>& order,
                       const std::vector<std::size_t>& rot_choice) {
    std::map<std::uint32_t, std::uint32_t> rename;
    std::uint32_t next_id = 1;
    std::string out;
    for (std::size_t k = 0; k < order.size(); ++k) {
      const CanonComponent& cc = comps[order[k]];
      const auto& syms = *cc.symbols;
      std::size_t n = syms.size();
      std::size_t rot = cc.rotations[rot_choice[order[k]]];
      if (k) out += '|';
      for (std::size_t i = 0; i < n; ++i) {
        const Symbol& s = syms[(rot + i) % n];
        if (i) out += ' ';
        if (s.is_mark()) {
          out += s.direction > 0 ? "M+" : "M-";
        } else {
          auto it = rename.find(s.id);
          std::uint32_t nid;
          if (it == rename.end()) {
            nid = next_id++;
            rename.emplace(s.id, nid);
          } else {
            nid = it->second;
          }
          out += s.role == Role::over ? 'O' : 'U';
          out += std::to_string(nid);
          out += s.sign > 0 ? '+' : '-';
        }
      }
    }
    return out;
  };

  // Odometer over rotation candidates and tie-group permutations, capped so
  // highly symmetric codes stay cheap; enumeration order is fixed, so the
  // key is deterministic either way.
  constexpr std::size_t kMaxTrials = 20000;
  std::size_t trials = 0;
  std::string best;
  bool have_best = false;

  std::vector<std::size_t> order(comps.size());
  std::iota(order.begin(), order.end(), 0);

  // Enumerate permutations within each tie group.
  std::vector<std::vector<std::size_t>> group_orders;
  {
    std::vector<std::size_t> base_order = order;
    group_orders.push_back(base_order);
    for (const auto& [lo, hi] : groups) {
      if (hi - lo < 2) continue;
      std::vector<std::vector<std::size_t>> expanded;
      for (const auto& ord : group_orders) {
        std::vector<std::size_t> slice(ord.begin() + lo, ord.begin() + hi);
        std::sort(slice.begin(), slice.end());
        do {
          std::vector<std::size_t> next = ord;
          std::copy(slice.begin(), slice.end(), next.begin() + lo);
          expanded.push_back(next);
          if (expanded.size() * group_orders.size() > kMaxTrials) break;
        } while (std::next_permutation(slice.begin(), slice.end()));
      }
      group_orders = std::move(expanded);
    }
  }

  for (const auto& ord : group_orders) {
    std::vector<std::size_t> rot_choice(comps.size(), 0);
    while (true) {
      std::string s = serialize(ord, rot_choice);
      if (!have_best || s < best) {
        best = std::move(s);
        have_best = true;
      }
      if (++trials >= kMaxTrials) return best;
      // Advance the rotation odometer.
      std::size_t k = 0;
      for (; k < comps.size(); ++k) {
        if (rot_choice[k] + 1 < comps[k].rotations.size()) {
          ++rot_choice[k];
          std::fill(rot_choice.begin(), rot_choice.begin() + k, 0);
          break;
        }
      }
      if (k == comps.size()) break;
    }
  }
  return best;
}

// True when the two codes present the same diagram up to rotation, component
// order and crossing renaming (base points disregarded).
inline bool same_diagram(const MarkedGaussCode& a, const MarkedGaussCode& b) {
  return canonical_key(a) == canonical_key(b);
}

}  // namespace sgs1
