#pragma once

// Seeded generators for test corpora.  Codes built here are always valid;
// the planar generator grows diagrams from the empty loop by planarity-
// preserving insertions.

#include <algorithm>
#include <random>
#include <vector>

#include "sgs1/code.hpp"
#include "sgs1/moves.hpp"
#include "sgs1/unknot.hpp"

namespace sgs1 {

struct CodeGenOptions {
  std::size_t max_crossings = 5;
  std::size_t max_marks = 4;
  std::size_t max_components = 2;
  bool balanced_marks = false;  // per-component degree 0
};

inline MarkedGaussCode random_code(std::mt19937_64& rng,
                                   const CodeGenOptions& opt = {}) {
  auto pick = [&rng](std::size_t lo, std::size_t hi) {
    return lo + static_cast<std::size_t>(rng() % (hi - lo + 1));
  };
  std::size_t ncross = pick(0, opt.max_crossings);
  std::size_t nmarks = pick(0, opt.max_marks);
  std::size_t ncomp = pick(1, opt.max_components);

  std::vector<Symbol> pool;
  for (std::size_t i = 0; i < ncross; ++i) {
    int sign = rng() % 2 == 0 ? +1 : -1;
    pool.push_back(Symbol::pass(static_cast<std::uint32_t>(i + 1),
                                Role::over, sign));
    pool.push_back(Symbol::pass(static_cast<std::uint32_t>(i + 1),
                                Role::under, sign));
  }
  if (opt.balanced_marks) {
    for (std::size_t i = 0; i + 1 < nmarks; i += 2) {
      pool.push_back(Symbol::mark(+1));
      pool.push_back(Symbol::mark(-1));
    }
  } else {
    for (std::size_t i = 0; i < nmarks; ++i)
      pool.push_back(Symbol::mark(rng() % 2 == 0 ? +1 : -1));
  }
  std::shuffle(pool.begin(), pool.end(), rng);

  MarkedGaussCode code;
  code.components.resize(ncomp);
  if (opt.balanced_marks) {
    // Keep each component's mark sum zero: distribute passes freely, marks
    // in matched pairs.
    for (const Symbol& s : pool)
      if (s.is_pass()) code.components[rng() % ncomp].push_back(s);
    std::size_t pairs = 0;
    for (const Symbol& s : pool)
      if (s.is_mark()) ++pairs;
    pairs /= 2;
    for (std::size_t i = 0; i < pairs; ++i) {
      auto& comp = code.components[rng() % ncomp];
      std::size_t at = comp.empty() ? 0 : rng() % (comp.size() + 1);
      comp.insert(comp.begin() + static_cast<std::ptrdiff_t>(at),
                  Symbol::mark(+1));
      std::size_t at2 = rng() % (comp.size() + 1);
      comp.insert(comp.begin() + static_cast<std::ptrdiff_t>(at2),
                  Symbol::mark(-1));
    }
  } else {
    for (const Symbol& s : pool) code.components[rng() % ncomp].push_back(s);
  }
  code.base_points.assign(ncomp, 0);
  for (std::size_t c = 0; c < ncomp; ++c)
    if (!code.components[c].empty())
      code.base_points[c] = rng() % code.components[c].size();
  return code;
}

// Single-component planar code grown by checked insertions from the empty
// loop.  Insertions that would leave the plane are rejected and retried.
inline MarkedGaussCode random_planar_code(std::mt19937_64& rng,
                                          std::size_t crossing_budget,
                                          std::size_t mark_budget) {
  MarkedGaussCode code;
  code.components.push_back({});
  code.base_points.push_back(0);

  std::size_t crossings = 0, marks = 0;
  std::size_t attempts = 0;
  while ((crossings < crossing_budget || marks < mark_budget) &&
         attempts < 40 * (crossing_budget + mark_budget + 1)) {
    ++attempts;
    int choice = static_cast<int>(rng() % 3);
    if (choice == 2 && marks < mark_budget) {
      auto& comp = code.components[0];
      std::size_t at = comp.empty() ? 0 : rng() % (comp.size() + 1);
      comp.insert(comp.begin() + static_cast<std::ptrdiff_t>(at),
                  Symbol::mark(rng() % 2 == 0 ? +1 : -1));
      ++marks;
      continue;
    }
    if (crossings >= crossing_budget) continue;
    MoveKind kind = choice == 0 ? MoveKind::r1_add : MoveKind::r2_add;
    std::vector<MoveSite> sites = enumerate_sites(code, {kind}, true);
    if (sites.empty()) continue;
    const MoveSite& site = sites[rng() % sites.size()];
    MoveTrace trace = apply_move(code, site);
    if (!planar_signed(trace.after)) continue;
    code = trace.after;
    crossings += kind == MoveKind::r1_add ? 1 : 2;
  }
  if (!code.components[0].empty())
    code.base_points[0] = rng() % code.components[0].size();
  return code;
}

}  // namespace sgs1
