#pragma once

// Arc labeling of a marked Gauss code.  Walking a component from its base
// point with running label 0, each mark adds its direction to the label; the
// label of a crossing is (label at the over pass) - (label at the under
// pass).  The per-component degree is the net sum of mark directions, i.e.
// the label gained over a full traversal.
//
// For a component of nonzero degree the labels depend on the base point, so
// the base point is part of the reported data.

#include <map>
#include <vector>

#include "sgs1/code.hpp"

namespace sgs1 {

struct LabeledDiagram {
  MarkedGaussCode code;
  // Label of the arc holding each symbol.  For a mark this is the incoming
  // label (the label just before the mark is crossed).
  std::vector<std::vector<int>> position_labels;
  // Labels of the traversal arcs in order from the base point; a component
  // with m marks has m+1 entries (first is always 0, last equals the degree).
  std::vector<std::vector<int>> arc_labels;
  std::map<std::uint32_t, int> crossing_labels;
  std::vector<int> degrees;

  int label_at(std::size_t comp, std::size_t pos) const {
    return position_labels[comp][pos];
  }
};

inline std::vector<int> degrees(const MarkedGaussCode& code) {
  std::vector<int> d;
  d.reserve(code.components.size());
  for (const auto& comp : code.components) {
    int sum = 0;
    for (const auto& s : comp)
      if (s.is_mark()) sum += s.direction;
    d.push_back(sum);
  }
  return d;
}

inline LabeledDiagram compute_labels(const MarkedGaussCode& code) {
  require_valid(code);
  LabeledDiagram d;
  d.code = code;
  d.position_labels.resize(code.components.size());
  d.arc_labels.resize(code.components.size());
  d.degrees.assign(code.components.size(), 0);

  struct PassLabel {
    bool seen_over = false, seen_under = false;
    int over = 0, under = 0;
  };
  std::map<std::uint32_t, PassLabel> passes;

  for (std::size_t c = 0; c < code.components.size(); ++c) {
    std::size_t n = code.components[c].size();
    d.position_labels[c].assign(n, 0);
    int label = 0;
    d.arc_labels[c].push_back(0);
    std::size_t base = n == 0 ? 0 : code.base_points[c];
    for (std::size_t step = 0; step < n; ++step) {
      std::size_t pos = (base + step) % n;
      const Symbol& s = code.components[c][pos];
      d.position_labels[c][pos] = label;
      if (s.is_mark()) {
        label += s.direction;
        d.arc_labels[c].push_back(label);
      } else {
        auto& e = passes[s.id];
        if (s.role == Role::over) {
          e.seen_over = true;
          e.over = label;
        } else {
          e.seen_under = true;
          e.under = label;
        }
      }
    }
    d.degrees[c] = label;
  }

  for (const auto& [id, e] : passes)
    d.crossing_labels[id] = e.over - e.under;
  return d;
}

// Crossing label mod 2; a move-invariant parity of the crossing.
inline int parity(const LabeledDiagram& d, std::uint32_t crossing) {
  auto it = d.crossing_labels.find(crossing);
  if (it == d.crossing_labels.end())
    throw Error("unknown crossing id " + std::to_string(crossing));
  return ((it->second % 2) + 2) % 2;
}

enum class WeakParity { zero, nonzero };

// Zero/nonzero split of the crossing label; a weak parity.
inline WeakParity weak_parity(const LabeledDiagram& d, std::uint32_t crossing) {
  auto it = d.crossing_labels.find(crossing);
  if (it == d.crossing_labels.end())
    throw Error("unknown crossing id " + std::to_string(crossing));
  return it->second == 0 ? WeakParity::zero : WeakParity::nonzero;
}

}  // namespace sgs1
