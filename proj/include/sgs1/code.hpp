#pragma once

// Marked Gauss codes: the diagram representation for links in a thickened
// surface with a circle factor.  A component is a cyclic word of symbols;
// a symbol is either one pass of a classical crossing (over or under, with
// a local writhe sign) or a cut mark recording where the strand crosses the
// reference level, with a direction (+1 raises the arc label, -1 lowers it).
//
// Virtual crossings are never stored: codes are abstract Gauss codes, which
// quotient by the detour moves.
//
// All types here are immutable values in practice; every operation in this
// library is a pure function of its inputs, so concurrent use needs no
// coordination.

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <sstream>
#include <stdexcept>
#include <string>
#include <vector>

namespace sgs1 {

class Error : public std::runtime_error {
 public:
  explicit Error(const std::string& what) : std::runtime_error(what) {}
};

enum class Role : std::uint8_t { over, under };

inline Role flip(Role r) { return r == Role::over ? Role::under : Role::over; }

struct Symbol {
  enum class Kind : std::uint8_t { pass, mark };

  Kind kind = Kind::mark;
  std::uint32_t id = 0;       // pass only
  Role role = Role::over;     // pass only
  int sign = 0;               // pass only, +1 or -1
  int direction = 0;          // mark only, +1 or -1

  static Symbol pass(std::uint32_t id, Role role, int sign) {
    Symbol s;
    s.kind = Kind::pass;
    s.id = id;
    s.role = role;
    s.sign = sign;
    return s;
  }
  static Symbol mark(int direction) {
    Symbol s;
    s.kind = Kind::mark;
    s.direction = direction;
    return s;
  }

  bool is_pass() const { return kind == Kind::pass; }
  bool is_mark() const { return kind == Kind::mark; }

  friend bool operator==(const Symbol& a, const Symbol& b) {
    return a.kind == b.kind && a.id == b.id && a.role == b.role &&
           a.sign == b.sign && a.direction == b.direction;
  }
  friend bool operator!=(const Symbol& a, const Symbol& b) { return !(a == b); }
};

// One component per entry; base_points[i] indexes into components[i] and
// marks where traversal (and arc labeling) starts.  An empty component is a
// crossing-free loop; its base point is 0 by convention.
struct MarkedGaussCode {
  std::vector<std::vector<Symbol>> components;
  std::vector<std::size_t> base_points;

  MarkedGaussCode() = default;
  explicit MarkedGaussCode(std::vector<std::vector<Symbol>> comps)
      : components(std::move(comps)), base_points(components.size(), 0) {}

  std::size_t component_count() const { return components.size(); }

  std::size_t size(std::size_t comp) const { return components[comp].size(); }

  std::size_t total_symbols() const {
    std::size_t n = 0;
    for (const auto& c : components) n += c.size();
    return n;
  }

  std::size_t crossing_count() const {
    std::size_t n = 0;
    for (const auto& c : components)
      for (const auto& s : c)
        if (s.is_pass()) ++n;
    return n / 2;
  }

  std::size_t mark_count(std::size_t comp) const {
    std::size_t n = 0;
    for (const auto& s : components[comp])
      if (s.is_mark()) ++n;
    return n;
  }

  // Cyclic successor/predecessor of a position within a component.
  std::size_t next(std::size_t comp, std::size_t pos) const {
    return (pos + 1) % components[comp].size();
  }
  std::size_t prev(std::size_t comp, std::size_t pos) const {
    std::size_t n = components[comp].size();
    return (pos + n - 1) % n;
  }

  const Symbol& at(std::size_t comp, std::size_t pos) const {
    return components[comp][pos];
  }

  // Number of insertion slots in a component (slot s sits immediately before
  // the symbol at position s; an empty component has a single slot 0).
  std::size_t slot_count(std::size_t comp) const {
    return components[comp].empty() ? 1 : components[comp].size();
  }

  friend bool operator==(const MarkedGaussCode& a, const MarkedGaussCode& b) {
    return a.components == b.components && a.base_points == b.base_points;
  }
};

struct CrossingOccurrence {
  std::size_t component = 0;
  std::size_t position = 0;
};

// Location of both passes of every crossing.
struct CrossingIndex {
  std::map<std::uint32_t, CrossingOccurrence> over;
  std::map<std::uint32_t, CrossingOccurrence> under;
  std::map<std::uint32_t, int> sign;

  bool contains(std::uint32_t id) const { return sign.count(id) != 0; }
};

inline CrossingIndex index_crossings(const MarkedGaussCode& code) {
  CrossingIndex idx;
  for (std::size_t c = 0; c < code.components.size(); ++c) {
    for (std::size_t p = 0; p < code.components[c].size(); ++p) {
      const Symbol& s = code.components[c][p];
      if (!s.is_pass()) continue;
      auto& table = s.role == Role::over ? idx.over : idx.under;
      table[s.id] = CrossingOccurrence{c, p};
      idx.sign[s.id] = s.sign;
    }
  }
  return idx;
}

struct Violation {
  std::string message;
};

struct ValidationReport {
  std::vector<Violation> violations;

  bool ok() const { return violations.empty(); }

  std::string to_string() const {
    if (ok()) return "ok";
    std::ostringstream os;
    for (std::size_t i = 0; i < violations.size(); ++i) {
      if (i) os << "; ";
      os << violations[i].message;
    }
    return os.str();
  }
};

// Checks every structural invariant and reports all violations, not just the
// first: each crossing id must occur exactly twice, once over and once under,
// with equal signs; symbol fields must be in range; base points must index
// into their components.
inline ValidationReport validate(const MarkedGaussCode& code) {
  ValidationReport report;
  auto add = [&report](const std::string& m) {
    report.violations.push_back(Violation{m});
  };

  if (code.base_points.size() != code.components.size())
    add("base point list has " + std::to_string(code.base_points.size()) +
        " entries for " + std::to_string(code.components.size()) +
        " components");

  struct Seen {
    int overs = 0;
    int unders = 0;
    std::set<int> signs;
  };
  std::map<std::uint32_t, Seen> seen;

  for (std::size_t c = 0; c < code.components.size(); ++c) {
    for (std::size_t p = 0; p < code.components[c].size(); ++p) {
      const Symbol& s = code.components[c][p];
      std::string where = "component " + std::to_string(c) + " position " +
                          std::to_string(p);
      if (s.is_pass()) {
        if (s.sign != 1 && s.sign != -1)
          add("crossing " + std::to_string(s.id) + " at " + where +
              " has sign " + std::to_string(s.sign));
        auto& e = seen[s.id];
        (s.role == Role::over ? e.overs : e.unders)++;
        e.signs.insert(s.sign);
      } else {
        if (s.direction != 1 && s.direction != -1)
          add("mark at " + where + " has direction " +
              std::to_string(s.direction));
      }
    }
    if (c < code.base_points.size()) {
      std::size_t bp = code.base_points[c];
      std::size_t n = code.components[c].size();
      if (bp != 0 && bp >= n)
        add("base point " + std::to_string(bp) + " out of range for component " +
            std::to_string(c));
    }
  }

  for (const auto& [id, e] : seen) {
    if (e.overs + e.unders != 2 || e.overs != 1 || e.unders != 1) {
      if (e.overs + e.unders == 1)
        add("crossing " + std::to_string(id) + " unpaired");
      else
        add("crossing " + std::to_string(id) + " has " +
            std::to_string(e.overs) + " over and " + std::to_string(e.unders) +
            " under passes");
    }
    if (e.signs.size() > 1)
      add("crossing " + std::to_string(id) + " has mismatched signs");
  }
  return report;
}

inline void require_valid(const MarkedGaussCode& code) {
  ValidationReport r = validate(code);
  if (!r.ok()) throw Error("invalid code: " + r.to_string());
}

inline std::uint32_t fresh_crossing_id(const MarkedGaussCode& code) {
  std::uint32_t m = 0;
  for (const auto& comp : code.components)
    for (const auto& s : comp)
      if (s.is_pass() && s.id > m) m = s.id;
  return m + 1;
}

}  // namespace sgs1
