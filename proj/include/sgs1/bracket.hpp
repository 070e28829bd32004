#pragma once

// Bracket polynomial for labeled diagrams: a state sum over the two
// smoothings of every classical crossing.  A crossing whose under arc is
// labeled a and over arc labeled b contributes A_{a,b} or B_{a,b}; every
// loop of a state contributes d_0 or d_1 according to the parity of the cut
// marks it carries.  Values live in the ring of integer combinations of
// monomials in the indexed variables and the two loop symbols.
//
// Smoothing dictionary (the one convention the whole module hangs on): at a
// positive crossing the A-smoothing is the orientation-preserving one, at a
// negative crossing the orientation-reversing one.  This reproduces the
// classical Kauffman bracket when all variables are specialized to a single
// A with B = A^-1 and both loop symbols to -A^2 - A^-2.

#include <cctype>
#include <functional>
#include <iostream>
#include <map>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "sgs1/labels.hpp"
#include "sgs1/laurent.hpp"
#include "sgs1/moves.hpp"

namespace sgs1 {

struct VarKey {
  enum class Kind : std::uint8_t { A, B, delta0, delta1 } kind = Kind::A;
  int a = 0, b = 0;  // unused for the loop symbols

  friend bool operator<(const VarKey& x, const VarKey& y) {
    return std::tie(x.kind, x.a, x.b) < std::tie(y.kind, y.a, y.b);
  }
  friend bool operator==(const VarKey& x, const VarKey& y) {
    return x.kind == y.kind && x.a == y.a && x.b == y.b;
  }

  std::string to_string() const {
    switch (kind) {
      case Kind::A: return "A(" + std::to_string(a) + "," + std::to_string(b) + ")";
      case Kind::B: return "B(" + std::to_string(a) + "," + std::to_string(b) + ")";
      case Kind::delta0: return "d0";
      case Kind::delta1: return "d1";
    }
    return "?";
  }
};

struct Monomial {
  std::vector<std::pair<VarKey, int>> factors;  // sorted, nonzero exponents

  void mul(const VarKey& v, int e) {
    if (e == 0) return;
    for (auto& [key, exp] : factors)
      if (key == v) {
        exp += e;
        if (exp == 0)
          factors.erase(std::find_if(factors.begin(), factors.end(),
                                     [&](const auto& f) { return f.first == v; }));
        return;
      }
    factors.emplace_back(v, e);
    std::sort(factors.begin(), factors.end());
  }

  friend bool operator<(const Monomial& x, const Monomial& y) {
    return x.factors < y.factors;
  }
  friend bool operator==(const Monomial& x, const Monomial& y) {
    return x.factors == y.factors;
  }

  std::string to_string() const {
    if (factors.empty()) return "1";
    std::string out;
    for (std::size_t i = 0; i < factors.size(); ++i) {
      if (i) out += "*";
      out += factors[i].first.to_string();
      if (factors[i].second != 1)
        out += "^" + std::to_string(factors[i].second);
    }
    return out;
  }
};

struct BracketPolynomial {
  std::map<Monomial, long long> terms;  // no zero coefficients

  void add(const Monomial& m, long long c) {
    if (c == 0) return;
    long long v = (terms[m] += c);
    if (v == 0) terms.erase(m);
  }

  friend BracketPolynomial operator*(const BracketPolynomial& x,
                                     const BracketPolynomial& y) {
    BracketPolynomial r;
    for (const auto& [mx, cx] : x.terms)
      for (const auto& [my, cy] : y.terms) {
        Monomial m = mx;
        for (const auto& [v, e] : my.factors) m.mul(v, e);
        r.add(m, cx * cy);
      }
    return r;
  }
  friend bool operator==(const BracketPolynomial& x,
                         const BracketPolynomial& y) {
    return x.terms == y.terms;
  }

  std::string to_string() const {
    if (terms.empty()) return "0";
    std::string out;
    bool first = true;
    for (const auto& [m, c] : terms) {
      long long mag = c < 0 ? -c : c;
      if (first)
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      first = false;
      if (mag != 1 || m.factors.empty()) {
        out += std::to_string(mag);
        if (!m.factors.empty()) out += "*";
      }
      if (!m.factors.empty()) out += m.to_string();
    }
    return out;
  }
};

struct StateSum {
  BracketPolynomial poly;
  std::uint64_t states = 0;
};

namespace detail {

// Loop census of one smoothing state: loops are traced through the smoothed
// crossings, and each loop reports its mark count.
struct StateLoops {
  std::vector<int> loop_marks;  // marks per loop
};

inline StateLoops trace_state(const MarkedGaussCode& code,
                              const CrossingIndex& idx,
                              const std::map<std::uint32_t, bool>& oriented) {
  StateLoops out;

  // Stub = (crossing id, role, in?) with matched partner per smoothing.
  // Directed travel states: (component, edge, forward?) where edge t follows
  // symbol t.
  std::vector<std::vector<char>> visited(code.components.size());
  for (std::size_t c = 0; c < code.components.size(); ++c)
    visited[c].assign(std::max<std::size_t>(1, code.components[c].size()), 0);

  for (std::size_t c0 = 0; c0 < code.components.size(); ++c0) {
    if (code.components[c0].empty()) {
      if (!visited[c0][0]) {
        visited[c0][0] = 1;
        out.loop_marks.push_back(0);
      }
      continue;
    }
    for (std::size_t e0 = 0; e0 < code.components[c0].size(); ++e0) {
      if (visited[c0][e0]) continue;
      int marks = 0;
      std::size_t c = c0, e = e0;
      bool fwd = true;
      std::size_t sc = c, se = e;
      bool sf = fwd;
      do {
        visited[c][e] = 1;
        // Step across the symbol at the travelled end of edge e.
        std::size_t sym_pos = fwd ? code.next(c, e) : e;
        const Symbol& sym = code.at(c, sym_pos);
        if (sym.is_mark()) {
          ++marks;
          e = fwd ? sym_pos : code.prev(c, sym_pos);
        } else {
          bool arrived_in = fwd;  // forward travel arrives on the in side
          bool over = sym.role == Role::over;
          const CrossingOccurrence& partner =
              over ? idx.under.at(sym.id) : idx.over.at(sym.id);
          bool to_in_side;
          if (oriented.at(sym.id))
            to_in_side = !arrived_in;  // in <-> partner out
          else
            to_in_side = arrived_in;  // in <-> partner in
          c = partner.component;
          if (to_in_side) {
            e = code.prev(c, partner.position);
            fwd = false;  // moving away from the crossing along its in edge
          } else {
            e = partner.position;
            fwd = true;
          }
        }
      } while (!(c == sc && e == se && fwd == sf));
      out.loop_marks.push_back(marks);
    }
  }
  return out;
}

}  // namespace detail

inline StateSum state_sum_detail(const LabeledDiagram& d,
                                 unsigned warn_crossings = 20) {
  const MarkedGaussCode& code = d.code;
  CrossingIndex idx = index_crossings(code);
  std::vector<std::uint32_t> ids;
  for (const auto& [id, s] : idx.sign) ids.push_back(id);
  if (ids.size() > 62) throw Error("too many crossings for state expansion");
  if (ids.size() > warn_crossings)
    std::cerr << "bracket: expanding " << (1ull << ids.size())
              << " states for " << ids.size() << " crossings\n";

  StateSum result;
  std::uint64_t nstates = 1ull << ids.size();
  result.states = nstates;
  for (std::uint64_t state = 0; state < nstates; ++state) {
    Monomial m;
    std::map<std::uint32_t, bool> oriented;
    for (std::size_t t = 0; t < ids.size(); ++t) {
      std::uint32_t id = ids[t];
      bool use_a = ((state >> t) & 1) == 0;
      int sign = idx.sign.at(id);
      // A at a positive crossing is the orientation-preserving smoothing.
      oriented[id] = use_a == (sign > 0);
      int under_label = d.label_at(idx.under.at(id).component,
                                   idx.under.at(id).position);
      int over_label =
          d.label_at(idx.over.at(id).component, idx.over.at(id).position);
      VarKey v;
      v.kind = use_a ? VarKey::Kind::A : VarKey::Kind::B;
      v.a = under_label;
      v.b = over_label;
      m.mul(v, 1);
    }
    detail::StateLoops loops = detail::trace_state(code, idx, oriented);
    for (int marks : loops.loop_marks) {
      VarKey v;
      v.kind = marks % 2 == 0 ? VarKey::Kind::delta0 : VarKey::Kind::delta1;
      m.mul(v, 1);
    }
    result.poly.add(m, 1);
  }
  return result;
}

inline BracketPolynomial state_sum(const LabeledDiagram& d,
                                   unsigned warn_crossings = 20) {
  return state_sum_detail(d, warn_crossings).poly;
}

// ---------------------------------------------------------------------------
// Specializations: assignments A_{a,b} -> f_A(a,b), B_{a,b} -> f_B(a,b),
// loop symbols to fixed Laurent values, over a finite label window.

namespace detail {

// Tiny expression language for specialization files: one free variable
// (any identifier other than `a`/`b`), the integers, the label parameters
// a and b, with + - * ^ and parentheses.
struct Expr {
  enum class Op { constant, param_a, param_b, var, add, sub, mul, neg, pow };
  Op op = Op::constant;
  long long value = 0;
  std::unique_ptr<Expr> lhs, rhs;

  LaurentPoly eval(int a, int b) const {
    switch (op) {
      case Op::constant: return LaurentPoly::constant(value);
      case Op::param_a: return LaurentPoly::constant(a);
      case Op::param_b: return LaurentPoly::constant(b);
      case Op::var: return LaurentPoly::monomial(1, 1);
      case Op::add: return lhs->eval(a, b) + rhs->eval(a, b);
      case Op::sub: return lhs->eval(a, b) - rhs->eval(a, b);
      case Op::mul: return lhs->eval(a, b) * rhs->eval(a, b);
      case Op::neg: return -lhs->eval(a, b);
      case Op::pow: {
        LaurentPoly base = lhs->eval(a, b);
        LaurentPoly e = rhs->eval(a, b);
        auto c = e.as_constant();
        if (!c) throw Error("exponent must be an integer expression");
        return base.pow(static_cast<int>(*c));
      }
    }
    return LaurentPoly::zero();
  }
};

class ExprParser {
 public:
  explicit ExprParser(const std::string& text) : text_(text) {}

  std::unique_ptr<Expr> parse() {
    auto e = parse_sum();
    skip_ws();
    if (pos_ != text_.size())
      throw Error("unexpected character '" + std::string(1, text_[pos_]) +
                  "' in expression");
    return e;
  }

 private:
  const std::string& text_;
  std::size_t pos_ = 0;

  void skip_ws() {
    while (pos_ < text_.size() &&
           std::isspace(static_cast<unsigned char>(text_[pos_])))
      ++pos_;
  }
  bool eat(char c) {
    skip_ws();
    if (pos_ < text_.size() && text_[pos_] == c) {
      ++pos_;
      return true;
    }
    return false;
  }

  std::unique_ptr<Expr> make(Expr::Op op, std::unique_ptr<Expr> l,
                             std::unique_ptr<Expr> r) {
    auto e = std::make_unique<Expr>();
    e->op = op;
    e->lhs = std::move(l);
    e->rhs = std::move(r);
    return e;
  }

  std::unique_ptr<Expr> parse_sum() {
    auto e = parse_product();
    while (true) {
      if (eat('+'))
        e = make(Expr::Op::add, std::move(e), parse_product());
      else if (eat('-'))
        e = make(Expr::Op::sub, std::move(e), parse_product());
      else
        return e;
    }
  }
  std::unique_ptr<Expr> parse_product() {
    auto e = parse_power();
    while (eat('*')) e = make(Expr::Op::mul, std::move(e), parse_power());
    return e;
  }
  std::unique_ptr<Expr> parse_power() {
    auto e = parse_atom();
    if (eat('^')) e = make(Expr::Op::pow, std::move(e), parse_power());
    return e;
  }
  std::unique_ptr<Expr> parse_atom() {
    skip_ws();
    if (pos_ >= text_.size()) throw Error("unexpected end of expression");
    char c = text_[pos_];
    if (c == '(') {
      ++pos_;
      auto e = parse_sum();
      if (!eat(')')) throw Error("missing ')' in expression");
      return e;
    }
    if (c == '-') {
      ++pos_;
      // Unary minus binds looser than '^': -A^2 means -(A^2).
      return make(Expr::Op::neg, parse_power(), nullptr);
    }
    if (std::isdigit(static_cast<unsigned char>(c))) {
      long long v = 0;
      while (pos_ < text_.size() &&
             std::isdigit(static_cast<unsigned char>(text_[pos_])))
        v = v * 10 + (text_[pos_++] - '0');
      auto e = std::make_unique<Expr>();
      e->op = Expr::Op::constant;
      e->value = v;
      return e;
    }
    if (std::isalpha(static_cast<unsigned char>(c))) {
      std::size_t start = pos_;
      while (pos_ < text_.size() &&
             std::isalnum(static_cast<unsigned char>(text_[pos_])))
        ++pos_;
      std::string name = text_.substr(start, pos_ - start);
      auto e = std::make_unique<Expr>();
      if (name == "a")
        e->op = Expr::Op::param_a;
      else if (name == "b")
        e->op = Expr::Op::param_b;
      else
        e->op = Expr::Op::var;
      return e;
    }
    throw Error("unexpected character '" + std::string(1, c) +
                "' in expression");
  }
};

inline std::shared_ptr<Expr> parse_expr(const std::string& text) {
  ExprParser p(text);
  return std::shared_ptr<Expr>(p.parse().release());
}

}  // namespace detail

struct Specialization {
  int window = 3;  // labels checked over [-window, window]
  std::string var_name = "A";
  std::shared_ptr<detail::Expr> a_expr, b_expr;
  LaurentPoly delta0, delta1;
  std::shared_ptr<detail::Expr> c_expr, d_expr;  // family 3, optional

  LaurentPoly value_a(int a, int b) const { return a_expr->eval(a, b); }
  LaurentPoly value_b(int a, int b) const { return b_expr->eval(a, b); }
  bool has_cd() const { return c_expr != nullptr && d_expr != nullptr; }
  LaurentPoly value_c(int a, int b) const { return c_expr->eval(a, b); }
  LaurentPoly value_d(int a, int b) const { return d_expr->eval(a, b); }

  static Specialization kauffman(int window = 3) {
    Specialization s;
    s.window = window;
    s.var_name = "A";
    s.a_expr = detail::parse_expr("A");
    s.b_expr = detail::parse_expr("A^-1");
    s.delta0 = -(LaurentPoly::monomial(2, 1) + LaurentPoly::monomial(-2, 1));
    s.delta1 = s.delta0;
    return s;
  }
};

inline LaurentPoly evaluate(const BracketPolynomial& p,
                            const Specialization& s) {
  LaurentPoly out;
  for (const auto& [m, c] : p.terms) {
    LaurentPoly term = LaurentPoly::constant(c);
    for (const auto& [v, e] : m.factors) {
      LaurentPoly base;
      switch (v.kind) {
        case VarKey::Kind::A:
        case VarKey::Kind::B:
          if (v.a < -s.window || v.a > s.window || v.b < -s.window ||
              v.b > s.window)
            throw Error("variable " + v.to_string() +
                        " outside specialization window " +
                        std::to_string(s.window));
          base = v.kind == VarKey::Kind::A ? s.value_a(v.a, v.b)
                                           : s.value_b(v.a, v.b);
          break;
        case VarKey::Kind::delta0: base = s.delta0; break;
        case VarKey::Kind::delta1: base = s.delta1; break;
      }
      term = term * base.pow(e);
    }
    out += term;
  }
  return out;
}

// ---------------------------------------------------------------------------
// Relation families the specialization should satisfy for the bracket to be
// move-stable.  Family 1 (loop relation) and family 2 are fixed by the
// theory; family 3 involves the undetermined coefficients C_{a,b}, D_{a,b},
// so it is checked only when those are supplied, and solve_family3 recovers
// candidates per (a,b) when possible.

struct RelationIssue {
  int family = 0;
  int a = 0, b = 0, c = 0;
  int idx[4] = {0, 0, 0, 0};  // family 3 loop indices (i, j, k, l)
  LaurentPoly residual;
};

struct RelationReport {
  bool family1_ok = true;
  bool family2_ok = true;
  bool family3_checked = false;
  bool family3_ok = true;
  std::vector<RelationIssue> failures;
};

inline RelationReport check_relations(const Specialization& s,
                                      bool include_family3 = false) {
  RelationReport rep;
  int w = s.window;
  for (int a = -w; a <= w; ++a)
    for (int b = -w; b <= w; ++b) {
      LaurentPoly A = s.value_a(a, b), B = s.value_b(a, b);
      // delta0 + B A^-1 + A B^-1 = 0, cleared of denominators:
      LaurentPoly res = s.delta0 * A * B + B * B + A * A;
      if (!res.is_zero()) {
        rep.family1_ok = false;
        RelationIssue issue;
        issue.family = 1;
        issue.a = a;
        issue.b = b;
        issue.residual = res;
        rep.failures.push_back(std::move(issue));
      }
    }
  for (int a = -w; a <= w; ++a)
    for (int b = -w; b <= w; ++b)
      for (int c = -w; c <= w; ++c) {
        LaurentPoly res = s.value_a(a, b) * s.value_a(a, c) * s.value_b(b, c) +
                          s.value_b(a, b) * s.value_a(a, c) * s.value_a(b, c) +
                          s.value_b(a, b) * s.value_a(a, c) * s.value_b(b, c) -
                          s.value_a(a, b) * s.value_b(a, c) * s.value_a(b, c);
        if (!res.is_zero()) {
          rep.family2_ok = false;
          RelationIssue issue;
          issue.family = 2;
          issue.a = a;
          issue.b = b;
          issue.c = c;
          issue.residual = res;
          rep.failures.push_back(std::move(issue));
        }
      }
  if (include_family3 && s.has_cd()) {
    rep.family3_checked = true;
    auto delta = [&](int i) { return i % 2 == 0 ? s.delta0 : s.delta1; };
    for (int a = -w; a <= w; ++a)
      for (int b = -w; b <= w; ++b)
        for (int i = 0; i < 2; ++i)
          for (int j = 0; j < 2; ++j)
            for (int k = 0; k < 2; ++k)
              for (int l = 0; l < 2; ++l) {
                LaurentPoly res =
                    s.value_a(a, b) * delta(i) * delta(j) +
                    s.value_b(a, b) * delta(k) * delta(l) -
                    s.value_c(a, b) * delta(i + 1) * delta(j + 1) -
                    s.value_d(a, b) * delta(k + 1) * delta(l + 1);
                if (!res.is_zero()) {
                  rep.family3_ok = false;
                  RelationIssue issue;
                  issue.family = 3;
                  issue.a = a;
                  issue.b = b;
                  issue.idx[0] = i;
                  issue.idx[1] = j;
                  issue.idx[2] = k;
                  issue.idx[3] = l;
                  issue.residual = res;
                  rep.failures.push_back(std::move(issue));
                }
              }
  }
  return rep;
}

struct CDSolution {
  enum class Status { unique, particular, none } status = Status::none;
  LaurentPoly c_value, d_value;
};

// Per (a, b), solve the family-3 system for C_{a,b}, D_{a,b} over all
// loop-index combinations (indices mod 2, so the shifted subscripts coincide
// with i+1, j+1 etc.).
inline CDSolution solve_family3(const Specialization& s, int a, int b) {
  auto delta = [&](int i) { return i % 2 == 0 ? s.delta0 : s.delta1; };
  LaurentPoly A = s.value_a(a, b), B = s.value_b(a, b);

  struct Eq {
    LaurentPoly p, r, rhs;  // p*C + r*D = rhs
  };
  std::vector<Eq> eqs;
  for (int i = 0; i < 2; ++i)
    for (int j = 0; j < 2; ++j)
      for (int k = 0; k < 2; ++k)
        for (int l = 0; l < 2; ++l)
          eqs.push_back(Eq{delta(i + 1) * delta(j + 1),
                           delta(k + 1) * delta(l + 1),
                           A * delta(i) * delta(j) + B * delta(k) * delta(l)});

  auto verify = [&](const LaurentPoly& C, const LaurentPoly& D) {
    for (const Eq& e : eqs)
      if (e.p * C + e.r * D != e.rhs) return false;
    return true;
  };

  CDSolution out;
  for (std::size_t x = 0; x < eqs.size(); ++x)
    for (std::size_t y = x + 1; y < eqs.size(); ++y) {
      LaurentPoly det = eqs[x].p * eqs[y].r - eqs[y].p * eqs[x].r;
      if (det.is_zero()) continue;
      LaurentPoly nc = eqs[x].rhs * eqs[y].r - eqs[y].rhs * eqs[x].r;
      LaurentPoly nd = eqs[x].p * eqs[y].rhs - eqs[y].p * eqs[x].rhs;
      auto C = nc.divide_exact(det);
      auto D = nd.divide_exact(det);
      if (!C || !D || !verify(*C, *D)) return out;  // none
      out.status = CDSolution::Status::unique;
      out.c_value = *C;
      out.d_value = *D;
      return out;
    }
  // Rank at most one: try simple particular solutions.
  for (const LaurentPoly& dguess : {B, LaurentPoly::zero()}) {
    for (const Eq& e : eqs) {
      if (e.p.is_zero()) continue;
      auto C = (e.rhs - e.r * dguess).divide_exact(e.p);
      if (C && verify(*C, dguess)) {
        out.status = CDSolution::Status::particular;
        out.c_value = *C;
        out.d_value = dguess;
        return out;
      }
      break;
    }
  }
  return out;
}

// ---------------------------------------------------------------------------
// Move stability report: applies each requested move once and compares the
// specialized values.  An r1+ row records the multiplicative framing factor
// instead of demanding equality.

struct InvarianceRow {
  MoveKind kind{};
  bool applicable = false;
  bool equal = false;
  LaurentPoly before_value, after_value;
  std::optional<LaurentPoly> framing;  // after = framing * before
  std::string note;
};

inline std::vector<InvarianceRow> invariance_report(
    const LabeledDiagram& d, const Specialization& sp,
    const std::vector<MoveKind>& kinds, bool enforce_relations = false) {
  if (enforce_relations) {
    RelationReport rel = check_relations(sp);
    if (!rel.family1_ok || !rel.family2_ok)
      throw Error(
          "specialization fails relation families 1-2; pass "
          "enforce_relations=false to override");
  }
  std::vector<InvarianceRow> rows;
  LaurentPoly before = evaluate(state_sum(d), sp);
  for (MoveKind kind : kinds) {
    InvarianceRow row;
    row.kind = kind;
    row.before_value = before;
    std::vector<MoveSite> sites = enumerate_sites(d.code, {kind});
    if (sites.empty()) {
      row.note = "no applicable site";
      rows.push_back(std::move(row));
      continue;
    }
    MoveTrace trace = apply_move(d.code, sites.front());
    LabeledDiagram after = compute_labels(trace.after);
    row.applicable = true;
    row.after_value = evaluate(state_sum(after), sp);
    row.equal = row.after_value == row.before_value;
    if (kind == MoveKind::r1_add && !before.is_zero()) {
      auto ratio = row.after_value.divide_exact(before);
      if (ratio) row.framing = *ratio;
    }
    rows.push_back(std::move(row));
  }
  return rows;
}

}  // namespace sgs1
