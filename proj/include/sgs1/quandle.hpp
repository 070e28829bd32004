#pragma once

// Finite labeled quandles of degree n: a carrier {0..q-1} with operation
// families *_i and o_i indexed over Z_n and a unary map S, subject to the
// axiom families below (indices mod n, o self-inverse in its first slot):
//
//   (1) x *_0 x  =  x o_0 x
//   (2) x *_j y  =  x *_j (y *_j x)          (x o_i y) o_i y   =  x
//   (3) for i + j = +-1:
//       x *_i y  =  x *_i (y o_i x)  =  x o_j S(y)
//       S(y) *_j x                   =  S(y o_i x)
//       x o_j S(y o_i x)             =  x o_i (y o_i x)
//       S(y o_i x) *_j (x o_j S(y o_i x))  =  S(y)
//   (4) for i + j - k = 0:
//       (z o_i y) o_k x              =  (z o_k (x o_j y)) o_i (y o_j x)
//       (y o_j x) *_i (z o_k (x *_j y))  =  (y *_j z) o_j (x *_k (z *_i y))
//       (x *_j y) *_k z              =  (x *_k (z o_i y)) *_j (y *_i z)
//
// The index window is Z_n, which makes families (3) and (4) finite and
// matches reducing crossing labels mod the diagram degree.
//
// Colorings: semi-arcs (segments between consecutive symbols) receive
// carrier elements.  At a positive crossing of label i with under-in x and
// over-in y, the outgoing colors are (x *_i y, y o_i x); a negative crossing
// imposes the same relation read against the orientation.  A mark applies S
// in its direction.  These rules make the coloring count invariant under the
// move calculus for certified structures.

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <sstream>
#include <string>
#include <vector>

#include "sgs1/code.hpp"
#include "sgs1/labels.hpp"

namespace sgs1 {

struct LabeledQuandle {
  int q = 1;
  int n = 1;
  std::vector<int> star_t;  // [n][q][q], -1 while unassigned during search
  std::vector<int> circ_t;  // [n][q][q]
  std::vector<int> s_t;     // [q]

  static LabeledQuandle make(int q, int n) {
    LabeledQuandle Q;
    Q.q = q;
    Q.n = n;
    Q.star_t.assign(static_cast<std::size_t>(n) * q * q, -1);
    Q.circ_t.assign(static_cast<std::size_t>(n) * q * q, -1);
    Q.s_t.assign(q, -1);
    return Q;
  }

  // x *_i y = x, x o_i y = x, S = id; certifies for every q, n.
  static LabeledQuandle trivial(int q, int n) {
    LabeledQuandle Q = make(q, n);
    for (int i = 0; i < n; ++i)
      for (int x = 0; x < q; ++x)
        for (int y = 0; y < q; ++y) {
          Q.star_t[Q.cell(i, x, y)] = x;
          Q.circ_t[Q.cell(i, x, y)] = x;
        }
    for (int x = 0; x < q; ++x) Q.s_t[x] = x;
    return Q;
  }

  std::size_t cell(int i, int x, int y) const {
    return (static_cast<std::size_t>(i) * q + x) * q + y;
  }
  int star(int i, int x, int y) const { return star_t[cell(i, x, y)]; }
  int circ(int i, int x, int y) const { return circ_t[cell(i, x, y)]; }
  int s(int x) const { return s_t[static_cast<std::size_t>(x)]; }

  int mod_index(long long i) const {
    return static_cast<int>(((i % n) + n) % n);
  }

  bool total() const {
    for (int v : star_t)
      if (v < 0) return false;
    for (int v : circ_t)
      if (v < 0) return false;
    for (int v : s_t)
      if (v < 0) return false;
    return true;
  }

  bool s_bijective() const {
    std::vector<bool> hit(q, false);
    for (int x = 0; x < q; ++x) {
      if (s_t[x] < 0 || hit[s_t[x]]) return false;
      hit[s_t[x]] = true;
    }
    return true;
  }

  std::vector<int> flattened() const {
    std::vector<int> all;
    all.reserve(s_t.size() + star_t.size() + circ_t.size() + 2);
    all.push_back(q);
    all.push_back(n);
    all.insert(all.end(), s_t.begin(), s_t.end());
    all.insert(all.end(), star_t.begin(), star_t.end());
    all.insert(all.end(), circ_t.begin(), circ_t.end());
    return all;
  }

  std::string to_record() const {
    std::ostringstream os;
    const auto all = flattened();
    for (std::size_t i = 0; i < all.size(); ++i) {
      if (i) os << ' ';
      os << all[i];
    }
    return os.str();
  }

  static LabeledQuandle from_record(const std::string& line) {
    std::istringstream is(line);
    int q = 0, n = 0;
    if (!(is >> q >> n) || q < 1 || n < 1)
      throw Error("malformed quandle record");
    LabeledQuandle Q = make(q, n);
    for (int& v : Q.s_t)
      if (!(is >> v)) throw Error("malformed quandle record");
    for (int& v : Q.star_t)
      if (!(is >> v)) throw Error("malformed quandle record");
    for (int& v : Q.circ_t)
      if (!(is >> v)) throw Error("malformed quandle record");
    return Q;
  }

  friend bool operator==(const LabeledQuandle& a, const LabeledQuandle& b) {
    return a.q == b.q && a.n == b.n && a.s_t == b.s_t &&
           a.star_t == b.star_t && a.circ_t == b.circ_t;
  }
};

struct AxiomWitness {
  int axiom = 0;     // 1..4
  int equation = 0;  // position within the axiom's displayed equations
  int i = 0, j = 0, k = 0;
  int x = 0, y = 0, z = 0;
};

namespace detail {

// Index pairs (i, j) with i + j = +1 or -1 mod n.
inline std::vector<std::pair<int, int>> axiom3_pairs(int n) {
  std::vector<std::pair<int, int>> out;
  int plus = ((1 % n) + n) % n;
  int minus = ((-1 % n) + n) % n;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      int s = (i + j) % n;
      if (s == plus || s == minus) out.emplace_back(i, j);
    }
  return out;
}

inline std::vector<std::tuple<int, int, int>> axiom4_triples(int n) {
  std::vector<std::tuple<int, int, int>> out;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k)
        if (((i + j - k) % n + n) % n == 0) out.emplace_back(i, j, k);
  return out;
}

}  // namespace detail

// Exhaustive axiom check; returns every failing witness (empty = certified).
inline std::vector<AxiomWitness> certify(const LabeledQuandle& Q) {
  if (!Q.total()) throw Error("operation tables are not total");
  std::vector<AxiomWitness> bad;
  const int q = Q.q, n = Q.n;

  for (int x = 0; x < q; ++x)
    if (Q.star(0, x, x) != Q.circ(0, x, x))
      bad.push_back(AxiomWitness{1, 1, 0, 0, 0, x, x, 0});

  for (int j = 0; j < n; ++j)
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) {
        if (Q.star(j, x, y) != Q.star(j, x, Q.star(j, y, x)))
          bad.push_back(AxiomWitness{2, 1, j, j, 0, x, y, 0});
        if (Q.circ(j, Q.circ(j, x, y), y) != x)
          bad.push_back(AxiomWitness{2, 2, j, j, 0, x, y, 0});
      }

  for (auto [i, j] : detail::axiom3_pairs(n))
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y) {
        int yox = Q.circ(i, y, x);  // y o_i^{-1} x, o self-inverse
        if (Q.star(i, x, y) != Q.star(i, x, yox))
          bad.push_back(AxiomWitness{3, 1, i, j, 0, x, y, 0});
        if (Q.star(i, x, y) != Q.circ(j, x, Q.s(y)))
          bad.push_back(AxiomWitness{3, 2, i, j, 0, x, y, 0});
        if (Q.star(j, Q.s(y), x) != Q.s(yox))
          bad.push_back(AxiomWitness{3, 3, i, j, 0, x, y, 0});
        if (Q.circ(j, x, Q.s(yox)) != Q.circ(i, x, yox))
          bad.push_back(AxiomWitness{3, 4, i, j, 0, x, y, 0});
        if (Q.star(j, Q.s(yox), Q.circ(j, x, Q.s(yox))) != Q.s(y))
          bad.push_back(AxiomWitness{3, 5, i, j, 0, x, y, 0});
      }

  for (auto [i, j, k] : detail::axiom4_triples(n))
    for (int x = 0; x < q; ++x)
      for (int y = 0; y < q; ++y)
        for (int z = 0; z < q; ++z) {
          if (Q.circ(k, Q.circ(i, z, y), x) !=
              Q.circ(i, Q.circ(k, z, Q.circ(j, x, y)), Q.circ(j, y, x)))
            bad.push_back(AxiomWitness{4, 1, i, j, k, x, y, z});
          if (Q.star(i, Q.circ(j, y, x), Q.circ(k, z, Q.star(j, x, y))) !=
              Q.circ(j, Q.star(j, y, z), Q.star(k, x, Q.star(i, z, y))))
            bad.push_back(AxiomWitness{4, 2, i, j, k, x, y, z});
          if (Q.star(k, Q.star(j, x, y), z) !=
              Q.star(j, Q.star(k, x, Q.circ(i, z, y)), Q.star(i, y, z)))
            bad.push_back(AxiomWitness{4, 3, i, j, k, x, y, z});
        }

  return bad;
}

inline bool is_certified(const LabeledQuandle& Q) { return certify(Q).empty(); }

struct DerivedCheck {
  std::string name;
  bool passed = false;
  std::string detail;
};

// Consequence checks: the S-homomorphism identities, and the counting
// coherence of the index-0 pair map B(x, y) = (y o_0 x, x *_0 y) used by the
// biquandle reading (bijectivity plus unique completability of both
// antiparallel poke systems).
inline std::vector<DerivedCheck> derived_checks(const LabeledQuandle& Q) {
  std::vector<DerivedCheck> out;
  const int q = Q.q, n = Q.n;

  {
    DerivedCheck c{"s-homomorphism", true, ""};
    for (int i = 0; i < n && c.passed; ++i)
      for (int a = 0; a < q && c.passed; ++a)
        for (int b = 0; b < q && c.passed; ++b) {
          if (Q.s(Q.star(i, a, b)) != Q.star(i, Q.s(a), Q.s(b)) ||
              Q.s(Q.circ(i, a, b)) != Q.circ(i, Q.s(a), Q.s(b))) {
            c.passed = false;
            c.detail = "fails at i=" + std::to_string(i) +
                       " a=" + std::to_string(a) + " b=" + std::to_string(b);
          }
        }
    out.push_back(c);
  }
  {
    DerivedCheck c{"index0-pair-map-bijective", true, ""};
    std::vector<bool> hit(static_cast<std::size_t>(q) * q, false);
    for (int x = 0; x < q && c.passed; ++x)
      for (int y = 0; y < q && c.passed; ++y) {
        int p = Q.circ(0, y, x), r = Q.star(0, x, y);
        std::size_t slot = static_cast<std::size_t>(p) * q + r;
        if (hit[slot]) {
          c.passed = false;
          c.detail = "collision at x=" + std::to_string(x) +
                     " y=" + std::to_string(y);
        }
        hit[slot] = true;
      }
    out.push_back(c);
  }
  {
    DerivedCheck c{"index0-sideways-unique", true, ""};
    for (int x = 0; x < q && c.passed; ++x)
      for (int y = 0; y < q && c.passed; ++y) {
        int count1 = 0, count2 = 0;
        for (int m = 0; m < q; ++m)
          for (int u = 0; u < q; ++u) {
            if (Q.circ(0, m, u) == y && Q.star(0, x, m) == Q.star(0, u, m))
              ++count1;
            if (Q.star(0, m, u) == x && Q.circ(0, u, m) == Q.circ(0, y, m))
              ++count2;
          }
        if (count1 != 1 || count2 != 1) {
          c.passed = false;
          c.detail = "solution counts " + std::to_string(count1) + "," +
                     std::to_string(count2) + " at x=" + std::to_string(x) +
                     " y=" + std::to_string(y);
        }
      }
    out.push_back(c);
  }
  {
    DerivedCheck c{"s-bijective", Q.s_bijective(), ""};
    out.push_back(c);
  }
  return out;
}

// ---------------------------------------------------------------------------
// Search for certified structures by depth-first assignment of table cells
// with constraint propagation.

struct SearchResult {
  std::vector<LabeledQuandle> found;  // canonical under carrier permutation
  bool complete = false;
  long long nodes = 0;
};

namespace detail {

// Term trees for axiom equations, with concrete table indices; leaves are
// the bound variables x, y, z.
struct Term {
  enum class Op { var, s_apply, star, circ } op = Op::var;
  int index = 0;  // table index for star/circ
  int var = 0;    // 0 = x, 1 = y, 2 = z
  int a = -1, b = -1;  // child term ids (in a shared pool)
};

struct Equation {
  int lhs = 0, rhs = 0;  // term ids
  int vars = 2;          // 2 or 3 bound variables
};

struct TermPool {
  std::vector<Term> terms;

  int var(int v) {
    terms.push_back(Term{Term::Op::var, 0, v, -1, -1});
    return static_cast<int>(terms.size()) - 1;
  }
  int s(int t) {
    terms.push_back(Term{Term::Op::s_apply, 0, 0, t, -1});
    return static_cast<int>(terms.size()) - 1;
  }
  int star(int i, int t1, int t2) {
    terms.push_back(Term{Term::Op::star, i, 0, t1, t2});
    return static_cast<int>(terms.size()) - 1;
  }
  int circ(int i, int t1, int t2) {
    terms.push_back(Term{Term::Op::circ, i, 0, t1, t2});
    return static_cast<int>(terms.size()) - 1;
  }
};

// Cell addressing across the three tables: star cells, then circ, then S.
struct CellRef {
  int table = 0;  // 0 star, 1 circ, 2 s
  std::size_t index = 0;
};

struct EvalOut {
  enum class Status { known, blocked, deep } status = Status::deep;
  int value = -1;
  CellRef cell;  // when blocked: the single outermost unassigned cell
};

class Searcher {
 public:
  Searcher(int q, int n, long long budget)
      : q_(q), n_(n), budget_(budget), Q_(LabeledQuandle::make(q, n)) {
    build_equations();
    build_cell_order();
  }

  SearchResult run() {
    SearchResult result;
    dfs(0, result);
    result.complete = !budget_hit_;
    result.nodes = nodes_;
    std::sort(result.found.begin(), result.found.end(),
              [](const LabeledQuandle& a, const LabeledQuandle& b) {
                return a.flattened() < b.flattened();
              });
    return result;
  }

 private:
  int q_, n_;
  long long budget_;
  long long nodes_ = 0;
  bool budget_hit_ = false;
  LabeledQuandle Q_;
  TermPool pool_;
  std::vector<Equation> equations_;
  std::vector<CellRef> order_;
  std::vector<CellRef> trail_;

  int& cell_value(const CellRef& c) {
    switch (c.table) {
      case 0: return Q_.star_t[c.index];
      case 1: return Q_.circ_t[c.index];
      default: return Q_.s_t[c.index];
    }
  }

  void build_equations() {
    TermPool& P = pool_;
    auto eq2 = [&](int l, int r) {
      equations_.push_back(Equation{l, r, 2});
    };
    auto eq3 = [&](int l, int r) {
      equations_.push_back(Equation{l, r, 3});
    };
    int X = 0, Y = 1, Z = 2;

    // (1)
    eq2(P.star(0, P.var(X), P.var(X)), P.circ(0, P.var(X), P.var(X)));
    // (2)
    for (int j = 0; j < n_; ++j) {
      eq2(P.star(j, P.var(X), P.var(Y)),
          P.star(j, P.var(X), P.star(j, P.var(Y), P.var(X))));
      eq2(P.circ(j, P.circ(j, P.var(X), P.var(Y)), P.var(Y)), P.var(X));
    }
    // (3)
    for (auto [i, j] : axiom3_pairs(n_)) {
      auto yox = [&] { return P.circ(i, P.var(Y), P.var(X)); };
      eq2(P.star(i, P.var(X), P.var(Y)), P.star(i, P.var(X), yox()));
      eq2(P.star(i, P.var(X), P.var(Y)),
          P.circ(j, P.var(X), P.s(P.var(Y))));
      eq2(P.star(j, P.s(P.var(Y)), P.var(X)), P.s(yox()));
      eq2(P.circ(j, P.var(X), P.s(yox())), P.circ(i, P.var(X), yox()));
      eq2(P.star(j, P.s(yox()), P.circ(j, P.var(X), P.s(yox()))),
          P.s(P.var(Y)));
    }
    // (4)
    for (auto [i, j, k] : axiom4_triples(n_)) {
      eq3(P.circ(k, P.circ(i, P.var(Z), P.var(Y)), P.var(X)),
          P.circ(i, P.circ(k, P.var(Z), P.circ(j, P.var(X), P.var(Y))),
                 P.circ(j, P.var(Y), P.var(X))));
      eq3(P.star(i, P.circ(j, P.var(Y), P.var(X)),
                 P.circ(k, P.var(Z), P.star(j, P.var(X), P.var(Y)))),
          P.circ(j, P.star(j, P.var(Y), P.var(Z)),
                 P.star(k, P.var(X), P.star(i, P.var(Z), P.var(Y)))));
      eq3(P.star(k, P.star(j, P.var(X), P.var(Y)), P.var(Z)),
          P.star(j, P.star(k, P.var(X), P.circ(i, P.var(Z), P.var(Y))),
                 P.star(i, P.var(Y), P.var(Z))));
    }
  }

  void build_cell_order() {
    for (int x = 0; x < q_; ++x)
      order_.push_back(CellRef{2, static_cast<std::size_t>(x)});
    for (int i = 0; i < n_; ++i)
      for (int x = 0; x < q_; ++x)
        for (int y = 0; y < q_; ++y)
          order_.push_back(CellRef{1, Q_.cell(i, x, y)});
    for (int i = 0; i < n_; ++i)
      for (int x = 0; x < q_; ++x)
        for (int y = 0; y < q_; ++y)
          order_.push_back(CellRef{0, Q_.cell(i, x, y)});
  }

  EvalOut eval(int term, const int* vals) {
    const Term& t = pool_.terms[term];
    EvalOut out;
    switch (t.op) {
      case Term::Op::var:
        out.status = EvalOut::Status::known;
        out.value = vals[t.var];
        return out;
      case Term::Op::s_apply: {
        EvalOut arg = eval(t.a, vals);
        if (arg.status != EvalOut::Status::known) {
          out.status = EvalOut::Status::deep;
          return out;
        }
        int v = Q_.s_t[arg.value];
        if (v < 0) {
          out.status = EvalOut::Status::blocked;
          out.cell = CellRef{2, static_cast<std::size_t>(arg.value)};
          return out;
        }
        out.status = EvalOut::Status::known;
        out.value = v;
        return out;
      }
      case Term::Op::star:
      case Term::Op::circ: {
        EvalOut a = eval(t.a, vals);
        EvalOut b = eval(t.b, vals);
        if (a.status != EvalOut::Status::known ||
            b.status != EvalOut::Status::known) {
          out.status = EvalOut::Status::deep;
          return out;
        }
        std::size_t idx = Q_.cell(t.index, a.value, b.value);
        int table = t.op == Term::Op::star ? 0 : 1;
        int v = table == 0 ? Q_.star_t[idx] : Q_.circ_t[idx];
        if (v < 0) {
          out.status = EvalOut::Status::blocked;
          out.cell = CellRef{table, idx};
          return out;
        }
        out.status = EvalOut::Status::known;
        out.value = v;
        return out;
      }
    }
    return out;
  }

  // Returns false on contradiction.  Assignments forced by the equations are
  // applied and recorded on the trail.
  bool propagate() {
    bool changed = true;
    while (changed) {
      changed = false;
      int vals[3];
      for (const Equation& e : equations_) {
        int zmax = e.vars == 3 ? q_ : 1;
        for (vals[0] = 0; vals[0] < q_; ++vals[0])
          for (vals[1] = 0; vals[1] < q_; ++vals[1])
            for (vals[2] = 0; vals[2] < zmax; ++vals[2]) {
              EvalOut l = eval(e.lhs, vals);
              EvalOut r = eval(e.rhs, vals);
              if (l.status == EvalOut::Status::known &&
                  r.status == EvalOut::Status::known) {
                if (l.value != r.value) return false;
              } else if (l.status == EvalOut::Status::known &&
                         r.status == EvalOut::Status::blocked) {
                cell_value(r.cell) = l.value;
                trail_.push_back(r.cell);
                changed = true;
              } else if (r.status == EvalOut::Status::known &&
                         l.status == EvalOut::Status::blocked) {
                cell_value(l.cell) = r.value;
                trail_.push_back(l.cell);
                changed = true;
              }
            }
      }
    }
    return true;
  }

  void dfs(std::size_t order_pos, SearchResult& result) {
    if (budget_hit_) return;
    while (order_pos < order_.size() && cell_value(order_[order_pos]) >= 0)
      ++order_pos;
    if (order_pos == order_.size()) {
      if (certify(Q_).empty()) {
        if (iso_minimal()) result.found.push_back(Q_);
      }
      return;
    }
    for (int v = 0; v < q_; ++v) {
      if (++nodes_ > budget_) {
        budget_hit_ = true;
        return;
      }
      std::size_t mark = trail_.size();
      cell_value(order_[order_pos]) = v;
      trail_.push_back(order_[order_pos]);
      if (propagate()) dfs(order_pos + 1, result);
      while (trail_.size() > mark) {
        cell_value(trail_.back()) = -1;
        trail_.pop_back();
      }
      if (budget_hit_) return;
    }
  }

  bool iso_minimal() {
    std::vector<int> perm(q_);
    std::iota(perm.begin(), perm.end(), 0);
    const std::vector<int> self = Q_.flattened();
    while (std::next_permutation(perm.begin(), perm.end())) {
      LabeledQuandle R = LabeledQuandle::make(q_, n_);
      for (int x = 0; x < q_; ++x) R.s_t[perm[x]] = perm[Q_.s(x)];
      for (int i = 0; i < n_; ++i)
        for (int x = 0; x < q_; ++x)
          for (int y = 0; y < q_; ++y) {
            R.star_t[R.cell(i, perm[x], perm[y])] = perm[Q_.star(i, x, y)];
            R.circ_t[R.cell(i, perm[x], perm[y])] = perm[Q_.circ(i, x, y)];
          }
      if (R.flattened() < self) return false;
    }
    return true;
  }
};

}  // namespace detail

inline SearchResult search_quandles(int q, int n, long long node_budget) {
  if (q < 1 || n < 1) throw Error("carrier size and degree must be positive");
  if (node_budget <= 0) throw Error("search budget must be positive");
  detail::Searcher s(q, n, node_budget);
  return s.run();
}

// ---------------------------------------------------------------------------
// Coloring counts.

inline long long count_colorings(const LabeledDiagram& d,
                                 const LabeledQuandle& Q) {
  if (!Q.total()) throw Error("operation tables are not total");
  const MarkedGaussCode& code = d.code;

  bool has_marks = false;
  for (const auto& comp : code.components)
    for (const auto& s : comp)
      if (s.is_mark()) has_marks = true;
  std::vector<int> s_inv(Q.q, -1);
  if (has_marks) {
    if (!Q.s_bijective())
      throw Error("marked diagram requires a bijective S");
    for (int x = 0; x < Q.q; ++x) s_inv[Q.s(x)] = x;
  }

  // Global edge ids: edge (c, t) follows symbol t of component c; an empty
  // component contributes one free edge.
  std::vector<std::size_t> edge_base(code.components.size() + 1, 0);
  for (std::size_t c = 0; c < code.components.size(); ++c)
    edge_base[c + 1] =
        edge_base[c] + std::max<std::size_t>(1, code.components[c].size());
  std::size_t total_edges = edge_base[code.components.size()];

  auto edge_id = [&](std::size_t c, std::size_t t) { return edge_base[c] + t; };

  struct CrossingInfo {
    int label = 0;
    int sign = +1;
    std::size_t over_in = 0, over_out = 0, under_in = 0, under_out = 0;
  };
  std::map<std::uint32_t, CrossingInfo> crossings;
  struct MarkInfo {
    int direction = 0;
    std::size_t in = 0, out = 0;
  };
  std::vector<MarkInfo> marks;

  for (std::size_t c = 0; c < code.components.size(); ++c) {
    const auto& comp = code.components[c];
    for (std::size_t t = 0; t < comp.size(); ++t) {
      std::size_t in_edge = edge_id(c, code.prev(c, t));
      std::size_t out_edge = edge_id(c, t);
      const Symbol& sym = comp[t];
      if (sym.is_mark()) {
        marks.push_back(MarkInfo{sym.direction, in_edge, out_edge});
      } else {
        auto& info = crossings[sym.id];
        info.label = Q.mod_index(d.crossing_labels.at(sym.id));
        info.sign = sym.sign;
        if (sym.role == Role::over) {
          info.over_in = in_edge;
          info.over_out = out_edge;
        } else {
          info.under_in = in_edge;
          info.under_out = out_edge;
        }
      }
    }
  }

  std::vector<int> color(total_edges, -1);

  // Forced assignments from one new value; returns false on clash.
  auto assign = [&](std::size_t e, int v, std::vector<std::size_t>& trail) {
    if (color[e] >= 0) return color[e] == v;
    color[e] = v;
    trail.push_back(e);
    return true;
  };

  auto propagate = [&](std::vector<std::size_t>& trail) {
    bool changed = true;
    while (changed) {
      changed = false;
      for (const auto& mk : marks) {
        int cin = color[mk.in], cout = color[mk.out];
        if (cin >= 0 && cout < 0) {
          int v = mk.direction > 0 ? Q.s(cin) : s_inv[cin];
          if (!assign(mk.out, v, trail)) return false;
          changed = true;
        } else if (cout >= 0 && cin < 0) {
          int v = mk.direction > 0 ? s_inv[cout] : Q.s(cout);
          if (!assign(mk.in, v, trail)) return false;
          changed = true;
        } else if (cin >= 0 && cout >= 0) {
          int v = mk.direction > 0 ? Q.s(cin) : s_inv[cin];
          if (cout != v) return false;
        }
      }
      for (const auto& [id, cr] : crossings) {
        const int i = cr.label;
        int ui = color[cr.under_in], oi = color[cr.over_in];
        int uo = color[cr.under_out], oo = color[cr.over_out];
        if (cr.sign > 0) {
          if (ui >= 0 && oi >= 0) {
            if (!assign(cr.under_out, Q.star(i, ui, oi), trail)) return false;
            if (!assign(cr.over_out, Q.circ(i, oi, ui), trail)) return false;
            changed = changed || uo < 0 || oo < 0;
          } else if (oo >= 0 && ui >= 0 && oi < 0) {
            // over_out = over_in o_i under_in, o self-inverse in slot 1
            if (!assign(cr.over_in, Q.circ(i, oo, ui), trail)) return false;
            changed = true;
          }
        } else {
          if (uo >= 0 && oo >= 0) {
            if (!assign(cr.under_in, Q.star(i, uo, oo), trail)) return false;
            if (!assign(cr.over_in, Q.circ(i, oo, uo), trail)) return false;
            changed = changed || ui < 0 || oi < 0;
          } else if (oi >= 0 && uo >= 0 && oo < 0) {
            if (!assign(cr.over_out, Q.circ(i, oi, uo), trail)) return false;
            changed = true;
          }
        }
      }
    }
    return true;
  };

  auto consistent = [&]() {
    for (const auto& mk : marks) {
      int v = mk.direction > 0 ? Q.s(color[mk.in]) : s_inv[color[mk.in]];
      if (color[mk.out] != v) return false;
    }
    for (const auto& [id, cr] : crossings) {
      const int i = cr.label;
      int ui = color[cr.under_in], oi = color[cr.over_in];
      int uo = color[cr.under_out], oo = color[cr.over_out];
      if (cr.sign > 0) {
        if (uo != Q.star(i, ui, oi) || oo != Q.circ(i, oi, ui)) return false;
      } else {
        if (ui != Q.star(i, uo, oo) || oi != Q.circ(i, oo, uo)) return false;
      }
    }
    return true;
  };

  long long count = 0;
  // Depth-first over undetermined edges with propagation.
  std::function<void()> go = [&]() {
    std::size_t e = 0;
    while (e < total_edges && color[e] >= 0) ++e;
    if (e == total_edges) {
      if (consistent()) ++count;
      return;
    }
    for (int v = 0; v < Q.q; ++v) {
      std::vector<std::size_t> trail;
      color[e] = v;
      trail.push_back(e);
      if (propagate(trail)) go();
      for (std::size_t t : trail) color[t] = -1;
    }
  };
  go();
  return count;
}

}  // namespace sgs1
