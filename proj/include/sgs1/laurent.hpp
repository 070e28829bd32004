#pragma once

// Laurent polynomials in one variable over the integers.

#include <map>
#include <optional>
#include <string>

#include "sgs1/code.hpp"

namespace sgs1 {

struct LaurentPoly {
  std::map<int, long long> coeffs;  // exponent -> coefficient, zeros erased

  static LaurentPoly zero() { return LaurentPoly{}; }
  static LaurentPoly constant(long long c) { return monomial(0, c); }
  static LaurentPoly monomial(int exp, long long c) {
    LaurentPoly p;
    if (c != 0) p.coeffs[exp] = c;
    return p;
  }

  bool is_zero() const { return coeffs.empty(); }

  bool is_monomial() const { return coeffs.size() == 1; }

  std::optional<long long> as_constant() const {
    if (is_zero()) return 0;
    if (coeffs.size() == 1 && coeffs.begin()->first == 0)
      return coeffs.begin()->second;
    return std::nullopt;
  }

  LaurentPoly& operator+=(const LaurentPoly& o) {
    for (const auto& [e, c] : o.coeffs) {
      long long v = (coeffs[e] += c);
      if (v == 0) coeffs.erase(e);
    }
    return *this;
  }
  friend LaurentPoly operator+(LaurentPoly a, const LaurentPoly& b) {
    a += b;
    return a;
  }
  friend LaurentPoly operator-(const LaurentPoly& a) {
    LaurentPoly r;
    for (const auto& [e, c] : a.coeffs) r.coeffs[e] = -c;
    return r;
  }
  friend LaurentPoly operator-(LaurentPoly a, const LaurentPoly& b) {
    a += -b;
    return a;
  }
  friend LaurentPoly operator*(const LaurentPoly& a, const LaurentPoly& b) {
    LaurentPoly r;
    for (const auto& [ea, ca] : a.coeffs)
      for (const auto& [eb, cb] : b.coeffs) {
        long long v = (r.coeffs[ea + eb] += ca * cb);
        if (v == 0) r.coeffs.erase(ea + eb);
      }
    return r;
  }
  friend bool operator==(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs == b.coeffs;
  }
  friend bool operator!=(const LaurentPoly& a, const LaurentPoly& b) {
    return !(a == b);
  }
  friend bool operator<(const LaurentPoly& a, const LaurentPoly& b) {
    return a.coeffs < b.coeffs;
  }

  // Integer power; negative exponents require a monomial base.
  LaurentPoly pow(int e) const {
    if (e == 0) return constant(1);
    if (e < 0) {
      if (!is_monomial())
        throw Error("negative power of a non-monomial Laurent polynomial");
      auto [exp, c] = *coeffs.begin();
      if (c != 1 && c != -1)
        throw Error("negative power needs a unit coefficient");
      long long cc = 1;
      for (int t = 0; t < -e; ++t) cc *= c;
      return monomial(exp * e, cc);
    }
    LaurentPoly r = constant(1);
    for (int t = 0; t < e; ++t) r = r * *this;
    return r;
  }

  // Exact division; nullopt when the quotient is not a Laurent polynomial.
  std::optional<LaurentPoly> divide_exact(const LaurentPoly& divisor) const {
    if (divisor.is_zero()) return std::nullopt;
    if (is_zero()) return zero();
    // Shift to ordinary polynomials and long-divide.
    int ms = coeffs.begin()->first;
    int md = divisor.coeffs.begin()->first;
    LaurentPoly rem = *this * monomial(-ms, 1);
    LaurentPoly div = divisor * monomial(-md, 1);
    int ddeg = div.coeffs.rbegin()->first;
    long long dc = div.coeffs.rbegin()->second;
    LaurentPoly quot;
    while (!rem.is_zero() && rem.coeffs.rbegin()->first >= ddeg) {
      auto [re, rc] = *rem.coeffs.rbegin();
      if (rc % dc != 0) return std::nullopt;
      LaurentPoly t = monomial(re - ddeg, rc / dc);
      quot += t;
      rem = rem - t * div;
    }
    if (!rem.is_zero()) return std::nullopt;
    return quot * monomial(ms - md, 1);
  }

  std::string to_string(const std::string& var = "A") const {
    if (coeffs.empty()) return "0";
    std::string out;
    bool first = true;
    // Highest exponent first.
    for (auto it = coeffs.rbegin(); it != coeffs.rend(); ++it) {
      auto [e, c] = *it;
      long long mag = c < 0 ? -c : c;
      if (first)
        out += c < 0 ? "-" : "";
      else
        out += c < 0 ? " - " : " + ";
      first = false;
      if (e == 0) {
        out += std::to_string(mag);
      } else {
        if (mag != 1) out += std::to_string(mag) + "*";
        out += var;
        if (e != 1) out += "^" + std::to_string(e);
      }
    }
    return out;
  }
};

}  // namespace sgs1
