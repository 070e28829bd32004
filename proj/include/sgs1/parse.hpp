#pragma once

// Text format for marked Gauss codes, one component per line.
//
//   *O1+ U2+ M+ O3+ U1+ O2+ U3+
//
// Tokens: O<id><sign> and U<id><sign> for crossing passes, M+ / M- for cut
// marks.  A leading '*' marks the base point token (defaults to the first
// token).  A line consisting of a single '*' is an empty component.  Blank
// lines and '#' comments are ignored.

#include <cctype>
#include <string>

#include "sgs1/code.hpp"

namespace sgs1 {

class ParseError : public Error {
 public:
  ParseError(std::size_t line, std::size_t column, const std::string& what)
      : Error("line " + std::to_string(line) + ", column " +
              std::to_string(column) + ": " + what),
        line_(line),
        column_(column) {}

  std::size_t line() const { return line_; }
  std::size_t column() const { return column_; }

 private:
  std::size_t line_, column_;
};

namespace detail {

// Columns are 1-based; for a token cut short the error points at its last
// present character.
inline Symbol parse_token(const std::string& tok, std::size_t line,
                          std::size_t col0) {
  std::size_t i = 0;
  auto fail = [&](const std::string& msg, std::size_t at) -> Symbol {
    throw ParseError(line, col0 + at, msg);
  };
  char head = tok[i];
  if (head == 'M') {
    if (tok.size() < 2) return fail("expected '+' or '-' after 'M'", 0);
    if (tok[1] != '+' && tok[1] != '-')
      return fail("expected '+' or '-' after 'M'", 1);
    if (tok.size() > 2) return fail("trailing characters after mark token", 2);
    return Symbol::mark(tok[1] == '+' ? +1 : -1);
  }
  if (head != 'O' && head != 'U')
    return fail(std::string("unexpected character '") + head + "'", 0);
  ++i;
  std::size_t digits_begin = i;
  while (i < tok.size() && std::isdigit(static_cast<unsigned char>(tok[i])))
    ++i;
  if (i == digits_begin)
    return fail("expected crossing id digits",
                i < tok.size() ? i : tok.size() - 1);
  std::uint32_t id = 0;
  for (std::size_t k = digits_begin; k < i; ++k) {
    id = id * 10 + static_cast<std::uint32_t>(tok[k] - '0');
    if (id > 100000000) return fail("crossing id too large", k);
  }
  if (i >= tok.size())
    return fail("expected '+' or '-' sign after crossing id", tok.size() - 1);
  if (tok[i] != '+' && tok[i] != '-')
    return fail("expected '+' or '-' sign after crossing id", i);
  int sign = tok[i] == '+' ? +1 : -1;
  if (i + 1 < tok.size())
    return fail("trailing characters after crossing token", i + 1);
  return Symbol::pass(id, head == 'O' ? Role::over : Role::under, sign);
}

}  // namespace detail

inline MarkedGaussCode parse_code(const std::string& text) {
  MarkedGaussCode code;
  std::size_t line_no = 0;
  std::size_t pos = 0;
  while (pos <= text.size()) {
    std::size_t eol = text.find('\n', pos);
    std::string line = eol == std::string::npos
                           ? text.substr(pos)
                           : text.substr(pos, eol - pos);
    ++line_no;
    std::size_t hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);

    std::vector<Symbol> comp;
    std::optional<std::size_t> base;
    bool empty_marker = false;
    std::size_t i = 0;
    while (i < line.size()) {
      if (std::isspace(static_cast<unsigned char>(line[i]))) {
        ++i;
        continue;
      }
      std::size_t start = i;
      while (i < line.size() &&
             !std::isspace(static_cast<unsigned char>(line[i])))
        ++i;
      std::string tok = line.substr(start, i - start);
      std::size_t col = start + 1;
      bool starred = false;
      if (tok[0] == '*') {
        starred = true;
        tok = tok.substr(1);
        ++col;
        if (base)
          throw ParseError(line_no, start + 1,
                           "more than one base point in component");
      }
      if (tok.empty()) {
        // A bare '*' is only allowed as the whole component.
        if (starred && comp.empty()) {
          std::size_t rest = i;
          while (rest < line.size() &&
                 std::isspace(static_cast<unsigned char>(line[rest])))
            ++rest;
          if (rest >= line.size()) {
            empty_marker = true;
            base = 0;
            break;
          }
        }
        throw ParseError(line_no, start + 1, "empty token after '*'");
      }
      if (starred) base = comp.size();
      comp.push_back(detail::parse_token(tok, line_no, col));
    }

    if (!comp.empty() || empty_marker) {
      code.components.push_back(std::move(comp));
      code.base_points.push_back(base.value_or(0));
    }
    if (eol == std::string::npos) break;
    pos = eol + 1;
  }
  return code;
}

inline std::string format_symbol(const Symbol& s) {
  if (s.is_mark()) return s.direction > 0 ? "M+" : "M-";
  std::string out(1, s.role == Role::over ? 'O' : 'U');
  out += std::to_string(s.id);
  out += s.sign > 0 ? '+' : '-';
  return out;
}

// Round-trips with parse_code: parse_code(format_code(c)) == c.
inline std::string format_code(const MarkedGaussCode& code) {
  std::string out;
  for (std::size_t c = 0; c < code.components.size(); ++c) {
    const auto& comp = code.components[c];
    if (comp.empty()) {
      out += "*\n";
      continue;
    }
    std::size_t base =
        c < code.base_points.size() ? code.base_points[c] : 0;
    for (std::size_t p = 0; p < comp.size(); ++p) {
      if (p) out += ' ';
      if (p == base) out += '*';
      out += format_symbol(comp[p]);
    }
    out += '\n';
  }
  return out;
}

}  // namespace sgs1
