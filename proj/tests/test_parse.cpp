#include <catch2/catch_amalgamated.hpp>

#include "sgs1/parse.hpp"
#include "sgs1/random.hpp"

using namespace sgs1;

TEST_CASE("parses the kinked unknot") {
  MarkedGaussCode code = parse_code("*O1+ U1+");
  REQUIRE(code.components.size() == 1);
  REQUIRE(code.components[0].size() == 2);
  CHECK(code.components[0][0] == Symbol::pass(1, Role::over, +1));
  CHECK(code.components[0][1] == Symbol::pass(1, Role::under, +1));
  CHECK(code.base_points[0] == 0);
}

TEST_CASE("parses the two-mark unknot") {
  MarkedGaussCode code = parse_code("*M+ M-");
  REQUIRE(code.components.size() == 1);
  CHECK(code.components[0][0] == Symbol::mark(+1));
  CHECK(code.components[0][1] == Symbol::mark(-1));
}

TEST_CASE("base point star and default") {
  CHECK(parse_code("O1+ *U1+").base_points[0] == 1);
  CHECK(parse_code("O1+ U1+").base_points[0] == 0);
}

TEST_CASE("empty component and comments") {
  MarkedGaussCode code = parse_code("# a comment\n*\nM+ M- # trailing\n");
  REQUIRE(code.components.size() == 2);
  CHECK(code.components[0].empty());
  CHECK(code.components[1].size() == 2);
}

TEST_CASE("position precise parse errors") {
  auto column_of = [](const std::string& text) -> std::size_t {
    try {
      parse_code(text);
    } catch (const ParseError& e) {
      return e.column();
    }
    return 0;
  };
  CHECK(column_of("O1") == 2);      // sign missing, token ends at column 2
  CHECK(column_of("O1x") == 3);     // bad sign character
  CHECK(column_of("Q1+") == 1);     // unknown token head
  CHECK(column_of("M*") == 2);      // bad mark direction
  CHECK(column_of("O+") == 2);      // missing id digits
  CHECK(column_of("O1+ O2") == 6);  // second token, sign missing
  try {
    parse_code("O1+ U1+\nO2+ xx");
    FAIL("expected a parse error");
  } catch (const ParseError& e) {
    CHECK(e.line() == 2);
    CHECK(e.column() == 5);
  }
}

TEST_CASE("double base point rejected") {
  CHECK_THROWS_AS(parse_code("*O1+ *U1+"), ParseError);
}

TEST_CASE("format emits the base star and round-trips") {
  MarkedGaussCode code = parse_code("O1+ *U2- M+ O2- U1+ M-");
  std::string text = format_code(code);
  CHECK(text == "O1+ *U2- M+ O2- U1+ M-\n");
  CHECK(parse_code(text) == code);
}

TEST_CASE("round trip on a random corpus") {
  std::mt19937_64 rng(9001);
  for (int iter = 0; iter < 2000; ++iter) {
    CodeGenOptions opt;
    opt.max_components = 3;
    opt.max_crossings = 6;
    opt.max_marks = 5;
    MarkedGaussCode code = random_code(rng, opt);
    MarkedGaussCode back = parse_code(format_code(code));
    REQUIRE(back == code);
  }
}
