// Input grammar: polynomial expressions, juxtaposition, rational
// coefficients, error positions, and full system parsing for all charts.
#include "doctest.h"

#include <string>

#include "projatlas/parse.hpp"
#include "projatlas/system.hpp"

using namespace projatlas;

namespace {

Poly2 P(const std::string& t) { return parse_polynomial(t, {"x", "y"}); }

}  // namespace

TEST_CASE("basic expressions") {
  CHECK(P("x + y") == Poly2::var_first() + Poly2::var_second());
  CHECK(P("0").is_zero());
  CHECK(P("-x") == -Poly2::var_first());
  CHECK(P("+x") == Poly2::var_first());
  CHECK(P("10 - 10") == Poly2{});
  // '^' applies to variables and parenthesized groups only.
  CHECK(P("(2)^3") == Poly2::constant(Rat(8)));
  CHECK_THROWS_AS(P("2^3"), ParseError);
}

TEST_CASE("juxtaposition multiplies") {
  CHECK(P("5x*y") == P("5*x*y"));
  CHECK(P("2(x + 1)") == P("2*x + 2"));
  CHECK(P("(x + y)(x - y)") == P("x^2 - y^2"));
  CHECK(P("3/4x") == P("3/4*x"));
}

TEST_CASE("rational coefficients") {
  CHECK(P("1/2 + 1/3").coeff(0, 0) == Rat(5, 6));
  CHECK(P("7/10*x^2").coeff(2, 0) == Rat(7, 10));
  // Division only forms rational literals; it does not act on variables.
  CHECK_THROWS_AS(P("x/2"), ParseError);
}

TEST_CASE("powers and parenthesized powers") {
  CHECK(P("x^4") == P("x*x*x*x"));
  CHECK(P("(1 + x)^3") == P("1 + 3*x + 3*x^2 + x^3"));
  CHECK(P("(x - y)^0") == Poly2::constant(Rat(1)));
}

TEST_CASE("whitespace is insignificant") {
  CHECK(P("  x ^ 2 +\t3 * y ") == P("x^2+3y"));
}

TEST_CASE("multi-letter chart variables") {
  const auto v1 = chart_vars(ChartId::XiTheta);
  const Poly2 p = parse_polynomial("xi^2*theta - 2*theta", v1);
  CHECK(p.coeff(2, 1) == Rat(1));
  CHECK(p.coeff(0, 1) == Rat(-2));
  const auto v2 = chart_vars(ChartId::EtaZeta);
  const Poly2 q = parse_polynomial("eta*zeta + 1/5", v2);
  CHECK(q.coeff(1, 1) == Rat(1));
  CHECK(q.coeff(0, 0) == Rat(1, 5));
}

TEST_CASE("parse errors carry positions") {
  CHECK_THROWS_AS(P("x + $"), ParseError);
  CHECK_THROWS_AS(P("x + "), ParseError);
  CHECK_THROWS_AS(P("(x + 1"), ParseError);
  CHECK_THROWS_AS(P("z + 1"), ParseError);       // unknown variable
  CHECK_THROWS_AS(P("1/0"), ParseError);          // zero denominator
  CHECK_THROWS_AS(P("x^-2"), ParseError);         // negative exponent
  try {
    P("x + $");
  } catch (const ParseError& e) {
    CHECK(e.position() == 4);
    CHECK(std::string(e.what()).find("position 4") != std::string::npos);
  }
}

TEST_CASE("system text parses for every chart") {
  const auto s1 = parse_system_text("x' = -y + x^3; y' = x + x^2*y");
  CHECK(s1.vars == chart_vars(ChartId::XY));
  CHECK(s1.X == P("-y + x^3"));
  CHECK(s1.Y == P("x + x^2*y"));

  const auto s2 = parse_system_text("xi' = theta; theta' = -1");
  CHECK(s2.vars == chart_vars(ChartId::XiTheta));

  const auto s3 = parse_system_text("eta' = -zeta^2; zeta' = -eta");
  CHECK(s3.vars == chart_vars(ChartId::EtaZeta));
}

TEST_CASE("system text rejects malformed input") {
  CHECK_THROWS_AS(parse_system_text("x' = y"), ParseError);            // one equation
  CHECK_THROWS_AS(parse_system_text("x' = y; z' = x"), ParseError);    // mixed vars
  CHECK_THROWS_AS(parse_system_text("y' = x; x' = y"), ParseError);    // wrong order
  CHECK_THROWS_AS(parse_system_text("x' = theta; y' = x"), ParseError);
  CHECK_THROWS_AS(parse_system_text(""), ParseError);
}

TEST_CASE("make_system validation") {
  CHECK_THROWS_AS(make_system(Poly2{}, Poly2{}, ChartId::XY),
                  std::invalid_argument);
  // Common nonconstant factor is rejected.
  CHECK_THROWS_AS(make_system(P("x*y"), P("x*(1 + y)"), ChartId::XY),
                  std::invalid_argument);
  const PlaneSystem s = make_system(P("1 - y"), P("x"), ChartId::XY);
  CHECK(s.degree() == 1);
  CHECK(s.to_string() == "x' = 1 - y; y' = x");
}
