#include "doctest.h"
#include "syzkit/parse.hpp"

using namespace syzkit;

namespace {

NovikovSeries T(const Rational& e, const GaussianRational& c = GaussianRational(1)) { return NovikovSeries::monomial(c, e); }

}  // namespace

TEST_CASE("parse series") {
  CHECK(parse_series("1") == NovikovSeries::one());
  CHECK(parse_series("T^(1/2)") == T(Rational(1, 2)));
  CHECK(parse_series("T(-1/2)") == T(Rational(-1, 2)));
  CHECK(parse_series("T^-2") == T(-2));
  CHECK(parse_series("3/4 T") == T(1, GaussianRational(Rational(3, 4))));
  CHECK(parse_series("2*i*T^3 - T^3") == T(3, GaussianRational(-1, 2)));
  CHECK(parse_series("T^12").is_zero());
  CHECK(parse_series("(1 - T)*(1 + T)") == parse_series("1 - T^2"));
  CHECK(parse_series("1/(1 - T)", Rational(3)) == parse_series("1 + T + T^2", Rational(3)));
  CHECK(parse_series("0.5") == NovikovSeries(GaussianRational(Rational(1, 2)), Rational(10)));
  CHECK_THROWS_AS(parse_series("x + 1"), ParseError);
}

TEST_CASE("parse laurent") {
  auto W = parse_laurent("z1 + z2 + T(-1/2)*z1*z2");
  CHECK(W.vars() == std::vector<std::string>{"z1", "z2"});
  CHECK(W.coeff({1, 1}) == T(Rational(-1, 2)));
  CHECK(W.coeff({1, 0}) == T(0));
  CHECK(parse_laurent("z^-1").coeff({-1}) == T(0));
  CHECK(parse_laurent("x/y", {"x", "y"}).coeff({1, -1}) == T(0));
  CHECK(parse_laurent("-x^2 + 2x", {"x"}) == parse_laurent("x*(2 - x)", {"x"}));
  CHECK(parse_laurent("w0 + (1 + T^(-1/10) w0) v") == parse_laurent("w0 + v + T(-1/10)*w0*v"));
  CHECK(collect_variables("x10 + x2 + y") == std::vector<std::string>{"x2", "x10", "y"});
  CHECK(parse_laurent("x", {"x", "y"}).nvars() == 2);
}

TEST_CASE("parse errors") {
  CHECK_THROWS_AS(parse_laurent(""), ParseError);
  CHECK_THROWS_AS(parse_laurent("x +"), ParseError);
  CHECK_THROWS_AS(parse_laurent("(x + 1"), ParseError);
  CHECK_THROWS_AS(parse_laurent("x $ y"), ParseError);
  CHECK_THROWS_AS(parse_laurent("x^(1/2)"), ParseError);
  CHECK_THROWS_AS(parse_laurent("z", {"x"}), ParseError);
  CHECK_THROWS_AS(parse_laurent("T(1/0)"), ParseError);
  CHECK_THROWS_WITH(parse_laurent("x + )"), doctest::Contains("position 4"));
}
