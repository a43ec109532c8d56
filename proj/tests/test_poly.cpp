#include "doctest.h"

#include "neron/poly.hpp"

using namespace neron;

namespace {
const std::vector<std::string> YZ = {"y", "z"};
MultiPoly P(const std::string& s, CoefficientRing r = CoefficientRing::Z()) {
  return MultiPoly::parse(s, YZ, r);
}
}  // namespace

TEST_CASE("parse/print round trip") {
  auto f = P("y^3*z - y^2*z^2 - z^2 + y - 1");
  CHECK(MultiPoly::parse(f.to_string(), YZ, CoefficientRing::Z()) == f);
  CHECK(P("0").is_zero());
  CHECK(P("2*y - y - y").is_zero());
  CHECK(P("-3*y*z").to_string() == "-3*y*z");
}

TEST_CASE("parse rejects malformed input with a position") {
  CHECK_THROWS_WITH_AS(P("y + w"), doctest::Contains("position 4"),
                       std::runtime_error);
  CHECK_THROWS_AS(P("y +"), std::runtime_error);
  CHECK_THROWS_AS(P("y 2"), std::runtime_error);
}

TEST_CASE("arithmetic and derivative") {
  auto f = P("y^2 + z");
  auto g = P("y - z");
  CHECK((f * g).to_string() == "y^3 - y^2*z + y*z - z^2");
  CHECK(f.derivative(0) == P("2*y"));
  CHECK(f.derivative(1) == P("1"));
}

TEST_CASE("Z/p^N coefficients are reduced") {
  auto r = CoefficientRing::ZmodPN(2, 3);
  auto f = MultiPoly::parse("9*y + 8*z", YZ, r);
  CHECK(f == MultiPoly::parse("y", YZ, r));
}

TEST_CASE("monomial orders") {
  MonomialOrder d = MonomialOrder::Degrevlex();
  // degrevlex on (y, z): y^2 > yz > z^2 > y > z > 1
  CHECK(d.cmp({2, 0}, {1, 1}) > 0);
  CHECK(d.cmp({1, 1}, {0, 2}) > 0);
  CHECK(d.cmp({0, 2}, {1, 0}) > 0);
  MonomialOrder b = MonomialOrder::Block(1);
  // first block dominates: (1,0) > (0,5)
  CHECK(b.cmp({1, 0}, {0, 5}) > 0);
}

TEST_CASE("rational coefficients and clearing denominators") {
  auto f = MultiPoly::parse("1/2*y + 1/3*z", YZ, CoefficientRing::Q());
  CHECK(f.cleared_denominators() ==
        MultiPoly::parse("3*y + 2*z", YZ, CoefficientRing::Q()));
}
