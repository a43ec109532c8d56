#include "doctest.h"

#include "neron/primes.hpp"

using namespace neron;
using namespace std::chrono_literals;

namespace {

const std::vector<std::string> XYZ = {"x", "y", "z"};
const std::vector<std::string> YZ = {"y", "z"};

MultiPoly Z(const std::string& s, const std::vector<std::string>& v) {
  return MultiPoly::parse(s, v, CoefficientRing::Z());
}

const char* kTorsionCurve =
    "x^3*y - x^2*y^2 - x^2*z^2 - x*y^2*z + x*z^3 + y^3*z";
const char* kRankOneCurve =
    "x^2*y^2 - x*y^3 - x^3*z - 2*x^2*z^2 + y^2*z^2 - x*z^3 + y*z^3";

DivisorSpec chart1_divisor(const std::string& label,
                           std::vector<std::string> eff,
                           std::vector<std::string> anti) {
  DivisorSpec d;
  d.label = label;
  ChartIdeals ci;
  ci.chart = "x1";
  for (const auto& s : eff) ci.effective.push_back(Z(s, YZ));
  for (const auto& s : anti) ci.antieffective.push_back(Z(s, YZ));
  d.charts.push_back(std::move(ci));
  return d;
}

}  // namespace

TEST_CASE("factorization") {
  SUBCASE("small composite") {
    auto f = factorize(Int(2 * 2 * 3 * 29 * 163), 5000ms);
    REQUIRE(f.complete());
    REQUIRE(f.prime_powers.size() == 4);
    CHECK(f.prime_powers[0] == std::pair<Int, unsigned>{2, 2});
    CHECK(f.prime_powers[1] == std::pair<Int, unsigned>{3, 1});
    CHECK(f.prime_powers[2] == std::pair<Int, unsigned>{29, 1});
    CHECK(f.prime_powers[3] == std::pair<Int, unsigned>{163, 1});
  }
  SUBCASE("semiprime beyond trial division") {
    Int p("1000003"), q("1000033");
    auto f = factorize(p * q, 10000ms);
    REQUIRE(f.complete());
    REQUIRE(f.prime_powers.size() == 2);
    CHECK(f.prime_powers[0].first == p);
    CHECK(f.prime_powers[1].first == q);
  }
  SUBCASE("hints are honoured") {
    Int p("523687087967");
    auto f = factorize(p * 9, 1000ms, {p});
    REQUIRE(f.complete());
    bool found = false;
    for (auto& [q, e] : f.prime_powers) found |= (q == p && e == 1);
    CHECK(found);
  }
}

TEST_CASE("bad primes of the worked quartics") {
  SUBCASE("torsion curve: 29 and 163") {
    auto bad = bad_primes(Z(kTorsionCurve, XYZ));
    CHECK(bad == std::vector<Int>{29, 163});
  }
  SUBCASE("rank-1 curve: 41 and 347") {
    auto bad = bad_primes(Z(kRankOneCurve, XYZ));
    CHECK(bad == std::vector<Int>{41, 347});
  }
}

TEST_CASE("meeting integer and precision bounds for the rank-1 example") {
  auto curve = Z(kRankOneCurve, XYZ);
  auto D = chart1_divisor("D", {"y", "z + 1"}, {"y - 1", "z + 1"});
  auto E = chart1_divisor("E", {"(y - 1)^3", "z^3"},
                          {"(y - 4)^3", "(z + 3)^3"});
  Int n = meeting_integer(curve, D, E);
  REQUIRE(n != 0);
  CHECK(n % 2 == 0);  // the divisors meet above 2
  CHECK(precision_bound(2, n) >= 2);
  CHECK(precision_bound(7, 8) == 1);
  CHECK(precision_bound(2, 8) == 4);

  auto report = relevant_places(curve, D, E);
  CHECK(report.archimedean);
  CHECK(report.bad_primes == std::vector<Int>{41, 347});
  bool has2 = false;
  for (auto& [p, prec] : report.relevant) {
    if (p == 2) {
      has2 = true;
      CHECK(prec >= 2);
    }
  }
  CHECK(has2);
}

TEST_CASE("torsion example: no prime where the divisors meet") {
  auto curve = Z(kTorsionCurve, XYZ);
  auto D = chart1_divisor("D", {"y", "z - 1"}, {"y - 1", "z"});
  auto E = chart1_divisor("E", {"y^3", "z^3"}, {"(y - 1)^3", "(z - 1)^3"});
  Int n = meeting_integer(curve, D, E);
  REQUIRE(n != 0);
  // paper-level fact: the four point pairs never meet over any prime, so
  // every relevant precision bound is the default 1
  auto report = relevant_places(curve, D, E);
  for (auto& [p, prec] : report.relevant)
    CHECK(precision_bound(p, n) == (n % p == 0 ? prec : 1u));
}
