#include "doctest.h"

#include "neron/fixtures.hpp"

#include <cstdio>
#include <fstream>

using namespace neron;

namespace {

struct PrecisionGuard {
  PrecisionGuard(unsigned digits) { set_working_digits(digits); }
};

std::string temp_json(const std::string& body) {
  std::string path = "fixture_test_tmp.json";
  std::ofstream out(path);
  out << body;
  return path;
}

}  // namespace

TEST_CASE("missing fixture file raises MissingFixture") {
  CHECK_THROWS_AS(load_period_fixture("no/such/file.json"), MissingFixture);
}

TEST_CASE("malformed fixture content raises FixtureError") {
  PrecisionGuard guard(30);
  SUBCASE("not JSON") {
    auto p = temp_json("this is not json");
    CHECK_THROWS_AS(load_period_fixture(p), FixtureError);
    std::remove(p.c_str());
  }
  SUBCASE("unknown schema version") {
    auto p = temp_json(R"({"schema_version": 99, "kind": "period"})");
    CHECK_THROWS_AS(load_period_fixture(p), FixtureError);
    std::remove(p.c_str());
  }
  SUBCASE("wrong kind") {
    auto p = temp_json(R"({"schema_version": 1, "kind": "model"})");
    CHECK_THROWS_AS(load_period_fixture(p), FixtureError);
    std::remove(p.c_str());
  }
}

TEST_CASE("torsion quartic fixture: pairing of torsion classes vanishes") {
  PrecisionGuard guard(30);
  auto fix = load_period_fixture(FIXTURE_DIR "/period_torsion.json");
  const auto& pd = fix.period;
  REQUIRE(pd.g == 3);
  REQUIRE(pd.aj.count("D1") == 1);
  REQUIRE(pd.aj.count("E2") == 1);

  auto rep = find_w(pd);
  CHECK(rep.runner_up / (rep.theta_abs + Real("1e-40")) > Real(1000));

  LabelledDivisor D = {{"D1", 1}, {"D2", -1}};
  std::vector<std::string> E1 = {"E1", "E1", "E1"};
  std::vector<std::string> E2 = {"E2", "E2", "E2"};
  Real v = archimedean_pairing(D, E1, E2, pd, rep.w);
  CHECK(abs(v) < Real("1e-20"));
}

TEST_CASE("rank-1 quartic fixture: archimedean local pairing") {
  PrecisionGuard guard(30);
  auto fix = load_period_fixture(FIXTURE_DIR "/period_rank1.json");
  const auto& pd = fix.period;
  REQUIRE(pd.g == 3);

  auto rep = find_w(pd);
  LabelledDivisor D = {{"D1", 1}, {"D2", -1}};
  std::vector<std::string> E1 = {"E1", "E1", "E1"};
  std::vector<std::string> E2 = {"E2", "E2", "E2"};
  Real v = archimedean_pairing(D, E1, E2, pd, rep.w);
  CHECK(abs(v - Real("-0.013563")) < Real("1e-5"));
}
