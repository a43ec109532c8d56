#include "doctest.h"

#include "neron/model.hpp"

using namespace neron;

namespace {

const std::vector<std::string> XYZ = {"x", "y", "z"};
const std::vector<std::string> YZ = {"y", "z"};

MultiPoly Z(const std::string& s, const std::vector<std::string>& v) {
  return MultiPoly::parse(s, v, CoefficientRing::Z());
}

// torsion quartic: rank-0 Jacobian, bad primes 29 and 163
const char* kTorsionCurve =
    "x^3*y - x^2*y^2 - x^2*z^2 - x*y^2*z + x*z^3 + y^3*z";
// rank-1 quartic, bad primes 41 and 347
const char* kRankOneCurve =
    "x^2*y^2 - x*y^3 - x^3*z - 2*x^2*z^2 + y^2*z^2 - x*z^3 + y*z^3";

}  // namespace

TEST_CASE("constructible set membership") {
  auto vy = ConstructibleSet::Closed({Z("y", YZ)});
  auto whole = ConstructibleSet::Closed({});
  auto diff = ConstructibleSet::Difference(whole, vy);
  Int m = 25;
  CHECK(vy.contains({0, 7}, m));
  CHECK_FALSE(vy.contains({3, 7}, m));
  CHECK(whole.contains({3, 7}, m));
  CHECK(diff.contains({3, 7}, m));
  CHECK_FALSE(diff.contains({0, 7}, m));
  auto u = ConstructibleSet::DisjointUnion({vy, diff});
  CHECK(u.contains({0, 1}, m));
  CHECK(u.contains({4, 1}, m));
}

TEST_CASE("naive plane model covers the plane with a triangular partition") {
  auto curve = Z(kTorsionCurve, XYZ);
  auto model = naive_plane_model(curve, 29);
  REQUIRE(model.charts.size() == 3);
  CHECK(model.charts[0].id == "x1");
  CHECK(model.charts[1].id == "x2");
  CHECK(model.charts[2].id == "x3");
  REQUIRE(model.partition.size() == 3);
  // V1 is everything on chart x1; V2 requires x = 0 on chart x2
  CHECK(model.partition[0].contains({5, 11}, 13));
  CHECK(model.partition[1].contains({0, 11}, 13));
  CHECK_FALSE(model.partition[1].contains({5, 11}, 13));
  CHECK(model.partition[2].contains({0, 0}, 13));
  CHECK_FALSE(model.partition[2].contains({0, 3}, 13));
  CHECK(validate_model(model).ok());
}

TEST_CASE("model validation flags inconsistent fixture data") {
  auto curve = Z(kRankOneCurve, XYZ);
  auto model = naive_plane_model(curve, 41);
  SUBCASE("asymmetric intersection matrix") {
    model.components.push_back({"x1", {Z("41", YZ)}, 1, {}});
    model.components.push_back({"x1", {Z("41", YZ), Z("y", YZ)}, 1, {}});
    model.intersection_matrix = {{-1, 2}, {1, -1}};
    auto rep = validate_model(model);
    CHECK_FALSE(rep.ok());
  }
  SUBCASE("multiplicities not in the kernel") {
    model.components.push_back({"x1", {Z("41", YZ)}, 1, {}});
    model.components.push_back({"x1", {Z("41", YZ), Z("y", YZ)}, 2, {}});
    model.intersection_matrix = {{-2, 2}, {2, -2}};
    auto rep = validate_model(model);
    CHECK_FALSE(rep.ok());  // M * (1,2)^T != 0
  }
  SUBCASE("component ideal must contain p") {
    model.components.push_back({"x1", {Z("y", YZ)}, 1, {}});
    auto rep = validate_model(model);
    CHECK_FALSE(rep.ok());
  }
  SUBCASE("consistent two-component data passes") {
    model.components.push_back({"x1", {Z("41", YZ), Z("y", YZ)}, 1, {}});
    model.components.push_back({"x1", {Z("41", YZ), Z("z", YZ)}, 1, {}});
    model.intersection_matrix = {{-2, 2}, {2, -2}};
    CHECK(validate_model(model).ok());
  }
}

TEST_CASE("partition from a cover is triangular for the standard charts") {
  CoefficientRing r = CoefficientRing::Z();
  Chart c1{"x1", YZ, {}, ""};
  Chart c2{"x2", {"x", "z"}, {}, ""};
  Chart c3{"x3", {"x", "y"}, {}, ""};
  std::vector<ChartWithOverlaps> cov;
  cov.push_back({c1, {}});
  // overlap of x2 with x1 is x != 0, so its complement is V(x)
  cov.push_back({c2, {{Z("x", c2.vars)}}});
  cov.push_back({c3, {{Z("x", c3.vars)}, {Z("y", c3.vars)}}});
  auto parts = partition_from_cover(cov);
  REQUIRE(parts.size() == 3);
  CHECK(parts[0].contains({4, 9}, 11));
  CHECK(parts[1].contains({0, 9}, 11));
  CHECK_FALSE(parts[1].contains({4, 9}, 11));
  CHECK(parts[2].contains({0, 0}, 11));
  CHECK_FALSE(parts[2].contains({0, 4}, 11));
}

TEST_CASE("special fibres of the worked quartics verify as irreducible") {
  auto check = [&](const char* curve, Int p) {
    // affine patch x != 0
    auto f = Z(curve, XYZ);
    CoefficientRing r = CoefficientRing::Z();
    MultiPoly aff(YZ, r);
    for (const auto& [e, c] : f.terms()) aff.add_term({e[1], e[2]}, c);
    return fibre_irreducible_heuristic(aff, p);
  };
  CHECK(check(kTorsionCurve, 29));
  CHECK(check(kTorsionCurve, 163));
  CHECK(check(kRankOneCurve, 41));
  CHECK(check(kRankOneCurve, 347));
}

TEST_CASE("irreducibility heuristic declines obvious products") {
  // y*z + 7*(...) factors as y*z mod 7
  auto f = Z("y*z + 7*y + 49", YZ);
  CHECK_FALSE(fibre_irreducible_heuristic(f, 7));
}
