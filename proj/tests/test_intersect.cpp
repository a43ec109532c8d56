#include "doctest.h"

#include "neron/intersect.hpp"
#include "neron/primes.hpp"

using namespace neron;

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

// torsion curve: D = (1:0:1) - (1:1:0), E = 3(1:0:0) - 3(1:1:1)
DivisorSpec torsion_D() {
  return chart1_divisor("D", {"y", "z - 1"}, {"y - 1", "z"});
}
DivisorSpec torsion_E() {
  return chart1_divisor("E", {"y^3", "z^3"}, {"(y - 1)^3", "(z - 1)^3"});
}

// rank-1 curve: D = (1:0:-1) - (1:1:-1), E = 3(1:1:0) - 3(1:4:-3)
DivisorSpec rank1_D() {
  return chart1_divisor("D", {"y", "z + 1"}, {"y - 1", "z + 1"});
}
DivisorSpec rank1_E() {
  return chart1_divisor("E", {"(y - 1)^3", "z^3"}, {"(y - 4)^3", "(z + 3)^3"});
}

}  // namespace

TEST_CASE("naive pairing is additive over partition refinements") {
  auto curve = Z(kRankOneCurve, XYZ);
  auto model = naive_plane_model(curve, 2);
  const Chart& chart = model.charts[0];
  IdealPresentation D{YZ, CoefficientRing::Z(), {Z("y", YZ), Z("z + 1", YZ)},
                      {}};
  IdealPresentation E{YZ,
                      CoefficientRing::Z(),
                      {Z("y - 4", YZ), Z("z + 3", YZ)},
                      {}};
  auto whole = ConstructibleSet::Closed({});
  Int base = naive_pairing(whole, D, E, chart, 2, 3);
  CHECK(base == 1);

  // refine: V(y) plus its complement; the total must not change
  auto vy = ConstructibleSet::Closed({Z("y", YZ)});
  auto refined = ConstructibleSet::DisjointUnion(
      {vy, ConstructibleSet::Difference(whole, vy)});
  CHECK(naive_pairing(refined, D, E, chart, 2, 3) == base);

  // refine along a generator that misses the intersection point entirely
  auto vz = ConstructibleSet::Closed({Z("z", YZ)});
  auto refined2 = ConstructibleSet::DisjointUnion(
      {vz, ConstructibleSet::Difference(whole, vz)});
  CHECK(naive_pairing(refined2, D, E, chart, 2, 3) == base);
}

TEST_CASE("horizontal extension strips fibre components") {
  auto ord = MonomialOrder::Degrevlex();
  auto extended_gb = [&](std::vector<std::string> eff) {
    DivisorSpec d = chart1_divisor("D", std::move(eff), {});
    DivisorSpec h = horizontal_extension(d, 2);
    const auto* ci = h.for_chart("x1");
    REQUIRE(ci != nullptr);
    IdealPresentation pres{YZ, CoefficientRing::Z(), ci->effective, {}};
    return groebner_basis(pres, ord);
  };
  SUBCASE("mixed vertical and horizontal parts") {
    // V(2y, yz) = V(y) union a vertical piece at 2; the closure of the
    // generic fibre keeps only V(y)
    auto gb = extended_gb({"2*y", "y*z"});
    CHECK(normal_form(Z("y", YZ), gb, ord).is_zero());
    CHECK_FALSE(normal_form(Z("z", YZ), gb, ord).is_zero());
    CHECK_FALSE(normal_form(Z("1", YZ), gb, ord).is_zero());
  }
  SUBCASE("purely vertical divisor extends to nothing") {
    // (2, y) contains the fibre locus entirely; its generic fibre is empty,
    // so the extension is the unit ideal
    auto gb = extended_gb({"2", "y"});
    CHECK(normal_form(Z("1", YZ), gb, ord).is_zero());
  }
}

TEST_CASE("torsion curve: no finite intersection at any relevant prime") {
  auto curve = Z(kTorsionCurve, XYZ);
  for (Int p : {Int(2), Int(3), Int(29), Int(163)}) {
    auto model = naive_plane_model(curve, p);
    auto lp = local_neron_pairing(torsion_D(), torsion_E(), model);
    CHECK(lp.value == 0);
    CHECK(lp.correction == 0);
  }
}

TEST_CASE("rank-1 curve: pairing is -3 log 2 at p = 2 and 0 elsewhere") {
  auto curve = Z(kRankOneCurve, XYZ);
  {
    auto model = naive_plane_model(curve, 2);
    auto lp = local_neron_pairing(rank1_D(), rank1_E(), model);
    CHECK(lp.value == -3);
    CHECK(lp.horizontal == -3);
    CHECK(lp.correction == 0);
  }
  for (Int p : {Int(3), Int(41), Int(347)}) {
    auto model = naive_plane_model(curve, p);
    auto lp = local_neron_pairing(rank1_D(), rank1_E(), model);
    CHECK(lp.value == 0);
  }
}

TEST_CASE("local pairing is symmetric and bilinear under divisor swap") {
  auto curve = Z(kRankOneCurve, XYZ);
  auto model = naive_plane_model(curve, 2);
  auto lp = local_neron_pairing(rank1_E(), rank1_D(), model);
  CHECK(lp.value == -3);
  // negating a divisor (swapping effective and anti-effective) flips the sign
  auto d = rank1_D();
  std::swap(d.charts[0].effective, d.charts[0].antieffective);
  auto lpn = local_neron_pairing(d, rank1_E(), model);
  CHECK(lpn.value == 3);
}

TEST_CASE("vertical correction solves the component system") {
  auto curve = Z(kRankOneCurve, XYZ);
  auto model = naive_plane_model(curve, 2);
  // synthetic two-component data on the fibre at 2 (for the linear algebra
  // only): components V(2, y), V(2, z+1) crossing the divisor differently
  model.components.push_back({"x1", {Z("2", YZ), Z("y", YZ)}, 1, {}});
  model.components.push_back({"x1", {Z("2", YZ), Z("z + 1", YZ)}, 1, {}});
  model.intersection_matrix = {{-2, 2}, {2, -2}};
  REQUIRE(validate_model(model).ok());
  // divisor meeting the first component at (0,0) and the second at (1,1),
  // so the component pairings are orthogonal to the multiplicities
  auto D = horizontal_extension(
      chart1_divisor("D", {"y", "z"}, {"y - 1", "z + 1"}), 2);
  auto b = component_pairings(D, model);
  auto phi = vertical_correction(D, model);
  REQUIRE(phi.coefficients.size() == 2);
  CHECK(phi.coefficients[0] == 0);
  // check M x = -b on each row
  for (size_t i = 0; i < 2; ++i) {
    Rat lhs = 0;
    for (size_t j = 0; j < 2; ++j)
      lhs += Rat(model.intersection_matrix[i][j]) * phi.coefficients[j];
    CHECK(lhs == -Rat(b[i]));
  }
}

TEST_CASE("divisors sharing a horizontal component are rejected") {
  auto curve = Z(kRankOneCurve, XYZ);
  auto model = naive_plane_model(curve, 2);
  auto d = rank1_D();
  DivisorSpec same = chart1_divisor("D2", {"y", "z + 1"}, {});
  CHECK_THROWS_AS(local_neron_pairing(d, same, model), CommonComponent);
}
