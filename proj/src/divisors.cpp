#include "neron/divisors.hpp"

#include <numeric>

namespace neron {

namespace {

Int gcd3(const Int& a, const Int& b, const Int& c) {
  return gcd(gcd(a, b), c);
}

struct ChartDef {
  const char* id;
  size_t unit;              // coordinate inverted on this chart
  size_t other[2];          // the two remaining coordinates, in variable order
  std::vector<std::string> vars;
};

const std::vector<ChartDef>& chart_defs() {
  static const std::vector<ChartDef> defs = {
      {"x1", 0, {1, 2}, {"y", "z"}},
      {"x2", 1, {0, 2}, {"x", "z"}},
      {"x3", 2, {0, 1}, {"x", "y"}},
  };
  return defs;
}

/// Vanishing ideal of the point on one chart: (u*v1 - c1, u*v2 - c2) with
/// content divided out.
std::vector<MultiPoly> point_ideal(const ProjPoint& pt, const ChartDef& cd) {
  const auto ring = CoefficientRing::Z();
  std::vector<MultiPoly> out;
  const Int& u = pt.c[cd.unit];
  for (size_t k = 0; k < 2; ++k) {
    Int a = u, b = -pt.c[cd.other[k]];
    Int g = gcd(a, b);
    if (g != 0) {
      a /= g;
      b /= g;
    }
    MultiPoly f(cd.vars, ring);
    Exponents e(2, 0);
    e[k] = 1;
    f.add_term(e, Rat(a));
    f.add_term(Exponents(2, 0), Rat(b));
    out.push_back(std::move(f));
  }
  return out;
}

/// All products of `mult` generators drawn from `gens` (with repetition):
/// generators of the `mult`-th power of the ideal.
void append_power(std::vector<std::vector<MultiPoly>>& factors,
                  const std::vector<MultiPoly>& gens, int mult) {
  for (int i = 0; i < mult; ++i) factors.push_back(gens);
}

std::vector<MultiPoly> expand_products(
    const std::vector<std::vector<MultiPoly>>& factors) {
  std::vector<MultiPoly> acc = {MultiPoly::constant(
      Rat(1), factors.front().front().vars(), CoefficientRing::Z())};
  for (const auto& gens : factors) {
    std::vector<MultiPoly> next;
    for (const auto& a : acc)
      for (const auto& g : gens) next.push_back(a * g);
    acc = std::move(next);
  }
  // drop duplicates from repeated factors (f*g and g*f)
  std::vector<MultiPoly> out;
  for (auto& f : acc) {
    bool seen = false;
    for (const auto& o : out)
      if (o == f) {
        seen = true;
        break;
      }
    if (!seen) out.push_back(std::move(f));
  }
  return out;
}

}  // namespace

namespace {

/// Dehomogenize the plane curve or a line onto one standard chart, over Q.
MultiPoly dehomogenize(const MultiPoly& f_xyz, const ChartDef& cd) {
  MultiPoly out(cd.vars, CoefficientRing::Q());
  for (const auto& [e, c] : f_xyz.terms()) {
    Exponents e2 = {e[cd.other[0]], e[cd.other[1]]};
    out.add_term(e2, c);
  }
  return out;
}

MultiPoly line_poly(const Line3& L) {
  MultiPoly f({"x", "y", "z"}, CoefficientRing::Q());
  const Exponents ex[3] = {{1, 0, 0}, {0, 1, 0}, {0, 0, 1}};
  for (size_t i = 0; i < 3; ++i)
    if (L[i] != 0) f.add_term(ex[i], Rat(L[i]));
  return f;
}

std::vector<MultiPoly> cleared(const std::vector<MultiPoly>& gens) {
  std::vector<MultiPoly> out;
  for (const auto& g : gens) {
    if (g.is_zero()) continue;
    out.push_back(g.cleared_denominators().lifted(g.vars(),
                                                  CoefficientRing::Z()));
  }
  return out;
}

/// Generators (over Z, denominators cleared) of the residual section
/// (line) : helper^inf in the chart's curve ring; full section when the
/// helper misses the chart.
std::vector<MultiPoly> residual_section(const MultiPoly& curve_xyz,
                                        const Line3& line, const Line3& helper,
                                        const ChartDef& cd) {
  MultiPoly lc = dehomogenize(line_poly(line), cd);
  if (lc.is_constant())
    throw std::invalid_argument("line section misses the chart entirely");
  MultiPoly hc = dehomogenize(line_poly(helper), cd);
  if (hc.is_constant()) return cleared({lc});
  IdealPresentation pres{cd.vars, CoefficientRing::Q(), {lc},
                         {dehomogenize(curve_xyz, cd)}};
  IdealPresentation sat = saturate(pres, hc);
  auto gens = cleared(sat.generators);
  if (gens.empty()) throw std::runtime_error("residual section is empty");
  return gens;
}

std::vector<MultiPoly> product_ideal(const std::vector<MultiPoly>& a,
                                     const std::vector<MultiPoly>& b) {
  std::vector<MultiPoly> out;
  for (const auto& f : a)
    for (const auto& g : b) out.push_back(f * g);
  return out;
}

}  // namespace

DivisorSpec moved_line_divisor(const std::string& label,
                               const MultiPoly& curve_xyz,
                               const LineMove& mv) {
  DivisorSpec d;
  d.label = label;
  for (const auto& cd : chart_defs()) {
    ChartIdeals ci;
    ci.chart = cd.id;
    auto plus_sec = cleared({dehomogenize(line_poly(mv.plus), cd)});
    auto minus_sec = cleared({dehomogenize(line_poly(mv.minus), cd)});
    ci.effective = product_ideal(
        plus_sec, residual_section(curve_xyz, mv.keep, mv.keep_helper, cd));
    ci.antieffective = product_ideal(
        minus_sec, residual_section(curve_xyz, mv.drop, mv.drop_helper, cd));
    d.charts.push_back(std::move(ci));
  }
  return d;
}

ProjPoint::ProjPoint(Int x, Int y, Int z) : c{std::move(x), std::move(y),
                                              std::move(z)} {
  Int g = gcd3(c[0], c[1], c[2]);
  if (g == 0) throw std::invalid_argument("zero projective tuple");
  for (auto& v : c) v /= g;
}

bool ProjPoint::on_curve(const MultiPoly& curve_xyz) const {
  Rat acc(0);
  for (const auto& [e, coef] : curve_xyz.terms()) {
    Rat t = coef;
    for (size_t i = 0; i < 3; ++i)
      for (int k = 0; k < e[i]; ++k) t *= Rat(c[i]);
    acc += t;
  }
  return acc == 0;
}

DivisorSpec points_divisor(const std::string& label,
                           const std::vector<std::pair<ProjPoint, int>>& pts) {
  DivisorSpec d;
  d.label = label;
  for (const auto& cd : chart_defs()) {
    std::vector<std::vector<MultiPoly>> eff, anti;
    for (const auto& [pt, mult] : pts) {
      if (mult == 0 || pt.c[cd.unit] == 0) continue;
      auto gens = point_ideal(pt, cd);
      append_power(mult > 0 ? eff : anti, gens, mult > 0 ? mult : -mult);
    }
    if (eff.empty() && anti.empty()) continue;
    ChartIdeals ci;
    ci.chart = cd.id;
    if (!eff.empty()) ci.effective = expand_products(eff);
    if (!anti.empty()) ci.antieffective = expand_products(anti);
    d.charts.push_back(std::move(ci));
  }
  return d;
}

}  // namespace neron
