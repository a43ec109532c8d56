#include "neron/model.hpp"

#include "neron/groebner.hpp"

#include <algorithm>

namespace neron {

namespace {

Int eval_mod(const MultiPoly& f, const std::vector<Int>& point, const Int& m) {
  Int acc = 0;
  for (const auto& [e, c] : f.terms()) {
    Int t = fdiv_r(num(c), m);
    for (size_t i = 0; i < e.size(); ++i)
      for (int k = 0; k < e[i]; ++k) t = fdiv_r(t * point[i], m);
    acc = fdiv_r(acc + t, m);
  }
  return acc;
}

}  // namespace

bool ConstructibleSet::contains(const std::vector<Int>& point,
                                const Int& modulus) const {
  switch (kind) {
    case closed:
      for (const auto& g : generators)
        if (eval_mod(g, point, modulus) != 0) return false;
      return true;
    case difference:
      return parts[0].contains(point, modulus) &&
             !parts[1].contains(point, modulus);
    case disjoint_union:
      for (const auto& p : parts)
        if (p.contains(point, modulus)) return true;
      return false;
  }
  return false;
}

const Chart& ChartedModel::chart_by_id(const std::string& id) const {
  for (const auto& c : charts)
    if (c.id == id) return c;
  throw std::invalid_argument("unknown chart id " + id);
}

ValidationReport validate_model(const ChartedModel& m) {
  ValidationReport rep;
  const size_t n = m.components.size();
  if (m.intersection_matrix.size() != n) {
    rep.failures.push_back(
        {"matrix-shape", "intersection matrix size does not match components"});
    return rep;
  }
  for (const auto& row : m.intersection_matrix)
    if (row.size() != n) {
      rep.failures.push_back({"matrix-shape", "non-square intersection matrix"});
      return rep;
    }
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (m.intersection_matrix[i][j] != m.intersection_matrix[j][i]) {
        rep.failures.push_back(
            {"matrix-symmetry", "M[" + std::to_string(i) + "][" +
                                    std::to_string(j) + "] != transpose"});
      }
  for (size_t i = 0; i < n; ++i) {
    Int s = 0;
    for (size_t j = 0; j < n; ++j)
      s += m.intersection_matrix[i][j] * Int(m.components[j].multiplicity);
    if (s != 0)
      rep.failures.push_back(
          {"matrix-kernel",
           "row " + std::to_string(i) + " of M * multiplicities = " + s.str()});
  }
  for (size_t i = 0; i < n; ++i) {
    const auto& comp = m.components[i];
    const Chart& ch = m.chart_by_id(comp.chart);
    IdealPresentation pres{ch.vars, CoefficientRing::Z(), comp.generators,
                           ch.relations};
    auto c = gb_integer(pres);
    if (!c || m.p % *c != 0)
      rep.failures.push_back(
          {"component-contains-p",
           "component " + std::to_string(i) + " ideal does not contain p"});
  }
  if (m.charts.size() != m.partition.size())
    rep.failures.push_back(
        {"partition-shape", "partition size does not match chart count"});
  return rep;
}

std::vector<ConstructibleSet> partition_from_cover(
    const std::vector<ChartWithOverlaps>& charts) {
  std::vector<ConstructibleSet> out;
  for (size_t i = 0; i < charts.size(); ++i) {
    if (charts[i].overlap_complements.size() != i)
      throw std::invalid_argument(
          "chart " + std::to_string(i) + " must carry one overlap entry per "
          "earlier chart");
    std::vector<MultiPoly> gens;
    for (const auto& comp : charts[i].overlap_complements)
      for (const auto& g : comp) gens.push_back(g);
    out.push_back(ConstructibleSet::Closed(std::move(gens)));
  }
  return out;
}

ChartedModel naive_plane_model(const MultiPoly& curve_xyz, const Int& p) {
  if (curve_xyz.nvars() != 3)
    throw std::invalid_argument("expected a plane projective equation");
  const auto ring = CoefficientRing::Z();
  auto dehomogenize = [&](size_t unit_var, const std::vector<std::string>& vars)
      -> MultiPoly {
    MultiPoly f(vars, ring);
    for (const auto& [e, c] : curve_xyz.terms()) {
      Exponents e2;
      for (size_t i = 0; i < 3; ++i)
        if (i != unit_var) e2.push_back(e[i]);
      f.add_term(e2, c);
    }
    return f;
  };

  ChartedModel m;
  m.p = p;
  std::vector<std::string> v1 = {"y", "z"}, v2 = {"x", "z"}, v3 = {"x", "y"};
  m.charts.push_back({"x1", v1, {dehomogenize(0, v1)}, "X != 0"});
  m.charts.push_back({"x2", v2, {dehomogenize(1, v2)}, "Y != 0"});
  m.charts.push_back({"x3", v3, {dehomogenize(2, v3)}, "Z != 0"});
  m.partition.push_back(ConstructibleSet::Closed({}));
  m.partition.push_back(ConstructibleSet::Closed(
      {MultiPoly::variable("x", v2, ring)}));
  m.partition.push_back(ConstructibleSet::Closed(
      {MultiPoly::variable("x", v3, ring),
       MultiPoly::variable("y", v3, ring)}));
  return m;
}

namespace {

// dense univariate arithmetic over F_p, little-endian coefficients
using UPoly = std::vector<Int>;

void utrim(UPoly& f) {
  while (!f.empty() && f.back() == 0) f.pop_back();
}

UPoly umul_mod(const UPoly& a, const UPoly& b, const UPoly& mod, const Int& p) {
  UPoly r(a.size() + b.size(), Int(0));
  for (size_t i = 0; i < a.size(); ++i)
    for (size_t j = 0; j < b.size(); ++j)
      r[i + j] = fdiv_r(r[i + j] + a[i] * b[j], p);
  // reduce modulo `mod` (monic)
  while (r.size() >= mod.size() && !mod.empty()) {
    utrim(r);
    if (r.size() < mod.size()) break;
    Int c = r.back();
    size_t shift = r.size() - mod.size();
    for (size_t i = 0; i < mod.size(); ++i)
      r[shift + i] = fdiv_r(r[shift + i] - c * mod[i], p);
  }
  utrim(r);
  return r;
}

UPoly upow_xq_mod(const Int& q, const UPoly& mod, const Int& p) {
  // x^q mod (mod)
  UPoly result = {Int(1)}, base = {Int(0), Int(1)};
  Int e = q;
  base = umul_mod(base, {Int(1)}, mod, p);
  while (e > 0) {
    if (fdiv_r(e, 2) == 1) result = umul_mod(result, base, mod, p);
    base = umul_mod(base, base, mod, p);
    e = fdiv_q(e, 2);
  }
  return result;
}

UPoly ugcd(UPoly a, UPoly b, const Int& p) {
  utrim(a);
  utrim(b);
  auto inv_mod = [&](const Int& x) {
    Int u, v;
    ext_gcd(fdiv_r(x, p), p, u, v);
    return fdiv_r(u, p);
  };
  while (!b.empty()) {
    // a mod b
    Int inv = inv_mod(b.back());
    while (a.size() >= b.size()) {
      Int c = fdiv_r(a.back() * inv, p);
      size_t shift = a.size() - b.size();
      for (size_t i = 0; i < b.size(); ++i)
        a[shift + i] = fdiv_r(a[shift + i] - c * b[i], p);
      utrim(a);
      if (a.empty()) break;
    }
    std::swap(a, b);
  }
  return a;
}

bool uirreducible(UPoly f, const Int& p) {
  utrim(f);
  if (f.size() < 2) return false;
  size_t d = f.size() - 1;
  // make monic
  Int u, v;
  ext_gcd(f.back(), p, u, v);
  Int inv = fdiv_r(u, p);
  for (auto& c : f) c = fdiv_r(c * inv, p);
  // x^(p^i) - x coprime to f for i <= d/2, and x^(p^d) = x mod f
  Int q = 1;
  UPoly xq = {Int(0), Int(1)};
  for (size_t i = 1; i <= d; ++i) {
    q *= p;
    xq = upow_xq_mod(q, f, p);
    UPoly diff = xq;
    if (diff.size() < 2) diff.resize(2, Int(0));
    diff[1] = fdiv_r(diff[1] - 1, p);
    utrim(diff);
    if (i <= d / 2) {
      UPoly g = ugcd(diff, f, p);
      if (g.size() > 1) return false;
    } else if (i == d) {
      if (!diff.empty()) return false;
    }
  }
  return true;
}

}  // namespace

bool fibre_irreducible_heuristic(const MultiPoly& affine_eq, const Int& p) {
  // f in two variables; specialize the first variable and test the second
  if (affine_eq.nvars() != 2) return false;
  for (int swap = 0; swap < 2; ++swap) {
    size_t sv = swap ? 1 : 0, pv = 1 - sv;
    int dz = 0, dx = 0;
    for (const auto& [e, c] : affine_eq.terms()) {
      dz = std::max(dz, e[pv]);
      dx = std::max(dx, e[sv]);
    }
    if (dz < 1) continue;
    // rule out a content factor in the specialized variable
    std::vector<UPoly> coeffs(size_t(dz) + 1, UPoly(size_t(dx) + 1, Int(0)));
    for (const auto& [e, c] : affine_eq.terms())
      coeffs[size_t(e[pv])][size_t(e[sv])] =
          fdiv_r(coeffs[size_t(e[pv])][size_t(e[sv])] + num(c), p);
    UPoly content;
    for (auto& cp : coeffs) content = ugcd(content, cp, p);
    if (content.size() > 1) continue;
    Int limit = std::min(Int(40), p);
    for (Int c0 = 0; c0 < limit; ++c0) {
      UPoly f(size_t(dz) + 1, Int(0));
      for (const auto& [e, c] : affine_eq.terms()) {
        Int t = fdiv_r(num(c), p);
        for (int k = 0; k < e[sv]; ++k) t = fdiv_r(t * c0, p);
        f[size_t(e[pv])] = fdiv_r(f[size_t(e[pv])] + t, p);
      }
      if (f.size() && f.back() == 0) continue;  // degree dropped
      if (uirreducible(f, p)) return true;
    }
  }
  return false;
}

}  // namespace neron
