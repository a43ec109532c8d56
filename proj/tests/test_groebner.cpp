#include "doctest.h"

#include "neron/groebner.hpp"

#include <random>

using namespace neron;

namespace {

const std::vector<std::string> XY = {"x", "y"};
const std::vector<std::string> YZ = {"y", "z"};

MultiPoly Z(const std::string& s, const std::vector<std::string>& v) {
  return MultiPoly::parse(s, v, CoefficientRing::Z());
}

IdealPresentation ideal_z(const std::vector<std::string>& vars,
                          std::vector<std::string> gens,
                          std::vector<std::string> rels = {}) {
  IdealPresentation p;
  p.vars = vars;
  p.ring = CoefficientRing::Z();
  for (const auto& g : gens) p.generators.push_back(Z(g, vars));
  for (const auto& r : rels) p.relations.push_back(Z(r, vars));
  return p;
}

// Brute-force cardinality of (Z/p^N)[vars]/I as a lattice index: monomials up
// to a degree cap, rows = truncation-safe multiples of generators plus p^N
// times every basis monomial, index = product of Hermite-form diagonal.
// Independent of the Gröbner path.
Int brute_force_quotient_size(const IdealPresentation& ring,
                              const IdealPresentation& ideal, const Int& p,
                              unsigned N, int cap) {
  const size_t nv = ring.vars.size();
  std::vector<Exponents> monomials;
  Exponents m(nv, 0);
  for (;;) {
    if (total_degree(m) <= cap) monomials.push_back(m);
    size_t i = 0;
    while (i < nv) {
      if (++m[i] <= cap) break;
      m[i] = 0;
      ++i;
    }
    if (i == nv) break;
  }
  auto index_of = [&](const Exponents& e) -> long {
    for (size_t i = 0; i < monomials.size(); ++i)
      if (monomials[i] == e) return long(i);
    return -1;
  };
  std::vector<MultiPoly> gens;
  for (const auto& g : ring.relations) gens.push_back(g);
  for (const auto& g : ring.generators) gens.push_back(g);
  for (const auto& g : ideal.relations) gens.push_back(g);
  for (const auto& g : ideal.generators) gens.push_back(g);

  std::vector<std::vector<Int>> rows;
  Int pn = ipow(p, N);
  for (const auto& g : gens) {
    for (const auto& shift : monomials) {
      if (total_degree(shift) + g.degree() > cap) continue;
      std::vector<Int> row(monomials.size(), Int(0));
      bool fits = true;
      for (const auto& [e, c] : g.terms()) {
        long idx = index_of(exp_add(e, shift));
        if (idx < 0) {
          fits = false;
          break;
        }
        row[size_t(idx)] += num(c);
      }
      if (fits) rows.push_back(std::move(row));
    }
  }
  for (size_t i = 0; i < monomials.size(); ++i) {
    std::vector<Int> row(monomials.size(), Int(0));
    row[i] = pn;
    rows.push_back(std::move(row));
  }
  // Hermite-ish elimination: for each column, gcd the pivots down.
  size_t rank = 0;
  Int det = 1;
  for (size_t c = 0; c < monomials.size() && rank < rows.size(); ++c) {
    for (size_t r = rank + 1; r < rows.size(); ++r) {
      while (rows[r][c] != 0) {
        if (rows[rank][c] == 0) {
          std::swap(rows[rank], rows[r]);
          continue;
        }
        Int q = fdiv_q(rows[r][c], rows[rank][c]);
        for (size_t k = c; k < monomials.size(); ++k)
          rows[r][k] -= q * rows[rank][k];
        if (rows[r][c] != 0) std::swap(rows[rank], rows[r]);
      }
    }
    if (rows[rank][c] != 0) {
      det *= boost::multiprecision::abs(rows[rank][c]);
      ++rank;
    }
  }
  return det;
}

}  // namespace

TEST_CASE("groebner over Q: (x, y) is already a basis") {
  IdealPresentation p;
  p.vars = XY;
  p.ring = CoefficientRing::Q();
  p.generators = {MultiPoly::parse("x", XY, p.ring),
                  MultiPoly::parse("y", XY, p.ring)};
  auto gb = groebner_basis(p, MonomialOrder::Degrevlex());
  REQUIRE(gb.size() == 2);
  CHECK(gb[0] == MultiPoly::parse("y", XY, p.ring));
  CHECK(gb[1] == MultiPoly::parse("x", XY, p.ring));
}

TEST_CASE("strong basis over Z: (2x-2, 3x-3)") {
  auto p = ideal_z(XY, {"2*x - 2", "3*x - 3"});
  auto gb = groebner_basis(p, MonomialOrder::Degrevlex());
  auto ord = MonomialOrder::Degrevlex();
  CHECK(normal_form(Z("x - 1", XY), gb, ord).is_zero());
  CHECK(normal_form(Z("x", XY), gb, ord) == Z("1", XY));
}

TEST_CASE("normal form is idempotent and linear") {
  auto p = ideal_z(XY, {"2*x + y", "y^2 - 3"});
  auto gb = groebner_basis(p, MonomialOrder::Degrevlex());
  auto ord = MonomialOrder::Degrevlex();
  std::mt19937 rng(7);
  std::uniform_int_distribution<int> coef(-9, 9), ex(0, 3);
  for (int trial = 0; trial < 20; ++trial) {
    MultiPoly f(XY, CoefficientRing::Z()), g(XY, CoefficientRing::Z());
    for (int t = 0; t < 5; ++t) {
      f.add_term({ex(rng), ex(rng)}, coef(rng));
      g.add_term({ex(rng), ex(rng)}, coef(rng));
    }
    auto nf = normal_form(f, gb, ord);
    CHECK(normal_form(nf, gb, ord) == nf);
    auto sum = normal_form(f + g, gb, ord);
    CHECK(sum == normal_form(normal_form(f, gb, ord) + normal_form(g, gb, ord),
                             gb, ord));
  }
}

TEST_CASE("saturation removes p-torsion") {
  auto ord = MonomialOrder::Degrevlex();
  SUBCASE("(p x, y) : p^inf = (x, y)") {
    auto p = ideal_z(XY, {"5*x", "y"});
    auto sat = saturate(p, Z("5", XY));
    auto gb = groebner_basis(sat, ord);
    CHECK(normal_form(Z("x", XY), gb, ord).is_zero());
    CHECK(normal_form(Z("y", XY), gb, ord).is_zero());
    CHECK_FALSE(normal_form(Z("1", XY), gb, ord).is_zero());
  }
  SUBCASE("already saturated ideal is unchanged") {
    auto p = ideal_z(XY, {"x", "y"});
    auto sat = saturate(p, Z("5", XY));
    auto gb1 = groebner_basis(p, ord);
    auto gb2 = groebner_basis(sat, ord);
    for (const auto& g : gb1) CHECK(normal_form(g, gb2, ord).is_zero());
    for (const auto& g : gb2) CHECK(normal_form(g, gb1, ord).is_zero());
  }
  SUBCASE("idempotence") {
    auto p = ideal_z(XY, {"10*x^2 - 5*y", "4*y^2"});
    auto s1 = saturate(p, Z("2", XY));
    auto s2 = saturate(s1, Z("2", XY));
    auto gb1 = groebner_basis(s1, ord);
    auto gb2 = groebner_basis(s2, ord);
    for (const auto& g : gb1) CHECK(normal_form(g, gb2, ord).is_zero());
    for (const auto& g : gb2) CHECK(normal_form(g, gb1, ord).is_zero());
  }
}

TEST_CASE("gb_integer") {
  CHECK(*gb_integer(ideal_z(XY, {"6", "x"})) == 6);
  CHECK(!gb_integer(ideal_z(XY, {"x", "y"})).has_value());
  CHECK(*gb_integer(ideal_z(XY, {"2*x - 2", "3*x - 3", "x^2 - 4"})) == 3);
}

TEST_CASE("quotient_log_length basics") {
  IdealPresentation zx{{"x"}, CoefficientRing::Z(), {}, {}};
  SUBCASE("Z[x]/(x^2, x+p) has length 2 at p") {
    for (Int p : {Int(2), Int(5), Int(13)}) {
      auto ideal = ideal_z({"x"}, {});
      ideal.generators = {Z("x^2", {"x"}),
                          Z("x + " + p.str(), {"x"})};
      CHECK(quotient_log_length(zx, ideal, p, 5) == 2);
      CHECK(brute_force_quotient_size(zx, ideal, p, 5, 8) == p * p);
    }
  }
  SUBCASE("coprime ideals give 0") {
    auto ideal = ideal_z(XY, {"x", "y", "x + y + 1"});
    IdealPresentation ring{XY, CoefficientRing::Z(), {}, {}};
    CHECK(quotient_log_length(ring, ideal, 3, 4) == 0);
  }
  SUBCASE("common component is detected") {
    auto ideal = ideal_z(XY, {"x"});
    IdealPresentation ring{XY, CoefficientRing::Z(), {}, {}};
    CHECK_THROWS_AS(quotient_log_length(ring, ideal, 3, 4),
                    QuotientNotFinite);
  }
  SUBCASE("insufficient precision is loud") {
    auto ideal = ideal_z({"x"}, {"x^2", "x + 2"});
    CHECK_THROWS_AS(quotient_log_length(zx, ideal, 2, 2),
                    InsufficientPrecision);
  }
}

TEST_CASE("rank-1 curve chart: iota(D1, E2) length is 1 at p = 2") {
  // R = Z[y,z]/(y^2 - y^3 - z - 2z^2 - y^2 z^2 - z^3 - y z^3)
  IdealPresentation ring{
      YZ,
      CoefficientRing::Z(),
      {},
      {Z("y^2 - y^3 - z - 2*z^2 - y^2*z^2 - z^3 - y*z^3", YZ)}};
  auto ideal = ideal_z(YZ, {"y", "z + 1", "y - 4", "z + 3"});
  CHECK(quotient_log_length(ring, ideal, 2, 3) == 1);
  // and the quotient is trivial away from 2
  CHECK(quotient_log_length(ring, ideal, 3, 3) == 0);
  CHECK(quotient_log_length(ring, ideal, 5, 3) == 0);
}

TEST_CASE("length is additive over comaximal factors") {
  IdealPresentation zx{{"x"}, CoefficientRing::Z(), {}, {}};
  // I = (x, p^2), J = (x - 1, p): I + J = (1); I cap J = product
  Int p = 3;
  auto i1 = ideal_z({"x"}, {"x", "9"});
  auto i2 = ideal_z({"x"}, {"x - 1", "3"});
  auto prod = ideal_z({"x"}, {});
  for (const auto& a : i1.generators)
    for (const auto& b : i2.generators) prod.generators.push_back(a * b);
  unsigned l1 = quotient_log_length(zx, i1, p, 6);
  unsigned l2 = quotient_log_length(zx, i2, p, 6);
  unsigned lp = quotient_log_length(zx, prod, p, 6);
  CHECK(l1 == 2);
  CHECK(l2 == 1);
  CHECK(lp == l1 + l2);
}

namespace {

// Sylvester resultant of two univariate integer polynomials given as
// little-endian coefficient vectors.
Int resultant(const std::vector<Int>& f, const std::vector<Int>& g) {
  size_t m = f.size() - 1, n = g.size() - 1;
  size_t dim = m + n;
  std::vector<std::vector<Rat>> a(dim, std::vector<Rat>(dim, Rat(0)));
  for (size_t r = 0; r < n; ++r)
    for (size_t j = 0; j <= m; ++j) a[r][r + j] = Rat(f[m - j]);
  for (size_t r = 0; r < m; ++r)
    for (size_t j = 0; j <= n; ++j) a[n + r][r + j] = Rat(g[n - j]);
  Rat det = 1;
  for (size_t c = 0; c < dim; ++c) {
    size_t piv = c;
    while (piv < dim && a[piv][c] == 0) ++piv;
    if (piv == dim) return 0;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    for (size_t r = c + 1; r < dim; ++r) {
      Rat q = a[r][c] / a[c][c];
      for (size_t k = c; k < dim; ++k) a[r][k] -= q * a[c][k];
    }
  }
  return num(det) / den(det);
}

}  // namespace

// For monic coprime f, g in Z[x] the quotient Z[x]/(f, g) has |Res(f, g)|
// elements, so its log-length at p is v_p of the resultant.  This gives an
// oracle entirely independent of the Groebner machinery.
TEST_CASE("quotient log-length equals resultant valuation for monic pairs") {
  std::mt19937 rng(42);
  std::uniform_int_distribution<int> coef(-6, 6), deg(2, 3), pick(0, 2);
  const Int ps[3] = {Int(2), Int(3), Int(5)};
  const std::vector<std::string> X = {"x"};
  IdealPresentation zx{X, CoefficientRing::Z(), {}, {}};
  int checked = 0;
  for (int trial = 0; trial < 200 && checked < 80; ++trial) {
    Int p = ps[size_t(pick(rng))];
    auto rnd_monic = [&](int d) {
      std::vector<Int> c(size_t(d) + 1);
      for (int i = 0; i < d; ++i) c[size_t(i)] = coef(rng);
      c[size_t(d)] = 1;
      return c;
    };
    auto fc = rnd_monic(deg(rng)), gc = rnd_monic(deg(rng));
    Int res = resultant(fc, gc);
    if (res == 0) continue;
    unsigned expect = unsigned(valuation(boost::multiprecision::abs(res), p));
    auto to_poly = [&](const std::vector<Int>& c) {
      MultiPoly f(X, CoefficientRing::Z());
      for (size_t i = 0; i < c.size(); ++i) f.add_term({int(i)}, Rat(c[i]));
      return f;
    };
    IdealPresentation ideal{X, CoefficientRing::Z(), {}, {}};
    ideal.generators = {to_poly(fc), to_poly(gc)};
    CHECK(quotient_log_length(zx, ideal, p, expect + 2) == expect);
    ++checked;
  }
  CHECK(checked >= 80);
}

TEST_CASE("infinite quotient at p is reported as such, not as precision") {
  // Z[x]/(x^2 - 6) localized at 3 is a discrete valuation ring: infinite
  // length, and no amount of p-adic precision changes that.
  IdealPresentation zx{{"x"}, CoefficientRing::Z(), {}, {}};
  auto ideal = ideal_z({"x"}, {"x^2 - 6"});
  CHECK_THROWS_AS(quotient_log_length(zx, ideal, 3, 6), QuotientNotFinite);
}
