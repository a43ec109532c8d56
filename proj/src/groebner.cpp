#include "neron/groebner.hpp"

#include <algorithm>
#include <deque>

namespace neron {

namespace {

bool is_field(const CoefficientRing& r) { return r.kind == RingKind::rationals; }

// Normalize sign / make monic; returns false for the zero polynomial.
bool normalize(MultiPoly& f, const MonomialOrder& ord) {
  if (f.is_zero()) return false;
  auto [m, c] = f.leading_term(ord);
  if (is_field(f.ring())) {
    if (c != 1) f = f.scaled(Rat(1) / c);
  } else if (c < 0) {
    f = f.scaled(-1);
  }
  return true;
}

struct Pair {
  size_t i, j;
  Exponents lcm;
  int sugar;
};

int sugar_of(const MultiPoly& f) { return f.degree(); }

}  // namespace

MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis,
                      const MonomialOrder& ord) {
  MultiPoly r = f;
  MultiPoly out(f.vars(), f.ring());
  const bool field = is_field(f.ring());
  while (!r.is_zero()) {
    auto [m, c] = r.leading_term(ord);
    // pick the reducer leaving the smallest canonical residue
    const MultiPoly* best = nullptr;
    Rat best_res;
    Int best_q;
    for (const auto& g : basis) {
      if (g.is_zero()) continue;
      auto [gm, gc] = g.leading_term(ord);
      if (!divides(gm, m)) continue;
      if (field) {
        best = &g;
        best_res = 0;
        break;
      }
      Int res = fdiv_r(num(c), num(gc));
      if (!best || res < num(best_res)) {
        best = &g;
        best_res = Rat(res);
        best_q = fdiv_q(num(c), num(gc));
        if (res == 0) break;
      }
    }
    if (!best) {
      out.add_term(m, c);
      r.add_term(m, -c);
      continue;
    }
    auto [gm, gc] = best->leading_term(ord);
    if (field) {
      r = r - best->times_term(c / gc, exp_sub(m, gm));
    } else {
      if (best_q == 0) {
        // coefficient cannot shrink further; the term is irreducible
        out.add_term(m, c);
        r.add_term(m, -c);
        continue;
      }
      r = r - best->times_term(Rat(best_q), exp_sub(m, gm));
    }
  }
  return out;
}

bool in_ideal(const MultiPoly& f, const std::vector<MultiPoly>& basis,
              const MonomialOrder& ord) {
  return normal_form(f, basis, ord).is_zero();
}

std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens,
                                      const MonomialOrder& ord) {
  if (gens.empty()) return {};
  const CoefficientRing ring = gens.front().ring();
  if (ring.kind == RingKind::integers_mod_p_power)
    throw UnsupportedRing();  // callers lift to Z and adjoin p^N instead
  const bool field = is_field(ring);

  std::vector<MultiPoly> basis;
  for (auto g : gens)
    if (normalize(g, ord)) basis.push_back(std::move(g));

  std::deque<Pair> queue;
  auto push_pairs = [&](size_t k) {
    auto [mk, ck] = basis[k].leading_term(ord);
    for (size_t i = 0; i < k; ++i) {
      auto [mi, ci] = basis[i].leading_term(ord);
      Exponents l = exp_lcm(mi, mk);
      // product criterion; over Z only safe when both leads are unit-monic
      if (total_degree(l) == total_degree(mi) + total_degree(mk) &&
          (field || (ci == 1 && ck == 1)))
        continue;
      int sug = std::max(sugar_of(basis[i]) + total_degree(l) - total_degree(mi),
                         sugar_of(basis[k]) + total_degree(l) - total_degree(mk));
      queue.push_back({i, k, l, sug});
    }
  };
  for (size_t k = 0; k < basis.size(); ++k) push_pairs(k);

  auto add_candidate = [&](MultiPoly h) {
    h = normal_form(h, basis, ord);
    if (!normalize(h, ord)) return;
    basis.push_back(std::move(h));
    push_pairs(basis.size() - 1);
  };

  while (!queue.empty()) {
    // sugar-cube selection: min sugar, then min lcm degree
    auto best = queue.begin();
    for (auto it = std::next(queue.begin()); it != queue.end(); ++it) {
      if (it->sugar < best->sugar ||
          (it->sugar == best->sugar &&
           total_degree(it->lcm) < total_degree(best->lcm)))
        best = it;
    }
    Pair p = *best;
    queue.erase(best);

    // copies: add_candidate may grow `basis` and invalidate references
    const MultiPoly f = basis[p.i], g = basis[p.j];
    auto [mf, cf] = f.leading_term(ord);
    auto [mg, cg] = g.leading_term(ord);
    Exponents ef = exp_sub(p.lcm, mf), eg = exp_sub(p.lcm, mg);

    if (field) {
      add_candidate(f.times_term(Rat(1) / cf, ef) -
                    g.times_term(Rat(1) / cg, eg));
    } else {
      Int l = lcm(num(cf), num(cg));
      add_candidate(f.times_term(Rat(l / num(cf)), ef) -
                    g.times_term(Rat(l / num(cg)), eg));
      if (num(cg) % num(cf) != 0 && num(cf) % num(cg) != 0) {
        Int u, v;
        Int d = ext_gcd(num(cf), num(cg), u, v);
        (void)d;
        add_candidate(f.times_term(Rat(u), ef) + g.times_term(Rat(v), eg));
      }
    }
  }

  // inter-reduce for a canonical-ish, smaller basis
  bool changed = true;
  while (changed) {
    changed = false;
    for (size_t i = 0; i < basis.size(); ++i) {
      MultiPoly g = basis[i];
      std::vector<MultiPoly> rest;
      rest.reserve(basis.size() - 1);
      for (size_t j = 0; j < basis.size(); ++j)
        if (j != i) rest.push_back(basis[j]);
      MultiPoly r = normal_form(g, rest, ord);
      if (!(r == g)) {
        changed = true;
        if (r.is_zero()) {
          basis.erase(basis.begin() + long(i));
          --i;
        } else {
          normalize(r, ord);
          basis[i] = std::move(r);
        }
      }
    }
  }
  std::sort(basis.begin(), basis.end(),
            [&](const MultiPoly& a, const MultiPoly& b) {
              return ord.cmp(a.leading_term(ord).first,
                             b.leading_term(ord).first) < 0;
            });
  return basis;
}

std::vector<MultiPoly> groebner_basis(const IdealPresentation& ideal,
                                      const MonomialOrder& ord) {
  return groebner_basis(ideal.all_polys(), ord);
}

IdealPresentation saturate(const IdealPresentation& ideal, const MultiPoly& f) {
  if (f.is_zero()) throw std::invalid_argument("saturation by zero");
  std::vector<std::string> ext_vars;
  ext_vars.push_back("_t");
  for (const auto& v : ideal.vars) {
    if (v == "_t") throw std::invalid_argument("variable name _t is reserved");
    ext_vars.push_back(v);
  }
  CoefficientRing work = ideal.ring;
  bool mod_pn = work.kind == RingKind::integers_mod_p_power;
  CoefficientRing lift_ring = mod_pn ? CoefficientRing::Z() : work;

  std::vector<MultiPoly> gens;
  for (const auto& g : ideal.all_polys())
    gens.push_back(g.lifted(ext_vars, lift_ring));
  MultiPoly t = MultiPoly::variable("_t", ext_vars, lift_ring);
  gens.push_back(t * f.lifted(ext_vars, lift_ring) -
                 MultiPoly::constant(1, ext_vars, lift_ring));
  if (mod_pn)
    gens.push_back(MultiPoly::constant(Rat(work.modulus()), ext_vars, lift_ring));

  auto gb = groebner_basis(gens, MonomialOrder::Block(1));

  IdealPresentation out;
  out.vars = ideal.vars;
  out.ring = ideal.ring;
  out.relations = ideal.relations;
  for (const auto& g : gb) {
    bool has_t = false;
    for (const auto& [e, c] : g.terms())
      if (e[0] != 0) {
        has_t = true;
        break;
      }
    if (has_t) continue;
    MultiPoly h(ideal.vars, ideal.ring);
    for (const auto& [e, c] : g.terms())
      h.add_term(Exponents(e.begin() + 1, e.end()), c);
    if (!h.is_zero()) out.generators.push_back(std::move(h));
  }
  return out;
}

std::optional<Int> gb_integer(const IdealPresentation& ideal) {
  if (ideal.ring.kind != RingKind::integers) throw UnsupportedRing();
  auto gb = groebner_basis(ideal, MonomialOrder::Degrevlex());
  Int g = 0;
  for (const auto& b : gb)
    if (b.is_constant() && !b.is_zero()) g = gcd(g, num(b.constant_value()));
  if (g == 0) return std::nullopt;
  return g;
}

unsigned quotient_log_length(const IdealPresentation& ring,
                             const IdealPresentation& ideal, const Int& p,
                             unsigned precision) {
  if (precision < 1) throw std::invalid_argument("precision must be >= 1");
  const auto& vars = ring.vars;
  CoefficientRing work = CoefficientRing::ZmodPN(p, precision);
  std::vector<MultiPoly> gens;
  auto take = [&](const std::vector<MultiPoly>& v) {
    for (const auto& g : v) gens.push_back(g.lifted(vars, CoefficientRing::Z()));
  };
  take(ring.relations);
  take(ring.generators);
  take(ideal.relations);
  take(ideal.generators);
  gens.push_back(
      MultiPoly::constant(Rat(work.modulus()), vars, CoefficientRing::Z()));

  MonomialOrder ord = MonomialOrder::Degrevlex();
  auto gb = groebner_basis(gens, ord);

  struct Lead {
    Exponents m;
    unsigned k;  // p-adic valuation of the leading coefficient, capped at N
  };
  std::vector<Lead> leads;
  for (const auto& g : gb) {
    auto [m, c] = g.leading_term(ord);
    Int n = num(c);
    unsigned k = 0;
    while (k < precision && n % p == 0) {
      n /= p;
      ++k;
    }
    leads.push_back({m, k});
  }

  const size_t nv = vars.size();
  // Finiteness: the unit-lead monomial ideal must contain a pure power of
  // every variable (or a unit constant).
  std::vector<int> bound(nv, -1);
  bool unit_constant = false;
  for (const auto& l : leads) {
    if (l.k != 0) continue;
    if (total_degree(l.m) == 0) unit_constant = true;
    int nz = -1;
    bool pure = true;
    for (size_t i = 0; i < nv; ++i) {
      if (l.m[i] == 0) continue;
      if (nz >= 0) {
        pure = false;
        break;
      }
      nz = int(i);
    }
    if (pure && nz >= 0)
      bound[size_t(nz)] = bound[size_t(nz)] < 0
                              ? l.m[size_t(nz)]
                              : std::min(bound[size_t(nz)], l.m[size_t(nz)]);
  }
  if (unit_constant) return 0;
  for (size_t i = 0; i < nv; ++i)
    if (bound[i] < 0) throw QuotientNotFinite();

  // enumerate the box, skipping monomials under the unit-lead ideal
  unsigned total = 0;
  Exponents m(nv, 0);
  auto k_of = [&](const Exponents& mm) {
    unsigned k = precision;  // no reducer at all: a full Z/p^N factor
    for (const auto& l : leads)
      if (divides(l.m, mm)) k = std::min(k, l.k);
    return k;
  };
  // Distinguish "the quotient has a free part, no precision will do" from
  // "raise N": the quotient is p-power torsion iff the ideal is the unit
  // ideal over Q.
  auto torsion_over_q = [&]() {
    std::vector<MultiPoly> qgens;
    for (size_t i = 0; i + 1 < gens.size(); ++i)  // drop the adjoined p^N
      qgens.push_back(gens[i].lifted(vars, CoefficientRing::Q()));
    auto qgb = groebner_basis(qgens, ord);
    return qgb.size() == 1 && qgb[0].degree() == 0;
  };
  for (;;) {
    unsigned k = k_of(m);
    if (k >= precision) {
      if (!torsion_over_q()) throw QuotientNotFinite();
      throw InsufficientPrecision();
    }
    total += k;
    size_t i = 0;
    while (i < nv) {
      if (++m[i] < bound[i]) break;
      m[i] = 0;
      ++i;
    }
    if (i == nv) break;
  }
  return total;
}

}  // namespace neron
