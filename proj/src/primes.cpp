#include "neron/primes.hpp"

#include <algorithm>

namespace neron {

namespace {

using Clock = std::chrono::steady_clock;

Int pollard_brent(const Int& n, unsigned long seed) {
  // Brent's cycle variant of Pollard rho; returns a nontrivial factor or 0.
  if (n % 2 == 0) return 2;
  Int y = 2 + Int(seed % 1000), c = 1 + Int(seed / 1000 % 1000), m = 128;
  Int g = 1, r = 1, q = 1, x = 0, ys = 0;
  auto f = [&](const Int& v) { return fdiv_r(v * v + c, n); };
  while (g == 1) {
    x = y;
    for (Int i = 0; i < r; ++i) y = f(y);
    Int k = 0;
    while (k < r && g == 1) {
      ys = y;
      Int lim = m < r - k ? m : r - k;
      for (Int i = 0; i < lim; ++i) {
        y = f(y);
        q = fdiv_r(q * boost::multiprecision::abs(x - y), n);
      }
      g = gcd(q, n);
      k += m;
    }
    r *= 2;
  }
  if (g == n) {
    g = 1;
    while (g == 1) {
      ys = f(ys);
      g = gcd(boost::multiprecision::abs(x - ys), n);
    }
  }
  return (g == n) ? Int(0) : g;
}

void factor_into(Int n, Factorization& out, Clock::time_point deadline) {
  if (n == 1) return;
  if (probably_prime(n)) {
    for (auto& [p, e] : out.prime_powers)
      if (p == n) {
        ++e;
        return;
      }
    out.prime_powers.push_back({n, 1});
    return;
  }
  if (Clock::now() > deadline) {
    out.composite_remainder *= n;
    return;
  }
  for (unsigned long seed = 1;; ++seed) {
    if (Clock::now() > deadline) {
      out.composite_remainder *= n;
      return;
    }
    Int d = pollard_brent(n, seed);
    if (d != 0 && d != 1) {
      factor_into(d, out, deadline);
      factor_into(n / d, out, deadline);
      return;
    }
  }
}

}  // namespace

Factorization factorize(Int n, std::chrono::milliseconds budget,
                        const std::vector<Int>& hints) {
  Factorization out;
  if (n < 0) n = -n;
  if (n <= 1) return out;
  auto deadline = Clock::now() + budget;
  for (const auto& h : hints) {
    if (h <= 1) continue;
    while (n % h == 0) {
      n /= h;
      factor_into(h, out, deadline);
    }
  }
  for (Int p = 2; p * p <= n && p < 1000000; p == 2 ? p = 3 : p += 2) {
    while (n % p == 0) {
      n /= p;
      factor_into(p, out, deadline);
    }
  }
  if (n > 1) factor_into(n, out, deadline);
  std::sort(out.prime_powers.begin(), out.prime_powers.end());
  return out;
}

namespace {

std::vector<MultiPoly> standard_chart(const MultiPoly& curve_xyz,
                                      size_t unit_var,
                                      std::vector<std::string>& vars_out) {
  static const char* names[3][2] = {{"y", "z"}, {"x", "z"}, {"x", "y"}};
  vars_out = {names[unit_var][0], names[unit_var][1]};
  MultiPoly f(vars_out, CoefficientRing::Z());
  for (const auto& [e, c] : curve_xyz.terms()) {
    Exponents e2;
    for (size_t i = 0; i < 3; ++i)
      if (i != unit_var) e2.push_back(e[i]);
    f.add_term(e2, c);
  }
  return {f, f.derivative(0), f.derivative(1)};
}

}  // namespace

std::vector<Int> bad_primes(const MultiPoly& curve_xyz,
                            std::chrono::milliseconds budget,
                            const std::vector<Int>& hints) {
  std::vector<Int> primes;
  for (size_t chart = 0; chart < 3; ++chart) {
    std::vector<std::string> vars;
    auto gens = standard_chart(curve_xyz, chart, vars);
    IdealPresentation pres{vars, CoefficientRing::Z(), gens, {}};
    auto n = gb_integer(pres);
    if (!n)
      throw std::runtime_error(
          "jacobian ideal meets Z trivially on chart " + std::to_string(chart) +
          " (non-generic degeneracy)");
    Factorization f = factorize(*n, budget, hints);
    if (!f.complete())
      throw std::runtime_error("factorization of the jacobian integer "
                               "incomplete; supply hints");
    for (const auto& [p, e] : f.prime_powers)
      if (std::find(primes.begin(), primes.end(), p) == primes.end())
        primes.push_back(p);
  }
  std::sort(primes.begin(), primes.end());
  return primes;
}

Int meeting_integer(const MultiPoly& curve_xyz, const DivisorSpec& D,
                    const DivisorSpec& E) {
  static const char* chart_ids[3] = {"x1", "x2", "x3"};
  Int n = 1;
  for (size_t chart = 0; chart < 3; ++chart) {
    std::vector<std::string> vars;
    auto rel = standard_chart(curve_xyz, chart, vars);
    rel.resize(1);  // just the chart equation
    const ChartIdeals* dx = D.for_chart(chart_ids[chart]);
    const ChartIdeals* ex = E.for_chart(chart_ids[chart]);
    if (!dx || !ex) continue;
    const std::vector<MultiPoly>* dsides[2] = {&dx->effective,
                                               &dx->antieffective};
    const std::vector<MultiPoly>* esides[2] = {&ex->effective,
                                               &ex->antieffective};
    for (auto* ds : dsides)
      for (auto* es : esides) {
        if (ds->empty() || es->empty()) continue;
        IdealPresentation pres;
        pres.vars = vars;
        pres.ring = CoefficientRing::Z();
        pres.relations = rel;
        for (const auto& g : *ds)
          pres.generators.push_back(
              g.cleared_denominators().lifted(vars, pres.ring));
        for (const auto& g : *es)
          pres.generators.push_back(
              g.cleared_denominators().lifted(vars, pres.ring));
        auto c = gb_integer(pres);
        if (!c) throw CommonComponent();
        n *= *c;
      }
  }
  return n;
}

unsigned precision_bound(const Int& p, const Int& n_de) {
  if (n_de == 0) throw std::invalid_argument("zero meeting integer");
  if (n_de % p != 0) return 1;
  return valuation(n_de, p) + 1;
}

PlaceReport relevant_places_given_bad(const std::vector<Int>& bad,
                                      const MultiPoly& curve_xyz,
                                      const DivisorSpec& D,
                                      const DivisorSpec& E,
                                      std::chrono::milliseconds budget,
                                      const std::vector<Int>& hints) {
  PlaceReport rep;
  rep.bad_primes = bad;
  rep.meeting_integer = meeting_integer(curve_xyz, D, E);
  rep.meeting_factorization = factorize(rep.meeting_integer, budget, hints);
  std::vector<Int> all = rep.bad_primes;
  for (const auto& [p, e] : rep.meeting_factorization.prime_powers)
    if (std::find(all.begin(), all.end(), p) == all.end()) all.push_back(p);
  std::sort(all.begin(), all.end());
  for (const auto& p : all)
    rep.relevant.push_back({p, precision_bound(p, rep.meeting_integer)});
  return rep;
}

PlaceReport relevant_places(const MultiPoly& curve_xyz, const DivisorSpec& D,
                            const DivisorSpec& E,
                            std::chrono::milliseconds budget,
                            const std::vector<Int>& hints) {
  return relevant_places_given_bad(bad_primes(curve_xyz, budget, hints),
                                   curve_xyz, D, E, budget, hints);
}

}  // namespace neron
