#include "neron/intersect.hpp"

namespace neron {

namespace {

IdealPresentation with_relations(const Chart& chart,
                                 std::vector<MultiPoly> gens,
                                 CoefficientRing ring) {
  IdealPresentation pres;
  pres.vars = chart.vars;
  pres.ring = ring;
  for (auto& g : gens) pres.generators.push_back(g.lifted(chart.vars, ring));
  for (const auto& r : chart.relations)
    pres.relations.push_back(r.lifted(chart.vars, ring));
  return pres;
}

Int length_over_localization(const std::vector<MultiPoly>& gens,
                             const std::vector<MultiPoly>& localizers,
                             const Chart& chart, const Int& p,
                             unsigned precision) {
  CoefficientRing work = CoefficientRing::ZmodPN(p, precision);
  IdealPresentation pres = with_relations(chart, gens, work);
  if (!localizers.empty()) {
    MultiPoly f = MultiPoly::constant(1, chart.vars, work);
    for (const auto& l : localizers) f = f * l.lifted(chart.vars, work);
    if (f.is_zero()) {
      // localizing at 0 kills the whole chart
      return 0;
    }
    pres = saturate(pres, f);
  }
  IdealPresentation ring_pres{chart.vars, CoefficientRing::Z(), {},
                              chart.relations};
  IdealPresentation ideal{chart.vars, CoefficientRing::Z(), {}, {}};
  for (const auto& g : pres.generators)
    ideal.generators.push_back(g.lifted(chart.vars, CoefficientRing::Z()));
  return Int(quotient_log_length(ring_pres, ideal, p, precision));
}

}  // namespace

Int naive_pairing(const ConstructibleSet& V, const IdealPresentation& D,
                  const IdealPresentation& E, const Chart& chart, const Int& p,
                  unsigned precision) {
  switch (V.kind) {
    case ConstructibleSet::difference:
      return naive_pairing(V.parts[0], D, E, chart, p, precision) -
             naive_pairing(V.parts[1], D, E, chart, p, precision);
    case ConstructibleSet::disjoint_union: {
      Int s = 0;
      for (const auto& part : V.parts)
        s += naive_pairing(part, D, E, chart, p, precision);
      return s;
    }
    case ConstructibleSet::closed:
      break;
  }
  const auto& fs = V.generators;
  if (fs.size() > 16) throw TooManyGenerators();

  std::vector<MultiPoly> gens;
  for (const auto& g : D.generators) gens.push_back(g);
  for (const auto& g : E.generators) gens.push_back(g);

  Int total = 0;
  const size_t r = fs.size();
  for (size_t mask = 0; mask < (size_t(1) << r); ++mask) {
    std::vector<MultiPoly> loc;
    for (size_t i = 0; i < r; ++i)
      if (mask & (size_t(1) << i)) loc.push_back(fs[i]);
    Int term = length_over_localization(gens, loc, chart, p, precision);
    total += (__builtin_popcountll(mask) % 2 == 0) ? term : -term;
  }
  return total;
}

DivisorSpec horizontal_extension(const DivisorSpec& D, const Int& p) {
  DivisorSpec out;
  out.label = D.label;
  out.degree = D.degree;
  for (const auto& ci : D.charts) {
    ChartIdeals o;
    o.chart = ci.chart;
    auto saturate_part =
        [&](const std::vector<MultiPoly>& part) -> std::vector<MultiPoly> {
      if (part.empty()) return {};
      IdealPresentation pres;
      pres.ring = CoefficientRing::Z();
      pres.vars = part.front().vars();
      for (const auto& g : part)
        pres.generators.push_back(
            g.cleared_denominators().lifted(pres.vars, pres.ring));
      IdealPresentation sat = saturate(
          pres, MultiPoly::constant(Rat(p), pres.vars, pres.ring));
      return sat.generators;
    };
    o.effective = saturate_part(ci.effective);
    o.antieffective = saturate_part(ci.antieffective);
    out.charts.push_back(std::move(o));
  }
  return out;
}

namespace {

// v_p(n_{X,Y}) + 1 for one chart and one pair of effective ideals; nullopt
// when the two ideals cannot meet above p at all.
std::optional<unsigned> pair_precision(const Chart& chart,
                                       const std::vector<MultiPoly>& X,
                                       const std::vector<MultiPoly>& Y,
                                       const Int& p) {
  std::vector<MultiPoly> gens = X;
  gens.insert(gens.end(), Y.begin(), Y.end());
  IdealPresentation pres = with_relations(chart, gens, CoefficientRing::Z());
  auto n = gb_integer(pres);
  if (!n) throw CommonComponent();
  unsigned v = 0;
  Int m = *n;
  while (m % p == 0) {
    m /= p;
    ++v;
  }
  if (v == 0) return std::nullopt;
  return v + 1;
}

}  // namespace

Rat horizontal_pairing(const DivisorSpec& D, const DivisorSpec& E,
                       const ChartedModel& model) {
  Rat total = 0;
  for (size_t i = 0; i < model.charts.size(); ++i) {
    const Chart& chart = model.charts[i];
    const ConstructibleSet& V = model.partition[i];
    const ChartIdeals* dx = D.for_chart(chart.id);
    const ChartIdeals* ex = E.for_chart(chart.id);
    if (!dx || !ex) continue;
    struct Side {
      const std::vector<MultiPoly>* gens;
      int sign;
    };
    Side dsides[2] = {{&dx->effective, 1}, {&dx->antieffective, -1}};
    Side esides[2] = {{&ex->effective, 1}, {&ex->antieffective, -1}};
    for (const auto& ds : dsides)
      for (const auto& es : esides) {
        if (ds.gens->empty() || es.gens->empty()) continue;
        auto prec = pair_precision(chart, *ds.gens, *es.gens, model.p);
        if (!prec) continue;
        IdealPresentation dpres = with_relations(chart, *ds.gens,
                                                 CoefficientRing::Z());
        IdealPresentation epres = with_relations(chart, *es.gens,
                                                 CoefficientRing::Z());
        dpres.relations.clear();
        epres.relations.clear();
        Int m = naive_pairing(V, dpres, epres, chart, model.p, *prec);
        total += Rat(ds.sign * es.sign) * Rat(m);
      }
  }
  return total;
}

std::vector<Int> component_pairings(const DivisorSpec& D,
                                    const ChartedModel& model) {
  unsigned maxmult = 1;
  for (const auto& c : model.components)
    maxmult = std::max(maxmult, c.multiplicity);
  const unsigned precision = maxmult + 1;

  std::vector<Int> out;
  for (const auto& comp : model.components) {
    Int acc = 0;
    for (size_t i = 0; i < model.charts.size(); ++i) {
      const Chart& chart = model.charts[i];
      const std::vector<MultiPoly>* comp_gens = nullptr;
      if (comp.chart == chart.id) {
        comp_gens = &comp.generators;
      } else {
        for (const auto& [cid, gens] : comp.extra_charts)
          if (cid == chart.id) comp_gens = &gens;
      }
      if (!comp_gens) continue;  // component fixture absent from this chart
      const ChartIdeals* dx = D.for_chart(chart.id);
      if (!dx) continue;
      IdealPresentation gpres = with_relations(chart, *comp_gens,
                                               CoefficientRing::Z());
      gpres.relations.clear();
      auto side = [&](const std::vector<MultiPoly>& gens, int sign) {
        if (gens.empty()) return;
        IdealPresentation dpres = with_relations(chart, gens,
                                                 CoefficientRing::Z());
        dpres.relations.clear();
        acc += Int(sign) * naive_pairing(model.partition[i], gpres, dpres,
                                         chart, model.p, precision);
      };
      side(dx->effective, 1);
      side(dx->antieffective, -1);
    }
    out.push_back(acc);
  }
  return out;
}

VerticalDivisor vertical_correction(const DivisorSpec& D,
                                    const ChartedModel& model) {
  const size_t n = model.components.size();
  VerticalDivisor out;
  out.coefficients.assign(n, Rat(0));
  if (n <= 1) return out;

  std::vector<Int> b = component_pairings(D, model);

  // Solve M x = -b with x[0] = 0: unknowns x[1..n-1].
  std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 1; j < n; ++j) A[i][j - 1] = Rat(model.intersection_matrix[i][j]);
    A[i][n - 1] = Rat(-b[i]);
  }
  // Gaussian elimination on an n x (n-1 | rhs) system; consistency required.
  size_t rows = n, cols = n - 1;
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < rows; ++c) {
    size_t piv = rank;
    while (piv < rows && A[piv][c] == 0) ++piv;
    if (piv == rows) continue;
    std::swap(A[piv], A[rank]);
    Rat d = A[rank][c];
    for (auto& v : A[rank]) v /= d;
    for (size_t r2 = 0; r2 < rows; ++r2) {
      if (r2 == rank || A[r2][c] == 0) continue;
      Rat f = A[r2][c];
      for (size_t k = 0; k <= cols; ++k) A[r2][k] -= f * A[rank][k];
    }
    ++rank;
  }
  for (size_t r2 = rank; r2 < rows; ++r2)
    if (A[r2][cols] != 0)
      throw std::runtime_error(
          "inconsistent vertical correction system (bad model data)");
  // back-substitute: rows 0..rank-1 are reduced echelon
  std::vector<Rat> x(cols, Rat(0));
  for (size_t r2 = 0; r2 < rank; ++r2) {
    size_t lead = cols;
    for (size_t c = 0; c < cols; ++c)
      if (A[r2][c] != 0) {
        lead = c;
        break;
      }
    if (lead == cols) continue;
    Rat v = A[r2][cols];
    for (size_t c = lead + 1; c < cols; ++c) v -= A[r2][c] * x[c];
    x[lead] = v;
  }
  for (size_t j = 1; j < n; ++j) out.coefficients[j] = x[j - 1];
  return out;
}

LocalPairing local_neron_pairing(const DivisorSpec& D, const DivisorSpec& E,
                                 const ChartedModel& model) {
  DivisorSpec Dh = horizontal_extension(D, model.p);
  DivisorSpec Eh = horizontal_extension(E, model.p);

  LocalPairing lp;
  lp.p = model.p;
  lp.horizontal = horizontal_pairing(Dh, Eh, model);
  lp.correction = 0;
  if (model.components.size() > 1) {
    VerticalDivisor phi = vertical_correction(Dh, model);
    if (!phi.is_zero()) {
      std::vector<Int> ce = component_pairings(Eh, model);
      for (size_t j = 0; j < ce.size(); ++j)
        lp.correction += phi.coefficients[j] * Rat(ce[j]);
    }
  }
  lp.value = lp.horizontal + lp.correction;
  return lp;
}

}  // namespace neron
