// Interactive lab for constructing and checking arithmetic-surface blowup
// charts: saturated chart rings, special-fibre ideals, rational singular
// points, component multiplicities and intersection numbers. Used to prepare
// the resolved-model fixtures; the checks it performs (fibre membership,
// multiplicity, intersection numbers) are re-run by the test suite through
// the emitted fixture data.
#include "neron/groebner.hpp"
#include "neron/intersect.hpp"
#include "neron/model.hpp"

#include "json.hpp"

#include <cstdio>
#include <fstream>
#include <stdexcept>
#include <string>
#include <vector>

using namespace neron;

namespace {

using Strings = std::vector<std::string>;
using Polys = std::vector<MultiPoly>;

const CoefficientRing Z = CoefficientRing::Z();

MultiPoly P(const std::string& s, const Strings& vars) {
  return MultiPoly::parse(s, vars, Z);
}

Polys parse_all(const Strings& ss, const Strings& vars) {
  Polys out;
  for (const auto& s : ss) out.push_back(P(s, vars));
  return out;
}

struct Lab {
  Strings vars;
  Polys rels;  // chart ring relations (over Z)
  Int p;
  Polys base_images;  // images of the base chart's variables in this chart

  void identity_images() {
    base_images.clear();
    for (const auto& v : vars)
      base_images.push_back(MultiPoly::variable(v, vars, Z));
  }

  void print(const char* tag) const {
    std::printf("== %s: Z[", tag);
    for (size_t i = 0; i < vars.size(); ++i)
      std::printf("%s%s", i ? "," : "", vars[i].c_str());
    std::printf("] / (%zu rels)\n", rels.size());
    for (const auto& r : rels) std::printf("   %s\n", r.to_string().c_str());
  }

  Lab saturated(const std::string& f) const {
    IdealPresentation pres{vars, Z, rels, {}};
    IdealPresentation sat = saturate(pres, P(f, vars));
    return Lab{vars, sat.generators, p};
  }

  void fibre_gb() const {
    Polys gens = rels;
    gens.push_back(MultiPoly::constant(Rat(p), vars, Z));
    auto gb = groebner_basis(gens, MonomialOrder::Degrevlex());
    std::printf("-- fibre GB (mod %s):\n", p.str().c_str());
    for (const auto& g : gb) {
      // reduce coefficients mod p for readability
      MultiPoly r(vars, Z);
      for (const auto& [e, c] : g.terms()) {
        Int n = numerator(c) % p;
        if (n < 0) n += p;
        if (n != 0) r.add_term(e, Rat(n));
      }
      if (!r.is_zero()) std::printf("   %s\n", r.to_string().c_str());
    }
  }

  Rat eval(const MultiPoly& f, const std::vector<Int>& pt) const {
    Polys images;
    for (const auto& c : pt)
      images.push_back(MultiPoly::constant(Rat(c), vars, Z));
    return f.substituted(images).constant_value();
  }

  // Rational points of the special fibre where the surface is not visibly
  // regular (cotangent rank of the relations < nvars - 1).
  void singular_points() const {
    const size_t n = vars.size();
    std::vector<Int> pt(n, 0);
    size_t total = 1;
    size_t pp = static_cast<size_t>(p.convert_to<long>());
    for (size_t i = 0; i < n; ++i) total *= pp;
    std::printf("-- singular rational fibre points:\n");
    for (size_t idx = 0; idx < total; ++idx) {
      size_t k = idx;
      for (size_t i = 0; i < n; ++i) {
        pt[i] = Int(k % pp);
        k /= pp;
      }
      bool on = true;
      for (const auto& r : rels)
        if (numerator(eval(r, pt)) % p != 0) {
          on = false;
          break;
        }
      if (!on) continue;
      // cotangent rows over F_p: (const/p, d/dx_1, ..., d/dx_n)
      std::vector<std::vector<Int>> rows;
      for (const auto& r : rels) {
        std::vector<Int> row;
        Int c0 = numerator(eval(r, pt));
        row.push_back(((c0 / p) % p + p) % p);
        for (size_t i = 0; i < n; ++i) {
          Int d = numerator(eval(r.derivative(i), pt));
          row.push_back((d % p + p) % p);
        }
        rows.push_back(row);
      }
      // rank over F_p
      size_t rank = 0;
      size_t cols = n + 1;
      for (size_t c = 0; c < cols && rank < rows.size(); ++c) {
        size_t piv = rank;
        while (piv < rows.size() && rows[piv][c] % p == 0) ++piv;
        if (piv == rows.size()) continue;
        std::swap(rows[piv], rows[rank]);
        for (size_t r2 = 0; r2 < rows.size(); ++r2) {
          if (r2 == rank) continue;
          // eliminate
          Int a = rows[r2][c] % p, b = rows[rank][c] % p;
          if (a == 0) continue;
          for (size_t cc = 0; cc < cols; ++cc) {
            rows[r2][cc] = ((rows[r2][cc] * b - rows[rank][cc] * a) % p + p) % p;
          }
        }
        ++rank;
      }
      if (rank < n - 1) {
        std::printf("   (");
        for (size_t i = 0; i < n; ++i)
          std::printf("%s%s", i ? "," : "", pt[i].str().c_str());
        std::printf(")  cotangent rank %zu (< %zu)\n", rank, n - 1);
      }
    }
  }

  Chart chart(const std::string& id) const { return Chart{id, vars, rels, ""}; }

  // length of O/(A + B) localized at the closed point pt (and nowhere else)
  Int local_length(const Strings& A, const Strings& B,
                   const std::vector<Int>& pt, unsigned precision) const {
    Polys loc;
    loc.push_back(MultiPoly::constant(Rat(p), vars, Z));
    for (size_t i = 0; i < vars.size(); ++i) {
      MultiPoly v = MultiPoly::variable(vars[i], vars, Z);
      loc.push_back(v - MultiPoly::constant(Rat(pt[i]), vars, Z));
    }
    ConstructibleSet V = ConstructibleSet::Closed(loc);
    IdealPresentation a{vars, Z, parse_all(A, vars), {}};
    IdealPresentation b{vars, Z, parse_all(B, vars), {}};
    return naive_pairing(V, a, b, chart("lab"), p, precision);
  }
};

// Blowup of the chart at rational center pt: p-chart (x = c + p x') or
// coordinate chart for variable i (x_i = c_i + e, x_j = c_j + e t_j, p = e w).
Lab blowup_p_chart(const Lab& L, const std::vector<Int>& pt) {
  Polys images;
  for (size_t i = 0; i < L.vars.size(); ++i) {
    MultiPoly v = MultiPoly::variable(L.vars[i], L.vars, Z);
    images.push_back(v.scaled(Rat(L.p)) +
                     MultiPoly::constant(Rat(pt[i]), L.vars, Z));
  }
  Polys rels;
  for (const auto& r : L.rels) rels.push_back(r.substituted(images));
  Lab out{L.vars, rels, L.p};
  out = out.saturated(std::to_string(L.p.convert_to<long>()));
  for (const auto& b : L.base_images)
    out.base_images.push_back(b.substituted(images));
  return out;
}

Lab blowup_coord_chart(const Lab& L, const std::vector<Int>& pt, size_t i,
                       const std::string& wname) {
  Strings nvars = L.vars;
  nvars.push_back(wname);
  Polys images;
  MultiPoly e = MultiPoly::variable(L.vars[i], nvars, Z) -
                MultiPoly::constant(Rat(pt[i]), nvars, Z);
  for (size_t j = 0; j < L.vars.size(); ++j) {
    if (j == i) {
      images.push_back(MultiPoly::variable(L.vars[i], nvars, Z));
    } else {
      MultiPoly tj = MultiPoly::variable(L.vars[j], nvars, Z);
      images.push_back(e * tj + MultiPoly::constant(Rat(pt[j]), nvars, Z));
    }
  }
  MultiPoly w = MultiPoly::variable(wname, nvars, Z);
  images.push_back(w);  // identity on the fresh variable
  Polys rels;
  for (const auto& r : L.rels) {
    MultiPoly lift = r.lifted(nvars, Z);
    rels.push_back(lift.substituted(images));
  }
  rels.push_back(e * w - MultiPoly::constant(Rat(L.p), nvars, Z));
  IdealPresentation pres{nvars, Z, rels, {}};
  IdealPresentation sat = saturate(pres, e);
  Lab out{nvars, sat.generators, L.p};
  for (const auto& b : L.base_images)
    out.base_images.push_back(b.lifted(nvars, Z).substituted(images));
  return out;
}

// Blowup along the subvariety cut out by {x_i - c_i : i in S} (+ p when
// include_p): the p-chart scales the S-coordinates by p.
Lab blowup_line_p_chart(const Lab& L, const std::vector<Int>& pt,
                        const std::vector<size_t>& S) {
  Polys images;
  for (size_t i = 0; i < L.vars.size(); ++i) {
    MultiPoly v = MultiPoly::variable(L.vars[i], L.vars, Z);
    bool in_S = false;
    for (size_t s : S) in_S |= (s == i);
    if (in_S)
      images.push_back(v.scaled(Rat(L.p)) +
                       MultiPoly::constant(Rat(pt[i]), L.vars, Z));
    else
      images.push_back(v);
  }
  Polys rels;
  for (const auto& r : L.rels) rels.push_back(r.substituted(images));
  Lab out{L.vars, rels, L.p};
  out = out.saturated(L.p.str());
  for (const auto& b : L.base_images)
    out.base_images.push_back(b.substituted(images));
  return out;
}

// Coordinate chart of the same blowup for generator x_i - c_i; when
// include_p, a fresh variable wname = p / (x_i - c_i) is introduced.
Lab blowup_line_coord_chart(const Lab& L, const std::vector<Int>& pt,
                            const std::vector<size_t>& S, size_t i,
                            bool include_p, const std::string& wname) {
  Strings nvars = L.vars;
  if (include_p) nvars.push_back(wname);
  MultiPoly e = MultiPoly::variable(L.vars[i], nvars, Z) -
                MultiPoly::constant(Rat(pt[i]), nvars, Z);
  Polys images;
  for (size_t j = 0; j < L.vars.size(); ++j) {
    bool in_S = false;
    for (size_t s : S) in_S |= (s == j);
    if (j == i || !in_S) {
      images.push_back(MultiPoly::variable(L.vars[j], nvars, Z));
    } else {
      MultiPoly tj = MultiPoly::variable(L.vars[j], nvars, Z);
      images.push_back(e * tj + MultiPoly::constant(Rat(pt[j]), nvars, Z));
    }
  }
  if (include_p)
    images.push_back(MultiPoly::variable(wname, nvars, Z));
  Polys rels;
  for (const auto& r : L.rels) {
    MultiPoly lift = r.lifted(nvars, Z);
    rels.push_back(lift.substituted(images));
  }
  if (include_p) {
    MultiPoly w = MultiPoly::variable(wname, nvars, Z);
    rels.push_back(e * w - MultiPoly::constant(Rat(L.p), nvars, Z));
  }
  IdealPresentation pres{nvars, Z, rels, {}};
  IdealPresentation sat = saturate(pres, e);
  Lab out{nvars, sat.generators, L.p};
  for (const auto& b : L.base_images)
    out.base_images.push_back(b.lifted(nvars, Z).substituted(images));
  return out;
}

struct NamedComp {
  std::string name;
  Strings gens;
};

// ---------------------------------------------------------------------------
// model fixture emission

nlohmann::json poly_strings(const Polys& ps) {
  auto a = nlohmann::json::array();
  for (const auto& p : ps) a.push_back(p.to_string());
  return a;
}

nlohmann::json piece_closed(const Strings& gens) {
  return {{"kind", "closed"}, {"generators", gens}};
}

nlohmann::json piece_difference(nlohmann::json a, nlohmann::json b) {
  return {{"kind", "difference"},
          {"parts", nlohmann::json::array({std::move(a), std::move(b)})}};
}

struct EmitChart {
  std::string id;
  const Lab* lab;
  std::string base;  // naive chart the pullback images refer to
  nlohmann::json piece;
  std::string note;
};

struct EmitComp {
  std::string name;
  std::string chart;
  Strings gens;
  unsigned multiplicity;
  std::vector<std::pair<std::string, Strings>> extra;
};

void emit_model(const std::string& path, const std::string& curve,
                const Int& p, const std::vector<EmitChart>& charts,
                const std::vector<EmitComp>& comps,
                const std::vector<std::vector<long>>& matrix) {
  nlohmann::json j;
  j["schema_version"] = 1;
  j["kind"] = "model";
  j["curve"] = curve;
  j["p"] = p.str();
  auto roundtrip = [](const std::string& s, const Strings& vars) {
    MultiPoly q = MultiPoly::parse(s, vars, Z);
    if (q.to_string() != s)
      throw std::runtime_error("fixture string does not round-trip: " + s);
    return s;
  };
  auto carr = nlohmann::json::array();
  for (const auto& ec : charts) {
    nlohmann::json cj;
    cj["id"] = ec.id;
    cj["vars"] = ec.lab->vars;
    auto rels = nlohmann::json::array();
    for (const auto& r : ec.lab->rels)
      rels.push_back(roundtrip(r.to_string(), ec.lab->vars));
    cj["relations"] = rels;
    cj["base"] = ec.base;
    auto imgs = nlohmann::json::array();
    for (const auto& b : ec.lab->base_images)
      imgs.push_back(roundtrip(b.to_string(), ec.lab->vars));
    cj["images"] = imgs;
    cj["partition"] = ec.piece;
    cj["note"] = ec.note;
    carr.push_back(std::move(cj));
  }
  j["charts"] = std::move(carr);
  auto comp_arr = nlohmann::json::array();
  for (const auto& c : comps) {
    nlohmann::json cj;
    cj["name"] = c.name;
    cj["chart"] = c.chart;
    cj["generators"] = c.gens;
    cj["multiplicity"] = c.multiplicity;
    auto ej = nlohmann::json::array();
    for (const auto& [cid, gens] : c.extra)
      ej.push_back({{"chart", cid}, {"generators", gens}});
    cj["extra_charts"] = std::move(ej);
    comp_arr.push_back(std::move(cj));
  }
  j["components"] = std::move(comp_arr);
  j["intersection_matrix"] = matrix;
  std::ofstream out(path);
  out << j.dump(1) << "\n";
  std::printf("wrote %s\n", path.c_str());
}

// Per-chart survey: rational fibre points with component membership,
// multiplicity of each component (transversal slice at a point on it alone),
// and pairwise meeting lengths at every common rational point.
void survey(const Lab& L, const char* tag,
            const std::vector<NamedComp>& comps) {
  std::printf("==== survey %s\n", tag);
  const size_t n = L.vars.size();
  size_t pp = static_cast<size_t>(L.p.convert_to<long>());
  size_t total = 1;
  for (size_t i = 0; i < n; ++i) total *= pp;

  Polys rels = L.rels;
  std::vector<Polys> cgens;
  for (const auto& c : comps) cgens.push_back(parse_all(c.gens, L.vars));

  std::vector<std::vector<Int>> pts;
  std::vector<std::vector<bool>> member;
  for (size_t idx = 0; idx < total; ++idx) {
    std::vector<Int> pt(n);
    size_t k = idx;
    for (size_t i = 0; i < n; ++i) {
      pt[i] = Int(k % pp);
      k /= pp;
    }
    bool on = true;
    for (const auto& r : rels)
      if (numerator(L.eval(r, pt)) % L.p != 0) {
        on = false;
        break;
      }
    if (!on) continue;
    std::vector<bool> mem;
    bool any = false;
    for (const auto& g : cgens) {
      bool m = true;
      for (const auto& gg : g)
        if (numerator(L.eval(gg, pt)) % L.p != 0) {
          m = false;
          break;
        }
      mem.push_back(m);
      any |= m;
    }
    if (!any) {
      std::printf("  UNCOVERED fibre point (");
      for (size_t i = 0; i < n; ++i)
        std::printf("%s%s", i ? "," : "", pt[i].str().c_str());
      std::printf(")\n");
    }
    pts.push_back(pt);
    member.push_back(mem);
  }

  // multiplicities
  for (size_t c = 0; c < comps.size(); ++c) {
    // point on this component only
    int found = -1;
    for (size_t q = 0; q < pts.size(); ++q) {
      if (!member[q][c]) continue;
      bool alone = true;
      for (size_t c2 = 0; c2 < comps.size(); ++c2)
        if (c2 != c && member[q][c2]) alone = false;
      if (alone) {
        found = static_cast<int>(q);
        break;
      }
    }
    if (found < 0) {
      std::printf("  mult(%s): no isolated rational point\n",
                  comps[c].name.c_str());
      continue;
    }
    const auto& pt = pts[found];
    // find transversal slice (skip hyperplanes containing the component)
    Polys cg = cgens[c];
    cg.push_back(MultiPoly::constant(Rat(L.p), L.vars, Z));
    auto cgb = groebner_basis(cg, MonomialOrder::Degrevlex());
    for (size_t i = 0; i < n; ++i) {
      char buf[64];
      std::snprintf(buf, sizeof buf, "%s - %s", L.vars[i].c_str(),
                    pt[i].str().c_str());
      if (normal_form(P(buf, L.vars), cgb, MonomialOrder::Degrevlex())
              .is_zero())
        continue;
      Int lr = L.local_length({buf}, comps[c].gens, pt, 8);
      if (lr == 1) {
        Int m = L.local_length({buf}, {L.p.str()}, pt, 8);
        std::printf("  mult(%s) at (", comps[c].name.c_str());
        for (size_t j = 0; j < n; ++j)
          std::printf("%s%s", j ? "," : "", pt[j].str().c_str());
        std::printf(") slice %s: %s\n", buf, m.str().c_str());
        break;
      }
      if (i + 1 == n)
        std::printf("  mult(%s): no transversal slice found\n",
                    comps[c].name.c_str());
    }
  }

  // pairwise meetings at rational points
  for (size_t a = 0; a < comps.size(); ++a)
    for (size_t b = a + 1; b < comps.size(); ++b)
      for (size_t q = 0; q < pts.size(); ++q) {
        if (!member[q][a] || !member[q][b]) continue;
        Int len = L.local_length(comps[a].gens, comps[b].gens, pts[q], 8);
        std::printf("  %s . %s at (", comps[a].name.c_str(),
                    comps[b].name.c_str());
        for (size_t j = 0; j < n; ++j)
          std::printf("%s%s", j ? "," : "", pts[q][j].str().c_str());
        std::printf(") = %s\n", len.str().c_str());
      }
}

}  // namespace

int main(int argc, char** argv) {
  std::string scene = argc > 1 ? argv[1] : "p3";

  if (scene == "p3") {
    // naive chart x1 (x=1), vars y,z; curve 3y + 5y^2 z + 5y^4 - 5^9 z^4
    Lab L{{"y", "z"}, {}, 3};
    L.rels = {P("3*y + 5*y^2*z + 5*y^4 - 1953125*z^4", L.vars)};
    L.print("naive x1");
    L.fibre_gb();
    L.singular_points();

    Lab A = blowup_p_chart(L, {0, 0});
    A.print("level1 p-chart (y=3u, z=3v)");
    A.fibre_gb();
    A.singular_points();

    Lab B = blowup_coord_chart(L, {0, 0}, 0, "w");
    B.print("level1 y-chart (z=y*t, p=y*w)");
    B.fibre_gb();
    B.singular_points();

    Lab C = blowup_coord_chart(L, {0, 0}, 1, "w");
    C.print("level1 z-chart (y=z*s, p=z*w)");
    C.fibre_gb();
    C.singular_points();
  }

  if (scene == "p3b") {
    // level-1 z-chart of the p=3 tower (vars: s named y, z, w = 3/z), blown
    // up again at its singular point (0,0,0)
    Lab L{{"y", "z"}, {}, 3};
    L.rels = {P("3*y + 5*y^2*z + 5*y^4 - 1953125*z^4", L.vars)};
    Lab C = blowup_coord_chart(L, {0, 0}, 1, "w");

    Lab A = blowup_p_chart(C, {0, 0, 0});
    A.print("level2 p-chart");
    A.fibre_gb();
    A.singular_points();

    for (size_t i = 0; i < 3; ++i) {
      Lab D = blowup_coord_chart(C, {0, 0, 0}, i, "e");
      char tag[64];
      std::snprintf(tag, sizeof tag, "level2 %s-chart", C.vars[i].c_str());
      D.print(tag);
      D.fibre_gb();
      D.singular_points();
    }
  }

  if (scene == "p3v") {
    // multiplicities and meeting lengths for the p=3 fibre components
    Lab L{{"y", "z"}, {}, 3};
    L.rels = {P("3*y + 5*y^2*z + 5*y^4 - 1953125*z^4", L.vars)};
    Lab A = blowup_p_chart(L, {0, 0});          // E_b home (fibre = V(y))
    Lab Y1 = blowup_coord_chart(L, {0, 0}, 0, "w");
    Lab Z1 = blowup_coord_chart(L, {0, 0}, 1, "w");
    Lab L2y = blowup_coord_chart(Z1, {0, 0, 0}, 0, "e");
    Lab L2z = blowup_coord_chart(Z1, {0, 0, 0}, 1, "e");
    Lab L2w = blowup_coord_chart(Z1, {0, 0, 0}, 2, "e");

    // chart x2 of the naive model for a smooth point of the naive fibre
    Lab X2{{"x", "z"}, {}, 3};
    X2.rels = {P("3*x^3 + 5*x*z + 5 - 1953125*z^4", X2.vars)};

    std::printf("mult(Gamma_nv) [expect 1]: %s\n",
                X2.local_length({"x"}, {"3"}, {0, 1}, 6).str().c_str());
    std::printf("mult(E_b) [expect 1]: %s\n",
                A.local_length({"z - 1"}, {"3"}, {0, 1}, 6).str().c_str());
    std::printf("mult(E_a) [expect 2]: %s\n",
                Y1.local_length({"z - 1"}, {"3"}, {0, 1, 0}, 6).str().c_str());
    std::printf("mult(E_c) [expect 2]: %s\n",
                L2z.local_length({"y - 1"}, {"3"}, {1, 0, 2, 0}, 6)
                    .str()
                    .c_str());

    // transversality guards: slice meets the (reduced) component with len 1
    std::printf("slice E_a [1]: %s\n",
                Y1.local_length({"z - 1"}, {"3", "y", "w"}, {0, 1, 0}, 6)
                    .str()
                    .c_str());
    std::printf("slice E_c [1]: %s\n",
                L2z.local_length({"y - 1"}, {"3", "z", "y*w + 1"},
                                 {1, 0, 2, 0}, 6)
                    .str()
                    .c_str());
    std::printf("slice E_b [1]: %s\n",
                A.local_length({"z - 1"}, {"3", "y"}, {0, 1}, 6).str().c_str());
    std::printf("slice Gnv [1]: %s\n",
                X2.local_length({"x"}, {"3", "x*z + 1 + 2*z^4"}, {0, 1}, 6)
                    .str()
                    .c_str());

    // meeting lengths
    std::printf("Y1: Gnv.E_a [1]: %s\n",
                Y1.local_length({"3", "w", "y*z^4 + 2*y + 2*z"},
                                {"3", "y", "w"}, {0, 0, 0}, 6)
                    .str()
                    .c_str());
    std::printf("L2y: Gnv.E_a [1]: %s\n",
                L2y.local_length({"3", "w", "y^4*z + y + 2*z"},
                                 {"3", "z", "w", "e"}, {0, 0, 0, 0}, 6)
                    .str()
                    .c_str());
    std::printf("L2y: Gnv.E_c [1]: %s\n",
                L2y.local_length({"3", "w", "y^4*z + y + 2*z"},
                                 {"3", "y", "e", "w + z^2"}, {0, 0, 0, 0}, 6)
                    .str()
                    .c_str());
    std::printf("L2y: E_a.E_c [1]: %s\n",
                L2y.local_length({"3", "z", "w", "e"},
                                 {"3", "y", "e", "w + z^2"}, {0, 0, 0, 0}, 6)
                    .str()
                    .c_str());
    std::printf("L2w: E_b.E_c [1]: %s\n",
                L2w.local_length({"3", "y", "z", "e"},
                                 {"3", "e", "w", "y + z^2"}, {0, 0, 0, 0}, 6)
                    .str()
                    .c_str());
  }

  if (scene == "p5") {
    // naive chart x3 (z=1), vars x,y; curve 3x^3 y + 5x y^2 + 5y^4 - 5^9
    Lab L{{"x", "y"}, {}, 5};
    L.rels = {P("3*x^3*y + 5*x*y^2 + 5*y^4 - 1953125", L.vars)};
    L.print("naive x3");
    L.fibre_gb();
    L.singular_points();

    Lab A = blowup_p_chart(L, {0, 0});
    A.print("L1 p-chart (x=5u, y=5v)");
    A.fibre_gb();
    A.singular_points();

    Lab B = blowup_coord_chart(L, {0, 0}, 0, "w");
    B.print("L1 x-chart (y=x*t, p=x*w)");
    B.fibre_gb();
    B.singular_points();

    Lab C = blowup_coord_chart(L, {0, 0}, 1, "w");
    C.print("L1 y-chart (x=y*s, p=y*w)");
    C.fibre_gb();
    C.singular_points();
  }

  if (scene == "p5b") {
    Lab L{{"x", "y"}, {}, 5};
    L.rels = {P("3*x^3*y + 5*x*y^2 + 5*y^4 - 1953125", L.vars)};
    Lab A = blowup_p_chart(L, {0, 0});
    Lab C = blowup_coord_chart(L, {0, 0}, 1, "w");

    Lab A2 = blowup_p_chart(A, {0, 0});
    A2.print("L2a p-chart");
    A2.fibre_gb();
    A2.singular_points();
    Lab A2x = blowup_coord_chart(A, {0, 0}, 0, "w");
    A2x.print("L2a x-chart");
    A2x.fibre_gb();
    A2x.singular_points();
    Lab A2y = blowup_coord_chart(A, {0, 0}, 1, "w");
    A2y.print("L2a y-chart");
    A2y.fibre_gb();
    A2y.singular_points();

    Lab C2 = blowup_p_chart(C, {0, 0, 0});
    C2.print("L2b p-chart");
    C2.fibre_gb();
    C2.singular_points();
    for (size_t i = 0; i < 3; ++i) {
      Lab D = blowup_coord_chart(C, {0, 0, 0}, i, "e");
      char tag[64];
      std::snprintf(tag, sizeof tag, "L2b %s-chart", C.vars[i].c_str());
      D.print(tag);
      D.fibre_gb();
      D.singular_points();
    }
  }

  if (scene == "p5c") {
    Lab L{{"x", "y"}, {}, 5};
    L.rels = {P("3*x^3*y + 5*x*y^2 + 5*y^4 - 1953125", L.vars)};
    Lab A = blowup_p_chart(L, {0, 0});      // L1 p-chart
    Lab A2 = blowup_p_chart(A, {0, 0});     // L2a p-chart, fibre x*y^2

    // blow up the singular line {y=0} (center (5, y)) of A2
    Lab B = blowup_line_p_chart(A2, {0, 0}, {1});
    B.print("L3 p-chart (y = 5 y')");
    B.fibre_gb();
    B.singular_points();

    Lab Cc = blowup_line_coord_chart(A2, {0, 0}, {1}, 1, true, "w");
    Cc.print("L3 y-chart (p = y w)");
    Cc.fibre_gb();
    Cc.singular_points();

    // far end of the same line: L2a x-chart, center (x, t); p = x*w there
    Lab A2x = blowup_coord_chart(A, {0, 0}, 0, "w");
    Lab D1 = blowup_line_coord_chart(A2x, {0, 0, 0}, {0, 1}, 0, false, "");
    D1.print("L3' x-chart (t = x t2)");
    D1.fibre_gb();
    D1.singular_points();
    Lab D2 = blowup_line_coord_chart(A2x, {0, 0, 0}, {0, 1}, 1, false, "");
    D2.print("L3' t-chart (x = t x2)");
    D2.fibre_gb();
    D2.singular_points();
  }

  if (scene == "p5v") {
    // Component survey of the fully resolved p=5 model.  Expected global
    // picture (9 components):
    //   Gy(1) Q(1) Ly(1) Lx(1) E3(1) E5(1) EBb(2) Gx(3) EBa(3)
    // with meetings: Gy-Ly, Ly-E5, Q-E5, Q-EBa, Lx-E3, Lx-EBb, E3-E5,
    // Gx-EBa, EBa-EBb (all transversal).  Meetings at blown centers
    // (naive (0,0); A (0,0); C (0,0,0)) are to be disregarded, as are the
    // duplicate sightings in D2 and C2y noted below.
    Lab N3{{"x", "y"}, {}, 5};
    N3.rels = {P("3*x^3*y + 5*x*y^2 + 5*y^4 - 1953125", N3.vars)};
    Lab N1{{"y", "z"}, {}, 5};
    N1.rels = {P("3*y + 5*y^2*z + 5*y^4 - 1953125*z^4", N1.vars)};
    Lab N2{{"x", "z"}, {}, 5};
    N2.rels = {P("3*x^3 + 5*x*z + 5 - 1953125*z^4", N2.vars)};

    Lab A = blowup_p_chart(N3, {0, 0});
    Lab B = blowup_coord_chart(N3, {0, 0}, 0, "w");
    Lab C = blowup_coord_chart(N3, {0, 0}, 1, "w");
    Lab A2 = blowup_p_chart(A, {0, 0});
    Lab A2x = blowup_coord_chart(A, {0, 0}, 0, "w");
    Lab A2y = blowup_coord_chart(A, {0, 0}, 1, "w");
    Lab L3p = blowup_line_p_chart(A2, {0, 0}, {1});
    Lab L3y = blowup_line_coord_chart(A2, {0, 0}, {1}, 1, true, "w");
    Lab D1 = blowup_line_coord_chart(A2x, {0, 0, 0}, {0, 1}, 0, false, "");
    Lab D2 = blowup_line_coord_chart(A2x, {0, 0, 0}, {0, 1}, 1, false, "");
    Lab C2x = blowup_coord_chart(C, {0, 0, 0}, 0, "e");
    Lab C2y = blowup_coord_chart(C, {0, 0, 0}, 1, "e");
    Lab C2w = blowup_coord_chart(C, {0, 0, 0}, 2, "e");

    survey(N3, "naive x3 [(0,0) blown]",
           {{"Gy", {"5", "y"}}, {"Gx", {"5", "x"}}});
    survey(N1, "naive x1", {{"Gy", {"5", "y"}}});
    survey(N2, "naive x2", {{"Gx", {"5", "x"}}});
    survey(A, "L1 p-chart [(0,0) blown]",
           {{"Lx", {"5", "x"}},
            {"Ly", {"5", "y"}},
            {"Q", {"5", "x^2 + 2*y"}}});
    survey(B, "L1 x-chart",
           {{"Gy", {"5", "y", "w"}},
            {"Ly", {"5", "x", "y"}},
            {"Q", {"5", "x", "y*w + 3"}}});
    survey(C, "L1 y-chart [(0,0,0) blown]",
           {{"Gx", {"5", "x", "w"}},
            {"Lx", {"5", "x", "y"}},
            {"Q", {"5", "y", "x^2 + 2*w"}}});
    survey(A2y, "L2a y-chart",
           {{"E3", {"5", "x", "y"}},
            {"Lx", {"5", "x", "w"}},
            {"Q", {"5", "w", "x^2*y + 2"}}});
    survey(L3p, "L3 p-chart", {{"E5", {"5", "x^3*y + 2*x*y^2 + 3"}}});
    survey(L3y, "L3 y-chart",
           {{"E3", {"5", "x", "w"}},
            {"E5", {"5", "y", "x^3*w + 3*w^2 + 2*x"}}});
    survey(D1, "L3' x-chart",
           {{"Ly", {"5", "y", "w"}},
            {"Q", {"5", "w", "y + 3"}},
            {"E5", {"5", "x", "w^5 + 4*y^2 + 2*y"}}});
    survey(D2, "L3' t-chart [Q.E5 duplicates D1]",
           {{"Q", {"5", "w", "x + 2"}},
            {"E5", {"5", "y", "x^2*w^5 + 2*x + 4"}}});
    survey(C2x, "L2b x-chart",
           {{"EBa", {"5", "x", "w", "e"}},
            {"EBb", {"5", "x", "e", "y + 1"}},
            {"Q", {"5", "y", "x + 2*w"}}});
    survey(C2y, "L2b y-chart [EBa.EBb duplicates C2x]",
           {{"Gx", {"5", "x", "w", "e"}},
            {"EBa", {"5", "e", "w", "y"}},
            {"EBb", {"5", "e", "y", "x + 1"}}});
    survey(C2w, "L2b w-chart",
           {{"Lx", {"5", "e", "x", "y"}},
            {"Q", {"5", "e", "y", "x^2*w + 2"}},
            {"EBb", {"5", "e", "w", "x + y"}}});
  }

  if (scene == "emit") {
    const std::string curve =
        "3*x^3*y + 5*x*y^2*z + 5*y^4 - 1953125*z^4";

    // p = 3: one point blowup of (1:0:0) followed by a second point blowup
    // in the z-direction chart.  Components (Gnv, E_b, E_a, E_c) with
    // multiplicities (1, 1, 2, 2).
    {
      Lab X1{{"y", "z"}, {}, 3};
      X1.rels = {P("3*y + 5*y^2*z + 5*y^4 - 1953125*z^4", X1.vars)};
      X1.identity_images();
      Lab X2{{"x", "z"}, {}, 3};
      X2.rels = {P("3*x^3 + 5*x*z + 5 - 1953125*z^4", X2.vars)};
      X2.identity_images();
      Lab X3{{"x", "y"}, {}, 3};
      X3.rels = {P("3*x^3*y + 5*x*y^2 + 5*y^4 - 1953125", X3.vars)};
      X3.identity_images();
      Lab B1p = blowup_p_chart(X1, {0, 0});
      Lab B1y = blowup_coord_chart(X1, {0, 0}, 0, "w");
      Lab Z1 = blowup_coord_chart(X1, {0, 0}, 1, "w");
      Lab B2z = blowup_coord_chart(Z1, {0, 0, 0}, 1, "e");

      std::vector<EmitChart> charts = {
          {"x1", &X1, "x1",
           piece_difference(piece_closed({}), piece_closed({"3", "y", "z"})),
           "affine chart x=1 minus the blown-up point"},
          {"x2", &X2, "x2", piece_closed({"x"}), "affine chart y=1"},
          {"x3", &X3, "x3", piece_closed({"x", "y"}), "affine chart z=1"},
          {"b1p", &B1p, "x1", piece_closed({"3"}),
           "p-chart of the blowup at (1:0:0)"},
          {"b1y", &B1y, "x1", piece_closed({"3", "y"}),
           "y-direction chart of the blowup at (1:0:0)"},
          {"b2z", &B2z, "x1", piece_closed({"1"}),
           "z-direction chart of the second blowup (component home only)"}};

      std::vector<EmitComp> comps = {
          {"Gnv", "x1", {"3", "y^4 + y^2*z + 2*z^4"}, 1,
           {{"x2", {"3", "x*z + 1 + 2*z^4"}},
            {"b1y", {"3", "w", "y*z^4 + 2*y + 2*z"}}}},
          {"Eb", "b1p", {"3", "y"}, 1, {}},
          {"Ea", "b1y", {"3", "y", "w"}, 2, {}},
          {"Ec", "b2z", {"3", "z", "y*w + 1"}, 2, {}}};

      std::vector<std::vector<long>> m3 = {{-6, 0, 2, 1},
                                           {0, -2, 0, 1},
                                           {2, 0, -2, 1},
                                           {1, 1, 1, -2}};
      emit_model("fixtures/model_vbr_p3.json", curve, Int(3), charts, comps,
                 m3);
    }

    // p = 5: blowup tower over (0:0:1) — point blowup, second point blowup
    // in the p-chart, a line blowup there, and a second point blowup in the
    // y-direction chart.  Components
    // (Gy, Q, Ly, Lx, E3, E5, EBb, Gx, EBa) with multiplicities
    // (1, 1, 1, 1, 1, 1, 2, 3, 3).
    {
      Lab N1{{"y", "z"}, {}, 5};
      N1.rels = {P("3*y + 5*y^2*z + 5*y^4 - 1953125*z^4", N1.vars)};
      N1.identity_images();
      Lab N2{{"x", "z"}, {}, 5};
      N2.rels = {P("3*x^3 + 5*x*z + 5 - 1953125*z^4", N2.vars)};
      N2.identity_images();
      Lab N3{{"x", "y"}, {}, 5};
      N3.rels = {P("3*x^3*y + 5*x*y^2 + 5*y^4 - 1953125", N3.vars)};
      N3.identity_images();
      Lab A = blowup_p_chart(N3, {0, 0});
      Lab A2 = blowup_p_chart(A, {0, 0});
      Lab A2y = blowup_coord_chart(A, {0, 0}, 1, "w");
      Lab L3y = blowup_line_coord_chart(A2, {0, 0}, {1}, 1, true, "w");
      Lab C = blowup_coord_chart(N3, {0, 0}, 1, "w");
      Lab C2x = blowup_coord_chart(C, {0, 0, 0}, 0, "e");

      std::vector<EmitChart> charts = {
          {"x1", &N1, "x1", piece_closed({}), "affine chart x=1"},
          {"x2", &N2, "x2", piece_closed({"x"}), "affine chart y=1"},
          {"x3", &N3, "x3",
           piece_difference(piece_closed({"x", "y"}),
                            piece_closed({"5", "x", "y"})),
           "affine chart z=1 minus the blown-up point"},
          {"A", &A, "x3",
           piece_difference(piece_closed({"5"}),
                            piece_closed({"5", "x", "y"})),
           "p-chart of the blowup at (0:0:1), minus its blown-up point"},
          {"A2y", &A2y, "x3", piece_closed({"5", "y"}),
           "y-direction chart of the second point blowup"},
          {"L3y", &L3y, "x3", piece_closed({"5", "y"}),
           "y-direction chart of the line blowup in the second p-chart"},
          {"C2x", &C2x, "x3", piece_closed({"1"}),
           "x-direction chart over the y-direction tower (component home "
           "only)"}};

      std::vector<EmitComp> comps = {
          {"Gy", "x1", {"5", "y"}, 1, {}},
          {"Q", "A", {"5", "x^2 + 2*y"}, 1, {}},
          {"Ly", "A", {"5", "y"}, 1, {}},
          {"Lx", "A", {"5", "x"}, 1, {}},
          {"E3", "A2y", {"5", "x", "y"}, 1, {{"L3y", {"5", "x", "w"}}}},
          {"E5", "L3y", {"5", "y", "x^3*w + 3*w^2 + 2*x"}, 1, {}},
          {"EBb", "C2x", {"5", "x", "e", "y + 1"}, 2, {}},
          {"Gx", "x2", {"5", "x"}, 3, {}},
          {"EBa", "C2x", {"5", "x", "w", "e"}, 3, {}}};

      std::vector<std::vector<long>> m5 = {
          {-1, 0, 1, 0, 0, 0, 0, 0, 0},
          {0, -4, 0, 0, 0, 1, 0, 0, 1},
          {1, 0, -2, 0, 0, 1, 0, 0, 0},
          {0, 0, 0, -3, 1, 0, 1, 0, 0},
          {0, 0, 0, 1, -2, 1, 0, 0, 0},
          {0, 1, 1, 0, 1, -3, 0, 0, 0},
          {0, 0, 0, 1, 0, 0, -2, 0, 1},
          {0, 0, 0, 0, 0, 0, 0, -1, 1},
          {0, 1, 0, 0, 0, 0, 1, 1, -2}};
      emit_model("fixtures/model_vbr_p5.json", curve, Int(5), charts, comps,
                 m5);
    }
  }

  return 0;
}
