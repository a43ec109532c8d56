#pragma once

#include "neron/poly.hpp"

#include <string>
#include <vector>

namespace neron {

/// Finite boolean expression over closed sets of a chart.
struct ConstructibleSet {
  enum Kind { closed, difference, disjoint_union };
  Kind kind = closed;
  std::vector<MultiPoly> generators;     // closed: V(generators)
  std::vector<ConstructibleSet> parts;   // difference: {a, b}; union: list

  static ConstructibleSet Closed(std::vector<MultiPoly> gens) {
    ConstructibleSet s;
    s.kind = closed;
    s.generators = std::move(gens);
    return s;
  }
  static ConstructibleSet Difference(ConstructibleSet a, ConstructibleSet b) {
    ConstructibleSet s;
    s.kind = difference;
    s.parts = {std::move(a), std::move(b)};
    return s;
  }
  static ConstructibleSet DisjointUnion(std::vector<ConstructibleSet> parts) {
    ConstructibleSet s;
    s.kind = disjoint_union;
    s.parts = std::move(parts);
    return s;
  }

  /// Membership of a coordinate tuple over Z/m (all generators vanish, with
  /// boolean evaluation of difference/union).
  bool contains(const std::vector<Int>& point, const Int& modulus) const;
};

struct Chart {
  std::string id;
  std::vector<std::string> vars;
  std::vector<MultiPoly> relations;  // defining the chart ring over Z
  std::string note;                   // free-form map-to-curve documentation

  IdealPresentation ring() const {
    return IdealPresentation{vars, CoefficientRing::Z(), {}, relations};
  }
};

struct FiberComponent {
  std::string chart;
  std::vector<MultiPoly> generators;  // prime ideal, contains p
  unsigned multiplicity = 1;
  // ideals of the same component seen on other charts (chart id -> gens);
  // only needed when the partition piece of another chart meets it
  std::vector<std::pair<std::string, std::vector<MultiPoly>>> extra_charts;
};

struct ChartedModel {
  Int p;
  std::vector<Chart> charts;
  std::vector<ConstructibleSet> partition;  // parallel to charts
  std::vector<FiberComponent> components;
  std::vector<std::vector<Int>> intersection_matrix;

  const Chart& chart_by_id(const std::string& id) const;
};

struct ValidationIssue {
  std::string check;
  std::string detail;
};

struct ValidationReport {
  std::vector<ValidationIssue> failures;
  std::vector<ValidationIssue> warnings;
  bool ok() const { return failures.empty(); }
};

/// Checks matrix symmetry, M * multiplicities = 0, and that component ideals
/// contain p. Failures are reported, never thrown.
ValidationReport validate_model(const ChartedModel& m);

struct ChartWithOverlaps {
  Chart chart;
  // for each earlier chart j, generators cutting out the *complement* of the
  // overlap C_j ∩ C_i inside chart i (the overlap is the locus where they do
  // not all vanish)
  std::vector<std::vector<MultiPoly>> overlap_complements;
};

/// V_i = C_i minus the union of the earlier charts' overlap loci; with the
/// complement presentation above this is the closed set cut out by the union
/// of all the complement ideals.
std::vector<ConstructibleSet> partition_from_cover(
    const std::vector<ChartWithOverlaps>& charts);

/// Naive model of a plane projective curve F(X,Y,Z) = 0 over a prime p where
/// the naive model is asserted regular: three standard charts, the triangular
/// partition V1 = chart1, V2 = {x=0}, V3 = {x=0, y=0}, no component data
/// (irreducible special fibre, so the vertical correction vanishes).
ChartedModel naive_plane_model(const MultiPoly& quartic_xyz, const Int& p);

/// Best-effort irreducibility check of the special fibre of a naive plane
/// model: look for a line specialization whose univariate reduction mod p is
/// irreducible of full degree. Returns true when verified, false when the
/// heuristic cannot decide (not a proof of reducibility).
bool fibre_irreducible_heuristic(const MultiPoly& affine_eq, const Int& p);

}  // namespace neron
