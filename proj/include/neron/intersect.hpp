#pragma once

#include "neron/groebner.hpp"
#include "neron/model.hpp"

#include <map>

namespace neron {

struct CommonComponent : std::runtime_error {
  CommonComponent()
      : std::runtime_error("divisors share a component (infinite quotient)") {}
};

struct TooManyGenerators : std::runtime_error {
  TooManyGenerators()
      : std::runtime_error(
            "closed set has more than 16 generators; inclusion-exclusion "
            "refused") {}
};

/// Degree-0 divisor as effective/anti-effective ideals per chart. Charts with
/// no entry (or empty generator lists) carry no component of the divisor.
struct ChartIdeals {
  std::string chart;
  std::vector<MultiPoly> effective;
  std::vector<MultiPoly> antieffective;
};

struct DivisorSpec {
  std::string label;
  std::vector<ChartIdeals> charts;
  int degree = 0;

  const ChartIdeals* for_chart(const std::string& id) const {
    for (const auto& c : charts)
      if (c.chart == id) return &c;
    return nullptr;
  }
};

struct VerticalDivisor {
  std::vector<Rat> coefficients;  // parallel to model.components
  bool is_zero() const {
    for (const auto& c : coefficients)
      if (c != 0) return false;
    return true;
  }
};

struct LocalPairing {
  Int p;
  Rat value;       // meaning value * log p
  Rat horizontal;  // iota(D, E)
  Rat correction;  // iota(Phi(D), E)
};

/// iota^naive_V(D, E) over one chart at p mod p^N, for effective ideals D, E.
/// Implements additivity over disjoint unions, subtraction for differences,
/// and inclusion-exclusion over localizations of closed sets, each localized
/// term being a saturation followed by a quotient length.
Int naive_pairing(const ConstructibleSet& V, const IdealPresentation& D,
                  const IdealPresentation& E, const Chart& chart, const Int& p,
                  unsigned precision);

/// Saturate both parts of every chart ideal at p (Lemma: schematic closure of
/// the generic fibre). Input ideals may be Q-presentations; denominators are
/// cleared first.
DivisorSpec horizontal_extension(const DivisorSpec& D, const Int& p);

/// iota(component_i, D) for every fibre component, as exact integers
/// (lengths; the pairing value is length * log p).
std::vector<Int> component_pairings(const DivisorSpec& D,
                                    const ChartedModel& model);

/// Solve M x = -b with the first coefficient gauged to 0.
VerticalDivisor vertical_correction(const DivisorSpec& D,
                                    const ChartedModel& model);

/// <D, E>_p = iota(D, E) + iota(Phi(D), E); D and E are generic-fibre
/// presentations (horizontal extension is applied internally).
LocalPairing local_neron_pairing(const DivisorSpec& D, const DivisorSpec& E,
                                 const ChartedModel& model);

/// The pairing iota(D, E) = sum over the partition, all four effective /
/// anti-effective sign combinations, at per-pair precision bounds derived
/// from the meeting integers. Expects horizontally extended inputs.
Rat horizontal_pairing(const DivisorSpec& D, const DivisorSpec& E,
                       const ChartedModel& model);

}  // namespace neron
