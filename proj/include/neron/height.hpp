#pragma once

#include "neron/primes.hpp"
#include "neron/theta.hpp"

#include <map>

namespace neron {

struct MissingModel : std::runtime_error {
  Int p;
  explicit MissingModel(const Int& bad_p)
      : std::runtime_error("no regular model supplied for bad prime " +
                           bad_p.str()),
        p(bad_p) {}
};

struct FactorizationIncomplete : std::runtime_error {
  Int remainder;
  explicit FactorizationIncomplete(const Int& rem)
      : std::runtime_error(
            "meeting integer has an unfactored composite part " + rem.str() +
            "; pass factor hints or raise the budget"),
        remainder(rem) {}
};

/// One place's local Néron pairing. Finite places carry the exact rational
/// multiple m with pairing = m * log p; the archimedean place (p = 0) carries
/// only the numeric value.
struct PlaceContribution {
  Int p = 0;        // 0 marks the archimedean place
  Rat multiple;     // finite places: exact, pairing = multiple * log p
  Real pairing;     // pairing value at output precision
};

struct HeightPairing {
  Real value;  // -(sum of local pairings)
  std::vector<PlaceContribution> breakdown;
  Real error;  // bound on the archimedean numerical error
};

/// Archimedean description of the same classes: labels resolve through
/// PeriodData::aj. E1/E2 must each be a non-special tuple (the caller's
/// responsibility; see the --assert-nonspecial contract).
struct ArchSpec {
  LabelledDivisor D;
  std::vector<std::string> E1, E2;
};

struct GlobalHeightInput {
  MultiPoly curve;  // projective plane model in X, Y, Z
  DivisorSpec D, E;
  ArchSpec arch;
  /// Explicit models, keyed by prime; required for every relevant bad prime.
  std::map<Int, ChartedModel> models;
  /// Precomputed vertical corrections (as multiples of log p) for primes
  /// where only the intersection data of the regular model is available; the
  /// horizontal part is still computed on the naive model.
  std::map<Int, Rat> tabulated_corrections;
  std::vector<Int> factor_hints;
  /// When non-empty, taken as the full list of bad primes of the curve
  /// (skips recomputing/refactoring per pairing on the same curve).
  std::vector<Int> known_bad_primes;
  std::chrono::milliseconds budget{30000};
};

/// Canonical height pairing as minus the sum of local Néron pairings over
/// all relevant places. Non-archimedean parts stay exact rationals; log p is
/// applied only when the total is formed. A relevant bad prime without an
/// explicit model (or tabulated correction) is a hard error.
HeightPairing global_height(const GlobalHeightInput& in,
                            const PeriodData& period);

/// iota(Phi(D), E) from intersection data alone: solve M x = -bD with the
/// first coordinate gauged to zero, return bE . x (a multiple of log p).
Rat tabulated_vertical_pairing(const std::vector<std::vector<Int>>& M,
                               const std::vector<Int>& bD,
                               const std::vector<Int>& bE);

struct RegulatorReport {
  RMat gram;
  Real determinant;
  bool near_singular = false;
  /// The Mordell-Weil group is only known up to finite index here, so the
  /// determinant matches the regulator up to an integral square factor.
  std::string caveat = "up to an integral square factor";
};

struct AsymmetricGram : std::runtime_error {
  AsymmetricGram()
      : std::runtime_error("height Gram matrix is asymmetric beyond tolerance") {
  }
};

/// Gram determinant of a symmetric matrix of height pairings. Near-zero or
/// negative determinants are flagged (rank deficiency / numerical noise).
RegulatorReport gram_and_regulator(const RMat& gram,
                                   const Real& symmetry_tol = Real("1e-6"));

/// L_star * torsion^2 / (regulator * real_period * prod(tamagawa)).
/// All inputs must be positive.
Real bsd_sha_estimate(const Real& L_star, const Real& regulator,
                      const Real& real_period,
                      const std::vector<Int>& tamagawa, unsigned torsion_order);

}  // namespace neron
