#pragma once

#include "neron/intersect.hpp"

#include <chrono>

namespace neron {

struct Factorization {
  std::vector<std::pair<Int, unsigned>> prime_powers;  // probable primes
  Int composite_remainder = 1;  // > 1 when the budget ran out
  bool complete() const { return composite_remainder == 1; }
};

/// Trial division to 10^6, then Pollard rho (Brent) within a time budget.
/// Hints are divided out first when they divide n.
Factorization factorize(Int n, std::chrono::milliseconds budget,
                        const std::vector<Int>& hints = {});

struct PlaceReport {
  std::vector<Int> bad_primes;
  Int meeting_integer = 1;             // n_{D,E}, product over charts / pairs
  Factorization meeting_factorization;
  std::vector<std::pair<Int, unsigned>> relevant;  // prime -> precision bound
  bool archimedean = true;
};

/// Primes over which some standard affine patch of the plane model fails to
/// be smooth over Z: per chart, the integer entry of a Gröbner basis of the
/// jacobian ideal, factored; union of prime factors.
std::vector<Int> bad_primes(const MultiPoly& curve_xyz,
                            std::chrono::milliseconds budget =
                                std::chrono::milliseconds(30000),
                            const std::vector<Int>& hints = {});

/// n_{D,E}: product of the integer entries of Gröbner bases of
/// I + I_D + I_E over all charts and effective/anti-effective pairs.
Int meeting_integer(const MultiPoly& curve_xyz, const DivisorSpec& D,
                    const DivisorSpec& E);

unsigned precision_bound(const Int& p, const Int& n_de);

/// Same, with the bad primes supplied by the caller (e.g. precomputed once
/// for many pairings on one curve).
PlaceReport relevant_places_given_bad(const std::vector<Int>& bad,
                                      const MultiPoly& curve_xyz,
                                      const DivisorSpec& D,
                                      const DivisorSpec& E,
                                      std::chrono::milliseconds budget =
                                          std::chrono::milliseconds(30000),
                                      const std::vector<Int>& hints = {});

PlaceReport relevant_places(const MultiPoly& curve_xyz, const DivisorSpec& D,
                            const DivisorSpec& E,
                            std::chrono::milliseconds budget =
                                std::chrono::milliseconds(30000),
                            const std::vector<Int>& hints = {});

}  // namespace neron
