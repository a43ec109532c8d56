#pragma once

#include "neron/real.hpp"

#include <map>
#include <string>
#include <utility>

namespace neron {

struct OnThetaDivisor : std::runtime_error {
  OnThetaDivisor()
      : std::runtime_error(
            "theta value indistinguishable from 0 at working precision") {}
};

struct NoVanishingCandidate : std::runtime_error {
  NoVanishingCandidate()
      : std::runtime_error(
            "no half-period candidate makes theta vanish at the test point "
            "(bad period data or special test divisor)") {}
};

struct PrecisionUnreachable : std::runtime_error {
  PrecisionUnreachable()
      : std::runtime_error(
            "requested theta error unreachable at configured precision") {}
};

/// Analytic data of the Jacobian: small period matrix, fixed Abel-Jacobi
/// lifts of the labelled points, the image of a canonical divisor, and the
/// labels (with multiplicity) of g-1 points whose sum is used to test + find
/// the two-torsion translate W.
struct PeriodData {
  unsigned g = 0;
  CMat tau;
  std::map<std::string, CVec> aj;
  CVec canonical_image;
  std::vector<std::string> theta_test;
  unsigned precision = 30;

  const CVec& aj_of(const std::string& label) const;
};

struct ThetaValue {
  Cplx value;
  Real abs_error;
};

/// theta(z, tau) = sum over n in Z^g of exp(pi i n^T tau n + 2 pi i n^T z),
/// via quasi-periodic reduction of z and an ellipsoid-truncated sum whose
/// radius is chosen from a Gaussian tail bound to meet eps.
ThetaValue riemann_theta(const CVec& z, const CMat& tau, const Real& eps);

/// -log|theta(z, tau)| + pi Im(z)^T Im(tau)^{-1} Im(z); the Neron function
/// with respect to the -alpha(W) translate of the theta divisor. Throws
/// OnThetaDivisor when theta is numerically 0.
Real neron_lambda(const CVec& z, const CMat& tau);

struct FindWReport {
  CVec w;
  Real theta_abs;   // |theta| at the test point for the winner
  Real runner_up;   // second-smallest |theta| over all candidates
};

/// Search the 2^{2g} candidates w = (canonical_image + m + tau n)/2 for the
/// one where theta vanishes at z = sum of the theta_test lifts minus w.
FindWReport find_w(const PeriodData& period);

/// Labelled degree-0 divisor for the archimedean pairing: point label with
/// integer multiplicity; multiplicities must sum to 0.
using LabelledDivisor = std::vector<std::pair<std::string, int>>;

/// <D, E>_infty for E = E1 - E2 with E1, E2 effective of degree g given as
/// label lists (non-specialness is the caller's assertion). For a point pair
/// D = P1 - P2 this is
///   -log|theta(z11) theta(z22) / (theta(z12) theta(z21))|
///     - 2 pi Im(z_E)^T Im(tau)^{-1} Im(z_D)
/// with z_ij = aj(P_i) - aj(E_j) + w; general D is decomposed into ordered
/// pairs by greedy matching (the value is matching-independent).
Real archimedean_pairing(const LabelledDivisor& D,
                         const std::vector<std::string>& E1,
                         const std::vector<std::string>& E2,
                         const PeriodData& period);

/// Same, with a precomputed w (find_w is otherwise run internally).
Real archimedean_pairing(const LabelledDivisor& D,
                         const std::vector<std::string>& E1,
                         const std::vector<std::string>& E2,
                         const PeriodData& period, const CVec& w);

}  // namespace neron
