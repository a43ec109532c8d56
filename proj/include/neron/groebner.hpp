#pragma once

#include "neron/poly.hpp"

#include <vector>

namespace neron {

/// Raised when a quotient that should be finite at p is not (common component
/// or insufficient saturation).
struct QuotientNotFinite : std::runtime_error {
  QuotientNotFinite() : std::runtime_error("quotient not finite at p") {}
};

/// Raised when a length computation would need >= N digits of p-adic
/// precision; callers must retry with a larger N (or treat as a hard error).
struct InsufficientPrecision : std::runtime_error {
  InsufficientPrecision()
      : std::runtime_error("insufficient p-adic precision") {}
};

struct UnsupportedRing : std::runtime_error {
  UnsupportedRing() : std::runtime_error("unsupported coefficient ring") {}
};

/// Gröbner basis of the ideal generated by `gens` (relations are included by
/// the IdealPresentation overload). Over Q this is a reduced basis; over Z
/// (and Z/p^N, realized as Z with p^N adjoined) a strong (D-)basis, so normal
/// forms are unique and membership is decidable.
std::vector<MultiPoly> groebner_basis(const std::vector<MultiPoly>& gens,
                                      const MonomialOrder& ord);

std::vector<MultiPoly> groebner_basis(const IdealPresentation& ideal,
                                      const MonomialOrder& ord);

/// Normal form of f against a (strong) Gröbner basis.
MultiPoly normal_form(const MultiPoly& f, const std::vector<MultiPoly>& basis,
                      const MonomialOrder& ord);

/// Ideal membership via normal form.
bool in_ideal(const MultiPoly& f, const std::vector<MultiPoly>& basis,
              const MonomialOrder& ord);

/// Saturation (I : f^inf) in the ambient ring of `ideal` (relations adjoined
/// to the computation, preserved in the result).
IdealPresentation saturate(const IdealPresentation& ideal, const MultiPoly& f);

/// Positive generator of (ideal  ∩ Z), or nullopt when the intersection is
/// trivial ("zero marker"). Expects a Z-coefficient ideal.
std::optional<Int> gb_integer(const IdealPresentation& ideal);

/// v_p(#((R/ideal) ⊗ Z_p)) computed modulo p^N. Throws QuotientNotFinite /
/// InsufficientPrecision.
unsigned quotient_log_length(const IdealPresentation& ring,
                             const IdealPresentation& ideal, const Int& p,
                             unsigned precision);

}  // namespace neron
