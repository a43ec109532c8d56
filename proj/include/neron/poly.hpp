#pragma once

#include "neron/numbers.hpp"

#include <map>
#include <optional>
#include <string>
#include <vector>

namespace neron {

enum class RingKind { rationals, integers, integers_mod_p_power };

struct CoefficientRing {
  RingKind kind = RingKind::rationals;
  Int p = 0;            // prime, for integers_mod_p_power
  unsigned exponent = 0;  // N >= 1, for integers_mod_p_power

  static CoefficientRing Q() { return {RingKind::rationals, 0, 0}; }
  static CoefficientRing Z() { return {RingKind::integers, 0, 0}; }
  static CoefficientRing ZmodPN(const Int& p, unsigned n) {
    if (n < 1) throw std::invalid_argument("modulus exponent must be >= 1");
    return {RingKind::integers_mod_p_power, p, n};
  }

  Int modulus() const { return ipow(p, exponent); }  // only for mod-p^N rings

  bool operator==(const CoefficientRing& o) const {
    return kind == o.kind && (kind != RingKind::integers_mod_p_power ||
                              (p == o.p && exponent == o.exponent));
  }
};

using Exponents = std::vector<int>;

inline int total_degree(const Exponents& e) {
  int d = 0;
  for (int x : e) d += x;
  return d;
}

inline bool divides(const Exponents& a, const Exponents& b) {
  for (size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

inline Exponents exp_sub(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] - b[i];
  return r;
}

inline Exponents exp_add(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[i] + b[i];
  return r;
}

inline Exponents exp_lcm(const Exponents& a, const Exponents& b) {
  Exponents r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = std::max(a[i], b[i]);
  return r;
}

/// Total order on monomials, compatible with multiplication.
/// block orders compare the first `block_size` variables (degrevlex) before
/// the rest (degrevlex); used for elimination.
struct MonomialOrder {
  enum Kind { degrevlex, lex, block };
  Kind kind = degrevlex;
  size_t block_size = 0;

  static MonomialOrder Degrevlex() { return {degrevlex, 0}; }
  static MonomialOrder Lex() { return {lex, 0}; }
  static MonomialOrder Block(size_t first_block) { return {block, first_block}; }

  // returns <0, 0, >0  (a < b, equal, a > b)
  int cmp(const Exponents& a, const Exponents& b) const;
};

/// Sparse multivariate polynomial with exact coefficients.
///
/// Terms are stored in a map keyed by exponent vector (container order);
/// leading terms w.r.t. a MonomialOrder are found by scan, which is fine at
/// the sizes arising here.
class MultiPoly {
 public:
  MultiPoly() = default;
  MultiPoly(std::vector<std::string> vars, CoefficientRing ring)
      : vars_(std::move(vars)), ring_(ring) {}

  static MultiPoly constant(const Rat& c, std::vector<std::string> vars,
                            CoefficientRing ring);
  static MultiPoly variable(const std::string& name,
                            const std::vector<std::string>& vars,
                            CoefficientRing ring);

  const std::vector<std::string>& vars() const { return vars_; }
  const CoefficientRing& ring() const { return ring_; }
  const std::map<Exponents, Rat>& terms() const { return terms_; }

  bool is_zero() const { return terms_.empty(); }
  bool is_constant() const;
  Rat constant_value() const;  // 0 if zero polynomial
  size_t nvars() const { return vars_.size(); }

  /// Adds c * x^e, dropping the term if the result is zero. Reduces mod p^N
  /// when the ring is Z/p^N.
  void add_term(const Exponents& e, const Rat& c);

  MultiPoly operator-() const;
  MultiPoly operator+(const MultiPoly& o) const;
  MultiPoly operator-(const MultiPoly& o) const;
  MultiPoly operator*(const MultiPoly& o) const;
  bool operator==(const MultiPoly& o) const {
    return vars_ == o.vars_ && terms_ == o.terms_;
  }

  MultiPoly scaled(const Rat& c) const;
  /// multiply by c * x^e
  MultiPoly times_term(const Rat& c, const Exponents& e) const;

  int degree() const;  // total degree, -1 for zero
  std::pair<Exponents, Rat> leading_term(const MonomialOrder& ord) const;

  MultiPoly derivative(size_t var) const;

  /// Re-express over a superset of variables (names must all be present in
  /// new_vars) and/or another coefficient ring.
  MultiPoly lifted(const std::vector<std::string>& new_vars,
                   CoefficientRing ring) const;

  /// Multiply through by the lcm of coefficient denominators; for moving
  /// Q-presentations to Z.
  MultiPoly cleared_denominators() const;

  /// Canonical sparse string: terms in descending degrevlex order,
  /// "c*v1^e1*v2^e2" joined with " + " / " - ".
  std::string to_string() const;

  /// Parse the canonical form (also accepts '-' signs, rational coefficients
  /// "a/b", implicit coefficient 1 and implicit exponent 1, and parenthesis-free
  /// products in any order). Throws std::runtime_error with a character
  /// position on malformed input.
  static MultiPoly parse(const std::string& s,
                         const std::vector<std::string>& vars,
                         CoefficientRing ring);

  /// Ring homomorphism: substitute images[i] for the i-th variable. The
  /// images must all share one variable set and ring, which become those of
  /// the result.
  MultiPoly substituted(const std::vector<MultiPoly>& images) const;

 private:
  void normalize_coeff(Rat& c) const;
  std::vector<std::string> vars_;
  CoefficientRing ring_{};
  std::map<Exponents, Rat> terms_;
};

/// A finitely generated ideal in Z[vars]/(relations) (or Q, Z/p^N).
struct IdealPresentation {
  std::vector<std::string> vars;
  CoefficientRing ring;
  std::vector<MultiPoly> generators;
  std::vector<MultiPoly> relations;  // defining relations of the ambient ring

  std::vector<MultiPoly> all_polys() const {
    std::vector<MultiPoly> v = relations;
    v.insert(v.end(), generators.begin(), generators.end());
    return v;
  }
};

}  // namespace neron
