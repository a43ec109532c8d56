#pragma once

#include <boost/multiprecision/gmp.hpp>

#include <stdexcept>
#include <string>
#include <vector>

namespace neron {

using Int = boost::multiprecision::mpz_int;
using Rat = boost::multiprecision::mpq_rational;

inline Int num(const Rat& r) { return boost::multiprecision::numerator(r); }
inline Int den(const Rat& r) { return boost::multiprecision::denominator(r); }

inline bool is_integer(const Rat& r) { return den(r) == 1; }

inline Int ipow(const Int& base, unsigned e) {
  Int r = 1, b = base;
  while (e) {
    if (e & 1) r *= b;
    b *= b;
    e >>= 1;
  }
  return r;
}

/// p-adic valuation of a nonzero integer.
inline unsigned valuation(Int n, const Int& p) {
  if (n == 0) throw std::invalid_argument("valuation of zero");
  unsigned v = 0;
  while (n % p == 0) {
    n /= p;
    ++v;
  }
  return v;
}

/// Extended gcd: returns g and sets u, v with u*a + v*b = g, g >= 0.
inline Int ext_gcd(const Int& a, const Int& b, Int& u, Int& v) {
  Int g;
  mpz_gcdext(g.backend().data(), u.backend().data(), v.backend().data(),
             a.backend().data(), b.backend().data());
  return g;
}

inline Int gcd(const Int& a, const Int& b) {
  Int g;
  mpz_gcd(g.backend().data(), a.backend().data(), b.backend().data());
  return g;
}

inline Int lcm(const Int& a, const Int& b) {
  Int g;
  mpz_lcm(g.backend().data(), a.backend().data(), b.backend().data());
  return g;
}

/// Floor division quotient (remainder in [0, |b|)).
inline Int fdiv_q(const Int& a, const Int& b) {
  Int q;
  mpz_fdiv_q(q.backend().data(), a.backend().data(), b.backend().data());
  return q;
}

inline Int fdiv_r(const Int& a, const Int& b) {
  Int r;
  mpz_fdiv_r(r.backend().data(), a.backend().data(), b.backend().data());
  return r;
}

inline bool probably_prime(const Int& n, int reps = 30) {
  return mpz_probab_prime_p(n.backend().data(), reps) != 0;
}

}  // namespace neron
