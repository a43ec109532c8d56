#pragma once

#include <boost/multiprecision/mpfr.hpp>

#include <optional>
#include <stdexcept>
#include <vector>

namespace neron {

/// Arbitrary-precision real; working precision is the global default of the
/// backend, set per job via set_working_digits.
using Real = boost::multiprecision::mpfr_float;

inline void set_working_digits(unsigned digits10) {
  // headroom over the requested output digits for intermediate rounding
  Real::default_precision(digits10 + 10);
}

inline Real real_pi() { return 4 * atan(Real(1)); }

struct Cplx {
  Real re, im;

  Cplx() : re(0), im(0) {}
  Cplx(Real r) : re(std::move(r)), im(0) {}
  Cplx(Real r, Real i) : re(std::move(r)), im(std::move(i)) {}

  Cplx operator+(const Cplx& o) const { return {re + o.re, im + o.im}; }
  Cplx operator-(const Cplx& o) const { return {re - o.re, im - o.im}; }
  Cplx operator-() const { return {-re, -im}; }
  Cplx operator*(const Cplx& o) const {
    return {re * o.re - im * o.im, re * o.im + im * o.re};
  }
  Cplx operator/(const Cplx& o) const {
    Real d = o.re * o.re + o.im * o.im;
    return {(re * o.re + im * o.im) / d, (im * o.re - re * o.im) / d};
  }
  Cplx& operator+=(const Cplx& o) {
    re += o.re;
    im += o.im;
    return *this;
  }
  Cplx& operator-=(const Cplx& o) {
    re -= o.re;
    im -= o.im;
    return *this;
  }
  Cplx& operator*=(const Cplx& o) { return *this = *this * o; }
};

inline Real cabs(const Cplx& z) { return sqrt(z.re * z.re + z.im * z.im); }
inline Cplx cexp(const Cplx& z) {
  Real m = exp(z.re);
  return {m * cos(z.im), m * sin(z.im)};
}
inline Cplx conj(const Cplx& z) { return {z.re, -z.im}; }

using RVec = std::vector<Real>;
using RMat = std::vector<RVec>;
using CVec = std::vector<Cplx>;
using CMat = std::vector<CVec>;

inline RVec imag(const CVec& v) {
  RVec out;
  out.reserve(v.size());
  for (const auto& z : v) out.push_back(z.im);
  return out;
}

inline RMat imag(const CMat& m) {
  RMat out;
  out.reserve(m.size());
  for (const auto& row : m) out.push_back(imag(row));
  return out;
}

/// Lower-triangular L with A = L L^T; nullopt when A is not (numerically)
/// positive definite.
inline std::optional<RMat> cholesky(const RMat& a) {
  const size_t n = a.size();
  RMat l(n, RVec(n, Real(0)));
  for (size_t i = 0; i < n; ++i) {
    for (size_t j = 0; j <= i; ++j) {
      Real s = a[i][j];
      for (size_t k = 0; k < j; ++k) s -= l[i][k] * l[j][k];
      if (i == j) {
        if (s <= 0) return std::nullopt;
        l[i][i] = sqrt(s);
      } else {
        l[i][j] = s / l[j][j];
      }
    }
  }
  return l;
}

/// Solve A x = b for symmetric positive definite A via its Cholesky factor.
inline RVec solve_with_cholesky(const RMat& l, const RVec& b) {
  const size_t n = l.size();
  RVec y(n), x(n);
  for (size_t i = 0; i < n; ++i) {
    Real s = b[i];
    for (size_t k = 0; k < i; ++k) s -= l[i][k] * y[k];
    y[i] = s / l[i][i];
  }
  for (size_t i = n; i-- > 0;) {
    Real s = y[i];
    for (size_t k = i + 1; k < n; ++k) s -= l[k][i] * x[k];
    x[i] = s / l[i][i];
  }
  return x;
}

/// v^T A^{-1} v for symmetric positive definite A given by its Cholesky
/// factor.
inline Real inverse_quadratic_form(const RMat& l, const RVec& v) {
  RVec x = solve_with_cholesky(l, v);
  Real s = 0;
  for (size_t i = 0; i < v.size(); ++i) s += v[i] * x[i];
  return s;
}

}  // namespace neron
