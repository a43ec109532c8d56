#include "doctest.h"

#include "neron/theta.hpp"

#include <random>

using namespace neron;

namespace {

struct PrecisionGuard {
  PrecisionGuard(unsigned digits) { set_working_digits(digits); }
};

std::mt19937 rng(2024);

Real rnd(double lo, double hi) {
  std::uniform_real_distribution<double> d(lo, hi);
  return Real(d(rng));
}

// random symmetric tau with positive definite imaginary part: A + i B B^T
CMat random_tau(unsigned g) {
  RMat a(g, RVec(g, Real(0))), b(g, RVec(g, Real(0)));
  for (unsigned i = 0; i < g; ++i)
    for (unsigned j = 0; j <= i; ++j) {
      a[i][j] = a[j][i] = rnd(-0.5, 0.5);
      b[i][j] = rnd(-1, 1);
    }
  for (unsigned i = 0; i < g; ++i) b[i][i] += 2;  // keep well-conditioned
  CMat tau(g, CVec(g));
  for (unsigned i = 0; i < g; ++i)
    for (unsigned j = 0; j < g; ++j) {
      Real im = 0;
      for (unsigned k = 0; k < g; ++k) im += b[i][k] * b[j][k];
      tau[i][j] = Cplx(a[i][j], im);
    }
  return tau;
}

CVec random_z(unsigned g) {
  CVec z(g);
  for (unsigned i = 0; i < g; ++i) z[i] = Cplx(rnd(-1, 1), rnd(-1, 1));
  return z;
}

// direct summation over a fixed box, independent of the production path
Cplx brute_theta(const CVec& z, const CMat& tau, long box) {
  const unsigned g = unsigned(z.size());
  const Real pi = real_pi();
  Cplx i_pi(Real(0), pi);
  std::vector<long> n(g, -box);
  Cplx sum(Real(0));
  for (;;) {
    Cplx quad(Real(0)), lin(Real(0));
    for (unsigned i = 0; i < g; ++i) {
      for (unsigned j = 0; j < g; ++j)
        quad += Cplx(Real(n[i])) * tau[i][j] * Cplx(Real(n[j]));
      lin += Cplx(Real(n[i])) * z[i];
    }
    sum += cexp(i_pi * quad + i_pi * lin * Cplx(Real(2)));
    unsigned i = 0;
    while (i < g && ++n[i] > box) n[i++] = -box;
    if (i == g) break;
  }
  return sum;
}

}  // namespace

TEST_CASE("theta matches direct summation") {
  PrecisionGuard guard(30);
  Real tol = pow(Real(10), -22);
  for (unsigned g = 1; g <= 3; ++g) {
    auto tau = random_tau(g);
    auto z = random_z(g);
    auto t = riemann_theta(z, tau, pow(Real(10), -25));
    Cplx ref = brute_theta(z, tau, 12);
    CHECK(cabs(t.value - ref) < tol);
    CHECK(cabs(t.value - ref) < t.abs_error + tol);
  }
}

TEST_CASE("theta is even") {
  PrecisionGuard guard(30);
  Real tol = pow(Real(10), -20);
  for (unsigned g = 1; g <= 3; ++g) {
    auto tau = random_tau(g);
    for (int trial = 0; trial < 3; ++trial) {
      auto z = random_z(g);
      CVec mz(g);
      for (unsigned i = 0; i < g; ++i) mz[i] = -z[i];
      auto a = riemann_theta(z, tau, tol / 10);
      auto b = riemann_theta(mz, tau, tol / 10);
      CHECK(cabs(a.value - b.value) < tol);
    }
  }
}

TEST_CASE("theta quasi-periodicity") {
  PrecisionGuard guard(30);
  const Real pi = real_pi();
  Cplx i_pi(Real(0), pi);
  std::uniform_int_distribution<int> ivec(-2, 2);
  for (unsigned g = 1; g <= 3; ++g) {
    auto tau = random_tau(g);
    for (int trial = 0; trial < 3; ++trial) {
      auto z = random_z(g);
      std::vector<int> m(g), n(g);
      for (unsigned i = 0; i < g; ++i) {
        m[i] = ivec(rng);
        n[i] = ivec(rng);
      }
      CVec zs(g);
      for (unsigned i = 0; i < g; ++i) {
        Cplx acc = z[i] + Cplx(Real(m[i]));
        for (unsigned j = 0; j < g; ++j) acc += tau[i][j] * Cplx(Real(n[j]));
        zs[i] = acc;
      }
      Cplx quad(Real(0)), lin(Real(0));
      for (unsigned i = 0; i < g; ++i) {
        for (unsigned j = 0; j < g; ++j)
          quad += Cplx(Real(n[i])) * tau[i][j] * Cplx(Real(n[j]));
        lin += Cplx(Real(n[i])) * z[i];
      }
      Cplx factor = cexp(-(i_pi * quad) - i_pi * lin * Cplx(Real(2)));
      Real eps = pow(Real(10), -24);
      auto lhs = riemann_theta(zs, tau, eps);
      auto rhs = riemann_theta(z, tau, eps);
      Real scale = 1 + cabs(factor);
      CHECK(cabs(lhs.value - factor * rhs.value) < scale * pow(Real(10), -20));
    }
  }
}

TEST_CASE("classical odd half-period zero at g = 1") {
  PrecisionGuard guard(30);
  CMat tau = {{Cplx(Real(0), Real(1))}};
  CVec z = {Cplx(Real(1) / 2, Real(1) / 2)};
  auto t = riemann_theta(z, tau, pow(Real(10), -25));
  CHECK(cabs(t.value) < pow(Real(10), -20));
  CHECK_THROWS_AS(neron_lambda(z, tau), OnThetaDivisor);
}

TEST_CASE("neron lambda lattice invariance") {
  PrecisionGuard guard(30);
  std::uniform_int_distribution<int> ivec(-2, 2);
  for (unsigned g = 1; g <= 3; ++g) {
    auto tau = random_tau(g);
    for (int trial = 0; trial < 3; ++trial) {
      auto z = random_z(g);
      CVec zs(g);
      std::vector<int> m(g), n(g);
      for (unsigned i = 0; i < g; ++i) {
        m[i] = ivec(rng);
        n[i] = ivec(rng);
      }
      for (unsigned i = 0; i < g; ++i) {
        Cplx acc = z[i] + Cplx(Real(m[i]));
        for (unsigned j = 0; j < g; ++j) acc += tau[i][j] * Cplx(Real(n[j]));
        zs[i] = acc;
      }
      Real a = neron_lambda(z, tau);
      Real b = neron_lambda(zs, tau);
      CHECK(abs(a - b) < pow(Real(10), -20));
    }
  }
}

TEST_CASE("neron lambda drops the quadratic term on the real axis") {
  PrecisionGuard guard(30);
  CMat tau = {{Cplx(Real(0), Real(1))}};
  CVec z = {Cplx(Real(1) / 2, Real(0))};
  Real lam = neron_lambda(z, tau);
  auto t = riemann_theta(z, tau, pow(Real(10), -25));
  CHECK(abs(lam + log(cabs(t.value))) < pow(Real(10), -22));
}

TEST_CASE("find_w picks the odd half-period for tau = i") {
  PrecisionGuard guard(30);
  PeriodData p;
  p.g = 1;
  p.tau = {{Cplx(Real(0), Real(1))}};
  p.canonical_image = {Cplx(Real(0))};
  p.theta_test = {};  // g - 1 = 0 points: the test point is -w itself
  p.precision = 30;
  auto rep = find_w(p);
  // expected w = (1 + tau)/2; theta(-w) = 0 by oddness
  CHECK(abs(rep.w[0].re - Real(1) / 2) < pow(Real(10), -20));
  CHECK(abs(rep.w[0].im - Real(1) / 2) < pow(Real(10), -20));
  CHECK(rep.theta_abs < pow(Real(10), -18));
  CHECK(rep.runner_up > pow(Real(10), -2));
}

TEST_CASE("find_w fails loudly with shifted canonical data") {
  PrecisionGuard guard(30);
  PeriodData p;
  p.g = 1;
  p.tau = {{Cplx(Real(0), Real(1))}};
  // no candidate (K + half-lattice)/2 lands on the theta zero
  p.canonical_image = {Cplx(Real(0.37), Real(0.11))};
  p.theta_test = {};
  p.precision = 30;
  CHECK_THROWS_AS(find_w(p), NoVanishingCandidate);
}
