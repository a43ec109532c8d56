#include "neron/theta.hpp"

#include <boost/math/special_functions/erf.hpp>
#include <boost/math/special_functions/gamma.hpp>

#include <algorithm>

namespace neron {

const CVec& PeriodData::aj_of(const std::string& label) const {
  auto it = aj.find(label);
  if (it == aj.end())
    throw std::invalid_argument("no Abel-Jacobi image for label '" + label +
                                "'");
  return it->second;
}

namespace {

Real default_eps() {
  return pow(Real(10), -int(Real::default_precision()) + 5);
}

RMat imag_part_checked(const CMat& tau) {
  const size_t g = tau.size();
  for (const auto& row : tau)
    if (row.size() != g)
      throw std::invalid_argument("period matrix is not square");
  Real tol = default_eps();
  for (size_t i = 0; i < g; ++i)
    for (size_t j = i + 1; j < g; ++j)
      if (cabs(tau[i][j] - tau[j][i]) > tol * (1 + cabs(tau[i][j])))
        throw std::invalid_argument("period matrix is not symmetric");
  return imag(tau);
}

RMat cholesky_checked(const RMat& y) {
  auto l = cholesky(y);
  if (!l)
    throw std::invalid_argument(
        "imaginary part of the period matrix is not positive definite");
  return *l;
}

// I_k(b) = int_b^inf t^k exp(-pi t^2) dt, for the tail bound; b >= 0.
Real gaussian_moment_tail(unsigned k, const Real& b, const Real& pi) {
  if (k == 0) return boost::math::erfc(sqrt(pi) * b) / 2;
  if (k == 1) return exp(-pi * b * b) / (2 * pi);
  return pow(b, int(k) - 1) * exp(-pi * b * b) / (2 * pi) +
         Real(int(k) - 1) / (2 * pi) * gaussian_moment_tail(k - 2, b, pi);
}

// Upper bound for sum over ||n - c||_Y > R of exp(-pi ||n - c||_Y^2):
// cover the omitted lattice points by unit cubes; a cube displaces the norm
// by at most the Y-diameter d of the unit cube, so the sum is at most
//   (det Y)^{-1/2} * surf(g) * int_{R-2d}^inf (t + d)^{g-1} exp(-pi t^2) dt
// with surf(g) = 2 pi^{g/2} / Gamma(g/2). Requires R > 2d.
Real ellipsoid_tail_bound(const RMat& y, const Real& big_r, const Real& d,
                          const Real& pi) {
  const unsigned g = unsigned(y.size());
  Real det = 1;
  auto l = cholesky(y);
  for (unsigned i = 0; i < g; ++i) det *= (*l)[i][i] * (*l)[i][i];
  Real surf = 2 * pow(pi, Real(g) / 2) / boost::math::tgamma(Real(g) / 2);
  Real b = big_r - 2 * d;
  if (b <= 0) return Real(1e30);
  Real integral = 0;
  Real binom = 1;
  // (t + d)^{g-1} = sum_k C(g-1, k) d^{g-1-k} t^k
  for (unsigned k = 0; k <= g - 1; ++k) {
    integral += binom * pow(d, int(g - 1 - k)) * gaussian_moment_tail(k, b, pi);
    binom = binom * Real(int(g - 1 - k)) / Real(int(k) + 1);
  }
  return surf / sqrt(det) * integral;
}

struct Reduction {
  CVec z_red;          // z - m0 - tau n0 with small imaginary part
  Cplx log_prefactor;  // theta(z) = exp(log_prefactor) * theta(z_red)
};

Reduction reduce_argument(const CVec& z, const CMat& tau, const RMat& ychol,
                          const Real& pi) {
  const size_t g = z.size();
  RVec yz = imag(z);
  RVec n_real = solve_with_cholesky(ychol, yz);
  std::vector<long> n0(g), m0(g);
  for (size_t i = 0; i < g; ++i) n0[i] = lround(double(n_real[i]));
  CVec shifted(g);
  for (size_t i = 0; i < g; ++i) {
    Cplx acc = z[i];
    for (size_t j = 0; j < g; ++j) acc -= tau[i][j] * Cplx(Real(n0[j]));
    m0[i] = lround(double(acc.re));
    shifted[i] = acc - Cplx(Real(m0[i]));
  }
  // theta(z_red + m0 + tau n0) = exp(-pi i n0^T tau n0 - 2 pi i n0^T z_red)
  //                              * theta(z_red)
  Cplx quad(0, 0), lin(0, 0);
  for (size_t i = 0; i < g; ++i) {
    for (size_t j = 0; j < g; ++j)
      quad += Cplx(Real(n0[i])) * tau[i][j] * Cplx(Real(n0[j]));
    lin += Cplx(Real(n0[i])) * shifted[i];
  }
  Cplx i_pi(Real(0), pi);
  Reduction out;
  out.z_red = std::move(shifted);
  out.log_prefactor = -(i_pi * quad) - (i_pi * lin * Cplx(Real(2)));
  return out;
}

// all integer points with ||n - c||_Y <= R, by triangular recursion on the
// Cholesky factor
void enumerate_ellipsoid(const RMat& lchol, const RVec& c, const Real& big_r,
                         std::vector<std::vector<long>>& out) {
  const size_t g = lchol.size();
  // upper-triangular factor U with Y = U^T U is the transpose of lchol
  std::vector<long> n(g, 0);
  RVec partial(g, Real(0));
  auto rec = [&](auto&& self, size_t level, const Real& rem2) -> void {
    size_t i = level - 1;
    // U[i][j] = lchol[j][i] for j >= i
    Real uii = lchol[i][i];
    Real shift = 0;
    for (size_t j = i + 1; j < g; ++j)
      shift += lchol[j][i] * (Real(n[j]) - c[j]);
    // (uii (n_i - c_i) + shift)^2 <= rem2
    Real half = sqrt(rem2) / uii;
    Real center = c[i] - shift / uii;
    long lo = long(ceil(double(center - half) - 1e-9));
    long hi = long(floor(double(center + half) + 1e-9));
    for (long v = lo; v <= hi; ++v) {
      n[i] = v;
      Real t = uii * (Real(v) - c[i]) + shift;
      Real rem_next = rem2 - t * t;
      if (rem_next < 0) continue;
      if (i == 0)
        out.push_back(n);
      else
        self(self, i, rem_next);
    }
  };
  rec(rec, g, big_r * big_r);
}

}  // namespace

ThetaValue riemann_theta(const CVec& z, const CMat& tau, const Real& eps) {
  if (eps <= 0) throw std::invalid_argument("eps must be positive");
  const size_t g = z.size();
  if (tau.size() != g) throw std::invalid_argument("dimension mismatch");
  const Real pi = real_pi();
  RMat y = imag_part_checked(tau);
  RMat ychol = cholesky_checked(y);

  Reduction red = reduce_argument(z, tau, ychol, pi);
  RVec yr = imag(red.z_red);

  // term magnitudes: exp(pi q) * exp(-pi ||n - c||_Y^2), c = -Y^{-1} Im z
  RVec c = solve_with_cholesky(ychol, yr);
  for (auto& v : c) v = -v;
  Real q = 0;
  for (size_t i = 0; i < g; ++i) q += yr[i] * (-c[i]);
  Real peak = exp(pi * q);

  // Y-diameter of the unit cube, bounded by sqrt(sum |Y_ij|)
  Real d2 = 0;
  for (const auto& row : y)
    for (const auto& v : row) d2 += abs(v);
  Real d = sqrt(d2);

  Real big_r = 2 * d + 1;
  Real target = eps / (2 * peak);
  int guard = 0;
  while (ellipsoid_tail_bound(y, big_r, d, pi) > target) {
    big_r += Real(1) / 2;
    if (++guard > 2000) throw PrecisionUnreachable();
  }

  std::vector<std::vector<long>> points;
  enumerate_ellipsoid(ychol, c, big_r, points);

  Cplx i_pi(Real(0), pi);
  Cplx sum(Real(0));
  for (const auto& n : points) {
    Cplx quad(Real(0)), lin(Real(0));
    for (size_t i = 0; i < g; ++i) {
      for (size_t j = 0; j < g; ++j)
        quad += Cplx(Real(n[i])) * tau[i][j] * Cplx(Real(n[j]));
      lin += Cplx(Real(n[i])) * red.z_red[i];
    }
    sum += cexp(i_pi * quad + i_pi * lin * Cplx(Real(2)));
  }

  Cplx pre = cexp(red.log_prefactor);
  Real pre_abs = cabs(pre);
  Real rounding = Real(points.size() + 1) * peak *
                  pow(Real(10), -int(Real::default_precision()) + 2);
  ThetaValue out;
  out.value = pre * sum;
  // the tail contributes at most eps/2 before the prefactor
  out.abs_error = pre_abs * (eps / 2 + rounding);
  return out;
}

Real neron_lambda(const CVec& z, const CMat& tau) {
  const Real pi = real_pi();
  RMat y = imag_part_checked(tau);
  RMat ychol = cholesky_checked(y);
  ThetaValue t = riemann_theta(z, tau, default_eps());
  Real a = cabs(t.value);
  if (a <= 3 * t.abs_error) throw OnThetaDivisor();
  RVec yz = imag(z);
  return -log(a) + pi * inverse_quadratic_form(ychol, yz);
}

FindWReport find_w(const PeriodData& period) {
  const unsigned g = period.g;
  if (period.canonical_image.size() != g)
    throw std::invalid_argument("canonical image has wrong dimension");
  CVec base(g, Cplx(Real(0)));
  for (const auto& label : period.theta_test) {
    const CVec& a = period.aj_of(label);
    for (unsigned i = 0; i < g; ++i) base[i] += a[i];
  }
  Real eps = default_eps();
  const Cplx half(Real(1) / 2);

  struct Candidate {
    CVec w;
    Real value;
  };
  std::vector<Candidate> cands;
  for (size_t mask = 0; mask < (size_t(1) << (2 * g)); ++mask) {
    CVec w(g);
    for (unsigned i = 0; i < g; ++i) {
      Cplx acc = period.canonical_image[i];
      if (mask & (size_t(1) << i)) acc += Cplx(Real(1));
      for (unsigned j = 0; j < g; ++j)
        if (mask & (size_t(1) << (g + j))) acc += period.tau[i][j];
      w[i] = acc * half;
    }
    CVec z(g);
    for (unsigned i = 0; i < g; ++i) z[i] = base[i] - w[i];
    cands.push_back({std::move(w), cabs(riemann_theta(z, period.tau, eps).value)});
  }
  std::vector<Real> values;
  for (const auto& c : cands) values.push_back(c.value);
  std::sort(values.begin(), values.end());
  Real median = values[values.size() / 2];
  Real threshold = median * pow(Real(10), -int(period.precision) / 2);

  size_t best = 0;
  for (size_t i = 1; i < cands.size(); ++i)
    if (cands[i].value < cands[best].value) best = i;
  if (!(cands[best].value < threshold)) throw NoVanishingCandidate();
  FindWReport out;
  out.w = cands[best].w;
  out.theta_abs = cands[best].value;
  out.runner_up = values[1];
  return out;
}

namespace {

Real log_abs_theta(const CVec& z, const CMat& tau, const Real& eps) {
  ThetaValue t = riemann_theta(z, tau, eps);
  Real a = cabs(t.value);
  if (a <= 3 * t.abs_error) throw OnThetaDivisor();
  return log(a);
}

}  // namespace

Real archimedean_pairing(const LabelledDivisor& D,
                         const std::vector<std::string>& E1,
                         const std::vector<std::string>& E2,
                         const PeriodData& period) {
  return archimedean_pairing(D, E1, E2, period, find_w(period).w);
}

Real archimedean_pairing(const LabelledDivisor& D,
                         const std::vector<std::string>& E1,
                         const std::vector<std::string>& E2,
                         const PeriodData& period, const CVec& w) {
  const unsigned g = period.g;
  if (E1.size() != g || E2.size() != g)
    throw std::invalid_argument("E1 and E2 must be effective of degree g");
  int total = 0;
  for (const auto& [label, n] : D) {
    (void)label;
    total += n;
  }
  if (total != 0) throw std::invalid_argument("D must have degree 0");

  const Real pi = real_pi();
  RMat ychol = cholesky_checked(imag_part_checked(period.tau));
  Real eps = default_eps();

  auto sum_labels = [&](const std::vector<std::string>& labels) {
    CVec acc(g, Cplx(Real(0)));
    for (const auto& l : labels) {
      const CVec& a = period.aj_of(l);
      for (unsigned i = 0; i < g; ++i) acc[i] += a[i];
    }
    return acc;
  };
  CVec e1 = sum_labels(E1), e2 = sum_labels(E2);
  RVec im_ze(g);
  for (unsigned i = 0; i < g; ++i) im_ze[i] = e1[i].im - e2[i].im;

  // greedy matching of the positive part against the negative part
  std::vector<std::string> pos, neg;
  for (const auto& [label, n] : D) {
    for (int k = 0; k < n; ++k) pos.push_back(label);
    for (int k = 0; k < -n; ++k) neg.push_back(label);
  }

  auto z_of = [&](const std::string& p, const CVec& ej) {
    const CVec& a = period.aj_of(p);
    CVec z(g);
    for (unsigned i = 0; i < g; ++i) z[i] = a[i] - ej[i] + w[i];
    return z;
  };

  Real value = 0;
  for (size_t k = 0; k < pos.size(); ++k) {
    const std::string& p1 = pos[k];
    const std::string& p2 = neg[k];
    Real four_theta = log_abs_theta(z_of(p1, e1), period.tau, eps) +
                      log_abs_theta(z_of(p2, e2), period.tau, eps) -
                      log_abs_theta(z_of(p1, e2), period.tau, eps) -
                      log_abs_theta(z_of(p2, e1), period.tau, eps);
    const CVec& a1 = period.aj_of(p1);
    const CVec& a2 = period.aj_of(p2);
    RVec im_zd(g);
    for (unsigned i = 0; i < g; ++i) im_zd[i] = a1[i].im - a2[i].im;
    RVec x = solve_with_cholesky(ychol, im_zd);
    Real cross = 0;
    for (unsigned i = 0; i < g; ++i) cross += im_ze[i] * x[i];
    value += -four_theta - 2 * pi * cross;
  }
  return value;
}

}  // namespace neron
