#include "neron/height.hpp"

#include <algorithm>

namespace neron {

namespace {

Real to_real(const Int& n) { return Real(n.str()); }

Real to_real(const Rat& r) { return to_real(num(r)) / to_real(den(r)); }

/// M x = rhs with x[0] gauged to 0; returns x. Throws on inconsistency.
std::vector<Rat> solve_gauged(const std::vector<std::vector<Int>>& M,
                              const std::vector<Rat>& rhs) {
  const size_t n = M.size();
  std::vector<Rat> x(n, Rat(0));
  if (n <= 1) return x;
  const size_t cols = n - 1;
  std::vector<std::vector<Rat>> A(n, std::vector<Rat>(n, Rat(0)));
  for (size_t i = 0; i < n; ++i) {
    if (M[i].size() != n) throw std::runtime_error("ragged intersection matrix");
    for (size_t j = 1; j < n; ++j) A[i][j - 1] = Rat(M[i][j]);
    A[i][cols] = rhs[i];
  }
  size_t rank = 0;
  for (size_t c = 0; c < cols && rank < n; ++c) {
    size_t piv = rank;
    while (piv < n && A[piv][c] == 0) ++piv;
    if (piv == n) continue;
    std::swap(A[piv], A[rank]);
    Rat d = A[rank][c];
    for (auto& v : A[rank]) v /= d;
    for (size_t r = 0; r < n; ++r) {
      if (r == rank || A[r][c] == 0) continue;
      Rat f = A[r][c];
      for (size_t k = 0; k <= cols; ++k) A[r][k] -= f * A[rank][k];
    }
    ++rank;
  }
  for (size_t r = rank; r < n; ++r)
    if (A[r][cols] != 0)
      throw std::runtime_error("inconsistent intersection system");
  for (size_t r = 0; r < rank; ++r) {
    size_t lead = cols;
    for (size_t c = 0; c < cols; ++c)
      if (A[r][c] != 0) {
        lead = c;
        break;
      }
    if (lead == cols) continue;
    Rat v = A[r][cols];
    for (size_t c = lead + 1; c < cols; ++c) v -= A[r][c] * x[c + 1];
    x[lead + 1] = v;
  }
  return x;
}

}  // namespace

Rat tabulated_vertical_pairing(const std::vector<std::vector<Int>>& M,
                               const std::vector<Int>& bD,
                               const std::vector<Int>& bE) {
  if (bD.size() != M.size() || bE.size() != M.size())
    throw std::runtime_error("incidence vector length mismatch");
  std::vector<Rat> rhs(M.size());
  for (size_t i = 0; i < M.size(); ++i) rhs[i] = Rat(-bD[i]);
  std::vector<Rat> x = solve_gauged(M, rhs);
  Rat out(0);
  for (size_t i = 0; i < x.size(); ++i) out += x[i] * Rat(bE[i]);
  return out;
}

HeightPairing global_height(const GlobalHeightInput& in,
                            const PeriodData& period) {
  PlaceReport places =
      in.known_bad_primes.empty()
          ? relevant_places(in.curve, in.D, in.E, in.budget, in.factor_hints)
          : relevant_places_given_bad(in.known_bad_primes, in.curve, in.D,
                                      in.E, in.budget, in.factor_hints);
  if (!places.meeting_factorization.complete())
    throw FactorizationIncomplete(
        places.meeting_factorization.composite_remainder);

  HeightPairing out;
  Real total(0);
  for (const auto& [p, prec] : places.relevant) {
    (void)prec;
    Rat m;
    auto it = in.models.find(p);
    if (it != in.models.end()) {
      m = local_neron_pairing(in.D, in.E, it->second).value;
    } else {
      bool bad = std::find(places.bad_primes.begin(), places.bad_primes.end(),
                           p) != places.bad_primes.end();
      auto tab = in.tabulated_corrections.find(p);
      if (bad && tab == in.tabulated_corrections.end()) throw MissingModel(p);
      ChartedModel naive = naive_plane_model(in.curve, p);
      m = local_neron_pairing(in.D, in.E, naive).value;
      if (tab != in.tabulated_corrections.end()) m += tab->second;
    }
    PlaceContribution c;
    c.p = p;
    c.multiple = m;
    c.pairing = to_real(m) * log(to_real(p));
    total += c.pairing;
    out.breakdown.push_back(std::move(c));
  }

  Real arch = archimedean_pairing(in.arch.D, in.arch.E1, in.arch.E2, period);
  PlaceContribution ac;
  ac.p = 0;
  ac.pairing = arch;
  out.breakdown.push_back(std::move(ac));

  out.value = -(total + arch);
  out.error = pow(Real(10), -static_cast<int>(period.precision) + 5);
  return out;
}

RegulatorReport gram_and_regulator(const RMat& gram, const Real& symmetry_tol) {
  const size_t n = gram.size();
  for (const auto& row : gram)
    if (row.size() != n) throw AsymmetricGram();
  for (size_t i = 0; i < n; ++i)
    for (size_t j = i + 1; j < n; ++j)
      if (abs(gram[i][j] - gram[j][i]) > symmetry_tol) throw AsymmetricGram();

  RegulatorReport rep;
  rep.gram = gram;
  // symmetrize, then LU-free Gaussian determinant
  RMat a(n, RVec(n, Real(0)));
  Real scale(0);
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      a[i][j] = (gram[i][j] + gram[j][i]) / 2;
      scale = std::max(scale, Real(abs(a[i][j])));
    }
  Real det(1);
  for (size_t c = 0; c < n; ++c) {
    size_t piv = c;
    for (size_t r = c + 1; r < n; ++r)
      if (abs(a[r][c]) > abs(a[piv][c])) piv = r;
    if (piv != c) {
      std::swap(a[piv], a[c]);
      det = -det;
    }
    det *= a[c][c];
    if (a[c][c] == 0) break;
    for (size_t r = c + 1; r < n; ++r) {
      Real f = a[r][c] / a[c][c];
      for (size_t k = c; k < n; ++k) a[r][k] -= f * a[c][k];
    }
  }
  rep.determinant = det;
  Real floor = pow(std::max(scale, Real(1)), static_cast<int>(n)) *
               pow(Real(10), -static_cast<int>(Real::default_precision()) + 12);
  rep.near_singular = (det <= floor);
  return rep;
}

Real bsd_sha_estimate(const Real& L_star, const Real& regulator,
                      const Real& real_period,
                      const std::vector<Int>& tamagawa,
                      unsigned torsion_order) {
  if (L_star <= 0 || regulator <= 0 || real_period <= 0 || torsion_order == 0)
    throw std::invalid_argument("bsd_sha_estimate requires positive inputs");
  Real denom = regulator * real_period;
  for (const auto& c : tamagawa) {
    if (c <= 0) throw std::invalid_argument("nonpositive Tamagawa number");
    denom *= to_real(c);
  }
  return L_star * Real(torsion_order) * Real(torsion_order) / denom;
}

}  // namespace neron
