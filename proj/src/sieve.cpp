#include "constell/sieve.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>
#include <functional>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace constell {

namespace {

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

enum class ChiKind { bump, bump_sq, triangle };

ChiKind chi_kind(const std::string& id) {
  if (id == "bump") return ChiKind::bump;
  if (id == "bump_sq") return ChiKind::bump_sq;
  if (id == "triangle") return ChiKind::triangle;
  throw domain_error("unknown chi id '" + id + "'");
}

}  // namespace

double chi_eval(const std::string& chi_id, double x) {
  ChiKind k = chi_kind(chi_id);
  double ax = std::abs(x);
  if (ax >= 1.0) return 0.0;
  double t = 1.0 - x * x;
  switch (k) {
    case ChiKind::bump:
      return std::exp(1.0 - 1.0 / t);  // = exp(-x^2/(1-x^2))
    case ChiKind::bump_sq:
      return std::exp(-2.0 * x * x / t);
    case ChiKind::triangle:
      return 1.0 - ax;
  }
  return 0.0;
}

double chi_derivative(const std::string& chi_id, double x) {
  ChiKind k = chi_kind(chi_id);
  double ax = std::abs(x);
  if (ax >= 1.0) return 0.0;
  double t = 1.0 - x * x;
  switch (k) {
    case ChiKind::bump:
      return -2.0 * x / (t * t) * std::exp(1.0 - 1.0 / t);
    case ChiKind::bump_sq:
      return -4.0 * x / (t * t) * std::exp(-2.0 * x * x / t);
    case ChiKind::triangle:
      return x >= 0.0 ? -1.0 : 1.0;
  }
  return 0.0;
}

namespace {

double adaptive_simpson(const std::function<double(double)>& f, double a, double b, double fa,
                        double fm, double fb, double whole, double tol, int depth) {
  double m = 0.5 * (a + b);
  double lm = 0.5 * (a + m), rm = 0.5 * (m + b);
  double flm = f(lm), frm = f(rm);
  double left = (m - a) / 6.0 * (fa + 4.0 * flm + fm);
  double right = (b - m) / 6.0 * (fm + 4.0 * frm + fb);
  if (depth <= 0 || std::abs(left + right - whole) < 15.0 * tol)
    return left + right + (left + right - whole) / 15.0;
  return adaptive_simpson(f, a, m, fa, flm, fm, left, tol / 2.0, depth - 1) +
         adaptive_simpson(f, m, b, fm, frm, fb, right, tol / 2.0, depth - 1);
}

double integrate(const std::function<double(double)>& f, double a, double b, double tol) {
  double m = 0.5 * (a + b);
  double fa = f(a), fm = f(m), fb = f(b);
  double whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb);
  return adaptive_simpson(f, a, b, fa, fm, fb, whole, tol, 48);
}

}  // namespace

double c_chi(const std::string& chi_id, double tol) {
  auto f = [&](double x) {
    double d = chi_derivative(chi_id, x);
    return d * d;
  };
  // supp(chi') inside [0,1]; split near the endpoint where the bump decays
  return integrate(f, 0.0, 0.5, tol / 2) + integrate(f, 0.5, 1.0, tol / 2);
}

double c_chi_trapezoid(const std::string& chi_id, i64 points) {
  double h = 1.0 / double(points);
  double sum = 0.0;
  for (i64 i = 0; i <= points; ++i) {
    double x = double(i) * h;
    double d = chi_derivative(chi_id, x);
    double w = (i == 0 || i == points) ? 0.5 : 1.0;
    sum += w * d * d;
  }
  return sum * h;
}

WeightParams make_weight_params(double R, const std::string& chi_id, double w) {
  if (R <= 1.0) throw domain_error("R must exceed 1");
  WeightParams P;
  P.R = R;
  P.chi_id = chi_id;
  P.w = w;
  P.W = 1;
  for (u64 p : sieve_primes(u64(std::max(0.0, std::floor(w)))))
    P.W = mul_i64(P.W, i64(p));
  P.c_chi_value = c_chi(chi_id);
  // Cauchy-Schwarz gives c_chi >= chi(0)^2 = 1, with equality exactly for
  // the triangle cutoff (constant derivative).
  if (P.c_chi_value < 1.0 - 1e-9)
    throw domain_error("c_chi < 1 contradicts the Cauchy-Schwarz lower bound");
  return P;
}

double lambda_ideal(const Ideal& a, const WeightParams& P) {
  double logR = std::log(P.R);
  double sum = 0.0;
  for (const auto& [b, mu] : divisors_up_to(a, P.R, /*square_free_only=*/true)) {
    if (mu == 0) continue;
    sum += double(mu) * chi_eval(P.chi_id, std::log(double(b.norm)) / logR);
  }
  return logR * sum;
}

double lambda_element(const AlgInt& alpha, const WeightParams& P) {
  if (alpha.is_zero()) throw domain_error("Lambda of zero");
  return lambda_ideal(principal_ideal(alpha), P);
}

double lambda_in_ideal(const AlgInt& alpha, const Ideal& a, const WeightParams& P) {
  if (alpha.is_zero()) throw domain_error("Lambda of zero");
  if (!a.contains(alpha)) throw domain_error("element does not lie in the ambient ideal");
  // quotient ideal alpha a^{-1} via exponent subtraction
  auto fa = factor_ideal(principal_ideal(alpha));
  auto fi = factor_ideal(a);
  std::map<Ideal, int> exps;
  for (auto& [p, e] : fa.factors) exps[p] += e;
  for (auto& [p, e] : fi.factors) exps[p] -= e;
  FactoredIdeal quotient;
  for (auto& [p, e] : exps) {
    if (e < 0) throw domain_error("ambient ideal does not divide the element");
    if (e > 0) quotient.factors.push_back({p, e});
  }
  return lambda_ideal(recombine(*alpha.field, quotient), P);
}

// ---------------------------------------------------------------------------
// Linear forms
// ---------------------------------------------------------------------------

LinearFormFamily build_linear_forms(const Shape& S_in) {
  Shape S = S_in;
  if (!S.standard) throw domain_error("linear forms need a standard shape");
  LinearFormFamily fam;
  fam.shape = S;
  const int n = S.dim;
  // order the points with 0 last: s_1, ..., s_r, s_{r+1} = 0
  std::vector<ZVec> pts;
  ZVec zero(n, 0);
  for (const auto& p : S.points)
    if (p != zero) pts.push_back(p);
  if (pts.empty()) throw domain_error("shape {0} is degenerate for the linear forms family");
  std::sort(pts.begin(), pts.end());
  const int r = int(pts.size());
  fam.r = r;
  fam.t = 2 * r + 2;
  // the domain coordinate layout: (a_1^(0), ..., a_{r+1}^(0), a_1^(1), ..., a_{r+1}^(1))
  auto col_of = [&](int i, int sign) { return sign * (r + 1) + i; };  // i in [0, r]
  for (int j = 0; j < r + 1; ++j) {
    // e_j = [r+1] minus {j}; omega runs over {0,1}^{e_j}
    std::vector<int> ej;
    for (int i = 0; i < r + 1; ++i)
      if (i != j) ej.push_back(i);
    for (u64 mask = 0; mask < (u64(1) << r); ++mask) {
      ZMat m(n, ZVec(fam.t, 0));
      std::string bits;
      for (size_t idx = 0; idx < ej.size(); ++idx) {
        int i = ej[idx];
        int omega_i = int((mask >> idx) & 1);
        bits.push_back(char('0' + omega_i));
        int col = col_of(i, omega_i);
        if (j < r) {
          if (i < r) {
            // coefficient (s_i - s_j) on a_i^(omega_i)
            for (int row = 0; row < n; ++row)
              m[row][col] = checked_i64(i128(pts[i][row]) - pts[j][row], "linear form");
          } else {
            // i = r+1 slot: coefficient s_j
            for (int row = 0; row < n; ++row) m[row][col] = pts[j][row];
          }
        } else {
          // j = r+1: sum of s_i a_i^(omega_i) over i in [r]
          for (int row = 0; row < n; ++row) m[row][col] = pts[i][row];
        }
      }
      fam.forms.push_back(std::move(m));
      fam.labels.push_back("j=" + std::to_string(j + 1) + " omega=" + bits);
    }
  }
  // kernel independence across the family (exact ranks)
  for (size_t x = 0; x < fam.forms.size(); ++x)
    for (size_t y = 0; y < fam.forms.size(); ++y) {
      if (x == y) continue;
      if (!kernel_not_contained(fam.forms[x], fam.forms[y]))
        throw domain_error("kernel containment inside the linear forms family");
    }
  // finite cokernels: every map must be surjective onto a full-rank sublattice
  for (const auto& m : fam.forms)
    if (rank_zmat(m) != n) throw domain_error("linear form with infinite cokernel");
  return fam;
}

bool kernel_not_contained(const ZMat& a, const ZMat& b) {
  // ker(a) subset of ker(b) iff rank([a; b]) == rank(a); we want the negation
  ZMat stacked = a;
  for (const auto& row : b) stacked.push_back(row);
  return rank_zmat(stacked) > rank_zmat(a);
}

// ---------------------------------------------------------------------------
// Goldston-Yildirim average
// ---------------------------------------------------------------------------

namespace {

struct ProgressionDivisor {
  i64 d;
  double weight;  // mu(d) * chi(log d / log R)
  i64 residue;    // x = residue (mod d) hits d | Wx + b
};

i64 mod_inverse(i64 a, i64 m) {
  i64 t = 0, newt = 1, r = m, newr = ((a % m) + m) % m;
  while (newr != 0) {
    i64 q = r / newr;
    std::swap(t, newt);
    newt -= q * t;
    std::swap(r, newr);
    newr -= q * r;
  }
  if (r != 1) throw domain_error("modular inverse does not exist");
  return ((t % m) + m) % m;
}

std::vector<ProgressionDivisor> progression_divisors(const WeightParams& P, i64 b) {
  // square-free d <= R coprime to W, with weights and hit residues
  i64 Rfloor = i64(std::floor(P.R));
  std::vector<i64> spf(Rfloor + 1, 0);
  for (i64 i = 2; i <= Rfloor; ++i)
    if (!spf[i])
      for (i64 j = i; j <= Rfloor; j += i)
        if (!spf[j]) spf[j] = i;
  double logR = std::log(P.R);
  std::vector<ProgressionDivisor> out;
  for (i64 d = 1; d <= Rfloor; ++d) {
    // mu and square-freeness via smallest prime factors
    i64 m = d;
    int mu = 1;
    bool squarefree = true;
    while (m > 1) {
      i64 p = spf[m];
      int e = 0;
      while (m % p == 0) {
        m /= p;
        ++e;
      }
      if (e > 1) {
        squarefree = false;
        break;
      }
      mu = -mu;
    }
    if (!squarefree) continue;
    if (gcd_i64(d, P.W) != 1) continue;  // W x + b is coprime to W-support primes
    i64 res = d == 1 ? 0 : i64((i128(mod_inverse(P.W % d, d)) * (((-b) % d + d) % d)) % d);
    out.push_back({d, double(mu) * chi_eval(P.chi_id, std::log(double(d)) / logR), res});
  }
  return out;
}

GYResult gy_rational_impl(const WeightParams& P, i64 b, i64 x0, i64 len, int workers,
                          bool serial) {
  auto t0 = std::chrono::steady_clock::now();
  if (len < 1) throw domain_error("empty GY box");
  if (gcd_i64(P.W, ((b % P.W) + P.W) % P.W == 0 ? P.W : ((b % P.W) + P.W) % P.W) != 1 &&
      P.W > 1)
    throw domain_error("shift b must be coprime to W");
  auto divisors = progression_divisors(P, b);
  const double logR = std::log(P.R);
  const i64 block = 1 << 16;
  const i64 nblocks = (len + block - 1) / block;
  std::vector<double> block_sums(size_t(nblocks), 0.0);
#ifdef _OPENMP
  int nthreads = workers > 0 ? workers : omp_get_max_threads();
#else
  int nthreads = 1;
  (void)workers;
#endif
  const bool run_parallel = !serial;
#pragma omp parallel for schedule(dynamic) num_threads(nthreads) if (run_parallel)
  for (i64 bi = 0; bi < nblocks; ++bi) {
    i64 lo = x0 + bi * block;
    i64 hi = std::min(x0 + len, lo + block);
    std::vector<double> s(size_t(hi - lo), 0.0);
    for (const auto& pd : divisors) {
      i64 first = lo + ((pd.residue - lo) % pd.d + pd.d) % pd.d;
      for (i64 x = first; x < hi; x += pd.d) s[size_t(x - lo)] += pd.weight;
    }
    double acc = 0.0;
    for (double v : s) acc += v * v;
    block_sums[size_t(bi)] = acc;
  }
  double total = 0.0;
  for (double v : block_sums) total += v;  // fixed merge order: deterministic
  GYResult r;
  r.box_points = u64(len);
  r.empirical = logR * logR * total / double(len);
  r.kappa_used = 1.0;
  double phiW = 1.0;
  for (auto& [p, e] : factor_u64(u64(P.W))) {
    (void)e;
    phiW *= double(p - 1);
    for (int i = 1; i < e; ++i) phiW *= double(p);
  }
  r.main_term = double(P.W) * P.c_chi_value * logR / phiW;
  r.ratio = r.empirical / r.main_term;
  if (double(len) < std::pow(P.R, 5.0))
    r.warnings.push_back("box shorter than R^(4m+1); the GY hypothesis is not met");
  r.seconds = elapsed_since(t0);
  return r;
}

}  // namespace

GYResult gy_average_rational(const WeightParams& P, i64 b, i64 x0, i64 len, int workers) {
  return gy_rational_impl(P, b, x0, len, workers, false);
}

GYResult gy_average_rational_serial(const WeightParams& P, i64 b, i64 x0, i64 len) {
  return gy_rational_impl(P, b, x0, len, 0, true);
}

GYResult gy_average(const GYConfig& cfg, int workers) {
  const FieldSpec& F = *cfg.F;
  const size_t m = cfg.psis.size();
  if (m == 0 || cfg.shifts.size() != m) throw domain_error("GY needs m maps with m shifts");
  // coprimality of each shift: b O_K + W O_K = O_K
  for (const auto& bc : cfg.shifts) {
    auto bel = F.element(bc);
    if (bel.is_zero() && cfg.P.W > 1) throw domain_error("shift not coprime to W");
    if (cfg.P.W > 1) {
      auto sum = ideal_add(principal_ideal(bel), principal_ideal(F.integer(cfg.P.W)));
      if (!sum.is_unit_ideal()) throw domain_error("shift not coprime to W");
    }
  }
  // fast path: K = Q, m = 1, psi = identity on Z^1
  if (F.n == 1 && m == 1 && cfg.psis[0] == ZMat{{1}} && cfg.box.size() == 1) {
    auto r = gy_average_rational(cfg.P, cfg.shifts[0][0], cfg.box[0].first,
                                 cfg.box[0].second - cfg.box[0].first + 1, workers);
    return r;
  }
  auto t0 = std::chrono::steady_clock::now();
  // general path: per-point Lambda evaluation
  size_t t = cfg.box.size();
  for (const auto& psi : cfg.psis)
    if (psi.size() != size_t(F.n) || psi[0].size() != t)
      throw domain_error("linear map dimensions do not match the box");
  double points = 1.0;
  for (auto& [lo, hi] : cfg.box) points *= double(hi - lo + 1);
  if (points > 2e7) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "GY box has ~%.2g points; the per-point path is capped at 2e7", points);
    throw infeasible_error(buf);
  }
  GYResult r;
  double kappa = cfg.kappa;
  if (kappa <= 0.0)
    kappa = F.n == 1 ? 1.0 : estimate_kappa(F, cfg.kappa_L).ratio;
  r.kappa_used = kappa;
  // odometer over the box
  std::vector<i64> x(t);
  for (size_t i = 0; i < t; ++i) x[i] = cfg.box[i].first;
  double sum = 0.0;
  u64 count = 0;
  while (true) {
    double prod = 1.0;
    for (size_t j = 0; j < m; ++j) {
      ZVec coords(F.n, 0);
      for (int row = 0; row < F.n; ++row) {
        i128 acc = 0;
        for (size_t col = 0; col < t; ++col) acc += i128(cfg.psis[j][row][col]) * x[col];
        acc = acc * cfg.P.W + cfg.shifts[j][row];
        coords[row] = checked_i64(acc, "GY point");
      }
      auto el = F.element(coords);
      double lam = el.is_zero() ? 0.0 : lambda_element(el, cfg.P);
      prod *= lam * lam;
    }
    sum += prod;
    ++count;
    size_t i = t;
    while (i > 0) {
      --i;
      if (x[i] < cfg.box[i].second) {
        ++x[i];
        for (size_t k = i + 1; k < t; ++k) x[k] = cfg.box[k].first;
        break;
      }
      if (i == 0) goto done;
    }
  }
done:
  r.box_points = count;
  r.empirical = sum / double(count);
  double logR = std::log(cfg.P.R);
  i64 phiW = totient_K(principal_ideal(F.integer(std::max<i64>(cfg.P.W, 1))));
  r.main_term = std::pow(std::pow(double(cfg.P.W), F.n) * cfg.P.c_chi_value * logR /
                             (double(phiW) * kappa),
                         double(m));
  r.ratio = r.empirical / r.main_term;
  double min_side = 1e300;
  for (auto& [lo, hi] : cfg.box) min_side = std::min(min_side, double(hi - lo + 1));
  if (min_side < std::pow(cfg.P.R, 4.0 * double(m) + 1.0))
    r.warnings.push_back("box sides shorter than R^(4m+1); the GY hypothesis is not met");
  r.seconds = elapsed_since(t0);
  return r;
}

// ---------------------------------------------------------------------------
// Ideal counting and the zeta residue
// ---------------------------------------------------------------------------

i64 count_ideals_up_to(const FieldSpec& F, i64 L) {
  if (L < 1) return 0;
  // local coefficient: #p-ideals of norm p^e, from the residue degrees
  std::map<i64, std::vector<i64>> degree_cache;  // for generic fields
  auto local_coeff = [&](i64 p, int e) -> i64 {
    if (F.n == 1) return 1;
    if (F.is_quadratic) {
      int k = kronecker(F.disc, p);
      if (k == 1) return e + 1;          // two primes of norm p
      if (k == -1) return e % 2 ? 0 : 1;  // one prime of norm p^2
      return 1;                           // ramified: one prime of norm p
    }
    auto it = degree_cache.find(p);
    if (it == degree_cache.end()) {
      std::vector<i64> degrees;
      for (auto& [P, ee] : factor_rational_prime(F, p)) {
        (void)ee;
        int fdeg = 0;
        i64 nrm = P.norm;
        while (nrm > 1) {
          nrm /= p;
          ++fdeg;
        }
        degrees.push_back(fdeg);
      }
      it = degree_cache.emplace(p, std::move(degrees)).first;
    }
    // coefficient of x^e in prod 1/(1 - x^f) over residue degrees f
    std::vector<i64> local(size_t(e) + 1, 0);
    local[0] = 1;
    for (i64 f : it->second)
      for (int k = int(f); k <= e; ++k) local[size_t(k)] += local[size_t(k - f)];
    return local[size_t(e)];
  };
  // sieve of smallest prime factors, then one multiplicative pass
  std::vector<int32_t> spf(size_t(L) + 1, 0);
  for (i64 i = 2; i <= L; ++i) {
    if (spf[size_t(i)]) continue;
    for (i64 j = i; j <= L; j += i)
      if (!spf[size_t(j)]) spf[size_t(j)] = int32_t(i);
  }
  std::vector<i64> a(size_t(L) + 1, 0);
  a[1] = 1;
  i64 total = 1;
  for (i64 n = 2; n <= L; ++n) {
    i64 p = spf[size_t(n)];
    i64 m = n;
    int e = 0;
    while (m % p == 0) {
      m /= p;
      ++e;
    }
    a[size_t(n)] = a[size_t(m)] * local_coeff(p, e);
    total += a[size_t(n)];
  }
  return total;
}

DensityReport estimate_kappa(const FieldSpec& F, double L) {
  auto t0 = std::chrono::steady_clock::now();
  if (L < 10) throw domain_error("kappa estimate needs L >= 10");
  i64 Lf = i64(std::floor(L));
  i64 count = count_ideals_up_to(F, Lf);
  DensityReport r;
  r.experiment = "kappa";
  r.field = F.describe();
  r.scale = L;
  r.raw_count = count;
  r.reference = double(Lf);
  r.ratio = double(count) / double(Lf);
  r.seconds = elapsed_since(t0);
  return r;
}

}  // namespace constell
