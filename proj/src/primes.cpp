#include "constell/primes.hpp"

#include <algorithm>
#include <chrono>
#include <cmath>
#include <cstdio>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace constell {

namespace {

double elapsed_since(std::chrono::steady_clock::time_point t0) {
  return std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
}

}  // namespace

bool is_prime_element(const AlgInt& a) {
  if (a.is_zero()) throw domain_error("zero is not a prime element candidate");
  const FieldSpec& F = *a.field;
  i64 nrm = F.abs_norm(a);
  if (nrm == 1) return false;
  if (is_prime_u64(u64(nrm))) return true;  // degree-1 sufficiency
  return is_prime_ideal(principal_ideal(a));
}

bool is_prime_in_ideal(const AlgInt& a, const Ideal& ideal) {
  if (a.is_zero()) throw domain_error("zero is not a prime element candidate");
  if (!ideal.contains(a)) throw domain_error("element does not lie in the ideal");
  // alpha a^{-1}: subtract exponents of the factorizations.
  auto fa = factor_ideal(principal_ideal(a));
  auto fi = factor_ideal(ideal);
  std::map<Ideal, int> exps;
  for (auto& [P, e] : fa.factors) exps[P] += e;
  for (auto& [P, e] : fi.factors) exps[P] -= e;
  int primes = 0;
  for (auto& [P, e] : exps) {
    if (e < 0) throw domain_error("ideal does not divide the element");
    primes += e;
  }
  return primes == 1;
}

std::vector<AlgInt> enumerate_prime_elements_serial(const FieldSpec& F, double M,
                                                    const DomainSpec* filter) {
  std::vector<AlgInt> out;
  if (M < 1) return out;
  BoxStream bs(F.n, M);
  ZVec c;
  while (bs.next(c)) {
    auto a = F.element(c);
    if (a.is_zero()) continue;
    if (filter && !in_fundamental_domain(a, *filter)) continue;
    if (is_prime_element(a)) out.push_back(a);
  }
  return out;
}

std::vector<AlgInt> enumerate_prime_elements(const FieldSpec& F, double M,
                                             const DomainSpec* filter, int workers) {
  if (M < 1) return {};
  const i64 m = i64(std::floor(M));
#ifdef _OPENMP
  int nthreads = workers > 0 ? workers : omp_get_max_threads();
#else
  int nthreads = 1;
  (void)workers;
#endif
  std::vector<std::vector<AlgInt>> parts(size_t(2 * m + 1));
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (i64 first = -m; first <= m; ++first) {
    std::vector<AlgInt> local;
    BoxStream bs(F.n, M, -1.0, first, first);
    ZVec c;
    while (bs.next(c)) {
      auto a = F.element(c);
      if (a.is_zero()) continue;
      if (filter && !in_fundamental_domain(a, *filter)) continue;
      if (is_prime_element(a)) local.push_back(a);
    }
    parts[size_t(first + m)] = std::move(local);
  }
  std::vector<AlgInt> out;
  for (auto& p : parts)
    for (auto& a : p) out.push_back(std::move(a));
  return out;
}

std::vector<AlgInt> enumerate_prime_elements_in_ideal(const Ideal& a, double M,
                                                      const DomainSpec* filter) {
  std::vector<AlgInt> out;
  if (M < 0) return out;
  const FieldSpec& F = *a.F;
  BoxStream bs(F.n, M);
  ZVec coeffs;
  while (bs.next(coeffs)) {
    // element = sum of coeff_i * basis_i, in omega coordinates
    ZVec coords(F.n, 0);
    for (int i = 0; i < F.n; ++i)
      for (int j = 0; j < F.n; ++j)
        coords[j] = checked_i64(i128(coords[j]) + i128(coeffs[i]) * a.hnf[i][j],
                                "ideal box point");
    auto alpha = F.element(coords);
    if (alpha.is_zero()) continue;
    if (filter && !in_fundamental_domain(alpha, *filter)) continue;
    if (is_prime_in_ideal(alpha, a)) out.push_back(alpha);
  }
  return out;
}

SplitType quadratic_split_type(const FieldSpec& F, i64 p) {
  if (!F.is_quadratic) throw domain_error("splitting type shortcut needs a quadratic field");
  int k = kronecker(F.disc, p);
  if (k == 1) return SplitType::split;
  if (k == -1) return SplitType::inert;
  return SplitType::ramified;
}

bool norm_form_represents(const FieldSpec& F, i64 p) {
  if (!F.is_quadratic) throw domain_error("norm-form search needs a quadratic field");
  const i64 d = F.quad_d;
  bool half = ((d % 4) + 4) % 4 == 1;
  if (d < 0) {
    // x^2 - d y^2 = p resp. ((2x+y)^2 - d y^2)/4 = p; |y| bounded absolutely.
    if (!half) {
      for (i64 y = 0; -d * y * y <= p; ++y) {
        i64 rem = p + d * y * y;
        i64 x;
        if (rem >= 0 && is_perfect_square(rem, &x)) return true;
      }
      return false;
    }
    for (i64 y = 0; -d * y * y <= 4 * p; ++y) {
      i64 rem = 4 * p + d * y * y;  // (2x+y)^2
      i64 r;
      if (rem >= 0 && is_perfect_square(rem, &r) && (r - y) % 2 == 0) return true;
    }
    return false;
  }
  // Real quadratic: if a generator exists, its canonical associate has
  // |sigma_i| <= sqrt(p) * eps, so the omega-coefficient is bounded by
  // 2 * sqrt(p) * eps / sqrt(d).
  auto units = fundamental_units(F);
  auto epsv = F.element(units.fundamental_units[0]);
  double eps = std::abs(F.embedding_value(0, epsv));
  double ymax_d = 2.0 * std::sqrt(double(p)) * eps / std::sqrt(double(d)) + 2.0;
  if (ymax_d > 5e7) {
    char buf[128];
    std::snprintf(buf, sizeof buf,
                  "norm-equation scan radius ~%.2g exceeds the 5e7 cap at p=%lld", ymax_d,
                  (long long)p);
    throw infeasible_error(buf);
  }
  i64 ymax = i64(ymax_d);
  for (i64 y = 0; y <= ymax; ++y) {
    if (!half) {
      for (i64 sgn : {+1LL, -1LL}) {
        i64 rem = checked_i64(i128(d) * y * y + sgn * p, "norm equation");
        i64 x;
        if (rem >= 0 && is_perfect_square(rem, &x)) return true;
      }
    } else {
      for (i64 sgn : {+1LL, -1LL}) {
        i64 rem = checked_i64(i128(d) * y * y + 4 * sgn * p, "norm equation");
        i64 r;
        if (rem >= 0 && is_perfect_square(rem, &r) && (r - y) % 2 == 0) return true;
      }
    }
  }
  return false;
}

DensityReport chebotarev_ratio(const FieldSpec& F, double L, int workers) {
  auto t0 = std::chrono::steady_clock::now();
  if (L < 10) throw domain_error("chebotarev needs L >= 10");
  if (!F.is_quadratic && F.n != 1)
    throw domain_error("chebotarev experiment implemented for quadratic fields and Q");
  if (!F.class_number)
    throw domain_error("class number unknown: attach it (quadform) or supply it");

  auto primes = sieve_primes(u64(std::floor(L)));
  i64 total = 0, principal = 0;
  if (F.n == 1) {
    total = principal = i64(primes.size());
  } else {
#ifdef _OPENMP
    int nthreads = workers > 0 ? workers : omp_get_max_threads();
#else
    int nthreads = 1;
    (void)workers;
#endif
#pragma omp parallel for schedule(dynamic, 64) num_threads(nthreads) \
    reduction(+ : total, principal)
    for (size_t i = 0; i < primes.size(); ++i) {
      i64 p = i64(primes[i]);
      switch (quadratic_split_type(F, p)) {
        case SplitType::split:
          total += 2;
          if (norm_form_represents(F, p)) principal += 2;
          break;
        case SplitType::ramified:
          total += 1;
          if (norm_form_represents(F, p)) principal += 1;
          break;
        case SplitType::inert:
          if (double(p) * double(p) <= L) {
            total += 1;
            principal += 1;  // (p) is principal
          }
          break;
      }
    }
  }
  DensityReport r;
  r.experiment = "chebotarev";
  r.field = F.describe();
  r.scale = L;
  r.raw_count = principal;
  r.reference = (1.0 / double(*F.class_number)) * L / std::log(L);
  r.ratio = double(principal) / r.reference;
  r.extra["total_prime_ideals"] = double(total);
  r.extra["principal_over_total"] = double(principal) / double(total);
  r.extra["class_number"] = double(*F.class_number);
  r.seconds = elapsed_since(t0);
  return r;
}

DensityReport prime_ideal_count(const FieldSpec& F, double L, int workers) {
  auto t0 = std::chrono::steady_clock::now();
  if (L < 2) throw domain_error("prime ideal count needs L >= 2");
  i64 count = 0;
  if (F.n == 1) {
    count = i64(sieve_primes(u64(std::floor(L))).size());
  } else if (F.is_quadratic) {
    auto primes = sieve_primes(u64(std::floor(L)));
#ifdef _OPENMP
    int nthreads = workers > 0 ? workers : omp_get_max_threads();
#else
    int nthreads = 1;
    (void)workers;
#endif
#pragma omp parallel for schedule(static) num_threads(nthreads) reduction(+ : count)
    for (size_t i = 0; i < primes.size(); ++i) {
      i64 p = i64(primes[i]);
      switch (quadratic_split_type(F, p)) {
        case SplitType::split:
          count += 2;
          break;
        case SplitType::ramified:
          count += 1;
          break;
        case SplitType::inert:
          if (double(p) * double(p) <= L) count += 1;
          break;
      }
    }
  } else {
    // generic monogenic: Kummer-Dedekind per prime
    for (u64 p : sieve_primes(u64(std::floor(L)))) {
      for (auto& [P, e] : factor_rational_prime(F, i64(p))) {
        (void)e;
        if (double(P.norm) <= L) ++count;
      }
    }
  }
  DensityReport r;
  r.experiment = "primes-count";
  r.field = F.describe();
  r.scale = L;
  r.raw_count = count;
  r.reference = L / std::log(L);
  r.ratio = double(count) / r.reference;
  r.seconds = elapsed_since(t0);
  return r;
}

DensityReport short_interval_count(double M, double a) {
  auto t0 = std::chrono::steady_clock::now();
  if (M < 1000) throw domain_error("short-interval experiment needs M >= 10^3");
  if (a <= 0.0 || a >= 1.0) throw domain_error("exponent a must lie in (0,1)");
  double len = std::pow(M, a);
  if (len < 1.0) throw domain_error("interval shorter than 1");
  u64 lo = u64(M);
  u64 hi = u64(M + len);
  auto ps = sieve_primes_segment(lo - 1, hi);  // primes in [lo, hi]
  DensityReport r;
  r.experiment = "short-interval";
  r.field = "Q";
  r.scale = M;
  r.raw_count = i64(ps.size());
  r.reference = 0.09 * std::pow(M, a) / std::log(M);
  r.ratio = double(r.raw_count) / r.reference;
  r.extra["a"] = a;
  r.extra["interval_length"] = len;
  r.seconds = elapsed_since(t0);
  return r;
}

DensityReport short_interval_count_box(const FieldSpec& F, const AlgInt& center, double a,
                                       const DomainSpec* filter) {
  auto t0 = std::chrono::steady_clock::now();
  if (center.is_zero()) throw domain_error("short-interval center must be nonzero");
  double radius = std::pow(double(center.linf()), a);
  if (radius < 1.0) throw domain_error("interval shorter than 1");
  i64 rad = i64(std::floor(radius));
  i64 count = 0;
  BoxStream bs(F.n, double(rad));
  ZVec c;
  while (bs.next(c)) {
    ZVec shifted(F.n);
    for (int i = 0; i < F.n; ++i) shifted[i] = add_i64(c[i], center.coords[i]);
    auto x = F.element(shifted);
    if (x.is_zero()) continue;
    if (filter && !in_fundamental_domain(x, *filter)) continue;
    if (is_prime_element(x)) ++count;
  }
  DensityReport r;
  r.experiment = "short-interval";
  r.field = F.describe();
  r.scale = double(center.linf());
  r.raw_count = count;
  r.reference = 0.09 * radius / std::log(double(center.linf()));
  r.ratio = double(count) / r.reference;
  r.extra["a"] = a;
  r.seconds = elapsed_since(t0);
  return r;
}

ClassicalStats classical_stats(double L, double tail_cap) {
  if (L < 2) throw domain_error("classical stats need L >= 2");
  ClassicalStats s;
  auto ps = sieve_primes(u64(std::floor(L)));
  for (u64 p : ps) {
    s.theta += std::log(double(p));
    s.mertens_sum += std::log(double(p)) / double(p);
  }
  s.pi = i64(ps.size());
  double hi = std::min(L * L, tail_cap);
  s.tail_cap_used = hi;
  if (hi > L) {
    u64 lo = u64(std::floor(L));
    for (u64 p : sieve_primes_segment(lo, u64(hi)))
      s.tail_sum += 1.0 / (double(p) * double(p));
  }
  return s;
}

i64 prime_pi(double L) {
  if (L < 2) return 0;
  return i64(sieve_primes(u64(std::floor(L))).size());
}

}  // namespace constell
