#include "constell/fpoly.hpp"

#include <algorithm>
#include <random>

namespace constell {

FpPoly fp_trim(FpPoly a) {
  while (!a.empty() && a.back() == 0) a.pop_back();
  return a;
}

int fp_deg(const FpPoly& a) { return int(a.size()) - 1; }

FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p) {
  if (a.empty() || b.empty()) return {};
  FpPoly c(a.size() + b.size() - 1, 0);
  for (size_t i = 0; i < a.size(); ++i) {
    if (!a[i]) continue;
    for (size_t j = 0; j < b.size(); ++j)
      c[i + j] = (c[i + j] + mulmod_u64(a[i], b[j], p)) % p;
  }
  return fp_trim(std::move(c));
}

FpPoly fp_mod(FpPoly a, const FpPoly& m, u64 p) {
  a = fp_trim(std::move(a));
  int dm = fp_deg(m);
  if (dm < 0) throw domain_error("poly mod zero");
  u64 lead_inv = powmod_u64(m.back(), p - 2, p);
  while (fp_deg(a) >= dm) {
    int shift = fp_deg(a) - dm;
    u64 q = mulmod_u64(a.back(), lead_inv, p);
    for (int i = 0; i <= dm; ++i) {
      u64 sub = mulmod_u64(q, m[i], p);
      a[i + shift] = (a[i + shift] + p - sub) % p;
    }
    a = fp_trim(std::move(a));
  }
  return a;
}

FpPoly fp_divexact(const FpPoly& a, const FpPoly& b, u64 p) {
  FpPoly rem = fp_trim(a);
  int db = fp_deg(b);
  if (db < 0) throw domain_error("poly division by zero");
  FpPoly q(std::max<int>(fp_deg(rem) - db + 1, 0), 0);
  u64 lead_inv = powmod_u64(b.back(), p - 2, p);
  while (fp_deg(rem) >= db) {
    int shift = fp_deg(rem) - db;
    u64 c = mulmod_u64(rem.back(), lead_inv, p);
    q[shift] = c;
    for (int i = 0; i <= db; ++i) {
      u64 sub = mulmod_u64(c, b[i], p);
      rem[i + shift] = (rem[i + shift] + p - sub) % p;
    }
    rem = fp_trim(std::move(rem));
  }
  if (!rem.empty()) throw domain_error("inexact polynomial division");
  return fp_trim(std::move(q));
}

FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p) {
  a = fp_trim(std::move(a));
  b = fp_trim(std::move(b));
  while (!b.empty()) {
    FpPoly r = fp_mod(a, b, p);
    a = std::move(b);
    b = std::move(r);
  }
  return fp_monic(std::move(a), p);
}

FpPoly fp_monic(FpPoly a, u64 p) {
  a = fp_trim(std::move(a));
  if (a.empty()) return a;
  if (a.back() == 1) return a;
  u64 inv = powmod_u64(a.back(), p - 2, p);
  for (auto& c : a) c = mulmod_u64(c, inv, p);
  return a;
}

FpPoly fp_powmod(FpPoly base, u128 e, const FpPoly& m, u64 p) {
  FpPoly result = {1};
  base = fp_mod(std::move(base), m, p);
  while (e) {
    if (e & 1) result = fp_mod(fp_mul(result, base, p), m, p);
    base = fp_mod(fp_mul(base, base, p), m, p);
    e >>= 1;
  }
  return result;
}

namespace {

FpPoly fp_derivative(const FpPoly& a, u64 p) {
  FpPoly d;
  for (size_t i = 1; i < a.size(); ++i) d.push_back(mulmod_u64(a[i], i % p, p));
  return fp_trim(std::move(d));
}

// Equal-degree splitting: f squarefree monic, all factors of degree d.
void edf(const FpPoly& f, int d, u64 p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  int n = fp_deg(f);
  if (n == d) {
    out.push_back(f);
    return;
  }
  while (true) {
    FpPoly a(n, 0);
    for (int i = 0; i < n; ++i) a[i] = rng() % p;
    a = fp_trim(std::move(a));
    if (fp_deg(a) < 1) continue;
    FpPoly g = fp_gcd(f, a, p);
    if (fp_deg(g) > 0 && fp_deg(g) < n) {
      edf(g, d, p, rng, out);
      edf(fp_divexact(f, g, p), d, p, rng, out);
      return;
    }
    FpPoly h;
    if (p == 2) {
      // trace map a + a^2 + a^4 + ... + a^(2^(d-1))
      FpPoly t = a, cur = a;
      for (int i = 1; i < d; ++i) {
        cur = fp_powmod(cur, 2, f, p);
        FpPoly sum(std::max(t.size(), cur.size()), 0);
        for (size_t k = 0; k < sum.size(); ++k) {
          u64 v = 0;
          if (k < t.size()) v ^= t[k];
          if (k < cur.size()) v ^= cur[k];
          sum[k] = v;
        }
        t = fp_trim(std::move(sum));
      }
      h = t;
    } else {
      u128 e = 1;
      for (int i = 0; i < d; ++i) e *= p;
      e = (e - 1) / 2;
      h = fp_powmod(a, e, f, p);
      if (h.empty())
        h = {p - 1};
      else
        h[0] = (h[0] + p - 1) % p;  // a^((p^d-1)/2) - 1
      h = fp_trim(std::move(h));
    }
    g = fp_gcd(f, h, p);
    if (fp_deg(g) > 0 && fp_deg(g) < n) {
      edf(g, d, p, rng, out);
      edf(fp_divexact(f, g, p), d, p, rng, out);
      return;
    }
  }
}

// Distinct-degree + equal-degree factorization of a squarefree monic f.
void factor_squarefree(FpPoly f, u64 p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  FpPoly x = {0, 1};
  FpPoly xq = x;
  int d = 0;
  while (fp_deg(f) > 0) {
    ++d;
    if (2 * d > fp_deg(f)) {
      out.push_back(fp_monic(std::move(f), p));
      return;
    }
    xq = fp_powmod(xq, p, f, p);  // x^(p^d) mod f
    FpPoly diff = xq;
    if (diff.size() < 2) diff.resize(2, 0);
    diff[1] = (diff[1] + p - 1) % p;  // x^(p^d) - x
    diff = fp_trim(std::move(diff));
    FpPoly g = fp_gcd(f, diff, p);
    if (fp_deg(g) > 0) {
      edf(g, d, p, rng, out);
      f = fp_divexact(f, g, p);
      xq = fp_mod(xq, f, p);
    }
  }
}

}  // namespace

namespace {

// Distinct irreducible factors of g (any multiplicities), appended to out.
void collect_distinct(FpPoly g, u64 p, std::mt19937_64& rng, std::vector<FpPoly>& out) {
  g = fp_monic(std::move(g), p);
  if (fp_deg(g) < 1) return;
  FpPoly gp = fp_derivative(g, p);
  if (gp.empty()) {
    // g = h(x^p) = h(x)^p over F_p; same irreducible factors as h.
    FpPoly h(size_t(fp_deg(g) / int(p)) + 1, 0);
    for (size_t i = 0; i < h.size(); ++i) h[i] = g[i * size_t(p)];
    collect_distinct(fp_trim(std::move(h)), p, rng, out);
    return;
  }
  FpPoly c = fp_gcd(g, gp, p);
  FpPoly w = fp_divexact(g, c, p);  // squarefree, misses only p-th-power factors
  if (fp_deg(w) > 0) factor_squarefree(w, p, rng, out);
  collect_distinct(std::move(c), p, rng, out);
}

// True division check: does q divide a exactly?
bool fp_divides(const FpPoly& q, const FpPoly& a, u64 p) {
  return fp_mod(a, q, p).empty();
}

}  // namespace

std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f_in, u64 p) {
  FpPoly f = fp_monic(fp_trim(f_in), p);
  if (fp_deg(f) < 1) throw domain_error("factoring a constant polynomial");
  std::mt19937_64 rng(0x5eedULL * p + 17);
  std::vector<FpPoly> irreducibles;
  collect_distinct(f, p, rng, irreducibles);
  std::sort(irreducibles.begin(), irreducibles.end());
  irreducibles.erase(std::unique(irreducibles.begin(), irreducibles.end()), irreducibles.end());
  std::vector<std::pair<FpPoly, int>> result;
  for (const auto& q : irreducibles) {
    int e = 0;
    FpPoly rem = f;
    while (fp_deg(rem) >= fp_deg(q) && fp_divides(q, rem, p)) {
      rem = fp_divexact(rem, q, p);
      ++e;
    }
    if (e > 0) result.push_back({q, e});
  }
  return result;
}

}  // namespace constell
