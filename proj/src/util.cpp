#include "constell/util.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace constell {

std::string i128_to_string(i128 v) {
  if (v == 0) return "0";
  bool neg = v < 0;
  u128 u = neg ? u128(-(v + 1)) + 1 : u128(v);
  std::string s;
  while (u > 0) {
    s.push_back(char('0' + int(u % 10)));
    u /= 10;
  }
  if (neg) s.push_back('-');
  std::reverse(s.begin(), s.end());
  return s;
}

static i128 gcd_i128(i128 a, i128 b) {
  if (a < 0) a = -a;
  if (b < 0) b = -b;
  while (b) {
    i128 t = a % b;
    a = b;
    b = t;
  }
  return a;
}

void Rat::assign(i128 n, i128 d) {
  if (d == 0) throw domain_error("rational with zero denominator");
  if (d < 0) {
    n = -n;
    d = -d;
  }
  i128 g = gcd_i128(n, d);
  if (g > 1) {
    n /= g;
    d /= g;
  }
  num = checked_i64(n, "rational numerator");
  den = checked_i64(d, "rational denominator");
}

std::string Rat::str() const {
  if (den == 1) return std::to_string(num);
  return std::to_string(num) + "/" + std::to_string(den);
}

Rat operator+(const Rat& a, const Rat& b) {
  Rat r;
  r.assign(i128(a.num) * b.den + i128(b.num) * a.den, i128(a.den) * b.den);
  return r;
}
Rat operator-(const Rat& a, const Rat& b) {
  Rat r;
  r.assign(i128(a.num) * b.den - i128(b.num) * a.den, i128(a.den) * b.den);
  return r;
}
Rat operator*(const Rat& a, const Rat& b) {
  Rat r;
  r.assign(i128(a.num) * b.num, i128(a.den) * b.den);
  return r;
}
Rat operator/(const Rat& a, const Rat& b) {
  if (b.num == 0) throw domain_error("rational division by zero");
  Rat r;
  r.assign(i128(a.num) * b.den, i128(a.den) * b.num);
  return r;
}

u64 mulmod_u64(u64 a, u64 b, u64 m) { return (u128(a) * b) % m; }

u64 powmod_u64(u64 base, u64 exp, u64 m) {
  if (m == 1) return 0;
  u64 r = 1;
  base %= m;
  while (exp) {
    if (exp & 1) r = mulmod_u64(r, base, m);
    base = mulmod_u64(base, base, m);
    exp >>= 1;
  }
  return r;
}

bool is_prime_u64(u64 n) {
  if (n < 2) return false;
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    if (n % p == 0) return n == p;
  }
  u64 d = n - 1;
  int s = 0;
  while ((d & 1) == 0) {
    d >>= 1;
    ++s;
  }
  // These twelve bases decide primality for every n < 2^64.
  for (u64 a : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull, 17ull, 19ull, 23ull, 29ull, 31ull, 37ull}) {
    u64 x = powmod_u64(a, d, n);
    if (x == 1 || x == n - 1) continue;
    bool witness = true;
    for (int i = 0; i < s - 1; ++i) {
      x = mulmod_u64(x, x, n);
      if (x == n - 1) {
        witness = false;
        break;
      }
    }
    if (witness) return false;
  }
  return true;
}

static u64 pollard_rho(u64 n) {
  if ((n & 1) == 0) return 2;
  u64 x = 2, y = 2, d = 1;
  u64 c = 1;
  while (true) {
    x = 2;
    y = 2;
    d = 1;
    while (d == 1) {
      x = (mulmod_u64(x, x, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      y = (mulmod_u64(y, y, n) + c) % n;
      u64 diff = x > y ? x - y : y - x;
      d = std::gcd(diff, n);
    }
    if (d != n) return d;
    ++c;
  }
}

static void factor_rec(u64 n, std::map<u64, int>& out) {
  if (n == 1) return;
  if (is_prime_u64(n)) {
    out[n]++;
    return;
  }
  u64 d = pollard_rho(n);
  factor_rec(d, out);
  factor_rec(n / d, out);
}

std::map<u64, int> factor_u64(u64 n) {
  std::map<u64, int> out;
  if (n == 0) throw domain_error("factor of zero");
  for (u64 p : {2ull, 3ull, 5ull, 7ull, 11ull, 13ull}) {
    while (n % p == 0) {
      out[p]++;
      n /= p;
    }
  }
  factor_rec(n, out);
  return out;
}

SquareDecomp square_decompose(i64 n) {
  if (n == 0) throw domain_error("square decomposition of zero");
  i64 sign = n < 0 ? -1 : 1;
  auto f = factor_u64(u64(n < 0 ? -n : n));
  i64 sf = sign, sq = 1;
  for (auto& [p, e] : f) {
    if (e & 1) sf = mul_i64(sf, i64(p));
    for (int k = 0; k < e / 2; ++k) sq = mul_i64(sq, i64(p));
  }
  return {sf, sq};
}

bool is_square_free(i64 n) {
  if (n == 0) return false;
  return square_decompose(n).square == 1;
}

i64 isqrt_i64(i64 n) {
  if (n < 0) throw domain_error("isqrt of negative");
  i64 r = i64(std::sqrt(double(n)));
  while (r > 0 && r * r > n) --r;
  while ((r + 1) * (r + 1) <= n) ++r;
  return r;
}

bool is_perfect_square(i64 n, i64* root) {
  if (n < 0) return false;
  i64 r = isqrt_i64(n);
  if (r * r == n) {
    if (root) *root = r;
    return true;
  }
  return false;
}

i64 gcd_i64(i64 a, i64 b) { return i64(std::gcd(a, b)); }

int kronecker(i64 a, i64 n) {
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int result = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) result = -result;
  }
  // strip factors of two from n
  int twos = 0;
  while ((n & 1) == 0) {
    n >>= 1;
    ++twos;
  }
  if (twos) {
    if ((a & 1) == 0) return 0;
    // (a|2) = +1 if a = ±1 mod 8, -1 if a = ±3 mod 8
    i64 am8 = ((a % 8) + 8) % 8;
    int k2 = (am8 == 1 || am8 == 7) ? 1 : -1;
    if (twos & 1) result *= k2;
  }
  a %= n;
  if (a < 0) a += n;
  // Jacobi symbol (a|n) for odd n > 0
  while (a != 0) {
    while ((a & 1) == 0) {
      a >>= 1;
      i64 nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) result = -result;
    }
    std::swap(a, n);
    if ((a % 4) == 3 && (n % 4) == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

u64 sqrt_mod_p(u64 a, u64 p) {
  a %= p;
  if (a == 0) return 0;
  if (p == 2) return a;
  if (powmod_u64(a, (p - 1) / 2, p) != 1) throw domain_error("sqrt_mod_p: not a residue");
  if (p % 4 == 3) return powmod_u64(a, (p + 1) / 4, p);
  // Tonelli-Shanks
  u64 q = p - 1;
  int s = 0;
  while ((q & 1) == 0) {
    q >>= 1;
    ++s;
  }
  u64 z = 2;
  while (powmod_u64(z, (p - 1) / 2, p) != p - 1) ++z;
  u64 m = s;
  u64 c = powmod_u64(z, q, p);
  u64 t = powmod_u64(a, q, p);
  u64 r = powmod_u64(a, (q + 1) / 2, p);
  while (t != 1) {
    u64 i = 0, tt = t;
    while (tt != 1) {
      tt = mulmod_u64(tt, tt, p);
      ++i;
    }
    u64 b = c;
    for (u64 k = 0; k + i + 1 < m; ++k) b = mulmod_u64(b, b, p);
    m = i;
    c = mulmod_u64(b, b, p);
    t = mulmod_u64(t, c, p);
    r = mulmod_u64(r, b, p);
  }
  return r;
}

std::vector<u64> sieve_primes(u64 limit) {
  std::vector<u64> out;
  if (limit < 2) return out;
  std::vector<bool> comp(limit + 1, false);
  for (u64 i = 2; i * i <= limit; ++i) {
    if (!comp[i])
      for (u64 j = i * i; j <= limit; j += i) comp[j] = true;
  }
  for (u64 i = 2; i <= limit; ++i)
    if (!comp[i]) out.push_back(i);
  return out;
}

std::vector<u64> sieve_primes_segment(u64 lo, u64 hi) {
  std::vector<u64> out;
  if (hi < 2 || hi <= lo) return out;
  u64 root = u64(std::sqrt(double(hi))) + 1;
  auto base = sieve_primes(root);
  u64 start = std::max<u64>(lo + 1, 2);
  std::vector<bool> comp(hi - start + 1, false);
  for (u64 p : base) {
    u64 first = std::max(p * p, ((start + p - 1) / p) * p);
    for (u64 j = first; j <= hi; j += p) comp[j - start] = true;
  }
  for (u64 v = start; v <= hi; ++v)
    if (!comp[v - start]) out.push_back(v);
  return out;
}

}  // namespace constell
