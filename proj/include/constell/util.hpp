#ifndef CONSTELL_UTIL_HPP
#define CONSTELL_UTIL_HPP

#include <cstdint>
#include <map>
#include <stdexcept>
#include <string>
#include <vector>

namespace constell {

using i64 = std::int64_t;
using u64 = std::uint64_t;
using i128 = __int128;
using u128 = unsigned __int128;

// Thrown when an exact integer computation would leave the 64-bit range.
// Desk-scale mandate: we refuse rather than silently wrap.
class overflow_error : public std::runtime_error {
 public:
  explicit overflow_error(const std::string& what) : std::runtime_error(what) {}
};

// Invalid mathematical input (non-square-free d, zero element, ...).
class domain_error : public std::invalid_argument {
 public:
  explicit domain_error(const std::string& what) : std::invalid_argument(what) {}
};

// A requested experiment scale we refuse to run (CLI exit code 3).
class infeasible_error : public std::runtime_error {
 public:
  explicit infeasible_error(const std::string& what) : std::runtime_error(what) {}
};

inline i64 checked_i64(i128 v, const char* ctx = "integer") {
  if (v > i128(INT64_MAX) || v < i128(INT64_MIN))
    throw overflow_error(std::string(ctx) + " exceeds 64-bit range");
  return static_cast<i64>(v);
}

inline i64 mul_i64(i64 a, i64 b) { return checked_i64(i128(a) * i128(b), "product"); }
inline i64 add_i64(i64 a, i64 b) { return checked_i64(i128(a) + i128(b), "sum"); }

std::string i128_to_string(i128 v);

// ---------------------------------------------------------------------------
// Exact rational numbers on 64-bit numerator/denominator.
// ---------------------------------------------------------------------------
struct Rat {
  i64 num = 0;
  i64 den = 1;  // always > 0, gcd(num,den) = 1

  Rat() = default;
  Rat(i64 n) : num(n), den(1) {}
  Rat(i64 n, i64 d) { assign(n, d); }

  void assign(i128 n, i128 d);
  bool is_zero() const { return num == 0; }
  bool is_integer() const { return den == 1; }
  double to_double() const { return double(num) / double(den); }
  std::string str() const;

  friend Rat operator+(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a, const Rat& b);
  friend Rat operator*(const Rat& a, const Rat& b);
  friend Rat operator/(const Rat& a, const Rat& b);
  friend Rat operator-(const Rat& a) { Rat r; r.num = -a.num; r.den = a.den; return r; }
  friend bool operator==(const Rat& a, const Rat& b) { return a.num == b.num && a.den == b.den; }
  friend bool operator!=(const Rat& a, const Rat& b) { return !(a == b); }
};

// ---------------------------------------------------------------------------
// 64-bit number theory: deterministic Miller-Rabin, Pollard rho, sieves.
// ---------------------------------------------------------------------------

u64 mulmod_u64(u64 a, u64 b, u64 m);
u64 powmod_u64(u64 base, u64 exp, u64 m);

// Deterministic for all n < 2^64.
bool is_prime_u64(u64 n);

// Prime factorization by trial division + Pollard rho.  Exact for any u64.
std::map<u64, int> factor_u64(u64 n);

// Square-free part and square part: n = squarefree * square^2 (n > 0).
struct SquareDecomp {
  i64 squarefree;
  i64 square;
};
SquareDecomp square_decompose(i64 n);

bool is_square_free(i64 n);

i64 isqrt_i64(i64 n);                 // floor(sqrt(n)), n >= 0
bool is_perfect_square(i64 n, i64* root = nullptr);

i64 gcd_i64(i64 a, i64 b);

// Kronecker symbol (a|n), the extension of the Jacobi symbol.
int kronecker(i64 a, i64 n);

// x with x^2 = a (mod p), p an odd prime, (a|p) = 1.  Tonelli-Shanks.
u64 sqrt_mod_p(u64 a, u64 p);

// All primes <= limit, ascending.
std::vector<u64> sieve_primes(u64 limit);

// Primes in (lo, hi] by segmented sieve; lo >= 0.
std::vector<u64> sieve_primes_segment(u64 lo, u64 hi);

}  // namespace constell

#endif  // CONSTELL_UTIL_HPP
