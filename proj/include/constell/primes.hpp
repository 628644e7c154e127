#ifndef CONSTELL_PRIMES_HPP
#define CONSTELL_PRIMES_HPP

#include <optional>
#include <string>

#include "constell/ideal.hpp"
#include "constell/lattice.hpp"

namespace constell {

/// Result container for the density experiments.
struct DensityReport {
  std::string experiment;
  std::string field;
  double scale = 0.0;      // L or M
  i64 raw_count = 0;       // exact integer count
  double reference = 0.0;  // analytic reference value
  double ratio = 0.0;      // raw_count / reference
  double seconds = 0.0;
  std::map<std::string, double> extra;
};

/// True iff alpha O_K is a prime ideal.
bool is_prime_element(const AlgInt& a);

/// True iff alpha a^{-1} is a prime ideal (alpha must lie in a).
bool is_prime_in_ideal(const AlgInt& a, const Ideal& ideal);

/// Prime elements of the box of radius M, lexicographic order, optionally
/// restricted to a fundamental domain.
std::vector<AlgInt> enumerate_prime_elements(const FieldSpec& F, double M,
                                             const DomainSpec* filter = nullptr,
                                             int workers = 0);
std::vector<AlgInt> enumerate_prime_elements_serial(const FieldSpec& F, double M,
                                                    const DomainSpec* filter = nullptr);

/// The set P_a: alpha in the ideal with alpha a^{-1} prime, enumerated over
/// the HNF-basis coefficient box of radius M (the l-infinity length measured
/// in that basis).  Elements come back in integral-basis coordinates.
std::vector<AlgInt> enumerate_prime_elements_in_ideal(const Ideal& a, double M,
                                                      const DomainSpec* filter = nullptr);

/// Splitting type of p in a quadratic field from the Kronecker symbol.
enum class SplitType { split, inert, ramified };
SplitType quadratic_split_type(const FieldSpec& F, i64 p);

/// Does the norm form of the quadratic field represent +-p?  Bounded search
/// with the provable radius derived from the fundamental domain geometry;
/// decides principality of the primes above p.
bool norm_form_represents(const FieldSpec& F, i64 p);

/// Principal prime ideals of norm <= L versus all prime ideals and versus
/// (1/h) L / log L (Chebotarev).  Quadratic fields; h is taken from
/// F.class_number (fill it via quadform::attach_class_number or supply it).
DensityReport chebotarev_ratio(const FieldSpec& F, double L, int workers = 0);

/// #{prime ideals of norm <= L} versus L / log L (Landau).
DensityReport prime_ideal_count(const FieldSpec& F, double L, int workers = 0);

/// K = Q: primes in the interval [M, M + M^a] versus 0.09 M^a / log M.
DensityReport short_interval_count(double M, double a);

/// General K: primes of the l-infinity interval around a supplied center x
/// of radius |x|^a.
DensityReport short_interval_count_box(const FieldSpec& F, const AlgInt& center, double a,
                                       const DomainSpec* filter = nullptr);

struct ClassicalStats {
  double theta = 0.0;        // sum of log p over p <= L
  double mertens_sum = 0.0;  // sum of log p / p over p <= L
  double tail_sum = 0.0;     // sum of 1/p^2 over L < p <= min(L^2, tail_cap)
  double tail_cap_used = 0.0;
  i64 pi = 0;                // number of primes <= L
};

/// Chebyshev / Mertens / second-Mertens-tail statistics by sieve.
ClassicalStats classical_stats(double L, double tail_cap = 1e7);

/// pi(L) by Eratosthenes (independent oracle for prime_ideal_count over Q).
i64 prime_pi(double L);

}  // namespace constell

#endif  // CONSTELL_PRIMES_HPP
