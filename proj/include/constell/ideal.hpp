#ifndef CONSTELL_IDEAL_HPP
#define CONSTELL_IDEAL_HPP

#include <functional>
#include <map>
#include <memory>
#include <shared_mutex>
#include <string>
#include <vector>

#include "constell/field.hpp"

namespace constell {

/// Nonzero ideal of O_K in canonical Hermite normal form.  Basis rows
/// b_0..b_{n-1} satisfy b_i[j] = 0 for j > i, b_i[i] > 0 and
/// 0 <= b_k[i] < b_i[i] for k > i; for quadratic fields this is the pair
/// (a, b + c*omega) with 0 <= b < a.  Equality of ideals is equality of
/// these matrices.  The norm (= HNF determinant) is cached.
struct Ideal {
  const FieldSpec* F = nullptr;
  ZMat hnf;
  i64 norm = 1;

  bool is_unit_ideal() const { return norm == 1; }
  /// The i-th Z-basis vector as an element of O_K.
  AlgInt basis_element(int i) const { return F->element(hnf[i]); }
  bool contains(const AlgInt& a) const { return lattice_contains(hnf, a.coords); }
  std::string str() const;

  friend bool operator==(const Ideal& a, const Ideal& b) {
    return a.F == b.F && a.hnf == b.hnf;
  }
  friend bool operator!=(const Ideal& a, const Ideal& b) { return !(a == b); }
  friend bool operator<(const Ideal& a, const Ideal& b) {
    if (a.norm != b.norm) return a.norm < b.norm;
    return a.hnf < b.hnf;
  }
};

struct FactoredIdeal {
  std::vector<std::pair<Ideal, int>> factors;  // sorted by (norm, hnf)

  bool empty() const { return factors.empty(); }
  int mobius() const;  // -1/0/+1
  bool square_free() const;
};

// --- construction -----------------------------------------------------------

/// Ideal generated by the lattice rows `gens` (must be closed under
/// multiplication by the basis; checked).
Ideal make_ideal_from_lattice(const FieldSpec& F, const ZMat& gens);

/// Principal ideal alpha O_K; rejects alpha = 0.
Ideal principal_ideal(const AlgInt& alpha);

/// The unit ideal O_K.
Ideal unit_ideal(const FieldSpec& F);

/// Ideal generated by a set of elements.
Ideal ideal_from_generators(const FieldSpec& F, const std::vector<AlgInt>& gens);

// --- arithmetic -------------------------------------------------------------

Ideal ideal_mul(const Ideal& a, const Ideal& b);
Ideal ideal_pow(const Ideal& a, int e);
Ideal ideal_intersect(const Ideal& a, const Ideal& b);
Ideal ideal_add(const Ideal& a, const Ideal& b);  // gcd ideal a + b
bool ideal_divides(const Ideal& b, const Ideal& a);  // b | a, i.e. a subset of b
bool ideals_coprime(const Ideal& a, const Ideal& b);

/// alpha * a for an element alpha (nonzero).
Ideal ideal_scale(const Ideal& a, const AlgInt& alpha);

// --- factorization ----------------------------------------------------------

/// Prime ideals above the rational prime p with ramification exponents,
/// by Kummer-Dedekind on the minimal polynomial of the basis generator.
/// Refuses p dividing the claimed index of a monogenic field.
/// Results are memoized per field (concurrent reads, exclusive inserts).
std::vector<std::pair<Ideal, int>> factor_rational_prime(const FieldSpec& F, i64 p);

FactoredIdeal factor_ideal(const Ideal& a);
bool is_prime_ideal(const Ideal& a);

/// Largest k with a contained in p^k.
int ideal_valuation(const Ideal& a, const Ideal& p);

/// Recombine a factorization (identity test partner of factor_ideal).
Ideal recombine(const FieldSpec& F, const FactoredIdeal& fac);

// --- arithmetic functions on ideals ----------------------------------------

int mobius_K(const Ideal& a);
i64 totient_K(const Ideal& a);
Ideal p_part(const Ideal& a, i64 p);

/// Divisors b | a with N(b) <= R, as (ideal, mobius) pairs in nondecreasing
/// norm order.  With square_free_only (the Lambda use case) non-square-free
/// divisors are skipped; they would contribute mu = 0.
std::vector<std::pair<Ideal, int>> divisors_up_to(const Ideal& a, double R,
                                                  bool square_free_only = true);

/// All ideals of norm <= L (small L; used by tests and kappa oracles).
std::vector<Ideal> ideals_of_norm_up_to(const FieldSpec& F, i64 L);

/// Parse "hnf:[a,b;0,c]" or "gen:(c0,c1,...)" ideal literals.
Ideal parse_ideal(const FieldSpec& F, const std::string& text);

/// Per-field memo of rational prime splittings (read-mostly).  Keyed on the
/// field content (minimal polynomial, discriminant, index), not the address,
/// so distinct FieldSpec copies share entries and stack reuse cannot alias.
class SplittingCache {
 public:
  static SplittingCache& instance();
  std::vector<std::pair<Ideal, int>> get(const FieldSpec& F, i64 p,
                                         const std::function<std::vector<std::pair<Ideal, int>>()>& compute);
  void clear();

 private:
  using Key = std::tuple<i64, i64, std::vector<i64>, i64>;  // disc, index, minpoly, p
  std::shared_mutex mu_;
  std::map<Key, std::vector<std::pair<Ideal, int>>> memo_;
};

}  // namespace constell

#endif  // CONSTELL_IDEAL_HPP
