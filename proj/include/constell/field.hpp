#ifndef CONSTELL_FIELD_HPP
#define CONSTELL_FIELD_HPP

#include <complex>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <vector>

#include "constell/util.hpp"
#include "constell/zlinalg.hpp"

namespace constell {

struct FieldSpec;

/// An element of O_K (exact integer coordinates over a fixed basis).
/// basis_tag 0 means the integral basis omega; other tags refer to a
/// declared ideal basis and only support length/coordinate queries.
struct AlgInt {
  const FieldSpec* field = nullptr;
  ZVec coords;
  int basis_tag = 0;

  bool is_zero() const {
    for (i64 c : coords)
      if (c) return false;
    return true;
  }
  /// l-infinity length: max |coordinate| over the carried basis.
  i64 linf() const {
    i64 m = 0;
    for (i64 c : coords) m = std::max(m, c < 0 ? -c : c);
    return m;
  }
  friend bool operator==(const AlgInt& a, const AlgInt& b) {
    return a.field == b.field && a.basis_tag == b.basis_tag && a.coords == b.coords;
  }
  friend bool operator!=(const AlgInt& a, const AlgInt& b) { return !(a == b); }
};

struct UnitData {
  i64 torsion_order = 2;
  ZVec torsion_generator;              // coords of a generator of mu(K)
  std::vector<ZVec> fundamental_units; // coords of eps_1..eps_k
  int unit_rank() const { return int(fundamental_units.size()); }
};

/// Immutable description of a number field: degree, signature, integral
/// basis with its multiplication table, and embedding approximations
/// (real embeddings first, then one of each conjugate complex pair).
struct FieldSpec {
  int n = 1;
  int r1 = 1, r2 = 0;
  i64 disc = 1;  // field discriminant d_K
  std::vector<std::string> basis_names;
  // mult[i][j] = coordinates of omega_i * omega_j
  std::vector<std::vector<ZVec>> mult;
  // emb[i][j] = sigma_i(omega_j) for i in [0, n)
  std::vector<std::vector<std::complex<double>>> emb;
  std::optional<i64> class_number;
  std::optional<UnitData> units;

  bool is_quadratic = false;
  i64 quad_d = 0;  // square-free d with K = Q(sqrt d), when quadratic
  std::vector<i64> theta_minpoly;  // monic minimal polynomial of omega_n (monogenic)
  i64 claimed_index = 1;

  // --- element construction -------------------------------------------------
  AlgInt element(ZVec coords) const;
  AlgInt zero() const { return element(ZVec(n, 0)); }
  AlgInt one() const;
  AlgInt integer(i64 m) const;
  /// Quadratic convenience: x + y*omega.
  AlgInt quad(i64 x, i64 y) const;

  // --- exact ring operations ------------------------------------------------
  AlgInt add(const AlgInt& a, const AlgInt& b) const;
  AlgInt sub(const AlgInt& a, const AlgInt& b) const;
  AlgInt neg(const AlgInt& a) const;
  AlgInt mul(const AlgInt& a, const AlgInt& b) const;
  AlgInt mul_int(const AlgInt& a, i64 k) const;
  /// Galois conjugate; exact, quadratic fields only.
  AlgInt conjugate(const AlgInt& a) const;
  /// Exact quotient a/b when b divides a in O_K; throws otherwise.
  AlgInt divide_exact(const AlgInt& a, const AlgInt& b) const;

  /// Matrix of multiplication by a on the integral basis (column j holds
  /// the coordinates of a*omega_j).
  ZMat mult_matrix(const AlgInt& a) const;

  /// Signed norm N_{K/Q}(a): determinant of the regular representation.
  i64 element_norm(const AlgInt& a) const;
  /// |N_{K/Q}(a)| = #(O_K / a O_K); rejects a = 0.
  i64 abs_norm(const AlgInt& a) const;

  /// sigma_i(a) for all n embeddings (conjugate pairs completed).
  std::vector<std::complex<double>> embedding_values(const AlgInt& a) const;
  std::complex<double> embedding_value(int i, const AlgInt& a) const;

  /// Exhaustive structural checks (commutative/associative table, minimal
  /// polynomial of each basis element under every embedding).
  void validate(double tol = 1e-6) const;

  std::string describe() const;
};

/// K = Q(sqrt d) for square-free d not in {0, 1}: omega = (1+sqrt d)/2 when
/// d = 1 mod 4 and sqrt d otherwise; d_K = d resp. 4d.  Embedding order puts
/// the principal square root first (positive real, or positive imaginary
/// part), matching the paper's choice of sqrt(d).
FieldSpec make_quadratic_field(i64 d);

/// Z[theta] for a monic integer polynomial that passes a rational-root and
/// small-factor irreducibility screen.  Full irreducibility is the caller's
/// responsibility.  claimed_index is the asserted index [O_K : Z[theta]];
/// rational primes dividing it are refused by the splitting code.
FieldSpec make_monogenic_field(const std::vector<i64>& minpoly, i64 claimed_index = 1);

/// Degree 1 (K = Q) as a trivial field spec; useful for classical checks.
FieldSpec make_rational_field();

/// Parse the CLI field literal: "quadratic d=<int>" or
/// "monogenic poly=<c0,...,cn>".
FieldSpec parse_field_spec(const std::string& text);

// ---------------------------------------------------------------------------
// Box / annulus enumeration: exactly the lattice points with
// M1 <= linf <= M , in lexicographic coordinate order.  Restartable and
// splittable on the first coordinate for parallel partitioning.
// ---------------------------------------------------------------------------
class BoxStream {
 public:
  /// Closed box of radius M (annulus if inner >= 0): coordinates run over
  /// [-floor(M), floor(M)]^n with inner points of linf < inner skipped.
  BoxStream(int n, double M, double inner = -1.0);
  /// Restrict the first coordinate to [first_lo, first_hi] (for splitting).
  BoxStream(int n, double M, double inner, i64 first_lo, i64 first_hi);

  /// Advances to the next point; false when exhausted.
  bool next(ZVec& out);

  i64 radius() const { return m_; }

 private:
  int n_;
  i64 m_;
  i64 inner_;  // skip points with linf < inner_ (0 = keep all)
  i64 first_lo_, first_hi_;
  ZVec cur_;
  bool done_ = false;
  bool started_ = false;

  bool advance();
  bool admissible() const;
};

/// All box points as a vector (throws infeasible_error above `cap` points).
std::vector<ZVec> box_points(int n, double M, double inner = -1.0, u64 cap = u64(1) << 28);

}  // namespace constell

#endif  // CONSTELL_FIELD_HPP
