#ifndef CONSTELL_LATTICE_HPP
#define CONSTELL_LATTICE_HPP

#include <optional>
#include <vector>

#include "constell/field.hpp"

namespace constell {

/// sigma_i(alpha) for i < r1 + r2 (real embeddings first, one per
/// conjugate pair after).
std::vector<std::complex<double>> minkowski_embed(const FieldSpec& F, const AlgInt& a);

/// Weighted multiplicative embedding: log|sigma_i| for real embeddings and
/// sqrt(2) * log|sigma_{r1+j}| for complex ones.  <L(a), u0> = log N(a).
std::vector<double> log_embed(const FieldSpec& F, const AlgInt& a);

std::vector<double> u0_vector(const FieldSpec& F);

/// Orthogonal projection onto the hyperplane H = {x : <x, u0> = 0}.
std::vector<double> project_H(const FieldSpec& F, const std::vector<double>& v);

/// Unit data for the field: imaginary quadratic fields get their torsion
/// group, real quadratic fields get the fundamental unit from the continued
/// fraction of omega; anything else must supply units (validated here).
UnitData fundamental_units(const FieldSpec& F,
                           const std::optional<UnitData>& supplied = std::nullopt);

/// Validates torsion order, unit norms, and independence of the log images.
void validate_units(const FieldSpec& F, const UnitData& u, double tol = 1e-9);

/// The NL-compatible fundamental domain D_K(eps, sigma): unit-cell
/// coordinates y_i in [0,1) for the log embedding plus the argument window
/// 0 <= arg(sigma(alpha)) < 2*pi/#mu(K).
struct DomainSpec {
  const FieldSpec* F = nullptr;
  UnitData units;
  int sigma_index = 0;
  std::vector<double> u0;
  std::vector<std::vector<double>> basis_matrix;  // columns u0, u1, ..., uk
  std::vector<std::vector<double>> solve_matrix;  // its inverse
  double theta = 0.0;  // max_i sum_j |sigma_i(omega_j)|
  double xi = 0.0;     // orbit-count constant from the constructive recipe
  double tol = 1e-9;

  int unit_rank() const { return units.unit_rank(); }
};

DomainSpec make_domain(const FieldSpec& F,
                       const std::optional<UnitData>& supplied = std::nullopt,
                       int sigma_index = 0);

/// Unit-cell coordinates of L(alpha): y[0] along u0, y[1..k] along the unit
/// log-images.
std::vector<double> domain_coordinates(const DomainSpec& D, const AlgInt& a);

bool in_fundamental_domain(const AlgInt& a, const DomainSpec& D);

/// The unique associate of alpha inside the domain.  Idempotent and
/// invariant on unit orbits.
AlgInt canonical_associate(const AlgInt& a, const DomainSpec& D);

struct NLWitness {
  double c_min = 0.0;  // min N(alpha)/linf^n over D in the box
  double c_max = 0.0;  // max of the same ratio
  u64 samples = 0;     // nonzero domain points scanned
};

/// Scan D intersect the box of radius M for the empirical NL constants.
/// workers = 0 uses the OpenMP default; the serial variant is the reference
/// implementation for tests and benchmarks.
NLWitness nl_constants(const DomainSpec& D, double M, int workers = 0);
NLWitness nl_constants_serial(const DomainSpec& D, double M);

/// #(unit orbit of alpha intersected with the box of radius M); exact.
i64 orbit_count(const FieldSpec& F, const UnitData& units, const AlgInt& a, double M);

/// The bound constant Xi of the orbit-count estimate, computed from the
/// fundamental cell of the unit lattice in H (constructive recipe).
double orbit_xi(const FieldSpec& F, const UnitData& units);

double theta_constant(const FieldSpec& F);

}  // namespace constell

#endif  // CONSTELL_LATTICE_HPP
