#ifndef CONSTELL_SIEVE_HPP
#define CONSTELL_SIEVE_HPP

#include <string>
#include <vector>

#include "constell/constellation.hpp"
#include "constell/ideal.hpp"
#include "constell/primes.hpp"

namespace constell {

// --- smooth cutoff -----------------------------------------------------------

/// Named cutoffs with chi(0) = 1 and support in [-1,1]:
///   "bump"     exp(1 - 1/(1-x^2)), C-infinity (the default)
///   "bump_sq"  its square, C-infinity with faster decay
///   "triangle" max(1-|x|, 0), the classical non-smooth truncation (c_chi = 1)
double chi_eval(const std::string& chi_id, double x);
double chi_derivative(const std::string& chi_id, double x);

/// c_chi = integral over [0, infinity) of chi'(x)^2, by adaptive Simpson
/// quadrature to the given absolute tolerance.
double c_chi(const std::string& chi_id, double tol = 1e-9);

/// Flat trapezoid evaluation (independent oracle for tests).
double c_chi_trapezoid(const std::string& chi_id, i64 points);

// --- (R, chi)-von Mangoldt weights -------------------------------------------

struct WeightParams {
  double R = 0.0;
  std::string chi_id = "bump";
  i64 W = 1;
  double w = 0.0;  // prime support bound: W = prod of p <= w
  double c_chi_value = 0.0;
};

/// Validates R > 1 and that W is exactly the product of the primes <= w.
WeightParams make_weight_params(double R, const std::string& chi_id = "bump", double w = 0.0);

/// log R * sum over square-free divisors b | a with N(b) <= R of
/// mu(b) chi(log N(b) / log R).
double lambda_ideal(const Ideal& a, const WeightParams& P);
double lambda_element(const AlgInt& alpha, const WeightParams& P);
/// Lambda^a(alpha) = Lambda(alpha a^{-1}); alpha must lie in a.
double lambda_in_ideal(const AlgInt& alpha, const Ideal& a, const WeightParams& P);

// --- the linear forms family -------------------------------------------------

/// The (r+1) 2^r maps psi_S^(omega): Z^(2r+2) -> Z^n attached to a standard
/// shape S = {s_1, ..., s_r, s_{r+1} = 0}.
struct LinearFormFamily {
  Shape shape;
  int r = 0;
  int t = 0;  // domain dimension 2r + 2
  std::vector<ZMat> forms;           // n x t integer matrices
  std::vector<std::string> labels;   // "j=<j> omega=<bits>"
};

LinearFormFamily build_linear_forms(const Shape& S);

/// ker A not contained in ker B, decided by exact integer ranks.
bool kernel_not_contained(const ZMat& a, const ZMat& b);

// --- Goldston-Yildirim average ----------------------------------------------

struct GYResult {
  double empirical = 0.0;
  double main_term = 0.0;
  double ratio = 0.0;
  u64 box_points = 0;
  double kappa_used = 1.0;
  std::vector<std::string> warnings;
  double seconds = 0.0;
};

/// E[ prod_j Lambda(W psi_j(x) + b_j)^2 | x in box ] against the main term
/// (W^n c_chi log R / (phi_K(W) kappa))^m.  K = Q with m = 1 and psi = id
/// runs a progression sieve over the interval; the general path evaluates
/// Lambda per point and refuses oversized boxes.
struct GYConfig {
  const FieldSpec* F = nullptr;
  WeightParams P;
  std::vector<ZMat> psis;                  // m maps, each n x t
  std::vector<ZVec> shifts;                // b_j coordinates
  std::vector<std::pair<i64, i64>> box;    // t closed intervals
  double kappa = 0.0;                      // 0 = estimate (1 for Q)
  double kappa_L = 1e6;
};

GYResult gy_average(const GYConfig& cfg, int workers = 0);

/// Progression-sieve special case: E[Lambda_{R,chi}(W x + b)^2] over
/// x in [x0, x0 + len).
GYResult gy_average_rational(const WeightParams& P, i64 b, i64 x0, i64 len, int workers = 0);
GYResult gy_average_rational_serial(const WeightParams& P, i64 b, i64 x0, i64 len);

// --- Dedekind zeta residue by ideal counting ----------------------------------

/// Exact #{ideals of norm <= L} by a multiplicative sieve over splitting
/// types.
i64 count_ideals_up_to(const FieldSpec& F, i64 L);

/// kappa estimate: ideal count / L (Q gives exactly floor(L)/L).
DensityReport estimate_kappa(const FieldSpec& F, double L);

}  // namespace constell

#endif  // CONSTELL_SIEVE_HPP
