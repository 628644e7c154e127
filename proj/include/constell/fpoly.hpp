#ifndef CONSTELL_FPOLY_HPP
#define CONSTELL_FPOLY_HPP

#include <vector>

#include "constell/util.hpp"

namespace constell {

// Monic polynomial arithmetic over F_p, coefficients low-to-high.
// Degrees stay tiny (the degree of the number field), p fits in u64.
using FpPoly = std::vector<u64>;

FpPoly fp_trim(FpPoly a);
int fp_deg(const FpPoly& a);
FpPoly fp_mul(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly fp_mod(FpPoly a, const FpPoly& m, u64 p);
FpPoly fp_gcd(FpPoly a, FpPoly b, u64 p);
FpPoly fp_divexact(const FpPoly& a, const FpPoly& b, u64 p);
FpPoly fp_powmod(FpPoly base, u128 e, const FpPoly& m, u64 p);
FpPoly fp_monic(FpPoly a, u64 p);

// Irreducible factors with multiplicity (Cantor-Zassenhaus with a fixed
// RNG seed, so results are deterministic across runs).
std::vector<std::pair<FpPoly, int>> fp_factor(const FpPoly& f, u64 p);

}  // namespace constell

#endif  // CONSTELL_FPOLY_HPP
