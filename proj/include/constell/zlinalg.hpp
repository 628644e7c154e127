#ifndef CONSTELL_ZLINALG_HPP
#define CONSTELL_ZLINALG_HPP

#include <vector>

#include "constell/util.hpp"

namespace constell {

using ZVec = std::vector<i64>;
using ZMat = std::vector<ZVec>;  // row-major: mat[i] is row i

// Exact determinant of a square integer matrix (Bareiss fraction-free
// elimination over __int128).
i64 det_zmat(const ZMat& m);

// Rank over the rationals, by fraction-free elimination.
int rank_zmat(ZMat m);

// Hermite normal form of the lattice generated by the rows of `gens`
// inside Z^n.  The result has n rows b_0..b_{n-1} with b_i[j] = 0 for
// j > i, b_i[i] > 0 and 0 <= b_k[i] < b_i[i] for k > i.  This puts the
// first basis vector on the first coordinate axis, so for n = 2 the basis
// reads (a, 0), (b, c) -- the (a, b + c*omega) shape used for ideals.
// Throws domain_error if the generators do not span a full-rank lattice.
ZMat hnf_lattice(const ZMat& gens, int n);

// True if v lies in the lattice with (full-rank, triangular) HNF basis h.
bool lattice_contains(const ZMat& h, const ZVec& v);

// Solve y * h = v exactly over the integers (h a full-rank HNF basis).
// Returns false if v is not in the lattice; otherwise fills coeffs.
bool lattice_solve(const ZMat& h, const ZVec& v, ZVec& coeffs);

// Basis of the intersection of two full-rank lattices given by HNF bases.
ZMat lattice_intersect(const ZMat& a, const ZMat& b, int n);

// Basis of the integer row-kernel {u : u * m = 0} of an r x c matrix.
ZMat integer_row_kernel(const ZMat& m);

// Index of the sublattice spanned by `gens` in Z^n (0 if rank-deficient).
i64 lattice_index(const ZMat& gens, int n);

// Is v in the Z-span of the (possibly rank-deficient) generators?
bool span_contains(const ZMat& gens, int n, const ZVec& v);

}  // namespace constell

#endif  // CONSTELL_ZLINALG_HPP
