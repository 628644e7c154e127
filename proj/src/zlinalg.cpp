#include "constell/zlinalg.hpp"

#include <algorithm>
#include <cstdlib>

namespace constell {

namespace {

i128 iabs128(i128 v) { return v < 0 ? -v : v; }

void check128(i128 v, const char* ctx) {
  // Guard rail well inside the i128 range so later products stay exact.
  static const i128 kLimit = i128(1) << 100;
  if (v > kLimit || v < -kLimit) throw overflow_error(std::string(ctx) + ": entries too large");
}

}  // namespace

i64 det_zmat(const ZMat& m) {
  int n = int(m.size());
  if (n == 0) return 1;
  std::vector<std::vector<i128>> a(n, std::vector<i128>(n));
  for (int i = 0; i < n; ++i) {
    if (int(m[i].size()) != n) throw domain_error("det of non-square matrix");
    for (int j = 0; j < n; ++j) a[i][j] = m[i][j];
  }
  // Bareiss fraction-free elimination: exact, division always exact.
  i128 prev = 1;
  int sign = 1;
  for (int k = 0; k < n - 1; ++k) {
    if (a[k][k] == 0) {
      int pivot = -1;
      for (int i = k + 1; i < n; ++i)
        if (a[i][k] != 0) {
          pivot = i;
          break;
        }
      if (pivot < 0) return 0;
      std::swap(a[k], a[pivot]);
      sign = -sign;
    }
    for (int i = k + 1; i < n; ++i) {
      for (int j = k + 1; j < n; ++j) {
        i128 v = a[i][j] * a[k][k] - a[i][k] * a[k][j];
        check128(v, "determinant");
        a[i][j] = v / prev;
      }
      a[i][k] = 0;
    }
    prev = a[k][k];
  }
  return checked_i64(sign * a[n - 1][n - 1], "determinant");
}

int rank_zmat(ZMat m) {
  int rows = int(m.size());
  if (rows == 0) return 0;
  int cols = int(m[0].size());
  std::vector<std::vector<i128>> a(rows, std::vector<i128>(cols));
  for (int i = 0; i < rows; ++i)
    for (int j = 0; j < cols; ++j) a[i][j] = m[i][j];
  int rank = 0;
  i128 prev = 1;
  for (int col = 0; col < cols && rank < rows; ++col) {
    int pivot = -1;
    for (int i = rank; i < rows; ++i)
      if (a[i][col] != 0) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[rank], a[pivot]);
    for (int i = rank + 1; i < rows; ++i) {
      for (int j = col + 1; j < cols; ++j) {
        i128 v = a[i][j] * a[rank][col] - a[i][col] * a[rank][j];
        check128(v, "rank");
        a[i][j] = v / prev;
      }
      a[i][col] = 0;
    }
    prev = a[rank][col];
    ++rank;
  }
  return rank;
}

namespace {

// Column-by-column pivot elimination by unimodular row operations.
// Processes columns right-to-left so the resulting basis is triangular
// with b_i supported on coordinates 0..i.  When `track` is non-null we
// carry the transformation rows alongside (for kernel extraction).
struct PivotResult {
  std::vector<int> pivot_row_of_col;  // -1 if none
  ZMat work;                          // eliminated rows
  ZMat transform;                     // same row ops applied to identity
  std::vector<bool> is_pivot;
};

PivotResult eliminate(const ZMat& gens, int ncols, bool track) {
  PivotResult res;
  res.work = gens;
  int rows = int(res.work.size());
  for (auto& r : res.work)
    if (int(r.size()) != ncols) throw domain_error("generator of wrong dimension");
  res.is_pivot.assign(rows, false);
  res.pivot_row_of_col.assign(ncols, -1);
  if (track) {
    res.transform.assign(rows, ZVec(rows, 0));
    for (int i = 0; i < rows; ++i) res.transform[i][i] = 1;
  }
  auto row_axpy = [&](int dst, int src, i64 q) {
    // row[dst] -= q * row[src]
    for (int j = 0; j < ncols; ++j)
      res.work[dst][j] = checked_i64(i128(res.work[dst][j]) - i128(q) * res.work[src][j], "hnf");
    if (track)
      for (size_t j = 0; j < res.transform[dst].size(); ++j)
        res.transform[dst][j] =
            checked_i64(i128(res.transform[dst][j]) - i128(q) * res.transform[src][j], "hnf");
  };
  for (int col = ncols - 1; col >= 0; --col) {
    while (true) {
      // Find the two active rows with smallest nonzero |entry| in col.
      int best = -1, second = -1;
      for (int i = 0; i < rows; ++i) {
        if (res.is_pivot[i] || res.work[i][col] == 0) continue;
        if (best < 0 || std::llabs(res.work[i][col]) < std::llabs(res.work[best][col])) {
          second = best;
          best = i;
        } else if (second < 0 ||
                   std::llabs(res.work[i][col]) < std::llabs(res.work[second][col])) {
          second = i;
        }
      }
      if (best < 0) break;  // column empty
      if (second < 0) {
        res.pivot_row_of_col[col] = best;
        res.is_pivot[best] = true;
        break;
      }
      i64 q = res.work[second][col] / res.work[best][col];
      row_axpy(second, best, q);
      if (res.work[second][col] != 0) {
        // Euclid step left a remainder; keep reducing.
        continue;
      }
    }
  }
  return res;
}

}  // namespace

ZMat hnf_lattice(const ZMat& gens, int n) {
  PivotResult pr = eliminate(gens, n, false);
  ZMat basis(n);
  for (int col = 0; col < n; ++col) {
    int r = pr.pivot_row_of_col[col];
    if (r < 0) throw domain_error("generators do not span a full-rank lattice");
    basis[col] = pr.work[r];
  }
  // Normalize signs first, then reduce off-pivot entries.
  for (int i = 0; i < n; ++i)
    if (basis[i][i] < 0)
      for (auto& v : basis[i]) v = -v;
  for (int i = 0; i < n; ++i) {
    for (int k = i + 1; k < n; ++k) {
      i64 d = basis[i][i];
      i64 q = basis[k][i] / d;
      if (basis[k][i] - q * d < 0) q -= 1;  // floor
      if (q != 0)
        for (int j = 0; j <= i; ++j)
          basis[k][j] = checked_i64(i128(basis[k][j]) - i128(q) * basis[i][j], "hnf reduce");
    }
  }
  return basis;
}

bool lattice_solve(const ZMat& h, const ZVec& v, ZVec& coeffs) {
  int n = int(h.size());
  coeffs.assign(n, 0);
  ZVec rem = v;
  for (int col = n - 1; col >= 0; --col) {
    i64 d = h[col][col];
    if (rem[col] % d != 0) return false;
    i64 y = rem[col] / d;
    coeffs[col] = y;
    if (y != 0)
      for (int j = 0; j <= col; ++j)
        rem[j] = checked_i64(i128(rem[j]) - i128(y) * h[col][j], "lattice solve");
  }
  for (int j = 0; j < n; ++j)
    if (rem[j] != 0) return false;
  return true;
}

bool lattice_contains(const ZMat& h, const ZVec& v) {
  ZVec c;
  return lattice_solve(h, v, c);
}

ZMat integer_row_kernel(const ZMat& m) {
  int rows = int(m.size());
  int cols = rows ? int(m[0].size()) : 0;
  PivotResult pr = eliminate(m, cols, true);
  ZMat kernel;
  for (int i = 0; i < rows; ++i) {
    if (pr.is_pivot[i]) continue;
    bool zero = true;
    for (int j = 0; j < cols; ++j)
      if (pr.work[i][j] != 0) {
        zero = false;
        break;
      }
    if (zero) kernel.push_back(pr.transform[i]);
  }
  return kernel;
}

ZMat lattice_intersect(const ZMat& a, const ZMat& b, int n) {
  ZMat stacked;
  stacked.reserve(2 * n);
  for (const auto& r : a) stacked.push_back(r);
  for (const auto& r : b) {
    ZVec neg(r.size());
    for (size_t j = 0; j < r.size(); ++j) neg[j] = -r[j];
    stacked.push_back(neg);
  }
  ZMat kernel = integer_row_kernel(stacked);
  ZMat gens;
  for (const auto& k : kernel) {
    ZVec v(n, 0);
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j)
        v[j] = checked_i64(i128(v[j]) + i128(k[i]) * a[i][j], "lattice intersect");
    gens.push_back(v);
  }
  return hnf_lattice(gens, n);
}

bool span_contains(const ZMat& gens, int n, const ZVec& v) {
  PivotResult pr = eliminate(gens, n, false);
  // forward substitution against the triangular pivot rows; a missing pivot
  // column forces the corresponding coordinate of the remainder to vanish
  ZVec rem = v;
  for (int col = n - 1; col >= 0; --col) {
    int r = pr.pivot_row_of_col[col];
    if (r < 0) {
      if (rem[col] != 0) return false;
      continue;
    }
    i64 d = pr.work[r][col];
    if (rem[col] % d != 0) return false;
    i64 y = rem[col] / d;
    if (y != 0)
      for (int j = 0; j <= col; ++j)
        rem[j] = checked_i64(i128(rem[j]) - i128(y) * pr.work[r][j], "span solve");
  }
  for (i64 x : rem)
    if (x != 0) return false;
  return true;
}

i64 lattice_index(const ZMat& gens, int n) {
  PivotResult pr = eliminate(gens, n, false);
  i128 idx = 1;
  for (int col = 0; col < n; ++col) {
    int r = pr.pivot_row_of_col[col];
    if (r < 0) return 0;
    idx *= iabs128(pr.work[r][col]);
  }
  return checked_i64(idx, "lattice index");
}

}  // namespace constell
