#include "constell/lattice.hpp"

#include <algorithm>
#include <limits>
#include <cmath>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace constell {

std::vector<std::complex<double>> minkowski_embed(const FieldSpec& F, const AlgInt& a) {
  std::vector<std::complex<double>> out(F.r1 + F.r2);
  for (int i = 0; i < F.r1 + F.r2; ++i) out[i] = F.embedding_value(i, a);
  return out;
}

std::vector<double> log_embed(const FieldSpec& F, const AlgInt& a) {
  if (a.is_zero()) throw domain_error("log embedding of zero");
  auto mk = minkowski_embed(F, a);
  std::vector<double> out(F.r1 + F.r2);
  const double w = std::sqrt(2.0);
  for (int i = 0; i < F.r1 + F.r2; ++i) {
    double m = std::abs(mk[i]);
    if (m == 0.0) throw domain_error("log embedding hit a zero embedding value");
    out[i] = (i < F.r1 ? 1.0 : w) * std::log(m);
  }
  return out;
}

std::vector<double> u0_vector(const FieldSpec& F) {
  std::vector<double> u0(F.r1 + F.r2);
  for (int i = 0; i < F.r1 + F.r2; ++i) u0[i] = i < F.r1 ? 1.0 : std::sqrt(2.0);
  return u0;
}

std::vector<double> project_H(const FieldSpec& F, const std::vector<double>& v) {
  auto u0 = u0_vector(F);
  if (v.size() != u0.size()) throw domain_error("projection dimension mismatch");
  double dot = 0.0, nn = 0.0;
  for (size_t i = 0; i < v.size(); ++i) {
    dot += v[i] * u0[i];
    nn += u0[i] * u0[i];  // = n
  }
  std::vector<double> out(v.size());
  for (size_t i = 0; i < v.size(); ++i) out[i] = v[i] - (dot / nn) * u0[i];
  return out;
}

double theta_constant(const FieldSpec& F) {
  double theta = 0.0;
  for (int i = 0; i < F.n; ++i) {
    double s = 0.0;
    for (int j = 0; j < F.n; ++j) s += std::abs(F.emb[i][j]);
    theta = std::max(theta, s);
  }
  return theta;
}

void validate_units(const FieldSpec& F, const UnitData& u, double tol) {
  auto g = F.element(u.torsion_generator);
  if (F.abs_norm(g) != 1) throw domain_error("torsion generator is not a unit");
  // order must be exactly torsion_order
  AlgInt p = g;
  for (i64 k = 1; k < u.torsion_order; ++k) {
    if (p == F.one()) throw domain_error("torsion generator has smaller order than declared");
    p = F.mul(p, g);
  }
  if (p != F.one()) throw domain_error("torsion generator order mismatch");
  int k = u.unit_rank();
  if (k != F.r1 + F.r2 - 1)
    throw domain_error("unit rank must be r1 + r2 - 1 = " + std::to_string(F.r1 + F.r2 - 1));
  for (const auto& e : u.fundamental_units) {
    auto eps = F.element(e);
    if (F.abs_norm(eps) != 1) throw domain_error("fundamental unit has norm != 1");
  }
  if (k > 0) {
    // Gram determinant of the log images must be bounded away from zero.
    std::vector<std::vector<double>> logs;
    for (const auto& e : u.fundamental_units) logs.push_back(log_embed(F, F.element(e)));
    std::vector<std::vector<double>> gram(k, std::vector<double>(k));
    for (int i = 0; i < k; ++i)
      for (int j = 0; j < k; ++j) {
        double s = 0.0;
        for (size_t t = 0; t < logs[i].size(); ++t) s += logs[i][t] * logs[j][t];
        gram[i][j] = s;
      }
    // determinant by elimination
    double det = 1.0;
    for (int c = 0; c < k; ++c) {
      int piv = c;
      for (int r = c + 1; r < k; ++r)
        if (std::abs(gram[r][c]) > std::abs(gram[piv][c])) piv = r;
      std::swap(gram[c], gram[piv]);
      if (std::abs(gram[c][c]) < tol) throw domain_error("unit log images are dependent");
      det *= gram[c][c];
      for (int r = c + 1; r < k; ++r) {
        double f = gram[r][c] / gram[c][c];
        for (int cc = c; cc < k; ++cc) gram[r][cc] -= f * gram[c][cc];
      }
    }
    if (std::abs(det) < tol) throw domain_error("unit log images are dependent");
  }
}

namespace {

// Fundamental solution of x^2 - d y^2 = +-1 from the continued fraction of
// sqrt(d): the period of [a0; a1, ...] closes at the partial quotient 2*a0,
// and the convergent right before it is the solution.
std::pair<i64, i64> pell_from_cf(i64 d) {
  const i64 sq = isqrt_i64(d);
  const i64 cap = 1000000;
  i64 P = 0, Q = 1;
  i128 pm1 = 1, pm2 = 0;
  i128 qm1 = 0, qm2 = 1;
  const i64 a0 = sq;
  for (i64 k = 0; k < cap; ++k) {
    i64 a = (P + sq) / Q;
    if (a == 2 * a0 && k >= 1)
      return {checked_i64(pm1, "fundamental unit"), checked_i64(qm1, "fundamental unit")};
    i128 p = i128(a) * pm1 + pm2;
    i128 q = i128(a) * qm1 + qm2;
    pm2 = pm1;
    pm1 = p;
    qm2 = qm1;
    qm1 = q;
    P = a * Q - P;
    Q = (d - P * P) / Q;
  }
  throw infeasible_error("continued fraction period exceeds the 10^6 cap");
}

// Fundamental unit of Z[omega_d] in integral-basis coordinates.
ZVec real_quadratic_unit(const FieldSpec& F) {
  const i64 d = F.quad_d;
  auto [x1, y1] = pell_from_cf(d);
  bool half = ((d % 4) + 4) % 4 == 1;
  if (!half) return {x1, y1};  // x1 + y1 * sqrt(d)
  // d = 1 mod 4: the maximal order can have a smaller unit (x + y sqrt d)/2
  // with x^2 - d y^2 = +-4; the y-coefficients of unit powers strictly
  // increase, so the first y with a solution gives the fundamental unit.
  // (2*x1, 2*y1) is always a solution, so the scan terminates.
  for (i64 y = 1; y <= 2 * y1; ++y) {
    for (i64 sgn : {-1LL, +1LL}) {
      i128 sqv = i128(d) * y * y + 4 * sgn;
      if (sqv < 0) continue;
      i64 s64 = checked_i64(sqv, "pell scan");
      i64 x;
      if (!is_perfect_square(s64, &x)) continue;
      if ((x - y) % 2 != 0) continue;  // (x + y sqrt d)/2 must lie in Z[omega]
      // coordinates over (1, omega): (x + y sqrt d)/2 = (x-y)/2 + y*omega
      return {(x - y) / 2, y};
    }
  }
  return {checked_i64(i128(x1) - y1, "fundamental unit"),
          checked_i64(2 * i128(y1), "fundamental unit")};
}

}  // namespace

UnitData fundamental_units(const FieldSpec& F, const std::optional<UnitData>& supplied) {
  if (supplied) {
    validate_units(F, *supplied);
    return *supplied;
  }
  if (F.units) {
    validate_units(F, *F.units);
    return *F.units;
  }
  UnitData u;
  u.torsion_order = 2;
  u.torsion_generator = ZVec(F.n, 0);
  u.torsion_generator[0] = -1;
  if (F.n == 1) return u;
  if (F.is_quadratic && F.quad_d < 0) {
    if (F.quad_d == -1) {
      u.torsion_order = 4;
      u.torsion_generator = {0, 1};  // i
    } else if (F.quad_d == -3) {
      u.torsion_order = 6;
      u.torsion_generator = {0, 1};  // (1+sqrt(-3))/2, a primitive 6th root
    }
    return u;
  }
  if (F.is_quadratic && F.quad_d > 0) {
    u.fundamental_units.push_back(real_quadratic_unit(F));
    validate_units(F, u);
    return u;
  }
  throw domain_error("generic fields need user-supplied units");
}

namespace {

std::vector<std::vector<double>> invert_matrix(std::vector<std::vector<double>> m) {
  int n = int(m.size());
  std::vector<std::vector<double>> inv(n, std::vector<double>(n, 0.0));
  for (int i = 0; i < n; ++i) inv[i][i] = 1.0;
  for (int c = 0; c < n; ++c) {
    int piv = c;
    for (int r = c + 1; r < n; ++r)
      if (std::abs(m[r][c]) > std::abs(m[piv][c])) piv = r;
    if (std::abs(m[piv][c]) < 1e-12) throw domain_error("ill-conditioned domain basis");
    std::swap(m[c], m[piv]);
    std::swap(inv[c], inv[piv]);
    double s = m[c][c];
    for (int cc = 0; cc < n; ++cc) {
      m[c][cc] /= s;
      inv[c][cc] /= s;
    }
    for (int r = 0; r < n; ++r) {
      if (r == c) continue;
      double f = m[r][c];
      if (f == 0.0) continue;
      for (int cc = 0; cc < n; ++cc) {
        m[r][cc] -= f * m[c][cc];
        inv[r][cc] -= f * inv[c][cc];
      }
    }
  }
  return inv;
}

double simplex_volume(const std::vector<std::vector<double>>& verts) {
  // k-dimensional volume of the simplex with k+1 vertices in R^m.
  int k = int(verts.size()) - 1;
  if (k <= 0) return 1.0;
  size_t m = verts[0].size();
  std::vector<std::vector<double>> gram(k, std::vector<double>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      double s = 0.0;
      for (size_t t = 0; t < m; ++t)
        s += (verts[i + 1][t] - verts[0][t]) * (verts[j + 1][t] - verts[0][t]);
      gram[i][j] = s;
    }
  double det = 1.0;
  for (int c = 0; c < k; ++c) {
    int piv = c;
    for (int r = c + 1; r < k; ++r)
      if (std::abs(gram[r][c]) > std::abs(gram[piv][c])) piv = r;
    std::swap(gram[c], gram[piv]);
    det *= gram[c][c];
    for (int r = c + 1; r < k; ++r) {
      double f = gram[r][c] / gram[c][c];
      for (int cc = c; cc < k; ++cc) gram[r][cc] -= f * gram[c][cc];
    }
  }
  double fact = 1.0;
  for (int i = 2; i <= k; ++i) fact *= i;
  return std::sqrt(std::abs(det)) / fact;
}

double cell_volume(const std::vector<std::vector<double>>& vecs) {
  int k = int(vecs.size());
  if (k == 0) return 1.0;
  std::vector<std::vector<double>> gram(k, std::vector<double>(k));
  for (int i = 0; i < k; ++i)
    for (int j = 0; j < k; ++j) {
      double s = 0.0;
      for (size_t t = 0; t < vecs[i].size(); ++t) s += vecs[i][t] * vecs[j][t];
      gram[i][j] = s;
    }
  double det = 1.0;
  for (int c = 0; c < k; ++c) {
    int piv = c;
    for (int r = c + 1; r < k; ++r)
      if (std::abs(gram[r][c]) > std::abs(gram[piv][c])) piv = r;
    std::swap(gram[c], gram[piv]);
    det *= gram[c][c];
    for (int r = c + 1; r < k; ++r) {
      double f = gram[r][c] / gram[c][c];
      for (int cc = c; cc < k; ++cc) gram[r][cc] -= f * gram[c][cc];
    }
  }
  return std::sqrt(std::abs(det));
}

}  // namespace

double orbit_xi(const FieldSpec& F, const UnitData& units) {
  const int rc = F.r1 + F.r2;
  const int k = rc - 1;
  const double n = double(F.n);
  const double theta = theta_constant(F);
  auto u0 = u0_vector(F);
  if (k == 0) return std::max(double(units.torsion_order), std::pow(theta, n));
  // T = (1/n)(u0 + Q) cap H: simplex with vertices (1/n)(u0 - (n/u0_i) e_i).
  std::vector<std::vector<double>> tverts;
  for (int i = 0; i < rc; ++i) {
    std::vector<double> v(rc);
    for (int t = 0; t < rc; ++t) v[t] = u0[t] / n;
    v[i] -= 1.0 / u0[i];
    tverts.push_back(v);
  }
  double vol_T = simplex_volume(tverts);
  std::vector<std::vector<double>> logs;
  for (const auto& e : units.fundamental_units) logs.push_back(log_embed(F, F.element(e)));
  double vol_F = cell_volume(logs);
  // smallest c with the closed unit cell inside c*T:
  // x in c*T iff x in H and x_i <= c * u0_i / n for every i.
  double c = 0.0;
  for (u64 mask = 0; mask < (u64(1) << k); ++mask) {
    std::vector<double> x(rc, 0.0);
    for (int j = 0; j < k; ++j)
      if (mask & (u64(1) << j))
        for (int t = 0; t < rc; ++t) x[t] += logs[j][t];
    for (int t = 0; t < rc; ++t) c = std::max(c, n * x[t] / u0[t]);
  }
  return std::max(double(units.torsion_order) * vol_T / vol_F, std::exp(c) * std::pow(theta, n));
}

DomainSpec make_domain(const FieldSpec& F, const std::optional<UnitData>& supplied,
                       int sigma_index) {
  DomainSpec D;
  D.F = &F;
  D.units = fundamental_units(F, supplied);
  D.sigma_index = sigma_index;
  if (sigma_index < 0 || sigma_index >= F.n) throw domain_error("sigma index out of range");
  D.u0 = u0_vector(F);
  const int rc = F.r1 + F.r2;
  D.basis_matrix.assign(rc, std::vector<double>(rc, 0.0));
  for (int i = 0; i < rc; ++i) D.basis_matrix[i][0] = D.u0[i];
  for (int j = 0; j < D.units.unit_rank(); ++j) {
    auto uj = log_embed(F, F.element(D.units.fundamental_units[j]));
    for (int i = 0; i < rc; ++i) D.basis_matrix[i][j + 1] = uj[i];
    // units must land in H
    double dot = 0.0;
    for (int i = 0; i < rc; ++i) dot += uj[i] * D.u0[i];
    if (std::abs(dot) > 1e-6) throw domain_error("unit log image is not orthogonal to u0");
  }
  D.solve_matrix = invert_matrix(D.basis_matrix);
  D.theta = theta_constant(F);
  D.xi = orbit_xi(F, D.units);
  return D;
}

std::vector<double> domain_coordinates(const DomainSpec& D, const AlgInt& a) {
  auto l = log_embed(*D.F, a);
  const int rc = int(l.size());
  std::vector<double> y(rc, 0.0);
  for (int i = 0; i < rc; ++i)
    for (int j = 0; j < rc; ++j) y[i] += D.solve_matrix[i][j] * l[j];
  return y;
}

namespace {

bool argument_window_ok(const DomainSpec& D, const AlgInt& a) {
  auto z = D.F->embedding_value(D.sigma_index, a);
  double arg = std::atan2(z.imag(), z.real());
  const double two_pi = 2.0 * M_PI;
  const double window = two_pi / double(D.units.torsion_order);
  const double tol = 1e-12;
  if (arg < -tol) arg += two_pi;
  return arg >= -tol && arg < window - tol;
}

}  // namespace

bool in_fundamental_domain(const AlgInt& a, const DomainSpec& D) {
  if (a.is_zero()) throw domain_error("zero element has no domain membership");
  auto y = domain_coordinates(D, a);
  for (int i = 1; i < int(y.size()); ++i)
    if (y[i] < -D.tol || y[i] >= 1.0 - D.tol) return false;
  return argument_window_ok(D, a);
}

AlgInt canonical_associate(const AlgInt& a, const DomainSpec& D) {
  if (a.is_zero()) throw domain_error("zero element has no canonical associate");
  const FieldSpec& F = *D.F;
  AlgInt beta = a;
  const int k = D.units.unit_rank();
  for (int iter = 0; iter < 64 && k > 0; ++iter) {
    auto y = domain_coordinates(D, beta);
    bool moved = false;
    for (int j = 0; j < k; ++j) {
      i64 m = i64(std::floor(y[j + 1] + D.tol));
      if (m == 0) continue;
      moved = true;
      auto eps = F.element(D.units.fundamental_units[j]);
      if (m > 0) {
        for (i64 t = 0; t < m; ++t) beta = F.divide_exact(beta, eps);
      } else {
        for (i64 t = 0; t < -m; ++t) beta = F.mul(beta, eps);
      }
    }
    if (!moved) break;
  }
  // torsion cycle to land in the argument window
  auto g = F.element(D.units.torsion_generator);
  AlgInt cand = beta;
  for (i64 t = 0; t < D.units.torsion_order; ++t) {
    if (in_fundamental_domain(cand, D)) return cand;
    cand = F.mul(cand, g);
  }
  throw domain_error("no associate landed in the domain (boundary tolerance issue)");
}

NLWitness nl_constants_serial(const DomainSpec& D, double M) {
  if (M < 1) throw domain_error("NL scan needs M >= 1");
  const FieldSpec& F = *D.F;
  NLWitness w;
  w.c_min = std::numeric_limits<double>::infinity();
  w.c_max = 0.0;
  BoxStream bs(F.n, M);
  ZVec c;
  while (bs.next(c)) {
    auto a = F.element(c);
    if (a.is_zero()) continue;
    if (!in_fundamental_domain(a, D)) continue;
    double ratio = double(F.abs_norm(a)) / std::pow(double(a.linf()), F.n);
    w.c_min = std::min(w.c_min, ratio);
    w.c_max = std::max(w.c_max, ratio);
    ++w.samples;
  }
  if (w.samples == 0) throw domain_error("box too small: no nonzero domain points");
  return w;
}

NLWitness nl_constants(const DomainSpec& D, double M, int workers) {
  if (M < 1) throw domain_error("NL scan needs M >= 1");
  const FieldSpec& F = *D.F;
  const i64 m = i64(std::floor(M));
  NLWitness total;
  total.c_min = std::numeric_limits<double>::infinity();
  total.c_max = 0.0;
#ifdef _OPENMP
  int nthreads = workers > 0 ? workers : omp_get_max_threads();
#else
  int nthreads = 1;
  (void)workers;
#endif
  std::vector<NLWitness> parts(size_t(2 * m + 1));
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
  for (i64 first = -m; first <= m; ++first) {
    NLWitness w;
    w.c_min = std::numeric_limits<double>::infinity();
    w.c_max = 0.0;
    BoxStream bs(F.n, M, -1.0, first, first);
    ZVec c;
    while (bs.next(c)) {
      auto a = F.element(c);
      if (a.is_zero()) continue;
      if (!in_fundamental_domain(a, D)) continue;
      double ratio = double(F.abs_norm(a)) / std::pow(double(a.linf()), F.n);
      w.c_min = std::min(w.c_min, ratio);
      w.c_max = std::max(w.c_max, ratio);
      ++w.samples;
    }
    parts[size_t(first + m)] = w;
  }
  for (const auto& w : parts) {
    total.c_min = std::min(total.c_min, w.c_min);
    total.c_max = std::max(total.c_max, w.c_max);
    total.samples += w.samples;
  }
  if (total.samples == 0) throw domain_error("box too small: no nonzero domain points");
  return total;
}

i64 orbit_count(const FieldSpec& F, const UnitData& units, const AlgInt& a, double M) {
  if (a.is_zero()) throw domain_error("orbit of zero");
  if (M < 0) return 0;
  const int k = units.unit_rank();
  const int rc = F.r1 + F.r2;
  // torsion multiples of one element
  auto count_in_box = [&](const AlgInt& b) {
    i64 c = 0;
    AlgInt cur = b;
    auto g = F.element(units.torsion_generator);
    for (i64 t = 0; t < units.torsion_order; ++t) {
      if (cur.linf() <= i64(std::floor(M))) ++c;
      cur = F.mul(cur, g);
    }
    return c;
  };
  if (k == 0) return count_in_box(a);

  // Every orbit element in the box satisfies |sigma_i(beta)| <= Theta*M and,
  // since the norm is fixed, |sigma_i(beta)| >= N / (Theta*M)^(n-1).  In the
  // log embedding this pins each coordinate into an interval, hence the unit
  // exponents m_j = y_j(beta) - y_j(alpha) into an explicit rectangle, which
  // we enumerate exactly.
  const double theta = theta_constant(F);
  const double cap = std::log(theta * std::max(M, 1.0));
  const double logN = std::log(double(F.abs_norm(a)));
  const double w0 = std::max(std::abs(cap), std::abs(double(F.n - 1) * cap - logN)) + 1.0;
  // solve coordinates against the basis (u0, u1, ..., uk)
  std::vector<std::vector<double>> basis(rc, std::vector<double>(rc, 0.0));
  auto u0 = u0_vector(F);
  for (int i = 0; i < rc; ++i) basis[i][0] = u0[i];
  std::vector<AlgInt> eps, eps_inv;
  for (int j = 0; j < k; ++j) {
    auto e = F.element(units.fundamental_units[j]);
    eps.push_back(e);
    eps_inv.push_back(F.divide_exact(F.one(), e));
    auto le = log_embed(F, e);
    for (int i = 0; i < rc; ++i) basis[i][j + 1] = le[i];
  }
  auto inv = invert_matrix(basis);
  auto y_coords = [&](const std::vector<double>& l) {
    std::vector<double> y(rc, 0.0);
    for (int i = 0; i < rc; ++i)
      for (int j = 0; j < rc; ++j) y[i] += inv[i][j] * l[j];
    return y;
  };
  auto ya = y_coords(log_embed(F, a));
  const double wmax = std::sqrt(2.0) * w0;
  i64 count = 0;
  std::vector<i64> lo(k), hi(k);
  for (int j = 0; j < k; ++j) {
    double bound = 0.0;
    for (int i = 0; i < rc; ++i) bound += std::abs(inv[j + 1][i]) * wmax;
    lo[j] = i64(std::floor(-bound - ya[j + 1] - 1.0));
    hi[j] = i64(std::ceil(bound - ya[j + 1] + 1.0));
    if (hi[j] - lo[j] > 4096)
      throw infeasible_error("orbit exponent range too large at this scale");
  }
  // per-axis power tables, then one product per exponent vector
  std::vector<std::vector<AlgInt>> pow_table(k);
  std::vector<std::vector<bool>> pow_ok(k);
  for (int j = 0; j < k; ++j) {
    pow_table[j].resize(size_t(hi[j] - lo[j] + 1));
    pow_ok[j].assign(size_t(hi[j] - lo[j] + 1), false);
    // ascending from exponent 0 outward keeps each step a single multiply
    auto set_entry = [&](i64 m, const AlgInt& v) {
      pow_table[j][size_t(m - lo[j])] = v;
      pow_ok[j][size_t(m - lo[j])] = true;
    };
    if (0 >= lo[j] && 0 <= hi[j]) set_entry(0, F.one());
    AlgInt cur = F.one();
    for (i64 m = 1; m <= hi[j]; ++m) {
      try {
        cur = F.mul(cur, eps[j]);
      } catch (const overflow_error&) {
        break;  // beyond 64 bits: certainly outside any desk-scale box
      }
      if (m >= lo[j]) set_entry(m, cur);
    }
    cur = F.one();
    for (i64 m = -1; m >= lo[j]; --m) {
      try {
        cur = F.mul(cur, eps_inv[j]);
      } catch (const overflow_error&) {
        break;
      }
      if (m <= hi[j]) set_entry(m, cur);
    }
  }
  std::vector<i64> m(k);
  for (int j = 0; j < k; ++j) m[j] = lo[j];
  while (true) {
    AlgInt beta = a;
    bool ok = true;
    for (int j = 0; j < k && ok; ++j) {
      if (!pow_ok[j][size_t(m[j] - lo[j])]) {
        ok = false;
        break;
      }
      try {
        beta = F.mul(beta, pow_table[j][size_t(m[j] - lo[j])]);
      } catch (const overflow_error&) {
        ok = false;
      }
    }
    if (ok) count += count_in_box(beta);
    int j = k - 1;
    while (j >= 0 && m[j] == hi[j]) {
      m[j] = lo[j];
      --j;
    }
    if (j < 0) break;
    ++m[j];
  }
  return count;
}

}  // namespace constell
