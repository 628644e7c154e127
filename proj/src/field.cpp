#include "constell/field.hpp"

#include <algorithm>
#include <cmath>
#include <sstream>

namespace constell {

namespace {

void require_same_basis(const FieldSpec* f, const AlgInt& a, const AlgInt& b) {
  if (a.field != f || b.field != f) throw domain_error("element belongs to a different field");
  if (a.basis_tag != b.basis_tag) throw domain_error("basis mismatch between operands");
  if (a.basis_tag != 0) throw domain_error("ring operations require integral-basis coordinates");
}

}  // namespace

AlgInt FieldSpec::element(ZVec coords) const {
  if (int(coords.size()) != n) throw domain_error("coordinate vector of wrong length");
  AlgInt a;
  a.field = this;
  a.coords = std::move(coords);
  return a;
}

AlgInt FieldSpec::one() const {
  ZVec c(n, 0);
  c[0] = 1;  // omega_1 = 1 in every constructed basis
  return element(std::move(c));
}

AlgInt FieldSpec::integer(i64 m) const {
  ZVec c(n, 0);
  c[0] = m;
  return element(std::move(c));
}

AlgInt FieldSpec::quad(i64 x, i64 y) const {
  if (n != 2) throw domain_error("quad() needs a quadratic field");
  return element({x, y});
}

AlgInt FieldSpec::add(const AlgInt& a, const AlgInt& b) const {
  require_same_basis(this, a, b);
  ZVec c(n);
  for (int i = 0; i < n; ++i) c[i] = add_i64(a.coords[i], b.coords[i]);
  return element(std::move(c));
}

AlgInt FieldSpec::sub(const AlgInt& a, const AlgInt& b) const {
  require_same_basis(this, a, b);
  ZVec c(n);
  for (int i = 0; i < n; ++i) c[i] = checked_i64(i128(a.coords[i]) - b.coords[i], "difference");
  return element(std::move(c));
}

AlgInt FieldSpec::neg(const AlgInt& a) const {
  ZVec c(n);
  for (int i = 0; i < n; ++i) c[i] = -a.coords[i];
  AlgInt r;
  r.field = a.field;
  r.basis_tag = a.basis_tag;
  r.coords = std::move(c);
  return r;
}

AlgInt FieldSpec::mul(const AlgInt& a, const AlgInt& b) const {
  require_same_basis(this, a, b);
  std::vector<i128> acc(n, 0);
  for (int i = 0; i < n; ++i) {
    if (a.coords[i] == 0) continue;
    for (int j = 0; j < n; ++j) {
      if (b.coords[j] == 0) continue;
      i128 prod = i128(a.coords[i]) * b.coords[j];
      const ZVec& st = mult[i][j];
      for (int k = 0; k < n; ++k)
        if (st[k]) acc[k] += prod * st[k];
    }
  }
  ZVec c(n);
  for (int k = 0; k < n; ++k) c[k] = checked_i64(acc[k], "product coordinate");
  return element(std::move(c));
}

AlgInt FieldSpec::mul_int(const AlgInt& a, i64 k) const {
  ZVec c(n);
  for (int i = 0; i < n; ++i) c[i] = mul_i64(a.coords[i], k);
  return element(std::move(c));
}

AlgInt FieldSpec::conjugate(const AlgInt& a) const {
  if (!is_quadratic) throw domain_error("exact conjugate implemented for quadratic fields only");
  i64 x = a.coords[0], y = a.coords[1];
  bool half = ((quad_d % 4) + 4) % 4 == 1;  // omega = (1+sqrt d)/2
  if (half) return element({add_i64(x, y), -y});
  return element({x, -y});
}

AlgInt FieldSpec::divide_exact(const AlgInt& a, const AlgInt& b) const {
  require_same_basis(this, a, b);
  if (b.is_zero()) throw domain_error("division by zero");
  // Solve (mult matrix of b) x = a over the rationals, demand integrality.
  ZMat m = mult_matrix(b);
  // Cramer via Bareiss determinants: n is tiny.
  i64 det = det_zmat(m);
  if (det == 0) throw domain_error("division by zero divisor");
  ZVec c(n);
  for (int j = 0; j < n; ++j) {
    ZMat mj = m;
    for (int i = 0; i < n; ++i) mj[i][j] = a.coords[i];
    i64 dj = det_zmat(mj);
    if (dj % det != 0) throw domain_error("not an exact quotient in O_K");
    c[j] = dj / det;
  }
  return element(std::move(c));
}

ZMat FieldSpec::mult_matrix(const AlgInt& a) const {
  if (a.field != this || a.basis_tag != 0)
    throw domain_error("mult_matrix needs integral-basis coordinates");
  ZMat m(n, ZVec(n, 0));
  for (int j = 0; j < n; ++j) {
    // a * omega_j
    std::vector<i128> acc(n, 0);
    for (int i = 0; i < n; ++i) {
      if (a.coords[i] == 0) continue;
      const ZVec& st = mult[i][j];
      for (int k = 0; k < n; ++k)
        if (st[k]) acc[k] += i128(a.coords[i]) * st[k];
    }
    for (int k = 0; k < n; ++k) m[k][j] = checked_i64(acc[k], "mult matrix");
  }
  return m;
}

i64 FieldSpec::element_norm(const AlgInt& a) const {
  return det_zmat(mult_matrix(a));
}

i64 FieldSpec::abs_norm(const AlgInt& a) const {
  if (a.is_zero()) throw domain_error("abs_norm of zero");
  i64 v = element_norm(a);
  return v < 0 ? -v : v;
}

std::vector<std::complex<double>> FieldSpec::embedding_values(const AlgInt& a) const {
  std::vector<std::complex<double>> out(n, 0.0);
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) out[i] += double(a.coords[j]) * emb[i][j];
  return out;
}

std::complex<double> FieldSpec::embedding_value(int i, const AlgInt& a) const {
  std::complex<double> v = 0.0;
  for (int j = 0; j < n; ++j) v += double(a.coords[j]) * emb[i][j];
  return v;
}

void FieldSpec::validate(double tol) const {
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (mult[i][j] != mult[j][i]) throw domain_error("multiplication table not commutative");
  // Associativity on basis triples: (w_i w_j) w_k == w_i (w_j w_k).
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      for (int k = 0; k < n; ++k) {
        AlgInt ij = element(mult[i][j]);
        AlgInt jk = element(mult[j][k]);
        ZVec ei(n, 0), ek(n, 0);
        ei[i] = 1;
        ek[k] = 1;
        AlgInt left = mul(ij, element(ek));
        AlgInt right = mul(element(ei), jk);
        if (left.coords != right.coords)
          throw domain_error("multiplication table not associative");
      }
  // Each embedding must respect the table: sigma(w_i w_j) = sigma(w_i) sigma(w_j).
  for (int e = 0; e < n; ++e)
    for (int i = 0; i < n; ++i)
      for (int j = 0; j < n; ++j) {
        std::complex<double> lhs = 0.0;
        for (int k = 0; k < n; ++k) lhs += double(mult[i][j][k]) * emb[e][k];
        std::complex<double> rhs = emb[e][i] * emb[e][j];
        if (std::abs(lhs - rhs) > tol * (1.0 + std::abs(rhs)))
          throw domain_error("embedding approximations violate the multiplication table");
      }
}

std::string FieldSpec::describe() const {
  std::ostringstream os;
  if (n == 1) return "Q";
  if (is_quadratic) {
    os << "Q(sqrt(" << quad_d << "))";
  } else {
    os << "Z[theta], theta^" << n << " minpoly [";
    for (size_t i = 0; i < theta_minpoly.size(); ++i)
      os << (i ? "," : "") << theta_minpoly[i];
    os << "]";
  }
  os << " n=" << n << " (r1,r2)=(" << r1 << "," << r2 << ") d_K=" << disc;
  return os.str();
}

FieldSpec make_rational_field() {
  FieldSpec F;
  F.n = 1;
  F.r1 = 1;
  F.r2 = 0;
  F.disc = 1;
  F.basis_names = {"1"};
  F.mult = {{{1}}};
  F.emb = {{1.0}};
  F.class_number = 1;
  UnitData u;
  u.torsion_order = 2;
  u.torsion_generator = {-1};
  F.units = u;
  F.theta_minpoly = {};
  return F;
}

FieldSpec make_quadratic_field(i64 d) {
  if (d == 0 || d == 1) throw domain_error("d must not be 0 or 1");
  if (!is_square_free(d)) throw domain_error("d must be square-free");
  FieldSpec F;
  F.n = 2;
  F.is_quadratic = true;
  F.quad_d = d;
  if (d > 0) {
    F.r1 = 2;
    F.r2 = 0;
  } else {
    F.r1 = 0;
    F.r2 = 1;
  }
  i64 dm4 = ((d % 4) + 4) % 4;
  bool half = dm4 == 1;
  F.disc = half ? d : mul_i64(4, d);
  F.basis_names.push_back("1");
  F.basis_names.push_back(half ? "(1+sqrt(" + std::to_string(d) + "))/2"
                               : "sqrt(" + std::to_string(d) + ")");
  // omega^2 = (d-1)/4 + omega   when d = 1 mod 4
  // omega^2 = d                 otherwise
  ZVec omega_sq = half ? ZVec{(d - 1) / 4, 1} : ZVec{d, 0};
  F.mult.assign(2, std::vector<ZVec>(2));
  F.mult[0][0] = {1, 0};
  F.mult[0][1] = {0, 1};
  F.mult[1][0] = {0, 1};
  F.mult[1][1] = omega_sq;
  // Principal square root first: sigma_1(sqrt d) = +sqrt(d) (resp. +i sqrt|d|).
  double sq = std::sqrt(std::abs(double(d)));
  std::complex<double> root = d > 0 ? std::complex<double>(sq, 0.0)
                                    : std::complex<double>(0.0, sq);
  std::complex<double> w1 = half ? (1.0 + root) / 2.0 : root;
  std::complex<double> w2 = half ? (1.0 - root) / 2.0 : -root;
  F.emb.assign(2, {1.0, 0.0});
  F.emb[0][1] = w1;
  F.emb[1][1] = w2;
  F.theta_minpoly = half ? std::vector<i64>{-(d - 1) / 4, -1, 1} : std::vector<i64>{-d, 0, 1};
  return F;
}

namespace {

// Durand-Kerner simultaneous root iteration for a monic integer polynomial.
std::vector<std::complex<double>> poly_roots(const std::vector<i64>& monic) {
  int deg = int(monic.size()) - 1;
  std::vector<std::complex<double>> c(deg + 1);
  for (int i = 0; i <= deg; ++i) c[i] = double(monic[i]);
  auto eval = [&](std::complex<double> x) {
    std::complex<double> v = c[deg];
    for (int i = deg - 1; i >= 0; --i) v = v * x + c[i];
    return v;
  };
  double radius = 1.0;
  for (int i = 0; i < deg; ++i) radius = std::max(radius, 1.0 + std::abs(c[i].real()));
  std::vector<std::complex<double>> r(deg);
  for (int i = 0; i < deg; ++i) {
    double ang = 2.0 * M_PI * (i + 0.25) / deg;
    r[i] = 0.4 + 0.9 * radius * std::complex<double>(std::cos(ang), std::sin(ang));
  }
  for (int iter = 0; iter < 1000; ++iter) {
    double moved = 0.0;
    for (int i = 0; i < deg; ++i) {
      std::complex<double> denom = 1.0;
      for (int j = 0; j < deg; ++j)
        if (j != i) denom *= (r[i] - r[j]);
      std::complex<double> delta = eval(r[i]) / denom;
      r[i] -= delta;
      moved = std::max(moved, std::abs(delta));
    }
    if (moved < 1e-14 * radius) break;
  }
  return r;
}

}  // namespace

FieldSpec make_monogenic_field(const std::vector<i64>& minpoly, i64 claimed_index) {
  int deg = int(minpoly.size()) - 1;
  if (deg < 2) throw domain_error("degree must be at least 2");
  if (minpoly[deg] != 1) throw domain_error("minimal polynomial must be monic");
  if (claimed_index < 1) throw domain_error("claimed index must be positive");
  // Rational-root screen: a monic integer polynomial has only integer
  // rational roots, all dividing the constant term.
  i64 c0 = minpoly[0];
  if (c0 == 0) throw domain_error("reducible: x divides the polynomial");
  auto eval_at = [&](i64 x) {
    i128 v = 0;
    for (int i = deg; i >= 0; --i) v = v * x + minpoly[i];
    return v;
  };
  i64 a0 = c0 < 0 ? -c0 : c0;
  for (i64 t = 1; t * t <= a0; ++t) {
    if (a0 % t) continue;
    for (i64 root : {t, -t, a0 / t, -a0 / t})
      if (eval_at(root) == 0)
        throw domain_error("reducible: rational root " + std::to_string(root));
  }
  // Small-factor screen: attempt factorizations into two monic integer
  // polynomials with small coefficient height.
  if (deg == 4) {
    i64 H = 1;
    for (int i = 0; i < deg; ++i) H = std::max(H, std::abs(minpoly[i]));
    i64 B = std::min<i64>(H + 1, 64);
    for (i64 p0 = -B; p0 <= B; ++p0)
      for (i64 p1 = -B; p1 <= B; ++p1) {
        if (p0 == 0) continue;
        if (c0 % p0) continue;
        i64 q0 = c0 / p0;
        // (x^2+p1 x+p0)(x^2+q1 x+q0) comparison
        // coefficient of x^3: p1 + q1 = minpoly[3]
        i64 q1 = minpoly[3] - p1;
        if (p1 * q1 + p0 + q0 != minpoly[2]) continue;
        if (p1 * q0 + q1 * p0 != minpoly[1]) continue;
        throw domain_error("reducible: quadratic factor found");
      }
  }

  FieldSpec F;
  F.n = deg;
  F.theta_minpoly = minpoly;
  F.claimed_index = claimed_index;
  F.basis_names.push_back("1");
  for (int i = 1; i < deg; ++i)
    F.basis_names.push_back(i == 1 ? "theta" : "theta^" + std::to_string(i));

  // Powers theta^k for k < 2*deg-1, reduced modulo the minimal polynomial.
  std::vector<ZVec> powers(2 * deg - 1, ZVec(deg, 0));
  powers[0][0] = 1;
  for (int k = 1; k < 2 * deg - 1; ++k) {
    const ZVec& prev = powers[k - 1];
    ZVec cur(deg, 0);
    i64 top = prev[deg - 1];
    for (int i = deg - 1; i >= 1; --i) cur[i] = prev[i - 1];
    cur[0] = 0;
    if (top != 0)
      for (int i = 0; i < deg; ++i)
        cur[i] = checked_i64(i128(cur[i]) - i128(top) * minpoly[i], "power reduction");
    powers[k] = cur;
  }
  F.mult.assign(deg, std::vector<ZVec>(deg));
  for (int i = 0; i < deg; ++i)
    for (int j = 0; j < deg; ++j) F.mult[i][j] = powers[i + j];

  // Embeddings from the numeric roots, real ones sorted ascending, complex
  // representatives sorted by principal argument.
  auto roots = poly_roots(minpoly);
  double scale = 0.0;
  for (auto& r : roots) scale = std::max(scale, std::abs(r));
  double tol = 1e-8 * std::max(1.0, scale);
  std::vector<double> real_roots;
  std::vector<std::complex<double>> cplx;
  for (auto& r : roots) {
    if (std::abs(r.imag()) < tol)
      real_roots.push_back(r.real());
    else if (r.imag() > 0)
      cplx.push_back(r);
  }
  std::sort(real_roots.begin(), real_roots.end());
  std::sort(cplx.begin(), cplx.end(), [](auto a, auto b) { return std::arg(a) < std::arg(b); });
  F.r1 = int(real_roots.size());
  F.r2 = int(cplx.size());
  if (F.r1 + 2 * F.r2 != deg) throw domain_error("root classification failed");
  std::vector<std::complex<double>> ordered;
  for (double r : real_roots) ordered.push_back(r);
  for (auto& z : cplx) ordered.push_back(z);
  for (auto& z : cplx) ordered.push_back(std::conj(z));
  // Newton polish at extended precision; real roots stay real.
  for (auto& z : ordered) {
    std::complex<long double> x(z.real(), z.imag());
    for (int it = 0; it < 6; ++it) {
      std::complex<long double> v = minpoly[deg], dv = 0.0L;
      for (int i = deg - 1; i >= 0; --i) {
        dv = dv * x + v;
        v = v * x + static_cast<long double>(minpoly[i]);
      }
      if (std::abs(dv) == 0.0L) break;
      x -= v / dv;
    }
    if (std::abs(z.imag()) < tol)
      z = std::complex<double>(double(x.real()), 0.0);
    else
      z = std::complex<double>(double(x.real()), double(x.imag()));
  }
  F.emb.assign(deg, std::vector<std::complex<double>>(deg));
  for (int i = 0; i < deg; ++i) {
    std::complex<double> p = 1.0;
    for (int j = 0; j < deg; ++j) {
      F.emb[i][j] = p;
      p *= ordered[i];
    }
  }

  // Field discriminant: disc(minpoly) / claimed_index^2, with disc computed
  // exactly as (-1)^(n(n-1)/2) Res(f, f') via the Sylvester determinant.
  std::vector<i64> deriv(deg);
  for (int i = 1; i <= deg; ++i) deriv[i - 1] = mul_i64(minpoly[i], i);
  int rows = 2 * deg - 1;
  ZMat sylvester(rows, ZVec(rows, 0));
  for (int r = 0; r < deg - 1; ++r)  // deg-1 shifted copies of f
    for (int k = 0; k <= deg; ++k) sylvester[r][r + deg - k] = minpoly[k];
  for (int r = 0; r < deg; ++r)  // deg shifted copies of f'
    for (int k = 0; k <= deg - 1; ++k) sylvester[deg - 1 + r][r + deg - 1 - k] = deriv[k];
  i64 res = det_zmat(sylvester);
  int sign = ((deg * (deg - 1) / 2) % 2 == 0) ? 1 : -1;
  i64 poly_disc = mul_i64(sign, res);
  i64 idx2 = mul_i64(claimed_index, claimed_index);
  if (poly_disc % idx2 != 0)
    throw domain_error("claimed index squared does not divide the polynomial discriminant");
  F.disc = poly_disc / idx2;
  return F;
}

FieldSpec parse_field_spec(const std::string& text) {
  std::istringstream is(text);
  std::string kind;
  is >> kind;
  if (kind == "rational" || text == "Q" || text == "q") return make_rational_field();
  std::string rest;
  std::getline(is, rest);
  auto eat = [&](const std::string& key) -> std::string {
    auto pos = rest.find(key + "=");
    if (pos == std::string::npos) throw domain_error("field spec missing '" + key + "='");
    auto end = rest.find_first_of(" \t", pos);
    return rest.substr(pos + key.size() + 1,
                       end == std::string::npos ? std::string::npos : end - pos - key.size() - 1);
  };
  if (kind == "quadratic") {
    return make_quadratic_field(std::stoll(eat("d")));
  }
  if (kind == "monogenic") {
    std::string coeffs = eat("poly");
    std::vector<i64> poly;
    std::istringstream cs(coeffs);
    std::string tok;
    while (std::getline(cs, tok, ',')) poly.push_back(std::stoll(tok));
    return make_monogenic_field(poly);
  }
  throw domain_error("unknown field kind '" + kind + "'");
}

// ---------------------------------------------------------------------------
// BoxStream
// ---------------------------------------------------------------------------

BoxStream::BoxStream(int n, double M, double inner)
    : BoxStream(n, M, inner, INT64_MIN, INT64_MAX) {}

BoxStream::BoxStream(int n, double M, double inner, i64 first_lo, i64 first_hi)
    : n_(n) {
  if (M < 0) {
    done_ = true;
    m_ = -1;
    inner_ = 0;
    first_lo_ = first_hi_ = 0;
    return;
  }
  m_ = i64(std::floor(M));
  inner_ = inner < 0 ? 0 : i64(std::ceil(inner));
  first_lo_ = std::max(first_lo, -m_);
  first_hi_ = std::min(first_hi, m_);
  if (first_lo_ > first_hi_) done_ = true;
  cur_.assign(n_, -m_);
  if (!done_) cur_[0] = first_lo_;
}

bool BoxStream::admissible() const {
  if (inner_ <= 0) return true;
  i64 mx = 0;
  for (i64 c : cur_) mx = std::max(mx, c < 0 ? -c : c);
  return mx >= inner_;
}

bool BoxStream::advance() {
  for (int i = n_ - 1; i >= 0; --i) {
    i64 hi = (i == 0) ? first_hi_ : m_;
    if (cur_[i] < hi) {
      ++cur_[i];
      for (int j = i + 1; j < n_; ++j) cur_[j] = -m_;
      return true;
    }
  }
  return false;
}

bool BoxStream::next(ZVec& out) {
  if (done_) return false;
  if (!started_) {
    started_ = true;
    if (admissible()) {
      out = cur_;
      return true;
    }
  }
  while (advance()) {
    if (admissible()) {
      out = cur_;
      return true;
    }
  }
  done_ = true;
  return false;
}

std::vector<ZVec> box_points(int n, double M, double inner, u64 cap) {
  std::vector<ZVec> out;
  if (M >= 0) {
    double side = 2.0 * std::floor(M) + 1.0;
    double est = std::pow(side, n);
    if (est > double(cap)) throw infeasible_error("box has too many points");
  }
  BoxStream bs(n, M, inner);
  ZVec v;
  while (bs.next(v)) out.push_back(v);
  return out;
}

}  // namespace constell
