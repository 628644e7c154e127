#include "constell/quadform.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "constell/lattice.hpp"

namespace constell {

QuadForm parse_form(const std::string& text) {
  std::istringstream is(text);
  std::string tok;
  std::vector<i64> vals;
  while (std::getline(is, tok, ',')) vals.push_back(std::stoll(tok));
  if (vals.size() != 3) throw domain_error("form literal must be 'a,b,c'");
  return {vals[0], vals[1], vals[2]};
}

FormInvariants form_invariants(const QuadForm& f) {
  FormInvariants inv;
  inv.D = f.disc();
  i64 g = gcd_i64(gcd_i64(f.a, f.b), f.c);
  inv.primitive = (g == 1);
  i64 root;
  inv.degenerate = inv.D >= 0 && is_perfect_square(inv.D, &root);
  if (inv.D < 0)
    inv.definite_sign = f.a > 0 ? 1 : -1;
  else
    inv.definite_sign = 0;
  return inv;
}

namespace {

void require_reducible(const QuadForm& f) {
  auto inv = form_invariants(f);
  if (inv.degenerate) throw domain_error("degenerate form (square discriminant)");
  if (!inv.primitive) throw domain_error("form is not primitive");
  if (f.a == 0) throw domain_error("form with a = 0");
}

// definite reduction (positive definite input)
QuadForm reduce_posdef(QuadForm f) {
  const i64 D = f.disc();
  for (int guard = 0; guard < 4096; ++guard) {
    if (f.a > f.c) {
      f = {f.c, -f.b, f.a};
      continue;
    }
    if (f.b > f.a || f.b <= -f.a) {
      // shift b into (-a, a]
      i64 two_a = 2 * f.a;
      i64 r = checked_i64(f.a - ((i128(f.a) - f.b) % two_a + two_a) % two_a, "reduction");
      f = {f.a, r, checked_i64((i128(r) * r - D) / (4 * i128(f.a)), "reduction")};
      continue;
    }
    if (f.a == f.c && f.b < 0) {
      f.b = -f.b;
      continue;
    }
    return f;
  }
  throw domain_error("definite reduction failed to terminate");
}

bool indefinite_reduced(const QuadForm& f, i64 s) {
  // 0 < b <= floor(sqrt D) and |sqrt D - 2|a|| < b, in exact integer form
  i64 aa = std::abs(f.a);
  return f.b > 0 && f.b <= s && 2 * aa - f.b <= s && 2 * aa + f.b >= s + 1;
}

QuadForm rho_step(const QuadForm& f, i64 s) {
  i64 c = f.c;
  if (c == 0) throw domain_error("degenerate form in reduction cycle");
  i64 two_c = 2 * std::abs(c);
  // largest r <= ub with r = -b (mod 2|c|), where ub = |c| while |c| > s
  // (so |c| keeps shrinking) and ub = s on the reduced cycle.
  i64 ub = std::abs(c) > s ? std::abs(c) : s;
  i128 shift = i128(ub) + f.b;
  i64 q = checked_i64(shift >= 0 ? shift / two_c : -((-shift + two_c - 1) / two_c), "rho");
  i64 r = checked_i64(i128(-f.b) + i128(q) * two_c, "rho");
  i64 new_c = checked_i64((i128(r) * r - f.disc()) / (4 * i128(c)), "rho");
  return {c, r, new_c};
}

QuadForm reduce_indefinite_once(QuadForm f, i64 s) {
  for (int guard = 0; guard < 1 << 16; ++guard) {
    if (indefinite_reduced(f, s)) return f;
    f = rho_step(f, s);
  }
  throw domain_error("indefinite reduction failed to terminate");
}

std::vector<QuadForm> cycle_of(QuadForm f, i64 s) {
  QuadForm start = reduce_indefinite_once(f, s);
  std::vector<QuadForm> cyc{start};
  QuadForm cur = rho_step(start, s);
  int guard = 0;
  while (!(cur == start)) {
    if (!indefinite_reduced(cur, s))
      throw domain_error("rho left the reduced cycle");
    cyc.push_back(cur);
    cur = rho_step(cur, s);
    if (++guard > 1 << 20) throw domain_error("reduction cycle too long");
  }
  return cyc;
}

}  // namespace

QuadForm reduce_form(const QuadForm& f) {
  require_reducible(f);
  i64 D = f.disc();
  if (D < 0) {
    if (f.a > 0) return reduce_posdef(f);
    // canonicalize negative definite forms through -F
    QuadForm neg{-f.a, -f.b, -f.c};
    QuadForm r = reduce_posdef(neg);
    return {-r.a, -r.b, -r.c};
  }
  i64 s = isqrt_i64(D);
  auto cyc = cycle_of(f, s);
  return *std::min_element(cyc.begin(), cyc.end());
}

bool forms_equivalent(const QuadForm& f, const QuadForm& g) {
  if (f.disc() != g.disc()) return false;
  return reduce_form(f) == reduce_form(g);
}

std::vector<QuadForm> reduced_class_representatives(i64 D) {
  i64 root;
  if (((D % 4) + 4) % 4 > 1) throw domain_error("discriminant must be 0 or 1 mod 4");
  if (D >= 0 && is_perfect_square(D, &root)) throw domain_error("square discriminant");
  std::vector<QuadForm> out;
  if (D < 0) {
    i64 amax = isqrt_i64((-D) / 3);
    for (i64 a = 1; a <= amax; ++a) {
      for (i64 b = -a + 1; b <= a; ++b) {
        if (((b - D) % 2 + 2) % 2 != 0) continue;  // b = D (mod 2)
        i128 num = i128(b) * b - D;
        if (num % (4 * a) != 0) continue;
        i64 c = checked_i64(num / (4 * a), "class enumeration");
        if (c < a) continue;
        if (a == c && b < 0) continue;
        if (gcd_i64(gcd_i64(a, b), c) != 1) continue;
        out.push_back({a, b, c});
      }
    }
    std::sort(out.begin(), out.end());
    return out;
  }
  // indefinite: all reduced forms grouped into rho-cycles
  i64 s = isqrt_i64(D);
  std::set<QuadForm> reduced;
  for (i64 b = 1; b <= s; ++b) {
    if (((b - D) % 2 + 2) % 2 != 0) continue;
    i128 num = i128(D) - i128(b) * b;
    if (num % 4 != 0) continue;
    i64 m = checked_i64(num / 4, "class enumeration");  // -ac = m > 0
    for (i64 u = 1; u * u <= m; ++u) {
      if (m % u != 0) continue;
      for (i64 aa : {u, m / u}) {
        i64 cc = m / aa;
        for (i64 a : {aa, -aa}) {
          i64 c = (a > 0 ? -cc : cc);
          QuadForm q{a, b, c};
          if (!indefinite_reduced(q, s)) continue;
          if (gcd_i64(gcd_i64(a, b), c) != 1) continue;
          reduced.insert(q);
        }
      }
    }
  }
  std::set<QuadForm> seen;
  std::vector<QuadForm> reps;
  for (const auto& q : reduced) {
    if (seen.count(q)) continue;
    auto cyc = cycle_of(q, s);
    for (const auto& x : cyc) seen.insert(x);
    reps.push_back(*std::min_element(cyc.begin(), cyc.end()));
  }
  std::sort(reps.begin(), reps.end());
  return reps;
}

i64 class_number(i64 D) { return i64(reduced_class_representatives(D).size()); }

i64 wide_class_number(const FieldSpec& F) {
  if (F.n == 1) return 1;
  if (!F.is_quadratic) throw domain_error("wide class number implemented for quadratic fields");
  i64 hplus = class_number(F.disc);
  if (F.quad_d < 0) return hplus;
  auto units = fundamental_units(F);
  auto eps = F.element(units.fundamental_units[0]);
  if (F.element_norm(eps) == -1) return hplus;
  if (hplus % 2 != 0) throw domain_error("narrow class number parity contradicts unit norm");
  return hplus / 2;
}

void attach_class_number(FieldSpec& F) {
  if (!F.class_number) F.class_number = wide_class_number(F);
}

// ---------------------------------------------------------------------------
// Exact elements x + y sqrt(d) and Z-modules spanned by them
// ---------------------------------------------------------------------------

QElem qelem(Rat x, Rat y, i64 d) { return {x, y, d}; }

QElem qadd(const QElem& a, const QElem& b) {
  if (a.d != b.d) throw domain_error("mixed quadratic elements");
  return {a.x + b.x, a.y + b.y, a.d};
}

QElem qmul(const QElem& a, const QElem& b) {
  if (a.d != b.d) throw domain_error("mixed quadratic elements");
  return {a.x * b.x + Rat(a.d) * a.y * b.y, a.x * b.y + a.y * b.x, a.d};
}

QElem qconj(const QElem& a) { return {a.x, -a.y, a.d}; }

Rat qnorm(const QElem& a) { return a.x * a.x - Rat(a.d) * a.y * a.y; }

Rat qtrace_mixed(const QElem& a, const QElem& b) {
  // a conj(b) + conj(a) b = 2 (x_a x_b - d y_a y_b)
  return Rat(2) * (a.x * b.x - Rat(a.d) * a.y * b.y);
}

namespace {

i64 lcm_i64(i64 a, i64 b) { return a / gcd_i64(a, b) * b; }

// Z-module in Q(sqrt d) spanned by elements: canonical (1/den) * HNF form.
struct QModule {
  i64 den = 1;
  ZMat h;  // 2x2 HNF over the (1, sqrt d) coordinates, scaled by den
};

QModule module_span(const std::vector<QElem>& gens) {
  if (gens.empty()) throw domain_error("empty module");
  i64 den = 1;
  for (const auto& g : gens) {
    den = lcm_i64(den, g.x.den);
    den = lcm_i64(den, g.y.den);
  }
  ZMat rows;
  for (const auto& g : gens) {
    i64 x = mul_i64(g.x.num, den / g.x.den);
    i64 y = mul_i64(g.y.num, den / g.y.den);
    rows.push_back({x, y});
  }
  QModule m;
  m.h = hnf_lattice(rows, 2);
  m.den = den;
  // reduce the scale: divide den and the matrix by their common gcd
  i64 g = den;
  for (const auto& r : m.h)
    for (i64 v : r) g = gcd_i64(g, v);
  if (g > 1) {
    m.den /= g;
    for (auto& r : m.h)
      for (auto& v : r) v /= g;
  }
  return m;
}

bool module_equal(const QModule& a, const QModule& b) { return a.den == b.den && a.h == b.h; }

bool module_contains(const QModule& m, const QElem& e) {
  // coordinates of den * e must be integers lying in the scaled lattice
  Rat sx = e.x * Rat(m.den);
  Rat sy = e.y * Rat(m.den);
  if (!sx.is_integer() || !sy.is_integer()) return false;
  return lattice_contains(m.h, {sx.num, sy.num});
}

QModule order_module(const Order& o) {
  return module_span({qelem(Rat(1), Rat(0), o.d), o.omega_f});
}

std::vector<QElem> ideal_gens(const OrderIdeal& c) { return {c.g1, c.g2}; }

QModule ideal_module(const OrderIdeal& c) { return module_span(ideal_gens(c)); }

QModule module_product(const std::vector<QElem>& a, const std::vector<QElem>& b) {
  std::vector<QElem> prods;
  for (const auto& x : a)
    for (const auto& y : b) prods.push_back(qmul(x, y));
  return module_span(prods);
}

}  // namespace

Order make_order(i64 D) {
  if (((D % 4) + 4) % 4 > 1) throw domain_error("order discriminant must be 0 or 1 mod 4");
  i64 root;
  if (D >= 0 && is_perfect_square(D, &root)) throw domain_error("square discriminant");
  auto sd = square_decompose(D);
  Order o;
  o.D = D;
  o.d = sd.squarefree;
  i64 dm4 = ((o.d % 4) + 4) % 4;
  o.dK = dm4 == 1 ? o.d : 4 * o.d;
  i128 f2 = i128(D) / o.dK;
  i64 f;
  if (!is_perfect_square(checked_i64(f2, "conductor"), &f))
    throw domain_error("D / d_K is not a perfect square");
  o.f = f;
  // f * omega over (1, sqrt d)
  if (dm4 == 1)
    o.omega_f = qelem(Rat(f, 2), Rat(f, 2), o.d);
  else
    o.omega_f = qelem(Rat(0), Rat(f), o.d);
  return o;
}

int basis_signature(const OrderIdeal& c) {
  Rat det = c.g1.x * c.g2.y - c.g1.y * c.g2.x;
  if (det.is_zero()) throw domain_error("degenerate ideal basis");
  return det.num > 0 ? 1 : -1;
}

OrderIdeal with_signature(OrderIdeal c, int eps) {
  if (basis_signature(c) != eps) std::swap(c.g1, c.g2);
  if (basis_signature(c) != eps) throw domain_error("cannot reach requested signature");
  return c;
}

Rat order_ideal_norm(const OrderIdeal& c) {
  // N(c) = #(O / l c) / N(l O) for l = den * 2f, which always lands l*c in O.
  const Order& o = c.order;
  i64 den = lcm_i64(lcm_i64(c.g1.x.den, c.g1.y.den), lcm_i64(c.g2.x.den, c.g2.y.den));
  i64 l = mul_i64(den, 2 * o.f);
  // coordinates of l*g over the order basis (1, f*omega)
  auto order_coords = [&](const QElem& g) -> ZVec {
    Rat x = g.x * Rat(l), y = g.y * Rat(l);
    // over (1, f omega): f omega = fo.x + fo.y sqrt d
    Rat v = y / c.order.omega_f.y;
    Rat u = x - v * c.order.omega_f.x;
    if (!u.is_integer() || !v.is_integer())
      throw domain_error("scaled ideal does not land in the order");
    return {u.num, v.num};
  };
  ZMat rows{order_coords(c.g1), order_coords(c.g2)};
  i64 index = std::abs(det_zmat(rows));
  if (index == 0) throw domain_error("rank-deficient order ideal");
  Rat r;
  r.assign(i128(index), i128(l) * l);
  return r;
}

bool order_ideal_closed(const OrderIdeal& c) {
  auto m = ideal_module(c);
  for (const auto& g : ideal_gens(c)) {
    if (!module_contains(m, qmul(g, c.order.omega_f))) return false;
  }
  return true;
}

bool order_ideal_invertible(const OrderIdeal& c) {
  if (!order_ideal_closed(c)) return false;
  Rat nrm = order_ideal_norm(c);
  auto lhs = module_product(ideal_gens(c), {qconj(c.g1), qconj(c.g2)});
  auto rhs_gens = std::vector<QElem>{qelem(nrm, Rat(0), c.order.d),
                                     qmul(qelem(nrm, Rat(0), c.order.d), c.order.omega_f)};
  return module_equal(lhs, module_span(rhs_gens));
}

std::pair<OrderIdeal, int> form_to_ideal(const QuadForm& f) {
  require_reducible(f);
  Order o = make_order(f.disc());
  // tau = (-b - f sqrt(d_K)) / 2, with sqrt(d_K) = s * sqrt(d)
  i64 s = (o.dK == o.d) ? 1 : 2;
  QElem tau = qelem(Rat(-f.b, 2), Rat(-o.f * s, 2), o.d);
  // integrality: f d_K and b share parity, so tau lies in O (checked below)
  OrderIdeal c;
  c.order = o;
  c.g1 = qelem(Rat(f.a), Rat(0), o.d);
  c.g2 = tau;
  auto om = order_module(o);
  if (!module_contains(om, tau))
    throw domain_error("internal parity failure: tau is not in the order");
  if (!order_ideal_closed(c)) throw domain_error("internal failure: c is not an O-module");
  // c conj(c) = a O  (exact module identity)
  auto lhs = module_product(ideal_gens(c), {qconj(c.g1), qconj(c.g2)});
  auto rhs = module_span({qelem(Rat(f.a), Rat(0), o.d),
                          qmul(qelem(Rat(f.a), Rat(0), o.d), o.omega_f)});
  if (!module_equal(lhs, rhs)) throw domain_error("internal failure: c conj(c) != a O");
  return {c, f.a > 0 ? 1 : -1};
}

QuadForm ideal_to_form(const OrderIdeal& c_in, int eps) {
  if (!order_ideal_invertible(c_in)) throw domain_error("ideal is not invertible");
  OrderIdeal c = with_signature(c_in, eps);
  Rat nrm = order_ideal_norm(c);
  Rat denom = Rat(eps) * nrm;
  Rat a = qnorm(c.g1) / denom;
  Rat b = qtrace_mixed(c.g1, c.g2) / denom;
  Rat cc = qnorm(c.g2) / denom;
  if (!a.is_integer() || !b.is_integer() || !cc.is_integer())
    throw domain_error("norm form has non-integer coefficients");
  QuadForm f{a.num, b.num, cc.num};
  if (f.disc() != c.order.D) throw domain_error("norm form discriminant mismatch");
  auto inv = form_invariants(f);
  if (!inv.primitive) throw domain_error("norm form is not primitive");
  return f;
}

i64 NormForm::eval(i64 x, i64 y) const {
  QElem v = qadd(qmul(c.g1, qelem(Rat(x), Rat(0), c.g1.d)),
                 qmul(c.g2, qelem(Rat(y), Rat(0), c.g2.d)));
  Rat r = qnorm(v) / norm;
  if (!r.is_integer()) throw domain_error("norm form value is not an integer");
  return r.num;
}

NormForm norm_form(const Order& order, const OrderIdeal& c) {
  if (c.order.D != order.D) throw domain_error("ideal belongs to a different order");
  if (!order_ideal_invertible(c)) throw domain_error("ideal is not invertible");
  NormForm nf;
  nf.c = c;
  nf.norm = order_ideal_norm(c);
  return nf;
}

// ---------------------------------------------------------------------------
// Prime representations and constellations
// ---------------------------------------------------------------------------

namespace {

void check_sign_request(const QuadForm& f, int sign) {
  if (sign != 1 && sign != -1) throw domain_error("sign must be +1 or -1");
  auto inv = form_invariants(f);
  if (inv.degenerate) throw domain_error("degenerate form");
  if (!inv.primitive) throw domain_error("form is not primitive");
  if (sign == -1 && inv.definite_sign == 1)
    throw domain_error("positive definite forms take no negative prime values");
  if (sign == 1 && inv.definite_sign == -1)
    throw domain_error("negative definite forms take no positive prime values");
}

}  // namespace

std::vector<std::pair<i64, i64>> prime_rep_search_serial(const QuadForm& f, i64 M, int sign) {
  check_sign_request(f, sign);
  std::vector<std::pair<i64, i64>> out;
  for (i64 x = -M; x <= M; ++x)
    for (i64 y = -M; y <= M; ++y) {
      i64 v = f.eval(x, y);
      if (sign > 0 ? v <= 0 : v >= 0) continue;
      if (is_prime_u64(u64(v < 0 ? -v : v))) out.push_back({x, y});
    }
  return out;
}

std::vector<std::pair<i64, i64>> prime_rep_search(const QuadForm& f, i64 M, int sign,
                                                  int workers) {
  check_sign_request(f, sign);
#ifdef _OPENMP
  int nthreads = workers > 0 ? workers : omp_get_max_threads();
#else
  int nthreads = 1;
  (void)workers;
#endif
  std::vector<std::vector<std::pair<i64, i64>>> rows(size_t(2 * M + 1));
#pragma omp parallel for schedule(dynamic, 8) num_threads(nthreads)
  for (i64 x = -M; x <= M; ++x) {
    auto& row = rows[size_t(x + M)];
    for (i64 y = -M; y <= M; ++y) {
      i64 v = f.eval(x, y);
      if (sign > 0 ? v <= 0 : v >= 0) continue;
      if (is_prime_u64(u64(v < 0 ? -v : v))) row.push_back({x, y});
    }
  }
  std::vector<std::pair<i64, i64>> out;
  for (auto& r : rows)
    for (auto& p : r) out.push_back(p);
  return out;
}

std::vector<QFConstellation> quadform_constellation(const QuadForm& f, const Shape& S, i64 M,
                                                    i64 k_max, int sign, bool distinct_primes,
                                                    double theta, int workers) {
  if (S.dim != 2) throw domain_error("quadratic form shapes live in Z^2");
  if (theta <= 0.0 || theta >= 1.0) throw domain_error("theta must lie in (0,1)");
  auto reps = prime_rep_search(f, M, sign, workers);
  std::vector<ZVec> pts;
  pts.reserve(reps.size());
  for (auto& [x, y] : reps) pts.push_back({x, y});
  auto found = find_constellations_points(pts, S, k_max, false, workers);
  std::vector<QFConstellation> out;
  for (auto& c : found) {
    QFConstellation qc;
    qc.pattern = c;
    bool distinct = true;
    std::set<i64> seen;
    for (const auto& p : c.points) {
      i64 v = f.eval(p[0], p[1]);
      qc.values.push_back(v);
      if (!seen.insert(v).second) distinct = false;
    }
    if (distinct_primes && !distinct) continue;
    double pmin = 1e300, worst = 0.0;
    for (i64 v : qc.values) pmin = std::min(pmin, std::abs(double(v)));
    for (size_t i = 0; i < qc.values.size(); ++i)
      for (size_t j = 0; j < qc.values.size(); ++j) {
        if (i == j) continue;
        double ratio = std::abs(double(qc.values[i]) / double(qc.values[j]) - 1.0);
        worst = std::max(worst, ratio);
      }
    qc.closeness = worst * std::pow(pmin, (1.0 - theta) / 2.0);
    out.push_back(std::move(qc));
  }
  return out;
}

}  // namespace constell
