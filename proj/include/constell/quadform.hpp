#ifndef CONSTELL_QUADFORM_HPP
#define CONSTELL_QUADFORM_HPP

#include <functional>
#include <string>
#include <vector>

#include "constell/constellation.hpp"
#include "constell/field.hpp"

namespace constell {

/// Binary quadratic form a x^2 + b xy + c y^2 with integer coefficients.
struct QuadForm {
  i64 a = 0, b = 0, c = 0;

  i64 disc() const { return checked_i64(i128(b) * b - 4 * i128(a) * c, "discriminant"); }
  i64 eval(i64 x, i64 y) const {
    return checked_i64(i128(a) * x * x + i128(b) * x * y + i128(c) * y * y, "form value");
  }
  std::string str() const {
    return std::to_string(a) + "," + std::to_string(b) + "," + std::to_string(c);
  }
  friend bool operator==(const QuadForm& f, const QuadForm& g) {
    return f.a == g.a && f.b == g.b && f.c == g.c;
  }
  friend bool operator<(const QuadForm& f, const QuadForm& g) {
    if (f.a != g.a) return f.a < g.a;
    if (f.b != g.b) return f.b < g.b;
    return f.c < g.c;
  }
};

QuadForm parse_form(const std::string& text);  // "a,b,c"

struct FormInvariants {
  i64 D = 0;
  bool primitive = false;
  bool degenerate = false;  // D a perfect square
  int definite_sign = 0;    // +1 positive definite, -1 negative definite, 0 indefinite
};
FormInvariants form_invariants(const QuadForm& f);

/// Canonical representative of the proper equivalence class: the unique
/// reduced form for definite D < 0 (sign-normalized through -F for negative
/// definite forms), the lexicographically least form on the reduction cycle
/// for indefinite D > 0.
QuadForm reduce_form(const QuadForm& f);
bool forms_equivalent(const QuadForm& f, const QuadForm& g);

/// All canonical reduced representatives of primitive classes of
/// discriminant D (positive definite representatives when D < 0).
std::vector<QuadForm> reduced_class_representatives(i64 D);

/// Form class number #Q(D) restricted to positive definite classes for
/// D < 0; equals the narrow class number h+ for D > 0.
i64 class_number(i64 D);

/// Wide class number h of the quadratic field of discriminant d_K, derived
/// from h+ and the norm of the fundamental unit.
i64 wide_class_number(const FieldSpec& F);

/// Fill F.class_number for quadratic fields (and Q).
void attach_class_number(FieldSpec& F);

// --- orders and their invertible ideals --------------------------------------

/// An element x + y sqrt(d) of K = Q(sqrt d) with exact rational parts.
struct QElem {
  Rat x, y;
  i64 d = 0;

  friend bool operator==(const QElem& a, const QElem& b) {
    return a.d == b.d && a.x == b.x && a.y == b.y;
  }
};
QElem qelem(Rat x, Rat y, i64 d);
QElem qadd(const QElem& a, const QElem& b);
QElem qmul(const QElem& a, const QElem& b);
QElem qconj(const QElem& a);
Rat qnorm(const QElem& a);   // a * conj(a)
Rat qtrace_mixed(const QElem& a, const QElem& b);  // a*conj(b) + conj(a)*b

/// The order Z + f*omega*Z of discriminant D = f^2 d_K.
struct Order {
  i64 D = 0;
  i64 d = 0;    // square-free part
  i64 dK = 0;   // field discriminant
  i64 f = 0;    // conductor
  QElem omega_f;  // f * omega over (1, sqrt d)
};
Order make_order(i64 D);

/// Invertible fractional ideal of an order, as a Z-basis (g1, g2).
struct OrderIdeal {
  Order order;
  QElem g1, g2;
};

/// Sign of det[(g1, g2) over (1, sqrt d)]: the basis orientation.
int basis_signature(const OrderIdeal& c);
/// Swap the basis if needed so the signature becomes eps.
OrderIdeal with_signature(OrderIdeal c, int eps);

/// Exact ideal norm N(c) = N(l*c) / N(l*O) for any scalar l clearing the
/// denominators (well-defined for invertible ideals).
Rat order_ideal_norm(const OrderIdeal& c);

/// c * conj(c) == N(c) * O, the invertibility criterion in quadratic orders.
bool order_ideal_invertible(const OrderIdeal& c);

/// Is the Z-module closed under multiplication by the order?
bool order_ideal_closed(const OrderIdeal& c);

/// Theorem A, forms -> ideals: c = aZ + tau Z with tau = (-b - f sqrt(dK))/2
/// and eps = sgn(a).
std::pair<OrderIdeal, int> form_to_ideal(const QuadForm& f);

/// Theorem A, ideals -> forms: F(x,y) = N(g1 x + g2 y) / (eps N(c)), taken
/// over a basis of signature eps.
QuadForm ideal_to_form(const OrderIdeal& c, int eps);

/// The norm form attached to (O, c, basis): exact integer values
/// N(g1 x + g2 y)/N(c).  Coincides with ideal_to_form up to the signature.
struct NormForm {
  OrderIdeal c;
  Rat norm;

  i64 eval(i64 x, i64 y) const;
};
NormForm norm_form(const Order& order, const OrderIdeal& c);

// --- prime representations ----------------------------------------------------

/// All (x, y) in the box of radius M with F(x,y) = sign * (rational prime),
/// row-major order.  sign = -1 requires an indefinite or negative definite
/// form.
std::vector<std::pair<i64, i64>> prime_rep_search(const QuadForm& f, i64 M, int sign,
                                                  int workers = 0);
std::vector<std::pair<i64, i64>> prime_rep_search_serial(const QuadForm& f, i64 M, int sign);

struct QFConstellation {
  Constellation pattern;
  std::vector<i64> values;   // F at the realized points
  double closeness = 0.0;    // max |p_i/p_j - 1| * (min |p|)^((1-theta)/2)
};

/// S-constellations inside the prime-representing set, optionally with
/// pairwise distinct prime values; the closeness statistic is reported for
/// the configured theta.
std::vector<QFConstellation> quadform_constellation(const QuadForm& f, const Shape& S, i64 M,
                                                    i64 k_max, int sign, bool distinct_primes,
                                                    double theta = 0.5, int workers = 0);

}  // namespace constell

#endif  // CONSTELL_QUADFORM_HPP
