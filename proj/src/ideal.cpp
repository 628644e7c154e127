#include "constell/ideal.hpp"

#include <algorithm>
#include <sstream>

#include <mutex>

#include "constell/fpoly.hpp"

namespace constell {

std::string Ideal::str() const {
  std::ostringstream os;
  os << "hnf:[";
  for (size_t i = 0; i < hnf.size(); ++i) {
    if (i) os << ";";
    for (size_t j = 0; j < hnf[i].size(); ++j) {
      if (j) os << ",";
      os << hnf[i][j];
    }
  }
  os << "]";
  return os.str();
}

int FactoredIdeal::mobius() const {
  for (const auto& [p, e] : factors)
    if (e > 1) return 0;
  return factors.size() % 2 == 0 ? 1 : -1;
}

bool FactoredIdeal::square_free() const {
  for (const auto& [p, e] : factors)
    if (e > 1) return false;
  return true;
}

namespace {

Ideal finish_ideal(const FieldSpec& F, ZMat hnf) {
  Ideal I;
  I.F = &F;
  i128 det = 1;
  for (int i = 0; i < F.n; ++i) det *= hnf[i][i];
  I.norm = checked_i64(det, "ideal norm");
  I.hnf = std::move(hnf);
  return I;
}

// Closure of a lattice under multiplication by every basis element.
void check_closure(const FieldSpec& F, const ZMat& hnf) {
  for (int i = 0; i < F.n; ++i) {
    AlgInt v = F.element(hnf[i]);
    for (int j = 0; j < F.n; ++j) {
      ZVec ej(F.n, 0);
      ej[j] = 1;
      AlgInt prod = F.mul(v, F.element(ej));
      if (!lattice_contains(hnf, prod.coords))
        throw domain_error("lattice is not an ideal (not closed under O_K)");
    }
  }
}

}  // namespace

Ideal make_ideal_from_lattice(const FieldSpec& F, const ZMat& gens) {
  ZMat hnf = hnf_lattice(gens, F.n);
  check_closure(F, hnf);
  return finish_ideal(F, std::move(hnf));
}

Ideal unit_ideal(const FieldSpec& F) {
  ZMat id(F.n, ZVec(F.n, 0));
  for (int i = 0; i < F.n; ++i) id[i][i] = 1;
  return finish_ideal(F, std::move(id));
}

Ideal principal_ideal(const AlgInt& alpha) {
  if (alpha.is_zero()) throw domain_error("principal ideal of zero");
  const FieldSpec& F = *alpha.field;
  ZMat gens;
  for (int j = 0; j < F.n; ++j) {
    ZVec ej(F.n, 0);
    ej[j] = 1;
    gens.push_back(F.mul(alpha, F.element(ej)).coords);
  }
  // alpha * O_K is closed by construction; skip the closure check.
  return finish_ideal(F, hnf_lattice(gens, F.n));
}

Ideal ideal_from_generators(const FieldSpec& F, const std::vector<AlgInt>& gens) {
  ZMat rows;
  for (const auto& g : gens)
    for (int j = 0; j < F.n; ++j) {
      ZVec ej(F.n, 0);
      ej[j] = 1;
      rows.push_back(F.mul(g, F.element(ej)).coords);
    }
  return finish_ideal(F, hnf_lattice(rows, F.n));
}

Ideal ideal_mul(const Ideal& a, const Ideal& b) {
  if (a.F != b.F) throw domain_error("ideal product across different fields");
  const FieldSpec& F = *a.F;
  ZMat rows;
  rows.reserve(size_t(F.n) * F.n);
  for (int i = 0; i < F.n; ++i)
    for (int j = 0; j < F.n; ++j)
      rows.push_back(F.mul(F.element(a.hnf[i]), F.element(b.hnf[j])).coords);
  return finish_ideal(F, hnf_lattice(rows, F.n));
}

Ideal ideal_pow(const Ideal& a, int e) {
  if (e < 0) throw domain_error("negative ideal power");
  Ideal r = unit_ideal(*a.F);
  for (int i = 0; i < e; ++i) r = ideal_mul(r, a);
  return r;
}

Ideal ideal_intersect(const Ideal& a, const Ideal& b) {
  if (a.F != b.F) throw domain_error("ideal intersection across different fields");
  return finish_ideal(*a.F, lattice_intersect(a.hnf, b.hnf, a.F->n));
}

Ideal ideal_add(const Ideal& a, const Ideal& b) {
  if (a.F != b.F) throw domain_error("ideal sum across different fields");
  ZMat rows = a.hnf;
  for (const auto& r : b.hnf) rows.push_back(r);
  return finish_ideal(*a.F, hnf_lattice(rows, a.F->n));
}

bool ideal_divides(const Ideal& b, const Ideal& a) {
  if (a.F != b.F) throw domain_error("ideal divisibility across different fields");
  if (a.norm % b.norm != 0) return false;
  for (const auto& row : a.hnf)
    if (!lattice_contains(b.hnf, row)) return false;
  return true;
}

bool ideals_coprime(const Ideal& a, const Ideal& b) { return ideal_add(a, b).is_unit_ideal(); }

Ideal ideal_scale(const Ideal& a, const AlgInt& alpha) {
  if (alpha.is_zero()) throw domain_error("scaling ideal by zero");
  const FieldSpec& F = *a.F;
  ZMat rows;
  for (int i = 0; i < F.n; ++i) rows.push_back(F.mul(alpha, F.element(a.hnf[i])).coords);
  return finish_ideal(F, hnf_lattice(rows, F.n));
}

// ---------------------------------------------------------------------------
// Prime splitting (Kummer-Dedekind on the generator's minimal polynomial)
// ---------------------------------------------------------------------------

SplittingCache& SplittingCache::instance() {
  static SplittingCache cache;
  return cache;
}

std::vector<std::pair<Ideal, int>> SplittingCache::get(
    const FieldSpec& F, i64 p,
    const std::function<std::vector<std::pair<Ideal, int>>()>& compute) {
  Key key{F.disc, F.claimed_index, F.theta_minpoly, p};
  auto rebind = [&F](std::vector<std::pair<Ideal, int>> v) {
    for (auto& [P, e] : v) {
      (void)e;
      P.F = &F;  // cached entries may outlive the field that created them
    }
    return v;
  };
  {
    std::shared_lock lock(mu_);
    auto it = memo_.find(key);
    if (it != memo_.end()) return rebind(it->second);
  }
  auto value = compute();
  std::unique_lock lock(mu_);
  return rebind(memo_.emplace(std::move(key), std::move(value)).first->second);
}

void SplittingCache::clear() {
  std::unique_lock lock(mu_);
  memo_.clear();
}

std::vector<std::pair<Ideal, int>> factor_rational_prime(const FieldSpec& F, i64 p) {
  if (p < 2 || !is_prime_u64(u64(p))) throw domain_error("p is not a rational prime");
  if (F.claimed_index % p == 0)
    throw domain_error("p divides the declared index; Kummer-Dedekind does not apply");
  return SplittingCache::instance().get(F, p, [&]() {
    std::vector<std::pair<Ideal, int>> out;
    if (F.n == 1) {
      ZMat h{{p}};
      out.push_back({finish_ideal(F, std::move(h)), 1});
      return out;
    }
    // minimal polynomial of the generator theta = omega_n (coords e_{n-1})
    FpPoly f(F.theta_minpoly.size());
    for (size_t i = 0; i < f.size(); ++i) {
      i64 c = F.theta_minpoly[i] % p;
      if (c < 0) c += p;
      f[i] = u64(c);
    }
    auto factors = fp_factor(f, u64(p));
    for (const auto& [g, e] : factors) {
      // prime ideal (p, g(theta)); theta^i is basis vector i for the
      // monogenic bases (including the quadratic ones), and the single
      // possible theta^n term (inert case) reduces through the minpoly.
      ZVec gtheta(F.n, 0);
      for (size_t i = 0; i < g.size(); ++i) {
        i64 c = i64(g[i]);
        if (i < size_t(F.n)) {
          gtheta[i] = add_i64(gtheta[i], c);
        } else {
          for (int j = 0; j < F.n; ++j)
            gtheta[j] = checked_i64(i128(gtheta[j]) - i128(c) * F.theta_minpoly[j],
                                    "splitting generator");
        }
      }
      std::vector<AlgInt> gens = {F.integer(p), F.element(gtheta)};
      Ideal P = ideal_from_generators(F, gens);
      out.push_back({P, e});
    }
    std::sort(out.begin(), out.end(),
              [](const auto& x, const auto& y) { return x.first < y.first; });
    return out;
  });
}

int ideal_valuation(const Ideal& a, const Ideal& p) {
  int v = 0;
  Ideal pk = p;
  while (ideal_divides(pk, a)) {
    ++v;
    pk = ideal_mul(pk, p);
  }
  return v;
}

FactoredIdeal factor_ideal(const Ideal& a) {
  FactoredIdeal out;
  if (a.is_unit_ideal()) return out;
  auto norm_factors = factor_u64(u64(a.norm));
  for (const auto& [pu, e_norm] : norm_factors) {
    (void)e_norm;
    i64 p = i64(pu);
    auto above = factor_rational_prime(*a.F, p);
    for (const auto& [P, e_ram] : above) {
      (void)e_ram;
      int v = ideal_valuation(a, P);
      if (v > 0) out.factors.push_back({P, v});
    }
  }
  std::sort(out.factors.begin(), out.factors.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  // sanity: recombination must reproduce the norm
  i128 nn = 1;
  for (const auto& [P, e] : out.factors)
    for (int i = 0; i < e; ++i) nn *= P.norm;
  if (nn != a.norm) throw domain_error("factorization lost norm (index divisor?)");
  return out;
}

bool is_prime_ideal(const Ideal& a) {
  if (a.is_unit_ideal()) return false;
  auto fac = factor_ideal(a);
  return fac.factors.size() == 1 && fac.factors[0].second == 1;
}

Ideal recombine(const FieldSpec& F, const FactoredIdeal& fac) {
  Ideal r = unit_ideal(F);
  for (const auto& [P, e] : fac.factors) r = ideal_mul(r, ideal_pow(P, e));
  return r;
}

int mobius_K(const Ideal& a) {
  if (a.is_unit_ideal()) return 1;
  return factor_ideal(a).mobius();
}

i64 totient_K(const Ideal& a) {
  // N(a) * prod over p | a of (1 - 1/N(p)) = prod N(p)^(e-1) * (N(p)-1)
  auto fac = factor_ideal(a);
  i128 result = 1;
  for (const auto& [P, e] : fac.factors) {
    for (int i = 0; i < e - 1; ++i) result *= P.norm;
    result *= (P.norm - 1);
  }
  return checked_i64(result, "totient");
}

Ideal p_part(const Ideal& a, i64 p) {
  Ideal r = unit_ideal(*a.F);
  if (a.norm % p != 0) return r;
  auto above = factor_rational_prime(*a.F, p);
  for (const auto& [P, e_ram] : above) {
    (void)e_ram;
    int v = ideal_valuation(a, P);
    if (v > 0) r = ideal_mul(r, ideal_pow(P, v));
  }
  return r;
}

std::vector<std::pair<Ideal, int>> divisors_up_to(const Ideal& a, double R,
                                                  bool square_free_only) {
  if (R < 1) throw domain_error("divisor bound below 1");
  auto fac = factor_ideal(a);
  std::vector<std::pair<Ideal, int>> out;
  // Depth-first product over prime powers, pruned at norm > R.
  out.push_back({unit_ideal(*a.F), 1});
  std::function<void(size_t, const Ideal&, int)> rec = [&](size_t idx, const Ideal& sofar,
                                                           int mu) {
    if (idx == fac.factors.size()) return;
    rec(idx + 1, sofar, mu);
    const auto& [P, e] = fac.factors[idx];
    Ideal acc = sofar;
    int emax = square_free_only ? 1 : e;
    int mu_acc = mu;
    for (int k = 1; k <= emax; ++k) {
      i128 nn = i128(acc.norm) * P.norm;
      if (nn > i128(INT64_MAX) || double(nn) > R) return;
      acc = ideal_mul(acc, P);
      mu_acc = (k == 1) ? -mu_acc : 0;
      out.push_back({acc, mu_acc});
      rec(idx + 1, acc, mu_acc);
    }
  };
  rec(0, unit_ideal(*a.F), 1);
  std::sort(out.begin(), out.end(),
            [](const auto& x, const auto& y) { return x.first < y.first; });
  return out;
}

std::vector<Ideal> ideals_of_norm_up_to(const FieldSpec& F, i64 L) {
  // Multiply out prime ideals with norms <= L over all rational p <= L.
  std::vector<Ideal> out{unit_ideal(F)};
  for (u64 pu : sieve_primes(u64(L))) {
    i64 p = i64(pu);
    std::vector<std::pair<Ideal, int>> above;
    try {
      above = factor_rational_prime(F, p);
    } catch (const domain_error&) {
      throw;  // index divisors make the enumeration unsound; surface it
    }
    std::vector<Ideal> next;
    for (const auto& base : out) {
      next.push_back(base);
      // extend by products of powers of the primes above p
      std::function<void(size_t, Ideal)> ext = [&](size_t i, Ideal acc) {
        if (i == above.size()) {
          if (acc.norm > base.norm) next.push_back(acc);
          return;
        }
        ext(i + 1, acc);
        Ideal cur = acc;
        while (true) {
          i128 nn = i128(cur.norm) * above[i].first.norm;
          if (nn > L) break;
          cur = ideal_mul(cur, above[i].first);
          ext(i + 1, cur);
        }
      };
      ext(0, base);
    }
    out = std::move(next);
  }
  std::sort(out.begin(), out.end());
  return out;
}

Ideal parse_ideal(const FieldSpec& F, const std::string& text) {
  if (text.rfind("gen:", 0) == 0) {
    std::string body = text.substr(4);
    if (!body.empty() && body.front() == '(') body = body.substr(1, body.size() - 2);
    ZVec coords;
    std::istringstream is(body);
    std::string tok;
    while (std::getline(is, tok, ',')) coords.push_back(std::stoll(tok));
    if (int(coords.size()) != F.n) throw domain_error("generator has wrong coordinate count");
    return principal_ideal(F.element(coords));
  }
  if (text.rfind("hnf:", 0) == 0) {
    std::string body = text.substr(4);
    if (body.empty() || body.front() != '[' || body.back() != ']')
      throw domain_error("hnf literal needs [..;..] brackets");
    body = body.substr(1, body.size() - 2);
    ZMat rows;
    std::istringstream is(body);
    std::string rowtok;
    while (std::getline(is, rowtok, ';')) {
      ZVec row;
      std::istringstream rs(rowtok);
      std::string tok;
      while (std::getline(rs, tok, ',')) row.push_back(std::stoll(tok));
      rows.push_back(row);
    }
    if (int(rows.size()) != F.n) throw domain_error("hnf literal has wrong row count");
    // Literal convention is row-per-basis-vector over omega; accept either
    // triangular orientation by re-normalizing through hnf_lattice.
    return make_ideal_from_lattice(F, rows);
  }
  throw domain_error("ideal literal must start with 'gen:' or 'hnf:'");
}

}  // namespace constell
