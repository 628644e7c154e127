#include "constell/constellation.hpp"

#include <algorithm>
#include <fstream>
#include <set>
#include <sstream>

#ifdef _OPENMP
#include <omp.h>
#endif

namespace constell {

namespace {

struct ZVecHash {
  size_t operator()(const ZVec& v) const {
    size_t h = 1469598103934665603ull;
    for (i64 x : v) {
      h ^= size_t(x) + 0x9e3779b97f4a7c15ull;
      h *= 1099511628211ull;
    }
    return h;
  }
};

using PointSet = std::unordered_set<ZVec, ZVecHash>;

}  // namespace

Shape make_shape(std::vector<ZVec> points) {
  if (points.empty()) throw domain_error("shape must be non-empty");
  Shape s;
  s.dim = int(points[0].size());
  for (const auto& p : points)
    if (int(p.size()) != s.dim) throw domain_error("shape points of mixed dimension");
  std::sort(points.begin(), points.end());
  points.erase(std::unique(points.begin(), points.end()), points.end());
  s.points = std::move(points);
  // standard: 0 in S, S = -S, and S spans Z^dim (lattice index 1)
  ZVec zero(s.dim, 0);
  bool has_zero = std::binary_search(s.points.begin(), s.points.end(), zero);
  bool symmetric = true;
  for (const auto& p : s.points) {
    ZVec neg(s.dim);
    for (int i = 0; i < s.dim; ++i) neg[i] = -p[i];
    if (!std::binary_search(s.points.begin(), s.points.end(), neg)) {
      symmetric = false;
      break;
    }
  }
  bool spans = lattice_index(s.points, s.dim) == 1;
  s.standard = has_zero && symmetric && spans;
  return s;
}

Shape standardize(const Shape& s) {
  if (s.standard) return s;
  std::vector<ZVec> pts = s.points;
  // adjoin basis vectors not already in the span
  for (int i = 0; i < s.dim; ++i) {
    if (lattice_index(pts, s.dim) == 1) break;
    ZVec ei(s.dim, 0);
    ei[i] = 1;
    if (!span_contains(pts, s.dim, ei)) pts.push_back(ei);
  }
  if (lattice_index(pts, s.dim) != 1)
    throw domain_error("standardization failed to reach a full span");
  // close under negation and adjoin zero
  std::vector<ZVec> closed = pts;
  for (const auto& p : pts) {
    ZVec neg(s.dim);
    for (int i = 0; i < s.dim; ++i) neg[i] = -p[i];
    closed.push_back(neg);
  }
  closed.push_back(ZVec(s.dim, 0));
  return make_shape(std::move(closed));
}

Shape parse_shape_text(const std::string& text) {
  std::vector<ZVec> pts;
  std::istringstream is(text);
  std::string line;
  int lineno = 0;
  while (std::getline(is, line)) {
    ++lineno;
    auto hash = line.find('#');
    if (hash != std::string::npos) line = line.substr(0, hash);
    std::istringstream ls(line);
    ZVec v;
    std::string tok;
    while (ls >> tok) {
      try {
        size_t used = 0;
        i64 val = std::stoll(tok, &used);
        if (used != tok.size()) throw std::invalid_argument(tok);
        v.push_back(val);
      } catch (const std::exception&) {
        throw domain_error("shape parse error at line " + std::to_string(lineno) + ": '" +
                           tok + "'");
      }
    }
    if (!v.empty()) pts.push_back(std::move(v));
  }
  if (pts.empty()) throw domain_error("shape file contains no points");
  return make_shape(std::move(pts));
}

Shape load_shape_file(const std::string& path) {
  std::ifstream in(path);
  if (!in) throw domain_error("cannot open shape file '" + path + "'");
  std::ostringstream ss;
  ss << in.rdbuf();
  return parse_shape_text(ss.str());
}

bool are_associates(const AlgInt& a, const AlgInt& b) {
  if (a.is_zero() || b.is_zero()) throw domain_error("associate test on zero");
  if (a.field != b.field) throw domain_error("associate test across fields");
  if (a.field->abs_norm(a) != a.field->abs_norm(b)) return false;
  return principal_ideal(a) == principal_ideal(b);
}

namespace {

std::vector<Constellation> search_points(const std::vector<ZVec>& A, const Shape& S,
                                         i64 k_max, bool allow_negative_k, int workers,
                                         bool serial) {
  if (k_max < 1) throw domain_error("k_max must be at least 1");
  PointSet set(A.begin(), A.end());
  std::vector<ZVec> bases(A.begin(), A.end());
  std::sort(bases.begin(), bases.end());
  std::vector<i64> ks;
  for (i64 k = 1; k <= k_max; ++k) ks.push_back(k);
  if (allow_negative_k)
    for (i64 k = -1; k >= -k_max; --k) ks.push_back(k);
  const int dim = S.dim;
  // the base of a pattern satisfies base = point - k*s for the first shape
  // point, so iterating over A as anchor is exhaustive
  const ZVec& s0 = S.points.front();
  auto scan_k = [&](i64 k) {
    std::vector<Constellation> local;
    for (const auto& anchor : bases) {
      ZVec base(dim);
      for (int i = 0; i < dim; ++i) base[i] = checked_i64(i128(anchor[i]) - i128(k) * s0[i],
                                                          "constellation base");
      bool ok = true;
      Constellation c;
      c.base = base;
      c.k = k;
      for (const auto& s : S.points) {
        ZVec pt(dim);
        for (int i = 0; i < dim; ++i)
          pt[i] = checked_i64(i128(base[i]) + i128(k) * s[i], "constellation point");
        if (!set.count(pt)) {
          ok = false;
          break;
        }
        c.points.push_back(std::move(pt));
      }
      if (ok) local.push_back(std::move(c));
    }
    return local;
  };
  std::vector<std::vector<Constellation>> parts(ks.size());
  if (serial) {
    for (size_t i = 0; i < ks.size(); ++i) parts[i] = scan_k(ks[i]);
  } else {
#ifdef _OPENMP
    int nthreads = workers > 0 ? workers : omp_get_max_threads();
#else
    int nthreads = 1;
    (void)workers;
#endif
#pragma omp parallel for schedule(dynamic) num_threads(nthreads)
    for (size_t i = 0; i < ks.size(); ++i) parts[i] = scan_k(ks[i]);
  }
  std::vector<Constellation> out;
  for (auto& p : parts)
    for (auto& c : p) out.push_back(std::move(c));
  return out;
}

}  // namespace

std::vector<Constellation> find_constellations_points(const std::vector<ZVec>& A,
                                                      const Shape& S, i64 k_max,
                                                      bool allow_negative_k, int workers) {
  return search_points(A, S, k_max, allow_negative_k, workers, false);
}

std::vector<Constellation> find_constellations_points_serial(const std::vector<ZVec>& A,
                                                             const Shape& S, i64 k_max,
                                                             bool allow_negative_k) {
  return search_points(A, S, k_max, allow_negative_k, 0, true);
}

std::vector<Constellation> find_constellations(const FieldSpec& F,
                                               const std::vector<AlgInt>& A, const Shape& S,
                                               i64 k_max, bool require_no_associates,
                                               int workers, bool allow_negative_k) {
  if (S.dim != F.n) throw domain_error("shape dimension does not match the field degree");
  std::vector<ZVec> pts;
  pts.reserve(A.size());
  for (const auto& a : A) pts.push_back(a.coords);
  auto found = find_constellations_points(pts, S, k_max, allow_negative_k, workers);
  if (!require_no_associates) return found;
  std::vector<Constellation> out;
  for (auto& c : found) {
    bool clean = true;
    std::vector<Ideal> ideals;
    for (const auto& p : c.points) {
      auto e = F.element(p);
      if (e.is_zero()) {
        clean = false;  // zero realized point cannot be classified; drop
        break;
      }
      ideals.push_back(principal_ideal(e));
    }
    for (size_t i = 0; clean && i < ideals.size(); ++i)
      for (size_t j = i + 1; clean && j < ideals.size(); ++j)
        if (ideals[i] == ideals[j]) clean = false;
    if (clean) out.push_back(std::move(c));
  }
  return out;
}

ConstellationCounts count_constellations(const FieldSpec& F, const std::vector<AlgInt>& A,
                                         const Shape& S, i64 k_max) {
  auto all = find_constellations(F, A, S, k_max, false);
  // distinct realized sets, keyed on the sorted point list
  std::set<std::vector<ZVec>> seen, seen_sharp;
  for (auto& c : all) {
    auto key = c.points;
    std::sort(key.begin(), key.end());
    key.erase(std::unique(key.begin(), key.end()), key.end());
    seen.insert(key);
    bool clean = true;
    std::vector<Ideal> ideals;
    for (const auto& p : c.points) {
      auto e = F.element(p);
      if (e.is_zero()) {
        clean = false;
        break;
      }
      ideals.push_back(principal_ideal(e));
    }
    for (size_t i = 0; clean && i < ideals.size(); ++i)
      for (size_t j = i + 1; clean && j < ideals.size(); ++j)
        if (ideals[i] == ideals[j]) clean = false;
    if (clean) seen_sharp.insert(key);
  }
  ConstellationCounts counts;
  counts.n_s = i64(seen.size());
  counts.n_s_sharp = i64(seen_sharp.size());
  return counts;
}

}  // namespace constell
