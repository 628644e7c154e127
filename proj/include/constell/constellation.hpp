#ifndef CONSTELL_CONSTELLATION_HPP
#define CONSTELL_CONSTELLATION_HPP

#include <string>
#include <unordered_set>
#include <vector>

#include "constell/field.hpp"
#include "constell/ideal.hpp"

namespace constell {

/// A finite shape S in a rank-n module: integer coordinate vectors plus the
/// standard-shape flag (0 in S, S = -S, S spans the module).
struct Shape {
  std::vector<ZVec> points;
  int dim = 0;
  bool standard = false;

  int r() const { return int(points.size()) - 1; }
};

Shape make_shape(std::vector<ZVec> points);

/// The inflation recipe: adjoin basis vectors until the span is full, close
/// under negation, adjoin 0.
Shape standardize(const Shape& s);

/// Shape file format: one integer vector per line, '#' starts a comment.
Shape parse_shape_text(const std::string& text);
Shape load_shape_file(const std::string& path);

/// A found pattern alpha + k*S.
struct Constellation {
  ZVec base;
  i64 k = 1;
  std::vector<ZVec> points;  // realized points, shape order
};

/// True iff the two elements generate the same principal ideal.
bool are_associates(const AlgInt& a, const AlgInt& b);

/// Brute-force search over an arbitrary finite point set: all (alpha, k)
/// with 1 <= k <= k_max and alpha + k*S inside A, ordered by k then base.
/// allow_negative_k additionally admits k in [-k_max, -1] (off by default;
/// the convention here takes k positive).
std::vector<Constellation> find_constellations_points(const std::vector<ZVec>& A,
                                                      const Shape& S, i64 k_max,
                                                      bool allow_negative_k = false,
                                                      int workers = 0);
std::vector<Constellation> find_constellations_points_serial(const std::vector<ZVec>& A,
                                                             const Shape& S, i64 k_max,
                                                             bool allow_negative_k = false);

/// Search over elements of O_K, optionally discarding patterns whose
/// realized points contain an associate pair.
std::vector<Constellation> find_constellations(const FieldSpec& F,
                                               const std::vector<AlgInt>& A, const Shape& S,
                                               i64 k_max, bool require_no_associates,
                                               int workers = 0,
                                               bool allow_negative_k = false);

struct ConstellationCounts {
  i64 n_s = 0;        // distinct realized point sets
  i64 n_s_sharp = 0;  // ... without associate pairs
};

ConstellationCounts count_constellations(const FieldSpec& F, const std::vector<AlgInt>& A,
                                         const Shape& S, i64 k_max);

}  // namespace constell

#endif  // CONSTELL_CONSTELLATION_HPP
