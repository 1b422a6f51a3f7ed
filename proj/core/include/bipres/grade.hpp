#pragma once

#include <cstdint>
#include <iosfwd>
#include <span>
#include <vector>

namespace bipres {

/// A point of Z^2: the bidegree of a generator, column, or row.
struct Grade {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend bool operator==(const Grade&, const Grade&) = default;
};

/// Componentwise partial order on Z^2.
inline bool leq(Grade a, Grade b) { return a.x <= b.x && a.y <= b.y; }

/// Strict colexicographic order: compare second coordinates first.
inline bool colex_less(Grade a, Grade b) {
  return a.y < b.y || (a.y == b.y && a.x < b.x);
}

/// Strict lexicographic order: compare first coordinates first.
inline bool lex_less(Grade a, Grade b) {
  return a.x < b.x || (a.x == b.x && a.y < b.y);
}

struct GradeLexLess {
  bool operator()(Grade a, Grade b) const { return lex_less(a, b); }
};

struct GradeColexLess {
  bool operator()(Grade a, Grade b) const { return colex_less(a, b); }
};

/// Closure of a grade set under mixing coordinates:
/// {(x, y) : some point of `points` has first coordinate x and some point has
/// second coordinate y}. Returned lex-sorted; the result is a product set and
/// contains `points`.
std::vector<Grade> grid_closure(std::span<const Grade> points);

std::ostream& operator<<(std::ostream& os, const Grade& g);

}  // namespace bipres
