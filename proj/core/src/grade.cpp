#include "bipres/grade.hpp"

#include <algorithm>
#include <ostream>

namespace bipres {

std::vector<Grade> grid_closure(std::span<const Grade> points) {
  std::vector<std::int64_t> xs, ys;
  xs.reserve(points.size());
  ys.reserve(points.size());
  for (const Grade& g : points) {
    xs.push_back(g.x);
    ys.push_back(g.y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  std::vector<Grade> out;
  out.reserve(xs.size() * ys.size());
  for (std::int64_t x : xs)
    for (std::int64_t y : ys) out.push_back({x, y});
  return out;
}

std::ostream& operator<<(std::ostream& os, const Grade& g) {
  return os << '(' << g.x << ',' << g.y << ')';
}

}  // namespace bipres
