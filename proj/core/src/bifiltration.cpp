#include "bipres/bifiltration.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <limits>
#include <numeric>
#include <random>
#include <tuple>

#include "bipres/errors.hpp"

namespace bipres {

namespace {

constexpr double kTwoPi = 6.283185307179586476925286766559;

// Uniform double in (0, 1] from the top 53 bits; the +1 keeps log() finite.
double uniform_unit(std::mt19937_64& rng) {
  return double((rng() >> 11) + 1) * 0x1.0p-53;
}

std::vector<std::int64_t> rank_descending(const std::vector<std::int64_t>& values,
                                          std::vector<std::int64_t>& by_rank) {
  by_rank = values;
  std::sort(by_rank.begin(), by_rank.end(), std::greater<>());
  by_rank.erase(std::unique(by_rank.begin(), by_rank.end()), by_rank.end());
  std::vector<std::int64_t> ranks(values.size());
  for (std::size_t i = 0; i < values.size(); ++i)
    ranks[i] = std::lower_bound(by_rank.begin(), by_rank.end(), values[i],
                                std::greater<>()) -
               by_rank.begin();
  return ranks;
}

std::int64_t diameter_rank(const std::vector<double>& table, double value) {
  return std::lower_bound(table.begin(), table.end(), value) - table.begin();
}

}  // namespace

std::vector<std::int64_t> density_counts(const DistanceMatrix& dist, double radius,
                                         bool include_self) {
  if (!(radius > 0)) throw ValidationError("density radius must be positive");
  std::vector<std::int64_t> f(std::size_t(dist.n), 0);
  for (std::int64_t i = 0; i < dist.n; ++i) {
    std::int64_t count = include_self ? 1 : 0;
    for (std::int64_t j = 0; j < dist.n; ++j)
      if (j != i && dist(i, j) <= radius) ++count;
    f[std::size_t(i)] = count;
  }
  return f;
}

double percentile_radius(const DistanceMatrix& dist, double q) {
  if (!(q > 0.0 && q < 1.0)) throw ValidationError("percentile must lie in (0, 1)");
  std::vector<double> values;
  values.reserve(std::size_t(dist.n) * std::size_t(dist.n) / 2);
  for (std::int64_t i = 0; i < dist.n; ++i)
    for (std::int64_t j = i + 1; j < dist.n; ++j)
      if (dist(i, j) != 0.0) values.push_back(dist(i, j));
  if (values.empty()) throw ValidationError("all pairwise distances are zero");
  std::size_t k = std::size_t(std::ceil(q * double(values.size())));
  if (k == 0) k = 1;
  std::nth_element(values.begin(), values.begin() + (k - 1), values.end());
  return values[k - 1];
}

DensityRipsComplex build_density_rips(const DistanceMatrix& dist,
                                      const DensityRipsOptions& options) {
  if (dist.n <= 0) throw ValidationError("empty point set");
  DensityRipsComplex complex;
  complex.n = dist.n;
  complex.density = density_counts(dist, options.density_radius, options.include_self);
  complex.density_rank = rank_descending(complex.density, complex.density_value_by_rank);

  complex.vertex_grades.resize(std::size_t(dist.n));
  for (std::int64_t v = 0; v < dist.n; ++v)
    complex.vertex_grades[std::size_t(v)] = {complex.density_rank[std::size_t(v)], 0};

  const double cutoff = options.max_diameter.value_or(
      std::numeric_limits<double>::infinity());

  std::vector<double> diameters;
  diameters.push_back(0.0);  // vertices
  if (options.max_dim >= 1) {
    for (std::int32_t i = 0; i < dist.n; ++i)
      for (std::int32_t j = i + 1; j < dist.n; ++j)
        if (dist(i, j) <= cutoff) {
          complex.edges.push_back({i, j, Grade{}});
          diameters.push_back(dist(i, j));
        }
  }
  if (options.max_dim >= 2) {
    for (std::int32_t i = 0; i < dist.n; ++i)
      for (std::int32_t j = i + 1; j < dist.n; ++j) {
        if (dist(i, j) > cutoff) continue;
        for (std::int32_t k = j + 1; k < dist.n; ++k) {
          double diam = std::max({dist(i, j), dist(i, k), dist(j, k)});
          if (diam <= cutoff) complex.triangles.push_back({i, j, k, Grade{}});
        }
      }
  }
  std::sort(diameters.begin(), diameters.end());
  diameters.erase(std::unique(diameters.begin(), diameters.end()), diameters.end());
  complex.diameter_value_by_rank = std::move(diameters);

  auto vertex_rank = [&](std::int32_t v) { return complex.density_rank[std::size_t(v)]; };
  for (auto& e : complex.edges)
    e.grade = {std::max(vertex_rank(e.u), vertex_rank(e.v)),
               diameter_rank(complex.diameter_value_by_rank, dist(e.u, e.v))};
  for (auto& t : complex.triangles) {
    double diam = std::max({dist(t.u, t.v), dist(t.u, t.w), dist(t.v, t.w)});
    t.grade = {std::max({vertex_rank(t.u), vertex_rank(t.v), vertex_rank(t.w)}),
               diameter_rank(complex.diameter_value_by_rank, diam)};
  }

  std::sort(complex.edges.begin(), complex.edges.end(), [](const auto& a, const auto& b) {
    if (colex_less(a.grade, b.grade)) return true;
    if (colex_less(b.grade, a.grade)) return false;
    return std::pair(a.u, a.v) < std::pair(b.u, b.v);
  });
  std::sort(complex.triangles.begin(), complex.triangles.end(),
            [](const auto& a, const auto& b) {
              if (colex_less(a.grade, b.grade)) return true;
              if (colex_less(b.grade, a.grade)) return false;
              return std::tuple(a.u, a.v, a.w) < std::tuple(b.u, b.v, b.w);
            });
  return complex;
}

FIRep build_firep(const DensityRipsComplex& complex, int homology_degree,
                  const PrimeField& field) {
  if (homology_degree != 0 && homology_degree != 1)
    throw ValidationError("homology degree must be 0 or 1");
  const std::int64_t n = complex.n;
  const coeff_t one = 1, minus_one = field.neg(1);

  FIRep fr;
  fr.d1.field = field;
  fr.d2.field = field;

  if (homology_degree == 0) {
    // d2 = edge boundary into the vertex module, d1 = zero map out of it.
    std::vector<std::int64_t> order(static_cast<std::size_t>(n));
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](std::int64_t a, std::int64_t b) {
      const Grade &ga = complex.vertex_grades[std::size_t(a)],
                  &gb = complex.vertex_grades[std::size_t(b)];
      if (colex_less(ga, gb)) return true;
      if (colex_less(gb, ga)) return false;
      return a < b;
    });
    std::vector<row_index_t> position(static_cast<std::size_t>(n));
    fr.d1.num_rows = 0;
    fr.d1.columns.resize(std::size_t(n));
    fr.d1.col_grades.resize(std::size_t(n));
    for (std::int64_t i = 0; i < n; ++i) {
      position[std::size_t(order[std::size_t(i)])] = row_index_t(i);
      fr.d1.col_grades[std::size_t(i)] = complex.vertex_grades[std::size_t(order[std::size_t(i)])];
    }

    fr.d2.num_rows = n;
    fr.d2.row_grades = fr.d1.col_grades;
    fr.d2.columns.reserve(complex.edges.size());
    fr.d2.col_grades.reserve(complex.edges.size());
    for (const auto& e : complex.edges) {
      Entry lo{position[std::size_t(e.u)], minus_one};
      Entry hi{position[std::size_t(e.v)], one};
      if (lo.row > hi.row) std::swap(lo, hi);
      fr.d2.columns.push_back(SparseColumn{{lo, hi}});
      fr.d2.col_grades.push_back(e.grade);
    }
    return fr;
  }

  // Degree 1: d1 = edge boundary (rows are vertices in input order),
  // d2 = triangle boundary (rows are edges in d1 column order).
  fr.d1.num_rows = n;
  fr.d1.columns.reserve(complex.edges.size());
  fr.d1.col_grades.reserve(complex.edges.size());
  std::vector<row_index_t> edge_position(std::size_t(n) * std::size_t(n), 0);
  for (std::size_t idx = 0; idx < complex.edges.size(); ++idx) {
    const auto& e = complex.edges[idx];
    fr.d1.columns.push_back(
        SparseColumn{{{row_index_t(e.u), minus_one}, {row_index_t(e.v), one}}});
    fr.d1.col_grades.push_back(e.grade);
    edge_position[std::size_t(e.u) * std::size_t(n) + std::size_t(e.v)] = row_index_t(idx);
  }

  fr.d2.num_rows = std::int64_t(complex.edges.size());
  fr.d2.row_grades = fr.d1.col_grades;
  fr.d2.columns.reserve(complex.triangles.size());
  fr.d2.col_grades.reserve(complex.triangles.size());
  auto edge_row = [&](std::int32_t a, std::int32_t b) {
    return edge_position[std::size_t(a) * std::size_t(n) + std::size_t(b)];
  };
  for (const auto& t : complex.triangles) {
    // boundary of [u, v, w] = [v, w] - [u, w] + [u, v]
    Entry entries[3] = {{edge_row(t.v, t.w), one},
                        {edge_row(t.u, t.w), minus_one},
                        {edge_row(t.u, t.v), one}};
    std::sort(entries, entries + 3,
              [](const Entry& a, const Entry& b) { return a.row < b.row; });
    fr.d2.columns.push_back(SparseColumn{{entries[0], entries[1], entries[2]}});
    fr.d2.col_grades.push_back(t.grade);
  }
  return fr;
}

PointCloud annulus_sample(std::int64_t n, std::uint64_t seed) {
  if (n < 10) throw ValidationError("annulus sample needs at least 10 points");
  std::mt19937_64 rng(seed);
  const std::int64_t n_annulus = 9 * n / 10;

  PointCloud cloud;
  cloud.dim = 2;
  cloud.coords.reserve(std::size_t(2 * n));
  for (std::int64_t i = 0; i < n_annulus; ++i) {
    // Box-Muller: radius ~ N(2, 0.3), angle uniform on the circle.
    double u1 = uniform_unit(rng), u2 = uniform_unit(rng);
    double gauss = std::sqrt(-2.0 * std::log(u1)) * std::cos(kTwoPi * u2);
    double radius = 2.0 + 0.3 * gauss;
    double angle = kTwoPi * uniform_unit(rng);
    cloud.coords.push_back(radius * std::cos(angle));
    cloud.coords.push_back(radius * std::sin(angle));
  }
  for (std::int64_t i = n_annulus; i < n; ++i) {
    cloud.coords.push_back(-6.0 + 12.0 * uniform_unit(rng));
    cloud.coords.push_back(-6.0 + 12.0 * uniform_unit(rng));
  }
  return cloud;
}

DistanceMatrix euclidean_distances(const PointCloud& points) {
  DistanceMatrix dist;
  dist.n = points.size();
  dist.d.assign(std::size_t(dist.n) * std::size_t(dist.n), 0.0);
  for (std::int64_t i = 0; i < dist.n; ++i)
    for (std::int64_t j = i + 1; j < dist.n; ++j) {
      double s = 0.0;
      for (std::int64_t k = 0; k < points.dim; ++k) {
        double diff = points.coord(i, k) - points.coord(j, k);
        s += diff * diff;
      }
      double d = std::sqrt(s);
      dist.entry(i, j) = d;
      dist.entry(j, i) = d;
    }
  return dist;
}

std::int64_t rips_component_count(const DistanceMatrix& dist,
                                  std::optional<double> max_diameter) {
  std::vector<std::int64_t> parent(std::size_t(dist.n));
  std::iota(parent.begin(), parent.end(), 0);
  std::function<std::int64_t(std::int64_t)> find = [&](std::int64_t v) {
    while (parent[std::size_t(v)] != v) {
      parent[std::size_t(v)] = parent[std::size_t(parent[std::size_t(v)])];
      v = parent[std::size_t(v)];
    }
    return v;
  };
  const double cutoff = max_diameter.value_or(std::numeric_limits<double>::infinity());
  for (std::int64_t i = 0; i < dist.n; ++i)
    for (std::int64_t j = i + 1; j < dist.n; ++j)
      if (dist(i, j) <= cutoff) parent[std::size_t(find(i))] = find(j);
  std::int64_t components = 0;
  for (std::int64_t i = 0; i < dist.n; ++i)
    if (find(i) == i) ++components;
  return components;
}

}  // namespace bipres
