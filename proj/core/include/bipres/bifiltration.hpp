#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bipres/firep_io.hpp"
#include "bipres/presentation.hpp"

namespace bipres {

/// f(x) = number of points within distance `radius` of x. The point itself
/// counts when include_self is set (the default).
std::vector<std::int64_t> density_counts(const DistanceMatrix& dist, double radius,
                                         bool include_self = true);

/// Nearest-rank percentile of the nonzero pairwise distances: the
/// ceil(q * N)-th smallest of the N nonzero distances, 0 < q < 1.
/// Throws ValidationError when every pairwise distance is zero.
double percentile_radius(const DistanceMatrix& dist, double q);

struct DensityRipsOptions {
  double density_radius = 1.0;
  bool include_self = true;
  std::optional<double> max_diameter;  // drop simplices with larger diameter
  int max_dim = 2;                     // highest simplex dimension enumerated
};

/// 1-critical bifiltration of the full clique complex (up to dimension 2) by
/// (density rank, diameter rank). Density ranks order distinct density values
/// descending, so the densest points enter first; diameter ranks order the
/// distinct simplex diameters ascending. Every simplex grade dominates the
/// grades of its faces.
struct DensityRipsComplex {
  struct Edge {
    std::int32_t u, v;  // u < v
    Grade grade;
  };
  struct Triangle {
    std::int32_t u, v, w;  // u < v < w
    Grade grade;
  };

  std::int64_t n = 0;
  std::vector<std::int64_t> density;        // f per vertex
  std::vector<std::int64_t> density_rank;   // per vertex, densest = 0
  std::vector<std::int64_t> density_value_by_rank;  // descending distinct values
  std::vector<double> diameter_value_by_rank;       // ascending distinct values
  std::vector<Grade> vertex_grades;                 // (density_rank, 0)
  std::vector<Edge> edges;                          // colex by grade, ties by (u, v)
  std::vector<Triangle> triangles;                  // colex by grade, ties by (u, v, w)
};

DensityRipsComplex build_density_rips(const DistanceMatrix& dist,
                                      const DensityRipsOptions& options = {});

/// FI-Rep of the degree-0 or degree-1 homology module of the bifiltration.
/// Degree 0: d2 is the edge boundary (two entries per column) and d1 the zero
/// map out of the vertex module (zero rows). Degree 1: d2 is the triangle
/// boundary (three entries per column) and d1 the edge boundary.
FIRep build_firep(const DensityRipsComplex& complex, int homology_degree,
                  const PrimeField& field);

/// The synthetic noisy-annulus cloud: floor(0.9 n) points with radius drawn
/// from a Gaussian with mean 2 and standard deviation 0.3 (Box-Muller from
/// mt19937_64 uniforms) and uniform angle, plus the remaining points uniform
/// on [-6, 6]^2. Deterministic for a fixed seed.
PointCloud annulus_sample(std::int64_t n, std::uint64_t seed);

DistanceMatrix euclidean_distances(const PointCloud& points);

/// Connected components of the graph on all point pairs with distance not
/// exceeding `max_diameter` (every pair when absent). Union-find.
std::int64_t rips_component_count(const DistanceMatrix& dist,
                                  std::optional<double> max_diameter = {});

}  // namespace bipres
