#pragma once

#include <string>
#include <string_view>
#include <vector>

#include "bipres/presentation.hpp"

namespace bipres {

enum class OutputFormat { text, json };

/// Parses the line-oriented FI-Rep document format:
///
///   firep v1
///   p <prime>
///   sizes <a> <b> <c>
///   <c column lines for d2>
///   <b column lines for d1>
///
/// where a column line is `<gx> <gy> ; <row>:<coeff> <row>:<coeff> ...` with
/// strictly increasing rows and coefficients in [1, p). Validates colex order
/// of the column grades, index bounds, and the chain condition d1 * d2 = 0;
/// every error carries the offending line number.
FIRep parse_firep(std::string_view text);

/// Canonical serialization; parse_firep(serialize_firep(fr)) == fr.
std::string serialize_firep(const FIRep& fr);

std::string serialize_betti(const BettiTable& bt, OutputFormat format = OutputFormat::text);
std::string serialize_presentation(const Presentation& p, OutputFormat format = OutputFormat::text);
std::string serialize_hilbert(const HilbertFunction& hf, OutputFormat format = OutputFormat::text);

/// Point cloud with `dim` coordinates per point, flattened row-major.
struct PointCloud {
  std::int64_t dim = 0;
  std::vector<double> coords;

  std::int64_t size() const { return dim == 0 ? 0 : std::int64_t(coords.size()) / dim; }
  double coord(std::int64_t point, std::int64_t k) const { return coords[point * dim + k]; }
};

/// Symmetric pairwise distances, stored dense.
struct DistanceMatrix {
  std::int64_t n = 0;
  std::vector<double> d;

  double operator()(std::int64_t i, std::int64_t j) const { return d[i * n + j]; }
  double& entry(std::int64_t i, std::int64_t j) { return d[i * n + j]; }
};

/// Whitespace- or comma-separated rows of coordinates, one point per line.
/// Lines starting with '#' and blank lines are skipped.
PointCloud parse_point_cloud(std::string_view text);
std::string serialize_point_cloud(const PointCloud& points);

/// Square whitespace- or comma-separated matrix; the first data row fixes n.
DistanceMatrix parse_distance_matrix(std::string_view text);

std::string read_file(const std::string& path);
void write_file(const std::string& path, std::string_view contents);

FIRep read_firep_file(const std::string& path);
PointCloud read_point_cloud_file(const std::string& path);
DistanceMatrix read_distance_matrix_file(const std::string& path);

}  // namespace bipres
