#pragma once

#include <cstdint>
#include <utility>
#include <vector>

#include "bipres/bigraded_matrix.hpp"
#include "bipres/graded_reduction.hpp"
#include "bipres/reduction_hooks.hpp"

namespace bipres {

/// Internal column container used while reducing. `sorted_list` keeps each
/// column as a sorted entry vector; `lazy_heap` batches additions in a binary
/// heap and consolidates on pivot queries. Both produce identical results;
/// sorted_list is the default.
enum class ColumnBackend { sorted_list, lazy_heap };

struct SweepOptions {
  ColumnBackend backend = ColumnBackend::sorted_list;
  AdditionObserver* observer = nullptr;
  ReductionStats* stats = nullptr;
};

/// A homogeneous element of a free module: a coefficient vector over an
/// ordered basis together with the grade at which it lives.
struct GradedVector {
  SparseColumn v;
  Grade grade;

  friend bool operator==(const GradedVector&, const GradedVector&) = default;
};

/// Basis of the kernel of a morphism, in order of discovery (lex order of the
/// grid points where columns died). Coefficients are over the domain basis.
/// Distinct elements have distinct pivots.
struct KernelBasis {
  std::int64_t ambient_size = 0;  // number of columns of the input matrix
  std::vector<GradedVector> elements;
};

/// Minimal homogeneous generating set of the image of a morphism.
/// Coefficients are over the codomain basis; grades appear in lex grid order.
struct GeneratorSet {
  std::vector<GradedVector> elements;
};

/// Grade-wise element counts of a kernel basis: (grade, count) with count > 0,
/// grades strictly increasing in lex order.
struct Beta0Profile {
  std::vector<std::pair<Grade, std::int64_t>> entries;

  friend bool operator==(const Beta0Profile&, const Beta0Profile&) = default;
};

/// rank / nullity of a reduced matrix restricted to grades <= z, for every z
/// in the grid spanned by the column grades. Stored densely over the
/// compressed axes; `at` floors arbitrary grades onto the grid.
struct RankNullityTable {
  std::vector<std::int64_t> xs, ys;       // sorted distinct coordinates
  std::vector<std::int64_t> rank, nullity;  // size xs.size()*ys.size(), x-major

  std::int64_t cell(std::size_t xi, std::size_t yi) const { return xi * ys.size() + yi; }
  /// (rank, nullity) at z; (0, 0) below the grid.
  std::pair<std::int64_t, std::int64_t> at(Grade z) const;
  std::vector<Grade> grid_points() const;
};

enum class BiRedMode { kernel, generators };

struct PivotClaim {
  std::int64_t row;
  std::int64_t column;

  friend bool operator==(const PivotClaim&, const PivotClaim&) = default;
};

struct BiRedSubEvents {
  /// Columns newly zeroed during this call. A column that is already zero is
  /// reported exactly once, at the grid point equal to its own grade.
  std::vector<std::int64_t> zeroed_columns;
  /// Pivot-array assignments pivs[row] <- column performed during this call.
  std::vector<PivotClaim> pivot_claims;
  std::uint64_t column_additions = 0;
};

/// One step of the bigraded reduction: brings r restricted to grades <= z
/// into reduced form, assuming r restricted to grades <= (z.x, z.y - 1) is
/// reduced and `pivs` reflects the state at the lex-predecessor grid point.
/// Only columns with grade (x, z.y), x <= z.x are touched. The pivot-array
/// protocol prefers the leftmost column: a slot holding no column or a column
/// to the right of j is claimed by j; a slot holding a column to the left of
/// j supplies the addition source. In kernel mode every addition is mirrored
/// on `aux`. Precondition violations are not detected.
BiRedSubEvents reduce_submatrix_at(BigradedMatrix& r, Grade z, PivotArray& pivs,
                                   BiRedMode mode, BigradedMatrix* aux = nullptr,
                                   AdditionObserver* observer = nullptr);

/// What a grid sweep over a bigraded matrix should collect.
struct SweepRequest {
  bool beta0 = false;
  bool kernel = false;
  bool min_gens = false;
  bool grobner = false;
  bool rank_nullity = false;
};

struct SweepResult {
  Beta0Profile beta0;
  KernelBasis kernel;
  GeneratorSet min_gens;
  std::vector<GradedVector> grobner;
  RankNullityTable rank_nullity;
  ReductionStats stats;
};

/// Sweeps the grid spanned by the column grades of `m` in lex order, reducing
/// the submatrix at each grid point, and collects the requested outputs in a
/// single pass.
SweepResult run_bigraded_sweep(BigradedMatrix m, const SweepRequest& request,
                               const SweepOptions& options = {});

/// Grade-wise count of kernel basis elements of the morphism given by `m`.
Beta0Profile kernel_beta0(BigradedMatrix m, const SweepOptions& options = {});

/// Basis of the kernel of the morphism given by `m`; also a Grobner basis
/// with respect to the ordered column basis.
KernelBasis kernel_basis(BigradedMatrix m, const SweepOptions& options = {});

/// Minimal homogeneous generating set of the image of the morphism.
GeneratorSet minimal_generators(BigradedMatrix m, const SweepOptions& options = {});

/// Minimal Grobner basis of the image with respect to the ordered row basis.
/// Requires row grades; throws ValidationError("row grades required") else.
std::vector<GradedVector> image_grobner_basis(BigradedMatrix m,
                                              const SweepOptions& options = {});

/// Pointwise rank and nullity of the morphism over the grid of its column
/// grades: rank + nullity at z equals the number of columns with grade <= z.
RankNullityTable pointwise_rank_nullity(BigradedMatrix m,
                                        const SweepOptions& options = {});

}  // namespace bipres
