#pragma once

#include <cstdint>
#include <optional>
#include <vector>

#include "bipres/grade.hpp"
#include "bipres/sparse_column.hpp"

namespace bipres {

/// Column-sparse matrix over Z/p with a grade per column and optionally a
/// grade per row. Column grades are colexicographically nondecreasing; ties
/// keep their input order. When row grades are present, every entry (i, j)
/// satisfies row_grades[i] <= col_grades[j] in the partial order.
struct BigradedMatrix {
  std::int64_t num_rows = 0;
  std::vector<SparseColumn> columns;
  std::vector<Grade> col_grades;
  std::optional<std::vector<Grade>> row_grades;
  PrimeField field;

  std::int64_t num_cols() const { return std::int64_t(columns.size()); }
  bool has_row_grades() const { return row_grades.has_value(); }

  /// Throws ValidationError when any structural invariant fails.
  void validate() const;

  friend bool operator==(const BigradedMatrix&, const BigradedMatrix&) = default;
};

}  // namespace bipres
