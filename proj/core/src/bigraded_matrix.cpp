#include "bipres/bigraded_matrix.hpp"

#include <string>

#include "bipres/errors.hpp"

namespace bipres {

void BigradedMatrix::validate() const {
  if (col_grades.size() != columns.size())
    throw ValidationError("column grade count does not match column count");
  if (row_grades && std::int64_t(row_grades->size()) != num_rows)
    throw ValidationError("row grade count does not match row count");
  for (std::size_t j = 1; j < col_grades.size(); ++j)
    if (colex_less(col_grades[j], col_grades[j - 1]))
      throw ValidationError("grades not colex-sorted (column " + std::to_string(j) + ")");
  for (std::size_t j = 0; j < columns.size(); ++j) {
    const SparseColumn& col = columns[j];
    if (!col.well_formed(field))
      throw ValidationError("malformed column " + std::to_string(j));
    for (const Entry& e : col.entries) {
      if (std::int64_t(e.row) >= num_rows)
        throw ValidationError("row index out of range in column " + std::to_string(j));
      if (row_grades && !leq((*row_grades)[e.row], col_grades[j]))
        throw ValidationError("entry (" + std::to_string(e.row) + "," + std::to_string(j) +
                              ") violates homogeneity");
    }
  }
}

}  // namespace bipres
