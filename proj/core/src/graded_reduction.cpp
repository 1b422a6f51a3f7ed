#include "bipres/graded_reduction.hpp"

#include <functional>
#include <string>

#include "bipres/errors.hpp"

namespace bipres {

void GradedMatrix::validate() const {
  if (col_grades.size() != columns.size())
    throw ValidationError("column grade count does not match column count");
  for (std::size_t j = 1; j < col_grades.size(); ++j)
    if (col_grades[j] < col_grades[j - 1])
      throw ValidationError("grades not sorted (column " + std::to_string(j) + ")");
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (!columns[j].well_formed(field))
      throw ValidationError("malformed column " + std::to_string(j));
    for (const Entry& e : columns[j].entries)
      if (std::int64_t(e.row) >= num_rows)
        throw ValidationError("row index out of range in column " + std::to_string(j));
  }
}

bool is_reduced(const GradedMatrix& m) {
  std::vector<char> seen(std::size_t(m.num_rows), 0);
  for (const SparseColumn& col : m.columns) {
    std::int64_t p = col.pivot();
    if (p < 0) continue;
    if (seen[std::size_t(p)]) return false;
    seen[std::size_t(p)] = 1;
  }
  return true;
}

namespace {

// Shared core of graded_reduce and kernel_basis_1d: left-to-right column
// additions driven by a pivot array. The scalar is always 1 over Z/2.
void reduce_columns(GradedMatrix& r, GradedMatrix* aux, PivotArray& pivs,
                    ReductionStats* stats, AdditionObserver* observer,
                    const std::function<void(std::int64_t)>& on_zeroed) {
  const PrimeField& f = r.field;
  const bool char_two = f.p() == 2;
  std::vector<Entry> scratch, aux_scratch;
  for (std::int64_t j = 0; j < r.num_cols(); ++j) {
    SparseColumn& col = r.columns[std::size_t(j)];
    while (!col.empty()) {
      std::int64_t p = col.pivot();
      std::int64_t k = pivs.get(p);
      if (k < 0) {
        pivs.set(p, j);
        break;
      }
      coeff_t scalar =
          char_two ? coeff_t(1)
                   : f.neg(f.mul(col.pivot_coeff(),
                                 f.inv(r.columns[std::size_t(k)].pivot_coeff())));
      add_multiple_inplace(col, r.columns[std::size_t(k)], scalar, f, scratch);
      if (aux)
        add_multiple_inplace(aux->columns[std::size_t(j)], aux->columns[std::size_t(k)],
                             scalar, f, aux_scratch);
      if (stats) ++stats->column_additions;
      if (observer) observer->on_column_addition(k, j);
    }
    if (col.empty() && on_zeroed) on_zeroed(j);
  }
}

}  // namespace

GradedMatrix graded_reduce(GradedMatrix d, ReductionStats* stats,
                           AdditionObserver* observer) {
  PivotArray pivs(d.num_rows);
  reduce_columns(d, nullptr, pivs, stats, observer, nullptr);
  return d;
}

std::vector<Kernel1dElement> kernel_basis_1d(const GradedMatrix& d,
                                             ReductionStats* stats) {
  GradedMatrix r = d;
  GradedMatrix aux;
  aux.num_rows = d.num_cols();
  aux.field = d.field;
  aux.col_grades = d.col_grades;
  aux.columns.resize(std::size_t(d.num_cols()));
  for (std::int64_t j = 0; j < d.num_cols(); ++j)
    aux.columns[std::size_t(j)].entries = {{row_index_t(j), coeff_t(1)}};

  std::vector<Kernel1dElement> basis;
  PivotArray pivs(r.num_rows);
  reduce_columns(r, &aux, pivs, stats, nullptr, [&](std::int64_t j) {
    basis.push_back({std::move(aux.columns[std::size_t(j)]), d.col_grades[std::size_t(j)]});
  });
  return basis;
}

}  // namespace bipres
