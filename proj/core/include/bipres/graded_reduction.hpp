#pragma once

#include <cstdint>
#include <vector>

#include "bipres/reduction_hooks.hpp"
#include "bipres/sparse_column.hpp"

namespace bipres {

/// Column-sparse matrix over Z/p whose columns are labeled by integers in
/// nondecreasing order: a morphism of free 1-parameter persistence modules.
struct GradedMatrix {
  std::int64_t num_rows = 0;
  std::vector<SparseColumn> columns;
  std::vector<std::int64_t> col_grades;
  PrimeField field;

  std::int64_t num_cols() const { return std::int64_t(columns.size()); }
  void validate() const;

  friend bool operator==(const GradedMatrix&, const GradedMatrix&) = default;
};

/// slots[i] = index of the column currently claiming pivot row i, or -1.
/// Rows are indexed from 0.
class PivotArray {
 public:
  PivotArray() = default;
  explicit PivotArray(std::int64_t num_rows)
      : slots_(static_cast<std::size_t>(num_rows), -1) {}

  std::int64_t size() const { return std::int64_t(slots_.size()); }
  std::int64_t get(std::int64_t row) const { return slots_[std::size_t(row)]; }
  void set(std::int64_t row, std::int64_t col) { slots_[std::size_t(row)] = col; }

 private:
  std::vector<std::int64_t> slots_;
};

/// Distinct nonzero columns have pairwise-distinct pivots.
bool is_reduced(const GradedMatrix& m);

/// Left-to-right column reduction: returns a reduced matrix obtained from `d`
/// by adding earlier columns onto later ones. Column grades are preserved.
/// The leftmost column achieving each pivot keeps it.
GradedMatrix graded_reduce(GradedMatrix d, ReductionStats* stats = nullptr,
                           AdditionObserver* observer = nullptr);

struct Kernel1dElement {
  SparseColumn v;          // coefficients over the domain basis
  std::int64_t grade = 0;  // grade at which the element enters the kernel

  friend bool operator==(const Kernel1dElement&, const Kernel1dElement&) = default;
};

/// Basis of the kernel of a morphism of free 1-parameter persistence modules.
/// Mirrors every column addition on an auxiliary identity matrix and records
/// the auxiliary column whenever a column of `d` reduces to zero.
std::vector<Kernel1dElement> kernel_basis_1d(const GradedMatrix& d,
                                             ReductionStats* stats = nullptr);

}  // namespace bipres
