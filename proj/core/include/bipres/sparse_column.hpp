#pragma once

#include <compare>
#include <cstdint>
#include <vector>

#include "bipres/prime_field.hpp"

namespace bipres {

using row_index_t = std::uint32_t;

struct Entry {
  row_index_t row;
  coeff_t coeff;

  friend auto operator<=>(const Entry&, const Entry&) = default;
};

/// The nonzero entries of one matrix column, sorted by strictly increasing
/// row index. Zero coefficients are never stored, so the pivot (the largest
/// row carrying a nonzero entry) is the last entry.
struct SparseColumn {
  std::vector<Entry> entries;

  SparseColumn() = default;
  explicit SparseColumn(std::vector<Entry> e) : entries(std::move(e)) {}

  bool empty() const { return entries.empty(); }

  /// Largest row index with a nonzero entry, or -1 for the zero column.
  std::int64_t pivot() const {
    return entries.empty() ? -1 : std::int64_t(entries.back().row);
  }

  coeff_t pivot_coeff() const { return entries.empty() ? coeff_t(0) : entries.back().coeff; }

  /// Coefficient at `row`, 0 when absent. Binary search.
  coeff_t at(row_index_t row) const;

  /// Entries sorted strictly increasing, all coefficients in [1, p).
  bool well_formed(const PrimeField& field) const;

  friend bool operator==(const SparseColumn&, const SparseColumn&) = default;
};

/// target + scalar * source with zero entries dropped; inputs are unchanged.
SparseColumn add_multiple(const SparseColumn& target, const SparseColumn& source,
                          coeff_t scalar, const PrimeField& field);

/// In-place variant of add_multiple; `scratch` is reused as the merge buffer.
void add_multiple_inplace(SparseColumn& target, const SparseColumn& source,
                          coeff_t scalar, const PrimeField& field,
                          std::vector<Entry>& scratch);

}  // namespace bipres
