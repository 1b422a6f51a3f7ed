#pragma once

#include <cstdint>

#include "bipres/grade.hpp"

namespace bipres {

/// Counters collected during a reduction.
struct ReductionStats {
  std::uint64_t column_additions = 0;
};

/// Test hook: receives every column addition `target += scalar * source` in
/// the order it is performed. Reductions accept a null observer.
struct AdditionObserver {
  virtual ~AdditionObserver() = default;
  virtual void on_column_addition(std::int64_t /*source*/, std::int64_t /*target*/) {}
  virtual void on_column_addition_at(std::int64_t source, std::int64_t target,
                                     Grade /*at*/) {
    on_column_addition(source, target);
  }
};

}  // namespace bipres
