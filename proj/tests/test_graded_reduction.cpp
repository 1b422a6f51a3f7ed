#include <doctest.h>

#include <random>
#include <set>

#include "bipres/graded_reduction.hpp"
#include "bipres/oracle.hpp"
#include "support/test_support.hpp"

using namespace bipres;

namespace {

GradedMatrix make_graded(std::int64_t rows, std::vector<SparseColumn> cols,
                         std::vector<std::int64_t> grades, std::uint32_t p = 2) {
  GradedMatrix m;
  m.num_rows = rows;
  m.columns = std::move(cols);
  m.col_grades = std::move(grades);
  m.field = PrimeField(p);
  return m;
}

dense::Matrix to_dense_1d(const GradedMatrix& m) {
  dense::Matrix out(m.num_rows, m.num_cols());
  for (std::int64_t j = 0; j < m.num_cols(); ++j)
    for (const Entry& e : m.columns[std::size_t(j)].entries) out.at(e.row, j) = e.coeff;
  return out;
}

GradedMatrix random_graded(std::mt19937_64& rng, std::int64_t max_rows,
                           std::int64_t max_cols, std::uint32_t p) {
  std::int64_t rows = test::uniform_int(rng, 0, max_rows);
  std::int64_t cols = test::uniform_int(rng, 0, max_cols);
  std::vector<std::int64_t> grades;
  for (std::int64_t j = 0; j < cols; ++j) grades.push_back(test::uniform_int(rng, 0, 5));
  std::sort(grades.begin(), grades.end());
  std::vector<SparseColumn> columns(static_cast<std::size_t>(cols));
  for (auto& col : columns)
    for (std::int64_t r = 0; r < rows; ++r)
      if (test::chance(rng, 0.5))
        col.entries.push_back({row_index_t(r), coeff_t(test::uniform_int(rng, 1, p - 1))});
  return make_graded(rows, std::move(columns), std::move(grades), p);
}

}  // namespace

TEST_CASE("graded_reduce on the all-ones 2x2 matrix over Z/2") {
  GradedMatrix d = make_graded(2, {SparseColumn{{{0, 1}, {1, 1}}}, SparseColumn{{{0, 1}, {1, 1}}}},
                               {0, 0});
  GradedMatrix r = graded_reduce(d);
  CHECK(r.columns[0] == SparseColumn{{{0, 1}, {1, 1}}});
  CHECK(r.columns[1].empty());
  CHECK(r.col_grades == d.col_grades);
  CHECK(is_reduced(r));
}

TEST_CASE("graded_reduce leaves the identity unchanged") {
  GradedMatrix d = make_graded(3,
                               {SparseColumn{{{0, 1}}}, SparseColumn{{{1, 1}}},
                                SparseColumn{{{2, 1}}}},
                               {0, 1, 2});
  ReductionStats stats;
  GradedMatrix r = graded_reduce(d, &stats);
  CHECK(r == d);
  CHECK(stats.column_additions == 0);
}

TEST_CASE("graded_reduce preserves rank and reaches reduced form") {
  std::mt19937_64 rng(21);
  for (int trial = 0; trial < 100; ++trial) {
    GradedMatrix d = random_graded(rng, 6, 6, 5);
    std::int64_t reference_rank = dense::rank(to_dense_1d(d), d.field);
    GradedMatrix r = graded_reduce(d);
    CHECK(is_reduced(r));
    std::int64_t nonzero = 0;
    for (const SparseColumn& col : r.columns)
      if (!col.empty()) ++nonzero;
    CHECK(nonzero == reference_rank);
  }
}

TEST_CASE("graded_reduce only adds earlier columns onto later ones") {
  struct Trace : AdditionObserver {
    bool ok = true;
    void on_column_addition(std::int64_t source, std::int64_t target) override {
      ok = ok && source < target;
    }
  } trace;
  std::mt19937_64 rng(22);
  for (int trial = 0; trial < 50; ++trial)
    (void)graded_reduce(random_graded(rng, 6, 8, 3), nullptr, &trace);
  CHECK(trace.ok);
}

TEST_CASE("pointwise rank and nullity read from the reduced matrix match dense") {
  std::mt19937_64 rng(23);
  for (int trial = 0; trial < 60; ++trial) {
    GradedMatrix d = random_graded(rng, 5, 7, 5);
    GradedMatrix r = graded_reduce(d);
    for (std::int64_t z = -1; z <= 6; ++z) {
      std::vector<std::int64_t> selected;
      std::int64_t rank = 0, nullity = 0;
      for (std::int64_t j = 0; j < d.num_cols(); ++j) {
        if (d.col_grades[std::size_t(j)] > z) continue;
        selected.push_back(j);
        if (r.columns[std::size_t(j)].empty())
          ++nullity;
        else
          ++rank;
      }
      dense::Matrix sub(d.num_rows, std::int64_t(selected.size()));
      for (std::size_t c = 0; c < selected.size(); ++c)
        for (const Entry& e : d.columns[std::size_t(selected[c])].entries)
          sub.at(e.row, std::int64_t(c)) = e.coeff;
      std::int64_t dense_rank = dense::rank(sub, d.field);
      CHECK(rank == dense_rank);
      CHECK(nullity == std::int64_t(selected.size()) - dense_rank);
    }
  }
}

TEST_CASE("kernel_basis_1d on the forced single reduction") {
  GradedMatrix d = make_graded(1, {SparseColumn{{{0, 1}}}, SparseColumn{{{0, 1}}}}, {0, 1});
  auto basis = kernel_basis_1d(d);
  REQUIRE(basis.size() == 1);
  CHECK(basis[0].v == SparseColumn{{{0, 1}, {1, 1}}});
  CHECK(basis[0].grade == 1);
}

TEST_CASE("kernel_basis_1d of an injective map is empty") {
  GradedMatrix d = make_graded(2, {SparseColumn{{{0, 1}}}, SparseColumn{{{1, 1}}}}, {0, 0});
  CHECK(kernel_basis_1d(d).empty());
}

TEST_CASE("kernel_basis_1d spans the dense null space pointwise") {
  std::mt19937_64 rng(24);
  for (int trial = 0; trial < 80; ++trial) {
    GradedMatrix d = random_graded(rng, 4, 6, 2);
    auto basis = kernel_basis_1d(d);
    dense::Matrix full = to_dense_1d(d);

    // every basis vector is in the null space and supported on columns of
    // grade at most its own
    for (const auto& el : basis) {
      std::vector<coeff_t> v = test::to_dense_vector(el.v, d.num_cols());
      CHECK(test::is_zero(test::dense_matvec(full, v, d.field)));
      for (const Entry& e : el.v.entries) CHECK(d.col_grades[e.row] <= el.grade);
    }

    // pointwise dimension match against the dense null space of the
    // restricted matrix
    for (std::int64_t z = 0; z <= 6; ++z) {
      std::vector<std::int64_t> selected;
      for (std::int64_t j = 0; j < d.num_cols(); ++j)
        if (d.col_grades[std::size_t(j)] <= z) selected.push_back(j);
      dense::Matrix sub(d.num_rows, std::int64_t(selected.size()));
      for (std::size_t c = 0; c < selected.size(); ++c)
        for (const Entry& e : d.columns[std::size_t(selected[c])].entries)
          sub.at(e.row, std::int64_t(c)) = e.coeff;
      std::int64_t dense_nullity =
          std::int64_t(selected.size()) - dense::rank(sub, d.field);
      std::int64_t basis_count = 0;
      for (const auto& el : basis)
        if (el.grade <= z) ++basis_count;
      CHECK(basis_count == dense_nullity);
    }

    // distinct pivots make the basis elements pointwise independent
    std::set<std::int64_t> pivots;
    for (const auto& el : basis) pivots.insert(el.v.pivot());
    CHECK(pivots.size() == basis.size());
  }
}
