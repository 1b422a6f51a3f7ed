#include <doctest.h>

#include <random>
#include <set>

#include "bipres/bigraded_reduction.hpp"
#include "bipres/errors.hpp"
#include "support/test_support.hpp"

using namespace bipres;

namespace {

// The running example: a 1x2 matrix [1 1] with incomparable column grades.
BigradedMatrix one_one_matrix(std::uint32_t p = 2) {
  BigradedMatrix m;
  m.field = PrimeField(p);
  m.num_rows = 1;
  m.columns = {SparseColumn{{{0, 1}}}, SparseColumn{{{0, 1}}}};
  m.col_grades = {{1, 0}, {0, 1}};
  m.row_grades = std::vector<Grade>{{0, 0}};
  return m;
}

BigradedMatrix identity_matrix(std::int64_t n, std::uint32_t p = 2) {
  BigradedMatrix m;
  m.field = PrimeField(p);
  m.num_rows = n;
  for (std::int64_t j = 0; j < n; ++j) {
    m.columns.push_back(SparseColumn{{{row_index_t(j), 1}}});
    m.col_grades.push_back({j, 0});
  }
  m.row_grades = m.col_grades;
  return m;
}

BigradedMatrix zero_matrix(std::vector<Grade> grades, std::int64_t rows,
                           std::uint32_t p = 2) {
  BigradedMatrix m;
  m.field = PrimeField(p);
  m.num_rows = rows;
  std::sort(grades.begin(), grades.end(), GradeColexLess{});
  m.columns.resize(grades.size());
  m.col_grades = std::move(grades);
  m.row_grades = std::vector<Grade>(std::size_t(rows), Grade{0, 0});
  return m;
}

void check_sweep_matches_naive(const BigradedMatrix& m, ColumnBackend backend) {
  SweepRequest req;
  req.beta0 = req.kernel = req.min_gens = req.grobner = true;
  SweepOptions opts;
  opts.backend = backend;
  SweepResult engine = run_bigraded_sweep(m, req, opts);
  test::NaiveSweepResult naive = test::naive_sweep(m, true);

  CHECK(engine.beta0 == naive.beta0);
  CHECK(engine.kernel.elements == naive.kernel.elements);
  CHECK(engine.min_gens.elements == naive.min_gens.elements);
  CHECK(engine.grobner == naive.grobner);
}

}  // namespace

TEST_CASE("reduce_submatrix_at is a no-op without columns at the target y-grade") {
  BigradedMatrix m = one_one_matrix();
  BigradedMatrix before = m;
  PivotArray pivs(m.num_rows);
  BiRedSubEvents ev = reduce_submatrix_at(m, {5, 7}, pivs, BiRedMode::generators);
  CHECK(m == before);
  CHECK(ev.zeroed_columns.empty());
  CHECK(ev.pivot_claims.empty());
  CHECK(ev.column_additions == 0);
}

TEST_CASE("reduce_submatrix_at performs no additions on an already reduced submatrix") {
  BigradedMatrix m = identity_matrix(3);
  PivotArray pivs(m.num_rows);
  for (std::int64_t x = 0; x < 3; ++x) {
    BiRedSubEvents ev = reduce_submatrix_at(m, {x, 0}, pivs, BiRedMode::generators);
    CHECK(ev.column_additions == 0);
    CHECK(ev.zeroed_columns.empty());
  }
  // revisiting the final grid point performs no further work
  BiRedSubEvents again = reduce_submatrix_at(m, {2, 0}, pivs, BiRedMode::generators);
  CHECK(again.column_additions == 0);
  CHECK(again.pivot_claims.empty());
}

TEST_CASE("full sweep of the running example via reduce_submatrix_at") {
  BigradedMatrix m = one_one_matrix();
  PivotArray pivs(m.num_rows);

  BiRedSubEvents at00 = reduce_submatrix_at(m, {0, 0}, pivs, BiRedMode::generators);
  CHECK(at00.pivot_claims.empty());

  BiRedSubEvents at01 = reduce_submatrix_at(m, {0, 1}, pivs, BiRedMode::generators);
  CHECK(at01.pivot_claims == std::vector<PivotClaim>{{0, 1}});

  BiRedSubEvents at10 = reduce_submatrix_at(m, {1, 0}, pivs, BiRedMode::generators);
  CHECK(at10.pivot_claims == std::vector<PivotClaim>{{0, 0}});

  BiRedSubEvents at11 = reduce_submatrix_at(m, {1, 1}, pivs, BiRedMode::generators);
  CHECK(at11.zeroed_columns == std::vector<std::int64_t>{1});
  CHECK(m.columns[1].empty());
  CHECK(m.columns[0] == SparseColumn{{{0, 1}}});
}

TEST_CASE("kernel_beta0 examples") {
  CHECK(kernel_beta0(one_one_matrix()) ==
        Beta0Profile{{{Grade{1, 1}, 1}}});

  Beta0Profile grouped = kernel_beta0(zero_matrix({{0, 0}, {0, 0}, {2, 1}}, 3));
  CHECK(grouped == Beta0Profile{{{Grade{0, 0}, 2}, {Grade{2, 1}, 1}}});

  CHECK(kernel_beta0(identity_matrix(4)).entries.empty());
}

TEST_CASE("kernel_basis examples") {
  KernelBasis basis = kernel_basis(one_one_matrix());
  REQUIRE(basis.elements.size() == 1);
  CHECK(basis.elements[0].v == SparseColumn{{{0, 1}, {1, 1}}});
  CHECK(basis.elements[0].grade == Grade{1, 1});
  CHECK(basis.ambient_size == 2);

  KernelBasis zero = kernel_basis(zero_matrix({{0, 0}, {1, 2}}, 2));
  REQUIRE(zero.elements.size() == 2);
  CHECK(zero.elements[0].v == SparseColumn{{{0, 1}}});
  CHECK(zero.elements[0].grade == Grade{0, 0});
  CHECK(zero.elements[1].v == SparseColumn{{{1, 1}}});
  CHECK(zero.elements[1].grade == Grade{1, 2});

  CHECK(kernel_basis(identity_matrix(3)).elements.empty());
}

TEST_CASE("minimal_generators examples") {
  GeneratorSet gens = minimal_generators(one_one_matrix());
  REQUIRE(gens.elements.size() == 2);
  // lex grid order: (0,1) before (1,0)
  CHECK(gens.elements[0].grade == Grade{0, 1});
  CHECK(gens.elements[0].v == SparseColumn{{{0, 1}}});
  CHECK(gens.elements[1].grade == Grade{1, 0});
  CHECK(gens.elements[1].v == SparseColumn{{{0, 1}}});

  BigradedMatrix single;
  single.field = PrimeField(3);
  single.num_rows = 2;
  single.columns = {SparseColumn{{{0, 1}, {1, 2}}}};
  single.col_grades = {{2, 3}};
  GeneratorSet one = minimal_generators(single);
  REQUIRE(one.elements.size() == 1);
  CHECK(one.elements[0].v == single.columns[0]);
  CHECK(one.elements[0].grade == Grade{2, 3});

  CHECK(minimal_generators(zero_matrix({{0, 0}, {1, 1}}, 2)).elements.empty());
}

TEST_CASE("image_grobner_basis examples") {
  auto id_basis = image_grobner_basis(identity_matrix(3));
  REQUIRE(id_basis.size() == 3);
  for (std::size_t i = 0; i < 3; ++i) {
    CHECK(id_basis[i].v == SparseColumn{{{row_index_t(i), 1}}});
    CHECK(id_basis[i].grade == Grade{std::int64_t(i), 0});
  }

  CHECK(image_grobner_basis(zero_matrix({{0, 0}}, 1)).empty());

  // the pivot is claimed twice, once per incomparable grade
  auto gb = image_grobner_basis(one_one_matrix());
  REQUIRE(gb.size() == 2);
  CHECK(gb[0].grade == Grade{0, 1});
  CHECK(gb[1].grade == Grade{1, 0});
  CHECK(gb[0].v == SparseColumn{{{0, 1}}});
  CHECK(gb[1].v == SparseColumn{{{0, 1}}});

  BigradedMatrix no_rows = one_one_matrix();
  no_rows.row_grades.reset();
  CHECK_THROWS_WITH(image_grobner_basis(no_rows), doctest::Contains("row grades required"));
}

TEST_CASE("pointwise_rank_nullity examples") {
  RankNullityTable id_table = pointwise_rank_nullity(identity_matrix(3, 5));
  // identity with all three grades distinct on the x-axis: at the top corner
  // all columns are present and independent
  CHECK(id_table.at({2, 0}) == std::pair<std::int64_t, std::int64_t>{3, 0});

  BigradedMatrix id_same;
  id_same.field = PrimeField(2);
  id_same.num_rows = 3;
  for (std::int64_t j = 0; j < 3; ++j) {
    id_same.columns.push_back(SparseColumn{{{row_index_t(j), 1}}});
    id_same.col_grades.push_back({0, 0});
  }
  CHECK(pointwise_rank_nullity(id_same).at({0, 0}) ==
        std::pair<std::int64_t, std::int64_t>{3, 0});

  CHECK(pointwise_rank_nullity(zero_matrix({{0, 0}, {0, 0}}, 1)).at({0, 0}) ==
        std::pair<std::int64_t, std::int64_t>{0, 2});

  RankNullityTable table = pointwise_rank_nullity(one_one_matrix());
  CHECK(table.at({1, 1}) == std::pair<std::int64_t, std::int64_t>{1, 1});
  CHECK(table.at({1, 0}) == std::pair<std::int64_t, std::int64_t>{1, 0});
  CHECK(table.at({0, 1}) == std::pair<std::int64_t, std::int64_t>{1, 0});
  CHECK(table.at({0, 0}) == std::pair<std::int64_t, std::int64_t>{0, 0});
  CHECK(table.at({-1, -1}) == std::pair<std::int64_t, std::int64_t>{0, 0});
}

TEST_CASE("rank + nullity counts columns and rank is monotone") {
  std::mt19937_64 rng(31);
  for (int trial = 0; trial < 60; ++trial) {
    test::RandomMatrixSpec spec;
    spec.p = trial % 2 ? 2 : 5;
    BigradedMatrix m = test::random_bigraded_matrix(spec, rng);
    RankNullityTable table = pointwise_rank_nullity(m);
    for (const Grade& z : table.grid_points()) {
      auto [rank, nullity] = table.at(z);
      std::int64_t count = 0;
      for (const Grade& g : m.col_grades)
        if (leq(g, z)) ++count;
      CHECK(rank + nullity == count);
      // monotonicity along both axes
      auto [rank_left, nl] = table.at({z.x - 1, z.y});
      auto [rank_down, nd] = table.at({z.x, z.y - 1});
      (void)nl;
      (void)nd;
      CHECK(rank >= rank_left);
      CHECK(rank >= rank_down);
    }
  }
}

TEST_CASE("column additions stay local to the reduced submatrix") {
  struct Trace : AdditionObserver {
    const BigradedMatrix* m = nullptr;
    bool ok = true;
    void on_column_addition_at(std::int64_t source, std::int64_t target, Grade z) override {
      ok = ok && source < target;
      ok = ok && leq(m->col_grades[std::size_t(source)], z);
      ok = ok && !colex_less(m->col_grades[std::size_t(target)],
                             m->col_grades[std::size_t(source)]);
    }
  };

  std::mt19937_64 rng(32);
  for (ColumnBackend backend : {ColumnBackend::sorted_list, ColumnBackend::lazy_heap}) {
    Trace trace;
    for (int trial = 0; trial < 60; ++trial) {
      test::RandomMatrixSpec spec;
      spec.p = trial % 2 ? 2 : 7;
      spec.max_rows = 7;
      spec.max_cols = 9;
      BigradedMatrix m = test::random_bigraded_matrix(spec, rng);
      trace.m = &m;
      SweepRequest req;
      req.kernel = true;
      SweepOptions opts;
      opts.backend = backend;
      opts.observer = &trace;
      (void)run_bigraded_sweep(m, req, opts);
    }
    CHECK(trace.ok);
  }
}

TEST_CASE("total column additions respect the combinatorial bound") {
  std::mt19937_64 rng(33);
  for (int trial = 0; trial < 80; ++trial) {
    test::RandomMatrixSpec spec;
    spec.max_rows = 8;
    spec.max_cols = 10;
    spec.p = trial % 2 ? 2 : 5;
    BigradedMatrix m = test::random_bigraded_matrix(spec, rng);
    SweepRequest req;
    req.kernel = true;
    SweepResult res = run_bigraded_sweep(m, req, {});
    std::uint64_t n = std::uint64_t(m.num_cols());
    std::uint64_t bound = n * std::uint64_t(std::min(m.num_rows, m.num_cols()));
    CHECK(res.stats.column_additions <= bound);
  }
}

TEST_CASE("kernel basis has pairwise-distinct pivots") {
  std::mt19937_64 rng(34);
  for (int trial = 0; trial < 60; ++trial) {
    test::RandomMatrixSpec spec;
    spec.p = trial % 2 ? 2 : 5;
    BigradedMatrix m = test::random_bigraded_matrix(spec, rng);
    KernelBasis basis = kernel_basis(m);
    std::set<std::int64_t> pivots;
    for (const auto& el : basis.elements) {
      CHECK(!el.v.empty());
      pivots.insert(el.v.pivot());
    }
    CHECK(pivots.size() == basis.elements.size());
  }
}

TEST_CASE("grobner basis elements with comparable grades have distinct pivots") {
  std::mt19937_64 rng(35);
  for (int trial = 0; trial < 60; ++trial) {
    test::RandomMatrixSpec spec;
    spec.p = trial % 2 ? 2 : 5;
    BigradedMatrix m = test::random_bigraded_matrix(spec, rng);
    auto basis = image_grobner_basis(m);
    for (std::size_t i = 0; i < basis.size(); ++i)
      for (std::size_t j = i + 1; j < basis.size(); ++j)
        if (leq(basis[i].grade, basis[j].grade) || leq(basis[j].grade, basis[i].grade))
          CHECK(basis[i].v.pivot() != basis[j].v.pivot());
  }
}

TEST_CASE("kernel_beta0 equals the grade histogram of kernel_basis") {
  std::mt19937_64 rng(36);
  for (int trial = 0; trial < 60; ++trial) {
    test::RandomMatrixSpec spec;
    spec.p = trial % 2 ? 2 : 5;
    BigradedMatrix m = test::random_bigraded_matrix(spec, rng);
    Beta0Profile profile = kernel_beta0(m);
    KernelBasis basis = kernel_basis(m);
    std::vector<Grade> grades;
    for (const auto& el : basis.elements) grades.push_back(el.grade);
    CHECK(test::to_betti_map(profile) == test::grade_multiset(grades));
  }
}

TEST_CASE("engine sweep matches the naive single-step sweep on both backends") {
  std::mt19937_64 rng(37);
  for (int trial = 0; trial < 120; ++trial) {
    test::RandomMatrixSpec spec;
    spec.max_rows = 7;
    spec.max_cols = 9;
    spec.p = trial % 3 == 0 ? 5 : 2;
    if (trial % 5 == 0) {
      // tie-heavy: many columns share a grade, stressing the claim protocol
      spec.grade_min = 0;
      spec.grade_max = 1;
      spec.max_cols = 14;
      spec.density = 0.7;
    }
    BigradedMatrix m = test::random_bigraded_matrix(spec, rng);
    check_sweep_matches_naive(m, ColumnBackend::sorted_list);
    check_sweep_matches_naive(m, ColumnBackend::lazy_heap);
  }
}

TEST_CASE("kernel basis spans the dense null space at every grid point") {
  std::mt19937_64 rng(38);
  for (int trial = 0; trial < 40; ++trial) {
    test::RandomMatrixSpec spec;
    spec.p = trial % 2 ? 2 : 5;
    BigradedMatrix m = test::random_bigraded_matrix(spec, rng);
    KernelBasis basis = kernel_basis(m);
    dense::Matrix full = test::to_dense(m);

    for (const Grade& z : grid_closure(m.col_grades)) {
      std::vector<std::int64_t> selected;
      dense::Matrix sub = test::dense_columns_leq(m, z, &selected);
      std::int64_t dense_nullity = sub.cols - dense::rank(sub, m.field);

      std::vector<std::vector<coeff_t>> members;
      for (const auto& el : basis.elements)
        if (leq(el.grade, z)) {
          std::vector<coeff_t> v = test::to_dense_vector(el.v, m.num_cols());
          CHECK(test::is_zero(test::dense_matvec(full, v, m.field)));
          members.push_back(std::move(v));
        }
      CHECK(std::int64_t(members.size()) == dense_nullity);

      // independence: the span has full expected dimension
      dense::Matrix span(m.num_cols(), std::int64_t(members.size()));
      for (std::size_t c = 0; c < members.size(); ++c)
        for (std::int64_t r = 0; r < m.num_cols(); ++r)
          span.at(r, std::int64_t(c)) = members[c][std::size_t(r)];
      CHECK(dense::rank(span, m.field) == dense_nullity);
    }
  }
}

TEST_CASE("kernel basis elements are supported on columns below their grade") {
  std::mt19937_64 rng(39);
  for (int trial = 0; trial < 60; ++trial) {
    test::RandomMatrixSpec spec;
    spec.p = trial % 2 ? 2 : 5;
    BigradedMatrix m = test::random_bigraded_matrix(spec, rng);
    for (const auto& el : kernel_basis(m).elements)
      for (const Entry& e : el.v.entries) CHECK(leq(m.col_grades[e.row], el.grade));
  }
}

TEST_CASE("no minimal generator lies in the span of the others below its grade") {
  std::mt19937_64 rng(40);
  for (int trial = 0; trial < 60; ++trial) {
    test::RandomMatrixSpec spec;
    spec.p = trial % 2 ? 2 : 5;
    BigradedMatrix m = test::random_bigraded_matrix(spec, rng);
    GeneratorSet gens = minimal_generators(m);
    for (std::size_t g = 0; g < gens.elements.size(); ++g) {
      const Grade z = gens.elements[g].grade;
      std::vector<const SparseColumn*> others;
      for (std::size_t k = 0; k < gens.elements.size(); ++k)
        if (k != g && leq(gens.elements[k].grade, z))
          others.push_back(&gens.elements[k].v);
      dense::Matrix span(m.num_rows, std::int64_t(others.size()));
      for (std::size_t c = 0; c < others.size(); ++c)
        for (const Entry& e : others[c]->entries) span.at(e.row, std::int64_t(c)) = e.coeff;
      dense::Matrix extended(m.num_rows, std::int64_t(others.size()) + 1);
      for (std::size_t c = 0; c < others.size(); ++c)
        for (const Entry& e : others[c]->entries)
          extended.at(e.row, std::int64_t(c)) = e.coeff;
      for (const Entry& e : gens.elements[g].v.entries)
        extended.at(e.row, std::int64_t(others.size())) = e.coeff;
      CHECK(dense::rank(extended, m.field) == dense::rank(span, m.field) + 1);
    }
  }
}

TEST_CASE("sweep rejects non-colex column grades") {
  BigradedMatrix m = one_one_matrix();
  std::swap(m.col_grades[0], m.col_grades[1]);
  CHECK_THROWS_AS(run_bigraded_sweep(m, SweepRequest{}, {}), ValidationError);
}
