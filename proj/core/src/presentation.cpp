#include "bipres/presentation.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <thread>

#include "bipres/errors.hpp"

namespace bipres {

namespace {

// Index of the first column of d2 whose image under d1 is nonzero, -1 when
// d1 * d2 = 0.
std::int64_t first_chain_violation(const BigradedMatrix& d2, const BigradedMatrix& d1) {
  const PrimeField& f = d1.field;
  std::vector<coeff_t> acc(std::size_t(d1.num_rows), 0);
  for (std::int64_t j = 0; j < d2.num_cols(); ++j) {
    if (d1.num_rows == 0) break;
    std::fill(acc.begin(), acc.end(), coeff_t(0));
    bool touched = false;
    for (const Entry& e : d2.columns[std::size_t(j)].entries) {
      for (const Entry& a : d1.columns[e.row].entries) {
        acc[a.row] = f.add(acc[a.row], f.mul(a.coeff, e.coeff));
        touched = true;
      }
    }
    if (touched)
      for (coeff_t v : acc)
        if (v != 0) return j;
  }
  return -1;
}

// Runs fn(begin..end) split into contiguous chunks across `threads` threads.
// Results must not depend on chunk boundaries; callers guarantee disjoint
// writes.
template <class Fn>
void parallel_for(std::int64_t begin, std::int64_t end, int threads, Fn&& fn) {
  std::int64_t count = end - begin;
  if (count <= 0) return;
  if (threads <= 0) threads = int(std::thread::hardware_concurrency());
  if (threads <= 1 || count < 2 * threads) {
    fn(begin, end);
    return;
  }
  std::vector<std::thread> pool;
  std::int64_t chunk = (count + threads - 1) / threads;
  for (int t = 0; t < threads; ++t) {
    std::int64_t lo = begin + t * chunk;
    std::int64_t hi = std::min(end, lo + chunk);
    if (lo >= hi) break;
    pool.emplace_back([&fn, lo, hi] { fn(lo, hi); });
  }
  for (std::thread& th : pool) th.join();
}

// Step 3 of the presentation computation: rewrite each generator of im d2
// against the kernel basis of d1 by repeated pivot cancellation. The kernel
// basis has pairwise-distinct pivots, so a pivot-indexed lookup gives the
// unique candidate; its grade must dominate nothing beyond the generator's.
Presentation express_in_kernel_coordinates(const GeneratorSet& gens,
                                           const KernelBasis& basis,
                                           std::int64_t ambient, const PrimeField& f) {
  std::vector<std::int64_t> by_pivot(std::size_t(ambient), -1);
  for (std::size_t i = 0; i < basis.elements.size(); ++i) {
    std::int64_t p = basis.elements[i].v.pivot();
    if (p < 0 || by_pivot[std::size_t(p)] != -1)
      throw InternalError("kernel basis pivots are not distinct");
    by_pivot[std::size_t(p)] = std::int64_t(i);
  }

  Presentation pres;
  pres.field = f;
  pres.kind = PresentationKind::semi_minimal;
  pres.row_grades.reserve(basis.elements.size());
  for (const GradedVector& e : basis.elements) pres.row_grades.push_back(e.grade);
  pres.columns.reserve(gens.elements.size());
  pres.col_grades.reserve(gens.elements.size());

  std::vector<Entry> scratch;
  for (const GradedVector& gen : gens.elements) {
    SparseColumn w = gen.v;
    std::vector<Entry> coords;
    while (!w.empty()) {
      std::int64_t p = w.pivot();
      std::int64_t i = by_pivot[std::size_t(p)];
      if (i < 0 || !leq(basis.elements[std::size_t(i)].grade, gen.grade))
        throw InternalError("generator not in the span of the kernel basis");
      const SparseColumn& bv = basis.elements[std::size_t(i)].v;
      coeff_t c = f.mul(w.pivot_coeff(), f.inv(bv.pivot_coeff()));
      coords.push_back({row_index_t(i), c});
      add_multiple_inplace(w, bv, f.neg(c), f, scratch);
    }
    std::sort(coords.begin(), coords.end(),
              [](const Entry& a, const Entry& b) { return a.row < b.row; });
    pres.columns.emplace_back(std::move(coords));
    pres.col_grades.push_back(gen.grade);
  }
  return pres;
}

struct SemiMinimalParts {
  Presentation presentation;
  RankNullityTable d2_rank_nullity, d1_rank_nullity;
  ReductionStats d2_stats, d1_stats;
};

SemiMinimalParts build_semi_minimal(const FIRep& fr, const SweepOptions& options,
                                    bool with_rank_nullity) {
  if (fr.d2.num_rows != fr.d1.num_cols())
    throw ValidationError("d2 row count does not match d1 column count");
  if (fr.d1.field.p() != fr.d2.field.p())
    throw ValidationError("matrices use different fields");
  if (first_chain_violation(fr.d2, fr.d1) >= 0)
    throw ValidationError("not a chain complex");

  SemiMinimalParts parts;
  SweepOptions sweep = options;

  SweepRequest want_gens;
  want_gens.min_gens = true;
  want_gens.rank_nullity = with_rank_nullity;
  sweep.stats = nullptr;
  SweepResult d2_res = run_bigraded_sweep(fr.d2, want_gens, sweep);
  parts.d2_stats = d2_res.stats;

  SweepRequest want_kernel;
  want_kernel.kernel = true;
  want_kernel.rank_nullity = with_rank_nullity;
  SweepResult d1_res = run_bigraded_sweep(fr.d1, want_kernel, sweep);
  parts.d1_stats = d1_res.stats;

  if (options.stats)
    options.stats->column_additions +=
        parts.d2_stats.column_additions + parts.d1_stats.column_additions;

  parts.presentation = express_in_kernel_coordinates(d2_res.min_gens, d1_res.kernel,
                                                     fr.d1.num_cols(), fr.field());
  parts.d2_rank_nullity = std::move(d2_res.rank_nullity);
  parts.d1_rank_nullity = std::move(d1_res.rank_nullity);
  return parts;
}

HilbertFunction assemble_hilbert(const RankNullityTable& d1_table,
                                 const RankNullityTable& d2_table,
                                 const std::vector<Grade>& cg1,
                                 const std::vector<Grade>& cg2) {
  HilbertFunction hf;
  hf.xs.reserve(cg1.size() + cg2.size());
  hf.ys.reserve(cg1.size() + cg2.size());
  for (const Grade& g : cg1) {
    hf.xs.push_back(g.x);
    hf.ys.push_back(g.y);
  }
  for (const Grade& g : cg2) {
    hf.xs.push_back(g.x);
    hf.ys.push_back(g.y);
  }
  std::sort(hf.xs.begin(), hf.xs.end());
  hf.xs.erase(std::unique(hf.xs.begin(), hf.xs.end()), hf.xs.end());
  std::sort(hf.ys.begin(), hf.ys.end());
  hf.ys.erase(std::unique(hf.ys.begin(), hf.ys.end()), hf.ys.end());

  hf.values.assign(hf.xs.size() * hf.ys.size(), 0);
  for (std::size_t xi = 0; xi < hf.xs.size(); ++xi) {
    for (std::size_t yi = 0; yi < hf.ys.size(); ++yi) {
      Grade z{hf.xs[xi], hf.ys[yi]};
      std::int64_t value = d1_table.at(z).second - d2_table.at(z).first;
      if (value < 0) throw InternalError("chain condition violated");
      hf.values[std::size_t(hf.cell(xi, yi))] = value;
    }
  }
  return hf;
}

}  // namespace

void FIRep::validate() const {
  d2.validate();
  d1.validate();
  if (d2.num_rows != d1.num_cols())
    throw ValidationError("d2 row count does not match d1 column count");
  if (!d2.row_grades || *d2.row_grades != d1.col_grades)
    throw ValidationError("d2 row grades must equal d1 column grades");
  if (d1.field.p() != d2.field.p())
    throw ValidationError("matrices use different fields");
  if (first_chain_violation(d2, d1) >= 0)
    throw ValidationError("chain condition violated");
}

void Presentation::validate() const {
  if (col_grades.size() != columns.size())
    throw ValidationError("column grade count does not match column count");
  for (std::size_t j = 0; j < columns.size(); ++j) {
    if (!columns[j].well_formed(field))
      throw ValidationError("malformed column " + std::to_string(j));
    for (const Entry& e : columns[j].entries) {
      if (std::size_t(e.row) >= row_grades.size())
        throw ValidationError("row index out of range in column " + std::to_string(j));
      if (!leq(row_grades[e.row], col_grades[j]))
        throw ValidationError("entry violates homogeneity in column " + std::to_string(j));
      if (kind == PresentationKind::minimal && row_grades[e.row] == col_grades[j])
        throw ValidationError("minimal presentation has an entry with equal grades");
    }
  }
}

std::int64_t HilbertFunction::at(Grade z) const {
  auto xit = std::upper_bound(xs.begin(), xs.end(), z.x);
  auto yit = std::upper_bound(ys.begin(), ys.end(), z.y);
  if (xit == xs.begin() || yit == ys.begin()) return 0;
  std::size_t xi = std::size_t(xit - xs.begin()) - 1;
  std::size_t yi = std::size_t(yit - ys.begin()) - 1;
  return values[std::size_t(cell(xi, yi))];
}

std::vector<Grade> HilbertFunction::grid_points() const {
  std::vector<Grade> out;
  out.reserve(xs.size() * ys.size());
  for (std::int64_t x : xs)
    for (std::int64_t y : ys) out.push_back({x, y});
  return out;
}

Presentation semi_minimal_presentation(const FIRep& fr, const SweepOptions& options) {
  return build_semi_minimal(fr, options, false).presentation;
}

namespace {

// One elimination step of the minimization: zero `pivot_row` in the columns
// of [lo, hi) by adding a multiple of the pivot column. Each target column is
// owned exclusively by its caller and only the pivot column is read, so
// concurrent calls on disjoint ranges give the same result as a serial pass.
void eliminate_range(Presentation& p, const SparseColumn& pivot_col,
                     std::int64_t pivot_row, coeff_t pivot_inv, std::int64_t lo,
                     std::int64_t hi, std::vector<Entry>& scratch) {
  const PrimeField& f = p.field;
  for (std::int64_t k = lo; k < hi; ++k) {
    coeff_t c = p.columns[std::size_t(k)].at(row_index_t(pivot_row));
    if (c == 0) continue;
    add_multiple_inplace(p.columns[std::size_t(k)], pivot_col, f.neg(f.mul(c, pivot_inv)),
                         f, scratch);
  }
}

struct MinimizeStep {
  std::int64_t pivot_row = -1;
  coeff_t pivot_inv = 0;
  bool trigger = false;
};

// Centralized barrier with busy-waiting. The minimization synchronizes twice
// per pivot column, which makes futex-based barriers the bottleneck; the team
// is capped at the core count, so spinning (with a periodic yield) is safe.
class SpinBarrier {
 public:
  explicit SpinBarrier(int parties) : parties_(parties) {}

  void wait() {
    unsigned gen = generation_.load(std::memory_order_acquire);
    if (arrived_.fetch_add(1, std::memory_order_acq_rel) == parties_ - 1) {
      arrived_.store(0, std::memory_order_relaxed);
      generation_.store(gen + 1, std::memory_order_release);
      return;
    }
    int spins = 0;
    while (generation_.load(std::memory_order_acquire) == gen)
      if (++spins % 4096 == 0) std::this_thread::yield();
  }

 private:
  const int parties_;
  std::atomic<int> arrived_{0};
  std::atomic<unsigned> generation_{0};
};

// Decides whether column j is half of a removable identity pair and records
// the removal. Run by exactly one thread per column.
MinimizeStep minimize_decide(Presentation& p, std::int64_t j, std::vector<char>& dead_row,
                             std::vector<char>& dead_col) {
  MinimizeStep step;
  const SparseColumn& col = p.columns[std::size_t(j)];
  if (col.empty()) return step;
  std::int64_t pivot_row = col.pivot();
  if (!(p.row_grades[std::size_t(pivot_row)] == p.col_grades[std::size_t(j)])) return step;
  step.pivot_row = pivot_row;
  step.pivot_inv = p.field.inv(col.pivot_coeff());
  step.trigger = true;
  dead_col[std::size_t(j)] = 1;
  dead_row[std::size_t(pivot_row)] = 1;
  return step;
}

}  // namespace

Presentation minimize(Presentation p, int threads) {
  const std::int64_t n = p.num_cols();
  std::vector<char> dead_row(std::size_t(p.num_rows()), 0);
  std::vector<char> dead_col(std::size_t(n), 0);
  unsigned cores = std::max(1u, std::thread::hardware_concurrency());
  if (threads <= 0) threads = int(cores);
  threads = std::min(threads, int(cores));

  if (threads <= 1 || n < 2) {
    std::vector<Entry> scratch;
    for (std::int64_t j = 0; j < n; ++j) {
      MinimizeStep step = minimize_decide(p, j, dead_row, dead_col);
      if (step.trigger)
        eliminate_range(p, p.columns[std::size_t(j)], step.pivot_row, step.pivot_inv,
                        j + 1, n, scratch);
    }
  } else {
    // Persistent worker team: thread 0 decides each pivot column, a barrier
    // publishes the decision, every thread eliminates its contiguous share of
    // the later columns, and a second barrier orders those writes before the
    // next decision. Column ownership is disjoint per step, so the result is
    // bitwise independent of the thread count.
    SpinBarrier sync(threads);
    MinimizeStep step;
    auto worker = [&](int tid) {
      std::vector<Entry> scratch;
      for (std::int64_t j = 0; j < n; ++j) {
        if (tid == 0) step = minimize_decide(p, j, dead_row, dead_col);
        sync.wait();
        if (step.trigger) {
          std::int64_t count = n - (j + 1);
          std::int64_t chunk = (count + threads - 1) / threads;
          std::int64_t lo = j + 1 + tid * chunk;
          std::int64_t hi = std::min(n, lo + chunk);
          if (lo < hi)
            eliminate_range(p, p.columns[std::size_t(j)], step.pivot_row, step.pivot_inv,
                            lo, hi, scratch);
        }
        sync.wait();
      }
    };
    std::vector<std::thread> pool;
    pool.reserve(std::size_t(threads - 1));
    for (int t = 1; t < threads; ++t) pool.emplace_back(worker, t);
    worker(0);
    for (std::thread& th : pool) th.join();
  }

  std::vector<std::int64_t> row_map(dead_row.size(), -1);
  std::vector<Grade> new_rows;
  new_rows.reserve(dead_row.size());
  for (std::size_t i = 0; i < dead_row.size(); ++i) {
    if (dead_row[i]) continue;
    row_map[i] = std::int64_t(new_rows.size());
    new_rows.push_back(p.row_grades[i]);
  }

  Presentation out;
  out.field = p.field;
  out.kind = PresentationKind::minimal;
  out.row_grades = std::move(new_rows);
  for (std::int64_t j = 0; j < n; ++j) {
    if (dead_col[std::size_t(j)]) continue;
    SparseColumn col;
    col.entries.reserve(p.columns[std::size_t(j)].entries.size());
    for (const Entry& e : p.columns[std::size_t(j)].entries) {
      std::int64_t r = row_map[e.row];
      if (r < 0) throw InternalError("presentation is not semi-minimal");
      col.entries.push_back({row_index_t(r), e.coeff});
    }
    out.columns.push_back(std::move(col));
    out.col_grades.push_back(p.col_grades[std::size_t(j)]);
  }
  return out;
}

std::pair<BettiMap, BettiMap> betti_from_semi_minimal(const Presentation& p,
                                                      int threads) {
  struct Block {
    std::vector<std::int64_t> rows, cols;
  };
  std::map<Grade, Block, GradeLexLess> blocks;
  for (std::int64_t i = 0; i < p.num_rows(); ++i)
    blocks[p.row_grades[std::size_t(i)]].rows.push_back(i);
  for (std::int64_t j = 0; j < p.num_cols(); ++j)
    blocks[p.col_grades[std::size_t(j)]].cols.push_back(j);

  // Local index of every row within its grade class, for extracting D^z.
  std::vector<std::int64_t> row_local(std::size_t(p.num_rows()), -1);
  std::vector<const Block*> row_block(std::size_t(p.num_rows()), nullptr);
  for (const auto& [grade, block] : blocks)
    for (std::size_t i = 0; i < block.rows.size(); ++i) {
      row_local[std::size_t(block.rows[i])] = std::int64_t(i);
      row_block[std::size_t(block.rows[i])] = &block;
    }

  std::vector<const Block*> order;
  std::vector<Grade> order_grades;
  for (const auto& [grade, block] : blocks) {
    order.push_back(&block);
    order_grades.push_back(grade);
  }
  std::vector<std::int64_t> ranks(order.size(), 0);

  parallel_for(0, std::int64_t(order.size()), threads, [&](std::int64_t lo, std::int64_t hi) {
    for (std::int64_t b = lo; b < hi; ++b) {
      const Block& block = *order[b];
      if (block.rows.empty() || block.cols.empty()) continue;
      GradedMatrix dz;
      dz.field = p.field;
      dz.num_rows = std::int64_t(block.rows.size());
      dz.col_grades.assign(block.cols.size(), 0);
      dz.columns.reserve(block.cols.size());
      for (std::int64_t j : block.cols) {
        SparseColumn col;
        for (const Entry& e : p.columns[std::size_t(j)].entries)
          if (row_block[e.row] == &block)
            col.entries.push_back({row_index_t(row_local[e.row]), e.coeff});
        dz.columns.push_back(std::move(col));
      }
      GradedMatrix reduced = graded_reduce(std::move(dz));
      std::int64_t rank = 0;
      for (const SparseColumn& c : reduced.columns)
        if (!c.empty()) ++rank;
      ranks[std::size_t(b)] = rank;
    }
  });

  BettiMap beta0, beta1;
  for (std::size_t b = 0; b < order.size(); ++b) {
    const Block& block = *order[b];
    std::int64_t b0 = std::int64_t(block.rows.size()) - ranks[b];
    std::int64_t b1 = std::int64_t(block.cols.size()) - ranks[b];
    if (b0 > 0) beta0[order_grades[b]] = b0;
    if (b1 > 0) beta1[order_grades[b]] = b1;
  }
  return {std::move(beta0), std::move(beta1)};
}

HilbertFunction hilbert_function(const FIRep& fr, const SweepOptions& options) {
  SweepRequest want;
  want.rank_nullity = true;
  SweepOptions sweep = options;
  sweep.stats = nullptr;
  RankNullityTable d2_table = run_bigraded_sweep(fr.d2, want, sweep).rank_nullity;
  RankNullityTable d1_table = run_bigraded_sweep(fr.d1, want, sweep).rank_nullity;
  return assemble_hilbert(d1_table, d2_table, fr.d1.col_grades, fr.d2.col_grades);
}

BettiMap beta2_from_hilbert(const BettiMap& beta0, const BettiMap& beta1,
                            const HilbertFunction& hf) {
  const std::size_t nx = hf.xs.size(), ny = hf.ys.size();
  std::vector<std::int64_t> pre0(nx * ny, 0), pre1(nx * ny, 0), pre2(nx * ny, 0);

  auto scatter = [&](const BettiMap& m, std::vector<std::int64_t>& grid) {
    for (const auto& [g, count] : m) {
      auto xit = std::lower_bound(hf.xs.begin(), hf.xs.end(), g.x);
      auto yit = std::lower_bound(hf.ys.begin(), hf.ys.end(), g.y);
      if (xit == hf.xs.end() || *xit != g.x || yit == hf.ys.end() || *yit != g.y)
        throw InternalError("hilbert grid does not cover Betti support");
      grid[std::size_t(hf.cell(std::size_t(xit - hf.xs.begin()),
                               std::size_t(yit - hf.ys.begin())))] += count;
    }
  };
  scatter(beta0, pre0);
  scatter(beta1, pre1);

  auto prefix_at = [&](std::vector<std::int64_t>& grid, std::size_t xi, std::size_t yi) {
    std::int64_t v = grid[std::size_t(hf.cell(xi, yi))];
    if (xi > 0) v += grid[std::size_t(hf.cell(xi - 1, yi))];
    if (yi > 0) v += grid[std::size_t(hf.cell(xi, yi - 1))];
    if (xi > 0 && yi > 0) v -= grid[std::size_t(hf.cell(xi - 1, yi - 1))];
    return v;
  };

  BettiMap beta2;
  for (std::size_t xi = 0; xi < nx; ++xi) {
    for (std::size_t yi = 0; yi < ny; ++yi) {
      std::int64_t c = hf.cell(xi, yi);
      pre0[std::size_t(c)] = prefix_at(pre0, xi, yi);
      pre1[std::size_t(c)] = prefix_at(pre1, xi, yi);
      std::int64_t below = 0;
      if (xi > 0) below += pre2[std::size_t(hf.cell(xi - 1, yi))];
      if (yi > 0) below += pre2[std::size_t(hf.cell(xi, yi - 1))];
      if (xi > 0 && yi > 0) below -= pre2[std::size_t(hf.cell(xi - 1, yi - 1))];
      std::int64_t value = hf.values[std::size_t(c)] - pre0[std::size_t(c)] +
                           pre1[std::size_t(c)] - below;
      if (value < 0) throw InternalError("inconsistent inputs: negative beta2 solution");
      if (value > 0) beta2[{hf.xs[xi], hf.ys[yi]}] = value;
      pre2[std::size_t(c)] = below + value;
    }
  }
  return beta2;
}

namespace {

// Stable-sorts columns within runs of equal grade by their entry lists. The
// comparison only reads row indices, so the result does not depend on the
// incoming column order.
void sort_equal_grade_columns(Presentation& p) {
  const std::int64_t n = p.num_cols();
  std::vector<std::int64_t> cperm(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) cperm[std::size_t(j)] = j;
  std::int64_t run_start = 0;
  for (std::int64_t j = 1; j <= n; ++j) {
    if (j == n || !(p.col_grades[std::size_t(j)] == p.col_grades[std::size_t(run_start)])) {
      std::stable_sort(cperm.begin() + run_start, cperm.begin() + j,
                       [&](std::int64_t a, std::int64_t b) {
                         return p.columns[std::size_t(a)].entries < p.columns[std::size_t(b)].entries;
                       });
      run_start = j;
    }
  }
  std::vector<SparseColumn> cols(static_cast<std::size_t>(n));
  std::vector<Grade> cgrades(static_cast<std::size_t>(n));
  for (std::int64_t j = 0; j < n; ++j) {
    cols[std::size_t(j)] = std::move(p.columns[std::size_t(cperm[std::size_t(j)])]);
    cgrades[std::size_t(j)] = p.col_grades[std::size_t(cperm[std::size_t(j)])];
  }
  p.columns = std::move(cols);
  p.col_grades = std::move(cgrades);
}

}  // namespace

void canonicalize(Presentation& p) {
  const std::int64_t m = p.num_rows();

  // Columns first, so the row patterns below are computed against a column
  // order that is independent of the input order.
  sort_equal_grade_columns(p);

  // Row pattern: the entries of the row across all columns, in column order.
  std::vector<std::vector<Entry>> row_pattern(static_cast<std::size_t>(m));
  for (std::int64_t j = 0; j < p.num_cols(); ++j)
    for (const Entry& e : p.columns[std::size_t(j)].entries)
      row_pattern[e.row].push_back({row_index_t(j), e.coeff});

  std::vector<std::int64_t> perm(static_cast<std::size_t>(m));
  for (std::int64_t i = 0; i < m; ++i) perm[std::size_t(i)] = i;
  std::int64_t run_start = 0;
  for (std::int64_t i = 1; i <= m; ++i) {
    if (i == m || !(p.row_grades[std::size_t(i)] == p.row_grades[std::size_t(run_start)])) {
      std::stable_sort(perm.begin() + run_start, perm.begin() + i,
                       [&](std::int64_t a, std::int64_t b) {
                         return row_pattern[std::size_t(a)] < row_pattern[std::size_t(b)];
                       });
      run_start = i;
    }
  }

  std::vector<std::int64_t> new_index(static_cast<std::size_t>(m));
  bool identity = true;
  for (std::int64_t i = 0; i < m; ++i) {
    new_index[std::size_t(perm[std::size_t(i)])] = i;
    identity = identity && perm[std::size_t(i)] == i;
  }
  if (!identity) {
    std::vector<Grade> rows(static_cast<std::size_t>(m));
    for (std::int64_t i = 0; i < m; ++i) rows[std::size_t(i)] = p.row_grades[std::size_t(perm[std::size_t(i)])];
    p.row_grades = std::move(rows);
    for (SparseColumn& col : p.columns) {
      for (Entry& e : col.entries) e.row = row_index_t(new_index[e.row]);
      std::sort(col.entries.begin(), col.entries.end(),
                [](const Entry& a, const Entry& b) { return a.row < b.row; });
    }
    // the remap may have reordered entry lists, so re-establish column order
    sort_equal_grade_columns(p);
  }
}

PipelineResult run_pipeline(const FIRep& fr, const PipelineOptions& options) {
  using clock = std::chrono::steady_clock;
  PipelineResult result;
  bool want_hilbert = options.hilbert || options.betti;

  auto t0 = clock::now();
  SemiMinimalParts parts = build_semi_minimal(fr, options.sweep, want_hilbert);
  result.semi_minimal_seconds = std::chrono::duration<double>(clock::now() - t0).count();
  result.d2_stats = parts.d2_stats;
  result.d1_stats = parts.d1_stats;

  if (options.betti) {
    auto [beta0, beta1] = betti_from_semi_minimal(parts.presentation, options.threads);
    HilbertFunction hf = assemble_hilbert(parts.d1_rank_nullity, parts.d2_rank_nullity,
                                          fr.d1.col_grades, fr.d2.col_grades);
    BettiTable table;
    table.beta2 = beta2_from_hilbert(beta0, beta1, hf);
    table.beta0 = std::move(beta0);
    table.beta1 = std::move(beta1);
    result.betti = std::move(table);
    result.hilbert = std::move(hf);
  } else if (options.hilbert) {
    result.hilbert = assemble_hilbert(parts.d1_rank_nullity, parts.d2_rank_nullity,
                                      fr.d1.col_grades, fr.d2.col_grades);
  }

  if (options.minimal) {
    auto t1 = clock::now();
    result.presentation = minimize(std::move(parts.presentation), options.threads);
    result.minimize_seconds = std::chrono::duration<double>(clock::now() - t1).count();
  } else {
    result.presentation = std::move(parts.presentation);
  }
  return result;
}

}  // namespace bipres
