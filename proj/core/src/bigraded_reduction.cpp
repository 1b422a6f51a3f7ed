#include "bipres/bigraded_reduction.hpp"

#include <algorithm>
#include <cassert>
#include <cstdint>
#include <utility>

#include "bipres/errors.hpp"

namespace bipres {

std::pair<std::int64_t, std::int64_t> RankNullityTable::at(Grade z) const {
  auto xit = std::upper_bound(xs.begin(), xs.end(), z.x);
  auto yit = std::upper_bound(ys.begin(), ys.end(), z.y);
  if (xit == xs.begin() || yit == ys.begin()) return {0, 0};
  std::size_t xi = std::size_t(xit - xs.begin()) - 1;
  std::size_t yi = std::size_t(yit - ys.begin()) - 1;
  std::int64_t c = cell(xi, yi);
  return {rank[std::size_t(c)], nullity[std::size_t(c)]};
}

std::vector<Grade> RankNullityTable::grid_points() const {
  std::vector<Grade> out;
  out.reserve(xs.size() * ys.size());
  for (std::int64_t x : xs)
    for (std::int64_t y : ys) out.push_back({x, y});
  return out;
}

namespace {

// ---------------------------------------------------------------------------
// Column containers for the reduction. Both expose the same interface; the
// engine below is templated on the container type. A column used as an
// addition source is always in canonical (sorted, combined) form.
// ---------------------------------------------------------------------------

class SortedColumn {
 public:
  void adopt(std::vector<Entry>&& e) { e_ = std::move(e); }

  bool empty(const PrimeField&) const { return e_.empty(); }
  std::int64_t pivot(const PrimeField&) const {
    return e_.empty() ? -1 : std::int64_t(e_.back().row);
  }
  coeff_t pivot_coeff(const PrimeField&) const {
    return e_.empty() ? coeff_t(0) : e_.back().coeff;
  }

  void add_scaled(const SortedColumn& src, coeff_t scalar, const PrimeField& f,
                  std::vector<Entry>& scratch) {
    scratch.clear();
    const bool unscaled = scalar == 1;  // always the case over Z/2
    auto t = e_.begin(), te = e_.end();
    auto s = src.e_.begin(), se = src.e_.end();
    while (t != te && s != se) {
      if (t->row < s->row) {
        scratch.push_back(*t++);
      } else if (s->row < t->row) {
        coeff_t c = unscaled ? s->coeff : f.mul(s->coeff, scalar);
        if (c != 0) scratch.push_back({s->row, c});
        ++s;
      } else {
        coeff_t c = f.add(t->coeff, unscaled ? s->coeff : f.mul(s->coeff, scalar));
        if (c != 0) scratch.push_back({t->row, c});
        ++t;
        ++s;
      }
    }
    scratch.insert(scratch.end(), t, te);
    for (; s != se; ++s) {
      coeff_t c = unscaled ? s->coeff : f.mul(s->coeff, scalar);
      if (c != 0) scratch.push_back({s->row, c});
    }
    e_.swap(scratch);
  }

  void ensure_canonical(const PrimeField&) {}
  const std::vector<Entry>& canonical_entries(const PrimeField&) const { return e_; }
  std::vector<Entry> take() { return std::exchange(e_, {}); }
  void release() { std::vector<Entry>().swap(e_); }

 private:
  std::vector<Entry> e_;
};

// Binary max-heap by row with duplicate rows allowed; additions push scaled
// source entries and duplicates are combined lazily when the pivot is read.
class LazyHeapColumn {
 public:
  void adopt(std::vector<Entry>&& e) {
    e_ = std::move(e);
    heapified_ = false;
  }

  bool empty(const PrimeField& f) { return pivot(f) < 0; }

  std::int64_t pivot(const PrimeField& f) {
    if (!heapified_) return e_.empty() ? -1 : std::int64_t(e_.back().row);
    consolidate_top(f);
    return e_.empty() ? -1 : std::int64_t(e_.front().row);
  }

  coeff_t pivot_coeff(const PrimeField& f) {
    if (!heapified_) return e_.empty() ? coeff_t(0) : e_.back().coeff;
    consolidate_top(f);
    return e_.empty() ? coeff_t(0) : e_.front().coeff;
  }

  void add_scaled(const LazyHeapColumn& src, coeff_t scalar, const PrimeField& f,
                  std::vector<Entry>&) {
    assert(!src.heapified_);
    if (!heapified_) {
      std::make_heap(e_.begin(), e_.end(), row_less);
      heapified_ = true;
    }
    const bool unscaled = scalar == 1;
    for (const Entry& en : src.e_) {
      coeff_t c = unscaled ? en.coeff : f.mul(en.coeff, scalar);
      if (c == 0) continue;
      e_.push_back({en.row, c});
      std::push_heap(e_.begin(), e_.end(), row_less);
    }
  }

  void ensure_canonical(const PrimeField& f) {
    if (!heapified_) return;
    std::vector<Entry> out;
    out.reserve(e_.size());
    while (!e_.empty()) {
      row_index_t r = e_.front().row;
      std::uint64_t sum = 0;
      while (!e_.empty() && e_.front().row == r) {
        sum += e_.front().coeff;
        std::pop_heap(e_.begin(), e_.end(), row_less);
        e_.pop_back();
      }
      sum %= f.p();
      if (sum != 0) out.push_back({r, coeff_t(sum)});
    }
    std::reverse(out.begin(), out.end());
    e_ = std::move(out);
    heapified_ = false;
  }

  const std::vector<Entry>& canonical_entries(const PrimeField& f) {
    ensure_canonical(f);
    return e_;
  }

  std::vector<Entry> take() {
    heapified_ = false;
    return std::exchange(e_, {});
  }
  void release() {
    std::vector<Entry>().swap(e_);
    heapified_ = false;
  }

 private:
  static bool row_less(const Entry& a, const Entry& b) { return a.row < b.row; }

  // Combine all top entries sharing the maximal row; re-push the net entry
  // unless it cancels, in which case move on to the next row.
  void consolidate_top(const PrimeField& f) {
    while (!e_.empty()) {
      row_index_t r = e_.front().row;
      std::uint64_t sum = 0;
      while (!e_.empty() && e_.front().row == r) {
        sum += e_.front().coeff;
        std::pop_heap(e_.begin(), e_.end(), row_less);
        e_.pop_back();
      }
      sum %= f.p();
      if (sum != 0) {
        e_.push_back({r, coeff_t(sum)});
        std::push_heap(e_.begin(), e_.end(), row_less);
        return;
      }
    }
  }

  std::vector<Entry> e_;
  bool heapified_ = false;
};

// ---------------------------------------------------------------------------
// The grid sweep. Column grades are coordinate-compressed; the grid is the
// product of the distinct x- and y-values, visited in lex order. At grid
// point z only columns with y-grade z.y and x-grade <= z.x are touched; the
// pivot array carries reduction state across grid points, preferring the
// leftmost column per pivot row.
// ---------------------------------------------------------------------------

template <class Col>
class SweepEngine {
 public:
  SweepEngine(BigradedMatrix m, const SweepRequest& request, const SweepOptions& options)
      : field_(m.field),
        num_rows_(m.num_rows),
        n_(m.num_cols()),
        col_grades_(std::move(m.col_grades)),
        req_(request),
        opts_(options) {
    cols_.resize(std::size_t(n_));
    for (std::int64_t j = 0; j < n_; ++j)
      cols_[std::size_t(j)].adopt(std::move(m.columns[std::size_t(j)].entries));
    if (req_.kernel) {
      aux_.resize(std::size_t(n_));
      for (std::int64_t j = 0; j < n_; ++j)
        aux_[std::size_t(j)].adopt({{row_index_t(j), coeff_t(1)}});
      result_.kernel.ambient_size = n_;
    }
    compress_axes();
  }

  SweepResult run() {
    const std::size_t nx = xs_.size(), ny = ys_.size();
    if (req_.rank_nullity) {
      result_.rank_nullity.xs = xs_;
      result_.rank_nullity.ys = ys_;
      result_.rank_nullity.rank.assign(nx * ny, 0);
      result_.rank_nullity.nullity.assign(nx * ny, 0);
    }
    PivotArray pivs(num_rows_);
    dead_.assign(std::size_t(n_), 0);
    group_end_.assign(ny, 0);
    group_dead_.assign(ny, 0);
    std::vector<std::int64_t> born;

    // cols_leq_y[yi] counts columns with y-grade yi and x-grade <= current x;
    // dead_leq_y[yi] counts those among them already reduced to zero. Both
    // only ever grow, so running prefix sums per x-row give rank/nullity.
    std::vector<std::int64_t> cols_leq_y(ny, 0), dead_leq_y(ny, 0);

    std::vector<Entry> scratch;
    for (std::size_t xi = 0; xi < nx; ++xi) {
      for (std::int64_t j : cols_by_x_[xi]) ++cols_leq_y[std::size_t(col_yi_[std::size_t(j)])];
      std::int64_t running_cols = 0, running_dead = 0;
      for (std::size_t yi = 0; yi < ny; ++yi) {
        const Grade z{xs_[xi], ys_[yi]};
        auto& group = groups_[yi];
        std::size_t begin_new = group_end_[yi];
        while (group_end_[yi] < group.size() &&
               col_xi_[std::size_t(group[group_end_[yi]])] <= std::int64_t(xi))
          ++group_end_[yi];

        if (req_.min_gens) {
          born.assign(group.begin() + std::ptrdiff_t(begin_new),
                      group.begin() + std::ptrdiff_t(group_end_[yi]));
        }

        // Columns stay dead once zeroed but would be revisited at every later
        // x; drop them from the admitted prefix once they are the majority.
        if (group_dead_[yi] * 2 > std::int64_t(group_end_[yi])) {
          std::size_t keep = 0;
          for (std::size_t gi = 0; gi < group_end_[yi]; ++gi)
            if (!dead_[std::size_t(group[gi])]) group[keep++] = group[gi];
          group.erase(group.begin() + std::ptrdiff_t(keep),
                      group.begin() + std::ptrdiff_t(group_end_[yi]));
          group_end_[yi] = keep;
          group_dead_[yi] = 0;
        }

        std::int64_t zeroed_here = 0;
        for (std::size_t gi = 0; gi < group_end_[yi]; ++gi) {
          std::int64_t j = group[gi];
          if (dead_[std::size_t(j)]) continue;
          reduce_column(j, z, pivs, scratch);
          if (cols_[std::size_t(j)].empty(field_)) {
            dead_[std::size_t(j)] = 1;
            ++zeroed_here;
            ++dead_leq_y[yi];
            ++group_dead_[yi];
            if (req_.kernel) {
              aux_[std::size_t(j)].ensure_canonical(field_);
              result_.kernel.elements.push_back(
                  {SparseColumn(aux_[std::size_t(j)].take()), z});
            }
            cols_[std::size_t(j)].release();
          }
        }

        if (req_.beta0 && zeroed_here > 0) result_.beta0.entries.push_back({z, zeroed_here});
        if (req_.min_gens) {
          for (std::int64_t j : born) {
            if (dead_[std::size_t(j)]) continue;
            result_.min_gens.elements.push_back(
                {SparseColumn(cols_[std::size_t(j)].canonical_entries(field_)), z});
          }
        }
        if (req_.rank_nullity) {
          running_cols += cols_leq_y[yi];
          running_dead += dead_leq_y[yi];
          std::int64_t c = result_.rank_nullity.cell(xi, yi);
          result_.rank_nullity.rank[std::size_t(c)] = running_cols - running_dead;
          result_.rank_nullity.nullity[std::size_t(c)] = running_dead;
        }
      }
    }
    if (opts_.stats) opts_.stats->column_additions += result_.stats.column_additions;
    return std::move(result_);
  }

 private:
  void compress_axes() {
    xs_.reserve(std::size_t(n_));
    ys_.reserve(std::size_t(n_));
    for (const Grade& g : col_grades_) {
      xs_.push_back(g.x);
      ys_.push_back(g.y);
    }
    std::sort(xs_.begin(), xs_.end());
    xs_.erase(std::unique(xs_.begin(), xs_.end()), xs_.end());
    std::sort(ys_.begin(), ys_.end());
    ys_.erase(std::unique(ys_.begin(), ys_.end()), ys_.end());

    col_xi_.resize(std::size_t(n_));
    col_yi_.resize(std::size_t(n_));
    groups_.assign(ys_.size(), {});
    cols_by_x_.assign(xs_.size(), {});
    for (std::int64_t j = 0; j < n_; ++j) {
      const Grade& g = col_grades_[std::size_t(j)];
      std::int64_t xi = std::lower_bound(xs_.begin(), xs_.end(), g.x) - xs_.begin();
      std::int64_t yi = std::lower_bound(ys_.begin(), ys_.end(), g.y) - ys_.begin();
      col_xi_[std::size_t(j)] = xi;
      col_yi_[std::size_t(j)] = yi;
      groups_[std::size_t(yi)].push_back(j);  // colex input order: x nondecreasing
      cols_by_x_[std::size_t(xi)].push_back(j);
    }
  }

  void reduce_column(std::int64_t j, Grade z, PivotArray& pivs,
                     std::vector<Entry>& scratch) {
    Col& col = cols_[std::size_t(j)];
    const bool char_two = field_.p() == 2;
    while (true) {
      std::int64_t l = col.pivot(field_);
      if (l < 0) return;
      std::int64_t k = pivs.get(l);
      if (k < 0 || k > j) {
        pivs.set(l, j);
        col.ensure_canonical(field_);
        if (req_.kernel) aux_[std::size_t(j)].ensure_canonical(field_);
        if (req_.grobner)
          result_.grobner.push_back({SparseColumn(col.canonical_entries(field_)), z});
        return;
      }
      if (k == j) return;
      coeff_t scalar =
          char_two
              ? coeff_t(1)
              : field_.neg(field_.mul(col.pivot_coeff(field_),
                                      field_.inv(cols_[std::size_t(k)].pivot_coeff(field_))));
      col.add_scaled(cols_[std::size_t(k)], scalar, field_, scratch);
      if (req_.kernel)
        aux_[std::size_t(j)].add_scaled(aux_[std::size_t(k)], scalar, field_, scratch);
      ++result_.stats.column_additions;
      if (opts_.observer) opts_.observer->on_column_addition_at(k, j, z);
    }
  }

  PrimeField field_;
  std::int64_t num_rows_;
  std::int64_t n_;
  std::vector<Grade> col_grades_;
  SweepRequest req_;
  SweepOptions opts_;

  std::vector<Col> cols_, aux_;
  std::vector<char> dead_;
  std::vector<std::int64_t> xs_, ys_;
  std::vector<std::int64_t> col_xi_, col_yi_;
  std::vector<std::vector<std::int64_t>> groups_;     // columns per y-value
  std::vector<std::vector<std::int64_t>> cols_by_x_;  // columns per x-value
  std::vector<std::size_t> group_end_;                // admitted prefix per group
  std::vector<std::int64_t> group_dead_;              // dead among the prefix
  SweepResult result_;
};

}  // namespace

SweepResult run_bigraded_sweep(BigradedMatrix m, const SweepRequest& request,
                               const SweepOptions& options) {
  for (std::size_t j = 1; j < m.col_grades.size(); ++j)
    if (colex_less(m.col_grades[j], m.col_grades[j - 1]))
      throw ValidationError("grades not colex-sorted (column " + std::to_string(j) + ")");
  if (options.backend == ColumnBackend::lazy_heap)
    return SweepEngine<LazyHeapColumn>(std::move(m), request, options).run();
  return SweepEngine<SortedColumn>(std::move(m), request, options).run();
}

BiRedSubEvents reduce_submatrix_at(BigradedMatrix& r, Grade z, PivotArray& pivs,
                                   BiRedMode mode, BigradedMatrix* aux,
                                   AdditionObserver* observer) {
  if (mode == BiRedMode::kernel && aux == nullptr)
    throw InternalError("kernel mode requires an auxiliary matrix");
  if (aux && aux->num_cols() != r.num_cols())
    throw InternalError("auxiliary matrix column count mismatch");

  BiRedSubEvents ev;
  const PrimeField& f = r.field;
  const bool char_two = f.p() == 2;
  std::vector<Entry> scratch, aux_scratch;
  for (std::int64_t j = 0; j < r.num_cols(); ++j) {
    const Grade& g = r.col_grades[std::size_t(j)];
    if (g.y != z.y || g.x > z.x) continue;
    SparseColumn& col = r.columns[std::size_t(j)];
    const bool was_zero = col.empty();
    while (!col.empty()) {
      std::int64_t l = col.pivot();
      std::int64_t k = pivs.get(l);
      if (k < 0 || k > j) {
        pivs.set(l, j);
        ev.pivot_claims.push_back({l, j});
        break;
      }
      if (k == j) break;
      coeff_t scalar =
          char_two ? coeff_t(1)
                   : f.neg(f.mul(col.pivot_coeff(),
                                 f.inv(r.columns[std::size_t(k)].pivot_coeff())));
      add_multiple_inplace(col, r.columns[std::size_t(k)], scalar, f, scratch);
      if (mode == BiRedMode::kernel)
        add_multiple_inplace(aux->columns[std::size_t(j)], aux->columns[std::size_t(k)],
                             scalar, f, aux_scratch);
      ++ev.column_additions;
      if (observer) observer->on_column_addition_at(k, j, z);
    }
    if (col.empty() && (!was_zero || g == z)) ev.zeroed_columns.push_back(j);
  }
  return ev;
}

Beta0Profile kernel_beta0(BigradedMatrix m, const SweepOptions& options) {
  SweepRequest req;
  req.beta0 = true;
  return run_bigraded_sweep(std::move(m), req, options).beta0;
}

KernelBasis kernel_basis(BigradedMatrix m, const SweepOptions& options) {
  SweepRequest req;
  req.kernel = true;
  return run_bigraded_sweep(std::move(m), req, options).kernel;
}

GeneratorSet minimal_generators(BigradedMatrix m, const SweepOptions& options) {
  SweepRequest req;
  req.min_gens = true;
  return run_bigraded_sweep(std::move(m), req, options).min_gens;
}

std::vector<GradedVector> image_grobner_basis(BigradedMatrix m,
                                              const SweepOptions& options) {
  if (!m.has_row_grades()) throw ValidationError("row grades required");
  SweepRequest req;
  req.grobner = true;
  return run_bigraded_sweep(std::move(m), req, options).grobner;
}

RankNullityTable pointwise_rank_nullity(BigradedMatrix m, const SweepOptions& options) {
  SweepRequest req;
  req.rank_nullity = true;
  return run_bigraded_sweep(std::move(m), req, options).rank_nullity;
}

}  // namespace bipres
