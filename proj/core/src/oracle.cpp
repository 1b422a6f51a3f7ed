#include "bipres/oracle.hpp"

#include <algorithm>

#include "bipres/errors.hpp"

namespace bipres {
namespace dense {

namespace {

// Row echelon form by straightforward Gaussian elimination; returns the rank
// and leaves pivot bookkeeping to the caller via `pivot_col_of_row`.
std::int64_t echelonize(Matrix& m, const PrimeField& f,
                        std::vector<std::int64_t>* pivot_col_of_row = nullptr) {
  std::int64_t rank = 0;
  for (std::int64_t col = 0; col < m.cols && rank < m.rows; ++col) {
    std::int64_t pivot = -1;
    for (std::int64_t r = rank; r < m.rows; ++r)
      if (m.at(r, col) != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) continue;
    if (pivot != rank)
      for (std::int64_t c = 0; c < m.cols; ++c) std::swap(m.a[std::size_t(pivot * m.cols + c)],
                                                          m.a[std::size_t(rank * m.cols + c)]);
    coeff_t inv = f.inv(m.at(rank, col));
    for (std::int64_t c = col; c < m.cols; ++c)
      m.at(rank, c) = f.mul(m.at(rank, c), inv);
    for (std::int64_t r = 0; r < m.rows; ++r) {
      if (r == rank || m.at(r, col) == 0) continue;
      coeff_t factor = m.at(r, col);
      for (std::int64_t c = col; c < m.cols; ++c)
        m.at(r, c) = f.sub(m.at(r, c), f.mul(factor, m.at(rank, c)));
    }
    if (pivot_col_of_row) pivot_col_of_row->push_back(col);
    ++rank;
  }
  return rank;
}

}  // namespace

std::int64_t rank(Matrix m, const PrimeField& field) { return echelonize(m, field); }

Matrix null_space(const Matrix& m, const PrimeField& field) {
  Matrix work = m;
  std::vector<std::int64_t> pivot_cols;
  std::int64_t rk = echelonize(work, field, &pivot_cols);

  std::vector<char> is_pivot(std::size_t(m.cols), 0);
  for (std::int64_t c : pivot_cols) is_pivot[std::size_t(c)] = 1;

  Matrix basis(m.cols, m.cols - rk);
  std::int64_t out_col = 0;
  for (std::int64_t free_col = 0; free_col < m.cols; ++free_col) {
    if (is_pivot[std::size_t(free_col)]) continue;
    basis.at(free_col, out_col) = 1;
    for (std::int64_t r = 0; r < rk; ++r) {
      coeff_t v = work.at(r, free_col);
      if (v != 0) basis.at(pivot_cols[std::size_t(r)], out_col) = field.neg(v);
    }
    ++out_col;
  }
  return basis;
}

bool solve(Matrix m, std::vector<coeff_t> b, std::vector<coeff_t>& x,
           const PrimeField& field) {
  Matrix aug(m.rows, m.cols + 1);
  for (std::int64_t r = 0; r < m.rows; ++r) {
    for (std::int64_t c = 0; c < m.cols; ++c) aug.at(r, c) = m.at(r, c);
    aug.at(r, m.cols) = b[std::size_t(r)];
  }
  std::vector<std::int64_t> pivot_cols;
  echelonize(aug, field, &pivot_cols);

  x.assign(std::size_t(m.cols), 0);
  for (std::size_t r = 0; r < pivot_cols.size(); ++r) {
    if (pivot_cols[r] == m.cols) return false;  // pivot in the augmented column
    x[std::size_t(pivot_cols[r])] = aug.at(std::int64_t(r), m.cols);
  }
  return true;
}

Matrix multiply(const Matrix& l, const Matrix& r, const PrimeField& field) {
  Matrix out(l.rows, r.cols);
  for (std::int64_t i = 0; i < l.rows; ++i)
    for (std::int64_t k = 0; k < l.cols; ++k) {
      coeff_t v = l.at(i, k);
      if (v == 0) continue;
      for (std::int64_t j = 0; j < r.cols; ++j)
        out.at(i, j) = field.add(out.at(i, j), field.mul(v, r.at(k, j)));
    }
  return out;
}

}  // namespace dense

namespace {

// Dense submatrix of the columns of `m` with grade <= z, embedded in K^rows.
dense::Matrix columns_leq(const BigradedMatrix& m, Grade z,
                          std::vector<std::int64_t>* selected = nullptr) {
  std::vector<std::int64_t> sel;
  for (std::int64_t j = 0; j < m.num_cols(); ++j)
    if (leq(m.col_grades[std::size_t(j)], z)) sel.push_back(j);
  dense::Matrix out(m.num_rows, std::int64_t(sel.size()));
  for (std::size_t c = 0; c < sel.size(); ++c)
    for (const Entry& e : m.columns[std::size_t(sel[c])].entries)
      out.at(e.row, std::int64_t(c)) = e.coeff;
  if (selected) *selected = std::move(sel);
  return out;
}

}  // namespace

DenseSliceOracle::DenseSliceOracle(const FIRep& fr) : fr_(fr), field_(fr.field()) {}

const DenseSliceOracle::Slice& DenseSliceOracle::slice_at(Grade z) {
  auto key = std::make_pair(z.x, z.y);
  auto it = slices_.find(key);
  if (it != slices_.end()) return it->second;

  const std::int64_t b = fr_.d1.num_cols();
  Slice slice;

  // Kernel of d1 restricted to columns of grade <= z, embedded in K^b.
  std::vector<std::int64_t> selected;
  dense::Matrix restricted = columns_leq(fr_.d1, z, &selected);
  dense::Matrix kernel = dense::null_space(restricted, field_);
  std::vector<std::vector<coeff_t>> kernel_vectors;
  for (std::int64_t c = 0; c < kernel.cols; ++c) {
    std::vector<coeff_t> v(std::size_t(b), 0);
    for (std::int64_t r = 0; r < kernel.rows; ++r)
      v[std::size_t(selected[std::size_t(r)])] = kernel.at(r, c);
    kernel_vectors.push_back(std::move(v));
  }

  // Greedy column reduction of [image columns | kernel basis]: image columns
  // that add a new pivot form the image basis, kernel vectors that still add
  // one complete it to a basis of ker(d1)_z and represent M_z.
  std::vector<std::vector<coeff_t>> reduced_seen;  // echelon columns kept so far
  std::vector<std::int64_t> pivot_rows;
  auto try_insert = [&](const std::vector<coeff_t>& v) {
    std::vector<coeff_t> w = v;
    for (std::size_t s = 0; s < reduced_seen.size(); ++s) {
      std::int64_t p = pivot_rows[s];
      if (w[std::size_t(p)] == 0) continue;
      coeff_t factor = w[std::size_t(p)];
      for (std::int64_t r = 0; r < b; ++r)
        w[std::size_t(r)] = field_.sub(w[std::size_t(r)],
                                       field_.mul(factor, reduced_seen[s][std::size_t(r)]));
    }
    std::int64_t pivot = -1;
    for (std::int64_t r = b - 1; r >= 0; --r)
      if (w[std::size_t(r)] != 0) {
        pivot = r;
        break;
      }
    if (pivot < 0) return false;
    coeff_t inv = field_.inv(w[std::size_t(pivot)]);
    for (std::int64_t r = 0; r < b; ++r) w[std::size_t(r)] = field_.mul(w[std::size_t(r)], inv);
    reduced_seen.push_back(std::move(w));
    pivot_rows.push_back(pivot);
    return true;
  };

  for (std::int64_t j = 0; j < fr_.d2.num_cols(); ++j) {
    if (!leq(fr_.d2.col_grades[std::size_t(j)], z)) continue;
    std::vector<coeff_t> v(std::size_t(b), 0);
    for (const Entry& e : fr_.d2.columns[std::size_t(j)].entries) v[e.row] = e.coeff;
    if (try_insert(v)) slice.image_basis.push_back(std::move(v));
  }
  for (auto& v : kernel_vectors)
    if (try_insert(v)) slice.complement_basis.push_back(std::move(v));

  return slices_.emplace(key, std::move(slice)).first->second;
}

std::vector<coeff_t> DenseSliceOracle::express(const std::vector<coeff_t>& w,
                                               const Slice& s) {
  const std::int64_t b = fr_.d1.num_cols();
  const std::int64_t ni = std::int64_t(s.image_basis.size());
  const std::int64_t nc = std::int64_t(s.complement_basis.size());
  dense::Matrix system(b, ni + nc);
  for (std::int64_t c = 0; c < ni; ++c)
    for (std::int64_t r = 0; r < b; ++r)
      system.at(r, c) = s.image_basis[std::size_t(c)][std::size_t(r)];
  for (std::int64_t c = 0; c < nc; ++c)
    for (std::int64_t r = 0; r < b; ++r)
      system.at(r, ni + c) = s.complement_basis[std::size_t(c)][std::size_t(r)];
  std::vector<coeff_t> x;
  if (!dense::solve(std::move(system), w, x, field_))
    throw InternalError("vector not in the expected kernel slice");
  return {x.begin() + ni, x.end()};
}

std::int64_t DenseSliceOracle::dim_at(Grade z) {
  return std::int64_t(slice_at(z).complement_basis.size());
}

std::array<std::int64_t, 3> DenseSliceOracle::betti_at(Grade z) {
  const Grade z11{z.x - 1, z.y - 1}, z10{z.x - 1, z.y}, z01{z.x, z.y - 1};
  // Map references are stable across later insertions, so materialize all
  // four slices up front and hold references.
  std::int64_t d11 = dim_at(z11), d10 = dim_at(z10), d01 = dim_at(z01), dz = dim_at(z);
  const Slice& s11 = slice_at(z11);
  const Slice& s10 = slice_at(z10);
  const Slice& s01 = slice_at(z01);
  const Slice& sz = slice_at(z);

  // k2 : M_{z-(1,1)} -> M_{z-(1,0)} (+) M_{z-(0,1)}, m |-> (t2 m, -t1 m).
  dense::Matrix k2(d10 + d01, d11);
  for (std::int64_t c = 0; c < d11; ++c) {
    std::vector<coeff_t> up = express(s11.complement_basis[std::size_t(c)], s10);
    for (std::int64_t r = 0; r < d10; ++r) k2.at(r, c) = up[std::size_t(r)];
    std::vector<coeff_t> right = express(s11.complement_basis[std::size_t(c)], s01);
    for (std::int64_t r = 0; r < d01; ++r)
      k2.at(d10 + r, c) = field_.neg(right[std::size_t(r)]);
  }

  // k1 : M_{z-(1,0)} (+) M_{z-(0,1)} -> M_z, (a, b) |-> t1 a + t2 b.
  dense::Matrix k1(dz, d10 + d01);
  for (std::int64_t c = 0; c < d10; ++c) {
    std::vector<coeff_t> coords = express(s10.complement_basis[std::size_t(c)], sz);
    for (std::int64_t r = 0; r < dz; ++r) k1.at(r, c) = coords[std::size_t(r)];
  }
  for (std::int64_t c = 0; c < d01; ++c) {
    std::vector<coeff_t> coords = express(s01.complement_basis[std::size_t(c)], sz);
    for (std::int64_t r = 0; r < dz; ++r) k1.at(r, d10 + c) = coords[std::size_t(r)];
  }

  std::int64_t rank_k1 = dense::rank(std::move(k1), field_);
  std::int64_t rank_k2 = dense::rank(std::move(k2), field_);
  std::int64_t beta0 = dz - rank_k1;
  std::int64_t beta1 = (d10 + d01 - rank_k1) - rank_k2;
  std::int64_t beta2 = d11 - rank_k2;
  return {beta0, beta1, beta2};
}

HilbertFunction oracle_hilbert(const FIRep& fr, std::span<const Grade> grid) {
  HilbertFunction hf;
  for (const Grade& g : grid) {
    hf.xs.push_back(g.x);
    hf.ys.push_back(g.y);
  }
  std::sort(hf.xs.begin(), hf.xs.end());
  hf.xs.erase(std::unique(hf.xs.begin(), hf.xs.end()), hf.xs.end());
  std::sort(hf.ys.begin(), hf.ys.end());
  hf.ys.erase(std::unique(hf.ys.begin(), hf.ys.end()), hf.ys.end());
  hf.values.assign(hf.xs.size() * hf.ys.size(), 0);

  const PrimeField& f = fr.field();
  for (std::size_t xi = 0; xi < hf.xs.size(); ++xi)
    for (std::size_t yi = 0; yi < hf.ys.size(); ++yi) {
      Grade z{hf.xs[xi], hf.ys[yi]};
      dense::Matrix d1 = columns_leq(fr.d1, z);
      dense::Matrix d2 = columns_leq(fr.d2, z);
      std::int64_t nullity = d1.cols - dense::rank(std::move(d1), f);
      std::int64_t value = nullity - dense::rank(std::move(d2), f);
      hf.values[std::size_t(hf.cell(xi, yi))] = value;
    }
  return hf;
}

std::vector<Grade> oracle_default_grid(const FIRep& fr) {
  std::vector<Grade> points;
  points.reserve(2 * (fr.d1.col_grades.size() + fr.d2.col_grades.size()));
  for (const Grade& g : fr.d1.col_grades) {
    points.push_back(g);
    points.push_back({g.x + 1, g.y + 1});
  }
  for (const Grade& g : fr.d2.col_grades) {
    points.push_back(g);
    points.push_back({g.x + 1, g.y + 1});
  }
  return grid_closure(points);
}

BettiTable oracle_betti(const FIRep& fr, std::span<const Grade> grid) {
  std::vector<std::int64_t> xs, ys;
  for (const Grade& g : grid) {
    xs.push_back(g.x);
    ys.push_back(g.y);
  }
  std::sort(xs.begin(), xs.end());
  xs.erase(std::unique(xs.begin(), xs.end()), xs.end());
  std::sort(ys.begin(), ys.end());
  ys.erase(std::unique(ys.begin(), ys.end()), ys.end());

  // The grid must contain every generator/relation grade and its (1,1)
  // translate; the Betti support lies inside that grid.
  auto covered = [&](const Grade& g) {
    return std::binary_search(xs.begin(), xs.end(), g.x) &&
           std::binary_search(xs.begin(), xs.end(), g.x + 1) &&
           std::binary_search(ys.begin(), ys.end(), g.y) &&
           std::binary_search(ys.begin(), ys.end(), g.y + 1);
  };
  for (const Grade& g : fr.d1.col_grades)
    if (!covered(g)) throw ValidationError("grid does not cover Betti support");
  for (const Grade& g : fr.d2.col_grades)
    if (!covered(g)) throw ValidationError("grid does not cover Betti support");

  DenseSliceOracle oracle(fr);
  BettiTable table;
  for (std::int64_t x : xs)
    for (std::int64_t y : ys) {
      auto [b0, b1, b2] = oracle.betti_at({x, y});
      if (b0 > 0) table.beta0[{x, y}] = b0;
      if (b1 > 0) table.beta1[{x, y}] = b1;
      if (b2 > 0) table.beta2[{x, y}] = b2;
    }
  return table;
}

}  // namespace bipres
