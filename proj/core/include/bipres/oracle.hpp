#pragma once

#include <array>
#include <cstdint>
#include <map>
#include <span>
#include <vector>

#include "bipres/presentation.hpp"

namespace bipres {
namespace dense {

/// Dense row-major matrix over Z/p. Deliberately naive: this is the
/// brute-force reference the sparse engine is checked against, so it shares
/// no code with the column-sparse reduction.
struct Matrix {
  std::int64_t rows = 0, cols = 0;
  std::vector<coeff_t> a;

  Matrix() = default;
  Matrix(std::int64_t r, std::int64_t c) : rows(r), cols(c), a(std::size_t(r * c), 0) {}

  coeff_t& at(std::int64_t r, std::int64_t c) { return a[std::size_t(r * cols + c)]; }
  coeff_t at(std::int64_t r, std::int64_t c) const { return a[std::size_t(r * cols + c)]; }
};

std::int64_t rank(Matrix m, const PrimeField& field);

/// Columns form a basis of {v : m v = 0}.
Matrix null_space(const Matrix& m, const PrimeField& field);

/// Solves m x = b; `b` has m.rows entries. Returns true and fills `x`
/// (m.cols entries) when a solution exists.
bool solve(Matrix m, std::vector<coeff_t> b, std::vector<coeff_t>& x,
           const PrimeField& field);

Matrix multiply(const Matrix& l, const Matrix& r, const PrimeField& field);

}  // namespace dense

/// Pointwise dense view of the module M = ker d1 / im d2 presented by an
/// FI-Rep: for any grade z it materializes a basis of M_z as a complement of
/// im(d2)_z inside ker(d1)_z, all by dense Gaussian elimination, and can
/// express arbitrary kernel vectors in that basis. Slices are memoized.
class DenseSliceOracle {
 public:
  explicit DenseSliceOracle(const FIRep& fr);

  std::int64_t dim_at(Grade z);

  /// (beta0, beta1, beta2) at z from the two-variable Koszul complex
  ///   M_{z-(1,1)} --k2--> M_{z-(1,0)} (+) M_{z-(0,1)} --k1--> M_z
  /// with k2(m) = (t2 m, -t1 m) and k1(a, b) = t1 a + t2 b:
  /// beta0 = dim coker k1, beta1 = dim ker k1 - rank k2, beta2 = dim ker k2.
  std::array<std::int64_t, 3> betti_at(Grade z);

 private:
  struct Slice {
    std::vector<std::vector<coeff_t>> image_basis;       // vectors in K^b
    std::vector<std::vector<coeff_t>> complement_basis;  // vectors in K^b
  };

  const Slice& slice_at(Grade z);
  /// Coordinates of w (a vector of ker(d1)_z) in the complement basis at z.
  std::vector<coeff_t> express(const std::vector<coeff_t>& w, const Slice& s);

  const FIRep& fr_;
  PrimeField field_;
  std::map<std::pair<std::int64_t, std::int64_t>, Slice> slices_;
};

/// dim M_z at every point of the product grid spanned by `grid`, by dense
/// elimination per grid point, independent of the sparse pipeline.
HilbertFunction oracle_hilbert(const FIRep& fr, std::span<const Grade> grid);

/// Betti numbers at every point of the product grid spanned by `grid`.
/// `grid` must cover the support of all three Betti functions; passing
/// oracle_default_grid(fr) always satisfies this. Throws
/// ValidationError("grid does not cover Betti support") otherwise.
BettiTable oracle_betti(const FIRep& fr, std::span<const Grade> grid);

/// Grid of all generator and relation grades together with their (1,1)
/// translates: a grid guaranteed to cover the Betti support.
std::vector<Grade> oracle_default_grid(const FIRep& fr);

}  // namespace bipres
