#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <vector>

#include "bipres/bigraded_reduction.hpp"

namespace bipres {

/// Free implicit representation of a bipersistence module M: a pair of
/// bigraded matrices (d2 : F2 -> F1, d1 : F1 -> F0) with d1 * d2 = 0 and
/// M isomorphic to ker d1 / im d2. d2 carries the grades of F1 as row grades;
/// they coincide with d1's column grades. d1 carries no row grades. When F0
/// is trivial, d1 has zero rows and the pair is simply a presentation.
struct FIRep {
  BigradedMatrix d2;
  BigradedMatrix d1;

  const PrimeField& field() const { return d1.field; }

  /// Structural checks plus the chain condition d1 * d2 = 0.
  void validate() const;

  friend bool operator==(const FIRep&, const FIRep&) = default;
};

enum class PresentationKind { semi_minimal, minimal };

/// Labeled matrix presenting a module: rows are generators, columns are
/// relations, both orders compatible with the partial order on Z^2.
/// A minimal presentation has no nonzero entry whose row and column grades
/// are equal.
struct Presentation {
  std::vector<SparseColumn> columns;
  std::vector<Grade> row_grades;
  std::vector<Grade> col_grades;
  PrimeField field;
  PresentationKind kind = PresentationKind::semi_minimal;

  std::int64_t num_rows() const { return std::int64_t(row_grades.size()); }
  std::int64_t num_cols() const { return std::int64_t(columns.size()); }
  void validate() const;

  friend bool operator==(const Presentation&, const Presentation&) = default;
};

using BettiMap = std::map<Grade, std::int64_t, GradeLexLess>;

/// Sparse multisets beta_0, beta_1, beta_2 : Z^2 -> N (only positive counts
/// are stored).
struct BettiTable {
  BettiMap beta0, beta1, beta2;

  friend bool operator==(const BettiTable&, const BettiTable&) = default;
};

/// z -> dim M_z, stored on a finite product grid; values are constant on the
/// cells the grid cuts out, so `at` floors arbitrary grades onto the grid.
struct HilbertFunction {
  std::vector<std::int64_t> xs, ys;
  std::vector<std::int64_t> values;  // size xs.size()*ys.size(), x-major

  std::int64_t cell(std::size_t xi, std::size_t yi) const { return xi * ys.size() + yi; }
  std::int64_t at(Grade z) const;  // 0 below the grid
  std::vector<Grade> grid_points() const;

  friend bool operator==(const HilbertFunction&, const HilbertFunction&) = default;
};

/// Semi-minimal presentation of ker d1 / im d2: expresses a minimal
/// generating set of im d2 in the coordinates of a kernel basis of d1.
/// Row grades are the kernel-basis grades in discovery (lex) order, column
/// grades the generator grades in lex order; the result has at most
/// d1.num_cols() rows and at most d2.num_cols() columns.
/// Throws ValidationError("not a chain complex") when d1 * d2 != 0.
Presentation semi_minimal_presentation(const FIRep& fr,
                                       const SweepOptions& options = {});

/// Minimal presentation of the same module: repeatedly removes pivot pairs
/// whose row and column grades coincide, zeroing the pivot row in later
/// columns first. The elimination of each pivot column is parallelized over
/// target columns; results are identical for every thread count.
Presentation minimize(Presentation p, int threads = 1);

/// (beta0, beta1) read from a semi-minimal presentation: for each grade z the
/// submatrix D^z of rows and columns labeled exactly z contributes
/// beta0(z) = #rows - rank D^z and beta1(z) = #cols - rank D^z.
/// Distinct grades are processed independently (optionally in parallel).
std::pair<BettiMap, BettiMap> betti_from_semi_minimal(const Presentation& p,
                                                      int threads = 1);

/// Hilbert function of ker d1 / im d2 on the grid spanned by the column
/// grades of both matrices: dim M_z = nullity_z(d1) - rank_z(d2).
/// Throws InternalError("chain condition violated") on a negative value.
HilbertFunction hilbert_function(const FIRep& fr, const SweepOptions& options = {});

/// Solves dim M_z = sum_{y<=z} beta0(y) - beta1(y) + beta2(y) for beta2,
/// grade by grade in lex order over the grid of `hf`. All of supp(beta0) and
/// supp(beta1) must lie on that grid. Throws InternalError on a negative
/// solved value ("inconsistent inputs").
BettiMap beta2_from_hilbert(const BettiMap& beta0, const BettiMap& beta1,
                            const HilbertFunction& hf);

/// Reorders equal-grade rows and columns into a canonical order (rows by
/// their entry pattern, then columns by their entry list) so serialized
/// output does not depend on discovery order. The presented module is
/// unchanged.
void canonicalize(Presentation& p);

struct PipelineOptions {
  bool minimal = true;        // minimize the presentation
  bool betti = false;         // compute the Betti table (implies hilbert)
  bool hilbert = false;       // compute the Hilbert function
  int threads = 1;
  SweepOptions sweep;
};

/// Everything the FI-Rep pipeline produces in one pass: min_gens(d2) and
/// kernel_basis(d1) each run exactly once, with pointwise rank/nullity
/// collected along the way when the Hilbert function is wanted.
struct PipelineResult {
  Presentation presentation;
  std::optional<BettiTable> betti;
  std::optional<HilbertFunction> hilbert;
  double semi_minimal_seconds = 0.0;
  double minimize_seconds = 0.0;
  ReductionStats d2_stats, d1_stats;
};

PipelineResult run_pipeline(const FIRep& fr, const PipelineOptions& options = {});

}  // namespace bipres
