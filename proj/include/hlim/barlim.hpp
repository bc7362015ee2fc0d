#pragma once

#include <cstdint>
#include <functional>
#include <memory>
#include <unordered_map>
#include <utility>
#include <vector>

#include "hlim/category.hpp"
#include "hlim/gmodules.hpp"
#include "hlim/matrix.hpp"
#include "hlim/orbit_category.hpp"

namespace hlim {

/// Sparse vector as (index, nonzero coefficient) pairs sorted by index.
using SparseVec = std::vector<std::pair<std::uint64_t, Fp>>;

/// Column-stored sparse matrix over F_p.
class SparseMatrix {
 public:
  SparseMatrix(std::size_t rows, std::size_t cols, Fp p) : rows_(rows), p_(p), cols_(cols) {}
  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_.size(); }
  Fp p() const { return p_; }
  SparseVec& column(std::size_t c) { return cols_[c]; }
  const SparseVec& column(std::size_t c) const { return cols_[c]; }
  /// Sorts every column and merges repeated indices.
  void normalize();
  /// Gaussian elimination on copies of the columns (no clearing, no heuristics).
  std::size_t rank() const;
  SparseVec apply(const SparseVec& v) const;
  bool product_is_zero(const SparseMatrix& first) const;  // (*this) * first == 0
  FpMatrix to_dense() const;

 private:
  std::size_t rows_;
  Fp p_;
  std::vector<SparseVec> cols_;
};

/// Sorted, merged copy of an arbitrary list of entries.
SparseVec consolidate(SparseVec v, Fp p);

/// Graded cochain complex: d[n] maps degree n to degree n+1.
struct CochainComplex {
  Fp p = 2;
  std::vector<std::size_t> dims;
  std::vector<SparseMatrix> d;
  bool composites_vanish() const;
};

/// Dimensions of lim^i for 0 <= i <= max_degree.
struct LimitsResult {
  std::vector<std::size_t> dims;
  std::size_t max_degree = 0;
  bool operator==(const LimitsResult&) const = default;
};

/// C^n = product over n-chains c0 -> ... -> cn of phi(c0), for 0 <= n <= top,
/// built row by row from the face maps. With `normalized`, only chains free
/// of identity morphisms appear.
CochainComplex bar_complex(const CatModule& phi, std::size_t top, bool normalized);
/// Cohomology of an explicit complex in degrees below its top degree.
LimitsResult cohomology(const CochainComplex& c);

enum class PivotRule { MaxRowAscending, MinRowDescending };

struct EngineOptions {
  PivotRule pivot = PivotRule::MaxRowAscending;
  bool clearing = true;
  std::size_t chain_cap = 0;  // 0: take the process-wide cap
};

/// Cohomology of the normalized bar complex with the coboundary matrix never
/// materialized: columns are generated from the chain index on demand, and a
/// reduced column is stored only as the combination of cells that produced it.
class BarCohomology {
 public:
  /// Cohomology in degrees 0..top (chains up to length top + 1).
  BarCohomology(const CatModule& phi, std::size_t top, EngineOptions options = {});

  std::size_t top() const { return top_; }
  Fp p() const { return p_; }
  const CatModule& functor() const { return *phi_; }
  const ChainIndex& chains() const { return *chains_; }
  std::uint64_t cochain_dim(std::size_t n) const { return cells_[n]; }
  std::uint64_t rank(std::size_t n) const { return rank_[n]; }  // rank of d^n
  std::size_t dim(std::size_t n) const;
  LimitsResult result() const;

  /// Cell of chain index `idx` (length n) and coordinate k of phi(c0).
  std::uint64_t cell(std::size_t n, std::uint64_t idx, Obj c0, std::size_t k) const {
    return base_[n][c0] + (idx - chains_->first(n, c0)) * phi_->dim(c0) + k;
  }
  struct CellInfo {
    Obj c0;
    std::uint64_t idx;
    std::size_t k;
  };
  CellInfo locate(std::size_t n, std::uint64_t cell) const;

  /// The coboundary of a single cell, unsorted with possible repeats.
  void coboundary(std::size_t n, std::uint64_t cell, Fp coeff, SparseVec& out) const;
  SparseVec coboundary(std::size_t n, const SparseVec& cochain) const;

  /// Cocycles whose classes form a basis of H^n (requires n <= top).
  const std::vector<SparseVec>& representatives(std::size_t n) const { return reps_[n]; }
  /// Coordinates of the class of a cocycle in the basis of representatives(n).
  /// Throws ValidationError if `cocycle` is not a cocycle.
  std::vector<Fp> class_of(std::size_t n, const SparseVec& cocycle) const;

 private:
  struct Pivot {
    std::uint64_t column;
    Fp coeff;
  };
  struct Degree {
    std::unordered_map<std::uint64_t, Pivot> pivot_of_row;
    std::unordered_map<std::uint64_t, SparseVec> combination;  // only when not the unit vector
  };
  void reduce(std::size_t n);
  SparseVec reduced_column(std::size_t n, std::uint64_t column) const;  // d^n applied to its combination
  SparseVec combination_of(std::size_t n, std::uint64_t column) const;

  std::shared_ptr<const CatModule> phi_;
  std::size_t top_;
  Fp p_;
  EngineOptions opt_;
  std::unique_ptr<ChainIndex> chains_;
  std::vector<std::vector<std::uint64_t>> base_;  // base_[n][c], size num_objects + 1
  std::vector<std::uint64_t> cells_;
  std::vector<std::vector<Mor>> in_;                            // non-identity morphisms into c from start objects
  std::vector<std::vector<std::pair<Mor, Mor>>> factorizations_;  // f = b o a, both non-identity
  std::vector<Degree> deg_;
  std::vector<std::uint64_t> rank_;
  std::vector<std::vector<std::uint64_t>> essential_;
  std::vector<std::vector<SparseVec>> reps_;
};

/// A functor F from the indexing category of `small` to that of `big`,
/// with maps eta_c : big(F c) -> small(c) natural in c. Pulling back along
/// it sends big cochains to small ones.
struct CochainMap {
  std::vector<Obj> objects;            // per small object
  std::vector<Mor> morphisms;          // per small morphism
  std::vector<FpMatrix> coefficients;  // per small object, dim_small(c) x dim_big(F c)
};
/// (F^* z)(c0 -> ... -> cn) = eta_c0 z(F c0 -> ... -> F cn).
SparseVec pull_back(const BarCohomology& big, const BarCohomology& small, std::size_t n, const CochainMap& f,
                    const SparseVec& z);
/// H^n(big) -> H^n(small) in the bases of representatives (rows: small).
FpMatrix induced_map(const BarCohomology& big, const BarCohomology& small, std::size_t n, const CochainMap& f);

/// Cochain map along an injective homomorphism `up` from the group of
/// `small` into the group of `big`. An object L goes to the object R of
/// `big` with x R x^-1 = up(L) for some x in big's group (x = 1 when up(L) is
/// itself an object), [y] : L -> L' goes to [x'^-1 up(y) x], and
/// coefficient(L, R, x) supplies eta_L : big(R) -> small(L).
CochainMap orbit_cochain_map(const OrbitCategory& small, const OrbitCategory& big, const std::function<Elt(Elt)>& up,
                             const std::function<FpMatrix(Obj, Obj, Elt)>& coefficient);

/// dim lim^i for 0 <= i < n_degrees (chains up to length n_degrees).
LimitsResult higher_limits(const CatModule& phi, std::size_t n_degrees, EngineOptions options = {});

/// Compatible families (x_c) with phi(f) x_d = x_c, solved as one linear system.
struct Lim0 {
  std::size_t dimension = 0;
  FpMatrix basis;  // columns are families, stacked over objects
};
Lim0 lim0_direct(const CatModule& phi);

}  // namespace hlim
