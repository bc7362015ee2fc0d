#pragma once

#include <functional>
#include <memory>
#include <string>
#include <vector>

#include "hlim/category.hpp"
#include "hlim/group.hpp"
#include "hlim/group_ops.hpp"
#include "hlim/matrix.hpp"
#include "hlim/orbit_category.hpp"

namespace hlim {

/// Finite-dimensional F_p representation of a subgroup of an enumerated
/// group. Element matrices are tabulated on construction, which also checks
/// that the generator matrices define a homomorphism (left action:
/// rho(gh) = rho(g) rho(h)).
class FpGModule {
 public:
  FpGModule() = default;
  /// `generators[i]` acts as group.generators()[i].
  FpGModule(Subgroup group, Fp p, std::size_t dim, std::vector<FpMatrix> generators);
  /// Element-wise definition; every product is checked.
  static FpGModule from_elements(Subgroup group, Fp p, std::size_t dim, const std::function<FpMatrix(Elt)>& rho);
  static FpGModule trivial(Subgroup group, Fp p, std::size_t dim);
  /// Permutation module on the points moved by the ambient permutations.
  static FpGModule permutation(Subgroup group, Fp p);

  const Subgroup& group() const { return group_; }
  Fp p() const { return p_; }
  std::size_t dim() const { return dim_; }
  const FpMatrix& matrix(Elt g) const;
  FpGModule restrict(const Subgroup& h) const;

 private:
  Subgroup group_;
  Fp p_ = 2;
  std::size_t dim_ = 0;
  std::vector<FpMatrix> elems_;  // indexed by table element; empty outside the group
};

/// Columns form a basis of the H-fixed vectors (kernel of the stacked
/// h - 1 over generators of H, reduced to echelon form).
FpMatrix fixed_points(const FpGModule& m, const Subgroup& h);
/// Kernel of the action.
Subgroup centralizer_of_module(const FpGModule& m);
/// Outer tensor product over a direct product: (a, b) acts as rho(a) (x) sigma(b).
FpGModule outer_tensor(const DirectProduct& d, const FpGModule& left, const FpGModule& right);
/// Module of a group pulled back along a surjection onto the module's group,
/// given elementwise as `image`.
FpGModule pullback_module(const Subgroup& g, const FpGModule& m, const std::function<Elt(Elt)>& image);

using CategoryPtr = std::shared_ptr<const FiniteCategory>;
using OrbitPtr = std::shared_ptr<const OrbitCategory>;

/// Contravariant functor from a finite category to F_p-vector spaces. The
/// matrix of f : c -> d maps the value at d to the value at c, so it has
/// dim(c) rows and dim(d) columns.
class CatModule {
 public:
  CatModule(CategoryPtr category, Fp p, std::vector<std::size_t> dims, std::vector<FpMatrix> maps);

  const FiniteCategory& category() const { return *cat_; }
  const CategoryPtr& category_ptr() const { return cat_; }
  Fp p() const { return p_; }
  std::size_t dim(Obj c) const { return dims_[c]; }
  const std::vector<std::size_t>& dims() const { return dims_; }
  const FpMatrix& map(Mor f) const { return maps_[f]; }
  bool is_zero() const;

 private:
  CategoryPtr cat_;
  Fp p_;
  std::vector<std::size_t> dims_;
  std::vector<FpMatrix> maps_;
};

struct FunctorialityReport {
  bool ok = true;
  bool exhaustive = true;
  std::size_t pairs_checked = 0;
  std::string first_failure;
};
/// map(g o f) = map(f) map(g) and identities to identities; exhaustive up to
/// `exhaustive_pairs` composable pairs, sampled above.
FunctorialityReport check_functoriality(const CatModule& phi, std::size_t exhaustive_pairs = 10000,
                                        std::size_t samples = 100000, std::uint64_t seed = 7);

/// M at the trivial subgroup, 0 elsewhere; [g] in Mor(1,1) acts by g^-1.
CatModule atomic_functor(const OrbitPtr& c, const FpGModule& m);
/// P -> Fix_P M; [g] : P -> Q is inclusion Fix_Q M -> Fix_{gPg^-1} M followed by g^-1.
CatModule fixedpoint_functor(const OrbitPtr& c, const FpGModule& m);
/// d -> maps(Mor(c, d), F_p^m0), with f : d -> d' acting by u -> u(f o -).
CatModule coinduced_functor(const CategoryPtr& c, Obj source, Fp p, std::size_t m0);
CatModule constant_functor(const CategoryPtr& c, Fp p, std::size_t d);
/// Pullback along a functor given by object and morphism maps from `domain`.
CatModule pullback(const CatModule& phi, const CategoryPtr& domain, const std::vector<Obj>& object_map,
                   const std::vector<Mor>& morphism_map);
/// Restriction to the full subcategory on `objects` (must be conjugation-closed).
CatModule restrict_functor(const CatModule& phi, const std::vector<Obj>& objects);
/// Restriction along a full subcategory built over the same group.
CatModule restrict_to(const CatModule& phi, const OrbitPtr& sub);
/// Composite with the quotient functor O_X(G) -> O_Y(G/H); `x` must map into the objects of phi_bar's category.
CatModule pullback_along_quotient(const CatModule& phi_bar, const Quotient& q, const OrbitPtr& x);

struct NatTransformations {
  std::size_t dimension = 0;
  std::size_t unknowns = 0;
};
/// Dimension of Hom(phi, psi) in the functor category.
NatTransformations nat_transformations(const CatModule& phi, const CatModule& psi);

}  // namespace hlim
