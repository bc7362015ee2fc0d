#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hlim/barlim.hpp"
#include "hlim/gmodules.hpp"

namespace hlim {

enum class Provenance { BarComplex, ShortcutOp, ShortcutSylowP, SubgroupComplex };
std::string to_string(Provenance p);

/// Dimensions of Lambda^i for 0 <= i < dims.size(), each tagged with how it
/// was obtained.
struct LambdaResult {
  std::vector<std::size_t> dims;
  std::vector<Provenance> provenance;
  bool is_zero() const;
};

// In every function below the group is m.group() and the prime is m.p().

/// Higher limits of the atomic functor of m over the skeleton of the
/// p-orbit category.
LambdaResult lambda(const FpGModule& m, std::size_t n_degrees, EngineOptions options = {});
/// Cohomology of Hom_G(C~_{*-1}(S), M) for the poset S of nontrivial
/// p-subgroups, the empty chain in degree 0. Small where the bar complex is
/// not: a cochain is an equivariant function on chains, stored through its
/// values on orbit representatives.
LambdaResult lambda_subgroup_complex(const FpGModule& m, std::size_t n_degrees);
/// Same over the orbit category on `objects`, which must be a
/// conjugation-closed list of p-subgroups containing the trivial subgroup.
LambdaResult lambda_X(const FpGModule& m, const std::vector<Subgroup>& objects, std::size_t n_degrees,
                      EngineOptions options = {});
/// One subgroup per conjugacy class under `group`, a member of `preferred`
/// where the class has one, ordered by subgroup order.
std::vector<Subgroup> class_representatives(const Subgroup& group, const std::vector<Subgroup>& objects,
                                            const std::vector<Subgroup>& preferred = {});
/// The atomic functor itself, on the skeleton of the orbit category on `objects`.
CatModule lambda_functor(const FpGModule& m, const std::vector<Subgroup>& objects);

/// All zeros when the group has a nontrivial normal p-subgroup.
std::optional<LambdaResult> shortcut_Op_vanishing(const FpGModule& m, std::size_t n_degrees);
/// Lambda^0 from compatible families: zero when p divides the group order,
/// the invariants otherwise.
std::size_t lambda0_direct(const FpGModule& m);
/// For a Sylow p-subgroup S of order p: Lambda^1 = Fix_{N(S)} M / Fix_G M and
/// nothing in degrees >= 2. Throws ValidationError when |S| != p.
LambdaResult lambda1_sylow_order_p(const FpGModule& m, std::size_t n_degrees);
/// Shortcut when one applies, bar complex otherwise.
LambdaResult lambda_auto(const FpGModule& m, std::size_t n_degrees, EngineOptions options = {});

/// Functor on an orbit category whose object `q` is alone in its conjugacy
/// class: value V at q, zero elsewhere, [g] in Mor(q, q) acting by g^-1. V is
/// a module over the normalizer of the subgroup on which that subgroup acts
/// trivially.
CatModule atomic_functor_at(const OrbitPtr& c, Obj q, const FpGModule& v);

/// Transport of the functor concentrated at Q with value V over O_X(G) to
/// the orbit category of N_G(Q)/Q on Y = {P/Q : Q normal in P in X}.
struct AtomicReduction {
  Quotient quotient;
  std::vector<Subgroup> y;  // subgroups of quotient.group
  FpGModule module;         // V over the quotient
};
/// Throws ValidationError if Q is not in X, X is not conjugation-closed, V is
/// not a module over N_G(Q) with Q acting trivially, or some P in X above Q
/// has N_P(Q) outside X.
AtomicReduction reduce_atomic(const Subgroup& group, const std::vector<Subgroup>& x, const Subgroup& q,
                              const FpGModule& v);
/// Both sides of the reduction: higher limits over O_X(G) and over O_Y(N_G(Q)/Q).
struct ReductionSides {
  LimitsResult original;
  LimitsResult reduced;
};
ReductionSides reduction_sides(const Subgroup& group, const std::vector<Subgroup>& x, const Subgroup& q,
                               const FpGModule& v, std::size_t n_degrees);

struct CentralizerVanishing {
  bool applicable = false;
  Elt witness = 0;  // an element of order p acting trivially
  LambdaResult lambda;
  bool holds = true;
};
/// If the kernel of the action has an element of order p, computes Lambda by
/// the bar complex and records whether it vanishes.
CentralizerVanishing verify_centralizer_vanishing(const FpGModule& m, std::size_t n_degrees);

struct VanishingBound {
  std::size_t sylow_exponent = 0;  // |S| = p^n
  LambdaResult lambda;
  bool holds = true;  // Lambda^i = 0 for n < i
};
VanishingBound vanishing_bound_check(const FpGModule& m, std::size_t n_degrees, EngineOptions options = {});

}  // namespace hlim
