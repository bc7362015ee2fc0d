#pragma once

#include <optional>
#include <string>
#include <vector>

#include "hlim/category.hpp"
#include "hlim/group.hpp"

namespace hlim {

/// Orbit category of `group` on a set of its subgroups. A morphism H -> K is
/// a coset Kg with gHg^-1 <= K, stored by its least element; composing
/// Lx after Kg gives L(xg).
class OrbitCategory : public FiniteCategory {
 public:
  /// With `close`, the object list is replaced by its conjugation closure
  /// under `group`, sorted by (order, elements). Without it the list is used
  /// as given (a full subcategory, not necessarily conjugation-closed).
  OrbitCategory(Subgroup group, std::vector<Subgroup> objects, bool close = true);

  const Subgroup& group() const { return group_; }
  const GroupTable& table() const { return group_.table(); }
  const Subgroup& object(Obj c) const { return objects_[c]; }
  const std::vector<Subgroup>& objects() const { return objects_; }
  std::optional<Obj> find_object(const Subgroup& h) const;
  /// Index of the trivial subgroup, if it is an object.
  std::optional<Obj> trivial_object() const;

  /// Canonical representative of morphism f.
  Elt rep(Mor f) const { return rep_[f]; }
  /// Least element of the coset (object c) * g.
  Elt canonical(Obj c, Elt g) const { return canon_[c][g]; }
  /// The morphism src -> tgt given by g, or nullopt if g src g^-1 is not in tgt.
  std::optional<Mor> find(Obj src, Obj tgt, Elt g) const;
  Mor at(Obj src, Obj tgt, Elt g) const;

  std::string object_label(Obj c) const override { return objects_[c].describe(); }

 private:
  Subgroup group_;
  std::vector<Subgroup> objects_;
  std::vector<std::vector<Elt>> canon_;  // per object, indexed by table element
  std::vector<Elt> rep_;
};

/// Orbit category of G on the conjugation closure of X.
OrbitCategory build_orbit_category(const PermGroup& g, const std::vector<Subgroup>& x);
/// Orbit category on the p-subgroups of g.
OrbitCategory p_orbit_category(const Subgroup& g, std::uint64_t p);
/// Full subcategory on the listed objects (kept in the given order).
OrbitCategory full_subcategory(const OrbitCategory& c, const std::vector<Obj>& objects);
/// One object per conjugacy class. A class containing a subgroup from
/// `preferred` is represented by it; otherwise by its first member.
OrbitCategory skeleton(const OrbitCategory& c, const std::vector<Subgroup>& preferred = {});
/// True when the object set is closed under conjugation by the group.
bool is_conjugation_closed(const OrbitCategory& c);

}  // namespace hlim
