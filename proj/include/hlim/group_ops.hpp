#pragma once

#include <cstdint>
#include <functional>
#include <vector>

#include "hlim/group.hpp"

namespace hlim {

bool is_p_power(std::uint64_t n, std::uint64_t p);
/// Largest power of p dividing n.
std::uint64_t p_part(std::uint64_t n, std::uint64_t p);

PermGroup cyclic_group(std::size_t n);
PermGroup symmetric_group(std::size_t n);
/// Dihedral group of order 2n acting on the vertices of an n-gon.
PermGroup dihedral_group(std::size_t n);
PermGroup trivial_group();

// Subgroup-level operations; all arguments live in one enumerated table.
Subgroup normalizer(const Subgroup& ambient, const Subgroup& h);
Subgroup centralizer(const Subgroup& ambient, const std::vector<Elt>& elems);
Subgroup center(const Subgroup& g);
bool is_normal(const Subgroup& ambient, const Subgroup& h);
Subgroup intersect(const Subgroup& a, const Subgroup& b);
/// Subgroup generated by the union of both generating sets.
Subgroup join(const Subgroup& a, const Subgroup& b);
Subgroup normal_closure(const Subgroup& ambient, const std::vector<Elt>& elems);
/// Kernel of the action of `ambient` on its cosets of h.
Subgroup normal_core(const Subgroup& ambient, const Subgroup& h);
Subgroup commutator_subgroup(const Subgroup& g);
/// All subgroups of p-power order, sorted by (order, elements).
std::vector<Subgroup> p_subgroups(const Subgroup& g, std::uint64_t p);
Subgroup sylow_p(const Subgroup& g, std::uint64_t p);
/// Largest normal p-subgroup.
Subgroup largest_normal_p_subgroup(const Subgroup& g, std::uint64_t p);
/// Partition of a conjugation-closed list into classes under conjugation by
/// `ambient`; each class lists indices into `subgroups`, classes ordered by
/// first member.
std::vector<std::vector<std::size_t>> conjugacy_classes(const Subgroup& ambient, const std::vector<Subgroup>& subgroups);
/// Every subgroup of g (exhaustive; intended for small groups).
std::vector<Subgroup> all_subgroups(const Subgroup& g);

// PermGroup wrappers.
Subgroup normalizer(const PermGroup& g, const Subgroup& h);
Subgroup normal_core(const PermGroup& g, const Subgroup& h);
std::vector<Subgroup> p_subgroups(const PermGroup& g, std::uint64_t p);
Subgroup sylow_p(const PermGroup& g, std::uint64_t p);

struct DirectProduct {
  PermGroup group;
  std::size_t left_degree;
  std::size_t right_degree;
  Perm embed_left(const Perm& a) const;
  Perm embed_right(const Perm& b) const;
  Perm pair(const Perm& a, const Perm& b) const;
  std::pair<Perm, Perm> split(const Perm& x) const;
};
DirectProduct direct_product(const PermGroup& a, const PermGroup& b);

/// Automorphisms of N indexed by the generators of S: action[i][j] is the
/// image of N's generator j under S's generator i.
using SemidirectAction = std::vector<std::vector<Perm>>;

struct Semidirect {
  PermGroup group;
  std::vector<Perm> normal_gens;      // canonical copy of N
  std::vector<Perm> complement_gens;  // canonical copy of S
  std::size_t normal_points;          // |N| points carrying the affine action
};
/// N x| S acting on N (by n.x and the automorphisms) plus the regular S-points.
Semidirect semidirect(const PermGroup& n, const PermGroup& s, const SemidirectAction& action);

struct Wreath {
  PermGroup group;
  std::size_t base_degree;
  std::size_t p;
  /// The element acting as b on copy `copy` and trivially elsewhere.
  Perm on_copy(const Perm& b, std::size_t copy) const;
  /// (b, b, ..., b).
  Perm diagonal(const Perm& b) const;
  /// Cyclic shift of the copies.
  Perm top() const;
  std::vector<Perm> base_factor_gens(const PermGroup& b, std::size_t copy) const;
};
Wreath wreath_Cp(const PermGroup& b, std::size_t p);

struct Quotient {
  PermGroup group;  // faithful action on the cosets gH
  TablePtr source;  // table of the ambient group
  std::vector<Elt> image;    // source element -> quotient element (source order), kUnset outside the ambient
  std::vector<Elt> section;  // quotient element -> least preimage
  static constexpr Elt kUnset = 0xffffffffu;
  /// Preimage of a quotient subgroup.
  Subgroup preimage(const Subgroup& q) const;
  /// Image of a subgroup of the ambient.
  Subgroup image_of(const Subgroup& k) const;
};
Quotient quotient(const Subgroup& ambient, const Subgroup& normal);

}  // namespace hlim
