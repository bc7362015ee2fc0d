#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "hlim/perm.hpp"

namespace hlim {

using Elt = std::uint32_t;

/// Full element list of an enumerated permutation group. Elements are sorted
/// lexicographically, so index 0 is the identity and the least element of any
/// subset is the one with the smallest index.
class GroupTable {
 public:
  GroupTable(std::size_t degree, const std::vector<Perm>& generators);

  std::size_t order() const { return elements_.size(); }
  std::size_t degree() const { return degree_; }
  const Perm& element(Elt i) const { return elements_[i]; }
  std::optional<Elt> find(const Perm& g) const;
  Elt index_of(const Perm& g) const;

  Elt mul(Elt a, Elt b) const {
    if (!mul_.empty()) return mul_[static_cast<std::size_t>(a) * elements_.size() + b];
    return index_of(elements_[a] * elements_[b]);
  }
  Elt inv(Elt a) const { return inv_[a]; }
  Elt conj(Elt g, Elt h) const { return mul(mul(g, h), inv_[g]); }  // g h g^-1
  Elt pow(Elt a, std::uint64_t e) const;
  std::size_t element_order(Elt a) const { return orders_[a]; }

  /// Generators as element indices, in the order given at construction.
  const std::vector<Elt>& generators() const { return gens_; }
  /// Spanning tree over left multiplication: element e != 0 equals
  /// generators()[tree_gen(e)] * tree_parent(e).
  Elt tree_parent(Elt e) const { return parent_[e]; }
  std::size_t tree_gen(Elt e) const { return gen_of_[e]; }
  /// Elements in breadth-first order of the spanning tree (parents first).
  const std::vector<Elt>& bfs_order() const { return bfs_; }

 private:
  std::size_t degree_;
  std::vector<Perm> elements_;
  std::unordered_map<Perm, Elt, PermHash> index_;
  std::vector<Elt> mul_;
  std::vector<Elt> inv_;
  std::vector<std::size_t> orders_;
  std::vector<Elt> gens_;
  std::vector<Elt> parent_;
  std::vector<std::size_t> gen_of_;
  std::vector<Elt> bfs_;
};

using TablePtr = std::shared_ptr<const GroupTable>;

/// A subgroup of an enumerated group, stored as its sorted element indices.
class Subgroup {
 public:
  Subgroup() = default;
  /// Subgroup generated by the given elements.
  Subgroup(TablePtr table, std::vector<Elt> generators);
  /// Trusted constructor: `elements` must be a sorted list closed under products.
  static Subgroup from_elements(TablePtr table, std::vector<Elt> elements, std::vector<Elt> generators);
  static Subgroup trivial(TablePtr table);
  static Subgroup whole(TablePtr table);

  const GroupTable& table() const { return *table_; }
  const TablePtr& table_ptr() const { return table_; }
  std::size_t order() const { return elements_.size(); }
  const std::vector<Elt>& elements() const { return elements_; }
  const std::vector<Elt>& generators() const { return gens_; }
  bool contains(Elt g) const { return (bits_[g >> 6] >> (g & 63)) & 1u; }
  bool is_trivial() const { return elements_.size() == 1; }

  bool operator==(const Subgroup& rhs) const { return table_ == rhs.table_ && elements_ == rhs.elements_; }
  bool is_subgroup_of(const Subgroup& rhs) const;
  /// g H g^-1.
  Subgroup conjugate(Elt g) const;
  /// True when g H g^-1 <= K, tested on generators.
  bool conjugate_inside(Elt g, const Subgroup& k) const;
  const std::vector<std::uint64_t>& bits() const { return bits_; }
  std::string describe() const;

 private:
  TablePtr table_;
  std::vector<Elt> elements_;
  std::vector<Elt> gens_;
  std::vector<std::uint64_t> bits_;
};

struct SubgroupHash {
  std::size_t operator()(const Subgroup& s) const noexcept;
};

/// Base and strong generating set, used for orders and membership without
/// enumerating the group.
class StabilizerChain {
 public:
  StabilizerChain(std::size_t degree, const std::vector<Perm>& generators);
  std::uint64_t order() const;
  bool contains(const Perm& g) const;

 private:
  struct Level {
    Perm::Point base;
    std::vector<Perm> gens;
    std::vector<std::optional<Perm>> transversal;
    std::vector<Perm::Point> orbit;
  };
  void rebuild_level(std::size_t i);
  std::pair<Perm, std::size_t> strip(Perm g, std::size_t from) const;

  std::size_t degree_;
  std::vector<Perm> strong_;
  std::vector<Level> levels_;
};

/// A permutation group given by generators. Copies share their caches.
class PermGroup {
 public:
  PermGroup(std::size_t degree, std::vector<Perm> generators, std::string name = {});

  std::size_t degree() const { return degree_; }
  const std::vector<Perm>& generators() const { return gens_; }
  const std::string& name() const { return name_; }
  void set_name(std::string n) { name_ = std::move(n); }

  std::uint64_t order() const;
  bool contains(const Perm& g) const;
  /// Enumerated element table; throws CapExceeded above the enumeration caps.
  TablePtr table() const;
  Subgroup whole() const;
  /// Subgroup generated by the given permutations (must lie in the group).
  Subgroup subgroup(const std::vector<Perm>& generators) const;

 private:
  struct Cache;
  std::size_t degree_;
  std::vector<Perm> gens_;
  std::string name_;
  std::shared_ptr<Cache> cache_;
};

}  // namespace hlim
