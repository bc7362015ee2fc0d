#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

namespace hlim {

using Obj = std::uint32_t;
using Mor = std::uint32_t;

/// A finite category with all composites tabulated. Morphisms are numbered
/// by source, then target, then a subclass-defined key, so the morphisms out
/// of an object (and each hom-set) form contiguous id ranges.
class FiniteCategory {
 public:
  virtual ~FiniteCategory() = default;

  std::size_t num_objects() const { return num_objects_; }
  std::size_t num_morphisms() const { return source_.size(); }
  Obj source(Mor f) const { return source_[f]; }
  Obj target(Mor f) const { return target_[f]; }
  Mor identity(Obj c) const { return identity_[c]; }
  bool is_identity(Mor f) const { return identity_[source_[f]] == f; }

  Mor out_begin(Obj c) const { return out_begin_[c]; }
  Mor out_end(Obj c) const { return out_begin_[c + 1]; }
  std::size_t out_degree(Obj c) const { return out_begin_[c + 1] - out_begin_[c]; }
  /// Morphisms c -> d as the id range [first, second).
  std::pair<Mor, Mor> hom(Obj c, Obj d) const {
    const std::size_t k = static_cast<std::size_t>(c) * num_objects_ + d;
    return {hom_begin_[k], hom_end_[k]};
  }
  std::size_t hom_size(Obj c, Obj d) const {
    auto [a, b] = hom(c, d);
    return b - a;
  }

  /// f o g (apply g first); requires target(g) == source(f).
  Mor compose(Mor f, Mor g) const;

  virtual std::string object_label(Obj c) const { return std::to_string(c); }

 protected:
  /// Subclasses list morphisms as (source, target) pairs already in id order
  /// and then supply composites through `composite`.
  void set_structure(std::size_t num_objects, std::vector<Obj> source, std::vector<Obj> target,
                     std::vector<Mor> identity);
  void build_composition(const std::function<Mor(Mor f, Mor g)>& composite);

 private:
  std::size_t num_objects_ = 0;
  std::vector<Obj> source_, target_;
  std::vector<Mor> identity_;
  std::vector<Mor> out_begin_;
  std::vector<Mor> hom_begin_, hom_end_;
  std::vector<std::size_t> comp_offset_;
  std::vector<Mor> comp_;
};

/// Report from exhaustive (or sampled) checks of the category axioms.
struct CategoryLawReport {
  bool associativity = true;
  bool identities = true;
  bool epimorphisms = true;
  std::size_t triples_checked = 0;
  std::size_t pairs_checked = 0;
  bool exhaustive = true;
  std::string first_failure;
  bool ok() const { return associativity && identities && epimorphisms; }
};

/// Associativity and identity laws; exhaustive up to `exhaustive_pairs`
/// composable pairs, otherwise on `samples` random triples (seeded).
CategoryLawReport check_category_laws(const FiniteCategory& c, std::size_t exhaustive_pairs = 10000,
                                      std::size_t samples = 200000, std::uint64_t seed = 1);
/// Every morphism is an epimorphism: f o g = f' o g implies f = f'.
CategoryLawReport check_epimorphisms(const FiniteCategory& c);

/// Composable sequences c0 -> c1 -> ... -> cn, enumerated depth first:
/// lexicographic in (c0, f1, ..., fn) with morphisms in id order. Only chains
/// starting at objects flagged in `starts` are indexed. With `normalized`,
/// identity morphisms are excluded.
class ChainIndex {
 public:
  ChainIndex(const FiniteCategory& c, std::size_t max_length, bool normalized, std::vector<bool> starts,
             std::size_t cap);

  const FiniteCategory& category() const { return *cat_; }
  std::size_t max_length() const { return max_len_; }
  bool normalized() const { return normalized_; }
  std::uint64_t count(std::size_t n) const { return count_[n]; }
  /// Chains of length n starting at c occupy [first(n, c), first(n, c) + count_from(n, c)).
  std::uint64_t first(std::size_t n, Obj c) const { return first_[n][c]; }
  std::uint64_t count_from(std::size_t n, Obj c) const { return first_[n][c + 1] - first_[n][c]; }
  bool is_start(Obj c) const { return starts_[c]; }

  /// Index of a chain given its morphisms (n >= 1), or nullopt when the
  /// chain is not indexed (bad start object or, if normalized, degenerate).
  std::optional<std::uint64_t> index(std::size_t n, const Mor* morphisms) const;
  std::optional<std::uint64_t> index_object(Obj c) const;
  /// Morphisms of chain `idx` of length n (n >= 1) and its first object.
  Obj decode(std::size_t n, std::uint64_t idx, Mor* morphisms) const;

  /// Position of f among the indexed out-morphisms of its source.
  std::int64_t rank(Mor f) const { return rank_[f]; }
  /// Indexed out-morphisms of c in order.
  const std::vector<Mor>& outs(Obj c) const { return outs_[c]; }

 private:
  const FiniteCategory* cat_;
  std::size_t max_len_;
  bool normalized_;
  std::vector<bool> starts_;
  std::vector<std::int64_t> rank_;
  std::vector<std::vector<Mor>> outs_;
  std::vector<std::int64_t> start_pos_;  // object -> index among start objects
  std::vector<Obj> start_objects_;
  // ext_[n][i]: index of the first length-(n+1) chain extending chain i of length n; size count(n)+1.
  std::vector<std::vector<std::uint64_t>> ext_;
  std::vector<std::vector<std::uint64_t>> first_;
  std::vector<std::uint64_t> count_;
};

/// Explicit list of chains of length n (each as its morphism list; for n = 0
/// the single entry is the object id). Throws CapExceeded above `cap`.
std::vector<std::vector<std::uint32_t>> chains(const FiniteCategory& c, std::size_t n, bool nondegenerate,
                                               std::size_t cap);

}  // namespace hlim
