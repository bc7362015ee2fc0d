#include "hlim/category.hpp"

#include <algorithm>
#include <random>

#include "hlim/caps.hpp"
#include "hlim/fp.hpp"

namespace hlim {

void FiniteCategory::set_structure(std::size_t num_objects, std::vector<Obj> source, std::vector<Obj> target,
                                   std::vector<Mor> identity) {
  num_objects_ = num_objects;
  source_ = std::move(source);
  target_ = std::move(target);
  identity_ = std::move(identity);
  const std::size_t m = source_.size();
  out_begin_.assign(num_objects_ + 1, 0);
  hom_begin_.assign(num_objects_ * num_objects_, 0);
  hom_end_.assign(num_objects_ * num_objects_, 0);
  for (std::size_t f = 0; f < m; ++f) {
    if (f > 0) {
      bool ordered = source_[f - 1] < source_[f] || (source_[f - 1] == source_[f] && target_[f - 1] <= target_[f]);
      if (!ordered) throw ValidationError("FiniteCategory: morphisms must be sorted by (source, target)");
    }
    ++out_begin_[source_[f] + 1];
  }
  for (std::size_t c = 0; c < num_objects_; ++c) out_begin_[c + 1] += out_begin_[c];
  for (std::size_t f = 0; f < m; ++f) {
    const std::size_t k = static_cast<std::size_t>(source_[f]) * num_objects_ + target_[f];
    if (hom_end_[k] == 0 && hom_begin_[k] == 0) hom_begin_[k] = static_cast<Mor>(f);
    hom_end_[k] = static_cast<Mor>(f + 1);
  }
  for (std::size_t k = 0; k < hom_begin_.size(); ++k)
    if (hom_end_[k] == 0) hom_begin_[k] = 0;
  for (std::size_t c = 0; c < num_objects_; ++c) {
    Mor id = identity_[c];
    if (id >= m || source_[id] != c || target_[id] != c) throw ValidationError("FiniteCategory: bad identity");
  }
}

void FiniteCategory::build_composition(const std::function<Mor(Mor, Mor)>& composite) {
  const std::size_t m = source_.size();
  comp_offset_.assign(m + 1, 0);
  for (std::size_t g = 0; g < m; ++g) comp_offset_[g + 1] = comp_offset_[g] + out_degree(target_[g]);
  comp_.assign(comp_offset_[m], 0);
  for (std::size_t g = 0; g < m; ++g) {
    const Obj d = target_[g];
    for (Mor f = out_begin(d); f < out_end(d); ++f) {
      Mor h = composite(f, static_cast<Mor>(g));
      if (source_[h] != source_[g] || target_[h] != target_[f])
        throw ValidationError("FiniteCategory: composite has wrong source or target");
      comp_[comp_offset_[g] + (f - out_begin(d))] = h;
    }
  }
}

Mor FiniteCategory::compose(Mor f, Mor g) const {
  if (source_[f] != target_[g]) throw ValidationError("compose: morphisms are not composable");
  return comp_[comp_offset_[g] + (f - out_begin_[target_[g]])];
}

CategoryLawReport check_category_laws(const FiniteCategory& c, std::size_t exhaustive_pairs, std::size_t samples,
                                      std::uint64_t seed) {
  CategoryLawReport r;
  for (Mor f = 0; f < c.num_morphisms(); ++f) {
    if (c.compose(c.identity(c.target(f)), f) != f || c.compose(f, c.identity(c.source(f))) != f) {
      r.identities = false;
      if (r.first_failure.empty()) r.first_failure = "identity law fails at morphism " + std::to_string(f);
    }
  }
  std::size_t pairs = 0;
  for (Mor g = 0; g < c.num_morphisms(); ++g) pairs += c.out_degree(c.target(g));
  r.pairs_checked = pairs;
  auto check = [&](Mor g, Mor f, Mor h) {
    ++r.triples_checked;
    if (c.compose(h, c.compose(f, g)) != c.compose(c.compose(h, f), g)) {
      r.associativity = false;
      if (r.first_failure.empty())
        r.first_failure = "associativity fails at (" + std::to_string(h) + "," + std::to_string(f) + "," +
                          std::to_string(g) + ")";
    }
  };
  if (pairs <= exhaustive_pairs) {
    for (Mor g = 0; g < c.num_morphisms(); ++g)
      for (Mor f = c.out_begin(c.target(g)); f < c.out_end(c.target(g)); ++f)
        for (Mor h = c.out_begin(c.target(f)); h < c.out_end(c.target(f)); ++h) check(g, f, h);
  } else {
    r.exhaustive = false;
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      Mor g = static_cast<Mor>(rng() % c.num_morphisms());
      Mor f = c.out_begin(c.target(g)) + static_cast<Mor>(rng() % c.out_degree(c.target(g)));
      Mor h = c.out_begin(c.target(f)) + static_cast<Mor>(rng() % c.out_degree(c.target(f)));
      check(g, f, h);
    }
  }
  return r;
}

CategoryLawReport check_epimorphisms(const FiniteCategory& c) {
  CategoryLawReport r;
  std::vector<Mor> seen_from(c.num_morphisms(), 0);
  std::vector<std::uint32_t> stamp(c.num_morphisms(), 0);
  std::uint32_t clock = 0;
  for (Mor g = 0; g < c.num_morphisms(); ++g) {
    const Obj d = c.target(g);
    ++clock;
    for (Mor f = c.out_begin(d); f < c.out_end(d); ++f) {
      ++r.pairs_checked;
      Mor h = c.compose(f, g);
      if (stamp[h] == clock && seen_from[h] != f) {
        r.epimorphisms = false;
        if (r.first_failure.empty())
          r.first_failure = "morphism " + std::to_string(g) + " is not an epimorphism";
      }
      stamp[h] = clock;
      seen_from[h] = f;
    }
  }
  return r;
}

// ---------------------------------------------------------------- ChainIndex

ChainIndex::ChainIndex(const FiniteCategory& c, std::size_t max_length, bool normalized, std::vector<bool> starts,
                       std::size_t cap)
    : cat_(&c), max_len_(max_length), normalized_(normalized), starts_(std::move(starts)) {
  const std::size_t nobj = c.num_objects();
  if (starts_.size() != nobj) throw ValidationError("ChainIndex: start flags must cover every object");
  rank_.assign(c.num_morphisms(), -1);
  outs_.assign(nobj, {});
  for (Obj o = 0; o < nobj; ++o)
    for (Mor f = c.out_begin(o); f < c.out_end(o); ++f) {
      if (normalized_ && c.is_identity(f)) continue;
      rank_[f] = static_cast<std::int64_t>(outs_[o].size());
      outs_[o].push_back(f);
    }
  start_pos_.assign(nobj, -1);
  first_.assign(max_len_ + 1, std::vector<std::uint64_t>(nobj + 1, 0));
  for (Obj o = 0; o < nobj; ++o) {
    first_[0][o] = start_objects_.size();
    if (starts_[o]) {
      start_pos_[o] = static_cast<std::int64_t>(start_objects_.size());
      start_objects_.push_back(o);
    }
  }
  first_[0][nobj] = start_objects_.size();
  count_.assign(max_len_ + 1, 0);
  count_[0] = start_objects_.size();

  std::vector<Obj> last(start_objects_);
  ext_.assign(max_len_, {});
  for (std::size_t n = 1; n <= max_len_; ++n) {
    auto& e = ext_[n - 1];
    e.assign(last.size() + 1, 0);
    for (std::size_t i = 0; i < last.size(); ++i) e[i + 1] = e[i] + outs_[last[i]].size();
    count_[n] = e[last.size()];
    if (count_[n] > cap)
      throw CapExceeded("chain count " + std::to_string(count_[n]) + " at length " + std::to_string(n) +
                        " exceeds the chain cap " + std::to_string(cap));
    for (std::size_t o = 0; o <= nobj; ++o) first_[n][o] = e[first_[n - 1][o]];
    if (n < max_len_) {
      std::vector<Obj> next;
      next.reserve(count_[n]);
      for (Obj l : last)
        for (Mor f : outs_[l]) next.push_back(c.target(f));
      last.swap(next);
    }
  }
}

std::optional<std::uint64_t> ChainIndex::index_object(Obj c) const {
  if (start_pos_[c] < 0) return std::nullopt;
  return static_cast<std::uint64_t>(start_pos_[c]);
}

std::optional<std::uint64_t> ChainIndex::index(std::size_t n, const Mor* morphisms) const {
  const std::int64_t s = start_pos_[cat_->source(morphisms[0])];
  if (s < 0) return std::nullopt;
  std::uint64_t idx = static_cast<std::uint64_t>(s);
  for (std::size_t k = 0; k < n; ++k) {
    const std::int64_t r = rank_[morphisms[k]];
    if (r < 0) return std::nullopt;
    idx = ext_[k][idx] + static_cast<std::uint64_t>(r);
  }
  return idx;
}

Obj ChainIndex::decode(std::size_t n, std::uint64_t idx, Mor* morphisms) const {
  // positions[k] = rank of the k-th morphism
  std::uint64_t cur = idx;
  for (std::size_t k = n; k >= 1; --k) {
    const auto& e = ext_[k - 1];
    auto it = std::upper_bound(e.begin(), e.end(), cur);
    const std::uint64_t prefix = static_cast<std::uint64_t>(it - e.begin()) - 1;
    morphisms[k - 1] = static_cast<Mor>(cur - e[prefix]);
    cur = prefix;
  }
  const Obj c0 = start_objects_[cur];
  Obj last = c0;
  for (std::size_t k = 0; k < n; ++k) {
    morphisms[k] = outs_[last][morphisms[k]];
    last = cat_->target(morphisms[k]);
  }
  return c0;
}

std::vector<std::vector<std::uint32_t>> chains(const FiniteCategory& c, std::size_t n, bool nondegenerate,
                                               std::size_t cap) {
  ChainIndex idx(c, n, nondegenerate, std::vector<bool>(c.num_objects(), true), cap);
  std::vector<std::vector<std::uint32_t>> out;
  if (n == 0) {
    for (Obj o = 0; o < c.num_objects(); ++o) out.push_back({o});
    return out;
  }
  out.reserve(idx.count(n));
  std::vector<Mor> buf(n);
  for (std::uint64_t i = 0; i < idx.count(n); ++i) {
    idx.decode(n, i, buf.data());
    out.emplace_back(buf.begin(), buf.end());
  }
  return out;
}

}  // namespace hlim
