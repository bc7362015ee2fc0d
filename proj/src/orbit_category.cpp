#include "hlim/orbit_category.hpp"

#include <algorithm>
#include <unordered_map>
#include <unordered_set>

#include "hlim/fp.hpp"
#include "hlim/group_ops.hpp"

namespace hlim {

namespace {

constexpr Elt kNone = 0xffffffffu;

bool subgroup_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements() < b.elements();
}

std::vector<Subgroup> conjugation_closure(const Subgroup& g, const std::vector<Subgroup>& x) {
  std::unordered_set<Subgroup, SubgroupHash> seen;
  std::vector<Subgroup> out;
  for (const Subgroup& h : x) {
    if (!h.is_subgroup_of(g)) throw ValidationError("object " + h.describe() + " is not a subgroup of the group");
    if (seen.insert(h).second) out.push_back(h);
  }
  for (std::size_t head = 0; head < out.size(); ++head) {
    for (Elt s : g.generators()) {
      Subgroup c = out[head].conjugate(s);
      if (seen.insert(c).second) out.push_back(std::move(c));
    }
  }
  std::sort(out.begin(), out.end(), subgroup_less);
  return out;
}

}  // namespace

OrbitCategory::OrbitCategory(Subgroup group, std::vector<Subgroup> objects, bool close) : group_(std::move(group)) {
  if (objects.empty()) throw ValidationError("orbit category needs at least one object");
  objects_ = close ? conjugation_closure(group_, objects) : std::move(objects);
  const GroupTable& t = group_.table();
  const std::size_t n = objects_.size();

  canon_.assign(n, std::vector<Elt>(t.order(), kNone));
  std::vector<std::vector<Elt>> coset_reps(n);
  for (std::size_t k = 0; k < n; ++k) {
    auto& cn = canon_[k];
    for (Elt g : group_.elements()) {
      if (cn[g] != kNone) continue;
      coset_reps[k].push_back(g);
      for (Elt x : objects_[k].elements()) cn[t.mul(x, g)] = g;
    }
  }

  std::vector<Obj> src, tgt;
  std::vector<Mor> ident(n);
  for (Obj h = 0; h < n; ++h)
    for (Obj k = 0; k < n; ++k) {
      if (objects_[h].order() > objects_[k].order()) continue;
      for (Elt g : coset_reps[k]) {
        if (!objects_[h].conjugate_inside(g, objects_[k])) continue;
        if (h == k && g == 0) ident[h] = static_cast<Mor>(src.size());
        src.push_back(h);
        tgt.push_back(k);
        rep_.push_back(g);
      }
    }
  set_structure(n, std::move(src), std::move(tgt), std::move(ident));
  build_composition([&](Mor f, Mor g) {
    return at(source(g), target(f), t.mul(rep_[f], rep_[g]));
  });
}

std::optional<Obj> OrbitCategory::find_object(const Subgroup& h) const {
  for (Obj c = 0; c < objects_.size(); ++c)
    if (objects_[c] == h) return c;
  return std::nullopt;
}

std::optional<Obj> OrbitCategory::trivial_object() const {
  for (Obj c = 0; c < objects_.size(); ++c)
    if (objects_[c].is_trivial()) return c;
  return std::nullopt;
}

std::optional<Mor> OrbitCategory::find(Obj src, Obj tgt, Elt g) const {
  const Elt r = canon_[tgt][g];
  if (r == kNone) return std::nullopt;
  auto [a, b] = hom(src, tgt);
  auto it = std::lower_bound(rep_.begin() + a, rep_.begin() + b, r);
  if (it == rep_.begin() + b || *it != r) return std::nullopt;
  return static_cast<Mor>(it - rep_.begin());
}

Mor OrbitCategory::at(Obj src, Obj tgt, Elt g) const {
  auto f = find(src, tgt, g);
  if (!f) throw ValidationError("no morphism " + object_label(src) + " -> " + object_label(tgt) + " for the element");
  return *f;
}

OrbitCategory build_orbit_category(const PermGroup& g, const std::vector<Subgroup>& x) {
  return OrbitCategory(g.whole(), x, true);
}

OrbitCategory p_orbit_category(const Subgroup& g, std::uint64_t p) {
  return OrbitCategory(g, p_subgroups(g, p), true);
}

OrbitCategory full_subcategory(const OrbitCategory& c, const std::vector<Obj>& objects) {
  std::vector<Subgroup> objs;
  for (Obj o : objects) objs.push_back(c.object(o));
  return OrbitCategory(c.group(), std::move(objs), false);
}

OrbitCategory skeleton(const OrbitCategory& c, const std::vector<Subgroup>& preferred) {
  // H and K are conjugate exactly when they have equal order and Mor(H, K) is nonempty
  std::vector<int> cls(c.num_objects(), -1);
  std::vector<Subgroup> chosen;
  for (Obj h = 0; h < c.num_objects(); ++h) {
    if (cls[h] >= 0) continue;
    const int id = static_cast<int>(chosen.size());
    Obj pick = h;
    bool pick_preferred = false;
    for (Obj k = h; k < c.num_objects(); ++k) {
      if (c.object(k).order() != c.object(h).order() || c.hom_size(h, k) == 0) continue;
      cls[k] = id;
      if (!pick_preferred &&
          std::find(preferred.begin(), preferred.end(), c.object(k)) != preferred.end()) {
        pick = k;
        pick_preferred = true;
      }
    }
    chosen.push_back(c.object(pick));
  }
  std::stable_sort(chosen.begin(), chosen.end(), [](const Subgroup& a, const Subgroup& b) {
    return a.order() < b.order();
  });
  return OrbitCategory(c.group(), std::move(chosen), false);
}

bool is_conjugation_closed(const OrbitCategory& c) {
  std::unordered_set<Subgroup, SubgroupHash> objs(c.objects().begin(), c.objects().end());
  for (const Subgroup& h : c.objects())
    for (Elt s : c.group().generators())
      if (!objs.count(h.conjugate(s))) return false;
  return true;
}

}  // namespace hlim
