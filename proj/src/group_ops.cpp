#include "hlim/group_ops.hpp"

#include <algorithm>
#include <numeric>
#include <unordered_map>
#include <unordered_set>

#include "hlim/fp.hpp"

namespace hlim {

bool is_p_power(std::uint64_t n, std::uint64_t p) {
  if (n == 0) return false;
  while (n % p == 0) n /= p;
  return n == 1;
}

std::uint64_t p_part(std::uint64_t n, std::uint64_t p) {
  std::uint64_t r = 1;
  while (n % p == 0) {
    n /= p;
    r *= p;
  }
  return r;
}

PermGroup cyclic_group(std::size_t n) {
  if (n == 0) throw ValidationError("cyclic_group: n must be positive");
  std::vector<std::size_t> cyc(n);
  std::iota(cyc.begin(), cyc.end(), 0);
  return PermGroup(n, {Perm::from_cycle_list({cyc}, n)}, "C" + std::to_string(n));
}

PermGroup symmetric_group(std::size_t n) {
  if (n == 0) throw ValidationError("symmetric_group: n must be positive");
  std::vector<Perm> gens;
  if (n >= 2) {
    gens.push_back(Perm::from_cycle_list({{0, 1}}, n));
    std::vector<std::size_t> cyc(n);
    std::iota(cyc.begin(), cyc.end(), 0);
    if (n >= 3) gens.push_back(Perm::from_cycle_list({cyc}, n));
  }
  return PermGroup(n, gens, "S" + std::to_string(n));
}

PermGroup dihedral_group(std::size_t n) {
  if (n < 2) throw ValidationError("dihedral_group: n must be at least 2");
  std::vector<Perm::Point> rot(n), ref(n);
  for (std::size_t i = 0; i < n; ++i) {
    rot[i] = static_cast<Perm::Point>((i + 1) % n);
    ref[i] = static_cast<Perm::Point>((n - i) % n);
  }
  return PermGroup(n, {Perm(rot), Perm(ref)}, "D" + std::to_string(n));
}

PermGroup trivial_group() { return PermGroup(1, {}, "1"); }

// ------------------------------------------------------------ subgroup ops

Subgroup normalizer(const Subgroup& ambient, const Subgroup& h) {
  std::vector<Elt> elems;
  for (Elt g : ambient.elements())
    if (h.conjugate_inside(g, h)) elems.push_back(g);
  return Subgroup(ambient.table_ptr(), elems);
}

Subgroup centralizer(const Subgroup& ambient, const std::vector<Elt>& elems) {
  const GroupTable& t = ambient.table();
  std::vector<Elt> out;
  for (Elt g : ambient.elements()) {
    bool ok = true;
    for (Elt x : elems)
      if (t.mul(g, x) != t.mul(x, g)) {
        ok = false;
        break;
      }
    if (ok) out.push_back(g);
  }
  return Subgroup::from_elements(ambient.table_ptr(), out, out.size() > 1 ? std::vector<Elt>(out.begin() + 1, out.end()) : std::vector<Elt>{});
}

Subgroup center(const Subgroup& g) { return centralizer(g, g.generators()); }

bool is_normal(const Subgroup& ambient, const Subgroup& h) {
  for (Elt g : ambient.generators())
    if (!h.conjugate_inside(g, h)) return false;
  return true;
}

Subgroup intersect(const Subgroup& a, const Subgroup& b) {
  std::vector<Elt> out;
  std::set_intersection(a.elements().begin(), a.elements().end(), b.elements().begin(), b.elements().end(),
                        std::back_inserter(out));
  std::vector<Elt> gens(out.begin() + (out.empty() ? 0 : 1), out.end());
  return Subgroup::from_elements(a.table_ptr(), out, gens);
}

Subgroup join(const Subgroup& a, const Subgroup& b) {
  std::vector<Elt> gens = a.generators();
  gens.insert(gens.end(), b.generators().begin(), b.generators().end());
  return Subgroup(a.table_ptr(), gens);
}

Subgroup normal_closure(const Subgroup& ambient, const std::vector<Elt>& elems) {
  const GroupTable& t = ambient.table();
  std::vector<Elt> gens = elems;
  Subgroup n(ambient.table_ptr(), gens);
  bool changed = true;
  while (changed) {
    changed = false;
    std::vector<Elt> current = n.generators();
    for (Elt x : current) {
      for (Elt g : ambient.generators()) {
        Elt c = t.conj(g, x);
        if (!n.contains(c)) {
          gens.push_back(c);
          n = Subgroup(ambient.table_ptr(), gens);
          changed = true;
        }
      }
    }
  }
  return n;
}

Subgroup normal_core(const Subgroup& ambient, const Subgroup& h) {
  std::vector<std::uint64_t> acc = h.bits();
  std::unordered_set<Subgroup, SubgroupHash> seen;
  for (Elt g : ambient.elements()) {
    Subgroup c = h.conjugate(g);
    if (!seen.insert(c).second) continue;
    for (std::size_t w = 0; w < acc.size(); ++w) acc[w] &= c.bits()[w];
  }
  std::vector<Elt> out;
  for (Elt e : h.elements())
    if ((acc[e >> 6] >> (e & 63)) & 1u) out.push_back(e);
  std::vector<Elt> gens(out.begin() + 1, out.end());
  return Subgroup::from_elements(ambient.table_ptr(), out, gens);
}

Subgroup commutator_subgroup(const Subgroup& g) {
  const GroupTable& t = g.table();
  std::vector<Elt> comms;
  for (Elt a : g.generators())
    for (Elt b : g.generators()) {
      Elt c = t.mul(t.mul(t.inv(a), t.inv(b)), t.mul(a, b));
      if (c != 0) comms.push_back(c);
    }
  return normal_closure(g, comms);
}

namespace {

bool sorted_less(const Subgroup& a, const Subgroup& b) {
  if (a.order() != b.order()) return a.order() < b.order();
  return a.elements() < b.elements();
}

// Elements x of N_g(P) \ P with x^p in P; P<x> is then a p-group of order p|P|.
std::vector<Elt> extension_candidates(const Subgroup& g, const Subgroup& pgrp, std::uint64_t p) {
  const GroupTable& t = g.table();
  std::vector<Elt> out;
  for (Elt x : g.elements()) {
    if (pgrp.contains(x)) continue;
    if (!is_p_power(t.element_order(x), p)) continue;
    if (!pgrp.contains(t.pow(x, p))) continue;
    if (!pgrp.conjugate_inside(x, pgrp)) continue;
    out.push_back(x);
  }
  return out;
}

}  // namespace

std::vector<Subgroup> p_subgroups(const Subgroup& g, std::uint64_t p) {
  if (!is_prime(p)) throw ValidationError("p_subgroups: p must be prime");
  std::vector<Subgroup> found{Subgroup::trivial(g.table_ptr())};
  std::unordered_set<Subgroup, SubgroupHash> seen{found[0]};
  for (std::size_t head = 0; head < found.size(); ++head) {
    const Subgroup cur = found[head];
    for (Elt x : extension_candidates(g, cur, p)) {
      std::vector<Elt> gens = cur.generators();
      gens.push_back(x);
      Subgroup next(g.table_ptr(), gens);
      if (seen.insert(next).second) found.push_back(std::move(next));
    }
  }
  std::sort(found.begin(), found.end(), sorted_less);
  return found;
}

Subgroup sylow_p(const Subgroup& g, std::uint64_t p) {
  if (!is_prime(p)) throw ValidationError("sylow_p: p must be prime");
  Subgroup cur = Subgroup::trivial(g.table_ptr());
  const std::uint64_t target = p_part(g.order(), p);
  while (cur.order() < target) {
    auto cand = extension_candidates(g, cur, p);
    if (cand.empty()) throw ValidationError("sylow_p: no extension found (internal error)");
    std::vector<Elt> gens = cur.generators();
    gens.push_back(cand.front());
    cur = Subgroup(g.table_ptr(), gens);
  }
  return cur;
}

Subgroup largest_normal_p_subgroup(const Subgroup& g, std::uint64_t p) { return normal_core(g, sylow_p(g, p)); }

std::vector<std::vector<std::size_t>> conjugacy_classes(const Subgroup& ambient, const std::vector<Subgroup>& subgroups) {
  std::unordered_map<Subgroup, std::size_t, SubgroupHash> where;
  for (std::size_t i = 0; i < subgroups.size(); ++i) where.emplace(subgroups[i], i);
  std::vector<int> cls(subgroups.size(), -1);
  std::vector<std::vector<std::size_t>> out;
  for (std::size_t i = 0; i < subgroups.size(); ++i) {
    if (cls[i] >= 0) continue;
    const int id = static_cast<int>(out.size());
    out.emplace_back();
    std::vector<std::size_t> queue{i};
    cls[i] = id;
    for (std::size_t h = 0; h < queue.size(); ++h) {
      const Subgroup& s = subgroups[queue[h]];
      for (Elt g : ambient.generators()) {
        auto it = where.find(s.conjugate(g));
        if (it == where.end()) throw ValidationError("subgroup list is not closed under conjugation");
        if (cls[it->second] < 0) {
          cls[it->second] = id;
          queue.push_back(it->second);
        }
      }
    }
    std::sort(queue.begin(), queue.end());
    out.back() = queue;
  }
  return out;
}

std::vector<Subgroup> all_subgroups(const Subgroup& g) {
  std::vector<Subgroup> found{Subgroup::trivial(g.table_ptr())};
  std::unordered_set<Subgroup, SubgroupHash> seen{found[0]};
  for (std::size_t head = 0; head < found.size(); ++head) {
    const Subgroup cur = found[head];
    for (Elt x : g.elements()) {
      if (cur.contains(x)) continue;
      std::vector<Elt> gens = cur.generators();
      gens.push_back(x);
      Subgroup next(g.table_ptr(), gens);
      if (seen.insert(next).second) found.push_back(std::move(next));
    }
  }
  std::sort(found.begin(), found.end(), sorted_less);
  return found;
}

Subgroup normalizer(const PermGroup& g, const Subgroup& h) { return normalizer(g.whole(), h); }
Subgroup normal_core(const PermGroup& g, const Subgroup& h) { return normal_core(g.whole(), h); }
std::vector<Subgroup> p_subgroups(const PermGroup& g, std::uint64_t p) { return p_subgroups(g.whole(), p); }
Subgroup sylow_p(const PermGroup& g, std::uint64_t p) { return sylow_p(g.whole(), p); }

// ------------------------------------------------------------ constructions

Perm DirectProduct::embed_left(const Perm& a) const { return pair(a, Perm::identity(right_degree)); }
Perm DirectProduct::embed_right(const Perm& b) const { return pair(Perm::identity(left_degree), b); }

Perm DirectProduct::pair(const Perm& a, const Perm& b) const {
  std::vector<Perm::Point> img(left_degree + right_degree);
  for (std::size_t i = 0; i < left_degree; ++i) img[i] = a[i];
  for (std::size_t i = 0; i < right_degree; ++i) img[left_degree + i] = static_cast<Perm::Point>(left_degree + b[i]);
  return Perm(img);
}

std::pair<Perm, Perm> DirectProduct::split(const Perm& x) const {
  std::vector<Perm::Point> a(left_degree), b(right_degree);
  for (std::size_t i = 0; i < left_degree; ++i) a[i] = x[i];
  for (std::size_t i = 0; i < right_degree; ++i) b[i] = static_cast<Perm::Point>(x[left_degree + i] - left_degree);
  return {Perm(a), Perm(b)};
}

DirectProduct direct_product(const PermGroup& a, const PermGroup& b) {
  DirectProduct d{PermGroup(1, {}), a.degree(), b.degree()};
  std::vector<Perm> gens;
  for (const Perm& x : a.generators()) gens.push_back(d.embed_left(x));
  for (const Perm& y : b.generators()) gens.push_back(d.embed_right(y));
  d.group = PermGroup(a.degree() + b.degree(), gens, a.name() + "x" + b.name());
  return d;
}

namespace {

// Extends generator images to a map on all elements along the spanning tree
// and checks it is a homomorphism (Cayley-graph consistency on generators).
std::vector<Elt> extend_hom(const GroupTable& src, const std::vector<Elt>& gen_images,
                            const std::function<Elt(Elt, Elt)>& mul_target, Elt target_identity,
                            const char* what) {
  std::vector<Elt> img(src.order(), 0);
  img[0] = target_identity;
  for (Elt e : src.bfs_order()) {
    if (e == 0) continue;
    img[e] = mul_target(gen_images[src.tree_gen(e)], img[src.tree_parent(e)]);
  }
  for (Elt e = 0; e < src.order(); ++e)
    for (std::size_t s = 0; s < src.generators().size(); ++s)
      if (img[src.mul(src.generators()[s], e)] != mul_target(gen_images[s], img[e]))
        throw ValidationError(std::string("semidirect: ") + what + " is not a homomorphism");
  return img;
}

}  // namespace

Semidirect semidirect(const PermGroup& n, const PermGroup& s, const SemidirectAction& action) {
  TablePtr nt = n.table();
  TablePtr st = s.table();
  if (action.size() != s.generators().size()) throw ValidationError("semidirect: one automorphism per generator of S required");
  const std::size_t nn = nt->order(), ns = st->order();

  // Each automorphism as a map on N's elements.
  std::vector<std::vector<Elt>> alpha;
  for (const auto& images : action) {
    if (images.size() != n.generators().size())
      throw ValidationError("semidirect: automorphism must give one image per generator of N");
    std::vector<Elt> gi;
    for (const Perm& x : images) gi.push_back(nt->index_of(x));
    auto map = extend_hom(
        *nt, gi, [&](Elt a, Elt b) { return nt->mul(a, b); }, 0, "an automorphism");
    std::vector<bool> hit(nn, false);
    for (Elt v : map) hit[v] = true;
    if (std::find(hit.begin(), hit.end(), false) != hit.end()) throw ValidationError("semidirect: action is not bijective");
    alpha.push_back(std::move(map));
  }
  // S -> Aut(N) must be a homomorphism: store automorphisms as permutations of N.
  std::vector<Perm> auts;
  for (const auto& m : alpha) {
    std::vector<Perm::Point> img(nn);
    for (std::size_t i = 0; i < nn; ++i) img[i] = static_cast<Perm::Point>(m[i]);
    auts.push_back(Perm(img));
  }
  std::vector<Perm> aut_seen;
  std::unordered_map<Perm, Elt, PermHash> aut_index;
  auto intern = [&](const Perm& a) {
    auto it = aut_index.find(a);
    if (it != aut_index.end()) return it->second;
    Elt id = static_cast<Elt>(aut_seen.size());
    aut_seen.push_back(a);
    aut_index.emplace(a, id);
    return id;
  };
  const Elt id_aut = intern(Perm::identity(nn));
  std::vector<Elt> gen_aut;
  for (const Perm& a : auts) gen_aut.push_back(intern(a));
  extend_hom(
      *st, gen_aut, [&](Elt a, Elt b) { return intern(aut_seen[a] * aut_seen[b]); }, id_aut, "the action map");

  const std::size_t degree = nn + ns;
  std::vector<Perm> ngens, sgens;
  for (const Perm& x : n.generators()) {
    Elt xi = nt->index_of(x);
    std::vector<Perm::Point> img(degree);
    for (std::size_t y = 0; y < nn; ++y) img[y] = static_cast<Perm::Point>(nt->mul(xi, static_cast<Elt>(y)));
    for (std::size_t j = 0; j < ns; ++j) img[nn + j] = static_cast<Perm::Point>(nn + j);
    ngens.push_back(Perm(img));
  }
  for (std::size_t k = 0; k < s.generators().size(); ++k) {
    Elt ti = st->generators()[k];
    std::vector<Perm::Point> img(degree);
    for (std::size_t y = 0; y < nn; ++y) img[y] = static_cast<Perm::Point>(alpha[k][y]);
    for (std::size_t j = 0; j < ns; ++j) img[nn + j] = static_cast<Perm::Point>(nn + st->mul(ti, static_cast<Elt>(j)));
    sgens.push_back(Perm(img));
  }
  std::vector<Perm> gens = ngens;
  gens.insert(gens.end(), sgens.begin(), sgens.end());
  PermGroup g(degree, gens, n.name() + ":" + s.name());
  if (g.order() != static_cast<std::uint64_t>(nn) * ns)
    throw ValidationError("semidirect: permutation representation is not faithful");
  return Semidirect{g, ngens, sgens, nn};
}

Perm Wreath::on_copy(const Perm& b, std::size_t copy) const {
  std::vector<Perm::Point> img(base_degree * p);
  for (std::size_t c = 0; c < p; ++c)
    for (std::size_t i = 0; i < base_degree; ++i)
      img[c * base_degree + i] = static_cast<Perm::Point>(c * base_degree + (c == copy ? b[i] : i));
  return Perm(img);
}

Perm Wreath::diagonal(const Perm& b) const {
  std::vector<Perm::Point> img(base_degree * p);
  for (std::size_t c = 0; c < p; ++c)
    for (std::size_t i = 0; i < base_degree; ++i) img[c * base_degree + i] = static_cast<Perm::Point>(c * base_degree + b[i]);
  return Perm(img);
}

Perm Wreath::top() const {
  std::vector<Perm::Point> img(base_degree * p);
  for (std::size_t c = 0; c < p; ++c)
    for (std::size_t i = 0; i < base_degree; ++i)
      img[c * base_degree + i] = static_cast<Perm::Point>(((c + 1) % p) * base_degree + i);
  return Perm(img);
}

std::vector<Perm> Wreath::base_factor_gens(const PermGroup& b, std::size_t copy) const {
  std::vector<Perm> out;
  for (const Perm& x : b.generators()) out.push_back(on_copy(x, copy));
  return out;
}

Wreath wreath_Cp(const PermGroup& b, std::size_t p) {
  if (!is_prime(p)) throw ValidationError("wreath_Cp: p must be prime");
  Wreath w{PermGroup(1, {}), b.degree(), p};
  std::vector<Perm> gens = w.base_factor_gens(b, 0);
  gens.push_back(w.top());
  w.group = PermGroup(b.degree() * p, gens, b.name() + "wrC" + std::to_string(p));
  return w;
}

Subgroup Quotient::preimage(const Subgroup& q) const {
  std::vector<Elt> out;
  for (Elt e = 0; e < image.size(); ++e)
    if (image[e] != kUnset && q.contains(image[e])) out.push_back(e);
  std::vector<Elt> gens(out.begin() + 1, out.end());
  return Subgroup(source, gens);
}

Subgroup Quotient::image_of(const Subgroup& k) const {
  std::vector<Elt> gens;
  for (Elt g : k.generators()) {
    if (image[g] == kUnset) throw ValidationError("quotient: element outside the ambient group");
    gens.push_back(image[g]);
  }
  return Subgroup(group.table(), gens);
}

Quotient quotient(const Subgroup& ambient, const Subgroup& normal) {
  if (!normal.is_subgroup_of(ambient) || !is_normal(ambient, normal))
    throw ValidationError("quotient: subgroup is not normal in the ambient group");
  const GroupTable& t = ambient.table();
  // Left cosets gH labelled by their least element.
  std::vector<Elt> coset_of(t.order(), Quotient::kUnset);
  std::vector<Elt> reps;
  for (Elt g : ambient.elements()) {
    if (coset_of[g] != Quotient::kUnset) continue;
    const Elt id = static_cast<Elt>(reps.size());
    reps.push_back(g);
    for (Elt h : normal.elements()) coset_of[t.mul(g, h)] = id;
  }
  const std::size_t k = reps.size();
  auto act = [&](Elt x) {
    std::vector<Perm::Point> img(k);
    for (std::size_t c = 0; c < k; ++c) img[c] = static_cast<Perm::Point>(coset_of[t.mul(x, reps[c])]);
    return Perm(img);
  };
  std::vector<Perm> gens;
  for (Elt g : ambient.generators()) gens.push_back(act(g));
  Quotient q{PermGroup(k, gens), ambient.table_ptr(), {}, {}};
  TablePtr qt = q.group.table();
  q.image.assign(t.order(), Quotient::kUnset);
  q.section.assign(qt->order(), Quotient::kUnset);
  for (Elt g : ambient.elements()) {
    Elt qi = qt->index_of(act(g));
    q.image[g] = qi;
    if (q.section[qi] == Quotient::kUnset) q.section[qi] = g;
  }
  return q;
}

}  // namespace hlim
