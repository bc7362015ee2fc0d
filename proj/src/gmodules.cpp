#include "hlim/gmodules.hpp"

#include <random>

#include "hlim/fp.hpp"

namespace hlim {

// ----------------------------------------------------------------- FpGModule

FpGModule::FpGModule(Subgroup group, Fp p, std::size_t dim, std::vector<FpMatrix> generators)
    : group_(std::move(group)), p_(p), dim_(dim) {
  if (!is_prime(p)) throw ValidationError("module: p must be prime");
  const auto& gens = group_.generators();
  if (generators.size() != gens.size())
    throw ValidationError("module: expected " + std::to_string(gens.size()) + " generator matrices, got " +
                          std::to_string(generators.size()));
  for (const FpMatrix& m : generators)
    if (m.rows() != dim || m.cols() != dim || m.p() != p)
      throw ValidationError("module: generator matrix has the wrong shape or field");
  const GroupTable& t = group_.table();
  elems_.assign(t.order(), FpMatrix());
  std::vector<bool> known(t.order(), false);
  elems_[0] = FpMatrix::identity(dim, p);
  known[0] = true;
  std::vector<Elt> queue{0};
  for (std::size_t head = 0; head < queue.size(); ++head) {
    const Elt e = queue[head];
    for (std::size_t i = 0; i < gens.size(); ++i) {
      const Elt next = t.mul(e, gens[i]);
      FpMatrix m = elems_[e] * generators[i];
      if (!known[next]) {
        known[next] = true;
        elems_[next] = std::move(m);
        queue.push_back(next);
      } else if (!(elems_[next] == m)) {
        throw ValidationError("module: generator matrices do not define a homomorphism");
      }
    }
  }
}

FpGModule FpGModule::from_elements(Subgroup group, Fp p, std::size_t dim, const std::function<FpMatrix(Elt)>& rho) {
  std::vector<FpMatrix> gens;
  for (Elt g : group.generators()) gens.push_back(rho(g));
  FpGModule m(std::move(group), p, dim, std::move(gens));
  for (Elt g : m.group().elements())
    if (!(rho(g) == m.matrix(g))) throw ValidationError("module: element matrices are not a homomorphism");
  return m;
}

FpGModule FpGModule::trivial(Subgroup group, Fp p, std::size_t dim) {
  std::vector<FpMatrix> gens(group.generators().size(), FpMatrix::identity(dim, p));
  return FpGModule(std::move(group), p, dim, std::move(gens));
}

FpGModule FpGModule::permutation(Subgroup group, Fp p) {
  const std::size_t n = group.table().degree();
  std::vector<FpMatrix> gens;
  for (Elt g : group.generators()) {
    const Perm& x = group.table().element(g);
    FpMatrix m(n, n, p);
    for (std::size_t i = 0; i < n; ++i) m(x[i], i) = 1;
    gens.push_back(std::move(m));
  }
  return FpGModule(std::move(group), p, n, std::move(gens));
}

const FpMatrix& FpGModule::matrix(Elt g) const {
  if (g >= elems_.size() || !group_.contains(g)) throw ValidationError("module: element outside the acting group");
  return elems_[g];
}

FpGModule FpGModule::restrict(const Subgroup& h) const {
  if (!h.is_subgroup_of(group_)) throw ValidationError("module: restriction to a non-subgroup");
  std::vector<FpMatrix> gens;
  for (Elt g : h.generators()) gens.push_back(elems_[g]);
  return FpGModule(h, p_, dim_, std::move(gens));
}

FpMatrix fixed_points(const FpGModule& m, const Subgroup& h) {
  const std::size_t d = m.dim();
  FpMatrix stacked(0, d, m.p());
  const FpMatrix id = FpMatrix::identity(d, m.p());
  for (Elt g : h.generators()) stacked = FpMatrix::vstack(stacked, m.matrix(g) - id);
  return stacked.kernel();
}

Subgroup centralizer_of_module(const FpGModule& m) {
  std::vector<Elt> kernel;
  for (Elt g : m.group().elements())
    if (m.matrix(g).is_identity()) kernel.push_back(g);
  return Subgroup(m.group().table_ptr(), kernel);
}

FpGModule outer_tensor(const DirectProduct& d, const FpGModule& left, const FpGModule& right) {
  if (left.p() != right.p()) throw ValidationError("outer_tensor: modules over different fields");
  const TablePtr t = d.group.table();
  return FpGModule::from_elements(d.group.whole(), left.p(), left.dim() * right.dim(), [&](Elt x) {
    auto [a, b] = d.split(t->element(x));
    return FpMatrix::kronecker(left.matrix(left.group().table().index_of(a)),
                               right.matrix(right.group().table().index_of(b)));
  });
}

FpGModule pullback_module(const Subgroup& g, const FpGModule& m, const std::function<Elt(Elt)>& image) {
  return FpGModule::from_elements(g, m.p(), m.dim(), [&](Elt x) { return m.matrix(image(x)); });
}

// ----------------------------------------------------------------- CatModule

CatModule::CatModule(CategoryPtr category, Fp p, std::vector<std::size_t> dims, std::vector<FpMatrix> maps)
    : cat_(std::move(category)), p_(p), dims_(std::move(dims)), maps_(std::move(maps)) {
  if (dims_.size() != cat_->num_objects()) throw ValidationError("functor: one dimension per object required");
  if (maps_.size() != cat_->num_morphisms()) throw ValidationError("functor: one matrix per morphism required");
  for (Mor f = 0; f < maps_.size(); ++f) {
    const FpMatrix& m = maps_[f];
    if (m.rows() != dims_[cat_->source(f)] || m.cols() != dims_[cat_->target(f)] || m.p() != p_)
      throw ValidationError("functor: matrix of morphism " + std::to_string(f) + " has the wrong shape");
  }
}

bool CatModule::is_zero() const {
  for (std::size_t d : dims_)
    if (d) return false;
  return true;
}

FunctorialityReport check_functoriality(const CatModule& phi, std::size_t exhaustive_pairs, std::size_t samples,
                                        std::uint64_t seed) {
  FunctorialityReport r;
  const FiniteCategory& c = phi.category();
  for (Obj o = 0; o < c.num_objects(); ++o)
    if (!phi.map(c.identity(o)).is_identity()) {
      r.ok = false;
      r.first_failure = "identity of object " + c.object_label(o) + " is not sent to the identity";
    }
  auto check = [&](Mor f, Mor g) {  // f : a -> b, g : b -> c
    ++r.pairs_checked;
    if (!(phi.map(c.compose(g, f)) == phi.map(f) * phi.map(g))) {
      if (r.ok) r.first_failure = "functoriality fails at (" + std::to_string(g) + "," + std::to_string(f) + ")";
      r.ok = false;
    }
  };
  std::size_t pairs = 0;
  for (Mor f = 0; f < c.num_morphisms(); ++f) pairs += c.out_degree(c.target(f));
  if (pairs <= exhaustive_pairs) {
    for (Mor f = 0; f < c.num_morphisms(); ++f)
      for (Mor g = c.out_begin(c.target(f)); g < c.out_end(c.target(f)); ++g) check(f, g);
  } else {
    r.exhaustive = false;
    std::mt19937_64 rng(seed);
    for (std::size_t s = 0; s < samples; ++s) {
      Mor f = static_cast<Mor>(rng() % c.num_morphisms());
      Mor g = c.out_begin(c.target(f)) + static_cast<Mor>(rng() % c.out_degree(c.target(f)));
      check(f, g);
    }
  }
  return r;
}

CatModule atomic_functor(const OrbitPtr& c, const FpGModule& m) {
  auto triv = c->trivial_object();
  if (!triv) throw ValidationError("atomic functor: the trivial subgroup is not an object");
  const GroupTable& t = c->table();
  if (&t != &m.group().table()) throw ValidationError("atomic functor: module and category over different groups");
  std::vector<std::size_t> dims(c->num_objects(), 0);
  dims[*triv] = m.dim();
  std::vector<FpMatrix> maps;
  maps.reserve(c->num_morphisms());
  for (Mor f = 0; f < c->num_morphisms(); ++f) {
    if (c->source(f) == *triv && c->target(f) == *triv)
      maps.push_back(m.matrix(t.inv(c->rep(f))));
    else
      maps.emplace_back(dims[c->source(f)], dims[c->target(f)], m.p());
  }
  return CatModule(c, m.p(), std::move(dims), std::move(maps));
}

CatModule fixedpoint_functor(const OrbitPtr& c, const FpGModule& m) {
  const GroupTable& t = c->table();
  if (&t != &m.group().table()) throw ValidationError("fixed-point functor: module and category over different groups");
  std::vector<FpMatrix> bases;
  std::vector<std::size_t> dims;
  for (Obj o = 0; o < c->num_objects(); ++o) {
    bases.push_back(fixed_points(m, c->object(o)));
    dims.push_back(bases.back().cols());
  }
  std::vector<FpMatrix> maps;
  maps.reserve(c->num_morphisms());
  for (Mor f = 0; f < c->num_morphisms(); ++f) {
    const Obj a = c->source(f), b = c->target(f);
    auto x = bases[a].solve(m.matrix(t.inv(c->rep(f))) * bases[b]);
    if (!x) throw ValidationError("fixed-point functor: image not fixed (module and category disagree)");
    maps.push_back(std::move(*x));
  }
  return CatModule(c, m.p(), std::move(dims), std::move(maps));
}

CatModule coinduced_functor(const CategoryPtr& c, Obj source, Fp p, std::size_t m0) {
  std::vector<std::size_t> dims;
  for (Obj d = 0; d < c->num_objects(); ++d) dims.push_back(c->hom_size(source, d) * m0);
  std::vector<FpMatrix> maps;
  maps.reserve(c->num_morphisms());
  for (Mor f = 0; f < c->num_morphisms(); ++f) {
    const Obj d = c->source(f), e = c->target(f);
    FpMatrix m(dims[d], dims[e], p);
    const Mor d0 = c->hom(source, d).first, e0 = c->hom(source, e).first;
    for (Mor phi = d0; phi < c->hom(source, d).second; ++phi) {
      const Mor psi = c->compose(f, phi);
      for (std::size_t j = 0; j < m0; ++j) m((phi - d0) * m0 + j, (psi - e0) * m0 + j) = 1;
    }
    maps.push_back(std::move(m));
  }
  return CatModule(c, p, std::move(dims), std::move(maps));
}

CatModule constant_functor(const CategoryPtr& c, Fp p, std::size_t d) {
  std::vector<FpMatrix> maps(c->num_morphisms(), FpMatrix::identity(d, p));
  return CatModule(c, p, std::vector<std::size_t>(c->num_objects(), d), std::move(maps));
}

CatModule pullback(const CatModule& phi, const CategoryPtr& domain, const std::vector<Obj>& object_map,
                   const std::vector<Mor>& morphism_map) {
  std::vector<std::size_t> dims;
  for (Obj o = 0; o < domain->num_objects(); ++o) dims.push_back(phi.dim(object_map[o]));
  std::vector<FpMatrix> maps;
  maps.reserve(domain->num_morphisms());
  for (Mor f = 0; f < domain->num_morphisms(); ++f) maps.push_back(phi.map(morphism_map[f]));
  return CatModule(domain, phi.p(), std::move(dims), std::move(maps));
}

CatModule restrict_to(const CatModule& phi, const OrbitPtr& sub) {
  auto parent = std::dynamic_pointer_cast<const OrbitCategory>(phi.category_ptr());
  if (!parent) throw ValidationError("restriction: functor is not defined on an orbit category");
  std::vector<Obj> objs;
  for (const Subgroup& h : sub->objects()) {
    auto o = parent->find_object(h);
    if (!o) throw ValidationError("restriction: object " + h.describe() + " is missing from the parent category");
    objs.push_back(*o);
  }
  std::vector<Mor> mors;
  for (Mor f = 0; f < sub->num_morphisms(); ++f)
    mors.push_back(parent->at(objs[sub->source(f)], objs[sub->target(f)], sub->rep(f)));
  return pullback(phi, sub, objs, mors);
}

CatModule restrict_functor(const CatModule& phi, const std::vector<Obj>& objects) {
  auto parent = std::dynamic_pointer_cast<const OrbitCategory>(phi.category_ptr());
  if (!parent) throw ValidationError("restriction: functor is not defined on an orbit category");
  auto sub = std::make_shared<const OrbitCategory>(full_subcategory(*parent, objects));
  if (!is_conjugation_closed(*sub)) throw ValidationError("restriction: object subset is not conjugation-closed");
  return restrict_to(phi, sub);
}

CatModule pullback_along_quotient(const CatModule& phi_bar, const Quotient& q, const OrbitPtr& x) {
  auto y = std::dynamic_pointer_cast<const OrbitCategory>(phi_bar.category_ptr());
  if (!y) throw ValidationError("pullback: functor is not defined on an orbit category");
  if (&x->table() != q.source.get()) throw ValidationError("pullback: category is not over the quotient's source");
  std::vector<Obj> objs;
  for (const Subgroup& k : x->objects()) {
    auto o = y->find_object(q.image_of(k));
    if (!o) throw ValidationError("pullback: image of " + k.describe() + " is not an object of the quotient category");
    objs.push_back(*o);
  }
  std::vector<Mor> mors;
  for (Mor f = 0; f < x->num_morphisms(); ++f)
    mors.push_back(y->at(objs[x->source(f)], objs[x->target(f)], q.image[x->rep(f)]));
  return pullback(phi_bar, x, objs, mors);
}

NatTransformations nat_transformations(const CatModule& phi, const CatModule& psi) {
  const FiniteCategory& c = phi.category();
  if (&c != &psi.category()) throw ValidationError("natural transformations: functors on different categories");
  const Fp p = phi.p();
  const PrimeField& f = field_for(p);
  std::vector<std::size_t> offset(c.num_objects() + 1, 0);
  for (Obj o = 0; o < c.num_objects(); ++o) offset[o + 1] = offset[o] + psi.dim(o) * phi.dim(o);
  const std::size_t n = offset.back();
  NatTransformations out;
  out.unknowns = n;
  if (n == 0) return out;
  // unknown (o, r, s) is entry (r, s) of T_o : phi(o) -> psi(o), a psi.dim(o) x phi.dim(o) matrix
  auto var = [&](Obj o, std::size_t r, std::size_t s) { return offset[o] + r * phi.dim(o) + s; };
  std::vector<Fp> rows;
  std::size_t nrows = 0;
  auto compact = [&] {
    FpMatrix m(nrows, n, p, rows);
    auto piv = m.rref_in_place();
    rows.assign(m.entries().begin(), m.entries().begin() + static_cast<std::ptrdiff_t>(piv.size() * n));
    nrows = piv.size();
  };
  for (Mor g = 0; g < c.num_morphisms(); ++g) {
    if (c.is_identity(g)) continue;
    const Obj a = c.source(g), b = c.target(g);
    const FpMatrix& pf = phi.map(g);
    const FpMatrix& qf = psi.map(g);
    // psi(g) T_b - T_a phi(g) = 0, entry (r, s) with r < psi.dim(a), s < phi.dim(b)
    for (std::size_t r = 0; r < psi.dim(a); ++r)
      for (std::size_t s = 0; s < phi.dim(b); ++s) {
        std::vector<Fp> row(n, 0);
        for (std::size_t k = 0; k < psi.dim(b); ++k)
          if (qf(r, k)) row[var(b, k, s)] = f.add(row[var(b, k, s)], qf(r, k));
        for (std::size_t k = 0; k < phi.dim(a); ++k)
          if (pf(k, s)) row[var(a, r, k)] = f.sub(row[var(a, r, k)], pf(k, s));
        rows.insert(rows.end(), row.begin(), row.end());
        ++nrows;
        if (nrows >= 2 * n + 64) compact();
      }
  }
  compact();
  out.dimension = n - nrows;
  return out;
}

}  // namespace hlim
