#include "hlim/spectral.hpp"

#include <algorithm>
#include <memory>

#include "hlim/lambda.hpp"
#include "hlim/orbit_category.hpp"

namespace hlim {

std::size_t E2Page::diagonal_sum(std::size_t n) const {
  std::size_t s = 0;
  for (std::size_t i = 0; i <= n && i < n_degrees; ++i)
    if (n - i < n_degrees) s += entries[i][n - i];
  return s;
}

namespace {

const OrbitCategory& orbit_category_of(const CatModule& phi) {
  const auto* c = dynamic_cast<const OrbitCategory*>(&phi.category());
  if (!c) throw ValidationError("functor must live on an orbit category");
  if (!is_conjugation_closed(*c)) throw ValidationError("functor must live on a conjugation-closed orbit category");
  return *c;
}

// phi pulled back to the orbit category of K on the objects of phi inside K.
struct Restricted {
  OrbitPtr category;
  CatModule functor;
};

Restricted restrict_to_subgroup(const CatModule& phi, const OrbitCategory& cat, const Subgroup& k) {
  std::vector<Subgroup> inside;
  for (const Subgroup& l : cat.objects())
    if (l.is_subgroup_of(k)) inside.push_back(l);
  if (inside.empty()) throw ValidationError("no object of the functor lies in " + k.describe());
  auto sub = std::make_shared<const OrbitCategory>(k, class_representatives(k, inside), false);
  std::vector<Obj> objects;
  for (Obj o = 0; o < sub->num_objects(); ++o) objects.push_back(*cat.find_object(sub->object(o)));
  std::vector<Mor> morphisms;
  for (Mor f = 0; f < sub->num_morphisms(); ++f)
    morphisms.push_back(cat.at(objects[sub->source(f)], objects[sub->target(f)], sub->rep(f)));
  CatModule r = pullback(phi, sub, objects, morphisms);
  return {sub, std::move(r)};
}

}  // namespace

LimitsResult kan_values(const CatModule& phi, const Subgroup& k, std::size_t n_degrees, EngineOptions options) {
  const OrbitCategory& cat = orbit_category_of(phi);
  if (!k.is_subgroup_of(cat.group())) throw ValidationError("kan_values: K is not a subgroup of the group");
  return higher_limits(restrict_to_subgroup(phi, cat, k).functor, n_degrees, options);
}

E2Page e2_quotient(const CatModule& phi, const Quotient& q, const std::vector<Subgroup>& y, std::size_t n_degrees,
                   EngineOptions options) {
  if (n_degrees == 0) throw ValidationError("e2_quotient: need at least one degree");
  const OrbitCategory& cat = orbit_category_of(phi);
  const GroupTable& tg = cat.table();
  if (q.source.get() != &tg) throw ValidationError("e2_quotient: quotient of a different group");
  const Subgroup qwhole = q.group.whole();
  for (const Subgroup& s : y)
    if (&s.table() != &qwhole.table()) throw ValidationError("e2_quotient: Y must consist of subgroups of the quotient");
  for (const Subgroup& l : cat.objects())
    if (std::find(y.begin(), y.end(), q.image_of(l)) == y.end())
      throw ValidationError("e2_quotient: the image of " + l.describe() + " is not in Y");

  auto ycat = std::make_shared<const OrbitCategory>(qwhole, class_representatives(qwhole, y), false);
  const std::size_t ny = ycat->num_objects();
  std::vector<Restricted> parts;
  std::vector<std::unique_ptr<BarCohomology>> engines;
  for (Obj o = 0; o < ny; ++o) {
    parts.push_back(restrict_to_subgroup(phi, cat, q.preimage(ycat->object(o))));
    engines.push_back(std::make_unique<BarCohomology>(parts.back().functor, n_degrees - 1, options));
  }

  const Subgroup kernel = q.preimage(Subgroup::trivial(qwhole.table_ptr()));
  E2Page page;
  page.theorem = "quotient";
  page.n_degrees = n_degrees;
  page.entries.assign(n_degrees, std::vector<std::size_t>(n_degrees, 0));

  // conjugation by g from the category of K1 to that of K2
  auto conj_map = [&](Obj o1, Obj o2, Elt g) {
    const OrbitCategory& small = *parts[o1].category;
    const OrbitCategory& big = *parts[o2].category;
    return orbit_cochain_map(
        small, big, [&](Elt e) { return tg.conj(g, e); },
        [&](Obj l, Obj r, Elt x) {
          const Obj lo = *cat.find_object(small.object(l)), ro = *cat.find_object(big.object(r));
          return phi.map(cat.at(lo, ro, tg.mul(tg.inv(x), g)));
        });
  };

  std::vector<std::vector<FpMatrix>> maps(n_degrees);
  for (Mor f = 0; f < ycat->num_morphisms(); ++f) {
    const Obj o1 = ycat->source(f), o2 = ycat->target(f);
    if (ycat->is_identity(f)) {
      for (std::size_t j = 0; j < n_degrees; ++j) maps[j].push_back(FpMatrix::identity(engines[o1]->dim(j), phi.p()));
      continue;
    }
    const Elt g = q.section[ycat->rep(f)];
    const CochainMap cm = conj_map(o1, o2, g);
    std::optional<CochainMap> other;
    if (!kernel.is_trivial()) other = conj_map(o1, o2, tg.mul(g, kernel.generators().front()));
    for (std::size_t j = 0; j < n_degrees; ++j) {
      FpMatrix m = induced_map(*engines[o2], *engines[o1], j, cm);
      if (other && m.rows() > 0 && m.cols() > 0) {
        ++page.lifts_compared;
        if (!(induced_map(*engines[o2], *engines[o1], j, *other) == m)) page.lift_independent = false;
      }
      maps[j].push_back(std::move(m));
    }
  }
  for (std::size_t j = 0; j < n_degrees; ++j) {
    std::vector<std::size_t> dims;
    for (Obj o = 0; o < ny; ++o) dims.push_back(engines[o]->dim(j));
    const CatModule row(ycat, phi.p(), dims, std::move(maps[j]));
    const LimitsResult lim = higher_limits(row, n_degrees, options);
    for (std::size_t i = 0; i < n_degrees; ++i) page.entries[i][j] = lim.dims[i];
  }
  return page;
}

E2Page e2_lambda_quotient(const FpGModule& m, const Subgroup& h, std::size_t n_degrees, EngineOptions options) {
  const Subgroup& g = m.group();
  if (!is_normal(g, h)) throw ValidationError("e2_lambda_quotient: H must be normal");
  auto cat = std::make_shared<const OrbitCategory>(g, p_subgroups(g, m.p()), false);
  const Quotient q = quotient(g, h);
  E2Page page = e2_quotient(atomic_functor(cat, m), q, p_subgroups(q.group.whole(), m.p()), n_degrees, options);
  page.theorem = "Lambda quotient";
  page.description = "lim^i over O_p(G/H) of P/H -> Lambda^j(P; M), H of order " + std::to_string(h.order());
  return page;
}

namespace {

std::size_t sylow_rank(const Subgroup& g, Fp p) {
  std::size_t e = 0;
  for (std::uint64_t s = p_part(g.order(), p); s > 1; s /= p) ++e;
  return e;
}

}  // namespace

E2Page e2_product(const DirectProduct& d, const FpGModule& m, std::size_t n_degrees, EngineOptions options) {
  if (n_degrees == 0) throw ValidationError("e2_product: need at least one degree");
  const Subgroup whole = d.group.whole();
  if (!(m.group() == whole)) throw ValidationError("e2_product: module must be over the direct product");
  const GroupTable& t = whole.table();
  std::vector<Elt> left, right;
  for (Elt x = 0; x < t.order(); ++x) {
    const auto [a, b] = d.split(t.element(x));
    if (b.is_identity()) left.push_back(x);
    if (a.is_identity()) right.push_back(x);
  }
  const Subgroup g1(whole.table_ptr(), left), g2(whole.table_ptr(), right);

  const FpGModule m2 = m.restrict(g2);
  auto cat2 = std::make_shared<const OrbitCategory>(g2, class_representatives(g2, p_subgroups(g2, m.p())), false);
  const BarCohomology engine(atomic_functor(cat2, m2), n_degrees - 1, options);

  E2Page page;
  page.theorem = "product";
  page.description = "Lambda^i(G1; Lambda^j(G2; M))";
  page.n_degrees = n_degrees;
  page.entries.assign(n_degrees, std::vector<std::size_t>(n_degrees, 0));
  page.bounded = n_degrees > std::max(sylow_rank(g1, m.p()), sylow_rank(g2, m.p()));

  // identity functor on O_p(G2) with a in G1 acting on the values
  auto action = [&](Elt a) {
    CochainMap cm;
    for (Obj o = 0; o < cat2->num_objects(); ++o) {
      cm.objects.push_back(o);
      const std::size_t dim = engine.functor().dim(o);
      cm.coefficients.push_back(dim > 0 ? m.matrix(a) : FpMatrix(0, 0, m.p()));
    }
    for (Mor f = 0; f < cat2->num_morphisms(); ++f) cm.morphisms.push_back(f);
    return cm;
  };
  std::vector<CochainMap> gens;
  for (Elt a : g1.generators()) gens.push_back(action(a));
  for (std::size_t j = 0; j < n_degrees; ++j) {
    const std::size_t dim = engine.dim(j);
    if (dim == 0) continue;
    std::vector<FpMatrix> mats;
    for (const CochainMap& cm : gens) mats.push_back(induced_map(engine, engine, j, cm));
    const FpGModule value(g1, m.p(), dim, std::move(mats));
    const LambdaResult l = lambda(value, n_degrees, options);
    for (std::size_t i = 0; i < n_degrees; ++i) page.entries[i][j] = l.dims[i];
  }
  return page;
}

CatModule cohomology_functor(const FpGModule& m) {
  const Subgroup& g = m.group();
  auto cat = std::make_shared<const OrbitCategory>(g, std::vector<Subgroup>{Subgroup::trivial(g.table_ptr())}, false);
  return atomic_functor(cat, m);
}

LimitsResult group_cohomology(const FpGModule& m, std::size_t n_degrees, EngineOptions options) {
  return higher_limits(cohomology_functor(m), n_degrees, options);
}

ConvergenceReport convergence_check(const E2Page& page, const std::vector<std::size_t>& abutment) {
  ConvergenceReport r;
  if (abutment.empty() || page.n_degrees == 0) return r;
  const std::size_t n = page.n_degrees;
  r.safe_total = std::min(page.safe_total(), abutment.size() - 1);

  std::vector<std::size_t> rows, cols;
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j)
      if (page.entries[i][j]) {
        rows.push_back(j);
        cols.push_back(i);
      }
  auto single = [](std::vector<std::size_t> v) {
    std::sort(v.begin(), v.end());
    return std::unique(v.begin(), v.end()) - v.begin() <= 1;
  };
  if (single(rows))
    r.collapse = "row";
  else if (single(cols))
    r.collapse = "column";

  for (std::size_t t = 0; t <= r.safe_total; ++t) {
    ConvergenceRow row;
    row.total = t;
    row.abutment = abutment[t];
    row.e2_sum = page.diagonal_sum(t);
    row.ok = row.abutment <= row.e2_sum;
    // differentials leaving total degree t land in total t + 1, which must be on the grid
    row.equality_asserted = !r.collapse.empty() && (page.bounded || t + 1 < n);
    if (row.equality_asserted) row.ok = row.ok && row.abutment == row.e2_sum;
    r.ok = r.ok && row.ok;
    r.rows.push_back(row);
  }
  if (page.bounded && abutment.size() + 1 >= 2 * n) {
    long long e2 = 0, ab = 0;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = 0; j < n; ++j) e2 += ((i + j) % 2 ? -1 : 1) * static_cast<long long>(page.entries[i][j]);
    for (std::size_t t = 0; t < abutment.size(); ++t) ab += (t % 2 ? -1 : 1) * static_cast<long long>(abutment[t]);
    r.euler_checked = true;
    r.ok = r.ok && e2 == ab;
  }
  return r;
}

}  // namespace hlim
