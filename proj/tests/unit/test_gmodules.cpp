#include <memory>

#include "doctest.h"
#include "hlim/barlim.hpp"
#include "hlim/gmodules.hpp"

using namespace hlim;

namespace {

OrbitPtr orbit(const Subgroup& g, std::uint64_t p) { return std::make_shared<const OrbitCategory>(p_orbit_category(g, p)); }

// Every functor we know how to build on c.
std::vector<CatModule> corpus_functors(const OrbitPtr& c, Fp p) {
  std::vector<CatModule> out;
  const Subgroup& g = c->group();
  out.push_back(constant_functor(c, p, 1));
  out.push_back(constant_functor(c, p, 2));
  out.push_back(atomic_functor(c, FpGModule::trivial(g, p, 1)));
  out.push_back(atomic_functor(c, FpGModule::permutation(g, p)));
  out.push_back(fixedpoint_functor(c, FpGModule::permutation(g, p)));
  out.push_back(coinduced_functor(c, 0, p, 1));
  out.push_back(coinduced_functor(c, static_cast<Obj>(c->num_objects() - 1), p, 2));
  return out;
}

}  // namespace

TEST_CASE("module homomorphism check") {
  PermGroup c3 = cyclic_group(3);
  // a 2x2 matrix of order 2 cannot represent a generator of order 3
  FpMatrix swap(2, 2, 2, {0, 1, 1, 0});
  CHECK_THROWS_AS(FpGModule(c3.whole(), 2, 2, {swap}), ValidationError);
  FpMatrix rot(2, 2, 2, {0, 1, 1, 1});  // order 3 over F_2
  FpGModule m(c3.whole(), 2, 2, {rot});
  const Subgroup all = c3.whole();
  for (Elt a : all.elements())
    for (Elt b : all.elements())
      CHECK(m.matrix(c3.table()->mul(a, b)) == m.matrix(a) * m.matrix(b));
  CHECK(fixed_points(m, c3.whole()).cols() == 0);
  CHECK(centralizer_of_module(m).is_trivial());
  CHECK(centralizer_of_module(FpGModule::trivial(c3.whole(), 2, 3)).order() == 3);
}

TEST_CASE("fixed points of permutation modules") {
  PermGroup s4 = symmetric_group(4);
  auto m = FpGModule::permutation(s4.whole(), 2);
  CHECK(fixed_points(m, Subgroup::trivial(s4.table())).cols() == 4);
  CHECK(fixed_points(m, s4.whole()).cols() == 1);
  // orbit count of a subgroup equals the fixed dimension
  for (const Subgroup& h : all_subgroups(s4.whole())) {
    std::vector<int> orbit_of(4, -1);
    int orbits = 0;
    for (int i = 0; i < 4; ++i) {
      if (orbit_of[i] >= 0) continue;
      for (Elt x : h.elements()) orbit_of[s4.table()->element(x)[i]] = orbits;
      ++orbits;
    }
    CHECK(fixed_points(m, h).cols() == static_cast<std::size_t>(orbits));
  }
}

TEST_CASE("functoriality of the constructed functors") {
  std::vector<PermGroup> groups{symmetric_group(3), symmetric_group(4), dihedral_group(5), cyclic_group(6)};
  for (const PermGroup& g : groups)
    for (Fp p : {2u, 3u}) {
      auto c = orbit(g.whole(), p);
      for (const CatModule& phi : corpus_functors(c, p)) {
        auto r = check_functoriality(phi, 1u << 20);
        CHECK(r.ok);
        CHECK(r.exhaustive);
      }
    }
}

TEST_CASE("atomic and fixed-point functors agree at the trivial subgroup") {
  PermGroup d5 = dihedral_group(5);
  auto c = orbit(d5.whole(), 2);
  auto m = FpGModule::permutation(d5.whole(), 2);
  auto a = atomic_functor(c, m);
  auto f = fixedpoint_functor(c, m);
  const Obj one = *c->trivial_object();
  CHECK(a.dim(one) == f.dim(one));
  for (Mor x = c->hom(one, one).first; x < c->hom(one, one).second; ++x) CHECK(a.map(x) == f.map(x));
  for (Obj o = 0; o < c->num_objects(); ++o)
    if (o != one) CHECK(a.dim(o) == 0);
  // value at a Sylow 2-subgroup: a reflection fixes one vertex and swaps two pairs
  CHECK(f.dim(c->num_objects() - 1) == 3);
}

TEST_CASE("coinduced values") {
  PermGroup s3 = symmetric_group(3);
  auto c = orbit(s3.whole(), 3);
  auto i = coinduced_functor(c, 1, 3, 1);
  CHECK(i.dim(1) == 2);
  CHECK(i.dim(0) == 0);
  PermGroup d5 = dihedral_group(5);
  auto one = std::make_shared<const OrbitCategory>(build_orbit_category(d5, {Subgroup::trivial(d5.table())}));
  CHECK(coinduced_functor(one, 0, 2, 1).dim(0) == 10);
  PermGroup e = trivial_group();
  auto pt = std::make_shared<const OrbitCategory>(build_orbit_category(e, {Subgroup::trivial(e.table())}));
  auto co = coinduced_functor(pt, 0, 5, 1);
  auto k = constant_functor(pt, 5, 1);
  CHECK(co.dims() == k.dims());
  CHECK(co.map(0) == k.map(0));
}

TEST_CASE("natural transformations into coinduced functors") {
  std::vector<std::pair<PermGroup, Fp>> cases{{symmetric_group(3), 2}, {symmetric_group(3), 3}, {dihedral_group(5), 2},
                                              {symmetric_group(4), 3}, {cyclic_group(6), 2}};
  for (auto& [g, p] : cases) {
    auto c = orbit(g.whole(), p);
    for (const CatModule& phi : corpus_functors(c, p))
      for (Obj src = 0; src < c->num_objects(); ++src)
        for (std::size_t m0 : {1u, 2u}) {
          auto psi = coinduced_functor(c, src, p, m0);
          CHECK(nat_transformations(phi, psi).dimension == phi.dim(src) * m0);
        }
  }
}

TEST_CASE("natural transformations from the constant functor are lim0") {
  std::vector<PermGroup> groups{symmetric_group(3), dihedral_group(5), symmetric_group(4), cyclic_group(6)};
  for (const PermGroup& g : groups)
    for (Fp p : {2u, 3u}) {
      auto c = orbit(g.whole(), p);
      auto k = constant_functor(c, p, 1);
      for (const CatModule& phi : corpus_functors(c, p)) {
        const std::size_t nat = nat_transformations(k, phi).dimension;
        CHECK(nat == lim0_direct(phi).dimension);
        CHECK(nat == higher_limits(phi, 1).dims[0]);
      }
    }
}

TEST_CASE("restriction") {
  PermGroup s4 = symmetric_group(4);
  auto c = orbit(s4.whole(), 2);
  auto phi = fixedpoint_functor(c, FpGModule::permutation(s4.whole(), 2));
  std::vector<Obj> all;
  for (Obj o = 0; o < c->num_objects(); ++o) all.push_back(o);
  auto same = restrict_functor(phi, all);
  CHECK(same.dims() == phi.dims());
  for (Mor f = 0; f < phi.category().num_morphisms(); ++f) CHECK(same.map(f) == phi.map(f));

  auto one = restrict_functor(phi, {*c->trivial_object()});
  CHECK(one.category().num_morphisms() == 24);
  CHECK(one.dim(0) == 4);

  // the subgroups containing the normal Klein four-group: itself and the three Sylow subgroups
  Subgroup v4 = largest_normal_p_subgroup(s4.whole(), 2);
  REQUIRE(v4.order() == 4);
  std::vector<Obj> above;
  for (Obj o = 0; o < c->num_objects(); ++o)
    if (v4.is_subgroup_of(c->object(o))) above.push_back(o);
  CHECK(above.size() == 4);
  auto r = restrict_functor(phi, above);
  CHECK(r.category().num_objects() == 4);
  CHECK(check_functoriality(r).ok);
  // one Sylow subgroup alone is not conjugation-closed
  CHECK_THROWS_AS(restrict_functor(phi, {above[0], above[1]}), ValidationError);
}

TEST_CASE("pullback along a quotient") {
  PermGroup s4 = symmetric_group(4);
  Subgroup v4 = largest_normal_p_subgroup(s4.whole(), 2);
  Quotient q = quotient(s4.whole(), v4);
  REQUIRE(q.group.order() == 6);
  auto y = orbit(q.group.whole(), 2);
  auto x = std::make_shared<const OrbitCategory>(OrbitCategory(s4.whole(), {v4}, true));
  std::vector<Subgroup> above;
  for (const Subgroup& h : p_subgroups(s4.whole(), 2))
    if (v4.is_subgroup_of(h)) above.push_back(h);
  x = std::make_shared<const OrbitCategory>(OrbitCategory(s4.whole(), above, true));

  auto k = pullback_along_quotient(constant_functor(y, 2, 1), q, x);
  for (Mor f = 0; f < x->num_morphisms(); ++f) CHECK(k.map(f).is_identity());
  auto fp = fixedpoint_functor(y, FpGModule::permutation(q.group.whole(), 2));
  auto pb = pullback_along_quotient(fp, q, x);
  CHECK(check_functoriality(pb).ok);
  for (Obj o = 0; o < x->num_objects(); ++o) CHECK(pb.dim(o) == fp.dim(*y->find_object(q.image_of(x->object(o)))));

  // H = 1: the quotient is a relabelled copy and values are preserved
  Quotient same = quotient(s4.whole(), Subgroup::trivial(s4.table()));
  auto y1 = orbit(same.group.whole(), 2);
  auto x1 = orbit(s4.whole(), 2);
  auto pb1 = pullback_along_quotient(constant_functor(y1, 3, 2), same, x1);
  CHECK(pb1.dims() == std::vector<std::size_t>(x1->num_objects(), 2));
}
