#include <algorithm>
#include <memory>
#include <random>

#include "doctest.h"
#include "hlim/lambda.hpp"

using namespace hlim;

namespace {

using Dims = std::vector<std::size_t>;

// H^*(G; M) straight from the explicit normalized complex on one object.
Dims explicit_group_cohomology(const FpGModule& m, std::size_t n) {
  auto c = std::make_shared<const OrbitCategory>(m.group(), std::vector<Subgroup>{Subgroup::trivial(m.group().table_ptr())}, false);
  auto cx = bar_complex(atomic_functor(c, m), n, true);
  Dims out;
  std::vector<std::size_t> ranks;
  for (const SparseMatrix& d : cx.d) ranks.push_back(d.to_dense().rank());
  for (std::size_t i = 0; i < n; ++i) out.push_back(cx.dims[i] - ranks[i] - (i ? ranks[i - 1] : 0));
  return out;
}

Subgroup generated(const PermGroup& g, std::initializer_list<const char*> cycles) {
  std::vector<Perm> gens;
  for (const char* c : cycles) gens.push_back(Perm::from_cycles(c, g.degree()));
  return g.subgroup(gens);
}

}  // namespace

TEST_CASE("lambda of the trivial group is the module in degree zero") {
  PermGroup e = trivial_group();
  auto r = lambda(FpGModule::trivial(e.whole(), 3, 2), 3);
  CHECK(r.dims == Dims{2, 0, 0});
  CHECK(r.provenance == std::vector<Provenance>(3, Provenance::BarComplex));
}

TEST_CASE("lambda of cyclic p-groups vanishes") {
  for (Fp p : {2u, 3u, 5u}) {
    PermGroup cp = cyclic_group(p);
    CHECK(lambda(FpGModule::trivial(cp.whole(), p, 1), 4).is_zero());
    CHECK(lambda(FpGModule::permutation(cp.whole(), p), 4).is_zero());
    auto s = shortcut_Op_vanishing(FpGModule::trivial(cp.whole(), p, 1), 4);
    REQUIRE(s);
    CHECK(s->provenance[0] == Provenance::ShortcutOp);
  }
}

TEST_CASE("normal p-subgroup shortcut agrees with the bar complex") {
  PermGroup s4 = symmetric_group(4), s3 = symmetric_group(3), c6 = cyclic_group(6);
  std::vector<FpGModule> ms{FpGModule::permutation(s4.whole(), 2), FpGModule::trivial(s4.whole(), 2, 1),
                            FpGModule::permutation(s3.whole(), 3), FpGModule::trivial(s3.whole(), 3, 2),
                            FpGModule::permutation(c6.whole(), 2), FpGModule::permutation(c6.whole(), 3)};
  for (const FpGModule& m : ms) {
    auto s = shortcut_Op_vanishing(m, 4);
    REQUIRE(s);
    CHECK(s->dims == lambda(m, 4).dims);
  }
  // no normal 2-subgroup in S3 or D5
  PermGroup d5 = dihedral_group(5);
  CHECK_FALSE(shortcut_Op_vanishing(FpGModule::trivial(s3.whole(), 2, 1), 4));
  CHECK_FALSE(shortcut_Op_vanishing(FpGModule::trivial(d5.whole(), 2, 1), 4));
}

TEST_CASE("Sylow subgroup of order p") {
  PermGroup s3 = symmetric_group(3), d5 = dihedral_group(5);
  // permutation modules: Fix_S has one dimension per S-orbit
  auto a = FpGModule::permutation(s3.whole(), 2);
  CHECK(lambda1_sylow_order_p(a, 4).dims == Dims{0, 1, 0, 0});
  CHECK(lambda(a, 4).dims == Dims{0, 1, 0, 0});
  auto b = FpGModule::permutation(d5.whole(), 2);
  CHECK(lambda1_sylow_order_p(b, 4).dims == Dims{0, 2, 0, 0});
  CHECK(lambda(b, 4).dims == Dims{0, 2, 0, 0});
  CHECK(lambda_auto(b, 4).provenance[1] == Provenance::ShortcutSylowP);
  // trivial coefficients: both fixed spaces are everything
  auto t = FpGModule::trivial(d5.whole(), 2, 3);
  CHECK(lambda1_sylow_order_p(t, 3).dims == Dims{0, 0, 0});
  CHECK(lambda(t, 3).dims == Dims{0, 0, 0});
  auto p3 = FpGModule::permutation(s3.whole(), 3);
  CHECK(lambda1_sylow_order_p(p3, 3).dims == lambda(p3, 3).dims);
  PermGroup s4 = symmetric_group(4);
  CHECK_THROWS_AS(lambda1_sylow_order_p(FpGModule::trivial(s4.whole(), 2, 1), 3), ValidationError);
}

TEST_CASE("lambda in degree zero") {
  PermGroup c3 = cyclic_group(3), s3 = symmetric_group(3), d5 = dihedral_group(5);
  std::vector<FpGModule> ms{FpGModule::permutation(c3.whole(), 2), FpGModule::trivial(c3.whole(), 2, 2),
                            FpGModule::permutation(s3.whole(), 2), FpGModule::permutation(s3.whole(), 5),
                            FpGModule::permutation(d5.whole(), 3), FpGModule::permutation(d5.whole(), 2)};
  for (const FpGModule& m : ms) {
    auto r = lambda(m, 3);
    CHECK(r.dims[0] == lambda0_direct(m));
    if (m.group().order() % m.p() != 0) {
      // no p-torsion: Lambda is the invariants in degree zero
      CHECK(r.dims[0] == fixed_points(m, m.group()).cols());
      CHECK(r.dims[1] == 0);
      CHECK(r.dims[2] == 0);
    }
  }
}

TEST_CASE("lambda_X") {
  PermGroup s3 = symmetric_group(3);
  auto m = FpGModule::trivial(s3.whole(), 3, 1);
  auto all = p_subgroups(s3.whole(), 3);
  CHECK(lambda_X(m, all, 4).dims == lambda(m, 4).dims);
  const Subgroup one = Subgroup::trivial(s3.table());
  // X = {1} is group cohomology: H^*(S3; F3) is the C2-invariant part of H^*(C3; F3)
  CHECK(lambda_X(m, {one}, 5).dims == Dims{1, 0, 0, 1, 1});
  CHECK(lambda_X(m, {one}, 5).dims == explicit_group_cohomology(m, 5));
  CHECK(lambda_X(m, all, 4).is_zero());
  PermGroup c3 = cyclic_group(3);
  auto k = FpGModule::trivial(c3.whole(), 3, 1);
  CHECK(lambda(k, 4).is_zero());
  CHECK(lambda_X(k, {Subgroup::trivial(c3.table())}, 4).dims == Dims{1, 1, 1, 1});

  CHECK_THROWS_AS(lambda_X(m, {all.back()}, 3), ValidationError);
  PermGroup s4 = symmetric_group(4);
  auto m4 = FpGModule::permutation(s4.whole(), 2);
  CHECK_THROWS_AS(lambda_X(m4, {Subgroup::trivial(s4.table()), generated(s4, {"(0 1)"})}, 3), ValidationError);
  CHECK_THROWS_AS(lambda_X(m4, {Subgroup::trivial(s4.table()), generated(s4, {"(0 1 2)"})}, 3), ValidationError);
}

TEST_CASE("lambda_X is independent of the order of X") {
  PermGroup d5 = dihedral_group(5), s4 = symmetric_group(4);
  std::mt19937_64 rng(11);
  for (const FpGModule& m : {FpGModule::permutation(d5.whole(), 2), FpGModule::permutation(s4.whole(), 3)}) {
    auto x = p_subgroups(m.group(), m.p());
    auto base = lambda_X(m, x, 3).dims;
    for (int i = 0; i < 3; ++i) {
      std::shuffle(x.begin(), x.end(), rng);
      CHECK(lambda_X(m, x, 3).dims == base);
    }
  }
}

TEST_CASE("reduction to the normalizer quotient") {
  SUBCASE("Q = C3 in S3") {
    PermGroup s3 = symmetric_group(3);
    const Subgroup one = Subgroup::trivial(s3.table()), c3 = generated(s3, {"(0 1 2)"});
    auto v = FpGModule::trivial(s3.whole(), 3, 1);
    auto red = reduce_atomic(s3.whole(), {one, c3}, c3, v);
    CHECK(red.quotient.group.order() == 2);
    REQUIRE(red.y.size() == 1);
    CHECK(red.y[0].is_trivial());
    auto sides = reduction_sides(s3.whole(), {one, c3}, c3, v, 3);
    CHECK(sides.original.dims == Dims{1, 0, 0});
    CHECK(sides.reduced.dims == Dims{1, 0, 0});
  }
  SUBCASE("Q = 1 is the identity reduction") {
    PermGroup d5 = dihedral_group(5);
    auto v = FpGModule::permutation(d5.whole(), 2);
    auto x = p_subgroups(d5.whole(), 2);
    auto red = reduce_atomic(d5.whole(), x, Subgroup::trivial(d5.table()), v);
    CHECK(red.quotient.group.order() == 10);
    CHECK(red.y.size() == x.size());
    auto sides = reduction_sides(d5.whole(), x, Subgroup::trivial(d5.table()), v, 3);
    CHECK(sides.original.dims == sides.reduced.dims);
    CHECK(sides.original.dims == lambda(v, 3).dims);
  }
  SUBCASE("Q = V4 in S4") {
    PermGroup s4 = symmetric_group(4);
    const Subgroup v4 = largest_normal_p_subgroup(s4.whole(), 2);
    auto x = p_subgroups(s4.whole(), 2);
    Quotient q = quotient(s4.whole(), v4);
    auto perm = FpGModule::permutation(q.group.whole(), 2);
    auto v = FpGModule::from_elements(s4.whole(), 2, perm.dim(), [&](Elt g) { return perm.matrix(q.image[g]); });
    for (const FpGModule& val : {v, FpGModule::trivial(s4.whole(), 2, 1)}) {
      auto sides = reduction_sides(s4.whole(), x, v4, val, 3);
      CHECK(sides.original.dims == sides.reduced.dims);
    }
    auto sides = reduction_sides(s4.whole(), x, v4, v, 3);
    // over S3 at p = 2 the quotient has Sylow subgroups of order 2
    auto red = reduce_atomic(s4.whole(), x, v4, v);
    CHECK(sides.reduced.dims == lambda1_sylow_order_p(red.module, 3).dims);
  }
  SUBCASE("Q a transposition in S4") {
    PermGroup s4 = symmetric_group(4);
    const Subgroup q = generated(s4, {"(0 1)"});
    auto x = p_subgroups(s4.whole(), 2);
    const Subgroup n = normalizer(s4.whole(), q);
    CHECK(n.order() == 4);
    for (std::size_t d : {1u, 2u}) {
      auto sides = reduction_sides(s4.whole(), x, q, FpGModule::trivial(n, 2, d), 3);
      CHECK(sides.original.dims == sides.reduced.dims);
    }
  }
  SUBCASE("Q a reflection in D5") {
    PermGroup d5 = dihedral_group(5);
    auto x = p_subgroups(d5.whole(), 2);
    const Subgroup q = x[1];
    auto sides = reduction_sides(d5.whole(), x, q, FpGModule::trivial(normalizer(d5.whole(), q), 2, 2), 3);
    CHECK(sides.original.dims == Dims{2, 0, 0});
    CHECK(sides.reduced.dims == Dims{2, 0, 0});
  }
  SUBCASE("closure hypothesis") {
    PermGroup s4 = symmetric_group(4);
    const Subgroup q = generated(s4, {"(0 1)"});
    std::vector<Subgroup> x{Subgroup::trivial(s4.table())};
    for (const Subgroup& h : p_subgroups(s4.whole(), 2))
      if ((h.order() == 2 && s4.table()->element(h.elements()[1]).to_cycles().size() == 5) || h.order() == 8)
        x.push_back(h);
    CHECK_THROWS_AS(reduce_atomic(s4.whole(), x, q, FpGModule::trivial(normalizer(s4.whole(), q), 2, 1)),
                    ValidationError);
  }
}

TEST_CASE("centralizer vanishing") {
  PermGroup d5 = dihedral_group(5), s3 = symmetric_group(3);
  auto t = verify_centralizer_vanishing(FpGModule::trivial(d5.whole(), 2, 1), 3);
  CHECK(t.applicable);
  CHECK(t.holds);
  CHECK(d5.table()->element_order(t.witness) == 2);
  CHECK_FALSE(verify_centralizer_vanishing(FpGModule::permutation(d5.whole(), 2), 3).applicable);
  auto s = verify_centralizer_vanishing(FpGModule::trivial(s3.whole(), 3, 2), 3);
  CHECK(s.applicable);
  CHECK(s.holds);
}

TEST_CASE("vanishing above the Sylow exponent") {
  PermGroup d5 = dihedral_group(5), c3 = cyclic_group(3);
  auto r = vanishing_bound_check(FpGModule::permutation(d5.whole(), 2), 4);
  CHECK(r.sylow_exponent == 1);
  CHECK(r.holds);
  auto c = vanishing_bound_check(FpGModule::permutation(c3.whole(), 2), 4);
  CHECK(c.sylow_exponent == 0);
  CHECK(c.holds);
  CHECK(c.lambda.dims == Dims{1, 0, 0, 0});
}

TEST_CASE("subgroup complex agrees with the bar complex") {
  const PermGroup s3 = symmetric_group(3), s4 = symmetric_group(4), d5 = dihedral_group(5);
  const PermGroup a5(5, {Perm::from_cycles("(0 1 2)", 5), Perm::from_cycles("(0 1 2 3 4)", 5)});
  std::vector<FpGModule> cases;
  for (Fp p : {2u, 3u, 5u})
    for (const PermGroup* g : {&s3, &s4, &d5, &a5}) {
      if (g->order() % p) continue;
      cases.push_back(FpGModule::trivial(g->whole(), p, 1));
      cases.push_back(FpGModule::permutation(g->whole(), p));
    }
  for (const FpGModule& m : cases) {
    const LambdaResult a = lambda_subgroup_complex(m, 3);
    CHECK(a.dims == lambda(m, 3).dims);
    CHECK(a.provenance.front() == Provenance::SubgroupComplex);
  }
  // a nonzero class in degree 2: the product of two copies of S3 at p = 2
  const DirectProduct d = direct_product(s3, s3);
  const FpGModule triv = FpGModule::trivial(d.group.whole(), 2, 1);
  CHECK(lambda_subgroup_complex(triv, 4).dims == lambda(triv, 4).dims);
  const FpGModule perm = outer_tensor(d, FpGModule::permutation(s3.whole(), 2), FpGModule::permutation(s3.whole(), 2));
  CHECK(lambda_subgroup_complex(perm, 4).dims == Dims{0, 0, 1, 0});
  // p'-groups: the empty chain alone
  const FpGModule odd = FpGModule::permutation(s3.whole(), 5);
  CHECK(lambda_subgroup_complex(odd, 2).dims == Dims{fixed_points(odd, s3.whole()).cols(), 0});
}
