#include <memory>
#include <random>

#include "doctest.h"
#include "hlim/barlim.hpp"
#include "hlim/caps.hpp"

using namespace hlim;

namespace {

OrbitPtr orbit(const Subgroup& g, std::uint64_t p) { return std::make_shared<const OrbitCategory>(p_orbit_category(g, p)); }
OrbitPtr skel(const Subgroup& g, std::uint64_t p) {
  return std::make_shared<const OrbitCategory>(skeleton(p_orbit_category(g, p)));
}
OrbitPtr one_object(const PermGroup& g) {
  return std::make_shared<const OrbitCategory>(build_orbit_category(g, {Subgroup::trivial(g.table())}));
}

// Cohomology from the explicit complex, with ranks taken by dense elimination.
std::vector<std::size_t> dense_cohomology(const CochainComplex& c) {
  std::vector<std::size_t> ranks, out;
  for (const SparseMatrix& d : c.d) ranks.push_back(d.to_dense().rank());
  for (std::size_t n = 0; n < c.d.size(); ++n) out.push_back(c.dims[n] - ranks[n] - (n ? ranks[n - 1] : 0));
  return out;
}

std::vector<CatModule> functors(const OrbitPtr& c, Fp p) {
  std::vector<CatModule> out;
  const Subgroup& g = c->group();
  out.push_back(constant_functor(c, p, 1));
  out.push_back(atomic_functor(c, FpGModule::trivial(g, p, 1)));
  out.push_back(atomic_functor(c, FpGModule::permutation(g, p)));
  out.push_back(fixedpoint_functor(c, FpGModule::permutation(g, p)));
  out.push_back(coinduced_functor(c, 0, p, 1));
  return out;
}

}  // namespace

TEST_CASE("cohomology of cyclic groups") {
  auto c2 = one_object(cyclic_group(2));
  CHECK(higher_limits(constant_functor(c2, 2, 1), 5).dims == std::vector<std::size_t>{1, 1, 1, 1, 1});
  auto cx = bar_complex(constant_functor(c2, 2, 1), 4, true);
  CHECK(cx.dims == std::vector<std::size_t>{1, 1, 1, 1, 1});
  auto c3 = one_object(cyclic_group(3));
  CHECK(higher_limits(constant_functor(c3, 2, 1), 4).dims == std::vector<std::size_t>{1, 0, 0, 0});
  CHECK(higher_limits(constant_functor(c3, 3, 1), 4).dims == std::vector<std::size_t>{1, 1, 1, 1});
  auto c4 = one_object(cyclic_group(4));
  CHECK(higher_limits(constant_functor(c4, 2, 1), 4).dims == std::vector<std::size_t>{1, 1, 1, 1});
}

TEST_CASE("engine agrees with explicit normalized and full complexes") {
  std::vector<std::pair<PermGroup, Fp>> cases{{symmetric_group(3), 3}, {symmetric_group(3), 2}, {cyclic_group(4), 2},
                                              {dihedral_group(5), 2}, {cyclic_group(6), 3}, {cyclic_group(6), 2}};
  for (auto& [g, p] : cases) {
    auto c = orbit(g.whole(), p);
    for (const CatModule& phi : functors(c, p)) {
      auto norm = bar_complex(phi, 3, true);
      CHECK(norm.composites_vanish());
      auto dense = dense_cohomology(norm);
      CHECK(cohomology(norm).dims == dense);
      CHECK(higher_limits(phi, 3).dims == dense);
    }
  }
  // the full complex is only small enough on tiny categories
  for (auto& [g, p] : std::vector<std::pair<PermGroup, Fp>>{{cyclic_group(2), 2}, {symmetric_group(3), 3}, {cyclic_group(3), 3}}) {
    auto c = orbit(g.whole(), p);
    for (const CatModule& phi : functors(c, p)) {
      auto full = bar_complex(phi, 3, false);
      CHECK(full.composites_vanish());
      CHECK(cohomology(full).dims == dense_cohomology(bar_complex(phi, 3, true)));
    }
  }
}

TEST_CASE("group cohomology of the Klein four-group") {
  PermGroup v4(4, {Perm::from_cycles("(0 1)(2 3)", 4), Perm::from_cycles("(0 2)(1 3)", 4)});
  auto c = one_object(v4);
  auto k = constant_functor(c, 2, 1);
  // dimensions n + 1 (polynomial ring on two degree-one classes)
  CHECK(higher_limits(k, 4).dims == std::vector<std::size_t>{1, 2, 3, 4});
  CHECK(dense_cohomology(bar_complex(k, 4, false)) == std::vector<std::size_t>{1, 2, 3, 4});
}

TEST_CASE("pivot rules and clearing agree") {
  PermGroup d5 = dihedral_group(5);
  auto c = skel(d5.whole(), 2);
  for (const CatModule& phi : functors(c, 2)) {
    auto base = higher_limits(phi, 3);
    CHECK(higher_limits(phi, 3, {PivotRule::MinRowDescending, true, 0}).dims == base.dims);
    CHECK(higher_limits(phi, 3, {PivotRule::MaxRowAscending, false, 0}).dims == base.dims);
    CHECK(higher_limits(phi, 3, {PivotRule::MinRowDescending, false, 0}).dims == base.dims);
  }
}

TEST_CASE("terminal object and zero functor") {
  PermGroup s3 = symmetric_group(3);
  auto c = orbit(s3.whole(), 3);  // C3 is normal, hence terminal
  CHECK(higher_limits(constant_functor(c, 3, 1), 4).dims == std::vector<std::size_t>{1, 0, 0, 0});
  CHECK(higher_limits(constant_functor(c, 3, 0), 4).dims == std::vector<std::size_t>{0, 0, 0, 0});
  auto zero = bar_complex(constant_functor(c, 3, 0), 3, true);
  CHECK(zero.dims == std::vector<std::size_t>{0, 0, 0, 0});
  auto atomic = bar_complex(atomic_functor(c, FpGModule::trivial(s3.whole(), 3, 1)), 2, true);
  CHECK(atomic.dims[0] == 1);
}

TEST_CASE("cyclic p-group has vanishing Lambda") {
  for (Fp p : {2u, 3u, 5u}) {
    PermGroup cp = cyclic_group(p);
    auto c = orbit(cp.whole(), p);
    CHECK(higher_limits(atomic_functor(c, FpGModule::trivial(cp.whole(), p, 1)), 4).dims ==
          std::vector<std::size_t>{0, 0, 0, 0});
  }
}

TEST_CASE("lim0 direct") {
  PermGroup s4 = symmetric_group(4);
  auto c = orbit(s4.whole(), 2);
  auto phi = fixedpoint_functor(c, FpGModule::permutation(s4.whole(), 2));
  auto l = lim0_direct(phi);
  CHECK(l.dimension == 1);
  // the family is all-ones at the trivial subgroup
  for (const CatModule& f : functors(c, 2)) CHECK(lim0_direct(f).dimension == higher_limits(f, 1).dims[0]);
}

TEST_CASE("class_of") {
  PermGroup v4(4, {Perm::from_cycles("(0 1)(2 3)", 4), Perm::from_cycles("(0 2)(1 3)", 4)});
  auto c = one_object(v4);
  BarCohomology e(constant_functor(c, 2, 1), 2);
  std::mt19937_64 rng(3);
  for (std::size_t n = 0; n <= 2; ++n) {
    const auto& reps = e.representatives(n);
    REQUIRE(reps.size() == n + 1);
    for (std::size_t i = 0; i < reps.size(); ++i) {
      CHECK(e.coboundary(n, reps[i]).empty());
      auto coords = e.class_of(n, reps[i]);
      for (std::size_t j = 0; j < coords.size(); ++j) CHECK(coords[j] == (i == j ? 1u : 0u));
      if (n == 0) continue;
      // adding a coboundary leaves the class unchanged
      SparseVec x;
      for (std::uint64_t cell = 0; cell < e.cochain_dim(n - 1); ++cell)
        if (rng() % 2) x.emplace_back(cell, 1);
      SparseVec z = reps[i];
      for (auto& entry : e.coboundary(n - 1, x)) z.push_back(entry);
      z = consolidate(std::move(z), 2);
      CHECK(e.class_of(n, z) == coords);
    }
  }
  // a single cell of degree 1 is not a cocycle in this complex
  SparseVec bad{{0, 1}};
  if (!e.coboundary(1, bad).empty()) CHECK_THROWS_AS(e.class_of(1, bad), ValidationError);
}

TEST_CASE("chain cap propagates") {
  PermGroup s4 = symmetric_group(4);
  auto c = one_object(s4);
  EngineOptions o;
  o.chain_cap = 1000;
  CHECK_THROWS_AS(higher_limits(constant_functor(c, 2, 1), 4, o), CapExceeded);
}
