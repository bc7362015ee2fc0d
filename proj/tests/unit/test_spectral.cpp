#include "doctest.h"
#include "hlim/barlim.hpp"
#include "hlim/corpus.hpp"
#include "hlim/group_ops.hpp"
#include "hlim/lambda.hpp"
#include "hlim/spectral.hpp"

using namespace hlim;

namespace {

std::vector<std::size_t> row(const E2Page& page, std::size_t j) {
  std::vector<std::size_t> out;
  for (std::size_t i = 0; i < page.n_degrees; ++i) out.push_back(page.at(i, j));
  return out;
}

std::vector<std::size_t> column(const E2Page& page, std::size_t i) { return page.entries[i]; }

}  // namespace

TEST_CASE("group cohomology") {
  const PermGroup c2 = cyclic_group(2), c3 = cyclic_group(3), s3 = symmetric_group(3);
  CHECK(group_cohomology(FpGModule::trivial(c2.whole(), 2, 1), 4).dims == std::vector<std::size_t>{1, 1, 1, 1});
  CHECK(group_cohomology(FpGModule::trivial(c3.whole(), 2, 1), 4).dims == std::vector<std::size_t>{1, 0, 0, 0});
  const FpGModule perm = FpGModule::permutation(c3.whole(), 2);
  CHECK(group_cohomology(perm, 3).dims[0] == fixed_points(perm, c3.whole()).cols());
  const FpGModule s3f3 = FpGModule::trivial(s3.whole(), 3, 1);
  const LimitsResult h = group_cohomology(s3f3, 5);
  CHECK(h.dims == std::vector<std::size_t>{1, 0, 0, 1, 1});
  // dense unnormalized complex
  CHECK(cohomology(bar_complex(cohomology_functor(s3f3), 5, false)).dims == h.dims);
}

TEST_CASE("Kan extension values") {
  const PermGroup s4 = symmetric_group(4);
  const Subgroup g = s4.whole();
  const FpGModule perm = FpGModule::permutation(g, 2);
  auto cat = std::make_shared<const OrbitCategory>(g, p_subgroups(g, 2), false);
  const CatModule phi = fixedpoint_functor(cat, perm);
  // K = G recovers the higher limits themselves
  CHECK(kan_values(phi, g, 3).dims == higher_limits(phi, 3).dims);
  // objects {1} and K = H: group cohomology of H
  const CatModule coh = cohomology_functor(FpGModule::trivial(g, 2, 1));
  const Subgroup v4 = largest_normal_p_subgroup(g, 2);
  const LimitsResult kv = kan_values(coh, v4, 3);
  CHECK(kv.dims == group_cohomology(FpGModule::trivial(v4, 2, 1), 3).dims);
  CHECK(kv.dims == std::vector<std::size_t>{1, 2, 3});
}

TEST_CASE("Lyndon-Hochschild-Serre page for C4 over C2") {
  const PermGroup c4 = cyclic_group(4);
  const Subgroup g = c4.whole();
  const FpGModule f2 = FpGModule::trivial(g, 2, 1);
  const Subgroup c2(g.table_ptr(), {g.table().pow(g.generators().front(), 2)});
  const Quotient q = quotient(g, c2);
  const E2Page page = e2_quotient(cohomology_functor(f2), q, {Subgroup::trivial(q.group.table())}, 4);
  for (std::size_t i = 0; i < 4; ++i)
    for (std::size_t j = 0; j < 4; ++j) CHECK(page.at(i, j) == 1);
  CHECK(page.lift_independent);
  CHECK(page.lifts_compared > 0);
  const auto abut = group_cohomology(f2, 4).dims;
  CHECK(abut == std::vector<std::size_t>{1, 1, 1, 1});
  const ConvergenceReport r = convergence_check(page, abut);
  CHECK(r.ok);
  CHECK(r.collapse.empty());
  CHECK(r.rows.back().e2_sum == 4);
}

TEST_CASE("quotient page over the trivial subgroup sits in row 0") {
  const PermGroup s3 = symmetric_group(3);
  const Subgroup g = s3.whole();
  auto cat = std::make_shared<const OrbitCategory>(g, p_subgroups(g, 3), false);
  for (const CatModule& phi : {atomic_functor(cat, FpGModule::permutation(g, 3)),
                               fixedpoint_functor(cat, FpGModule::permutation(g, 3)),
                               constant_functor(cat, 3, 1)}) {
    const Quotient q = quotient(g, Subgroup::trivial(g.table_ptr()));
    const E2Page page = e2_quotient(phi, q, p_subgroups(q.group.whole(), 3), 3);
    const auto lim = higher_limits(phi, 3).dims;
    CHECK(row(page, 0) == lim);
    for (std::size_t j = 1; j < 3; ++j) CHECK(row(page, j) == std::vector<std::size_t>{0, 0, 0});
    const ConvergenceReport r = convergence_check(page, lim);
    CHECK(r.ok);
    CHECK(r.collapse == "row");
  }
}

TEST_CASE("Lambda quotient pages") {
  const PermGroup s3 = symmetric_group(3);
  const FpGModule perm = FpGModule::permutation(s3.whole(), 3);
  const auto lam = lambda(perm, 3).dims;
  // H = G: one column of Lambda^j(G; M)
  const E2Page top = e2_lambda_quotient(perm, s3.whole(), 3);
  CHECK(column(top, 0) == lam);
  CHECK_FALSE(convergence_check(top, lam).collapse.empty());
  CHECK(convergence_check(top, lam).ok);
  // H = 1: one row of Lambda^i(G; M)
  const E2Page bottom = e2_lambda_quotient(perm, Subgroup::trivial(s3.whole().table_ptr()), 3);
  CHECK(row(bottom, 0) == lam);
  CHECK(convergence_check(bottom, lam).ok);

  // S4 over V4 with a zero abutment
  const PermGroup s4 = symmetric_group(4);
  const Subgroup v4 = largest_normal_p_subgroup(s4.whole(), 2);
  for (const FpGModule& m : {FpGModule::trivial(s4.whole(), 2, 1), FpGModule::permutation(s4.whole(), 2)}) {
    const E2Page page = e2_lambda_quotient(m, v4, 3);
    const auto abut = lambda(m, 3).dims;
    CHECK(abut == std::vector<std::size_t>{0, 0, 0});
    CHECK(convergence_check(page, abut).ok);
    CHECK(page.lift_independent);
  }

  // C2 x D5 over C5
  const auto t = hgm_truncate(HgmFamily{}, 1);
  const DirectProduct d = direct_product(cyclic_group(2), t.group);
  const Subgroup g = d.group.whole();
  const FpGModule m = outer_tensor(d, FpGModule::permutation(cyclic_group(2).whole(), 2), t.module);
  const Subgroup c5 = largest_normal_p_subgroup(g, 5);
  REQUIRE(c5.order() == 5);
  const E2Page page = e2_lambda_quotient(m, c5, 3);
  const auto abut = lambda(m, 3).dims;
  const ConvergenceReport r = convergence_check(page, abut);
  CHECK(r.ok);
  CHECK(page.lift_independent);
}

TEST_CASE("product pages") {
  const PermGroup s3 = symmetric_group(3), one = trivial_group(), c3 = cyclic_group(3);
  const FpGModule perm = FpGModule::permutation(s3.whole(), 3);
  const auto lam = lambda(perm, 3).dims;
  {
    // G2 trivial: a single row
    const DirectProduct d = direct_product(s3, one);
    const FpGModule m = outer_tensor(d, perm, FpGModule::trivial(one.whole(), 3, 1));
    const E2Page page = e2_product(d, m, 3);
    CHECK(row(page, 0) == lam);
    CHECK(row(page, 1) == std::vector<std::size_t>{0, 0, 0});
    CHECK(convergence_check(page, lambda(m, 3).dims).ok);
  }
  {
    // G1 trivial: a single column
    const DirectProduct d = direct_product(one, s3);
    const FpGModule m = outer_tensor(d, FpGModule::trivial(one.whole(), 3, 1), perm);
    const E2Page page = e2_product(d, m, 3);
    CHECK(column(page, 0) == lam);
    CHECK(convergence_check(page, lambda(m, 3).dims).ok);
  }
  {
    // G2 of order prime to p: Lambda^i(G1; Fix_G2 M), equal to the abutment
    const PermGroup s3b = symmetric_group(3);
    const DirectProduct d = direct_product(s3b, cyclic_group(2));
    const FpGModule m = outer_tensor(d, FpGModule::permutation(s3b.whole(), 3),
                                     FpGModule::permutation(cyclic_group(2).whole(), 3));
    const E2Page page = e2_product(d, m, 3);
    const auto abut = lambda(m, 3).dims;
    const ConvergenceReport r = convergence_check(page, abut);
    CHECK(r.ok);
    CHECK(r.collapse == "row");
    CHECK(row(page, 0) == abut);
    CHECK(page.bounded);
  }
  {
    const DirectProduct d = direct_product(c3, c3);
    const FpGModule m = FpGModule::trivial(d.group.whole(), 3, 1);
    const E2Page page = e2_product(d, m, 3);
    CHECK(convergence_check(page, lambda(m, 3).dims).ok);
  }
}

TEST_CASE("product page for D5 x D5") {
  const auto t = hgm_truncate(HgmFamily{}, 1);
  const DirectProduct d = direct_product(t.group, t.group);
  const FpGModule m = outer_tensor(d, t.module, t.module);
  const E2Page page = e2_product(d, m, 3);
  for (std::size_t i = 0; i < 3; ++i)
    for (std::size_t j = 0; j < 3; ++j) CHECK(page.at(i, j) == (i == 1 && j == 1 ? 4u : 0u));
  CHECK(page.bounded);
  const auto abut = lambda_subgroup_complex(m, 5).dims;
  CHECK(abut == std::vector<std::size_t>{0, 0, 4, 0, 0});
  const ConvergenceReport r = convergence_check(page, abut);
  CHECK(r.ok);
  CHECK(r.euler_checked);
  CHECK(r.collapse == "row");
}

TEST_CASE("convergence contract on synthetic pages") {
  E2Page page;
  page.n_degrees = 3;
  page.entries = {{1, 0, 0}, {0, 0, 0}, {1, 0, 0}};
  // a single row needs equality away from the edge
  CHECK(convergence_check(page, {1, 0, 1}).ok);
  // the top total degree is not forced
  CHECK(convergence_check(page, {1, 0, 0}).ok);
  CHECK_FALSE(convergence_check(page, {0, 0, 1}).ok);
  // more than the page allows
  CHECK_FALSE(convergence_check(page, {2, 0, 1}).ok);
  page.entries = {{1, 1, 0}, {1, 0, 0}, {0, 0, 0}};
  const ConvergenceReport r = convergence_check(page, {1, 1, 0});
  CHECK(r.ok);
  CHECK(r.collapse.empty());
  CHECK(r.safe_total == 2);
  // Euler characteristic on a bounded page
  page.bounded = true;
  page.entries = {{1, 1, 0}, {1, 1, 0}, {0, 0, 0}};
  CHECK(convergence_check(page, {1, 1, 0, 0, 0}).ok);
  CHECK(convergence_check(page, {1, 1, 0, 0, 0}).euler_checked);
  CHECK_FALSE(convergence_check(page, {1, 0, 0, 0, 0}).ok);
}
