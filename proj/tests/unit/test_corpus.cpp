#include <algorithm>

#include "doctest.h"
#include "hlim/caps.hpp"
#include "hlim/corpus.hpp"
#include "hlim/lambda.hpp"

using namespace hlim;

namespace {

std::vector<Fp> digits(std::uint32_t v, Fp p, std::size_t k) {
  std::vector<Fp> out(k);
  for (std::size_t i = 0; i < k; ++i, v /= p) out[i] = v % p;
  return out;
}

void check_field(Fp p, std::size_t k) {
  GaloisField f(p, k);
  const std::uint32_t q = f.order();
  for (std::uint32_t a = 0; a < q; ++a) {
    CHECK(f.add(a, 0) == a);
    CHECK(f.mul(a, 1) == a);
    if (a) CHECK(f.mul(a, f.inv(a)) == 1);
    for (std::uint32_t b = 0; b < q; ++b) {
      CHECK(f.mul(a, b) == f.mul(b, a));
      for (std::uint32_t c = 0; c < q; c += 3) CHECK(f.mul(a, f.add(b, c)) == f.add(f.mul(a, b), f.mul(a, c)));
    }
  }
  // the primitive root is the class of x, so it shifts digits below the top degree
  for (std::size_t j = 0; j + 1 < k; ++j) {
    std::uint32_t xj = 1;
    for (std::size_t i = 0; i < j; ++i) xj *= p;
    CHECK(f.mul(f.primitive_power(1), xj) == xj * p);
  }
}

}  // namespace

TEST_CASE("finite fields") {
  check_field(2, 4);
  check_field(3, 3);
  check_field(5, 1);
  GaloisField f(2, 4);
  // the fixed field of y -> y^4 is F_4
  std::size_t fixed = 0;
  for (std::uint32_t y = 0; y < 16; ++y) fixed += f.pow(y, 4) == y;
  CHECK(fixed == 4);
  // linear maps agree with the field operations
  for (std::uint32_t c = 1; c < 16; ++c)
    for (std::size_t frob : {0u, 1u, 2u}) {
      FpMatrix m = f.linear_map(c, frob);
      for (std::uint32_t y = 0; y < 16; ++y)
        CHECK(m.apply(digits(y, 2, 4)) == digits(f.mul(c, f.pow(y, 1u << frob)), 2, 4));
    }
}

TEST_CASE("family truncations") {
  HgmFamily g0;  // p = 2, F0 = F4, F = F16, U = C5
  std::vector<std::uint64_t> orders{2, 10, 50, 250};
  for (std::size_t n = 0; n < orders.size(); ++n) {
    auto t = hgm_truncate(g0, n);
    CHECK(t.u == 5);
    CHECK(t.group.order() == orders[n]);
    CHECK(t.module.dim() == 4 * n);
    CHECK(sylow_p(t.group, 2).order() == 2);
  }
  auto d5 = hgm_truncate(g0, 1);
  CHECK(center(d5.group.whole()).is_trivial());
  CHECK(d5.group.contains(d5.frobenius));

  HgmFamily h{2, 4, 0, HgmMember::H};
  auto h2 = hgm_truncate(h, 2);
  CHECK(h2.group.order() == 225);
  CHECK(center(h2.group.whole()).order() == 225);
  CHECK(h2.module.dim() == 8);
  CHECK(hgm_truncate(h, 0).group.order() == 1);

  HgmFamily star{2, 4, 0, HgmMember::GammaStar};
  CHECK(hgm_truncate(star, 1).group.order() == 150);
  HgmFamily gamma{2, 4, 0, HgmMember::Gamma};
  CHECK(hgm_truncate(gamma, 1).group.order() == 30);
  HgmFamily h0{2, 4, 0, HgmMember::H0};
  CHECK(hgm_truncate(h0, 2).group.order() == 25);

  HgmFamily three{3, 3, 0, HgmMember::Gamma0};
  auto t3 = hgm_truncate(three, 1);
  CHECK(t3.u == 13);
  CHECK(t3.group.order() == 39);
  CHECK(t3.module.dim() == 3);

  CHECK_THROWS_AS(hgm_truncate(HgmFamily{2, 2, 0, HgmMember::H}, 1), ValidationError);
  CHECK_THROWS_AS(hgm_truncate(HgmFamily{2, 4, 3, HgmMember::H}, 1), ValidationError);
}

TEST_CASE("truncations embed compatibly") {
  for (HgmMember m : {HgmMember::Gamma0, HgmMember::GammaStar, HgmMember::H}) {
    HgmFamily fam{2, 4, 0, m};
    for (std::size_t n = 0; n < 2; ++n) {
      auto lo = hgm_truncate(fam, n), hi = hgm_truncate(fam, n + 1);
      const TablePtr tl = lo.group.table(), th = hi.group.table();
      std::vector<Elt> image(tl->order());
      for (Elt x = 0; x < tl->order(); ++x) {
        const Perm e = lo.embed(tl->element(x));
        REQUIRE(hi.group.contains(e));
        image[x] = th->index_of(e);
      }
      std::sort(image.begin(), image.end());
      CHECK(std::adjacent_find(image.begin(), image.end()) == image.end());
      for (Elt x = 0; x < tl->order(); ++x) {
        const Elt y = th->index_of(lo.embed(tl->element(x)));
        for (Elt z = 0; z < tl->order(); z += 7)
          CHECK(lo.embed(tl->element(tl->mul(x, z))) == th->element(y) * lo.embed(tl->element(z)));
        CHECK(lo.projection() * hi.module.matrix(y) == lo.module.matrix(x) * lo.projection());
      }
    }
  }
}

TEST_CASE("Lambda of the first truncation") {
  auto t = hgm_truncate(HgmFamily{}, 1);
  CHECK(lambda(t.module, 4).dims == std::vector<std::size_t>{0, 2, 0, 0});
  CHECK(lambda1_sylow_order_p(t.module, 4).dims == std::vector<std::size_t>{0, 2, 0, 0});
}

TEST_CASE("wreath tower") {
  auto t = wreath_tower(2, 2);
  REQUIRE(t.stages.size() == 3);
  CHECK(t.stages[0].p_group.order() == 2);
  CHECK(t.stages[1].p_group.order() == 8);
  CHECK(t.stages[2].p_group.order() == 128);
  CHECK(t.stages[1].a_group.order() == 4);
  CHECK(t.stages[1].q_group.order() == 2);
  for (const WreathCheck& c : wreath_checks(t)) {
    INFO(c.stage << " " << c.name << " " << c.detail);
    CHECK(c.passed);
  }
  auto t3 = wreath_tower(3, 1);
  CHECK(t3.stages[1].p_group.order() == 81);
  for (const WreathCheck& c : wreath_checks(t3)) {
    INFO(c.stage << " " << c.name << " " << c.detail);
    CHECK(c.passed);
  }
  CHECK_THROWS_AS(wreath_tower(3, 2), CapExceeded);
}
