#include <algorithm>
#include <map>
#include <set>

#include "doctest.h"
#include "hlim/fp.hpp"
#include "hlim/group_ops.hpp"

using namespace hlim;

namespace {

// Brute-force element set of <gens> straight from permutations.
std::set<Perm> brute_closure(std::size_t degree, const std::vector<Perm>& gens) {
  std::set<Perm> out{Perm::identity(degree)};
  std::vector<Perm> queue{Perm::identity(degree)};
  for (std::size_t h = 0; h < queue.size(); ++h)
    for (const Perm& g : gens) {
      Perm n = queue[h] * g;
      if (out.insert(n).second) queue.push_back(n);
    }
  return out;
}

std::set<Perm> as_perms(const Subgroup& s) {
  std::set<Perm> out;
  for (Elt e : s.elements()) out.insert(s.table().element(e));
  return out;
}

}  // namespace

TEST_CASE("perm basics") {
  Perm a = Perm::from_cycles("(0 1 2)", 4);
  Perm b = Perm::from_cycles("(0 1)", 4);
  CHECK((a * b)[0] == a[b[0]]);
  CHECK((a * b)[1] == a[b[1]]);
  CHECK(a.order() == 3);
  CHECK((a * a.inverse()).is_identity());
  CHECK(a.to_cycles() == "(0 1 2)");
  CHECK(Perm::from_cycles(a.to_cycles(), 4) == a);
  CHECK(Perm::identity(4) < a);
  CHECK_THROWS_AS(Perm({0, 0, 1}), ValidationError);
  CHECK_THROWS_AS(Perm::from_cycles("(0 1)(1 2)", 3), ValidationError);
  CHECK(a.pow(-1) == a.inverse());
}

TEST_CASE("identity is the least element of every table") {
  PermGroup g = symmetric_group(4);
  auto t = g.table();
  CHECK(t->element(0).is_identity());
  for (Elt i = 1; i < t->order(); ++i) CHECK(t->element(i - 1) < t->element(i));
}

TEST_CASE("orders") {
  CHECK(trivial_group().order() == 1);
  CHECK(symmetric_group(3).order() == 6);
  CHECK(wreath_Cp(cyclic_group(2), 2).group.order() == 8);
  CHECK(symmetric_group(8).order() == 40320);
  // stabilizer chain agrees with enumeration
  std::vector<PermGroup> groups{symmetric_group(5), dihedral_group(7), cyclic_group(12),
                                wreath_Cp(wreath_Cp(cyclic_group(2), 2).group, 2).group,
                                direct_product(dihedral_group(5), dihedral_group(5)).group};
  for (const auto& g : groups) {
    CHECK(g.order() == g.table()->order());
    CHECK(g.order() == brute_closure(g.degree(), g.generators()).size());
  }
}

TEST_CASE("table closure invariants") {
  PermGroup g = dihedral_group(6);
  auto t = g.table();
  for (Elt a = 0; a < t->order(); ++a) {
    CHECK(t->mul(a, t->inv(a)) == 0);
    for (Elt b = 0; b < t->order(); ++b) CHECK(t->find(t->element(a) * t->element(b)).has_value());
  }
}

TEST_CASE("stabilizer chain membership") {
  PermGroup a4(4, {Perm::from_cycles("(0 1 2)", 4), Perm::from_cycles("(0 1)(2 3)", 4)});
  CHECK(a4.order() == 12);
  CHECK(a4.contains(Perm::from_cycles("(1 2 3)", 4)));
  CHECK_FALSE(a4.contains(Perm::from_cycles("(0 1)", 4)));
}

TEST_CASE("normalizer") {
  PermGroup s3 = symmetric_group(3);
  Subgroup h = s3.subgroup({Perm::from_cycles("(0 1)", 3)});
  CHECK(normalizer(s3, h).order() == 2);
  Subgroup c3 = s3.subgroup({Perm::from_cycles("(0 1 2)", 3)});
  CHECK(normalizer(s3, c3).order() == 6);

  PermGroup d5 = dihedral_group(5);
  CHECK(normalizer(d5, sylow_p(d5, 2)).order() == 2);

  // brute force: g H g^-1 == H as permutation sets
  PermGroup s4 = symmetric_group(4);
  for (const Subgroup& sub : all_subgroups(s4.whole())) {
    std::size_t count = 0;
    auto hs = as_perms(sub);
    for (Elt g = 0; g < s4.table()->order(); ++g) {
      const Perm& gp = s4.table()->element(g);
      std::set<Perm> conj;
      for (const Perm& x : hs) conj.insert(gp * x * gp.inverse());
      if (conj == hs) ++count;
    }
    CHECK(normalizer(s4, sub).order() == count);
  }
}

TEST_CASE("normal core") {
  PermGroup s3 = symmetric_group(3);
  CHECK(normal_core(s3, s3.subgroup({Perm::from_cycles("(0 1)", 3)})).order() == 1);
  Subgroup c3 = s3.subgroup({Perm::from_cycles("(0 1 2)", 3)});
  CHECK(normal_core(s3, c3) == c3);
  PermGroup s4 = symmetric_group(4);
  Subgroup d8 = sylow_p(s4, 2);
  CHECK(d8.order() == 8);
  Subgroup v4 = normal_core(s4, d8);
  CHECK(v4.order() == 4);
  CHECK(v4 == s4.subgroup({Perm::from_cycles("(0 1)(2 3)", 4), Perm::from_cycles("(0 2)(1 3)", 4)}));
}

TEST_CASE("normal core is normal and contained, for every subgroup") {
  for (const PermGroup& g : {symmetric_group(4), dihedral_group(6), direct_product(cyclic_group(2), symmetric_group(3)).group}) {
    Subgroup whole = g.whole();
    for (const Subgroup& h : all_subgroups(whole)) {
      Subgroup core = normal_core(whole, h);
      CHECK(is_normal(whole, core));
      CHECK(core.is_subgroup_of(h));
      CHECK(whole.order() % core.order() == 0);
    }
  }
}

TEST_CASE("p-subgroups") {
  CHECK(p_subgroups(cyclic_group(3), 2).size() == 1);
  auto s3 = p_subgroups(symmetric_group(3), 3);
  CHECK(s3.size() == 2);
  CHECK(s3[1].order() == 3);
  auto s4 = p_subgroups(symmetric_group(4), 2);
  CHECK(s4.size() == 20);
  std::map<std::size_t, int> by_order;
  for (const auto& s : s4) ++by_order[s.order()];
  CHECK(by_order[1] == 1);
  CHECK(by_order[2] == 9);
  CHECK(by_order[4] == 7);
  CHECK(by_order[8] == 3);
}

TEST_CASE("p-subgroups agree with exhaustive subgroup search and are conjugation closed") {
  struct Case {
    PermGroup g;
    std::uint64_t p;
  };
  std::vector<Case> cases{{symmetric_group(4), 2}, {symmetric_group(4), 3}, {dihedral_group(5), 2},
                          {direct_product(dihedral_group(5), dihedral_group(5)).group, 2},
                          {dihedral_group(6), 2}, {dihedral_group(6), 3}, {cyclic_group(6), 2}};
  for (const auto& c : cases) {
    Subgroup whole = c.g.whole();
    auto ps = p_subgroups(whole, c.p);
    std::size_t expected = 0;
    for (const auto& s : all_subgroups(whole))
      if (is_p_power(s.order(), c.p)) ++expected;
    CHECK(ps.size() == expected);
    std::set<std::vector<Elt>> keys;
    for (const auto& s : ps) keys.insert(s.elements());
    for (const auto& s : ps)
      for (Elt g : whole.generators()) CHECK(keys.count(s.conjugate(g).elements()) == 1);
  }
}

TEST_CASE("sylow") {
  CHECK(sylow_p(cyclic_group(6), 2).order() == 2);
  CHECK(sylow_p(symmetric_group(4), 2).order() == 8);
  CHECK(sylow_p(dihedral_group(5), 2).order() == 2);
  for (const PermGroup& g : {symmetric_group(5), dihedral_group(12), direct_product(symmetric_group(3), dihedral_group(5)).group})
    for (std::uint64_t p : {2, 3, 5}) CHECK(sylow_p(g, p).order() == p_part(g.order(), p));
  CHECK(largest_normal_p_subgroup(symmetric_group(4).whole(), 2).order() == 4);
  CHECK(largest_normal_p_subgroup(symmetric_group(3).whole(), 3).order() == 3);
  CHECK(largest_normal_p_subgroup(dihedral_group(5).whole(), 2).order() == 1);
}

TEST_CASE("wreath products") {
  Wreath w = wreath_Cp(cyclic_group(2), 2);
  CHECK(w.group.order() == 8);
  CHECK(w.group.degree() == 4);
  Subgroup base0 = w.group.subgroup(w.base_factor_gens(cyclic_group(2), 0));
  CHECK(base0.order() == 2);
  Wreath w2 = wreath_Cp(w.group, 2);
  CHECK(w2.group.order() == 128);
  CHECK(w2.group.contains(w2.diagonal(w.group.generators()[0])));
  CHECK(w2.group.contains(w2.top()));
  CHECK(wreath_Cp(cyclic_group(3), 3).group.order() == 81);
}

TEST_CASE("semidirect products") {
  PermGroup c5 = cyclic_group(5), c2 = cyclic_group(2);
  Perm x = c5.generators()[0];
  auto triv = semidirect(c5, c2, {{x}});
  CHECK(triv.group.order() == 10);
  CHECK(triv.group.degree() == 7);
  auto dih = semidirect(c5, c2, {{x.inverse()}});
  CHECK(dih.group.order() == 10);
  // D5 has five involutions; C10 has one
  std::size_t invol = 0;
  auto t = dih.group.table();
  for (Elt e = 0; e < t->order(); ++e) invol += t->element_order(e) == 2;
  CHECK(invol == 5);
  auto c5sq = direct_product(c5, c5);
  Perm a = c5sq.group.generators()[0], b = c5sq.group.generators()[1];
  auto inv2 = semidirect(c5sq.group, c2, {{a.inverse(), b.inverse()}});
  CHECK(inv2.group.order() == 50);
  // not an automorphism: x -> x^0
  CHECK_THROWS_AS(semidirect(c5, c2, {{Perm::identity(5)}}), ValidationError);
  // not a homomorphism from S: order-2 generator mapped to an order-4 automorphism of C5
  CHECK_THROWS_AS(semidirect(c5, c2, {{x.pow(2)}}), ValidationError);
}

TEST_CASE("quotients") {
  PermGroup s4 = symmetric_group(4);
  Subgroup whole = s4.whole();
  Subgroup v4 = largest_normal_p_subgroup(whole, 2);
  Quotient q = quotient(whole, v4);
  CHECK(q.group.order() == 6);
  for (Elt a : whole.elements())
    for (Elt b : whole.elements())
      CHECK(q.image[s4.table()->mul(a, b)] == q.group.table()->mul(q.image[a], q.image[b]));
  Subgroup d8 = sylow_p(whole, 2);
  CHECK(q.image_of(d8).order() == 2);
  CHECK(q.preimage(q.image_of(d8)) == d8);
}

TEST_CASE("centers and commutators") {
  PermGroup s4 = symmetric_group(4);
  CHECK(center(s4.whole()).order() == 1);
  CHECK(commutator_subgroup(s4.whole()).order() == 12);
  PermGroup d4 = dihedral_group(4);
  CHECK(center(d4.whole()).order() == 2);
  CHECK(commutator_subgroup(d4.whole()).order() == 2);
}

TEST_CASE("proper subgroups of p-groups grow in their normalizers") {
  Wreath w1 = wreath_Cp(cyclic_group(2), 2);
  Wreath w2 = wreath_Cp(w1.group, 2);
  for (const PermGroup& p : {dihedral_group(4), w1.group, wreath_Cp(cyclic_group(3), 3).group, w2.group}) {
    Subgroup whole = p.whole();
    for (const Subgroup& q : all_subgroups(whole)) {
      if (q.order() == whole.order()) continue;
      CHECK(normalizer(whole, q).order() > q.order());
    }
  }
}
