#include "hlim/suites.hpp"

#include <chrono>
#include <functional>
#include <future>
#include <limits>
#include <memory>
#include <sstream>

#include "hlim/barlim.hpp"
#include "hlim/corpus.hpp"
#include "hlim/group_ops.hpp"
#include "hlim/lambda.hpp"
#include "hlim/spectral.hpp"
#include "hlim/towers.hpp"

namespace hlim {

std::size_t SuiteReport::passed_cases() const {
  std::size_t n = 0;
  for (const SuiteCase& c : cases) n += c.passed;
  return n;
}

nlohmann::json SuiteReport::to_json(bool with_timings) const {
  nlohmann::json j;
  j["suite"] = suite;
  j["title"] = title;
  j["passed"] = passed;
  if (!error.empty()) j["error"] = error;
  j["cases"] = nlohmann::json::array();
  for (const SuiteCase& c : cases) {
    nlohmann::json e{{"name", c.name}, {"passed", c.passed}, {"detail", c.detail}};
    if (with_timings) e["seconds"] = c.seconds;
    j["cases"].push_back(std::move(e));
  }
  j["passed_cases"] = passed_cases();
  if (with_timings) j["seconds"] = seconds;
  return j;
}

namespace {

using Dims = std::vector<std::size_t>;
using Clock = std::chrono::steady_clock;

struct Outcome {
  bool passed;
  std::string detail;
};

class Recorder {
 public:
  explicit Recorder(SuiteReport& r) : report_(r) {}
  void check(const std::string& name, const std::function<Outcome()>& body) {
    const auto start = Clock::now();
    SuiteCase c;
    c.name = name;
    try {
      const Outcome o = body();
      c.passed = o.passed;
      c.detail = o.detail;
    } catch (const std::exception& e) {
      c.passed = false;
      c.detail = std::string("threw: ") + e.what();
    }
    c.seconds = std::chrono::duration<double>(Clock::now() - start).count();
    report_.cases.push_back(std::move(c));
  }

 private:
  SuiteReport& report_;
};

std::string text(const Dims& d) {
  std::ostringstream os;
  os << "(";
  for (std::size_t i = 0; i < d.size(); ++i) os << (i ? ", " : "") << d[i];
  os << ")";
  return os.str();
}

OrbitPtr skeleton_orbit(const Subgroup& g, Fp p) {
  return std::make_shared<const OrbitCategory>(g, class_representatives(g, p_subgroups(g, p)), false);
}

Subgroup generated(const PermGroup& g, std::initializer_list<const char*> cycles) {
  std::vector<Perm> gens;
  for (const char* c : cycles) gens.push_back(Perm::from_cycles(c, g.degree()));
  return g.subgroup(gens);
}

PermGroup group_named(const std::string& name) {
  for (CorpusGroup& g : corpus_groups()) {
    if (g.name == name) return std::move(g.group);
  }
  throw ValidationError("no corpus group " + name);
}

// ------------------------------------------------------------------ suites

void coinduced_acyclic(Recorder& rec) {
  for (const char* name : {"S3", "S4", "D5", "C6"})
    for (Fp p : {2u, 3u}) {
      const PermGroup g = group_named(name);
      const OrbitPtr c = skeleton_orbit(g.whole(), p);
      for (Obj src : {Obj{0}, static_cast<Obj>(c->num_objects() - 1)}) {
        const std::size_t m0 = src == 0 ? 1 : 2;
        rec.check(std::string(name) + "/p" + std::to_string(p) + "/c=" + c->object(src).describe() + "/M0=F_p^" +
                      std::to_string(m0),
                  [&] {
                    const Dims d = higher_limits(coinduced_functor(c, src, p, m0), 4).dims;
                    return Outcome{d == Dims{m0, 0, 0, 0}, "lim = " + text(d)};
                  });
      }
    }
}

void op_vanishing(Recorder& rec) {
  for (const CorpusModule& cm : finite_corpus()) {
    const FpGModule& m = cm.module;
    if (m.group().order() > 24 || largest_normal_p_subgroup(m.group(), m.p()).is_trivial()) continue;
    rec.check(cm.name, [&] {
      const Dims bar = lambda(m, 4).dims;
      const auto shortcut = shortcut_Op_vanishing(m, 4);
      const bool ok = bar == Dims(4, 0) && shortcut && shortcut->dims == bar;
      return Outcome{ok, "bar complex " + text(bar) + ", O_p shortcut " + (shortcut ? text(shortcut->dims) : "n/a")};
    });
  }
}

void reduction(Recorder& rec) {
  auto sides_case = [&](const std::string& name, const Subgroup& g, const std::vector<Subgroup>& x, const Subgroup& q,
                        const FpGModule& v) {
    rec.check(name, [&] {
      const ReductionSides s = reduction_sides(g, x, q, v, 3);
      return Outcome{s.original.dims == s.reduced.dims,
                     "lim over O_X(G) " + text(s.original.dims) + ", over O_Y(N/Q) " + text(s.reduced.dims)};
    });
  };
  {
    const PermGroup s3 = symmetric_group(3);
    const Subgroup c3 = generated(s3, {"(0 1 2)"});
    sides_case("S3/p3/Q=C3", s3.whole(), {Subgroup::trivial(s3.table()), c3}, c3, FpGModule::trivial(s3.whole(), 3, 1));
  }
  {
    const PermGroup s4 = symmetric_group(4);
    const Subgroup v4 = largest_normal_p_subgroup(s4.whole(), 2);
    const auto x = p_subgroups(s4.whole(), 2);
    const Quotient q = quotient(s4.whole(), v4);
    const FpGModule perm = FpGModule::permutation(q.group.whole(), 2);
    const FpGModule v = FpGModule::from_elements(s4.whole(), 2, perm.dim(), [&](Elt g) { return perm.matrix(q.image[g]); });
    sides_case("S4/p2/Q=V4/inflated permutation module", s4.whole(), x, v4, v);
    sides_case("S4/p2/Q=V4/trivial", s4.whole(), x, v4, FpGModule::trivial(s4.whole(), 2, 1));
    const Subgroup t = generated(s4, {"(0 1)"});
    sides_case("S4/p2/Q=transposition", s4.whole(), x, t, FpGModule::trivial(normalizer(s4.whole(), t), 2, 2));
  }
  {
    const PermGroup d5 = dihedral_group(5);
    const auto x = p_subgroups(d5.whole(), 2);
    sides_case("D5/p2/Q=1", d5.whole(), x, Subgroup::trivial(d5.table()), FpGModule::permutation(d5.whole(), 2));
    sides_case("D5/p2/Q=reflection", d5.whole(), x, x[1], FpGModule::trivial(normalizer(d5.whole(), x[1]), 2, 2));
  }
}

void sylow_order_p(Recorder& rec) {
  rec.check("D5/p2/F16 (field family, level 1)", [&] {
    const HgmTruncation t = hgm_truncate(HgmFamily{}, 1);
    const Dims bar = lambda(t.module, 4).dims;
    const Dims shortcut = lambda1_sylow_order_p(t.module, 4).dims;
    const bool ok = t.group.order() == 10 && bar == Dims{0, 2, 0, 0} && shortcut == bar;
    return Outcome{ok, "bar complex " + text(bar) + ", Sylow shortcut " + text(shortcut)};
  });
}

void cofinality(Recorder& rec) {
  const PermGroup s4 = symmetric_group(4);
  const OrbitPtr c = std::make_shared<const OrbitCategory>(p_orbit_category(s4.whole(), 2));
  const Subgroup core = largest_normal_p_subgroup(s4.whole(), 2);
  std::vector<Obj> above;
  for (Obj o = 0; o < c->num_objects(); ++o)
    if (core.is_subgroup_of(c->object(o))) above.push_back(o);
  const auto functors = corpus_functors(c, 2);
  const auto names = corpus_functor_names();
  for (std::size_t i = 0; i < functors.size(); ++i)
    rec.check("S4/p2/" + names[i], [&] {
      const Dims all = higher_limits(functors[i], 3).dims;
      const Dims sub = higher_limits(restrict_functor(functors[i], above), 3).dims;
      return Outcome{all == sub, "all 2-subgroups " + text(all) + ", containing O_2 " + text(sub) + " on " +
                                     std::to_string(above.size()) + " objects"};
    });
}

void fixedpoint_acyclic(Recorder& rec) {
  std::vector<CorpusModule> cases;
  for (const CorpusModule& cm : finite_corpus())
    for (const char* want : {"S4/p2/perm", "S3/p2/perm", "S3/p3/perm", "D5/p2/perm", "A4/p2/perm", "S4/p3/perm",
                             "C2xD5/p2/perm", "hgm-gamma0/1/p2/field"})
      if (cm.name == want) cases.push_back(cm);
  for (const CorpusModule& cm : cases)
    rec.check(cm.name, [&] {
      const FpGModule& m = cm.module;
      const Dims d = higher_limits(fixedpoint_functor(skeleton_orbit(m.group(), m.p()), m), 4).dims;
      const std::size_t fix = fixed_points(m, m.group()).cols();
      bool ok = d == Dims{fix, 0, 0, 0};
      if (cm.name == "S4/p2/perm") ok = ok && fix == 1;
      return Outcome{ok, "lim = " + text(d) + ", dim Fix_G M = " + std::to_string(fix)};
    });
}

void centralizer_vanishing(Recorder& rec) {
  std::vector<CorpusModule> cases;
  for (const CorpusModule& cm : finite_corpus())
    for (const char* want : {"S3/p2/trivial", "S3/p3/trivial", "D5/p2/trivial", "A4/p3/trivial", "S4/p3/trivial"})
      if (cm.name == want) cases.push_back(cm);
  {
    const HgmTruncation t = hgm_truncate(HgmFamily{}, 1);
    const PermGroup c2 = cyclic_group(2);
    const DirectProduct d = direct_product(c2, t.group);
    cases.push_back({"C2xD5/p2/trivial (x) F16", outer_tensor(d, FpGModule::trivial(c2.whole(), 2, 1), t.module)});
  }
  for (const CorpusModule& cm : cases)
    rec.check(cm.name, [&] {
      const CentralizerVanishing v = verify_centralizer_vanishing(cm.module, 4);
      return Outcome{v.applicable && v.holds, std::string(v.applicable ? "order-p element acts trivially" : "not applicable") +
                                                  ", Lambda = " + text(v.lambda.dims)};
    });
}

void vanishing_bound(Recorder& rec) {
  for (const CorpusModule& cm : finite_corpus())
    rec.check(cm.name, [&] {
      const FpGModule& m = cm.module;
      std::size_t n = 0;
      for (std::uint64_t s = p_part(m.group().order(), m.p()); s > 1; s /= m.p()) ++n;
      const Dims sub = lambda_subgroup_complex(m, n + 3).dims;
      bool ok = true;
      for (std::size_t i = n + 1; i < sub.size(); ++i) ok = ok && sub[i] == 0;
      std::string detail = "|S| = p^" + std::to_string(n) + ", subgroup complex " + text(sub);
      if (m.group().order() <= 12) {
        const VanishingBound b = vanishing_bound_check(m, n + 3);
        ok = ok && b.holds && b.lambda.dims == sub;
        detail += ", bar complex " + text(b.lambda.dims);
      }
      return Outcome{ok, detail};
    });
}

void tower_gamma0(Recorder& rec) {
  const TruncationChain g0 = fin_truncation_chain("hgm-gamma0", 3);
  rec.check("Lambda^1 tower dims 2n, surjective, n <= 3", [&] {
    const LambdaTower t = lambda_tower(g0, 1);
    bool ok = t.window.dims == Dims{0, 2, 4, 6} && t.window.surjective();
    for (bool e : t.tail_exact) ok = ok && e;
    return Outcome{ok, "dims " + text(t.window.dims) + (t.window.surjective() ? ", surjective" : ", not surjective")};
  });
  rec.check("structure maps commute with the Sylow shortcut", [&] {
    const CompatibilityReport c = shortcut_compatibility(g0);
    return Outcome{c.holds, "shortcut ranks " + text(c.shortcut_ranks)};
  });
  rec.check("Lambda^1 of the colimit: product of F0 coordinates", [&] {
    const SesReport r = ses_check_countable(g0, 1);
    bool ok = r.lim_term == "product of F0 coordinates" && r.lim1_term == "0" && r.lim1_report &&
              r.lim1_report->certificate.kind == GrowthKind::Stabilizing && r.lim_certificate &&
              r.lim_certificate->surjective && r.tag == kExtrapolationTag;
    // the successive quotients of the tower are one F0 coordinate each
    for (std::size_t n = 0; n + 1 < r.lim_tower_dims.size(); ++n)
      ok = ok && r.lim_tower_dims[n + 1] - r.lim_tower_dims[n] == 2;
    return Outcome{ok, "lim = " + r.lim_term + "; lim^1 = " + r.lim1_term + " (" +
                           (r.lim1_report ? to_string(r.lim1_report->certificate.kind) : std::string("none")) +
                           "); " + r.prediction + "; " + r.tag};
  });
  rec.check("Lambda^2 of the starred family is nonzero", [&] {
    const SesReport r = ses_check_countable(fin_truncation_chain("hgm-gamma-star", 3), 2);
    const bool ok = r.lim1_report && r.lim1_report->classification == Lim1Class::Nonzero && r.nonzero &&
                    r.lim1_report->tag == kExtrapolationTag;
    return Outcome{ok, "lim^1 " + (r.lim1_report ? to_string(r.lim1_report->classification) : std::string("none")) +
                           " on window " + (r.lim1_report ? text(r.lim1_report->window_dims) : std::string()) + "; " +
                           r.prediction + "; " + r.tag};
  });
}

void spectral_consistency(Recorder& rec) {
  auto page_case = [&](const std::string& name, const std::function<std::pair<E2Page, Dims>()>& build,
                       const std::function<bool(const E2Page&, const Dims&)>& extra = {}) {
    rec.check(name, [&] {
      const auto [page, abut] = build();
      const ConvergenceReport r = convergence_check(page, abut);
      std::ostringstream os;
      os << "abutment " << text(abut) << ", diagonals";
      for (const ConvergenceRow& row : r.rows) os << " " << row.e2_sum << (row.equality_asserted ? "=" : ">=") << row.abutment;
      if (!r.collapse.empty()) os << ", collapse " << r.collapse;
      if (r.euler_checked) os << ", Euler checked";
      return Outcome{r.ok && (!extra || extra(page, abut)), os.str()};
    });
  };
  page_case(
      "LHS C4/C2 over F2",
      [] {
        const PermGroup c4 = cyclic_group(4);
        const Subgroup g = c4.whole();
        const FpGModule f2 = FpGModule::trivial(g, 2, 1);
        const Subgroup c2(g.table_ptr(), {g.table().pow(g.generators().front(), 2)});
        const Quotient q = quotient(g, c2);
        E2Page page = e2_quotient(cohomology_functor(f2), q, {Subgroup::trivial(q.group.table())}, 4);
        return std::make_pair(std::move(page), group_cohomology(f2, 4).dims);
      },
      [](const E2Page& page, const Dims& abut) {
        bool ones = abut == Dims(4, 1) && page.lift_independent;
        for (const auto& col : page.entries) ones = ones && col == Dims(4, 1);
        return ones;
      });
  page_case(
      "product D5 x D5 over F16 (x) F16",
      [] {
        const HgmTruncation t = hgm_truncate(HgmFamily{}, 1);
        const DirectProduct d = direct_product(t.group, t.group);
        const FpGModule m = outer_tensor(d, t.module, t.module);
        return std::make_pair(e2_product(d, m, 3), lambda_subgroup_complex(m, 5).dims);
      },
      [](const E2Page& page, const Dims&) { return page.bounded && page.at(1, 1) == 4; });
  page_case("LHS S3/C3 over F3", [] {
    const PermGroup s3 = symmetric_group(3);
    const FpGModule f3 = FpGModule::trivial(s3.whole(), 3, 1);
    const Quotient q = quotient(s3.whole(), generated(s3, {"(0 1 2)"}));
    E2Page page = e2_quotient(cohomology_functor(f3), q, {Subgroup::trivial(q.group.table())}, 4);
    return std::make_pair(std::move(page), group_cohomology(f3, 4).dims);
  });
  page_case("quotient page S3 over 1, atomic permutation functor at p = 3", [] {
    const PermGroup s3 = symmetric_group(3);
    const Subgroup g = s3.whole();
    const auto cat = std::make_shared<const OrbitCategory>(g, p_subgroups(g, 3), false);
    const CatModule phi = atomic_functor(cat, FpGModule::permutation(g, 3));
    const Quotient q = quotient(g, Subgroup::trivial(g.table_ptr()));
    E2Page page = e2_quotient(phi, q, p_subgroups(q.group.whole(), 3), 3);
    return std::make_pair(std::move(page), higher_limits(phi, 3).dims);
  });
  for (bool perm : {false, true})
    page_case(std::string("Lambda quotient S4/V4, ") + (perm ? "permutation module" : "trivial module"), [perm] {
      const PermGroup s4 = symmetric_group(4);
      const FpGModule m = perm ? FpGModule::permutation(s4.whole(), 2) : FpGModule::trivial(s4.whole(), 2, 1);
      return std::make_pair(e2_lambda_quotient(m, largest_normal_p_subgroup(s4.whole(), 2), 3), lambda(m, 3).dims);
    });
  page_case("Lambda quotient C2 x D5 over C5", [] {
    const HgmTruncation t = hgm_truncate(HgmFamily{}, 1);
    const PermGroup c2 = cyclic_group(2);
    const DirectProduct d = direct_product(c2, t.group);
    const FpGModule m = outer_tensor(d, FpGModule::permutation(c2.whole(), 2), t.module);
    return std::make_pair(e2_lambda_quotient(m, largest_normal_p_subgroup(d.group.whole(), 5), 3), lambda(m, 3).dims);
  });
  page_case("product S3 x C2 at p = 3", [] {
    const PermGroup s3 = symmetric_group(3), c2 = cyclic_group(2);
    const DirectProduct d = direct_product(s3, c2);
    const FpGModule m = outer_tensor(d, FpGModule::permutation(s3.whole(), 3), FpGModule::permutation(c2.whole(), 3));
    return std::make_pair(e2_product(d, m, 3), lambda(m, 3).dims);
  });
  page_case("product C3 x C3 at p = 3", [] {
    const PermGroup c3 = cyclic_group(3);
    const DirectProduct d = direct_product(c3, c3);
    const FpGModule m = FpGModule::trivial(d.group.whole(), 3, 1);
    return std::make_pair(e2_product(d, m, 3), lambda(m, 3).dims);
  });
  page_case(
      "product S3 x S3 at p = 2, permutation modules",
      [] {
        const PermGroup s3 = symmetric_group(3);
        const DirectProduct d = direct_product(s3, s3);
        const FpGModule m =
            outer_tensor(d, FpGModule::permutation(s3.whole(), 2), FpGModule::permutation(s3.whole(), 2));
        return std::make_pair(e2_product(d, m, 3), lambda(m, 4).dims);
      },
      [](const E2Page& page, const Dims& abut) { return page.at(1, 1) == 1 && abut[2] == 1; });
}

void wreath(Recorder& rec) {
  for (auto [p, top] : {std::pair<std::size_t, std::size_t>{2, 3}, {3, 1}}) {
    const WreathTower t = wreath_tower(p, top);
    for (const WreathCheck& c : wreath_checks(t))
      rec.check("p=" + std::to_string(p) + "/stage " + std::to_string(c.stage) + "/" + c.name,
                [&] { return Outcome{c.passed, c.detail}; });
  }
}

void category_laws(Recorder& rec) {
  const std::size_t all = std::numeric_limits<std::size_t>::max();
  for (const CorpusGroup& cg : corpus_groups(200)) {
    const Subgroup g = cg.group.whole();
    for (Fp p : {2u, 3u, 5u}) {
      if (g.order() % p) continue;
      rec.check(cg.name + "/O_" + std::to_string(p), [&] {
        const OrbitCategory c = p_orbit_category(g, p);
        const CategoryLawReport laws = check_category_laws(c, all);
        const CategoryLawReport epi = check_epimorphisms(c);
        const bool ok = laws.ok() && laws.exhaustive && epi.ok() && epi.exhaustive;
        return Outcome{ok, std::to_string(c.num_objects()) + " objects, " + std::to_string(c.num_morphisms()) +
                               " morphisms, " + std::to_string(laws.triples_checked) + " triples" +
                               (ok ? "" : "; " + laws.first_failure + epi.first_failure)};
      });
    }
    if (g.order() <= 24)
      rec.check(cg.name + "/all subgroups", [&] {
        const OrbitCategory c(g, all_subgroups(g), false);
        const CategoryLawReport laws = check_category_laws(c, all);
        const CategoryLawReport epi = check_epimorphisms(c);
        const bool ok = laws.ok() && laws.exhaustive && epi.ok() && epi.exhaustive;
        return Outcome{ok, std::to_string(c.num_objects()) + " objects, " + std::to_string(c.num_morphisms()) +
                               " morphisms" + (ok ? "" : "; " + laws.first_failure + epi.first_failure)};
      });
  }
}

struct Registered {
  SuiteInfo info;
  void (*run)(Recorder&);
};

const std::vector<Registered>& registry() {
  static const std::vector<Registered> r{
      {{"icM-acyclic", "coinduced functors are acyclic"}, coinduced_acyclic},
      {{"op-vanishing", "Lambda vanishes when O_p(G) is nontrivial"}, op_vanishing},
      {{"reduction", "reduction to the normalizer quotient"}, reduction},
      {{"sylow-order-p", "Sylow subgroups of order p: bar complex against the shortcut"}, sylow_order_p},
      {{"cofinality", "restriction to subgroups containing O_p(G)"}, cofinality},
      {{"fixedpoint-acyclic", "fixed-point functors are acyclic"}, fixedpoint_acyclic},
      {{"centralizer-vanishing", "Lambda vanishes when an order-p element acts trivially"}, centralizer_vanishing},
      {{"vanishing-bound", "Lambda vanishes above the Sylow exponent"}, vanishing_bound},
      {{"tower-gamma0", "towers of the field families"}, tower_gamma0},
      {{"spectral-consistency", "E2 pages against their abutments"}, spectral_consistency},
      {{"wreath", "iterated wreath product stages"}, wreath},
      {{"category-laws", "category laws and epimorphisms of orbit categories"}, category_laws},
  };
  return r;
}

}  // namespace

std::vector<SuiteInfo> registered_suites() {
  std::vector<SuiteInfo> out;
  for (const Registered& r : registry()) out.push_back(r.info);
  return out;
}

SuiteReport run_suite(const std::string& id) {
  SuiteReport report;
  report.suite = id;
  const auto start = Clock::now();
  const Registered* found = nullptr;
  for (const Registered& r : registry())
    if (r.info.id == id) found = &r;
  if (!found) {
    report.error = id.empty() ? "empty suite id" : "unknown suite " + id;
    return report;
  }
  report.title = found->info.title;
  try {
    Recorder rec(report);
    found->run(rec);
    report.passed = !report.cases.empty() && report.passed_cases() == report.cases.size();
  } catch (const std::exception& e) {
    report.error = e.what();
    report.passed = false;
  }
  report.seconds = std::chrono::duration<double>(Clock::now() - start).count();
  return report;
}

std::vector<SuiteReport> run_suites(const std::vector<std::string>& ids) {
  std::vector<std::future<SuiteReport>> running;
  for (const std::string& id : ids) running.push_back(std::async(std::launch::async, run_suite, id));
  std::vector<SuiteReport> out;
  for (auto& f : running) out.push_back(f.get());
  return out;
}

}  // namespace hlim
