#include "hlim/cli.hpp"

#include <algorithm>
#include <chrono>
#include <fstream>
#include <iostream>
#include <map>
#include <numeric>
#include <optional>
#include <set>
#include <sstream>
#include <unordered_set>

#include "CLI11.hpp"
#include "hlim/barlim.hpp"
#include "hlim/caps.hpp"
#include "hlim/corpus.hpp"
#include "hlim/gmodules.hpp"
#include "hlim/group_ops.hpp"
#include "hlim/lambda.hpp"
#include "hlim/spectral.hpp"
#include "hlim/suites.hpp"
#include "hlim/towers.hpp"

namespace hlim::cli {

using nlohmann::json;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

std::string trim(const std::string& s) {
  const auto b = s.find_first_not_of(" \t\n");
  if (b == std::string::npos) return {};
  const auto e = s.find_last_not_of(" \t\n");
  return s.substr(b, e - b + 1);
}

// Splits at `sep` outside parentheses.
std::vector<std::string> split_top(const std::string& s, char sep) {
  std::vector<std::string> out;
  int depth = 0;
  std::string cur;
  for (char c : s) {
    if (c == '(') ++depth;
    if (c == ')') --depth;
    if (c == sep && depth == 0) {
      out.push_back(trim(cur));
      cur.clear();
    } else {
      cur += c;
    }
  }
  out.push_back(trim(cur));
  return out;
}

// "name(args)" -> {name, args}; plain words give no args.
struct Call {
  std::string name;
  std::optional<std::string> args;
};

Call parse_call(const std::string& text, const std::string& field) {
  const std::string s = trim(text);
  const auto open = s.find('(');
  if (open == std::string::npos) return {s, std::nullopt};
  if (s.back() != ')') throw SpecError(field, "unbalanced parentheses in \"" + s + "\"");
  return {trim(s.substr(0, open)), s.substr(open + 1, s.size() - open - 2)};
}

std::size_t parse_count(const std::string& text, const std::string& field) {
  const std::string s = trim(text);
  if (s.empty() || !std::all_of(s.begin(), s.end(), [](char c) { return c >= '0' && c <= '9'; }))
    throw SpecError(field, "expected a non-negative integer, got \"" + s + "\"");
  return std::stoull(s);
}

// Integer suffix after a one- or more-letter prefix, e.g. "S4" -> 4.
std::optional<std::size_t> suffix_number(const std::string& s, const std::string& prefix) {
  if (s.size() <= prefix.size() || s.compare(0, prefix.size(), prefix) != 0) return std::nullopt;
  const std::string rest = s.substr(prefix.size());
  if (!std::all_of(rest.begin(), rest.end(), [](char c) { return c >= '0' && c <= '9'; })) return std::nullopt;
  return std::stoull(rest);
}

// ---- groups ----

struct GroupCtx {
  Subgroup whole;
  std::optional<PermGroup> perm;
  std::optional<FpGModule> family_module;
  std::shared_ptr<DirectProduct> product;
  std::shared_ptr<GroupCtx> left, right;
};

GroupCtx from_perm(const PermGroup& g) {
  GroupCtx c;
  c.whole = g.whole();
  c.perm = g;
  return c;
}

PermGroup alternating_group(std::size_t n) {
  std::vector<Perm> gens;
  for (std::size_t i = 2; i < n; ++i) gens.push_back(Perm::from_cycle_list({{0, 1, i}}, n));
  return PermGroup(std::max<std::size_t>(n, 1), gens, "A" + std::to_string(n));
}

bool is_family(const std::string& id) {
  const auto fams = registered_families();
  return std::find(fams.begin(), fams.end(), id) != fams.end();
}

const PermGroup& need_perm(const GroupCtx& c, const std::string& what) {
  if (!c.perm) throw SpecError("group", what + " needs a group given by permutations");
  return *c.perm;
}

GroupCtx parse_group(const std::string& text) {
  const Call call = parse_call(text, "group");
  const std::string& name = call.name;
  if (call.args) {
    const auto args = split_top(*call.args, name == "gens" ? ';' : ',');
    if (name == "gens") {
      const std::size_t degree = parse_count(args[0], "group");
      if (degree == 0) throw SpecError("group", "degree must be positive");
      std::vector<Perm> gens;
      for (std::size_t i = 1; i < args.size(); ++i) {
        try {
          gens.push_back(Perm::from_cycles(args[i], degree));
        } catch (const ValidationError& e) {
          throw SpecError("group", e.what());
        }
      }
      return from_perm(PermGroup(degree, gens));
    }
    if (name == "direct") {
      if (args.size() != 2) throw SpecError("group", "direct takes two groups");
      auto a = std::make_shared<GroupCtx>(parse_group(args[0]));
      auto b = std::make_shared<GroupCtx>(parse_group(args[1]));
      auto d = std::make_shared<DirectProduct>(direct_product(need_perm(*a, "direct"), need_perm(*b, "direct")));
      GroupCtx c = from_perm(d->group);
      c.product = d;
      c.left = a;
      c.right = b;
      return c;
    }
    if (name == "wreath") {
      if (args.size() != 2) throw SpecError("group", "wreath takes a group and a prime");
      const GroupCtx b = parse_group(args[0]);
      const std::size_t p = parse_count(args[1], "group");
      if (!is_prime(p)) throw SpecError("group", "wreath order must be prime");
      return from_perm(wreath_Cp(need_perm(b, "wreath"), p).group);
    }
    if (name == "semidirect") {
      // semidirect(Cn, Cm, k): the generator of Cm raises the generator of Cn to the k-th power
      if (args.size() != 3) throw SpecError("group", "semidirect takes Cn, Cm and an exponent");
      const auto n = suffix_number(args[0], "C"), m = suffix_number(args[1], "C");
      if (!n || !m || *n < 1 || *m < 1) throw SpecError("group", "semidirect factors must be cyclic groups Cn");
      const std::size_t k = parse_count(args[2], "group");
      const PermGroup cn = cyclic_group(*n), cm = cyclic_group(*m);
      if (*n > 1) {
        // x -> x^k is an automorphism of order dividing m
        std::size_t km = 1;
        for (std::size_t i = 0; i < *m; ++i) km = km * (k % *n) % *n;
        if (std::gcd(k, *n) != 1 || km != 1)
          throw SpecError("group", "x -> x^k does not define an action of C" + std::to_string(*m) + " on C" + std::to_string(*n));
      }
      const Perm image = cn.generators().empty() ? Perm::identity(cn.degree()) : cn.generators().front().pow(static_cast<long long>(k));
      SemidirectAction action;
      for (std::size_t i = 0; i < cm.generators().size(); ++i) action.push_back(std::vector<Perm>(cn.generators().size(), image));
      return from_perm(semidirect(cn, cm, action).group);
    }
    throw SpecError("group", "unknown construction \"" + name + "\"");
  }

  const auto at = name.find('@');
  if (at != std::string::npos) {
    const std::string fam = name.substr(0, at);
    if (!is_family(fam)) throw SpecError("group", "unknown family \"" + fam + "\"");
    const std::size_t n = parse_count(name.substr(at + 1), "group");
    const TruncationChain chain = fin_truncation_chain(fam, n);
    GroupCtx c = from_perm(chain.levels[n].group);
    c.family_module = chain.levels[n].module;
    return c;
  }
  if (auto n = suffix_number(name, "S"); n && *n >= 1) return from_perm(symmetric_group(*n));
  if (auto n = suffix_number(name, "C"); n && *n >= 1) return from_perm(cyclic_group(*n));
  if (auto n = suffix_number(name, "D"); n && *n >= 3) return from_perm(dihedral_group(*n));
  if (auto n = suffix_number(name, "A"); n && *n >= 3) return from_perm(alternating_group(*n));
  if (name == "1" || name == "trivial") return from_perm(trivial_group());
  for (const CorpusGroup& g : corpus_groups(~std::uint64_t{0}))
    if (g.name == name) return from_perm(g.group);
  throw SpecError("group", "unknown group \"" + name + "\"");
}

// ---- subgroups and objects ----

Subgroup parse_subgroup(const std::string& text, const Subgroup& g, Fp p, const std::string& field) {
  const Call call = parse_call(text, field);
  if (!call.args) {
    if (call.name == "1" || call.name == "trivial") return Subgroup::trivial(g.table_ptr());
    if (call.name == "G" || call.name == "whole") return g;
    if (call.name == "O_p") return largest_normal_p_subgroup(g, p);
    if (call.name == "sylow") return sylow_p(g, p);
    throw SpecError(field, "unknown subgroup \"" + call.name + "\"");
  }
  if (call.name != "gen") throw SpecError(field, "unknown subgroup constructor \"" + call.name + "\"");
  std::vector<Elt> gens;
  for (const std::string& c : split_top(*call.args, ';')) {
    Perm x = Perm::identity(g.table().degree());
    try {
      x = Perm::from_cycles(c, g.table().degree());
    } catch (const ValidationError& e) {
      throw SpecError(field, e.what());
    }
    const auto e = g.table().find(x);
    if (!e || !g.contains(*e)) throw SpecError(field, "generator " + c + " is not in the group");
    gens.push_back(*e);
  }
  return Subgroup(g.table_ptr(), gens);
}

std::vector<Subgroup> conjugation_closure(const Subgroup& g, const std::vector<Subgroup>& xs) {
  std::vector<Subgroup> out;
  std::unordered_set<Subgroup, SubgroupHash> seen;
  for (const Subgroup& h : xs)
    for (Elt x : g.elements()) {
      Subgroup c = h.conjugate(x);
      if (seen.insert(c).second) out.push_back(std::move(c));
    }
  return out;
}

std::vector<Subgroup> parse_objects(const std::string& text, const Subgroup& g, Fp p) {
  const Call call = parse_call(text, "objects");
  if (!call.args) {
    if (call.name == "all-p") return p_subgroups(g, p);
    if (call.name == "all") return all_subgroups(g);
    throw SpecError("objects", "unknown object set \"" + call.name + "\"");
  }
  if (call.name == "list") {
    std::vector<Subgroup> xs;
    for (const std::string& s : split_top(*call.args, ',')) xs.push_back(parse_subgroup(s, g, p, "objects"));
    return conjugation_closure(g, xs);
  }
  if (call.name == "containing") {
    const Subgroup q = parse_subgroup(*call.args, g, p, "objects");
    std::vector<Subgroup> out;
    for (const Subgroup& h : p_subgroups(g, p)) {
      const bool hit = std::any_of(g.elements().begin(), g.elements().end(),
                                   [&](Elt x) { return q.conjugate_inside(x, h); });
      if (hit) out.push_back(h);
    }
    if (out.empty()) throw SpecError("objects", "no p-subgroup contains a conjugate of the given subgroup");
    return out;
  }
  throw SpecError("objects", "unknown object selector \"" + call.name + "\"");
}

// ---- modules ----

FpMatrix parse_matrix(const std::string& text, std::size_t dim, Fp p) {
  const auto rows = split_top(text, '/');
  if (rows.size() != dim) throw SpecError("module", "matrix \"" + text + "\" does not have " + std::to_string(dim) + " rows");
  FpMatrix m(dim, dim, p);
  for (std::size_t r = 0; r < dim; ++r) {
    const auto cells = split_top(rows[r], ',');
    if (cells.size() != dim) throw SpecError("module", "row \"" + rows[r] + "\" does not have " + std::to_string(dim) + " entries");
    for (std::size_t c = 0; c < dim; ++c) m(r, c) = static_cast<Fp>(parse_count(cells[c], "module") % p);
  }
  return m;
}

FpGModule parse_module(const std::string& text, const GroupCtx& ctx, Fp p) {
  const Call call = parse_call(text, "module");
  try {
    if (!call.args) {
      if (call.name == "perm") return FpGModule::permutation(ctx.whole, p);
      if (call.name == "field") {
        if (!ctx.family_module) throw SpecError("module", "\"field\" needs a family group such as hgm-gamma0@2");
        if (ctx.family_module->p() != p) throw SpecError("p", "the family module lives over F_" + std::to_string(ctx.family_module->p()));
        return *ctx.family_module;
      }
      if (call.name.rfind("trivial", 0) == 0) {
        const std::string rest = call.name.substr(7);
        const std::size_t d = rest.empty() ? 1 : parse_count(rest, "module");
        return FpGModule::trivial(ctx.whole, p, d);
      }
      throw SpecError("module", "unknown module \"" + call.name + "\"");
    }
    if (call.name == "mat") {
      const auto parts = split_top(*call.args, ';');
      const std::size_t dim = parse_count(parts[0], "module");
      const std::size_t want = ctx.whole.generators().size();
      if (parts.size() - 1 != want)
        throw SpecError("module", "expected " + std::to_string(want) + " generator matrices, got " + std::to_string(parts.size() - 1));
      std::vector<FpMatrix> mats;
      for (std::size_t i = 1; i < parts.size(); ++i) mats.push_back(parse_matrix(parts[i], dim, p));
      return FpGModule(ctx.whole, p, dim, mats);
    }
    if (call.name == "outer") {
      if (!ctx.product) throw SpecError("module", "outer(...) needs a group of the form direct(A, B)");
      const auto args = split_top(*call.args, ',');
      if (args.size() != 2) throw SpecError("module", "outer takes two modules");
      return outer_tensor(*ctx.product, parse_module(args[0], *ctx.left, p), parse_module(args[1], *ctx.right, p));
    }
  } catch (const SpecError&) {
    throw;
  } catch (const ValidationError& e) {
    throw SpecError("module", e.what());
  }
  throw SpecError("module", "unknown module constructor \"" + call.name + "\"");
}

struct Resolved {
  GroupCtx group;
  std::optional<FpGModule> module;
};

// A module name with a '/' names a corpus module and brings its own group.
Resolved resolve(const JobSpec& spec, bool need_module) {
  Resolved r;
  if (need_module && spec.module.find('/') != std::string::npos && spec.module.find('(') == std::string::npos) {
    for (CorpusModule& m : finite_corpus())
      if (m.name == spec.module) {
        const std::string group_part = spec.module.substr(0, spec.module.rfind("/p"));
        const std::string tail = spec.module.substr(group_part.size() + 2);
        if (!spec.group.empty() && spec.group != group_part)
          throw SpecError("group", "corpus module " + spec.module + " lives over " + group_part);
        if (m.module.p() != spec.p) throw SpecError("p", "corpus module " + spec.module + " lives over F_" + std::to_string(m.module.p()));
        r.group.whole = m.module.group();
        r.module = std::move(m.module);
        (void)tail;
        return r;
      }
    throw SpecError("module", "unknown corpus module \"" + spec.module + "\"");
  }
  r.group = parse_group(spec.group);
  if (need_module) r.module = parse_module(spec.module, r.group, static_cast<Fp>(spec.p));
  return r;
}

// ---- functors ----

bool functor_needs_module(const std::string& functor) {
  const std::string name = trim(functor.substr(0, functor.find('(')));
  return name == "atomic" || name == "fixed-point";
}

CatModule parse_functor(const std::string& text, const OrbitPtr& cat, const std::optional<FpGModule>& m, Fp p) {
  const Call call = parse_call(text, "functor");
  if (call.name == "atomic") {
    if (!cat->trivial_object()) throw SpecError("objects", "the atomic functor needs the trivial subgroup among the objects");
    return atomic_functor(cat, *m);
  }
  if (call.name == "fixed-point") return fixedpoint_functor(cat, *m);
  if (call.name == "constant") {
    const std::size_t d = call.args ? parse_count(*call.args, "functor") : 1;
    return constant_functor(cat, p, d);
  }
  if (call.name == "coinduced") {
    if (!call.args) throw SpecError("functor", "coinduced needs an object index");
    const auto args = split_top(*call.args, ',');
    const std::size_t c = parse_count(args[0], "functor");
    const std::size_t m0 = args.size() > 1 ? parse_count(args[1], "functor") : 1;
    if (c >= cat->num_objects()) throw SpecError("functor", "object index " + std::to_string(c) + " out of range");
    return coinduced_functor(cat, static_cast<Obj>(c), p, m0);
  }
  throw SpecError("functor", "unknown functor \"" + call.name + "\"");
}

// ---- report pieces ----

json degree_entries(const std::vector<std::size_t>& dims, const std::vector<std::string>& provenance) {
  json out = json::array();
  for (std::size_t i = 0; i < dims.size(); ++i)
    out.push_back({{"degree", i},
                   {"dim", dims[i]},
                   {"provenance", provenance[i]},
                   {"safe_window", {0, dims.empty() ? 0 : dims.size() - 1}}});
  return out;
}

json dims_result(const std::vector<std::size_t>& dims, const std::vector<std::string>& provenance) {
  return {{"dims", dims},
          {"degrees", degree_entries(dims, provenance)},
          {"safe_window", {0, dims.empty() ? 0 : dims.size() - 1}}};
}

json lambda_json(const LambdaResult& r) {
  std::vector<std::string> prov;
  for (Provenance p : r.provenance) prov.push_back(to_string(p));
  return dims_result(r.dims, prov);
}

json limits_json(const LimitsResult& r, const std::string& provenance) {
  return dims_result(r.dims, std::vector<std::string>(r.dims.size(), provenance));
}

json group_json(const Subgroup& g) {
  return {{"order", g.order()}, {"degree", g.table().degree()}};
}

json objects_json(const OrbitCategory& c) {
  json out = json::array();
  for (Obj o = 0; o < c.num_objects(); ++o) out.push_back({{"index", o}, {"order", c.object(o).order()}, {"subgroup", c.object(o).describe()}});
  return out;
}

LambdaResult lambda_by_route(const FpGModule& m, std::size_t n, const std::string& route) {
  if (route == "bar") return lambda(m, n);
  if (route == "subgroup-complex") return lambda_subgroup_complex(m, n);
  try {
    return lambda_auto(m, n);
  } catch (const CapExceeded&) {
    return lambda_subgroup_complex(m, n);
  }
}

json lim1_json(const Lim1Report& r) {
  return {{"kind", to_string(r.certificate.kind)},
          {"law", r.certificate.law.describe()},
          {"window_dims", r.window_dims},
          {"classification", to_string(r.classification)},
          {"quantity", r.quantity},
          {"statement", r.statement},
          {"tag", r.tag}};
}

// ---- commands ----

json run_lambda(const JobSpec& spec) {
  const Resolved r = resolve(spec, true);
  json out = lambda_json(lambda_by_route(*r.module, spec.n_degrees, spec.route));
  out["group"] = group_json(r.module->group());
  out["module_dim"] = r.module->dim();
  return out;
}

json run_cohomology(const JobSpec& spec) {
  const Resolved r = resolve(spec, true);
  json out = limits_json(group_cohomology(*r.module, spec.n_degrees), "BAR_COMPLEX");
  out["group"] = group_json(r.module->group());
  out["module_dim"] = r.module->dim();
  return out;
}

json run_higher_limits(const JobSpec& spec) {
  const bool need = functor_needs_module(spec.functor);
  const Resolved r = resolve(spec, need);
  const Subgroup& g = r.module ? r.module->group() : r.group.whole;
  const Fp p = static_cast<Fp>(spec.p);
  const OrbitCategory full(g, parse_objects(spec.objects, g, p), true);
  auto cat = std::make_shared<const OrbitCategory>(skeleton(full));
  const CatModule phi = parse_functor(spec.functor, cat, r.module, p);
  json out = limits_json(higher_limits(phi, spec.n_degrees), "BAR_COMPLEX");
  out["group"] = group_json(g);
  out["objects"] = objects_json(*cat);
  return out;
}

json convergence_json(const ConvergenceReport& c) {
  json rows = json::array();
  for (const ConvergenceRow& row : c.rows)
    rows.push_back({{"total", row.total},
                    {"abutment", row.abutment},
                    {"e2_sum", row.e2_sum},
                    {"equality_asserted", row.equality_asserted},
                    {"ok", row.ok}});
  return {{"ok", c.ok}, {"collapse", c.collapse}, {"safe_total", c.safe_total}, {"euler_checked", c.euler_checked}, {"rows", rows}};
}

json run_spectral(const JobSpec& spec) {
  const Fp p = static_cast<Fp>(spec.p);
  const std::size_t n = spec.n_degrees;
  E2Page page;
  json abutment;
  std::vector<std::size_t> abut;

  if (spec.theorem == "quotient") {
    const bool need = functor_needs_module(spec.functor);
    const Resolved r = resolve(spec, need);
    const Subgroup& g = r.module ? r.module->group() : r.group.whole;
    const Subgroup h = parse_subgroup(spec.normal, g, p, "normal");
    if (!is_normal(g, h)) throw SpecError("normal", "subgroup is not normal");
    auto cat = std::make_shared<const OrbitCategory>(g, parse_objects(spec.objects, g, p), true);
    const CatModule phi = parse_functor(spec.functor, cat, r.module, p);
    const Quotient q = quotient(g, h);
    std::vector<Subgroup> images;
    std::unordered_set<Subgroup, SubgroupHash> seen;
    for (Obj o = 0; o < cat->num_objects(); ++o) {
      Subgroup y = q.image_of(cat->object(o));
      if (seen.insert(y).second) images.push_back(std::move(y));
    }
    page = e2_quotient(phi, q, images, n);
    const LimitsResult lim = higher_limits(phi, n);
    abut = lim.dims;
    abutment = limits_json(lim, "BAR_COMPLEX");
  } else if (spec.theorem == "lambda-quotient") {
    const Resolved r = resolve(spec, true);
    const Subgroup& g = r.module->group();
    const Subgroup h = parse_subgroup(spec.normal, g, p, "normal");
    if (!is_normal(g, h)) throw SpecError("normal", "subgroup is not normal");
    page = e2_lambda_quotient(*r.module, h, n);
    const LambdaResult lam = lambda_by_route(*r.module, n, spec.route);
    abut = lam.dims;
    abutment = lambda_json(lam);
  } else if (spec.theorem == "lhs") {
    const Resolved r = resolve(spec, true);
    const Subgroup& g = r.module->group();
    const Subgroup h = parse_subgroup(spec.normal, g, p, "normal");
    if (!is_normal(g, h)) throw SpecError("normal", "subgroup is not normal");
    const Quotient q = quotient(g, h);
    page = e2_quotient(cohomology_functor(*r.module), q, {Subgroup::trivial(q.group.table())}, n);
    const LimitsResult coh = group_cohomology(*r.module, n);
    abut = coh.dims;
    abutment = limits_json(coh, "BAR_COMPLEX");
  } else {
    const Resolved r = resolve(spec, true);
    if (!r.group.product) throw SpecError("group", "the product theorem needs a group of the form direct(A, B)");
    page = e2_product(*r.group.product, *r.module, n);
    // the abutment is computed two total degrees past the page so that bounded pages get the Euler check
    const LambdaResult lam = lambda_by_route(*r.module, page.bounded ? 2 * n - 1 : n, spec.route);
    abut = lam.dims;
    abutment = lambda_json(lam);
  }
  const ConvergenceReport conv = convergence_check(page, abut);
  json entries = json::array();
  for (const auto& col : page.entries) entries.push_back(col);
  return {{"theorem", page.theorem},
          {"description", page.description},
          {"e2", {{"entries", entries},
                  {"indexing", "entries[i][j]"},
                  {"provenance", "BAR_COMPLEX"},
                  {"safe_window", {0, page.safe_total()}},
                  {"bounded", page.bounded},
                  {"lift_independent", page.lift_independent},
                  {"lifts_compared", page.lifts_compared}}},
          {"abutment", abutment},
          {"convergence", convergence_json(conv)},
          {"failed", !conv.ok || !page.lift_independent}};
}

json run_tower(const JobSpec& spec, json& extrapolation) {
  const TruncationChain chain = fin_truncation_chain(spec.family, spec.level);
  const SesReport ses = ses_check_countable(chain, spec.degree);
  const LambdaTower tower = lambda_tower(chain, spec.degree);
  json levels = json::array();
  for (std::size_t n = 0; n < tower.window.dims.size(); ++n)
    levels.push_back({{"level", n},
                      {"dim", tower.window.dims[n]},
                      {"provenance", "BAR_COMPLEX_WINDOW"},
                      {"tail_exact", static_cast<bool>(tower.tail_exact[n])},
                      {"safe_window", {0, chain.top()}}});
  json maps = json::array();
  for (const FpMatrix& m : tower.window.maps) maps.push_back({{"rows", m.rows()}, {"cols", m.cols()}, {"rank", m.rank()}});
  json out = {{"family", chain.family},
              {"p", chain.p},
              {"degree", spec.degree},
              {"window", levels},
              {"maps", maps},
              {"surjective", tower.window.surjective()},
              {"lim_term", ses.lim_term},
              {"lim1_term", ses.lim1_term},
              {"lim1_tower_dims", ses.lim1_tower_dims},
              {"prediction", ses.prediction},
              {"nonzero", ses.nonzero}};
  if (ses.lim_certificate)
    out["lim_certificate"] = {{"kind", to_string(ses.lim_certificate->kind)},
                              {"law", ses.lim_certificate->law.describe()},
                              {"surjective", ses.lim_certificate->surjective}};
  if (ses.lim1_report) out["lim1_report"] = lim1_json(*ses.lim1_report);
  if (ses.exact_equality) out["exact_equality"] = *ses.exact_equality;
  extrapolation = chain.finite ? json(nullptr) : json(ses.tag);
  out["failed"] = ses.exact_equality && !*ses.exact_equality;
  return out;
}

json run_verify(const JobSpec& spec, json& timings) {
  std::vector<std::string> ids;
  if (spec.suite == "all") {
    for (const SuiteInfo& s : registered_suites()) ids.push_back(s.id);
  } else {
    ids = {spec.suite};
  }
  const auto reports = run_suites(ids);
  json suites = json::array();
  bool all = true;
  for (const SuiteReport& r : reports) {
    suites.push_back(r.to_json(false));
    timings["suites"][r.suite] = r.seconds;
    all = all && r.passed;
  }
  return {{"suites", suites}, {"passed", all}, {"failed", !all}};
}

json run_corpus(const JobSpec& spec) {
  if (spec.op == "list") {
    json groups = json::array(), modules = json::array();
    for (const CorpusGroup& g : corpus_groups()) groups.push_back({{"name", g.name}, {"order", g.group.order()}});
    for (const CorpusModule& m : finite_corpus()) modules.push_back({{"name", m.name}, {"dim", m.module.dim()}});
    return {{"families", registered_families()},
            {"groups", groups},
            {"modules", modules},
            {"functors", corpus_functor_names()},
            {"suites", [] {
               json s = json::array();
               for (const SuiteInfo& i : registered_suites()) s.push_back({{"id", i.id}, {"title", i.title}});
               return s;
             }()}};
  }
  if (spec.op == "wreath-checks") {
    const auto p = suffix_number(spec.family, "wreath-p");
    const WreathTower t = wreath_tower(*p, spec.level);
    json checks = json::array();
    bool all = true;
    for (const WreathCheck& c : wreath_checks(t)) {
      checks.push_back({{"stage", c.stage}, {"name", c.name}, {"passed", c.passed}, {"detail", c.detail}});
      all = all && c.passed;
    }
    return {{"family", spec.family}, {"checks", checks}, {"passed", all}, {"failed", !all}};
  }
  const TruncationChain chain = fin_truncation_chain(spec.family, spec.level);
  const ChainLevel& level = chain.levels[spec.level];
  if (spec.p != 0 && spec.p != chain.p) throw SpecError("p", "family " + spec.family + " lives over F_" + std::to_string(chain.p));
  json out = {{"family", chain.family}, {"p", chain.p}, {"truncate", spec.level}};
  out["group"] = group_json(level.module.group());
  out["module_dim"] = level.module.dim();
  if (spec.op == "describe") {
    out["generators"] = level.group.generators().size();
    out["tail_dim"] = level.tail ? json(level.tail->dim()) : json(nullptr);
    json orders = json::array();
    for (const ChainLevel& l : chain.levels) orders.push_back(l.group.order());
    out["level_orders"] = orders;
    return out;
  }
  if (spec.op == "cohomology") {
    out.update(limits_json(group_cohomology(level.module, spec.n_degrees), "BAR_COMPLEX"));
    return out;
  }
  out.update(lambda_json(lambda_by_route(level.module, spec.n_degrees, spec.route)));
  return out;
}

const std::set<std::string> kRoutes{"auto", "bar", "subgroup-complex"};
const std::set<std::string> kTheorems{"quotient", "lambda-quotient", "lhs", "product"};
const std::set<std::string> kCorpusOps{"lambda", "cohomology", "describe", "list", "wreath-checks"};

void need(bool cond, const std::string& field, const std::string& message) {
  if (!cond) throw SpecError(field, message);
}

void need_prime(const JobSpec& s) { need(is_prime(s.p), "p", "expected a prime, got " + std::to_string(s.p)); }

}  // namespace

const std::vector<std::string>& command_names() {
  static const std::vector<std::string> names{"lambda", "higher-limits", "tower", "spectral", "cohomology", "verify", "corpus"};
  return names;
}

json to_json(const JobSpec& s) {
  return {{"command", s.command}, {"group", s.group},     {"p", s.p},           {"module", s.module},
          {"functor", s.functor}, {"objects", s.objects}, {"N", s.n_degrees},  {"output", s.output},
          {"route", s.route},     {"suite", s.suite},     {"family", s.family}, {"truncate", s.level},
          {"op", s.op},           {"degree", s.degree},   {"theorem", s.theorem}, {"normal", s.normal}};
}

JobSpec spec_from_json(const json& j) {
  if (!j.is_object()) throw SpecError("spec", "expected a JSON object");
  JobSpec s;
  const std::map<std::string, std::string*> strings{
      {"command", &s.command}, {"group", &s.group},   {"module", &s.module}, {"functor", &s.functor},
      {"objects", &s.objects}, {"output", &s.output}, {"route", &s.route},   {"suite", &s.suite},
      {"family", &s.family},   {"op", &s.op},         {"theorem", &s.theorem}, {"normal", &s.normal}};
  const std::map<std::string, std::size_t*> counts{{"N", &s.n_degrees}, {"truncate", &s.level}, {"degree", &s.degree}};
  for (const auto& [key, value] : j.items()) {
    if (auto it = strings.find(key); it != strings.end()) {
      if (!value.is_string()) throw SpecError(key, "expected a string");
      *it->second = value.get<std::string>();
    } else if (auto c = counts.find(key); c != counts.end()) {
      if (!value.is_number_unsigned()) throw SpecError(key, "expected a non-negative integer");
      *c->second = value.get<std::size_t>();
    } else if (key == "p") {
      if (!value.is_number_unsigned()) throw SpecError(key, "expected a non-negative integer");
      s.p = value.get<std::uint64_t>();
    } else {
      throw SpecError(key, "unknown field");
    }
  }
  return s;
}

void validate(const JobSpec& s) {
  const auto& names = command_names();
  need(std::find(names.begin(), names.end(), s.command) != names.end(), "command", "unknown command \"" + s.command + "\"");
  need(s.n_degrees >= 1, "N", "at least one degree is needed");
  const bool named_module = s.module.find('/') != std::string::npos && s.module.find('(') == std::string::npos;
  if (s.command == "lambda" || s.command == "cohomology") {
    need_prime(s);
    need(!s.module.empty(), "module", "a module is required");
    need(!s.group.empty() || named_module, "group", "a group is required");
    need(kRoutes.count(s.route) > 0, "route", "expected auto, bar or subgroup-complex");
  } else if (s.command == "higher-limits") {
    need_prime(s);
    need(!s.functor.empty(), "functor", "a functor is required");
    if (functor_needs_module(s.functor)) need(!s.module.empty(), "module", "this functor needs a module");
    need(!s.group.empty() || named_module, "group", "a group is required");
    need(!s.objects.empty(), "objects", "an object set is required");
  } else if (s.command == "spectral") {
    need_prime(s);
    need(kTheorems.count(s.theorem) > 0, "theorem", "expected quotient, lambda-quotient, lhs or product");
    need(kRoutes.count(s.route) > 0, "route", "expected auto, bar or subgroup-complex");
    need(!s.group.empty() || named_module, "group", "a group is required");
    if (s.theorem != "quotient" || functor_needs_module(s.functor)) need(!s.module.empty(), "module", "a module is required");
    if (s.theorem != "product") need(!s.normal.empty(), "normal", "a normal subgroup is required");
  } else if (s.command == "tower") {
    need(is_family(s.family), "family", "unknown family \"" + s.family + "\"");
    need(s.level >= 1, "truncate", "the window needs at least two levels");
  } else if (s.command == "verify") {
    bool known = s.suite == "all";
    for (const SuiteInfo& i : registered_suites()) known = known || i.id == s.suite;
    need(known, "suite", "unknown suite \"" + s.suite + "\"");
  } else if (s.command == "corpus") {
    need(kCorpusOps.count(s.op) > 0, "op", "expected lambda, cohomology, describe, list or wreath-checks");
    if (s.op == "wreath-checks") {
      const auto p = suffix_number(s.family, "wreath-p");
      need(p && (*p == 2 || *p == 3), "family", "expected wreath-p2 or wreath-p3");
      need(s.level >= 1, "truncate", "at least one stage is needed");
    } else if (s.op != "list") {
      need(is_family(s.family), "family", "unknown family \"" + s.family + "\"");
      need(kRoutes.count(s.route) > 0, "route", "expected auto, bar or subgroup-complex");
    }
  }
}

json run(const JobSpec& spec) {
  validate(spec);
  const auto t0 = Clock::now();
  json timings = json::object();
  json extrapolation = nullptr;
  json results;
  if (spec.command == "lambda") results = run_lambda(spec);
  else if (spec.command == "higher-limits") results = run_higher_limits(spec);
  else if (spec.command == "cohomology") results = run_cohomology(spec);
  else if (spec.command == "spectral") results = run_spectral(spec);
  else if (spec.command == "tower") results = run_tower(spec, extrapolation);
  else if (spec.command == "verify") results = run_verify(spec, timings);
  else results = run_corpus(spec);
  const bool failed = results.contains("failed") && results["failed"].get<bool>();
  results.erase("failed");
  timings["total_seconds"] = seconds_since(t0);
  return {{"schema", "hlim-report"},
          {"schema_version", kSchemaVersion},
          {"artifact_version", kArtifactVersion},
          {"command", spec.command},
          {"input", to_json(spec)},
          {"status", failed ? "failed" : "ok"},
          {"results", results},
          {"extrapolation", extrapolation},
          {"timings", timings}};
}

bool report_failed(const json& report) { return report.value("status", "failed") != "ok"; }

std::string summary(const json& report) {
  std::ostringstream out;
  const json& r = report.at("results");
  out << report.at("command").get<std::string>() << ": " << report.at("status").get<std::string>() << "\n";
  auto print_degrees = [&](const json& block, const std::string& label) {
    if (!block.contains("degrees")) return;
    out << label << "\n";
    for (const json& d : block["degrees"])
      out << "  degree " << d["degree"] << ": " << d["dim"] << "  [" << d["provenance"].get<std::string>() << "]\n";
  };
  print_degrees(r, "dimensions");
  if (r.contains("e2")) {
    const json& e = r["e2"]["entries"];
    const std::size_t n = e.size();
    out << "E2 (rows j from the top, columns i)\n";
    for (std::size_t j = n; j-- > 0;) {
      out << "  j=" << j << ":";
      for (std::size_t i = 0; i < n; ++i) out << " " << e[i][j];
      out << "\n";
    }
    print_degrees(r["abutment"], "abutment");
    const json& c = r["convergence"];
    out << "convergence " << (c["ok"].get<bool>() ? "ok" : "FAILED") << ", collapse "
        << (c["collapse"].get<std::string>().empty() ? "none" : c["collapse"].get<std::string>()) << "\n";
  }
  if (r.contains("window")) {
    out << "tower window:";
    for (const json& l : r["window"]) out << " " << l["dim"];
    out << "\nlim: " << r["lim_term"].get<std::string>() << "\nlim^1: " << r["lim1_term"].get<std::string>() << "\n";
    if (!r["prediction"].get<std::string>().empty()) out << "prediction: " << r["prediction"].get<std::string>() << "\n";
  }
  if (r.contains("suites"))
    for (const json& s : r["suites"]) {
      std::size_t passed = 0;
      for (const json& c : s["cases"]) passed += c["passed"].get<bool>() ? 1 : 0;
      out << (s["passed"].get<bool>() ? "PASS " : "FAIL ") << s["suite"].get<std::string>() << " (" << passed << "/"
          << s["cases"].size() << ")";
      if (s.contains("error") && s["error"].is_string() && !s["error"].get<std::string>().empty())
        out << " " << s["error"].get<std::string>();
      out << "\n";
    }
  if (r.contains("checks"))
    for (const json& c : r["checks"])
      out << (c["passed"].get<bool>() ? "PASS " : "FAIL ") << "stage " << c["stage"] << " " << c["name"].get<std::string>() << "\n";
  if (!report.at("extrapolation").is_null()) out << "note: " << report["extrapolation"].get<std::string>() << "\n";
  return out.str();
}

std::string describe_text() {
  std::ostringstream out;
  out << "hlim " << kArtifactVersion << " (report schema " << kSchemaVersion << ")\n\n"
      << "Commands:\n"
      << "  lambda         Lambda^i(G; M), i < N  (--group --p --module [--route auto|bar|subgroup-complex])\n"
      << "                 auto: shortcuts, then the bar complex, then the subgroup complex past the caps\n"
      << "  higher-limits  lim^i over an orbit category  (--group --p --functor --objects [--module])\n"
      << "  tower          truncated tower of a family and its lim / lim^1 classification  (--family --truncate --degree)\n"
      << "  spectral       E2 page and convergence check  (--theorem quotient|lambda-quotient|lhs|product [--normal])\n"
      << "  cohomology     H^i(G; M), i < N  (--group --p --module)\n"
      << "  verify         property suites  (--suite <id>|all)\n"
      << "  corpus         corpus families  (--family --truncate --op lambda|cohomology|describe|list|wreath-checks)\n\n"
      << "Groups:\n"
      << "  Sn Cn Dn An | corpus group names (S3xS3, hgm-gamma0/2, ...) | <family>@<n>\n"
      << "  gens(<degree>; (0 1 2); (0 1))   0-indexed disjoint cycles, ';' between generators\n"
      << "  direct(A, B) | wreath(B, p) | semidirect(Cn, Cm, k)\n"
      << "Modules:\n"
      << "  trivial<d> | perm | field (family groups) | outer(M1, M2) over direct(A, B)\n"
      << "  mat(<dim>; r,r/r,r; ...)   one row-major matrix per generator, rows split by '/'\n"
      << "  <corpus module name>, e.g. S4/p2/perm\n"
      << "Functors: atomic | fixed-point | coinduced(c[, m0]) | constant(d)\n"
      << "Objects: all-p | all | list(S1, S2, ...) | containing(Q), closed under conjugation\n"
      << "Subgroups: 1 | G | O_p | sylow | gen((0 1); (2 3))\n\n"
      << "Report fields: schema, schema_version, artifact_version, command, input, status, results,\n"
      << "extrapolation (null unless a tower result rests on the window-extrapolation hypothesis), timings.\n"
      << "Every dimension carries a provenance flag and its safe window. Only 'timings' varies between runs.\n"
      << "Environment caps: HLIM_ENUM_BOUND, HLIM_MAX_DEGREE, HLIM_CHAIN_CAP.\n"
      << "Exit status: 0 ok, 1 failed invariant or error, 2 malformed job.\n";
  return out.str();
}

json describe_json() {
  json fields = json::object();
  const json sample = to_json(JobSpec{});
  for (const auto& [key, value] : sample.items()) fields[key] = value.is_string() ? "string" : "unsigned";
  return {{"artifact_version", kArtifactVersion},
          {"schema_version", kSchemaVersion},
          {"commands", command_names()},
          {"job_spec", fields},
          {"report",
           {{"required", {"schema", "schema_version", "artifact_version", "command", "input", "status", "results", "extrapolation", "timings"}},
            {"extrapolation", "null, or the tag string for tower reports resting on the window-extrapolation hypothesis"},
            {"degree_entry", {"degree", "dim", "provenance", "safe_window"}},
            {"provenance", {"BAR_COMPLEX", "SHORTCUT_OP", "SHORTCUT_SYLOW_P", "SUBGROUP_COMPLEX", "BAR_COMPLEX_WINDOW"}},
            {"deterministic", "every field except timings"}}},
          {"exit_status", {{"ok", 0}, {"failed", 1}, {"malformed", 2}}}};
}

JobSpec sample_spec() {
  JobSpec s;
  s.command = "lambda";
  s.group = "S3";
  s.p = 3;
  s.module = "trivial1";
  s.n_degrees = 4;
  return s;
}

int main(int argc, char** argv) {
  CLI::App app{"Higher limits over orbit categories"};
  app.require_subcommand(1);
  JobSpec flags;
  std::string spec_file;
  bool print_json = false;
  std::map<std::string, CLI::Option*> given;

  for (const std::string& name : command_names()) {
    CLI::App* sub = app.add_subcommand(name);
    sub->add_option("--spec", spec_file, "JSON job file; flags override its fields");
    sub->add_flag("--json", print_json, "print the report JSON instead of the summary");
    given[name + ":group"] = sub->add_option("--group", flags.group);
    given[name + ":p"] = sub->add_option("--p", flags.p);
    given[name + ":module"] = sub->add_option("--module", flags.module);
    given[name + ":functor"] = sub->add_option("--functor", flags.functor);
    given[name + ":objects"] = sub->add_option("--objects", flags.objects);
    given[name + ":N"] = sub->add_option("--N", flags.n_degrees);
    given[name + ":output"] = sub->add_option("--output", flags.output);
    given[name + ":route"] = sub->add_option("--route", flags.route);
    given[name + ":suite"] = sub->add_option("--suite", flags.suite);
    given[name + ":family"] = sub->add_option("--family", flags.family);
    given[name + ":truncate"] = sub->add_option("--truncate", flags.level);
    given[name + ":op"] = sub->add_option("--op", flags.op);
    given[name + ":degree"] = sub->add_option("--degree", flags.degree);
    given[name + ":theorem"] = sub->add_option("--theorem", flags.theorem);
    given[name + ":normal"] = sub->add_option("--normal", flags.normal);
  }
  CLI::App* describe = app.add_subcommand("describe", "input grammar and report schema");
  std::string format = "text";
  bool sample = false;
  describe->add_option("--format", format)->check(CLI::IsMember({"text", "json"}));
  describe->add_flag("--sample", sample, "print a sample job spec");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    const int code = app.exit(e);
    return code == 0 ? 0 : 2;
  }

  if (describe->parsed()) {
    if (sample) std::cout << to_json(sample_spec()).dump(2) << "\n";
    else if (format == "json") std::cout << describe_json().dump(2) << "\n";
    else std::cout << describe_text();
    return 0;
  }

  try {
    const std::string command = app.get_subcommands().front()->get_name();
    JobSpec spec;
    if (!spec_file.empty()) {
      std::ifstream in(spec_file);
      if (!in) throw SpecError("spec", "cannot read " + spec_file);
      json j;
      try {
        j = json::parse(in);
      } catch (const json::parse_error& e) {
        throw SpecError("spec", e.what());
      }
      spec = spec_from_json(j);
    }
    spec.command = command;
    const json flag_json = to_json(flags);
    json merged = to_json(spec);
    for (const auto& [key, value] : flag_json.items())
      if (auto it = given.find(command + ":" + key); it != given.end() && it->second->count() > 0) merged[key] = value;
    spec = spec_from_json(merged);

    const json report = run(spec);
    if (!spec.output.empty()) {
      std::ofstream out(spec.output);
      if (!out) throw SpecError("output", "cannot write " + spec.output);
      out << report.dump(2) << "\n";
    }
    if (print_json) std::cout << report.dump(2) << "\n";
    else std::cout << summary(report);
    return report_failed(report) ? 1 : 0;
  } catch (const SpecError& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return 1;
  }
}

}  // namespace hlim::cli
