#include "hlim/lambda.hpp"

#include <algorithm>
#include <map>
#include <memory>
#include <unordered_map>
#include <unordered_set>

#include "hlim/group_ops.hpp"

namespace hlim {

std::string to_string(Provenance p) {
  switch (p) {
    case Provenance::BarComplex: return "BAR_COMPLEX";
    case Provenance::ShortcutOp: return "SHORTCUT_OP";
    case Provenance::ShortcutSylowP: return "SHORTCUT_SYLOW_P";
    case Provenance::SubgroupComplex: return "SUBGROUP_COMPLEX";
  }
  return "?";
}

bool LambdaResult::is_zero() const {
  return std::all_of(dims.begin(), dims.end(), [](std::size_t d) { return d == 0; });
}

namespace {

LambdaResult tagged(std::vector<std::size_t> dims, Provenance how) {
  LambdaResult r;
  r.provenance.assign(dims.size(), how);
  r.dims = std::move(dims);
  return r;
}

void require_closed(const Subgroup& group, const std::vector<Subgroup>& objects, const char* what) {
  std::unordered_set<Subgroup, SubgroupHash> set(objects.begin(), objects.end());
  for (const Subgroup& h : objects)
    for (Elt s : group.generators())
      if (!set.count(h.conjugate(s))) throw ValidationError(std::string(what) + ": object set is not conjugation-closed");
}

std::size_t sylow_exponent(const Subgroup& g, std::uint64_t p) {
  std::size_t n = 0;
  for (std::uint64_t s = p_part(g.order(), p); s > 1; s /= p) ++n;
  return n;
}

}  // namespace

std::vector<Subgroup> class_representatives(const Subgroup& group, const std::vector<Subgroup>& objects,
                                            const std::vector<Subgroup>& preferred) {
  std::vector<Subgroup> reps;
  for (const auto& cls : conjugacy_classes(group, objects)) {
    std::size_t pick = cls.front();
    for (std::size_t i : cls)
      if (std::find(preferred.begin(), preferred.end(), objects[i]) != preferred.end()) {
        pick = i;
        break;
      }
    reps.push_back(objects[pick]);
  }
  std::stable_sort(reps.begin(), reps.end(), [](const Subgroup& a, const Subgroup& b) { return a.order() < b.order(); });
  return reps;
}

CatModule lambda_functor(const FpGModule& m, const std::vector<Subgroup>& objects) {
  const Subgroup& g = m.group();
  auto c = std::make_shared<const OrbitCategory>(g, class_representatives(g, objects), false);
  return atomic_functor(c, m);
}

LambdaResult lambda(const FpGModule& m, std::size_t n_degrees, EngineOptions options) {
  const CatModule phi = lambda_functor(m, p_subgroups(m.group(), m.p()));
  return tagged(higher_limits(phi, n_degrees, options).dims, Provenance::BarComplex);
}

LambdaResult lambda_X(const FpGModule& m, const std::vector<Subgroup>& objects, std::size_t n_degrees,
                      EngineOptions options) {
  const Subgroup& g = m.group();
  bool has_trivial = false;
  for (const Subgroup& h : objects) {
    if (&h.table() != &g.table() || !h.is_subgroup_of(g)) throw ValidationError("lambda_X: object is not a subgroup");
    if (!is_p_power(h.order(), m.p())) throw ValidationError("lambda_X: object is not a p-subgroup");
    has_trivial = has_trivial || h.is_trivial();
  }
  if (!has_trivial) throw ValidationError("lambda_X: the trivial subgroup must be an object");
  require_closed(g, objects, "lambda_X");
  std::vector<Subgroup> distinct;
  for (const Subgroup& h : objects)
    if (std::find(distinct.begin(), distinct.end(), h) == distinct.end()) distinct.push_back(h);
  return tagged(higher_limits(lambda_functor(m, distinct), n_degrees, options).dims, Provenance::BarComplex);
}

namespace {

// Strict chains of subgroups (indices into a list), grouped into G-orbits.
struct ChainOrbits {
  std::vector<std::vector<std::size_t>> reps;
  std::vector<Subgroup> stabilizers;
  // every chain of this length -> (orbit, element carrying the rep onto it)
  std::map<std::vector<std::size_t>, std::pair<std::size_t, Elt>> where;
};

}  // namespace

LambdaResult lambda_subgroup_complex(const FpGModule& m, std::size_t n_degrees) {
  const Subgroup& g = m.group();
  const GroupTable& t = g.table();
  const Fp p = m.p();
  std::vector<Subgroup> subs;
  for (const Subgroup& s : p_subgroups(g, p))
    if (!s.is_trivial()) subs.push_back(s);
  std::unordered_map<Subgroup, std::size_t, SubgroupHash> index;
  for (std::size_t i = 0; i < subs.size(); ++i) index.emplace(subs[i], i);
  std::vector<std::vector<std::size_t>> conj(t.order());
  for (Elt x : g.elements())
    for (const Subgroup& s : subs) conj[x].push_back(index.at(s.conjugate(x)));
  std::vector<std::vector<bool>> below(subs.size(), std::vector<bool>(subs.size()));
  for (std::size_t a = 0; a < subs.size(); ++a)
    for (std::size_t b = 0; b < subs.size(); ++b)
      below[a][b] = a != b && subs[a].order() < subs[b].order() && subs[a].is_subgroup_of(subs[b]);

  // cochain degree i lives on chains of i subgroups, i <= n_degrees
  std::vector<ChainOrbits> levels(n_degrees + 1);
  std::vector<std::vector<std::size_t>> chains{{}};
  for (std::size_t len = 0; len <= n_degrees; ++len) {
    ChainOrbits& level = levels[len];
    for (const auto& c : chains) {
      if (level.where.count(c)) continue;
      const std::size_t orbit = level.reps.size();
      std::vector<Elt> stab;
      for (Elt x : g.elements()) {
        std::vector<std::size_t> image;
        for (std::size_t s : c) image.push_back(conj[x][s]);
        if (image == c) stab.push_back(x);
        level.where.emplace(std::move(image), std::make_pair(orbit, x));
      }
      level.reps.push_back(c);
      level.stabilizers.push_back(stab.size() == 1 ? Subgroup::trivial(g.table_ptr()) : Subgroup(g.table_ptr(), stab));
    }
    std::vector<std::vector<std::size_t>> longer;
    for (const auto& c : chains)
      for (std::size_t s = 0; s < subs.size(); ++s)
        if (c.empty() || below[c.back()][s]) {
          longer.push_back(c);
          longer.back().push_back(s);
        }
    chains = std::move(longer);
  }

  std::vector<std::vector<FpMatrix>> bases(n_degrees + 1);
  std::vector<std::size_t> cochain_dims(n_degrees + 1, 0);
  for (std::size_t i = 0; i <= n_degrees; ++i)
    for (const Subgroup& st : levels[i].stabilizers) {
      bases[i].push_back(fixed_points(m, st));
      cochain_dims[i] += bases[i].back().cols();
    }

  // rank of the coboundary from degree i to i + 1
  std::vector<std::size_t> ranks(n_degrees + 1, 0);
  for (std::size_t i = 0; i < n_degrees; ++i) {
    const ChainOrbits& src = levels[i];
    const ChainOrbits& dst = levels[i + 1];
    std::vector<std::size_t> col_off{0}, row_off{0};
    for (const FpMatrix& b : bases[i]) col_off.push_back(col_off.back() + b.cols());
    for (const FpMatrix& b : bases[i + 1]) row_off.push_back(row_off.back() + b.cols());
    FpMatrix d(cochain_dims[i + 1], cochain_dims[i], p);
    for (std::size_t r = 0; r < dst.reps.size(); ++r) {
      const FpMatrix& target = bases[i + 1][r];
      if (target.cols() == 0) continue;
      const auto& chain = dst.reps[r];
      for (std::size_t j = 0; j < chain.size(); ++j) {
        std::vector<std::size_t> face = chain;
        face.erase(face.begin() + static_cast<std::ptrdiff_t>(j));
        const auto [orbit, x] = src.where.at(face);
        const FpMatrix& source = bases[i][orbit];
        if (source.cols() == 0) continue;
        const auto block = target.solve(m.matrix(x) * source);
        if (!block) throw ValidationError("lambda_subgroup_complex: face value is not fixed by the stabilizer");
        const Fp sign = j % 2 ? static_cast<Fp>(p - 1) : Fp{1};
        for (std::size_t a = 0; a < block->rows(); ++a)
          for (std::size_t b = 0; b < block->cols(); ++b)
            d(row_off[r] + a, col_off[orbit] + b) =
                static_cast<Fp>((d(row_off[r] + a, col_off[orbit] + b) + sign * (*block)(a, b)) % p);
      }
    }
    ranks[i] = d.rank();
  }
  std::vector<std::size_t> dims(n_degrees, 0);
  for (std::size_t i = 0; i < n_degrees; ++i) dims[i] = cochain_dims[i] - ranks[i] - (i ? ranks[i - 1] : 0);
  return tagged(std::move(dims), Provenance::SubgroupComplex);
}

std::optional<LambdaResult> shortcut_Op_vanishing(const FpGModule& m, std::size_t n_degrees) {
  if (largest_normal_p_subgroup(m.group(), m.p()).is_trivial()) return std::nullopt;
  return tagged(std::vector<std::size_t>(n_degrees, 0), Provenance::ShortcutOp);
}

std::size_t lambda0_direct(const FpGModule& m) {
  // a family is x in M^G with x = F(f) x_P = 0 for every 1 -> P, P != 1
  if (m.group().order() % m.p() == 0) return 0;
  return fixed_points(m, m.group()).cols();
}

LambdaResult lambda1_sylow_order_p(const FpGModule& m, std::size_t n_degrees) {
  const Subgroup s = sylow_p(m.group(), m.p());
  if (s.order() != m.p()) throw ValidationError("lambda1_sylow_order_p: Sylow subgroup does not have order p");
  std::vector<std::size_t> dims(n_degrees, 0);
  if (n_degrees > 0) dims[0] = lambda0_direct(m);
  if (n_degrees > 1)
    dims[1] = fixed_points(m, normalizer(m.group(), s)).cols() - fixed_points(m, m.group()).cols();
  return tagged(std::move(dims), Provenance::ShortcutSylowP);
}

LambdaResult lambda_auto(const FpGModule& m, std::size_t n_degrees, EngineOptions options) {
  if (auto z = shortcut_Op_vanishing(m, n_degrees)) return *z;
  if (sylow_p(m.group(), m.p()).order() == m.p()) return lambda1_sylow_order_p(m, n_degrees);
  return lambda(m, n_degrees, options);
}

CatModule atomic_functor_at(const OrbitPtr& c, Obj q, const FpGModule& v) {
  const GroupTable& t = c->table();
  const Subgroup& qs = c->object(q);
  if (&t != &v.group().table()) throw ValidationError("atomic functor: module and category over different groups");
  for (Obj o = 0; o < c->num_objects(); ++o)
    if (o != q && c->object(o).order() == qs.order() && c->hom_size(q, o) > 0)
      throw ValidationError("atomic functor: object has a conjugate in the category");
  const Subgroup norm = normalizer(c->group(), qs);
  if (!(v.group() == norm)) throw ValidationError("atomic functor: value must be a module over the normalizer");
  for (Elt x : qs.generators())
    if (!v.matrix(x).is_identity()) throw ValidationError("atomic functor: the subgroup must act trivially");
  std::vector<std::size_t> dims(c->num_objects(), 0);
  dims[q] = v.dim();
  std::vector<FpMatrix> maps;
  maps.reserve(c->num_morphisms());
  for (Mor f = 0; f < c->num_morphisms(); ++f) {
    if (c->source(f) == q && c->target(f) == q)
      maps.push_back(v.matrix(t.inv(c->rep(f))));
    else
      maps.emplace_back(dims[c->source(f)], dims[c->target(f)], v.p());
  }
  return CatModule(c, v.p(), std::move(dims), std::move(maps));
}

AtomicReduction reduce_atomic(const Subgroup& group, const std::vector<Subgroup>& x, const Subgroup& q,
                              const FpGModule& v) {
  if (std::find(x.begin(), x.end(), q) == x.end()) throw ValidationError("reduce_atomic: Q is not in X");
  require_closed(group, x, "reduce_atomic");
  const Subgroup norm = normalizer(group, q);
  if (!(v.group() == norm)) throw ValidationError("reduce_atomic: V must be a module over N_G(Q)");
  for (Elt e : q.generators())
    if (!v.matrix(e).is_identity()) throw ValidationError("reduce_atomic: Q must act trivially on V");
  std::unordered_set<Subgroup, SubgroupHash> xs(x.begin(), x.end());
  for (const Subgroup& p : x)
    if (q.is_subgroup_of(p) && !xs.count(normalizer(p, q)))
      throw ValidationError("reduce_atomic: N_P(Q) is not in X for some P containing Q");

  AtomicReduction out{quotient(norm, q), {}, {}};
  const Quotient& qt = out.quotient;
  for (const Subgroup& p : x) {
    if (!q.is_subgroup_of(p) || !p.is_subgroup_of(norm)) continue;
    Subgroup img = qt.image_of(p);
    if (std::find(out.y.begin(), out.y.end(), img) == out.y.end()) out.y.push_back(std::move(img));
  }
  out.module = FpGModule::from_elements(qt.group.whole(), v.p(), v.dim(),
                                        [&](Elt e) { return v.matrix(qt.section[e]); });
  return out;
}

ReductionSides reduction_sides(const Subgroup& group, const std::vector<Subgroup>& x, const Subgroup& q,
                               const FpGModule& v, std::size_t n_degrees) {
  AtomicReduction red = reduce_atomic(group, x, q, v);
  auto c = std::make_shared<const OrbitCategory>(group, class_representatives(group, x, {q}), false);
  const Obj qo = *c->find_object(q);
  ReductionSides out;
  out.original = higher_limits(atomic_functor_at(c, qo, v), n_degrees);
  out.reduced.dims = lambda_X(red.module, red.y, n_degrees).dims;
  out.reduced.max_degree = out.original.max_degree;
  return out;
}

CentralizerVanishing verify_centralizer_vanishing(const FpGModule& m, std::size_t n_degrees) {
  CentralizerVanishing out;
  const Subgroup kernel = centralizer_of_module(m);
  for (Elt e : kernel.elements())
    if (kernel.table().element_order(e) == m.p()) {
      out.applicable = true;
      out.witness = e;
      break;
    }
  if (!out.applicable) return out;
  out.lambda = lambda(m, n_degrees);
  out.holds = out.lambda.is_zero();
  return out;
}

VanishingBound vanishing_bound_check(const FpGModule& m, std::size_t n_degrees, EngineOptions options) {
  VanishingBound out;
  out.sylow_exponent = sylow_exponent(m.group(), m.p());
  out.lambda = lambda(m, n_degrees, options);
  for (std::size_t i = out.sylow_exponent + 1; i < out.lambda.dims.size(); ++i)
    if (out.lambda.dims[i] != 0) out.holds = false;
  return out;
}

}  // namespace hlim
