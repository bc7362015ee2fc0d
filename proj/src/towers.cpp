#include "hlim/towers.hpp"

#include <algorithm>
#include <map>
#include <memory>

#include "hlim/group_ops.hpp"
#include "hlim/lambda.hpp"
#include "hlim/orbit_category.hpp"

namespace hlim {

// ------------------------------------------------------------ posets

FinitePoset::FinitePoset(std::vector<std::string> labels, std::vector<std::vector<bool>> leq)
    : labels_(std::move(labels)), leq_(std::move(leq)) {
  const std::size_t n = labels_.size();
  if (leq_.size() != n) throw ValidationError("FinitePoset: relation has the wrong size");
  for (const auto& row : leq_)
    if (row.size() != n) throw ValidationError("FinitePoset: relation has the wrong size");
  for (std::size_t a = 0; a < n; ++a) {
    if (!leq_[a][a]) throw ValidationError("FinitePoset: relation is not reflexive");
    for (std::size_t b = 0; b < n; ++b) {
      if (a != b && leq_[a][b] && leq_[b][a]) throw ValidationError("FinitePoset: relation is not antisymmetric");
      if (!leq_[a][b]) continue;
      for (std::size_t c = 0; c < n; ++c)
        if (leq_[b][c] && !leq_[a][c]) throw ValidationError("FinitePoset: relation is not transitive");
    }
  }
}

FinitePoset FinitePoset::chain(std::size_t size) {
  std::vector<std::string> labels;
  std::vector<std::vector<bool>> leq(size, std::vector<bool>(size, false));
  for (std::size_t a = 0; a < size; ++a) {
    labels.push_back(std::to_string(a));
    for (std::size_t b = a; b < size; ++b) leq[a][b] = true;
  }
  return FinitePoset(std::move(labels), std::move(leq));
}

bool FinitePoset::is_directed() const {
  for (std::size_t a = 0; a < size(); ++a)
    for (std::size_t b = a + 1; b < size(); ++b) {
      bool bound = false;
      for (std::size_t c = 0; c < size() && !bound; ++c) bound = leq_[a][c] && leq_[b][c];
      if (!bound) return false;
    }
  return true;
}

std::optional<std::size_t> FinitePoset::maximum() const {
  for (std::size_t m = 0; m < size(); ++m) {
    bool top = true;
    for (std::size_t a = 0; a < size() && top; ++a) top = leq_[a][m];
    if (top) return m;
  }
  return std::nullopt;
}

PosetCategory::PosetCategory(FinitePoset poset) : poset_(std::move(poset)) {
  const std::size_t n = poset_.size();
  std::vector<Obj> source, target;
  std::vector<Mor> identity(n);
  for (std::size_t a = 0; a < n; ++a)
    for (std::size_t b = 0; b < n; ++b)
      if (poset_.leq(a, b)) {
        if (a == b) identity[a] = static_cast<Mor>(source.size());
        source.push_back(static_cast<Obj>(a));
        target.push_back(static_cast<Obj>(b));
      }
  set_structure(n, std::move(source), std::move(target), std::move(identity));
  build_composition([this](Mor f, Mor g) { return *arrow(this->source(g), this->target(f)); });
}

std::optional<Mor> PosetCategory::arrow(std::size_t a, std::size_t b) const {
  auto [lo, hi] = hom(static_cast<Obj>(a), static_cast<Obj>(b));
  if (lo == hi) return std::nullopt;
  return lo;
}

// ------------------------------------------------------------ windows

void TowerWindow::validate() const {
  if (dims.empty()) throw ValidationError("TowerWindow: empty window");
  if (maps.size() + 1 != dims.size()) throw ValidationError("TowerWindow: need one map per consecutive pair");
  for (std::size_t n = 0; n < maps.size(); ++n)
    if (maps[n].rows() != dims[n] || maps[n].cols() != dims[n + 1] || maps[n].p() != p)
      throw ValidationError("TowerWindow: map " + std::to_string(n + 1) + " -> " + std::to_string(n) +
                            " has the wrong shape");
}

FpMatrix TowerWindow::composite(std::size_t from, std::size_t to) const {
  if (to > from || from > top()) throw ValidationError("TowerWindow: bad composite range");
  FpMatrix m = FpMatrix::identity(dims[to], p);
  for (std::size_t n = to; n < from; ++n) m = m * maps[n];
  return m;
}

bool TowerWindow::surjective() const {
  for (std::size_t n = 0; n < maps.size(); ++n)
    if (maps[n].rank() != dims[n]) return false;
  return true;
}

CatModule TowerWindow::as_functor() const {
  validate();
  auto cat = std::make_shared<const PosetCategory>(FinitePoset::chain(dims.size()));
  std::vector<FpMatrix> values;
  for (Mor f = 0; f < cat->num_morphisms(); ++f) values.push_back(composite(cat->target(f), cat->source(f)));
  return CatModule(cat, p, dims, std::move(values));
}

WindowLimit window_lim(const TowerWindow& t) {
  t.validate();
  WindowLimit out;
  out.top_index = t.top();
  out.dimension = t.dims[out.top_index];
  FpMatrix stacked(0, out.dimension, t.p);
  for (std::size_t n = 0; n <= out.top_index; ++n) stacked = FpMatrix::vstack(stacked, t.composite(out.top_index, n));
  out.families = stacked;
  return out;
}

// ------------------------------------------------------------ certificates

std::string AffineLaw::describe() const {
  if (slope == 0) return std::to_string(intercept);
  std::string s = (slope == 1 ? "" : std::to_string(slope)) + "n";
  if (intercept > 0) s += " + " + std::to_string(intercept);
  if (intercept < 0) s += " - " + std::to_string(-intercept);
  return s;
}

std::string to_string(GrowthKind k) { return k == GrowthKind::Stabilizing ? "STABILIZING" : "UNBOUNDED_QUOTIENT"; }
std::string to_string(Lim1Class c) { return c == Lim1Class::Zero ? "ZERO" : "NONZERO"; }

void verify_certificate(const TowerWindow& t, const GrowthCertificate& cert) {
  t.validate();
  for (std::size_t n = 0; n <= t.top(); ++n)
    if (cert.law.at(n) != static_cast<std::int64_t>(t.dims[n]))
      throw ValidationError("certificate: dimension law " + cert.law.describe() + " fails at index " +
                            std::to_string(n) + " (window has " + std::to_string(t.dims[n]) + ")");
  if (cert.surjective && !t.surjective()) throw ValidationError("certificate: structure maps are not surjective");
  if (cert.kind == GrowthKind::Stabilizing) {
    // images of T_m -> T_n must not shrink as m grows
    for (std::size_t n = 0; n < t.top(); ++n)
      if (t.maps[n].rank() != t.composite(t.top(), n).rank())
        throw ValidationError("certificate: images do not stabilize at index " + std::to_string(n));
  } else {
    if (cert.law.slope <= 0) throw ValidationError("certificate: an unbounded quotient tower must grow");
    if (!cert.surjective) throw ValidationError("certificate: an unbounded quotient tower needs surjective maps");
  }
}

GrowthCertificate infer_certificate(const TowerWindow& t, GrowthKind kind) {
  t.validate();
  GrowthCertificate cert;
  cert.kind = kind;
  cert.law.intercept = static_cast<std::int64_t>(t.dims[0]);
  if (t.top() > 0) cert.law.slope = static_cast<std::int64_t>(t.dims[1]) - cert.law.intercept;
  cert.surjective = t.surjective();
  verify_certificate(t, cert);
  return cert;
}

Lim1Report classify_lim1(const TowerWindow& t, const GrowthCertificate& cert, const SourceLaw& source) {
  verify_certificate(t, cert);
  Lim1Report r;
  r.certificate = cert;
  r.window_dims = t.dims;
  if (cert.kind == GrowthKind::Stabilizing) {
    r.classification = Lim1Class::Zero;
    r.quantity = "lim^1";
    r.statement = "images stabilize on indices 0.." + std::to_string(t.top()) + " (Mittag-Leffler), so lim^1 = 0";
    return r;
  }
  if (source.law.slope < 0) throw ValidationError("classify_lim1: source law must be nondecreasing");
  r.classification = Lim1Class::Nonzero;
  r.quantity = "coker[" + source.description + " -> lim]";
  r.statement = "surjective tower of dimension " + cert.law.describe() +
                " has a limit of uncountable dimension; the source (pieces of dimension " + source.law.describe() +
                ") has countable dimension, so the cokernel is nonzero";
  return r;
}

// ------------------------------------------------------------ truncation chains

std::vector<std::string> registered_families() {
  std::vector<std::string> out;
  for (const char* suffix : {"", "-p3"})
    for (const char* m : {"h", "h0", "gamma", "gamma0", "gamma-star"}) out.push_back(std::string("hgm-") + m + suffix);
  for (const char* f : {"finite-d5", "finite-s3", "finite-s4"}) out.emplace_back(f);
  return out;
}

TruncationChain constant_chain(const std::string& name, const PermGroup& g, const FpGModule& m, std::size_t n_max) {
  if (!(m.group() == g.whole())) throw ValidationError("constant_chain: module is not over the given group");
  TruncationChain c;
  c.family = name;
  c.p = m.p();
  c.finite = true;
  for (std::size_t n = 0; n <= n_max; ++n) {
    c.levels.push_back({g, m, std::nullopt});
    if (n < n_max) {
      c.embed.emplace_back([](const Perm& x) { return x; });
      c.projections.push_back(FpMatrix::identity(m.dim(), m.p()));
    }
  }
  return c;
}

TruncationChain fin_truncation_chain(const std::string& family, std::size_t n_max) {
  if (family == "finite-d5") {
    const HgmTruncation t = hgm_truncate(HgmFamily{}, 1);
    return constant_chain(family, t.group, t.module, n_max);
  }
  if (family == "finite-s3") {
    const PermGroup s3 = symmetric_group(3);
    return constant_chain(family, s3, FpGModule::permutation(s3.whole(), 3), n_max);
  }
  if (family == "finite-s4") {
    const PermGroup s4 = symmetric_group(4);
    return constant_chain(family, s4, FpGModule::permutation(s4.whole(), 2), n_max);
  }
  if (family.rfind("hgm-", 0) != 0) throw ValidationError("unknown family: " + family);
  std::string member = family.substr(4);
  HgmFamily fam;
  if (member.size() > 3 && member.substr(member.size() - 3) == "-p3") {
    member.resize(member.size() - 3);
    fam.p = 3;
    fam.q0 = 3;
  }
  static const std::map<std::string, HgmMember> names{{"h", HgmMember::H},
                                                      {"h0", HgmMember::H0},
                                                      {"gamma", HgmMember::Gamma},
                                                      {"gamma0", HgmMember::Gamma0},
                                                      {"gamma-star", HgmMember::GammaStar}};
  auto it = names.find(member);
  if (it == names.end()) throw ValidationError("unknown family: " + family);
  fam.member = it->second;

  TruncationChain c;
  c.family = family;
  c.p = fam.p;
  c.hgm = fam;
  for (std::size_t n = 0; n <= n_max; ++n) {
    auto t = std::make_shared<const HgmTruncation>(hgm_truncate(fam, n));
    c.levels.push_back({t->group, t->module, t->tail});
    if (n < n_max) {
      c.embed.emplace_back([t](const Perm& g) { return t->embed(g); });
      c.projections.push_back(t->projection());
    }
  }
  return c;
}

// ------------------------------------------------------------ Lambda towers

namespace {

// Lambda^j from a shortcut when one applies.
std::optional<std::size_t> shortcut_dim(const FpGModule& m, std::size_t j) {
  const std::uint64_t order = m.group().order();
  if (order % m.p() != 0) return j == 0 ? fixed_points(m, m.group()).cols() : 0;
  if (!largest_normal_p_subgroup(m.group(), m.p()).is_trivial()) return 0;
  if (j == 0) return lambda0_direct(m);
  if (sylow_p(m.group(), m.p()).order() == m.p()) return lambda1_sylow_order_p(m, j + 1).dims[j];
  return std::nullopt;
}

Subgroup embed_subgroup(const TruncationChain& chain, std::size_t n, const Subgroup& h) {
  std::vector<Perm> gens;
  for (Elt e : h.generators()) gens.push_back(chain.embed[n](h.table().element(e)));
  return chain.levels[n + 1].group.subgroup(gens);
}

struct Level {
  OrbitPtr cat;
  std::unique_ptr<BarCohomology> engine;
};

CochainMap restriction(const TruncationChain& chain, std::size_t n, const OrbitCategory& small,
                       const OrbitCategory& big, const CatModule& small_phi, const CatModule& big_phi) {
  const GroupTable& ts = small.table();
  const GroupTable& tb = big.table();
  return orbit_cochain_map(
      small, big, [&](Elt e) { return tb.index_of(chain.embed[n](ts.element(e))); },
      [&](Obj o, Obj r, Elt) {
        const std::size_t ds = small_phi.dim(o), db = big_phi.dim(r);
        // only the trivial subgroup carries a value, and it is its own image
        return ds > 0 && db > 0 ? chain.projections[n] : FpMatrix(ds, db, chain.p);
      });
}

}  // namespace

LambdaTower lambda_tower(const TruncationChain& chain, std::size_t j, EngineOptions options) {
  const std::size_t levels = chain.levels.size();
  if (levels == 0) throw ValidationError("lambda_tower: empty chain");
  LambdaTower out;
  out.degree = j;
  out.window.p = chain.p;
  out.window.dims.assign(levels, 0);

  std::vector<bool> need(levels, false);
  for (std::size_t n = 0; n < levels; ++n) {
    const ChainLevel& lv = chain.levels[n];
    const std::optional<std::size_t> quick = shortcut_dim(lv.module, j);
    need[n] = !quick || *quick > 0;
    if (quick) out.window.dims[n] = *quick;
    bool exact = true;
    if (lv.tail) {
      const std::optional<std::size_t> t = shortcut_dim(*lv.tail, j);
      exact = t ? *t == 0 : lambda(*lv.tail, j + 1, options).dims[j] == 0;
    }
    out.tail_exact.push_back(exact);
  }

  std::vector<Level> lv(levels);
  if (std::find(need.begin(), need.end(), true) != need.end()) {
    std::vector<Subgroup> prev;
    for (std::size_t n = 0; n < levels; ++n) {
      const Subgroup whole = chain.levels[n].group.whole();
      std::vector<Subgroup> preferred;
      if (n > 0)
        for (const Subgroup& h : prev) preferred.push_back(embed_subgroup(chain, n - 1, h));
      std::vector<Subgroup> reps = class_representatives(whole, p_subgroups(whole, chain.p), preferred);
      if (need[n]) {
        const FpGModule& m = chain.levels[n].module;
        lv[n].cat = std::make_shared<const OrbitCategory>(whole, reps, false);
        lv[n].engine = std::make_unique<BarCohomology>(atomic_functor(lv[n].cat, m), j, options);
        const std::size_t d = lv[n].engine->dim(j);
        if (auto quick = shortcut_dim(m, j); quick && *quick != d)
          throw ValidationError("lambda_tower: bar complex and shortcut disagree at level " + std::to_string(n));
        out.window.dims[n] = d;
      }
      prev = std::move(reps);
    }
  }

  for (std::size_t n = 0; n + 1 < levels; ++n) {
    const std::size_t lo = out.window.dims[n], hi = out.window.dims[n + 1];
    if (lo == 0 || hi == 0) {
      out.window.maps.emplace_back(lo, hi, chain.p);
      continue;
    }
    const CochainMap f = restriction(chain, n, *lv[n].cat, *lv[n + 1].cat, lv[n].engine->functor(),
                                     lv[n + 1].engine->functor());
    out.window.maps.push_back(induced_map(*lv[n + 1].engine, *lv[n].engine, j, f));
  }
  return out;
}

// ------------------------------------------------------------ fixed-point quotient towers

namespace {

FpMatrix from_columns(std::size_t rows, const std::vector<std::vector<Fp>>& cols, Fp p) {
  FpMatrix m(rows, cols.size(), p);
  for (std::size_t c = 0; c < cols.size(); ++c)
    for (std::size_t r = 0; r < rows; ++r) m(r, c) = cols[c][r];
  return m;
}

std::vector<std::vector<Fp>> columns(const FpMatrix& m) {
  std::vector<std::vector<Fp>> out(m.cols(), std::vector<Fp>(m.rows()));
  for (std::size_t c = 0; c < m.cols(); ++c)
    for (std::size_t r = 0; r < m.rows(); ++r) out[c][r] = m(r, c);
  return out;
}

// Basis of Fix_B followed by a complement inside Fix_A.
struct QuotientBasis {
  std::vector<std::vector<Fp>> sub, complement;
};

QuotientBasis quotient_basis(const FpGModule& m, const Subgroup& a, const Subgroup& b) {
  QuotientBasis q;
  q.sub = columns(fixed_points(m, b));
  std::vector<std::vector<Fp>> all = q.sub;
  std::size_t rank = all.size();
  for (const auto& v : columns(fixed_points(m, a))) {
    all.push_back(v);
    const std::size_t r = from_columns(m.dim(), all, m.p()).rank();
    if (r > rank) {
      q.complement.push_back(v);
      rank = r;
    } else {
      all.pop_back();
    }
  }
  if (rank != fixed_points(m, a).cols()) throw ValidationError("quotient tower: Fix_B M is not inside Fix_A M");
  return q;
}

}  // namespace

bool QuotientTower::tail_zero() const {
  return std::all_of(tail_dims.begin(), tail_dims.end(), [](std::size_t d) { return d == 0; });
}

QuotientTower fixed_quotient_tower(const TruncationChain& chain, const SubgroupChoice& small,
                                   const SubgroupChoice& big) {
  QuotientTower out;
  out.window.p = chain.p;
  std::vector<QuotientBasis> bases;
  for (std::size_t n = 0; n < chain.levels.size(); ++n) {
    const ChainLevel& lv = chain.levels[n];
    const Subgroup whole = lv.group.whole();
    const Subgroup a = small(n, whole), b = big(n, whole);
    if (!a.is_subgroup_of(b)) throw ValidationError("quotient tower: A_n is not inside B_n");
    bases.push_back(quotient_basis(lv.module, a, b));
    out.window.dims.push_back(bases.back().complement.size());
    out.source_dims.push_back(bases.back().sub.size() + bases.back().complement.size());
    std::size_t tail = 0;
    if (lv.tail) {
      const QuotientBasis t = quotient_basis(*lv.tail, a, b);
      tail = t.complement.size();
    }
    out.tail_dims.push_back(tail);
  }
  for (std::size_t n = 0; n + 1 < chain.levels.size(); ++n) {
    const QuotientBasis& lo = bases[n];
    const QuotientBasis& hi = bases[n + 1];
    FpMatrix map(lo.complement.size(), hi.complement.size(), chain.p);
    if (!lo.complement.empty() && !hi.complement.empty()) {
      std::vector<std::vector<Fp>> basis = lo.sub;
      basis.insert(basis.end(), lo.complement.begin(), lo.complement.end());
      const std::size_t rows = chain.levels[n].module.dim();
      const FpMatrix lhs = from_columns(rows, basis, chain.p);
      const FpMatrix images = chain.projections[n] * from_columns(chain.levels[n + 1].module.dim(), hi.complement, chain.p);
      const std::optional<FpMatrix> coords = lhs.solve(images);
      if (!coords) throw ValidationError("quotient tower: projection leaves the fixed subspace at level " + std::to_string(n));
      for (std::size_t r = 0; r < lo.complement.size(); ++r)
        for (std::size_t c = 0; c < hi.complement.size(); ++c) map(r, c) = (*coords)(lo.sub.size() + r, c);
    }
    out.window.maps.push_back(map);
  }
  return out;
}

std::vector<Subgroup> compatible_sylows(const TruncationChain& chain) {
  std::vector<Subgroup> out;
  for (std::size_t n = 0; n < chain.levels.size(); ++n) {
    const Subgroup whole = chain.levels[n].group.whole();
    if (n == 0) {
      out.push_back(sylow_p(whole, chain.p));
      continue;
    }
    Subgroup s = embed_subgroup(chain, n - 1, out.back());
    if (s.order() != p_part(whole.order(), chain.p))
      throw ValidationError("compatible_sylows: embedded Sylow subgroup is not Sylow at level " + std::to_string(n));
    out.push_back(std::move(s));
  }
  return out;
}

QuotientTower sylow_shortcut_tower(const TruncationChain& chain) {
  const std::vector<Subgroup> s = compatible_sylows(chain);
  for (const Subgroup& x : s)
    if (x.order() != chain.p) throw ValidationError("sylow_shortcut_tower: Sylow subgroup does not have order p");
  return fixed_quotient_tower(
      chain, [&](std::size_t n, const Subgroup& w) { return normalizer(w, s[n]); },
      [](std::size_t, const Subgroup& w) { return w; });
}

CompatibilityReport shortcut_compatibility(const TruncationChain& chain, EngineOptions options) {
  const LambdaTower bar = lambda_tower(chain, 1, options);
  const QuotientTower sc = sylow_shortcut_tower(chain);
  CompatibilityReport r;
  r.bar_dims = bar.window.dims;
  r.shortcut_dims = sc.window.dims;
  for (const FpMatrix& m : bar.window.maps) r.bar_ranks.push_back(m.rank());
  for (const FpMatrix& m : sc.window.maps) r.shortcut_ranks.push_back(m.rank());
  r.holds = r.bar_dims == r.shortcut_dims && r.bar_ranks == r.shortcut_ranks;
  return r;
}

// ------------------------------------------------------------ short exact sequences

namespace {

bool all_zero(const std::vector<std::size_t>& v) {
  return std::all_of(v.begin(), v.end(), [](std::size_t d) { return d == 0; });
}

std::size_t field_coordinate_dim(const TruncationChain& chain) {
  std::size_t k = 0;
  for (std::uint32_t q = chain.hgm->q0; q > 1; q /= chain.p) ++k;
  return k;
}

// Classification of lim over a tail-exact Lambda tower.
std::string describe_lim(const TruncationChain& chain, const LambdaTower& t, std::optional<GrowthCertificate>& cert) {
  if (!std::all_of(t.tail_exact.begin(), t.tail_exact.end(), [](bool b) { return b; }))
    return "not classified: coordinates beyond the truncation contribute to this degree";
  if (all_zero(t.window.dims)) {
    cert = infer_certificate(t.window, GrowthKind::Stabilizing);
    return "0";
  }
  if (!t.window.surjective()) return "not classified on this window";
  const std::int64_t growth = static_cast<std::int64_t>(t.window.dims[1]) - static_cast<std::int64_t>(t.window.dims[0]);
  if (growth > 0) {
    cert = infer_certificate(t.window, GrowthKind::UnboundedQuotient);
    if (chain.hgm && static_cast<std::size_t>(growth) == field_coordinate_dim(chain)) return "product of F0 coordinates";
    return "product of copies of F_p^" + std::to_string(growth) + " (uncountable dimension)";
  }
  cert = infer_certificate(t.window, GrowthKind::Stabilizing);
  return "F_p^" + std::to_string(t.window.dims.back());
}

}  // namespace

SesReport ses_check_countable(const TruncationChain& chain, std::size_t i, EngineOptions options) {
  SesReport r;
  r.family = chain.family;
  r.degree = i;
  r.window_top = chain.top();
  const LambdaTower top = lambda_tower(chain, i, options);
  r.lim_tower_dims = top.window.dims;

  if (chain.finite) {
    const std::size_t d = lambda(chain.levels.back().module, i + 1, options).dims[i];
    const WindowLimit lim = window_lim(top.window);
    r.lim_term = "F_p^" + std::to_string(lim.dimension) + " (top of the tower)";
    r.lim1_term = "0 (the index poset has a maximum)";
    r.prediction = "Lambda^" + std::to_string(i) + " = F_p^" + std::to_string(d);
    r.exact_equality = d == lim.dimension && std::all_of(top.window.maps.begin(), top.window.maps.end(),
                                                          [](const FpMatrix& m) { return m.is_identity(); });
    r.nonzero = d > 0;
    return r;
  }

  r.lim_term = describe_lim(chain, top, r.lim_certificate);
  const bool lim_nonzero = r.lim_term != "0" && r.lim_term.rfind("not classified", 0) != 0;

  bool lim1_known = false, lim1_nonzero = false;
  if (i == 0) {
    r.lim1_term = "0 (no lower degree)";
    lim1_known = true;
  } else {
    const LambdaTower below = lambda_tower(chain, i - 1, options);
    r.lim1_tower_dims = below.window.dims;
    const bool exact = std::all_of(below.tail_exact.begin(), below.tail_exact.end(), [](bool b) { return b; });
    if (exact) {
      try {
        r.lim1_report = classify_lim1(below.window, infer_certificate(below.window, GrowthKind::Stabilizing),
                                      SourceLaw{});
        r.lim1_term = "0";
        lim1_known = true;
      } catch (const ValidationError&) {
        r.lim1_term = "not classified on this window";
      }
    } else if (i == 2) {
      // lim^1 of the degree-1 tower as coker[lim Fix_S M/Fix_K M -> lim Fix_S M/Fix_N(S) M]
      std::vector<Subgroup> s;
      try {
        s = compatible_sylows(chain);
      } catch (const ValidationError&) {
      }
      const bool order_p = !s.empty() && std::all_of(s.begin(), s.end(), [&](const Subgroup& x) { return x.order() == chain.p; });
      if (order_p) {
        auto sylow = [&](std::size_t n, const Subgroup&) { return s[n]; };
        auto norm = [&](std::size_t n, const Subgroup& w) { return normalizer(w, s[n]); };
        auto whole = [](std::size_t, const Subgroup& w) { return w; };
        const QuotientTower a = fixed_quotient_tower(chain, sylow, whole);
        const QuotientTower b = fixed_quotient_tower(chain, sylow, norm);
        // lim A is Fix_S M itself when no K_n fixes anything, coordinates beyond the truncation included
        bool a_is_source = true;
        for (std::size_t n = 0; n <= chain.top(); ++n) {
          a_is_source = a_is_source && a.window.dims[n] == a.source_dims[n];
          const auto& tail = chain.levels[n].tail;
          if (tail) a_is_source = a_is_source && a.tail_dims[n] == fixed_points(*tail, s[n]).cols();
        }
        if (a_is_source && b.tail_zero()) {
          SourceLaw src;
          src.description = "lim(Fix_S M/Fix_K M) = Fix_S M";
          src.law.intercept = static_cast<std::int64_t>(a.source_dims[0]);
          if (chain.top() > 0) src.law.slope = static_cast<std::int64_t>(a.source_dims[1]) - src.law.intercept;
          r.lim1_report = classify_lim1(b.window, infer_certificate(b.window, GrowthKind::UnboundedQuotient), src);
          r.lim1_term = "coker[lim(Fix_S M/Fix_K M) -> lim(Fix_S M/Fix_N_K(S) M)] " +
                        std::string(r.lim1_report->classification == Lim1Class::Nonzero ? "!= 0" : "= 0");
          lim1_known = true;
          lim1_nonzero = r.lim1_report->classification == Lim1Class::Nonzero;
        }
      }
      if (!lim1_known) r.lim1_term = "not classified: coordinates beyond the truncation contribute";
    } else {
      r.lim1_term = "not classified: coordinates beyond the truncation contribute";
    }
  }

  const std::string name = "Lambda^" + std::to_string(i);
  if (lim1_nonzero)
    r.prediction = name + " != 0 (contains a nonzero lim^1 term)";
  else if (lim1_known && r.lim_term.rfind("not classified", 0) != 0)
    r.prediction = name + " = " + r.lim_term;
  else
    r.prediction = "not determined on this window";
  r.nonzero = lim1_nonzero || (lim1_known && lim_nonzero);
  return r;
}

}  // namespace hlim
