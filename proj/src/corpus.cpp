#include "hlim/corpus.hpp"

#include <cctype>
#include <memory>
#include <mutex>
#include <numeric>
#include <stdexcept>

#include "hlim/caps.hpp"
#include "hlim/group_ops.hpp"

namespace hlim {

// ------------------------------------------------------------ GaloisField

GaloisField::GaloisField(Fp p, std::size_t k) : p_(p), k_(k), q_(1) {
  if (!is_prime(p) || k == 0) throw ValidationError("GaloisField: need a prime and a positive degree");
  for (std::size_t i = 0; i < k; ++i) q_ *= p;
  if (q_ > (1u << 20)) throw CapExceeded("GaloisField: field too large");
  if (k == 1) {
    // search a primitive root mod p directly
    for (std::uint32_t g = 1; g < p; ++g) {
      std::vector<std::uint32_t> e{1};
      std::uint32_t v = g % p;
      while (v != 1) {
        e.push_back(v);
        v = v * g % p;
      }
      if (e.size() == p - 1 || p == 2) {
        exp_ = e;
        modulus_ = {static_cast<Fp>((p - g % p) % p)};
        break;
      }
    }
  } else {
    // monic modulus x^k + sum c_i x^i for which x has order q - 1
    for (std::uint32_t code = 0; code < q_ && exp_.empty(); ++code) {
      std::vector<Fp> c(k);
      for (std::size_t i = 0, v = code; i < k; ++i, v /= p) c[i] = static_cast<Fp>(v % p);
      if (c[0] == 0) continue;
      std::vector<std::uint32_t> powers{1};
      std::vector<Fp> cur(k, 0);
      cur[0] = 1;
      bool ok = true;
      for (std::uint32_t step = 1; step < q_ - 1; ++step) {
        // multiply by x
        const Fp top = cur[k - 1];
        for (std::size_t i = k - 1; i > 0; --i) cur[i] = cur[i - 1];
        cur[0] = 0;
        for (std::size_t i = 0; i < k; ++i) cur[i] = (cur[i] + (p - c[i]) % p * top) % p;
        std::uint32_t v = 0;
        for (std::size_t i = k; i-- > 0;) v = v * p + cur[i];
        if (v == 1) {
          ok = false;
          break;
        }
        powers.push_back(v);
      }
      if (ok) {
        exp_ = std::move(powers);
        modulus_ = c;
      }
    }
  }
  log_.assign(q_, 0);
  for (std::uint32_t i = 0; i < exp_.size(); ++i) log_[exp_[i]] = i;
}

std::uint32_t GaloisField::add(std::uint32_t a, std::uint32_t b) const {
  std::uint32_t out = 0, scale = 1;
  for (std::size_t i = 0; i < k_; ++i, a /= p_, b /= p_, scale *= p_) out += ((a % p_ + b % p_) % p_) * scale;
  return out;
}

std::uint32_t GaloisField::mul(std::uint32_t a, std::uint32_t b) const {
  if (a == 0 || b == 0) return 0;
  return exp_[(log_[a] + log_[b]) % (q_ - 1)];
}

std::uint32_t GaloisField::inv(std::uint32_t a) const {
  if (a == 0) throw std::domain_error("GaloisField: inverse of zero");
  return exp_[(q_ - 1 - log_[a]) % (q_ - 1)];
}

std::uint32_t GaloisField::pow(std::uint32_t a, std::uint64_t e) const {
  if (a == 0) return e == 0 ? 1 : 0;
  return exp_[(log_[a] * (e % (q_ - 1))) % (q_ - 1)];
}

FpMatrix GaloisField::linear_map(std::uint32_t c, std::size_t frob) const {
  std::uint64_t e = 1;
  for (std::size_t i = 0; i < frob; ++i) e *= p_;
  FpMatrix m(k_, k_, p_);
  std::uint32_t basis = 1;
  for (std::size_t j = 0; j < k_; ++j, basis *= p_) {
    std::uint32_t img = mul(c, pow(basis, e));
    for (std::size_t i = 0; i < k_; ++i, img /= p_) m(i, j) = img % p_;
  }
  return m;
}

// ------------------------------------------------------------ HGM families

std::string to_string(HgmMember m) {
  switch (m) {
    case HgmMember::H: return "H";
    case HgmMember::H0: return "H0";
    case HgmMember::Gamma: return "Gamma";
    case HgmMember::Gamma0: return "Gamma0";
    case HgmMember::GammaStar: return "GammaStar";
  }
  return "?";
}

HgmMember parse_hgm_member(const std::string& s) {
  for (HgmMember m : {HgmMember::H, HgmMember::H0, HgmMember::Gamma, HgmMember::Gamma0, HgmMember::GammaStar})
    if (to_string(m) == s) return m;
  throw ValidationError("unknown family member '" + s + "'");
}

namespace {

struct Resolved {
  std::size_t a = 0;  // q0 = p^a
  std::size_t k = 0;  // [F : F_p] = a p
  std::uint32_t q = 0;
  std::uint32_t u = 0;
};

Resolved resolve(const HgmFamily& f) {
  if (!is_prime(f.p)) throw ValidationError("family: p must be prime");
  Resolved r;
  std::uint64_t v = 1;
  while (v < f.q0) {
    v *= f.p;
    ++r.a;
  }
  if (v != f.q0 || r.a == 0) throw ValidationError("family: |F0| must be a power of p");
  if (f.q0 < 3) throw ValidationError("family: |F0| must be at least 3");
  r.k = r.a * f.p;
  std::uint64_t q = 1;
  for (std::size_t i = 0; i < r.k; ++i) q *= f.p;
  if (q > (1u << 20)) throw CapExceeded("family: field too large");
  r.q = static_cast<std::uint32_t>(q);
  if (f.u == 0) {
    for (std::uint32_t d = r.q - 1; d > 1; --d)
      if ((r.q - 1) % d == 0 && std::gcd(d, f.q0 - 1) == 1) {
        r.u = d;
        break;
      }
  } else {
    r.u = f.u;
  }
  if (r.u <= 1 || (r.q - 1) % r.u != 0 || std::gcd(r.u, f.q0 - 1) != 1)
    throw ValidationError("family: U must be a nontrivial subgroup of F^x meeting F0^x trivially");
  return r;
}

// An element acts on copy j (0 = tail) of F^x by y -> mult[j] * frob^s(y).
struct HgmElement {
  std::vector<std::uint32_t> mult;
  std::size_t s = 0;
};

Perm hgm_perm(const GaloisField& f, std::uint32_t q0, const HgmElement& e) {
  const std::uint32_t m = f.order() - 1;
  std::uint64_t scale = 1;
  for (std::size_t i = 0; i < e.s; ++i) scale = scale * q0 % m;
  std::vector<Perm::Point> img(e.mult.size() * m);
  for (std::size_t j = 0; j < e.mult.size(); ++j) {
    const std::uint64_t shift = f.log(e.mult[j]);
    for (std::uint32_t x = 0; x < m; ++x) img[j * m + x] = static_cast<Perm::Point>(j * m + (shift + scale * x) % m);
  }
  return Perm(img);
}

HgmElement hgm_decode(const GaloisField& f, std::uint32_t q0, std::size_t p, const Perm& g) {
  const std::uint32_t m = f.order() - 1;
  HgmElement e;
  for (std::size_t j = 0; j * m < g.degree(); ++j) e.mult.push_back(f.primitive_power(g[j * m] - j * m));
  // the image of the point x in the tail is mult[0] * x^(q0^s)
  const std::uint32_t image_of_x = f.primitive_power(g[1] + m - g[0]);
  std::uint64_t scale = 1;
  for (e.s = 0; e.s < p; ++e.s, scale = scale * q0 % m)
    if (f.primitive_power(scale) == image_of_x) return e;
  throw ValidationError("family: permutation is not a family element");
}

}  // namespace

const GaloisField& hgm_field(const HgmFamily& family) {
  static std::vector<std::unique_ptr<GaloisField>> fields;
  static std::mutex mu;
  const Resolved r = resolve(family);
  std::lock_guard<std::mutex> lock(mu);
  for (const auto& f : fields)
    if (f->characteristic() == family.p && f->degree() == r.k) return *f;
  fields.push_back(std::make_unique<GaloisField>(family.p, r.k));
  return *fields.back();
}

HgmTruncation hgm_truncate(const HgmFamily& family, std::size_t n) {
  const Resolved r = resolve(family);
  const GaloisField& f = hgm_field(family);
  const std::uint32_t gen = f.primitive_power(1), ugen = f.primitive_power((r.q - 1) / r.u);
  auto unit = [&] { return HgmElement{std::vector<std::uint32_t>(n + 1, 1), 0}; };
  std::vector<HgmElement> gens;
  const HgmMember mem = family.member;
  const bool full = mem == HgmMember::H || mem == HgmMember::Gamma || mem == HgmMember::GammaStar;
  for (std::size_t i = 1; i <= n; ++i) {
    HgmElement e = unit();
    e.mult[i] = full ? gen : ugen;
    gens.push_back(e);
  }
  if (mem == HgmMember::GammaStar) {
    gens.push_back(HgmElement{std::vector<std::uint32_t>(n + 1, ugen), 0});
  }
  HgmElement frob = unit();
  frob.s = 1;
  if (mem == HgmMember::Gamma || mem == HgmMember::Gamma0 || mem == HgmMember::GammaStar) gens.push_back(frob);

  const std::size_t degree = (n + 1) * (r.q - 1);
  std::vector<Perm> perms;
  for (const HgmElement& e : gens) perms.push_back(hgm_perm(f, family.q0, e));
  PermGroup g(degree, perms, to_string(mem) + "_" + std::to_string(n));

  HgmTruncation out{family, n, r.u, r.k, g, {}, {}, hgm_perm(f, family.q0, frob)};
  const Subgroup whole = g.whole();
  std::vector<FpMatrix> mats, tail;
  for (Elt x : whole.generators()) {
    const HgmElement e = hgm_decode(f, family.q0, family.p, whole.table().element(x));
    FpMatrix m(0, 0, family.p);
    for (std::size_t i = 1; i <= n; ++i) m = FpMatrix::direct_sum(m, f.linear_map(e.mult[i], e.s * r.a));
    mats.push_back(m);
    tail.push_back(f.linear_map(e.mult[0], e.s * r.a));
  }
  out.module = FpGModule(whole, family.p, n * r.k, mats);
  out.tail = FpGModule(whole, family.p, r.k, tail);
  return out;
}

Perm HgmTruncation::embed(const Perm& g) const {
  const GaloisField& f = hgm_field(family);
  HgmElement e = hgm_decode(f, family.q0, family.p, g);
  e.mult.push_back(e.mult[0]);
  return hgm_perm(f, family.q0, e);
}

FpMatrix HgmTruncation::projection() const {
  const std::size_t d = level * field_degree;
  FpMatrix m(d, d + field_degree, family.p);
  for (std::size_t i = 0; i < d; ++i) m(i, i) = 1;
  return m;
}

// ------------------------------------------------------------ wreath tower

namespace {

Wreath wreath_helper(std::size_t base_degree, std::size_t p) { return Wreath{PermGroup(1, {}), base_degree, p}; }

}  // namespace

Perm WreathTower::embed(std::size_t n, const Perm& g) const {
  const Wreath w = wreath_helper(stages[n].p_group.degree(), prime);
  return n % 2 == 1 ? w.on_copy(g, 0) : w.diagonal(g);
}

WreathTower wreath_tower(std::size_t p, std::size_t n_max) {
  if (!is_prime(p)) throw ValidationError("wreath_tower: p must be prime");
  // |P_n| = p^(1 + p + ... + p^n)
  std::uint64_t exponent = 0, power = 1;
  for (std::size_t n = 0; n <= n_max; ++n, power *= p) exponent += power;
  long double order = 1;
  for (std::uint64_t i = 0; i < exponent; ++i) order *= static_cast<long double>(p);
  if (order > static_cast<long double>(caps().enumeration_bound))
    throw CapExceeded("wreath_tower: stage " + std::to_string(n_max) + " exceeds the enumeration bound");

  WreathTower t;
  t.prime = p;
  PermGroup c = cyclic_group(p);
  t.stages.push_back({c, PermGroup(p, {}), c});
  for (std::size_t n = 0; n < n_max; ++n) {
    const WreathStage& s = t.stages.back();
    const Wreath w = wreath_Cp(s.p_group, p);
    std::vector<Perm> q, a;
    for (std::size_t i = 0; i < p; ++i) {
      for (const Perm& g : s.q_group.generators()) q.push_back(w.on_copy(g, i));
      for (const Perm& g : s.a_group.generators()) a.push_back(w.on_copy(g, i));
    }
    q.push_back(w.top());
    const std::size_t d = w.group.degree();
    t.stages.push_back({w.group, PermGroup(d, q), PermGroup(d, a)});
  }
  return t;
}

std::vector<WreathCheck> wreath_checks(const WreathTower& t) {
  std::vector<WreathCheck> out;
  const std::size_t p = t.prime;
  auto record = [&](std::size_t n, std::string name, bool ok, std::string detail = {}) {
    out.push_back({n, std::move(name), ok, std::move(detail)});
  };
  struct Stage {
    Subgroup p, q, a, z, b;
  };
  std::vector<Stage> st;
  for (std::size_t n = 0; n < t.stages.size(); ++n) {
    const WreathStage& w = t.stages[n];
    Stage s;
    s.p = w.p_group.whole();
    s.q = w.p_group.subgroup(w.q_group.generators());
    s.a = w.p_group.subgroup(w.a_group.generators());
    s.z = center(s.p);
    const Subgroup nq = normalizer(s.p, s.q);
    s.b = intersect(nq, s.a);
    std::uint64_t rank = 1, a_order = 1;
    for (std::size_t i = 0; i < n; ++i) rank *= p;
    for (std::uint64_t i = 0; i < rank; ++i) a_order *= p;

    record(n, "center has order p", s.z.order() == p, "|Z| = " + std::to_string(s.z.order()));
    bool elementary = s.a.order() == a_order;
    for (Elt x : s.a.elements()) elementary = elementary && (x == 0 || s.p.table().element_order(x) == p);
    for (Elt x : s.a.generators())
      for (Elt y : s.a.generators()) elementary = elementary && s.p.table().mul(x, y) == s.p.table().mul(y, x);
    record(n, "A elementary abelian of rank p^n", elementary, "|A| = " + std::to_string(s.a.order()));
    record(n, "A normal", is_normal(s.p, s.a));
    const Subgroup aq = intersect(s.a, s.q);
    record(n, "A meets Q trivially", aq.is_trivial());
    record(n, "AQ = P", s.a.order() * s.q.order() == s.p.order() * aq.order(),
           std::to_string(s.a.order()) + " * " + std::to_string(s.q.order()) + " vs " + std::to_string(s.p.order()));
    record(n, "Q < N_P(Q)", nq.order() > s.q.order(),
           "|Q| = " + std::to_string(s.q.order()) + ", |N_P(Q)| = " + std::to_string(nq.order()));
    record(n, "N_P(Q) meets A centrally", s.b.is_subgroup_of(s.z), "|N_P(Q) n A| = " + std::to_string(s.b.order()));
    st.push_back(std::move(s));
  }
  for (std::size_t n = 0; n + 1 < st.size(); ++n) {
    const GroupTable& up = st[n + 1].p.table();
    auto image = [&](Elt x) { return up.index_of(t.embed(n, st[n].p.table().element(x))); };
    bool into = true;
    for (Elt x : st[n].q.generators()) into = into && st[n + 1].q.contains(image(x));
    for (Elt x : st[n].a.generators()) into = into && st[n + 1].a.contains(image(x));
    record(n, "embedding maps Q and A into the next stage", into);
    if (n % 2 == 1) {
      bool disjoint = true;
      for (Elt x : st[n].z.elements())
        if (x != 0 && st[n + 1].z.contains(image(x))) disjoint = false;
      record(n, "next center meets the embedded center trivially", disjoint);
      bool b_dies = true;
      for (Elt x : st[n].b.elements())
        if (x != 0 && st[n + 1].b.contains(image(x))) b_dies = false;
      record(n, "embedded N_P(Q) n A meets the next one trivially", b_dies);
    } else {
      const Subgroup comm = commutator_subgroup(st[n + 1].p);
      bool inside = true;
      for (Elt x : st[n].p.generators()) inside = inside && comm.contains(image(x));
      record(n, "embedded stage lies in the next commutator subgroup", inside,
             "|[P,P]| = " + std::to_string(comm.order()));
    }
  }
  return out;
}

namespace {

std::string lower(std::string s) {
  for (char& c : s) c = static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
  return s;
}

}  // namespace

std::vector<CorpusGroup> corpus_groups(std::uint64_t max_order) {
  std::vector<CorpusGroup> out;
  auto add = [&](std::string name, PermGroup g) {
    if (g.order() > max_order) return;
    g.set_name(name);
    out.push_back({std::move(name), std::move(g)});
  };
  for (std::size_t n : {2u, 3u, 4u, 5u, 6u}) add("C" + std::to_string(n), cyclic_group(n));
  add("S3", symmetric_group(3));
  add("D4", dihedral_group(4));
  add("D5", dihedral_group(5));
  add("A4", PermGroup(4, {Perm::from_cycles("(0 1 2)", 4), Perm::from_cycles("(0 1)(2 3)", 4)}));
  add("S4", symmetric_group(4));
  add("A5", PermGroup(5, {Perm::from_cycles("(0 1 2)", 5), Perm::from_cycles("(0 1 2 3 4)", 5)}));
  add("C2xD5", direct_product(cyclic_group(2), dihedral_group(5)).group);
  add("S3xS3", direct_product(symmetric_group(3), symmetric_group(3)).group);
  add("C3xC3", direct_product(cyclic_group(3), cyclic_group(3)).group);
  for (HgmMember m : {HgmMember::H, HgmMember::Gamma0, HgmMember::Gamma, HgmMember::GammaStar}) {
    HgmFamily f;
    f.member = m;
    add("hgm-" + lower(to_string(m)) + "/1", hgm_truncate(f, 1).group);
  }
  {
    HgmFamily f;
    add("hgm-gamma0/2", hgm_truncate(f, 2).group);
  }
  {
    const HgmTruncation t = hgm_truncate(HgmFamily{}, 1);
    add("D5xD5", direct_product(t.group, t.group).group);
  }
  return out;
}

std::vector<CorpusModule> finite_corpus() {
  std::vector<CorpusModule> out;
  for (const CorpusGroup& cg : corpus_groups(150)) {
    const Subgroup g = cg.group.whole();
    for (Fp p : {2u, 3u, 5u}) {
      if (g.order() % p) continue;
      const std::string stem = cg.name + "/p" + std::to_string(p) + "/";
      out.push_back({stem + "trivial", FpGModule::trivial(g, p, 1)});
      out.push_back({stem + "perm", FpGModule::permutation(g, p)});
    }
  }
  for (HgmMember m : {HgmMember::H, HgmMember::Gamma0, HgmMember::Gamma, HgmMember::GammaStar}) {
    HgmFamily f;
    f.member = m;
    out.push_back({"hgm-" + lower(to_string(m)) + "/1/p2/field", hgm_truncate(f, 1).module});
  }
  out.push_back({"hgm-gamma0/2/p2/field", hgm_truncate(HgmFamily{}, 2).module});
  {
    const HgmTruncation t = hgm_truncate(HgmFamily{}, 1);
    const DirectProduct d = direct_product(t.group, t.group);
    out.push_back({"D5xD5/p2/field2", outer_tensor(d, t.module, t.module)});
  }
  return out;
}

std::vector<CatModule> corpus_functors(const OrbitPtr& c, Fp p) {
  const Subgroup& g = c->group();
  std::vector<CatModule> out;
  out.push_back(constant_functor(c, p, 1));
  out.push_back(constant_functor(c, p, 2));
  out.push_back(atomic_functor(c, FpGModule::trivial(g, p, 1)));
  out.push_back(atomic_functor(c, FpGModule::permutation(g, p)));
  out.push_back(fixedpoint_functor(c, FpGModule::trivial(g, p, 1)));
  out.push_back(fixedpoint_functor(c, FpGModule::permutation(g, p)));
  out.push_back(coinduced_functor(c, 0, p, 1));
  out.push_back(coinduced_functor(c, static_cast<Obj>(c->num_objects() - 1), p, 2));
  return out;
}

std::vector<std::string> corpus_functor_names() {
  return {"constant(1)",      "constant(2)",       "atomic(trivial)",   "atomic(perm)",
          "fixed-point(trivial)", "fixed-point(perm)", "coinduced(first,1)", "coinduced(last,2)"};
}

}  // namespace hlim
