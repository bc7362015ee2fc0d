#include "hlim/barlim.hpp"

#include <algorithm>

#include "hlim/caps.hpp"
#include "hlim/fp.hpp"

namespace hlim {

SparseVec consolidate(SparseVec v, Fp p) {
  const PrimeField& f = field_for(p);
  std::sort(v.begin(), v.end(), [](const auto& a, const auto& b) { return a.first < b.first; });
  SparseVec out;
  out.reserve(v.size());
  for (const auto& [i, c] : v) {
    if (!out.empty() && out.back().first == i)
      out.back().second = f.add(out.back().second, c);
    else
      out.emplace_back(i, c);
    if (out.back().second == 0) out.pop_back();
  }
  return out;
}

// -------------------------------------------------------------- SparseMatrix

void SparseMatrix::normalize() {
  for (auto& c : cols_) c = consolidate(std::move(c), p_);
}

std::size_t SparseMatrix::rank() const {
  const PrimeField& f = field_for(p_);
  std::unordered_map<std::uint64_t, SparseVec> by_low;  // reduced columns keyed by their largest index
  std::size_t r = 0;
  for (const SparseVec& col : cols_) {
    SparseVec v = consolidate(col, p_);
    while (!v.empty()) {
      auto it = by_low.find(v.back().first);
      if (it == by_low.end()) break;
      const Fp factor = f.neg(f.mul(v.back().second, f.inv(it->second.back().second)));
      SparseVec w = v;
      for (const auto& [i, c] : it->second) w.emplace_back(i, f.mul(factor, c));
      v = consolidate(std::move(w), p_);
    }
    if (!v.empty()) {
      by_low.emplace(v.back().first, std::move(v));
      ++r;
    }
  }
  return r;
}

SparseVec SparseMatrix::apply(const SparseVec& v) const {
  const PrimeField& f = field_for(p_);
  SparseVec out;
  for (const auto& [j, c] : v)
    for (const auto& [i, a] : cols_[j]) out.emplace_back(i, f.mul(a, c));
  return consolidate(std::move(out), p_);
}

bool SparseMatrix::product_is_zero(const SparseMatrix& first) const {
  for (std::size_t c = 0; c < first.cols(); ++c)
    if (!apply(first.column(c)).empty()) return false;
  return true;
}

FpMatrix SparseMatrix::to_dense() const {
  FpMatrix m(rows_, cols_.size(), p_);
  const PrimeField& f = field_for(p_);
  for (std::size_t c = 0; c < cols_.size(); ++c)
    for (const auto& [i, a] : cols_[c]) m(i, c) = f.add(m(i, c), a);
  return m;
}

bool CochainComplex::composites_vanish() const {
  for (std::size_t n = 0; n + 1 < d.size(); ++n)
    if (!d[n + 1].product_is_zero(d[n])) return false;
  return true;
}

// ------------------------------------------------------- explicit bar complex

CochainComplex bar_complex(const CatModule& phi, std::size_t top, bool normalized) {
  const FiniteCategory& cat = phi.category();
  const Fp p = phi.p();
  const PrimeField& f = field_for(p);
  ChainIndex idx(cat, top, normalized, std::vector<bool>(cat.num_objects(), true), caps().chain_cap);

  // offsets[n][i]: first cell of chain i of length n
  std::vector<std::vector<std::uint64_t>> offsets(top + 1);
  std::vector<std::vector<Obj>> start(top + 1);
  CochainComplex out;
  out.p = p;
  for (std::size_t n = 0; n <= top; ++n) {
    const std::uint64_t count = n == 0 ? cat.num_objects() : idx.count(n);
    offsets[n].assign(count + 1, 0);
    start[n].resize(count);
    std::vector<Mor> buf(n);
    for (std::uint64_t i = 0; i < count; ++i) {
      start[n][i] = n == 0 ? static_cast<Obj>(i) : idx.decode(n, i, buf.data());
      offsets[n][i + 1] = offsets[n][i] + phi.dim(start[n][i]);
    }
    out.dims.push_back(offsets[n][count]);
  }
  // index of a chain of length n given by its morphisms, or of the object when n == 0
  auto chain_index = [&](std::size_t n, const std::vector<Mor>& m, Obj obj) -> std::uint64_t {
    if (n == 0) return obj;
    return *idx.index(n, m.data());
  };

  for (std::size_t n = 0; n < top; ++n) {
    SparseMatrix d(out.dims[n + 1], out.dims[n], p);
    std::vector<Mor> tau(n + 1);
    for (std::uint64_t t = 0; t < idx.count(n + 1); ++t) {
      const Obj c0 = idx.decode(n + 1, t, tau.data());
      const std::size_t dim0 = phi.dim(c0);
      if (dim0 == 0) continue;
      const std::uint64_t row0 = offsets[n + 1][t];
      // face 0: drop the first object, then apply phi(first morphism)
      {
        std::vector<Mor> face(tau.begin() + 1, tau.end());
        const Obj c1 = cat.target(tau[0]);
        const std::uint64_t col0 = offsets[n][chain_index(n, face, c1)];
        const FpMatrix& a = phi.map(tau[0]);
        for (std::size_t r = 0; r < dim0; ++r)
          for (std::size_t s = 0; s < phi.dim(c1); ++s)
            if (a(r, s)) d.column(col0 + s).emplace_back(row0 + r, a(r, s));
      }
      // inner faces: compose morphisms i and i+1
      for (std::size_t i = 1; i <= n; ++i) {
        const Mor g = cat.compose(tau[i], tau[i - 1]);
        if (normalized && cat.is_identity(g)) continue;
        std::vector<Mor> face;
        for (std::size_t j = 0; j < i - 1; ++j) face.push_back(tau[j]);
        face.push_back(g);
        for (std::size_t j = i + 1; j <= n; ++j) face.push_back(tau[j]);
        const std::uint64_t col0 = offsets[n][chain_index(n, face, c0)];
        const Fp sign = i % 2 ? f.neg(1) : 1;
        for (std::size_t r = 0; r < dim0; ++r) d.column(col0 + r).emplace_back(row0 + r, sign);
      }
      // last face: drop the last object
      {
        std::vector<Mor> face(tau.begin(), tau.end() - 1);
        const std::uint64_t col0 = offsets[n][chain_index(n, face, c0)];
        const Fp sign = (n + 1) % 2 ? f.neg(1) : 1;
        for (std::size_t r = 0; r < dim0; ++r) d.column(col0 + r).emplace_back(row0 + r, sign);
      }
    }
    d.normalize();
    out.d.push_back(std::move(d));
  }
  return out;
}

LimitsResult cohomology(const CochainComplex& c) {
  LimitsResult r;
  std::vector<std::size_t> ranks;
  for (const SparseMatrix& d : c.d) ranks.push_back(d.rank());
  for (std::size_t n = 0; n < c.d.size(); ++n)
    r.dims.push_back(c.dims[n] - ranks[n] - (n ? ranks[n - 1] : 0));
  r.max_degree = c.d.empty() ? 0 : c.d.size() - 1;
  return r;
}

// -------------------------------------------------------------- BarCohomology

BarCohomology::BarCohomology(const CatModule& phi, std::size_t top, EngineOptions options)
    : phi_(std::make_shared<const CatModule>(phi)), top_(top), p_(phi.p()), opt_(options) {
  const FiniteCategory& cat = phi_->category();
  const std::size_t nobj = cat.num_objects();
  std::vector<bool> starts(nobj);
  for (Obj c = 0; c < nobj; ++c) starts[c] = phi_->dim(c) > 0;
  chains_ = std::make_unique<ChainIndex>(cat, top + 1, true, starts,
                                         opt_.chain_cap ? opt_.chain_cap : caps().chain_cap);
  base_.assign(top + 2, std::vector<std::uint64_t>(nobj + 1, 0));
  cells_.assign(top + 2, 0);
  for (std::size_t n = 0; n <= top + 1; ++n) {
    for (Obj c = 0; c < nobj; ++c) base_[n][c + 1] = base_[n][c] + chains_->count_from(n, c) * phi_->dim(c);
    cells_[n] = base_[n][nobj];
  }
  in_.assign(nobj, {});
  for (Mor f = 0; f < cat.num_morphisms(); ++f)
    if (!cat.is_identity(f) && starts[cat.source(f)]) in_[cat.target(f)].push_back(f);
  factorizations_.assign(cat.num_morphisms(), {});
  if (top >= 1)
    for (Mor a = 0; a < cat.num_morphisms(); ++a) {
      if (cat.is_identity(a)) continue;
      for (Mor b : chains_->outs(cat.target(a))) {
        const Mor g = cat.compose(b, a);
        if (!cat.is_identity(g)) factorizations_[g].emplace_back(a, b);
      }
    }
  deg_.resize(top + 1);
  rank_.assign(top + 1, 0);
  essential_.assign(top + 1, {});
  reps_.assign(top + 1, {});
  for (std::size_t n = 0; n <= top; ++n) reduce(n);
}

BarCohomology::CellInfo BarCohomology::locate(std::size_t n, std::uint64_t cell_id) const {
  const auto& b = base_[n];
  const Obj c0 = static_cast<Obj>(std::upper_bound(b.begin(), b.end(), cell_id) - b.begin() - 1);
  const std::size_t d = phi_->dim(c0);
  const std::uint64_t off = cell_id - b[c0];
  return {c0, chains_->first(n, c0) + off / d, static_cast<std::size_t>(off % d)};
}

void BarCohomology::coboundary(std::size_t n, std::uint64_t cell_id, Fp coeff, SparseVec& out) const {
  const PrimeField& f = field_for(p_);
  const FiniteCategory& cat = phi_->category();
  const CellInfo ci = locate(n, cell_id);
  thread_local std::vector<Mor> sigma, tau;
  sigma.resize(n);
  tau.resize(n + 1);
  if (n > 0) chains_->decode(n, ci.idx, sigma.data());

  // prepend chi : c -> c0
  for (Mor chi : in_[ci.c0]) {
    tau[0] = chi;
    for (std::size_t j = 0; j < n; ++j) tau[j + 1] = sigma[j];
    const auto t = chains_->index(n + 1, tau.data());
    const Obj c = cat.source(chi);
    const FpMatrix& a = phi_->map(chi);
    const std::uint64_t row0 = cell(n + 1, *t, c, 0);
    for (std::size_t r = 0; r < a.rows(); ++r)
      if (a(r, ci.k)) out.emplace_back(row0 + r, f.mul(coeff, a(r, ci.k)));
  }
  // split morphism i as b o a
  for (std::size_t i = 1; i <= n; ++i) {
    const Fp sign = i % 2 ? f.neg(coeff) : coeff;
    for (std::size_t j = 0; j < i - 1; ++j) tau[j] = sigma[j];
    for (std::size_t j = i; j < n; ++j) tau[j + 1] = sigma[j];
    for (const auto& [a, b] : factorizations_[sigma[i - 1]]) {
      tau[i - 1] = a;
      tau[i] = b;
      const auto t = chains_->index(n + 1, tau.data());
      out.emplace_back(cell(n + 1, *t, ci.c0, ci.k), sign);
    }
  }
  // append chi out of the last object
  {
    const Fp sign = (n + 1) % 2 ? f.neg(coeff) : coeff;
    const Obj last = n == 0 ? ci.c0 : cat.target(sigma[n - 1]);
    const auto& outs = chains_->outs(last);
    if (!outs.empty()) {
      for (std::size_t j = 0; j < n; ++j) tau[j] = sigma[j];
      tau[n] = outs[0];
      const std::uint64_t t0 = *chains_->index(n + 1, tau.data());
      const std::size_t d = phi_->dim(ci.c0);
      const std::uint64_t c0 = cell(n + 1, t0, ci.c0, ci.k);
      for (std::size_t r = 0; r < outs.size(); ++r) out.emplace_back(c0 + r * d, sign);
    }
  }
}

SparseVec BarCohomology::coboundary(std::size_t n, const SparseVec& cochain) const {
  SparseVec out;
  for (const auto& [c, v] : cochain) coboundary(n, c, v, out);
  return consolidate(std::move(out), p_);
}

namespace {

// Heap of cell entries that yields the pivot (largest or smallest index) with
// repeated indices summed.
class PivotHeap {
 public:
  PivotHeap(bool max_first, Fp p) : max_first_(max_first), f_(field_for(p)) {}
  void push(std::uint64_t i, Fp c) {
    heap_.emplace_back(key(i), c);
    std::push_heap(heap_.begin(), heap_.end(), cmp);
  }
  void push_all(const SparseVec& v) {
    for (const auto& [i, c] : v) push(i, c);
  }
  // Removes and returns the pivot; false when the column is zero.
  bool pop_pivot(std::uint64_t& index, Fp& coeff) {
    while (!heap_.empty()) {
      const std::uint64_t k = heap_.front().first;
      Fp sum = 0;
      while (!heap_.empty() && heap_.front().first == k) {
        sum = f_.add(sum, heap_.front().second);
        std::pop_heap(heap_.begin(), heap_.end(), cmp);
        heap_.pop_back();
      }
      if (sum != 0) {
        index = key(k);
        coeff = sum;
        return true;
      }
    }
    return false;
  }
  void clear() { heap_.clear(); }

 private:
  std::uint64_t key(std::uint64_t i) const { return max_first_ ? i : ~i; }
  static bool cmp(const std::pair<std::uint64_t, Fp>& a, const std::pair<std::uint64_t, Fp>& b) {
    return a.first < b.first;
  }
  bool max_first_;
  const PrimeField& f_;
  std::vector<std::pair<std::uint64_t, Fp>> heap_;
};

}  // namespace

SparseVec BarCohomology::combination_of(std::size_t n, std::uint64_t column) const {
  auto it = deg_[n].combination.find(column);
  if (it != deg_[n].combination.end()) return it->second;
  return {{column, 1}};
}

SparseVec BarCohomology::reduced_column(std::size_t n, std::uint64_t column) const {
  return coboundary(n, combination_of(n, column));
}

void BarCohomology::reduce(std::size_t n) {
  const PrimeField& f = field_for(p_);
  const bool ascending = opt_.pivot == PivotRule::MaxRowAscending;
  PivotHeap heap(ascending, p_);
  Degree& d = deg_[n];
  const std::uint64_t count = cells_[n];
  SparseVec work, scratch;
  for (std::uint64_t step = 0; step < count; ++step) {
    const std::uint64_t j = ascending ? step : count - 1 - step;
    if (opt_.clearing && n > 0 && deg_[n - 1].pivot_of_row.count(j)) continue;
    heap.clear();
    scratch.clear();
    coboundary(n, j, 1, scratch);
    heap.push_all(scratch);
    SparseVec combo{{j, 1}};
    bool trivial = true;
    std::uint64_t row;
    Fp c;
    bool pivoted = false;
    while (heap.pop_pivot(row, c)) {
      auto it = d.pivot_of_row.find(row);
      if (it == d.pivot_of_row.end()) {
        d.pivot_of_row.emplace(row, Pivot{j, c});
        pivoted = true;
        break;
      }
      heap.push(row, c);
      const Fp factor = f.neg(f.mul(c, f.inv(it->second.coeff)));
      const SparseVec other = combination_of(n, it->second.column);
      scratch.clear();
      for (const auto& [i, v] : other) {
        const Fp w = f.mul(factor, v);
        combo.emplace_back(i, w);
        coboundary(n, i, w, scratch);
      }
      heap.push_all(scratch);
      trivial = false;
    }
    if (!trivial) combo = consolidate(std::move(combo), p_);
    const bool coboundary_cell = n > 0 && deg_[n - 1].pivot_of_row.count(j);
    if (pivoted && coboundary_cell) throw std::logic_error("bar cohomology: pivot order is inconsistent across degrees");
    if (pivoted) {
      ++rank_[n];
      if (!trivial) d.combination.emplace(j, std::move(combo));
    } else if (!coboundary_cell) {
      essential_[n].push_back(j);
      reps_[n].push_back(std::move(combo));
    }
  }
  // representatives in increasing index order of their leading cell
  std::vector<std::size_t> order(essential_[n].size());
  for (std::size_t i = 0; i < order.size(); ++i) order[i] = i;
  std::sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return essential_[n][a] < essential_[n][b]; });
  std::vector<std::uint64_t> e;
  std::vector<SparseVec> r;
  for (std::size_t i : order) {
    e.push_back(essential_[n][i]);
    r.push_back(std::move(reps_[n][i]));
  }
  essential_[n] = std::move(e);
  reps_[n] = std::move(r);
}

std::size_t BarCohomology::dim(std::size_t n) const { return essential_[n].size(); }

LimitsResult BarCohomology::result() const {
  LimitsResult r;
  for (std::size_t n = 0; n <= top_; ++n) r.dims.push_back(dim(n));
  r.max_degree = top_;
  return r;
}

std::vector<Fp> BarCohomology::class_of(std::size_t n, const SparseVec& cocycle) const {
  if (n > top_) throw ValidationError("class_of: degree above the computed range");
  const PrimeField& f = field_for(p_);
  const bool ascending = opt_.pivot == PivotRule::MaxRowAscending;
  PivotHeap heap(ascending, p_);
  heap.push_all(cocycle);
  std::vector<Fp> coords(essential_[n].size(), 0);
  std::uint64_t m;
  Fp c;
  while (heap.pop_pivot(m, c)) {
    if (n > 0) {
      auto it = deg_[n - 1].pivot_of_row.find(m);
      if (it != deg_[n - 1].pivot_of_row.end()) {
        const Fp factor = f.neg(f.mul(c, f.inv(it->second.coeff)));
        heap.push(m, c);
        for (const auto& [i, v] : reduced_column(n - 1, it->second.column)) heap.push(i, f.mul(factor, v));
        continue;
      }
    }
    auto e = std::lower_bound(essential_[n].begin(), essential_[n].end(), m);
    if (e == essential_[n].end() || *e != m) throw ValidationError("class_of: the cochain is not a cocycle");
    const std::size_t pos = static_cast<std::size_t>(e - essential_[n].begin());
    coords[pos] = c;
    heap.push(m, c);
    for (const auto& [i, v] : reps_[n][pos]) heap.push(i, f.neg(f.mul(c, v)));
  }
  return coords;
}

LimitsResult higher_limits(const CatModule& phi, std::size_t n_degrees, EngineOptions options) {
  if (n_degrees == 0) throw ValidationError("higher_limits: need at least one degree");
  return BarCohomology(phi, n_degrees - 1, options).result();
}

Lim0 lim0_direct(const CatModule& phi) {
  const FiniteCategory& cat = phi.category();
  std::vector<std::size_t> off(cat.num_objects() + 1, 0);
  for (Obj c = 0; c < cat.num_objects(); ++c) off[c + 1] = off[c] + phi.dim(c);
  const std::size_t n = off.back();
  const PrimeField& f = field_for(phi.p());
  std::vector<Fp> rows;
  std::size_t nrows = 0;
  auto compact = [&] {
    FpMatrix m(nrows, n, phi.p(), rows);
    auto piv = m.rref_in_place();
    rows.assign(m.entries().begin(), m.entries().begin() + static_cast<std::ptrdiff_t>(piv.size() * n));
    nrows = piv.size();
  };
  for (Mor g = 0; g < cat.num_morphisms() && n > 0; ++g) {
    if (cat.is_identity(g)) continue;
    const Obj a = cat.source(g), b = cat.target(g);
    const FpMatrix& m = phi.map(g);
    for (std::size_t r = 0; r < phi.dim(a); ++r) {
      std::vector<Fp> row(n, 0);
      for (std::size_t s = 0; s < phi.dim(b); ++s) row[off[b] + s] = f.add(row[off[b] + s], m(r, s));
      row[off[a] + r] = f.sub(row[off[a] + r], 1);
      rows.insert(rows.end(), row.begin(), row.end());
      ++nrows;
      if (nrows >= 2 * n + 64) compact();
    }
  }
  Lim0 out;
  if (n == 0) {
    out.basis = FpMatrix(0, 0, phi.p());
    return out;
  }
  compact();
  out.basis = FpMatrix(nrows, n, phi.p(), rows).kernel();
  out.dimension = out.basis.cols();
  return out;
}

SparseVec pull_back(const BarCohomology& big, const BarCohomology& small, std::size_t n, const CochainMap& f,
                    const SparseVec& z) {
  const ChainIndex& sc = small.chains();
  const ChainIndex& bc = big.chains();
  const FiniteCategory& cat = sc.category();
  if (f.objects.size() != cat.num_objects() || f.morphisms.size() != cat.num_morphisms() ||
      f.coefficients.size() != cat.num_objects())
    throw ValidationError("pull_back: cochain map does not match the small category");
  if (n > small.top() || n > big.top()) throw ValidationError("pull_back: degree above the computed range");
  std::unordered_map<std::uint64_t, Fp> value(z.begin(), z.end());
  SparseVec out;
  std::vector<Mor> path(n), image(n);
  for (Obj c0 = 0; c0 < cat.num_objects(); ++c0) {
    const std::size_t ds = small.functor().dim(c0);
    if (!sc.is_start(c0) || ds == 0) continue;
    const Obj b0 = f.objects[c0];
    const std::size_t db = big.functor().dim(b0);
    const FpMatrix& eta = f.coefficients[c0];
    if (eta.rows() != ds || eta.cols() != db) throw ValidationError("pull_back: coefficient map has the wrong shape");
    if (db == 0) continue;
    for (std::uint64_t idx = sc.first(n, c0); idx < sc.first(n, c0) + sc.count_from(n, c0); ++idx) {
      std::optional<std::uint64_t> target;
      if (n == 0) {
        target = bc.index_object(b0);
      } else {
        sc.decode(n, idx, path.data());
        for (std::size_t i = 0; i < n; ++i) image[i] = f.morphisms[path[i]];
        target = bc.index(n, image.data());
      }
      if (!target) continue;
      std::vector<Fp> zb(db, 0);
      bool any = false;
      for (std::size_t k = 0; k < db; ++k) {
        auto it = value.find(big.cell(n, *target, b0, k));
        if (it != value.end()) zb[k] = it->second, any = true;
      }
      if (!any) continue;
      const std::vector<Fp> zs = eta.apply(zb);
      for (std::size_t k = 0; k < ds; ++k)
        if (zs[k]) out.emplace_back(small.cell(n, idx, c0, k), zs[k]);
    }
  }
  return out;
}

FpMatrix induced_map(const BarCohomology& big, const BarCohomology& small, std::size_t n, const CochainMap& f) {
  const auto& reps = big.representatives(n);
  FpMatrix out(small.dim(n), reps.size(), small.p());
  for (std::size_t j = 0; j < reps.size(); ++j) {
    const std::vector<Fp> cls = small.class_of(n, pull_back(big, small, n, f, reps[j]));
    for (std::size_t i = 0; i < cls.size(); ++i) out(i, j) = cls[i];
  }
  return out;
}

CochainMap orbit_cochain_map(const OrbitCategory& small, const OrbitCategory& big, const std::function<Elt(Elt)>& up,
                             const std::function<FpMatrix(Obj, Obj, Elt)>& coefficient) {
  const GroupTable& tb = big.table();
  CochainMap f;
  std::vector<Elt> transport(small.num_objects());
  for (Obj o = 0; o < small.num_objects(); ++o) {
    std::vector<Elt> gens;
    for (Elt e : small.object(o).generators()) gens.push_back(up(e));
    const Subgroup img(big.group().table_ptr(), gens);
    std::optional<Obj> target = big.find_object(img);
    Elt x = 0;
    for (Obj r = 0; r < big.num_objects() && !target; ++r) {
      if (big.object(r).order() != img.order()) continue;
      for (Elt y : big.group().elements())
        if (big.object(r).conjugate(y) == img) {
          target = r;
          x = y;
          break;
        }
    }
    if (!target) throw ValidationError("orbit_cochain_map: image of an object is not conjugate to an object");
    f.objects.push_back(*target);
    transport[o] = x;
  }
  for (Mor m = 0; m < small.num_morphisms(); ++m) {
    const Obj a = small.source(m), b = small.target(m);
    const Elt g = tb.mul(tb.inv(transport[b]), tb.mul(up(small.rep(m)), transport[a]));
    f.morphisms.push_back(big.at(f.objects[a], f.objects[b], g));
  }
  for (Obj o = 0; o < small.num_objects(); ++o) f.coefficients.push_back(coefficient(o, f.objects[o], transport[o]));
  return f;
}

}  // namespace hlim
