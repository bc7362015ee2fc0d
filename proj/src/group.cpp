#include "hlim/group.hpp"

#include <algorithm>
#include <deque>
#include <mutex>
#include <numeric>

#include "hlim/caps.hpp"
#include "hlim/fp.hpp"

namespace hlim {

// ---------------------------------------------------------------- GroupTable

GroupTable::GroupTable(std::size_t degree, const std::vector<Perm>& generators) : degree_(degree) {
  const std::size_t bound = caps().enumeration_bound;
  std::vector<Perm> found{Perm::identity(degree)};
  std::unordered_map<Perm, Elt, PermHash> seen;
  seen.emplace(found[0], 0);
  std::vector<Elt> parent{0};
  std::vector<std::size_t> gen_of{0};
  for (std::size_t head = 0; head < found.size(); ++head) {
    for (std::size_t s = 0; s < generators.size(); ++s) {
      if (generators[s].degree() != degree) throw ValidationError("GroupTable: generator degree mismatch");
      Perm next = generators[s] * found[head];
      if (seen.count(next)) continue;
      if (found.size() >= bound)
        throw CapExceeded("group order exceeds the enumeration bound " + std::to_string(bound));
      seen.emplace(next, static_cast<Elt>(found.size()));
      found.push_back(std::move(next));
      parent.push_back(static_cast<Elt>(head));
      gen_of.push_back(s);
    }
  }
  const std::size_t n = found.size();
  std::vector<Elt> by_rank(n);
  std::iota(by_rank.begin(), by_rank.end(), Elt{0});
  std::sort(by_rank.begin(), by_rank.end(), [&](Elt a, Elt b) { return found[a] < found[b]; });
  std::vector<Elt> rank_of(n);
  for (std::size_t r = 0; r < n; ++r) rank_of[by_rank[r]] = static_cast<Elt>(r);

  elements_.reserve(n);
  for (Elt old : by_rank) elements_.push_back(found[old]);
  index_.reserve(n * 2);
  for (std::size_t i = 0; i < n; ++i) index_.emplace(elements_[i], static_cast<Elt>(i));

  parent_.assign(n, 0);
  gen_of_.assign(n, 0);
  for (std::size_t old = 0; old < n; ++old) {
    parent_[rank_of[old]] = rank_of[parent[old]];
    gen_of_[rank_of[old]] = gen_of[old];
  }
  bfs_.reserve(n);
  for (std::size_t old = 0; old < n; ++old) bfs_.push_back(rank_of[old]);

  for (const Perm& g : generators) gens_.push_back(index_.at(g));

  inv_.resize(n);
  orders_.resize(n);
  for (std::size_t i = 0; i < n; ++i) {
    inv_[i] = index_.at(elements_[i].inverse());
    orders_[i] = elements_[i].order();
  }
  if (n <= 2048) {
    mul_.resize(n * n);
    for (std::size_t a = 0; a < n; ++a)
      for (std::size_t b = 0; b < n; ++b) mul_[a * n + b] = index_.at(elements_[a] * elements_[b]);
  }
}

std::optional<Elt> GroupTable::find(const Perm& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) return std::nullopt;
  return it->second;
}

Elt GroupTable::index_of(const Perm& g) const {
  auto it = index_.find(g);
  if (it == index_.end()) throw ValidationError("element " + g.to_cycles() + " is not in the group");
  return it->second;
}

Elt GroupTable::pow(Elt a, std::uint64_t e) const {
  Elt acc = 0, base = a;
  while (e) {
    if (e & 1) acc = mul(acc, base);
    base = mul(base, base);
    e >>= 1;
  }
  return acc;
}

// ------------------------------------------------------------------ Subgroup

namespace {

std::vector<std::uint64_t> make_bits(std::size_t n, const std::vector<Elt>& elems) {
  std::vector<std::uint64_t> bits((n + 63) / 64, 0);
  for (Elt e : elems) bits[e >> 6] |= std::uint64_t{1} << (e & 63);
  return bits;
}

}  // namespace

Subgroup::Subgroup(TablePtr table, std::vector<Elt> generators) : table_(std::move(table)) {
  const std::size_t n = table_->order();
  std::vector<bool> seen(n, false);
  for (Elt g : generators)
    if (g != 0 && std::find(gens_.begin(), gens_.end(), g) == gens_.end()) gens_.push_back(g);
  elements_.push_back(0);
  seen[0] = true;
  for (std::size_t head = 0; head < elements_.size(); ++head) {
    for (Elt s : gens_) {
      Elt next = table_->mul(elements_[head], s);
      if (!seen[next]) {
        seen[next] = true;
        elements_.push_back(next);
      }
    }
  }
  std::sort(elements_.begin(), elements_.end());
  bits_ = make_bits(n, elements_);
}

Subgroup Subgroup::from_elements(TablePtr table, std::vector<Elt> elements, std::vector<Elt> generators) {
  Subgroup s;
  s.table_ = std::move(table);
  s.elements_ = std::move(elements);
  s.gens_ = std::move(generators);
  s.bits_ = make_bits(s.table_->order(), s.elements_);
  return s;
}

Subgroup Subgroup::trivial(TablePtr table) { return Subgroup(std::move(table), {}); }

Subgroup Subgroup::whole(TablePtr table) {
  std::vector<Elt> all(table->order());
  std::iota(all.begin(), all.end(), Elt{0});
  std::vector<Elt> gens = table->generators();
  return from_elements(std::move(table), std::move(all), std::move(gens));
}

bool Subgroup::is_subgroup_of(const Subgroup& rhs) const {
  if (table_ != rhs.table_) throw ValidationError("subgroups of different groups compared");
  for (Elt g : gens_)
    if (!rhs.contains(g)) return false;
  return true;
}

Subgroup Subgroup::conjugate(Elt g) const {
  std::vector<Elt> elems;
  elems.reserve(elements_.size());
  for (Elt h : elements_) elems.push_back(table_->conj(g, h));
  std::sort(elems.begin(), elems.end());
  std::vector<Elt> gens;
  for (Elt h : gens_) gens.push_back(table_->conj(g, h));
  return from_elements(table_, std::move(elems), std::move(gens));
}

bool Subgroup::conjugate_inside(Elt g, const Subgroup& k) const {
  for (Elt h : gens_)
    if (!k.contains(table_->conj(g, h))) return false;
  return true;
}

std::string Subgroup::describe() const {
  std::string out = "order " + std::to_string(order()) + " <";
  for (std::size_t i = 0; i < gens_.size(); ++i) {
    if (i) out += ", ";
    out += table_->element(gens_[i]).to_cycles();
  }
  return out + ">";
}

std::size_t SubgroupHash::operator()(const Subgroup& s) const noexcept {
  std::uint64_t h = 1469598103934665603ull;
  for (auto w : s.bits()) {
    h ^= w;
    h *= 1099511628211ull;
  }
  return static_cast<std::size_t>(h);
}

// ---------------------------------------------------------- StabilizerChain

StabilizerChain::StabilizerChain(std::size_t degree, const std::vector<Perm>& generators) : degree_(degree) {
  for (const Perm& g : generators)
    if (!g.is_identity()) strong_.push_back(g);
  for (const Perm& g : strong_) {
    bool moves_base = false;
    for (const Level& l : levels_)
      if (g[l.base] != l.base) moves_base = true;
    if (!moves_base) levels_.push_back(Level{static_cast<Perm::Point>(g.first_moved()), {}, {}, {}});
  }
  for (std::size_t i = 0; i < levels_.size(); ++i) rebuild_level(i);

  std::size_t i = levels_.size();
  while (i >= 1) {
    const std::size_t lvl = i - 1;
    rebuild_level(lvl);
    bool ok = true;
    const Level& L = levels_[lvl];
    for (std::size_t oi = 0; ok && oi < L.orbit.size(); ++oi) {
      const Perm::Point b = L.orbit[oi];
      for (const Perm& s : L.gens) {
        Perm h = L.transversal[s[b]]->inverse() * s * *L.transversal[b];
        auto [res, stop] = strip(h, lvl + 1);
        if (res.is_identity()) continue;
        if (stop == levels_.size()) levels_.push_back(Level{static_cast<Perm::Point>(res.first_moved()), {}, {}, {}});
        strong_.push_back(res);
        for (std::size_t j = lvl + 1; j <= stop; ++j) rebuild_level(j);
        i = stop + 1;
        ok = false;
        break;
      }
    }
    if (ok) --i;
  }
}

void StabilizerChain::rebuild_level(std::size_t i) {
  Level& L = levels_[i];
  L.gens.clear();
  for (const Perm& s : strong_) {
    bool fixes = true;
    for (std::size_t j = 0; j < i; ++j)
      if (s[levels_[j].base] != levels_[j].base) fixes = false;
    if (fixes) L.gens.push_back(s);
  }
  L.transversal.assign(degree_, std::nullopt);
  L.orbit.clear();
  L.transversal[L.base] = Perm::identity(degree_);
  L.orbit.push_back(L.base);
  for (std::size_t head = 0; head < L.orbit.size(); ++head) {
    const Perm::Point a = L.orbit[head];
    for (const Perm& s : L.gens) {
      const Perm::Point b = s[a];
      if (L.transversal[b]) continue;
      L.transversal[b] = s * *L.transversal[a];
      L.orbit.push_back(b);
    }
  }
}

std::pair<Perm, std::size_t> StabilizerChain::strip(Perm g, std::size_t from) const {
  for (std::size_t j = from; j < levels_.size(); ++j) {
    const Perm::Point b = g[levels_[j].base];
    if (!levels_[j].transversal[b]) return {g, j};
    g = levels_[j].transversal[b]->inverse() * g;
  }
  return {g, levels_.size()};
}

std::uint64_t StabilizerChain::order() const {
  std::uint64_t n = 1;
  for (const Level& l : levels_) n *= l.orbit.size();
  return n;
}

bool StabilizerChain::contains(const Perm& g) const {
  if (g.degree() != degree_) return false;
  return strip(g, 0).first.is_identity();
}

// ----------------------------------------------------------------- PermGroup

struct PermGroup::Cache {
  std::once_flag chain_once;
  std::unique_ptr<StabilizerChain> chain;
  std::mutex table_mu;
  TablePtr table;
};

PermGroup::PermGroup(std::size_t degree, std::vector<Perm> generators, std::string name)
    : degree_(degree), gens_(std::move(generators)), name_(std::move(name)), cache_(std::make_shared<Cache>()) {
  for (const Perm& g : gens_)
    if (g.degree() != degree_) throw ValidationError("PermGroup: generator degree mismatch");
}

std::uint64_t PermGroup::order() const {
  std::call_once(cache_->chain_once, [&] { cache_->chain = std::make_unique<StabilizerChain>(degree_, gens_); });
  return cache_->chain->order();
}

bool PermGroup::contains(const Perm& g) const {
  order();
  return cache_->chain->contains(g);
}

TablePtr PermGroup::table() const {
  std::lock_guard<std::mutex> lock(cache_->table_mu);
  if (!cache_->table) {
    if (degree_ > caps().max_degree)
      throw CapExceeded("group degree " + std::to_string(degree_) + " exceeds the enumeration degree cap " +
                        std::to_string(caps().max_degree));
    if (order() > caps().enumeration_bound)
      throw CapExceeded("group order " + std::to_string(order()) + " exceeds the enumeration bound " +
                        std::to_string(caps().enumeration_bound));
    cache_->table = std::make_shared<const GroupTable>(degree_, gens_);
  }
  return cache_->table;
}

Subgroup PermGroup::whole() const { return Subgroup::whole(table()); }

Subgroup PermGroup::subgroup(const std::vector<Perm>& generators) const {
  TablePtr t = table();
  std::vector<Elt> idx;
  for (const Perm& g : generators) idx.push_back(t->index_of(g));
  return Subgroup(t, std::move(idx));
}

}  // namespace hlim
