#pragma once

#include <cstdint>
#include <functional>
#include <optional>
#include <string>
#include <vector>

#include "hlim/barlim.hpp"
#include "hlim/category.hpp"
#include "hlim/corpus.hpp"
#include "hlim/gmodules.hpp"
#include "hlim/group.hpp"
#include "hlim/matrix.hpp"

namespace hlim {

inline constexpr const char* kExtrapolationTag = "certified under window-extrapolation hypothesis";

/// A finite partial order given by its relation matrix.
class FinitePoset {
 public:
  /// Throws ValidationError unless `leq` is reflexive, antisymmetric and transitive.
  FinitePoset(std::vector<std::string> labels, std::vector<std::vector<bool>> leq);
  /// 0 < 1 < ... < size - 1.
  static FinitePoset chain(std::size_t size);

  std::size_t size() const { return labels_.size(); }
  bool leq(std::size_t a, std::size_t b) const { return leq_[a][b]; }
  const std::string& label(std::size_t a) const { return labels_[a]; }
  /// Every pair has an upper bound.
  bool is_directed() const;
  std::optional<std::size_t> maximum() const;

 private:
  std::vector<std::string> labels_;
  std::vector<std::vector<bool>> leq_;
};

/// One morphism a -> b for each a <= b.
class PosetCategory : public FiniteCategory {
 public:
  explicit PosetCategory(FinitePoset poset);
  const FinitePoset& poset() const { return poset_; }
  std::optional<Mor> arrow(std::size_t a, std::size_t b) const;
  std::string object_label(Obj c) const override { return poset_.label(c); }

 private:
  FinitePoset poset_;
};

/// Spaces T_0, ..., T_N with maps T_{n+1} -> T_n.
struct TowerWindow {
  Fp p = 2;
  std::vector<std::size_t> dims;
  std::vector<FpMatrix> maps;  // maps[n] is dims[n] x dims[n + 1]

  std::size_t top() const { return dims.empty() ? 0 : dims.size() - 1; }
  /// Throws ValidationError on inconsistent shapes.
  void validate() const;
  /// T_from -> T_to for to <= from.
  FpMatrix composite(std::size_t from, std::size_t to) const;
  bool surjective() const;
  /// The contravariant functor on the chain poset 0 < ... < N.
  CatModule as_functor() const;
};

/// Limit of the finite chain: families are determined by their top entry.
struct WindowLimit {
  std::size_t dimension = 0;
  std::size_t top_index = 0;
  /// Column k is the family generated by the k-th basis vector of the top
  /// term, stacked over indices 0..N.
  FpMatrix families;
};
WindowLimit window_lim(const TowerWindow& t);

/// n -> slope * n + intercept.
struct AffineLaw {
  std::int64_t slope = 0;
  std::int64_t intercept = 0;
  std::int64_t at(std::size_t n) const { return slope * static_cast<std::int64_t>(n) + intercept; }
  std::string describe() const;
};

enum class GrowthKind { Stabilizing, UnboundedQuotient };
std::string to_string(GrowthKind k);

struct GrowthCertificate {
  GrowthKind kind = GrowthKind::Stabilizing;
  AffineLaw law;
  bool surjective = true;
};
/// Throws ValidationError when the window contradicts the certificate:
/// the law must give every dimension, claimed surjectivity must hold, a
/// stabilizing tower must show stable images (Mittag-Leffler on the window)
/// and an unbounded quotient tower must grow and be surjective.
void verify_certificate(const TowerWindow& t, const GrowthCertificate& cert);
/// Certificate of the given kind read off the window (law from the first two
/// terms), then verified. Throws ValidationError when the window does not fit.
GrowthCertificate infer_certificate(const TowerWindow& t, GrowthKind kind);

enum class Lim1Class { Zero, Nonzero };
std::string to_string(Lim1Class c);

/// A countable-dimensional space given as the union of finite pieces of
/// dimension law(n), mapping into the tower.
struct SourceLaw {
  AffineLaw law;
  std::string description;
};

struct Lim1Report {
  GrowthCertificate certificate;
  std::vector<std::size_t> window_dims;
  Lim1Class classification = Lim1Class::Zero;
  std::string quantity;
  std::string statement;
  std::string tag = kExtrapolationTag;
};
/// Stabilizing: lim^1 = 0. Unbounded surjective quotient tower under a
/// countable-dimensional source: coker[source -> lim] != 0.
Lim1Report classify_lim1(const TowerWindow& t, const GrowthCertificate& cert, const SourceLaw& source);

/// Nested finite groups K_0 <= ... <= K_N with compatible modules.
struct ChainLevel {
  PermGroup group;
  FpGModule module;
  /// Module of one coordinate beyond the truncation, when the family's
  /// module is an infinite sum of copies of it over K_n.
  std::optional<FpGModule> tail;
};
struct TruncationChain {
  std::string family;
  Fp p = 2;
  std::vector<ChainLevel> levels;
  std::vector<std::function<Perm(const Perm&)>> embed;  // level n into level n + 1
  std::vector<FpMatrix> projections;                    // M_{n+1} -> M_n
  std::optional<HgmFamily> hgm;
  bool finite = false;  // constant chain of a single finite group
  std::size_t top() const { return levels.size() - 1; }
};

/// Family ids: hgm-h, hgm-h0, hgm-gamma, hgm-gamma0, hgm-gamma-star (p = 2,
/// F0 = F4), the same with a -p3 suffix (p = 3, F0 = F3), and the finite
/// families finite-d5, finite-s3, finite-s4.
std::vector<std::string> registered_families();
TruncationChain fin_truncation_chain(const std::string& family, std::size_t n_max);
/// Every level equal to (g, m), every map the identity; m must be over g.whole().
TruncationChain constant_chain(const std::string& name, const PermGroup& g, const FpGModule& m, std::size_t n_max);

struct LambdaTower {
  std::size_t degree = 0;
  TowerWindow window;
  /// Whether Lambda^j of the tail vanishes at each level, so that the
  /// truncated module gives Lambda^j of the whole module.
  std::vector<bool> tail_exact;
};
/// n -> Lambda^j(K_n; M_n) with maps from restricting cochains along
/// O_p(K_n) -> O_p(K_{n+1}).
LambdaTower lambda_tower(const TruncationChain& chain, std::size_t j, EngineOptions options = {});

/// n -> Fix_{A_n} M / Fix_{B_n} M (A_n <= B_n) with maps induced by the
/// projections. The truncated part is the window; each coordinate beyond
/// the truncation adds tail_dims[n] more.
struct QuotientTower {
  TowerWindow window;
  std::vector<std::size_t> tail_dims;
  std::vector<std::size_t> source_dims;  // dim Fix_{A_n} M_n
  bool tail_zero() const;
};
/// Picks a subgroup of level n's group (given as `whole`).
using SubgroupChoice = std::function<Subgroup(std::size_t level, const Subgroup& whole)>;
QuotientTower fixed_quotient_tower(const TruncationChain& chain, const SubgroupChoice& small, const SubgroupChoice& big);
/// Sylow p-subgroups S_n of the levels with S_n embedded onto S_{n+1}.
std::vector<Subgroup> compatible_sylows(const TruncationChain& chain);
/// Degree-1 shortcut tower n -> Fix_{N(S)} M_n / Fix_{K_n} M_n for Sylow
/// subgroups S of order p.
QuotientTower sylow_shortcut_tower(const TruncationChain& chain);

struct CompatibilityReport {
  std::vector<std::size_t> bar_dims, shortcut_dims;
  std::vector<std::size_t> bar_ranks, shortcut_ranks;
  bool holds = false;
};
/// Dimensions and map ranks of the degree-1 Lambda tower against the shortcut tower.
CompatibilityReport shortcut_compatibility(const TruncationChain& chain, EngineOptions options = {});

struct SesReport {
  std::string family;
  std::size_t degree = 0;
  std::size_t window_top = 0;
  std::vector<std::size_t> lim_tower_dims;   // Lambda^i tower
  std::vector<std::size_t> lim1_tower_dims;  // Lambda^(i-1) tower
  std::string lim_term;
  std::string lim1_term;
  std::optional<GrowthCertificate> lim_certificate;  // verified on the Lambda^i window
  std::optional<Lim1Report> lim1_report;
  std::string prediction;
  bool nonzero = false;
  /// Finite families only: Lambda^i of the group equals the top of the tower.
  std::optional<bool> exact_equality;
  std::string tag = kExtrapolationTag;
};
SesReport ses_check_countable(const TruncationChain& chain, std::size_t i, EngineOptions options = {});

}  // namespace hlim
