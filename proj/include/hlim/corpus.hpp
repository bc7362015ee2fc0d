#pragma once

#include <cstdint>
#include <string>
#include <vector>

#include "hlim/gmodules.hpp"
#include "hlim/orbit_category.hpp"
#include "hlim/group.hpp"
#include "hlim/matrix.hpp"

namespace hlim {

/// GF(p^k) with elements coded as integers whose base-p digits are the
/// coefficients of a polynomial in a primitive root x.
class GaloisField {
 public:
  GaloisField(Fp p, std::size_t k);

  Fp characteristic() const { return p_; }
  std::size_t degree() const { return k_; }
  std::uint32_t order() const { return q_; }
  std::uint32_t add(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t mul(std::uint32_t a, std::uint32_t b) const;
  std::uint32_t inv(std::uint32_t a) const;
  std::uint32_t pow(std::uint32_t a, std::uint64_t e) const;
  /// x^e for the primitive root x.
  std::uint32_t primitive_power(std::uint64_t e) const { return exp_[e % (q_ - 1)]; }
  std::uint64_t log(std::uint32_t a) const { return log_[a]; }
  /// Matrix over F_p of y -> c * y^(p^frob) in the basis 1, x, ..., x^(k-1).
  FpMatrix linear_map(std::uint32_t c, std::size_t frob) const;
  /// Coefficients of the defining polynomial, constant term first, without the leading 1.
  const std::vector<Fp>& modulus() const { return modulus_; }

 private:
  Fp p_;
  std::size_t k_;
  std::uint32_t q_;
  std::vector<Fp> modulus_;
  std::vector<std::uint32_t> exp_, log_;
};

/// Members of the families built from a field extension F0 < F of degree p,
/// a subgroup U of F^x meeting F0^x trivially and the Galois group S of
/// order p.
enum class HgmMember { H, H0, Gamma, Gamma0, GammaStar };
std::string to_string(HgmMember m);
HgmMember parse_hgm_member(const std::string& s);

struct HgmFamily {
  Fp p = 2;
  std::uint32_t q0 = 4;  // |F0|, a power of p and at least 3
  std::uint32_t u = 0;   // |U|; 0 picks the largest divisor of |F^x| prime to |F0^x|
  HgmMember member = HgmMember::Gamma0;
};

/// Level-n truncation: n coordinates of F, each acted on by its own factor
/// of (F^x)^n (or U^n), with S acting by Frobenius on every coordinate. The
/// permutation action is on n + 1 copies of F^x; copy 0 carries only the
/// diagonal U (GammaStar) and S, so that every level is faithful and level n
/// sits in level n + 1 by repeating the copy-0 action on the new copy.
struct HgmTruncation {
  HgmFamily family;
  std::size_t level = 0;
  std::uint32_t u = 0;           // resolved |U|
  std::size_t field_degree = 0;  // [F : F_p]
  PermGroup group;
  FpGModule module;  // F^n over F_p, coordinates in order
  /// One coordinate beyond the truncation: every later coordinate of the
  /// infinite module is a copy of it, acted on through copy 0.
  FpGModule tail;
  /// The Galois generator y -> y^q0 as a group element.
  Perm frobenius;
  /// The image of a level-n element in level n + 1.
  Perm embed(const Perm& g) const;
  /// M_{n+1} -> M_n, dropping the last coordinate (equivariant for level n).
  FpMatrix projection() const;
};
HgmTruncation hgm_truncate(const HgmFamily& family, std::size_t n);
const GaloisField& hgm_field(const HgmFamily& family);

/// Iterated wreath products P_{n+1} = P_n wr C_p with Q_{n+1} = Q_n wr C_p
/// and A_{n+1} = A_n^p, all acting on p^(n+1) points.
struct WreathStage {
  PermGroup p_group;
  PermGroup q_group;
  PermGroup a_group;
};
struct WreathTower {
  std::size_t prime = 2;
  std::vector<WreathStage> stages;
  /// (g, 1, ..., 1) for odd n, (g, ..., g) for even n, from stage n to n + 1.
  Perm embed(std::size_t n, const Perm& g) const;
};
/// Throws CapExceeded when the top stage is beyond the enumeration bound.
WreathTower wreath_tower(std::size_t p, std::size_t n_max);

struct WreathCheck {
  std::size_t stage;
  std::string name;
  bool passed;
  std::string detail;
};
std::vector<WreathCheck> wreath_checks(const WreathTower& t);

/// Named finite groups used across the verification suites: small
/// permutation groups, products, and low truncations of the field families.
struct CorpusGroup {
  std::string name;
  PermGroup group;
};
std::vector<CorpusGroup> corpus_groups(std::uint64_t max_order = 200);
/// The finite Lambda corpus: for every corpus group of order at most 150 and
/// every prime dividing its order, the trivial and permutation modules, plus
/// the field modules of the family truncations.
struct CorpusModule {
  std::string name;  // group/pP/module
  FpGModule module;
};
std::vector<CorpusModule> finite_corpus();
/// Every functor the suites build on an orbit category: constants,
/// atomic and fixed-point functors of the trivial and permutation modules,
/// and two coinduced functors.
std::vector<CatModule> corpus_functors(const OrbitPtr& c, Fp p);
std::vector<std::string> corpus_functor_names();

}  // namespace hlim
