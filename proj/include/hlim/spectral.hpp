#pragma once

#include <string>
#include <vector>

#include "hlim/barlim.hpp"
#include "hlim/gmodules.hpp"
#include "hlim/group.hpp"
#include "hlim/group_ops.hpp"

namespace hlim {

/// E_2^{ij} for 0 <= i, j < n_degrees. Total degrees up to n_degrees - 1
/// have every contributing entry.
struct E2Page {
  std::string theorem;
  std::string description;
  std::size_t n_degrees = 0;
  std::vector<std::vector<std::size_t>> entries;  // entries[i][j]
  /// The producer knows E_2 vanishes outside the grid.
  bool bounded = false;
  /// Quotient pages: every morphism matrix agreed for two different lifts.
  bool lift_independent = true;
  std::size_t lifts_compared = 0;

  std::size_t at(std::size_t i, std::size_t j) const { return entries[i][j]; }
  std::size_t safe_total() const { return n_degrees == 0 ? 0 : n_degrees - 1; }
  std::size_t diagonal_sum(std::size_t n) const;
};

/// lim^j over the orbit category of K on the objects of phi lying in K,
/// for j < n_degrees. phi lives on a conjugation-closed orbit category of G.
LimitsResult kan_values(const CatModule& phi, const Subgroup& k, std::size_t n_degrees, EngineOptions options = {});

/// The page lim^i over O_Y(G/H) of K/H -> lim^j over O_{X cap K}(K) of phi,
/// with morphisms acting through conjugation by lifts. `y` lists subgroups
/// of q.group and must contain the image of every object of phi.
E2Page e2_quotient(const CatModule& phi, const Quotient& q, const std::vector<Subgroup>& y, std::size_t n_degrees,
                   EngineOptions options = {});
/// The quotient page for the atomic functor of m on all p-subgroups, with Y
/// all p-subgroups of G/H: entries lim^i of P/H -> Lambda^j(P; M).
E2Page e2_lambda_quotient(const FpGModule& m, const Subgroup& h, std::size_t n_degrees, EngineOptions options = {});
/// Lambda^i(G1; Lambda^j(G2; M)) for M over G1 x G2, with G1 acting on the
/// cohomology of G2 through representative cocycles.
E2Page e2_product(const DirectProduct& d, const FpGModule& m, std::size_t n_degrees, EngineOptions options = {});

/// H^i(G; M) for i < n_degrees, as higher limits over the one-object category.
LimitsResult group_cohomology(const FpGModule& m, std::size_t n_degrees, EngineOptions options = {});
/// The functor on the orbit category of G on {1} with value m: its higher limits are H^*(G; M).
CatModule cohomology_functor(const FpGModule& m);

struct ConvergenceRow {
  std::size_t total = 0;
  std::size_t abutment = 0;
  std::size_t e2_sum = 0;
  bool equality_asserted = false;
  bool ok = true;
};
struct ConvergenceReport {
  std::vector<ConvergenceRow> rows;
  std::size_t safe_total = 0;
  std::string collapse;  // "row", "column" or empty
  bool euler_checked = false;
  bool ok = true;
};
/// dim abutment_n <= sum over i + j = n of E_2^{ij} on the safe window,
/// with equality when the page sits in one row or one column, and equal
/// Euler characteristics when the page is bounded and the abutment covers
/// every total degree of the grid.
ConvergenceReport convergence_check(const E2Page& page, const std::vector<std::size_t>& abutment);

}  // namespace hlim
