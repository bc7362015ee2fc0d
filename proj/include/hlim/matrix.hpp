#pragma once

#include <cstddef>
#include <optional>
#include <ostream>
#include <vector>

#include "hlim/fp.hpp"

namespace hlim {

/// Shared field instance for p; the returned reference stays valid for the process lifetime.
const PrimeField& field_for(Fp p);

/// Dense row-major matrix over F_p. Used for module actions and functor maps,
/// which stay small (dimension of a single value space).
class FpMatrix {
 public:
  FpMatrix() = default;
  FpMatrix(std::size_t rows, std::size_t cols, Fp p);
  FpMatrix(std::size_t rows, std::size_t cols, Fp p, std::vector<Fp> entries);

  static FpMatrix identity(std::size_t n, Fp p);

  std::size_t rows() const { return rows_; }
  std::size_t cols() const { return cols_; }
  Fp p() const { return p_; }

  Fp operator()(std::size_t r, std::size_t c) const { return data_[r * cols_ + c]; }
  Fp& operator()(std::size_t r, std::size_t c) { return data_[r * cols_ + c]; }
  const std::vector<Fp>& entries() const { return data_; }

  FpMatrix operator*(const FpMatrix& rhs) const;
  FpMatrix operator+(const FpMatrix& rhs) const;
  FpMatrix operator-(const FpMatrix& rhs) const;
  bool operator==(const FpMatrix& rhs) const = default;

  FpMatrix transpose() const;
  FpMatrix column(std::size_t c) const;
  std::vector<Fp> apply(const std::vector<Fp>& v) const;

  bool is_zero() const;
  bool is_identity() const;

  std::size_t rank() const;
  /// Reduced row echelon form; returns pivot columns.
  std::vector<std::size_t> rref_in_place();
  /// Columns form a basis of {x : A x = 0}, one per free variable of the RREF.
  FpMatrix kernel() const;
  /// Some X with (*this) X = rhs, or nullopt when inconsistent.
  std::optional<FpMatrix> solve(const FpMatrix& rhs) const;
  std::optional<FpMatrix> inverse() const;

  static FpMatrix hstack(const FpMatrix& a, const FpMatrix& b);
  static FpMatrix vstack(const FpMatrix& a, const FpMatrix& b);
  /// Block-diagonal sum.
  static FpMatrix direct_sum(const FpMatrix& a, const FpMatrix& b);
  static FpMatrix kronecker(const FpMatrix& a, const FpMatrix& b);

  friend std::ostream& operator<<(std::ostream& os, const FpMatrix& m);

 private:
  std::size_t rows_ = 0;
  std::size_t cols_ = 0;
  Fp p_ = 2;
  std::vector<Fp> data_;
};

}  // namespace hlim
