#include "hlim/matrix.hpp"

#include <map>
#include <memory>
#include <mutex>

namespace hlim {

const PrimeField& field_for(Fp p) {
  static std::mutex mu;
  static std::map<Fp, std::unique_ptr<PrimeField>> fields;
  std::lock_guard<std::mutex> lock(mu);
  auto& slot = fields[p];
  if (!slot) slot = std::make_unique<PrimeField>(p);
  return *slot;
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, Fp p)
    : rows_(rows), cols_(cols), p_(p), data_(rows * cols, 0) {
  field_for(p);
}

FpMatrix::FpMatrix(std::size_t rows, std::size_t cols, Fp p, std::vector<Fp> entries)
    : rows_(rows), cols_(cols), p_(p), data_(std::move(entries)) {
  if (data_.size() != rows * cols) throw ValidationError("FpMatrix: entry count does not match shape");
  for (Fp& v : data_) v %= p;
  field_for(p);
}

FpMatrix FpMatrix::identity(std::size_t n, Fp p) {
  FpMatrix m(n, n, p);
  for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
  return m;
}

FpMatrix FpMatrix::operator*(const FpMatrix& rhs) const {
  if (cols_ != rhs.rows_ || p_ != rhs.p_) throw ValidationError("FpMatrix: shape mismatch in product");
  FpMatrix out(rows_, rhs.cols_, p_);
  for (std::size_t i = 0; i < rows_; ++i) {
    for (std::size_t k = 0; k < cols_; ++k) {
      Fp a = data_[i * cols_ + k];
      if (a == 0) continue;
      const Fp* r = &rhs.data_[k * rhs.cols_];
      Fp* o = &out.data_[i * rhs.cols_];
      for (std::size_t j = 0; j < rhs.cols_; ++j) o[j] = (o[j] + a * r[j]) % p_;
    }
  }
  return out;
}

FpMatrix FpMatrix::operator+(const FpMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ValidationError("FpMatrix: shape mismatch in sum");
  FpMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + rhs.data_[i]) % p_;
  return out;
}

FpMatrix FpMatrix::operator-(const FpMatrix& rhs) const {
  if (rows_ != rhs.rows_ || cols_ != rhs.cols_) throw ValidationError("FpMatrix: shape mismatch in difference");
  FpMatrix out = *this;
  for (std::size_t i = 0; i < data_.size(); ++i) out.data_[i] = (data_[i] + p_ - rhs.data_[i]) % p_;
  return out;
}

FpMatrix FpMatrix::transpose() const {
  FpMatrix out(cols_, rows_, p_);
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j) out(j, i) = (*this)(i, j);
  return out;
}

FpMatrix FpMatrix::column(std::size_t c) const {
  FpMatrix out(rows_, 1, p_);
  for (std::size_t i = 0; i < rows_; ++i) out(i, 0) = (*this)(i, c);
  return out;
}

std::vector<Fp> FpMatrix::apply(const std::vector<Fp>& v) const {
  if (v.size() != cols_) throw ValidationError("FpMatrix: vector length mismatch");
  std::vector<Fp> out(rows_, 0);
  for (std::size_t i = 0; i < rows_; ++i) {
    std::uint64_t acc = 0;
    for (std::size_t j = 0; j < cols_; ++j) acc += static_cast<std::uint64_t>(data_[i * cols_ + j]) * v[j];
    out[i] = static_cast<Fp>(acc % p_);
  }
  return out;
}

bool FpMatrix::is_zero() const {
  for (Fp v : data_)
    if (v != 0) return false;
  return true;
}

bool FpMatrix::is_identity() const {
  if (rows_ != cols_) return false;
  for (std::size_t i = 0; i < rows_; ++i)
    for (std::size_t j = 0; j < cols_; ++j)
      if ((*this)(i, j) != (i == j ? 1u : 0u)) return false;
  return true;
}

std::vector<std::size_t> FpMatrix::rref_in_place() {
  const PrimeField& f = field_for(p_);
  std::vector<std::size_t> pivots;
  std::size_t r = 0;
  for (std::size_t c = 0; c < cols_ && r < rows_; ++c) {
    std::size_t sel = rows_;
    for (std::size_t i = r; i < rows_; ++i) {
      if ((*this)(i, c) != 0) {
        sel = i;
        break;
      }
    }
    if (sel == rows_) continue;
    if (sel != r)
      for (std::size_t j = 0; j < cols_; ++j) std::swap((*this)(sel, j), (*this)(r, j));
    Fp s = f.inv((*this)(r, c));
    for (std::size_t j = 0; j < cols_; ++j) (*this)(r, j) = f.mul((*this)(r, j), s);
    for (std::size_t i = 0; i < rows_; ++i) {
      if (i == r) continue;
      Fp a = (*this)(i, c);
      if (a == 0) continue;
      for (std::size_t j = c; j < cols_; ++j) (*this)(i, j) = f.sub((*this)(i, j), f.mul(a, (*this)(r, j)));
    }
    pivots.push_back(c);
    ++r;
  }
  return pivots;
}

std::size_t FpMatrix::rank() const {
  FpMatrix m = *this;
  return m.rref_in_place().size();
}

FpMatrix FpMatrix::kernel() const {
  FpMatrix m = *this;
  auto pivots = m.rref_in_place();
  std::vector<bool> is_pivot(cols_, false);
  for (auto c : pivots) is_pivot[c] = true;
  std::vector<std::size_t> free_cols;
  for (std::size_t c = 0; c < cols_; ++c)
    if (!is_pivot[c]) free_cols.push_back(c);
  FpMatrix basis(cols_, free_cols.size(), p_);
  const PrimeField& f = field_for(p_);
  for (std::size_t k = 0; k < free_cols.size(); ++k) {
    std::size_t fc = free_cols[k];
    basis(fc, k) = 1;
    for (std::size_t r = 0; r < pivots.size(); ++r) basis(pivots[r], k) = f.neg(m(r, fc));
  }
  return basis;
}

std::optional<FpMatrix> FpMatrix::solve(const FpMatrix& rhs) const {
  if (rhs.rows_ != rows_) throw ValidationError("FpMatrix::solve: row mismatch");
  FpMatrix aug = hstack(*this, rhs);
  auto pivots = aug.rref_in_place();
  FpMatrix x(cols_, rhs.cols_, p_);
  for (std::size_t r = 0; r < pivots.size(); ++r) {
    if (pivots[r] >= cols_) return std::nullopt;
    for (std::size_t j = 0; j < rhs.cols_; ++j) x(pivots[r], j) = aug(r, cols_ + j);
  }
  return x;
}

std::optional<FpMatrix> FpMatrix::inverse() const {
  if (rows_ != cols_) return std::nullopt;
  if (rank() != rows_) return std::nullopt;
  return solve(identity(rows_, p_));
}

FpMatrix FpMatrix::hstack(const FpMatrix& a, const FpMatrix& b) {
  if (a.rows_ != b.rows_) throw ValidationError("FpMatrix::hstack: row mismatch");
  FpMatrix out(a.rows_, a.cols_ + b.cols_, a.p_);
  for (std::size_t i = 0; i < a.rows_; ++i) {
    for (std::size_t j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
    for (std::size_t j = 0; j < b.cols_; ++j) out(i, a.cols_ + j) = b(i, j);
  }
  return out;
}

FpMatrix FpMatrix::vstack(const FpMatrix& a, const FpMatrix& b) {
  if (a.cols_ != b.cols_) throw ValidationError("FpMatrix::vstack: column mismatch");
  FpMatrix out(a.rows_ + b.rows_, a.cols_, a.p_);
  std::copy(a.data_.begin(), a.data_.end(), out.data_.begin());
  std::copy(b.data_.begin(), b.data_.end(), out.data_.begin() + a.data_.size());
  return out;
}

FpMatrix FpMatrix::direct_sum(const FpMatrix& a, const FpMatrix& b) {
  FpMatrix out(a.rows_ + b.rows_, a.cols_ + b.cols_, a.p_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j) out(i, j) = a(i, j);
  for (std::size_t i = 0; i < b.rows_; ++i)
    for (std::size_t j = 0; j < b.cols_; ++j) out(a.rows_ + i, a.cols_ + j) = b(i, j);
  return out;
}

FpMatrix FpMatrix::kronecker(const FpMatrix& a, const FpMatrix& b) {
  FpMatrix out(a.rows_ * b.rows_, a.cols_ * b.cols_, a.p_);
  const PrimeField& f = field_for(a.p_);
  for (std::size_t i = 0; i < a.rows_; ++i)
    for (std::size_t j = 0; j < a.cols_; ++j)
      for (std::size_t k = 0; k < b.rows_; ++k)
        for (std::size_t l = 0; l < b.cols_; ++l)
          out(i * b.rows_ + k, j * b.cols_ + l) = f.mul(a(i, j), b(k, l));
  return out;
}

std::ostream& operator<<(std::ostream& os, const FpMatrix& m) {
  os << "[";
  for (std::size_t i = 0; i < m.rows_; ++i) {
    if (i) os << "; ";
    for (std::size_t j = 0; j < m.cols_; ++j) os << (j ? " " : "") << m(i, j);
  }
  return os << "]";
}

}  // namespace hlim
