#pragma once

#include <cstdint>
#include <stdexcept>
#include <string>
#include <vector>

namespace hlim {

using Fp = std::uint32_t;

bool is_prime(std::uint64_t n);

/// Arithmetic in the prime field F_p, p < 2^15 so products fit in 32 bits.
class PrimeField {
 public:
  explicit PrimeField(Fp p);

  Fp p() const { return p_; }

  Fp add(Fp a, Fp b) const {
    Fp s = a + b;
    return s >= p_ ? s - p_ : s;
  }
  Fp sub(Fp a, Fp b) const { return a >= b ? a - b : a + p_ - b; }
  Fp neg(Fp a) const { return a == 0 ? 0 : p_ - a; }
  Fp mul(Fp a, Fp b) const { return (a * b) % p_; }
  Fp inv(Fp a) const {
    if (a == 0) throw std::domain_error("PrimeField: inverse of zero");
    return inverse_[a];
  }
  /// Reduce a signed integer into [0, p).
  Fp from_int(long long v) const {
    long long r = v % static_cast<long long>(p_);
    return static_cast<Fp>(r < 0 ? r + p_ : r);
  }

 private:
  Fp p_;
  std::vector<Fp> inverse_;
};

class ValidationError : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

}  // namespace hlim
