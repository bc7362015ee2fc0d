#include "hlim/fp.hpp"

namespace hlim {

bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

PrimeField::PrimeField(Fp p) : p_(p) {
  if (!is_prime(p) || p >= (1u << 15))
    throw ValidationError("p must be a prime below 32768, got " + std::to_string(p));
  inverse_.assign(p, 0);
  for (Fp a = 1; a < p; ++a) {
    if (inverse_[a] != 0) continue;
    for (Fp b = 1; b < p; ++b) {
      if ((a * b) % p == 1) {
        inverse_[a] = b;
        inverse_[b] = a;
        break;
      }
    }
  }
}

}  // namespace hlim
