#pragma once

#include <cstddef>
#include <stdexcept>
#include <string>

namespace hlim {

/// Thrown when an input exceeds one of the configured size caps.
class CapExceeded : public std::runtime_error {
 public:
  using std::runtime_error::runtime_error;
};

/// Process-wide size caps. Defaults may be overridden through the
/// environment (HLIM_ENUM_BOUND, HLIM_MAX_DEGREE, HLIM_CHAIN_CAP) or set
/// programmatically before any computation starts.
struct Caps {
  std::size_t enumeration_bound = 100000;
  std::size_t max_degree = 64;
  std::size_t chain_cap = 10000000;
};

Caps& caps();

}  // namespace hlim
