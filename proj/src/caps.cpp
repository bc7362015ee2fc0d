#include "hlim/caps.hpp"

#include <cstdlib>

namespace hlim {

namespace {

std::size_t env_or(const char* name, std::size_t fallback) {
  const char* v = std::getenv(name);
  if (!v || !*v) return fallback;
  char* end = nullptr;
  unsigned long long parsed = std::strtoull(v, &end, 10);
  if (end == v || *end != '\0' || parsed == 0) return fallback;
  return static_cast<std::size_t>(parsed);
}

Caps load() {
  Caps c;
  c.enumeration_bound = env_or("HLIM_ENUM_BOUND", c.enumeration_bound);
  c.max_degree = env_or("HLIM_MAX_DEGREE", c.max_degree);
  c.chain_cap = env_or("HLIM_CHAIN_CAP", c.chain_cap);
  return c;
}

}  // namespace

Caps& caps() {
  static Caps instance = load();
  return instance;
}

}  // namespace hlim
