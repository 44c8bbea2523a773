#pragma once

#include <cstdlib>
#include <cstring>
#include <stdexcept>
#include <string>

namespace dynds {

/// True when DYNDS_DEBUG_ASSERT=1; enables exhaustive invariant checks.
inline bool debug_asserts() {
  static const bool on = [] {
    const char* v = std::getenv("DYNDS_DEBUG_ASSERT");
    return v != nullptr && std::strcmp(v, "1") == 0;
  }();
  return on;
}

inline void invariant(bool ok, const std::string& what) {
  if (!ok) throw std::logic_error("invariant violated: " + what);
}

}  // namespace dynds
