#pragma once

#include <cstdint>
#include <memory>

namespace dynds {

/// Deterministic count of elementary node touches; the library's proxy for time.
struct VisitCounter {
  uint64_t visits = 0;
  void add(uint64_t n = 1) { visits += n; }
  void reset() { visits = 0; }
};

using CounterPtr = std::shared_ptr<VisitCounter>;

inline CounterPtr make_counter() { return std::make_shared<VisitCounter>(); }

}  // namespace dynds
