#pragma once

#include <optional>
#include <stdexcept>
#include <string>

#include "dynds/reductions.hpp"

namespace dynds {

/// Compares the target fingerprint across one phase.
class PhaseGuard {
 public:
  PhaseGuard(const FingerprintSource& t, ReductionResult& r) : t_(t), r_(r), before_(t.fingerprint()) {}
  void close() {
    ++r_.phases;
    if (!before_) return;
    ++r_.fingerprint_checks;
    if (t_.fingerprint() != before_) throw std::logic_error("phase " + std::to_string(r_.phases) + " leaked state");
  }

 private:
  const FingerprintSource& t_;
  ReductionResult& r_;
  std::optional<std::string> before_;
};

}  // namespace dynds
