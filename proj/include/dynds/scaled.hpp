#pragma once

#include <compare>
#include <cstdint>
#include <stdexcept>
#include <string>

namespace dynds {

// Overflow is a hard error everywhere in the library.
inline int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("integer overflow in addition");
  return r;
}

inline int64_t checked_sub(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_sub_overflow(a, b, &r)) throw std::overflow_error("integer overflow in subtraction");
  return r;
}

inline int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("integer overflow in multiplication");
  return r;
}

/// Exact coordinate: the true value is raw / scale. All values taking part in
/// one structure share a scale, so comparisons reduce to comparing raws.
struct ScaledInt {
  int64_t raw = 0;
  int64_t scale = 1;

  ScaledInt() = default;
  ScaledInt(int64_t raw_value, int64_t scale_value) : raw(raw_value), scale(scale_value) {
    if (scale_value <= 0) throw std::invalid_argument("scale must be positive");
  }

  static ScaledInt of(int64_t integer, int64_t scale_value) {
    return ScaledInt(checked_mul(integer, scale_value), scale_value);
  }

  friend ScaledInt operator+(ScaledInt a, ScaledInt b) {
    require_same_scale(a, b);
    return {checked_add(a.raw, b.raw), a.scale};
  }
  friend ScaledInt operator-(ScaledInt a, ScaledInt b) {
    require_same_scale(a, b);
    return {checked_sub(a.raw, b.raw), a.scale};
  }
  friend bool operator==(ScaledInt a, ScaledInt b) {
    require_same_scale(a, b);
    return a.raw == b.raw;
  }
  friend std::strong_ordering operator<=>(ScaledInt a, ScaledInt b) {
    require_same_scale(a, b);
    return a.raw <=> b.raw;
  }

  static void require_same_scale(ScaledInt a, ScaledInt b) {
    if (a.scale != b.scale)
      throw std::invalid_argument("mixed scales: " + std::to_string(a.scale) + " vs " +
                                  std::to_string(b.scale));
  }
};

}  // namespace dynds
