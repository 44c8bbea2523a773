#pragma once

#include <array>
#include <cstdint>
#include <limits>
#include <optional>
#include <ostream>
#include <stdexcept>
#include <vector>

#include "dynds/scaled.hpp"

namespace dynds {

inline constexpr int kMaxDim = 8;

/// A point with up to kMaxDim exact coordinates sharing one scale.
struct Point {
  int dim = 0;
  int64_t scale = 1;
  std::array<int64_t, kMaxDim> raw{};
  std::optional<uint64_t> payload;

  Point() = default;
  Point(std::initializer_list<int64_t> raw_coords, int64_t scale_value = 1);
  static Point from_raw(const std::vector<int64_t>& raw_coords, int64_t scale_value = 1);

  ScaledInt coord(int axis) const { return ScaledInt(raw[axis], scale); }

  // Payload does not take part in equality or ordering.
  friend bool operator==(const Point& a, const Point& b);
  friend bool operator<(const Point& a, const Point& b);
};

std::ostream& operator<<(std::ostream& os, const Point& p);

/// One end of a box side. Infinite ends are always open.
struct Bound {
  enum class Kind : uint8_t { finite, neg_inf, pos_inf };
  Kind kind = Kind::finite;
  int64_t raw = 0;
  bool closed = true;

  static Bound at(int64_t raw_value, bool is_closed = true) {
    return {Kind::finite, raw_value, is_closed};
  }
  static Bound neg_inf() { return {Kind::neg_inf, 0, false}; }
  static Bound pos_inf() { return {Kind::pos_inf, 0, false}; }
};

/// Inclusive integer range over raw values.
struct IntRange {
  int64_t lo = std::numeric_limits<int64_t>::min();
  int64_t hi = std::numeric_limits<int64_t>::max();
  bool contains(int64_t v) const { return lo <= v && v <= hi; }
};

using RangeSet = std::array<IntRange, kMaxDim>;

/// Axis-aligned box whose sides may be open, closed or unbounded.
class Box {
 public:
  Box() = default;
  Box(int dim, int64_t scale);

  /// Closed box [lo_i, hi_i] on every axis (raw values).
  static Box closed(const std::vector<int64_t>& lo, const std::vector<int64_t>& hi,
                    int64_t scale = 1);

  void set(int axis, Bound lower, Bound upper);

  int dim() const { return dim_; }
  int64_t scale() const { return scale_; }
  const Bound& lower(int axis) const { return lo_[axis]; }
  const Bound& upper(int axis) const { return hi_[axis]; }

  bool contains(const Point& p) const;

  /// Raw values are integral, so open ends tighten by one unit.
  RangeSet ranges() const;

 private:
  int dim_ = 0;
  int64_t scale_ = 1;
  std::array<Bound, kMaxDim> lo_{};
  std::array<Bound, kMaxDim> hi_{};
};

/// True iff q dominates p: q_i >= p_i on every axis and q != p.
bool dominates(const Point& p, const Point& q);

void require_compatible(const Point& a, const Point& b);

}  // namespace dynds
