#include "dynds/geometry.hpp"

#include <algorithm>
#include <string>

namespace dynds {

Point::Point(std::initializer_list<int64_t> raw_coords, int64_t scale_value) {
  if (raw_coords.size() < 1 || raw_coords.size() > kMaxDim)
    throw std::invalid_argument("point dimension out of range");
  if (scale_value <= 0) throw std::invalid_argument("scale must be positive");
  dim = static_cast<int>(raw_coords.size());
  scale = scale_value;
  std::copy(raw_coords.begin(), raw_coords.end(), raw.begin());
}

Point Point::from_raw(const std::vector<int64_t>& raw_coords, int64_t scale_value) {
  if (raw_coords.empty() || raw_coords.size() > kMaxDim)
    throw std::invalid_argument("point dimension out of range");
  if (scale_value <= 0) throw std::invalid_argument("scale must be positive");
  Point p;
  p.dim = static_cast<int>(raw_coords.size());
  p.scale = scale_value;
  std::copy(raw_coords.begin(), raw_coords.end(), p.raw.begin());
  return p;
}

bool operator==(const Point& a, const Point& b) {
  if (a.dim != b.dim || a.scale != b.scale) return false;
  return std::equal(a.raw.begin(), a.raw.begin() + a.dim, b.raw.begin());
}

bool operator<(const Point& a, const Point& b) {
  if (a.dim != b.dim) return a.dim < b.dim;
  if (a.scale != b.scale) return a.scale < b.scale;
  return std::lexicographical_compare(a.raw.begin(), a.raw.begin() + a.dim, b.raw.begin(),
                                      b.raw.begin() + b.dim);
}

std::ostream& operator<<(std::ostream& os, const Point& p) {
  os << '(';
  for (int i = 0; i < p.dim; ++i) os << (i ? "," : "") << p.raw[i];
  os << ')';
  if (p.scale != 1) os << '/' << p.scale;
  return os;
}

Box::Box(int dim, int64_t scale) : dim_(dim), scale_(scale) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("box dimension out of range");
  if (scale <= 0) throw std::invalid_argument("scale must be positive");
  for (int i = 0; i < dim; ++i) {
    lo_[i] = Bound::neg_inf();
    hi_[i] = Bound::pos_inf();
  }
}

Box Box::closed(const std::vector<int64_t>& lo, const std::vector<int64_t>& hi, int64_t scale) {
  if (lo.size() != hi.size()) throw std::invalid_argument("box bound arity mismatch");
  Box b(static_cast<int>(lo.size()), scale);
  for (size_t i = 0; i < lo.size(); ++i) b.set(static_cast<int>(i), Bound::at(lo[i]), Bound::at(hi[i]));
  return b;
}

void Box::set(int axis, Bound lower, Bound upper) {
  if (axis < 0 || axis >= dim_) throw std::out_of_range("box axis out of range");
  if (lower.kind == Bound::Kind::pos_inf || upper.kind == Bound::Kind::neg_inf)
    throw std::invalid_argument("box side has reversed infinity");
  if (lower.kind != Bound::Kind::finite) lower.closed = false;
  if (upper.kind != Bound::Kind::finite) upper.closed = false;
  if (lower.kind == Bound::Kind::finite && upper.kind == Bound::Kind::finite) {
    if (lower.raw > upper.raw) throw std::invalid_argument("box lower bound exceeds upper bound");
    if (lower.raw == upper.raw && !(lower.closed && upper.closed))
      throw std::invalid_argument("degenerate box side must be closed on both ends");
  }
  lo_[axis] = lower;
  hi_[axis] = upper;
}

bool Box::contains(const Point& p) const {
  if (p.dim != dim_) throw std::invalid_argument("dimension mismatch between box and point");
  if (p.scale != scale_) throw std::invalid_argument("scale mismatch between box and point");
  const RangeSet r = ranges();
  for (int i = 0; i < dim_; ++i)
    if (!r[i].contains(p.raw[i])) return false;
  return true;
}

RangeSet Box::ranges() const {
  RangeSet out{};
  for (int i = 0; i < dim_; ++i) {
    if (lo_[i].kind == Bound::Kind::finite)
      out[i].lo = lo_[i].closed ? lo_[i].raw : checked_add(lo_[i].raw, 1);
    if (hi_[i].kind == Bound::Kind::finite)
      out[i].hi = hi_[i].closed ? hi_[i].raw : checked_sub(hi_[i].raw, 1);
  }
  return out;
}

void require_compatible(const Point& a, const Point& b) {
  if (a.dim != b.dim)
    throw std::invalid_argument("dimension mismatch: " + std::to_string(a.dim) + " vs " +
                                std::to_string(b.dim));
  if (a.scale != b.scale)
    throw std::invalid_argument("scale mismatch: " + std::to_string(a.scale) + " vs " +
                                std::to_string(b.scale));
}

bool dominates(const Point& p, const Point& q) {
  require_compatible(p, q);
  bool equal = true;
  for (int i = 0; i < p.dim; ++i) {
    if (q.raw[i] < p.raw[i]) return false;
    if (q.raw[i] != p.raw[i]) equal = false;
  }
  return !equal;
}

}  // namespace dynds
