#include "dynds/orthant_union.hpp"

#include <algorithm>
#include <iterator>
#include <map>
#include <optional>
#include <stdexcept>

namespace dynds {

namespace {

struct Step {
  std::optional<int64_t> x_low;  // nullopt: unbounded below
  int64_t y;
  int64_t z_created;
};

}  // namespace

std::vector<Box> OrthantUnion3D::decompose(VisitCounter* counter) const {
  std::vector<Box> out;
  if (corners.empty()) return out;
  const int64_t scale = corners.front().scale;
  for (const Point& p : corners) {
    if (p.dim != 3) throw std::invalid_argument("orthant union corners must be 3D");
    if (p.scale != scale) throw std::invalid_argument("orthant union corners have mixed scales");
  }
  std::vector<const Point*> order;
  order.reserve(corners.size());
  for (const Point& p : corners) order.push_back(&p);
  std::sort(order.begin(), order.end(),
            [](const Point* a, const Point* b) { return a->raw[2] > b->raw[2]; });

  auto tick = [&](uint64_t n = 1) {
    if (counter) counter->add(n);
  };

  auto emit = [&](int64_t x, const Step& s, std::optional<int64_t> z_end) {
    if (z_end && *z_end >= s.z_created) return;
    Box b(3, scale);
    b.set(0, s.x_low ? Bound::at(*s.x_low, false) : Bound::neg_inf(), Bound::at(x));
    b.set(1, Bound::neg_inf(), Bound::at(s.y));
    b.set(2, z_end ? Bound::at(*z_end, false) : Bound::neg_inf(), Bound::at(s.z_created));
    out.push_back(b);
  };

  // Keyed by the step's right x; y strictly decreases with x.
  std::map<int64_t, Step> stairs;
  for (const Point* p : order) {
    const int64_t x = p->raw[0], y = p->raw[1], z = p->raw[2];
    tick();
    auto it = stairs.lower_bound(x);
    if (it != stairs.end() && it->second.y >= y) continue;  // already covered
    // Steps with right end <= x and y <= y die.
    std::optional<int64_t> x_low;
    auto first = it;
    while (first != stairs.begin()) {
      auto prev = std::prev(first);
      if (prev->second.y > y) break;
      first = prev;
    }
    if (first != stairs.begin()) x_low = std::prev(first)->first;
    for (auto dead = first; dead != it; ++dead) {
      tick();
      emit(dead->first, dead->second, z);
    }
    if (it != stairs.end() && it->first == x) {
      tick();
      emit(it->first, it->second, z);
      ++it;
    }
    stairs.erase(first, it);
    // The successor's lower x changes.
    if (it != stairs.end()) {
      tick();
      emit(it->first, it->second, z);
      it->second.x_low = x;
      it->second.z_created = z;
    }
    stairs.emplace(x, Step{x_low, y, z});
  }
  for (const auto& [x, s] : stairs) {
    tick();
    emit(x, s, std::nullopt);
  }
  return out;
}

}  // namespace dynds
