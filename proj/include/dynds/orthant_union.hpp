#pragma once

#include <vector>

#include "dynds/counter.hpp"
#include "dynds/geometry.hpp"

namespace dynds {

/// Union of lower orthants Q(p) = (-inf,x] x (-inf,y] x (-inf,z] in 3D.
struct OrthantUnion3D {
  std::vector<Point> corners;

  /// Pairwise disjoint boxes covering the union, at most 2 per corner.
  /// Sweeps z downward over a 2D staircase; each staircase step becomes one
  /// box spanning the z-interval it was alive for.
  std::vector<Box> decompose(VisitCounter* counter = nullptr) const;
};

}  // namespace dynds
