#pragma once

#include <cstdint>
#include <random>
#include <vector>

#include "dynds/geometry.hpp"

namespace testing_support {

inline int64_t uniform(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  return std::uniform_int_distribution<int64_t>(lo, hi)(rng);
}

inline dynds::Box random_box(std::mt19937_64& rng, int dim, int64_t lo, int64_t hi) {
  std::vector<int64_t> a(dim), b(dim);
  for (int i = 0; i < dim; ++i) {
    int64_t u = uniform(rng, lo, hi), v = uniform(rng, lo, hi);
    if (u > v) std::swap(u, v);
    a[i] = u;
    b[i] = v;
  }
  return dynds::Box::closed(a, b);
}

inline dynds::Point random_point(std::mt19937_64& rng, int dim, int64_t lo, int64_t hi) {
  std::vector<int64_t> c(dim);
  for (auto& v : c) v = uniform(rng, lo, hi);
  return dynds::Point::from_raw(c);
}

}  // namespace testing_support
