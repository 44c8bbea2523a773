#include <random>

#include "doctest.h"
#include "dynds/colors.hpp"
#include "support.hpp"

using namespace dynds;
using testing_support::random_box;
using testing_support::random_point;
using testing_support::uniform;

namespace {

// Per-color scan, written independently of cc_oracle.
int64_t per_color_scan(const std::vector<Color>& a, const std::set<Color>& on, Interval i1, Interval i2) {
  int64_t total = 0;
  for (Color c : on) {
    bool in1 = false, in2 = false;
    for (size_t i = 0; i < a.size(); ++i) {
      const auto pos = static_cast<int64_t>(i + 1);
      if (a[i] != c) continue;
      in1 = in1 || (i1.l <= pos && pos <= i1.r);
      in2 = in2 || (i2.l <= pos && pos <= i2.r);
    }
    total += in1 && in2;
  }
  return total;
}

Interval random_interval(std::mt19937_64& rng, int64_t m) {
  int64_t l = uniform(rng, 1, m), r = uniform(rng, 1, m);
  if (l > r) std::swap(l, r);
  return {l, r};
}

}  // namespace

TEST_CASE("heavy and light classification") {
  CommonColorsDS twice({1, 1}, {1}, 1);
  CHECK(twice.heavy(1));
  CHECK(twice.quadruple_count() == 0);
  CommonColorsDS once({1, 2}, {1, 2}, 1);
  CHECK(once.quadruple_count() == 2);
  CHECK(once.active_quadruples() == 2);
  CHECK(once.query({1, 1}, {1, 1}) == 1);
  CHECK_THROWS(once.toggle(3, true));
}

TEST_CASE("quadruple counts are squared occurrences") {
  std::mt19937_64 rng(2);
  std::vector<Color> a(60);
  for (auto& c : a) c = uniform(rng, 1, 12);
  CommonColorsDS ds(a, {}, 4);
  std::map<Color, size_t> occ;
  for (Color c : a) ++occ[c];
  size_t expected = 0;
  for (const auto& [c, k] : occ)
    if (k <= 4) expected += k * k;
  CHECK(ds.quadruple_count() == expected);
}

TEST_CASE("small common colors queries") {
  const std::vector<Color> a{1, 2, 1, 2};
  CommonColorsDS ds(a, {1, 2});
  CHECK(ds.query({1, 2}, {3, 4}) == 2);
  ds.toggle(2, false);
  CHECK(ds.query({1, 2}, {3, 4}) == 1);
  ds.toggle(2, true);
  ds.toggle(2, true);
  CHECK(ds.query({1, 2}, {3, 4}) == 2);
  ds.toggle(1, false);
  ds.toggle(2, false);
  CHECK(ds.query({1, 4}, {1, 4}) == 0);
  CHECK_THROWS(ds.query({2, 1}, {1, 1}));
  CHECK_THROWS(ds.query({1, 5}, {1, 1}));
}

TEST_CASE("common colors oracle") {
  const std::vector<Color> a{3, 1, 3, 2};
  CHECK(cc_oracle(a, {}, {1, 4}, {1, 4}) == 0);
  CHECK(cc_oracle(a, {1, 2, 3}, {1, 4}, {1, 4}) == 3);
}

TEST_CASE("random common colors instances at both threshold extremes") {
  std::mt19937_64 rng(31);
  for (int round = 0; round < 100; ++round) {
    const int64_t m = uniform(rng, 1, 100);
    std::vector<Color> a(static_cast<size_t>(m));
    for (auto& c : a) c = uniform(rng, 1, 15);
    std::set<Color> on;
    for (Color c : a)
      if (uniform(rng, 0, 1)) on.insert(c);
    for (int64_t b : {int64_t{2}, m}) {
      CommonColorsDS ds(a, on, b);
      std::set<Color> cur = on;
      for (int step = 0; step < 20; ++step) {
        const Color c = a[static_cast<size_t>(uniform(rng, 0, m - 1))];
        const bool flag = uniform(rng, 0, 1);
        ds.toggle(c, flag);
        if (flag)
          cur.insert(c);
        else
          cur.erase(c);
        const Interval i1 = random_interval(rng, m), i2 = random_interval(rng, m);
        CHECK(ds.query(i1, i2) == per_color_scan(a, cur, i1, i2));
        CHECK(cc_oracle(a, cur, i1, i2) == per_color_scan(a, cur, i1, i2));
      }
      ds.check_invariants();
    }
  }
}

TEST_CASE("document oracle") {
  std::vector<std::vector<Symbol>> docs{{1, 2}, {1}, {2, 2, 1}};
  CHECK(docs_oracle(docs, {false, false, false}, 1, 2) == 0);
  CHECK(docs_oracle(docs, {true, false, false}, 1, 2) == 1);
  CHECK(docs_oracle(docs, {true, true, true}, 1, 2) == 2);
  std::mt19937_64 rng(4);
  for (int round = 0; round < 20; ++round) {
    std::vector<std::vector<Symbol>> ds(50);
    std::vector<bool> on(50);
    for (size_t i = 0; i < 50; ++i) {
      on[i] = uniform(rng, 0, 1);
      for (int j = 0; j < 4; ++j) ds[i].push_back(uniform(rng, 1, 6));
    }
    const Symbol t1 = uniform(rng, 1, 6), t2 = uniform(rng, 1, 6);
    int64_t recount = 0;
    for (size_t i = 0; i < 50; ++i) {
      bool h1 = false, h2 = false;
      for (Symbol s : ds[i]) {
        h1 |= s == t1;
        h2 |= s == t2;
      }
      recount += on[i] && h1 && h2;
    }
    CHECK(docs_oracle(ds, on, t1, t2) == recount);
  }
}

TEST_CASE("color counting across a rebuild") {
  DynColorCountDS ds(100, 3);
  const Box box = Box::closed({0, 0}, {5, 5});
  ds.insert(Point{1, 1}, 1);
  CHECK(ds.query(box) == 1);
  ds.erase(Point{1, 1}, 1);
  CHECK(ds.query(box) == 0);
  ds.insert(Point{2, 2}, 1);
  CHECK(ds.rebuilds() == 1);
  CHECK(ds.dirty_count() == 0);
  CHECK(ds.query(box) == 1);
  ds.insert(Point{3, 3}, 9);
  CHECK(ds.query(box) == 2);
  CHECK_THROWS(ds.erase(Point{7, 7}, 1));
}

TEST_CASE("random color counting traces hit rebuild edges") {
  std::mt19937_64 rng(8);
  for (size_t period : {size_t{1}, size_t{5}, size_t{17}}) {
    for (size_t len : {period - 1, period, period + 1, size_t{400}}) {
      DynColorCountDS ds(400, period);
      std::vector<ColoredPoint> live;
      for (size_t step = 0; step < len; ++step) {
        if (live.empty() || uniform(rng, 0, 2) > 0) {
          ColoredPoint cp{random_point(rng, 2, 0, 10), uniform(rng, 1, 6)};
          ds.insert(cp.point, cp.color);
          live.push_back(cp);
        } else {
          const auto i = static_cast<size_t>(uniform(rng, 0, static_cast<int64_t>(live.size()) - 1));
          ds.erase(live[i].point, live[i].color);
          live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
        }
        CHECK(ds.dirty_count() <= period);
        const Box b = random_box(rng, 2, 0, 10);
        CHECK(ds.query(b) == distinct_color_oracle(live, b));
      }
    }
  }
}
