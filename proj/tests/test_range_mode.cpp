#include <map>
#include <random>

#include "doctest.h"
#include "dynds/range_mode.hpp"
#include "support.hpp"

using namespace dynds;
using testing_support::random_box;
using testing_support::random_point;
using testing_support::uniform;

namespace {

// Independent scan: highest frequency of any label in the box.
int64_t scan_max_freq(const std::vector<LabeledPoint>& pts, const Box& b) {
  std::map<Label, int64_t> f;
  int64_t best = 0;
  for (const auto& lp : pts)
    if (b.contains(lp.point)) best = std::max(best, ++f[lp.label]);
  return best;
}

int64_t scan_label_freq(const std::vector<LabeledPoint>& pts, const Box& b, Label label) {
  int64_t f = 0;
  for (const auto& lp : pts) f += lp.label == label && b.contains(lp.point);
  return f;
}

void run_trace(std::mt19937_64& rng, int dim, int ops, int64_t labels, int64_t span,
               std::optional<int64_t> b_override) {
  DynRangeModeDS ds(dim, static_cast<size_t>(ops), b_override);
  std::vector<LabeledPoint> live;
  for (int step = 0; step < ops; ++step) {
    const int64_t roll = uniform(rng, 0, 9);
    if (roll < 5 || live.empty()) {
      LabeledPoint lp{random_point(rng, dim, 0, span), uniform(rng, 1, labels)};
      ds.insert(lp.point, lp.label);
      live.push_back(lp);
    } else if (roll < 7) {
      const auto i = static_cast<size_t>(uniform(rng, 0, static_cast<int64_t>(live.size()) - 1));
      ds.erase(live[i].point, live[i].label);
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(i));
    } else {
      const Box b = random_box(rng, dim, -1, span + 1);
      const auto got = ds.query(b);
      const int64_t want = scan_max_freq(live, b);
      if (want == 0) {
        CHECK_FALSE(got.has_value());
      } else {
        REQUIRE(got.has_value());
        CHECK(got->freq == want);
        CHECK(scan_label_freq(live, b, got->label) == want);
        CHECK(*got == *mode_oracle(live, b));
      }
    }
    for (const auto& lp : live)
      CHECK((ds.label_count(lp.label) > ds.threshold()) == ds.heavy(lp.label));
  }
  ds.check_invariants();
}

}  // namespace

TEST_CASE("threshold selection") {
  // 2187^(1/3) is just under 13.
  CHECK(DynRangeModeDS(1, 2187).threshold() == 13);
  CHECK(DynRangeModeDS(2, 1).threshold() == 1);
  CHECK(DynRangeModeDS(1, 100, 5).threshold() == 5);
  CHECK(DynRangeModeDS(1, 3125).threshold() == 15);
  CHECK_THROWS(DynRangeModeDS(1, 100, 0));
}

TEST_CASE("empty structure and a small example") {
  DynRangeModeDS ds(1, 10);
  CHECK_FALSE(ds.query(Box::closed({0}, {9})).has_value());
  ds.insert(Point{1}, 2);
  ds.insert(Point{2}, 2);
  ds.insert(Point{3}, 5);
  CHECK(*ds.query(Box::closed({0}, {9})) == ModeAnswer{2, 2});
  CHECK(*ds.query(Box::closed({3}, {9})) == ModeAnswer{5, 1});
  CHECK_THROWS(ds.query(Box::closed({0, 0}, {1, 1})));
}

TEST_CASE("insert then delete restores answers") {
  DynRangeModeDS ds(2, 10);
  ds.insert(Point{1, 1}, 4);
  const auto before = ds.query(Box::closed({0, 0}, {5, 5}));
  ds.insert(Point{2, 2}, 3);
  ds.erase(Point{2, 2}, 3);
  CHECK(ds.query(Box::closed({0, 0}, {5, 5})) == before);
  CHECK_THROWS(ds.erase(Point{2, 2}, 3));
}

TEST_CASE("crossing the threshold moves a label to the heavy set") {
  DynRangeModeDS ds(1, 100, 3);
  for (int64_t i = 0; i < 3; ++i) ds.insert(Point{i}, 7);
  CHECK_FALSE(ds.heavy(7));
  CHECK(ds.box_count(7) == 6);
  ds.insert(Point{10}, 7);
  CHECK(ds.heavy(7));
  CHECK(ds.box_count(7) == 0);
  ds.erase(Point{10}, 7);
  CHECK_FALSE(ds.heavy(7));
  CHECK(ds.box_count(7) == 6);
  ds.check_invariants();
}

TEST_CASE("capacity is enforced") {
  DynRangeModeDS ds(1, 1);
  ds.insert(Point{1}, 1);
  CHECK_THROWS_AS(ds.insert(Point{2}, 1), std::length_error);
}

TEST_CASE("oracles on a small array") {
  std::vector<LabeledPoint> pts{{Point{1}, 1}, {Point{2}, 2}, {Point{3}, 2}, {Point{4}, 3}};
  const Box all = Box::closed({1}, {4});
  CHECK(*mode_oracle(pts, all) == ModeAnswer{2, 2});
  CHECK(*minority_oracle(pts, all) == ModeAnswer{1, 1});
  std::vector<LabeledPoint> distinct{{Point{1}, 4}, {Point{2}, 9}};
  CHECK(mode_oracle(distinct, all)->freq == 1);
  CHECK(minority_oracle(distinct, all)->freq == 1);
  CHECK_FALSE(mode_oracle({}, all).has_value());
  auto batch = batch_dmode_oracle(pts, {all, Box::closed({9}, {9})});
  CHECK(batch[0]->label == 2);
  CHECK_FALSE(batch[1].has_value());
}

TEST_CASE("random traces match the scan in one and two dimensions") {
  std::mt19937_64 rng(101);
  for (int round = 0; round < 40; ++round) run_trace(rng, 1 + round % 2, 300, 20, 50, std::nullopt);
  for (int round = 0; round < 20; ++round) run_trace(rng, 1 + round % 2, 200, 6, 12, 2);
}

TEST_CASE("sequence adapter basics") {
  SequenceAdapter seq(16);
  seq.insert(1, 1);
  seq.insert(2, 2);
  seq.insert(3, 2);
  CHECK(*seq.query(1, 3) == ModeAnswer{2, 2});
  CHECK_THROWS(seq.insert(9, 1));
  CHECK_THROWS(seq.query(2, 1));
  CHECK_THROWS(seq.erase(4));
}

TEST_CASE("front insertion forces re-spacing") {
  SequenceAdapter seq(10000);
  for (int i = 0; i < 10000; ++i) seq.insert(1, 42);
  CHECK(seq.rebuilds() > 0);
  CHECK(*seq.query(1, 10000) == ModeAnswer{42, 10000});
}

TEST_CASE("sequence adapter matches a vector") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 30; ++round) {
    SequenceAdapter seq(500);
    SequenceOracle ref;
    for (int step = 0; step < 500; ++step) {
      const int64_t roll = uniform(rng, 0, 9);
      if (roll < 5 || ref.size() == 0) {
        const auto idx = static_cast<size_t>(uniform(rng, 1, static_cast<int64_t>(ref.size()) + 1));
        const Label v = uniform(rng, 1, 8);
        seq.insert(idx, v);
        ref.insert(idx, v);
      } else if (roll < 7) {
        const auto idx = static_cast<size_t>(uniform(rng, 1, static_cast<int64_t>(ref.size())));
        seq.erase(idx);
        ref.erase(idx);
      } else {
        auto l = static_cast<size_t>(uniform(rng, 1, static_cast<int64_t>(ref.size())));
        auto r = static_cast<size_t>(uniform(rng, 1, static_cast<int64_t>(ref.size())));
        if (l > r) std::swap(l, r);
        const auto got = seq.query(l, r);
        const auto want = ref.mode(l, r);
        REQUIRE(got.has_value());
        CHECK(got->freq == want->freq);
        int64_t f = 0;
        for (size_t i = l; i <= r; ++i) f += ref.values()[i - 1] == got->label;
        CHECK(f == want->freq);
      }
    }
  }
}
