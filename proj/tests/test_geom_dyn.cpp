#include <random>

#include "doctest.h"
#include "dynds/semionline.hpp"
#include "support.hpp"

using namespace dynds;
using testing_support::random_point;
using testing_support::uniform;

namespace {

std::vector<SemiOnlineOp> random_trace(std::mt19937_64& rng, size_t ops, int64_t span) {
  std::vector<SemiOnlineOp> trace;
  std::vector<size_t> live;
  for (size_t i = 0; i < ops; ++i) {
    const int64_t roll = uniform(rng, 0, 9);
    if (roll < 4 || live.empty()) {
      SemiOnlineOp op;
      op.kind = SemiOnlineOp::Kind::insert;
      op.element = random_point(rng, 3, 0, span);
      live.push_back(trace.size());
      trace.push_back(op);
    } else if (roll < 7) {
      const auto pick = static_cast<size_t>(uniform(rng, 0, static_cast<int64_t>(live.size()) - 1));
      trace[live[pick]].death = trace.size();
      live.erase(live.begin() + static_cast<std::ptrdiff_t>(pick));
      trace.push_back({SemiOnlineOp::Kind::erase, {}, {}});
    } else {
      trace.push_back({SemiOnlineOp::Kind::query, {}, {}});
    }
  }
  return trace;
}

std::vector<int64_t> replay(const std::vector<SemiOnlineOp>& trace) {
  std::vector<int64_t> out;
  std::vector<std::pair<size_t, Point>> live;
  for (size_t i = 0; i < trace.size(); ++i) {
    const auto& op = trace[i];
    if (op.kind == SemiOnlineOp::Kind::insert) live.push_back({op.death.value_or(SIZE_MAX), op.element});
    if (op.kind == SemiOnlineOp::Kind::erase)
      std::erase_if(live, [&](const auto& e) { return e.first == i; });
    if (op.kind == SemiOnlineOp::Kind::query) {
      std::vector<Point> pts;
      for (const auto& e : live) pts.push_back(e.second);
      out.push_back(skyline_oracle(pts));
    }
  }
  return out;
}

// Inclusion-exclusion over every subset of cubes [c - s, c].
int64_t inclusion_exclusion(const std::vector<Point>& corners, int64_t side, int dim) {
  int64_t total = 0;
  const size_t n = corners.size();
  for (size_t mask = 1; mask < (size_t{1} << n); ++mask) {
    int64_t vol = 1;
    for (int a = 0; a < dim; ++a) {
      int64_t lo = std::numeric_limits<int64_t>::min(), hi = std::numeric_limits<int64_t>::max();
      for (size_t i = 0; i < n; ++i)
        if (mask >> i & 1) {
          lo = std::max(lo, corners[i].raw[a] - side);
          hi = std::min(hi, corners[i].raw[a]);
        }
      vol *= std::max<int64_t>(0, hi - lo);
    }
    total += (__builtin_popcountll(mask) % 2 ? 1 : -1) * vol;
  }
  return total;
}

}  // namespace

TEST_CASE("skyline oracle examples") {
  CHECK(skyline_oracle({Point{0, 0, 0}}) == 1);
  CHECK(skyline_oracle({Point{1, 0, 0}, Point{0, 1, 0}, Point{0, 0, 1}}) == 3);
  CHECK(skyline_oracle({Point{0, 0, 0}, Point{1, 1, 1}}) == 1);
  CHECK(skyline_oracle({Point{1, 1, 1}, Point{1, 1, 1}}) == 0);
  CHECK(skyline_oracle({}) == 0);
}

TEST_CASE("skyline block query") {
  Skyline3DBlock blk;
  blk.preprocess({Point{0, 0, 0}});
  CHECK(blk.block_query({}) == 1);
  CHECK(blk.block_query({Point{1, 1, 1}}) == 1);
  CHECK(blk.block_query({Point{0, 0, 0}}) == 0);
  CHECK_THROWS(blk.block_query({Point{0, 0}}));
}

TEST_CASE("skyline block query matches the oracle on random splits") {
  std::mt19937_64 rng(41);
  for (int round = 0; round < 200; ++round) {
    const int64_t span = round % 2 ? 6 : 40;
    std::vector<Point> core, buffer;
    for (int i = 0; i < 60; ++i) core.push_back(random_point(rng, 3, 0, span));
    for (int i = 0; i < 12; ++i) buffer.push_back(random_point(rng, 3, 0, span));
    Skyline3DBlock blk;
    blk.preprocess(core);
    CHECK(blk.core_skyline() == skyline_oracle(core));
    std::vector<Point> all = core;
    all.insert(all.end(), buffer.begin(), buffer.end());
    CHECK(blk.block_query(buffer) == skyline_oracle(all));
  }
}

TEST_CASE("engine with a single window and with unit windows") {
  std::mt19937_64 rng(5);
  std::vector<SemiOnlineOp> inserts_only;
  for (int i = 0; i < 40; ++i) {
    if (i % 3 == 2)
      inserts_only.push_back({SemiOnlineOp::Kind::query, {}, {}});
    else
      inserts_only.push_back({SemiOnlineOp::Kind::insert, random_point(rng, 3, 0, 9), std::nullopt});
  }
  Skyline3DBlock blk;
  CHECK(semionline_run(blk, inserts_only, 27) == replay(inserts_only));
  CHECK(semionline_run(blk, inserts_only, 1) == replay(inserts_only));
}

TEST_CASE("engine matches replay for several block sizes") {
  std::mt19937_64 rng(13);
  for (int round = 0; round < 60; ++round) {
    const auto trace = random_trace(rng, 300, round % 2 ? 5 : 30);
    const auto want = replay(trace);
    for (std::optional<size_t> b : {std::optional<size_t>(1), std::optional<size_t>(), std::optional<size_t>(300)}) {
      Skyline3DBlock blk;
      SemiOnlineStats stats;
      CHECK(semionline_run(blk, trace, b, &stats) == want);
      CHECK(stats.max_buffer <= 2 * stats.block_size);
      OracleBlock ob;
      CHECK(semionline_run(ob, trace, b) == want);
    }
  }
}

TEST_CASE("engine rejects contract violations with the op index") {
  std::vector<SemiOnlineOp> bad{{SemiOnlineOp::Kind::insert, Point{0, 0, 0}, 0}};
  Skyline3DBlock blk;
  CHECK_THROWS_AS(semionline_run(blk, bad), OpError);
  std::vector<SemiOnlineOp> orphan{{SemiOnlineOp::Kind::query, {}, {}}, {SemiOnlineOp::Kind::erase, {}, {}}};
  try {
    semionline_run(blk, orphan);
    FAIL("expected an error");
  } catch (const OpError& e) {
    CHECK(e.index() == 1);
  }
  CHECK(default_block_size(10000, 1.0, 1.0) == 100);
}

TEST_CASE("klee oracle examples") {
  CHECK(klee_unit_oracle({Point{1, 1, 1}}, 1, 3, 1).raw == 1);
  // [0,1]^3 and [0.5,1.5] x [0,1]^2 at scale 2: volume 3/2 = 12 / 2^3.
  const Volume v = klee_unit_oracle({Point({2, 2, 2}, 2), Point({3, 2, 2}, 2)}, 2, 3, 2);
  CHECK(v.raw == 12);
  CHECK(v.scale == 2);
  CHECK(klee_unit_oracle({}, 1, 2, 1).raw == 0);
  CHECK(klee_unit_oracle({Point{0, 0}, Point{5, 5}, Point{9, 0}}, 1, 2, 1).raw == 3);
  CHECK_THROWS_AS(klee_unit_oracle({Point{0, 0}, Point{5, 5}}, 1, 2, 1, 4), std::length_error);
}

TEST_CASE("klee oracle equals inclusion-exclusion and is monotone") {
  std::mt19937_64 rng(19);
  for (int round = 0; round < 300; ++round) {
    const int dim = static_cast<int>(uniform(rng, 1, 3));
    const int64_t side = uniform(rng, 1, 4);
    std::vector<Point> corners;
    const int n = static_cast<int>(uniform(rng, 1, 8));
    int64_t prev = 0;
    for (int i = 0; i < n; ++i) {
      corners.push_back(random_point(rng, dim, 0, 8));
      const int64_t vol = klee_unit_oracle(corners, side, dim, 1).raw;
      CHECK(vol == inclusion_exclusion(corners, side, dim));
      CHECK(vol >= prev);
      prev = vol;
    }
  }
}

TEST_CASE("halfspace system examples") {
  HalfspaceSystem sys(1, 2);
  CHECK_THROWS(sys.query_min());
  sys.insert_point(Point({0}, 2));
  CHECK(sys.query_min() == 0);
  HalfspaceSystem two(1, 2);
  two.insert_point(Point({2}, 2));
  two.insert_halfspace({{1}, 1, true});    // x < 0.5
  two.insert_halfspace({{-1}, -3, true});  // x > 1.5
  CHECK(two.query_min() == 0);
  two.insert_halfspace({{1}, 2, false});   // x <= 1
  CHECK(two.query_min() == 1);
  CHECK_THROWS(two.erase_halfspace({{1}, 7, true}));
  CHECK_THROWS(two.erase_point(Point({4}, 2)));
}

TEST_CASE("halfspace system matches recount and is translation invariant") {
  std::mt19937_64 rng(23);
  for (int round = 0; round < 20; ++round) {
    HalfspaceSystem sys(3, 2), shifted(3, 2);
    std::vector<Halfspace> hs;
    std::vector<Point> pts;
    const std::array<int64_t, 3> t{3, -2, 5};
    auto shift_h = [&](Halfspace h) {
      for (int i = 0; i < 3; ++i) h.offset_raw += h.normal[i] * t[i];
      return h;
    };
    auto shift_p = [&](Point p) {
      for (int i = 0; i < 3; ++i) p.raw[i] += t[i];
      return p;
    };
    for (int step = 0; step < 200; ++step) {
      const int64_t roll = uniform(rng, 0, 9);
      if (roll < 3) {
        Halfspace h{{uniform(rng, -2, 2), uniform(rng, -2, 2), uniform(rng, -2, 2)}, uniform(rng, -10, 10),
                    uniform(rng, 0, 1) == 1};
        sys.insert_halfspace(h);
        shifted.insert_halfspace(shift_h(h));
        hs.push_back(h);
      } else if (roll < 5 && !hs.empty()) {
        const auto i = static_cast<size_t>(uniform(rng, 0, static_cast<int64_t>(hs.size()) - 1));
        sys.erase_halfspace(hs[i]);
        shifted.erase_halfspace(shift_h(hs[i]));
        hs.erase(hs.begin() + static_cast<std::ptrdiff_t>(i));
      } else if (roll < 7) {
        Point p = random_point(rng, 3, -6, 6);
        p.scale = 2;
        sys.insert_point(p);
        shifted.insert_point(shift_p(p));
        pts.push_back(p);
      } else if (roll < 8 && !pts.empty()) {
        const auto i = static_cast<size_t>(uniform(rng, 0, static_cast<int64_t>(pts.size()) - 1));
        sys.erase_point(pts[i]);
        shifted.erase_point(shift_p(pts[i]));
        pts.erase(pts.begin() + static_cast<std::ptrdiff_t>(i));
      } else if (!pts.empty()) {
        CHECK(sys.query_min() == halfspace_min_oracle(hs, pts));
        CHECK(shifted.query_min() == sys.query_min());
      }
    }
  }
}
