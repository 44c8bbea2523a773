#include <cmath>
#include <random>
#include <set>

#include "doctest.h"
#include "dynds/tensor.hpp"
#include "support.hpp"

using namespace dynds;
using testing_support::uniform;

namespace {

// Prefix sum at x by summing every dominated entry directly.
int64_t direct_prefix(const Tensor& t, const Index& x) {
  int64_t total = 0;
  for (size_t i = 0; i < t.cells(); ++i) {
    const Index y = t.unflat(i);
    bool below = true;
    for (size_t a = 0; a < y.size(); ++a) below = below && y[a] <= x[a];
    if (below) total += t.at_flat(i);
  }
  return total;
}

bool direct_has_zero(const Tensor& t) {
  for (size_t i = 0; i < t.cells(); ++i)
    if (direct_prefix(t, t.unflat(i)) == 0) return true;
  return false;
}

Tensor random_tensor(std::mt19937_64& rng, int dim, int64_t n, int64_t lo, int64_t hi) {
  Tensor t(dim, n);
  for (size_t i = 0; i < t.cells(); ++i) t.at_flat(i) = uniform(rng, lo, hi);
  return t;
}

Index random_index(std::mt19937_64& rng, int dim, int64_t n) {
  Index x(static_cast<size_t>(dim));
  for (auto& v : x) v = uniform(rng, 1, n);
  return x;
}

}  // namespace

TEST_CASE("tensor indexing and guard") {
  Tensor t(2, 3);
  t[{2, 3}] = 7;
  CHECK(t.at_flat(t.flat({2, 3})) == 7);
  CHECK(t.unflat(t.flat({2, 3})) == Index{2, 3});
  CHECK_THROWS(t[{4, 1}]);
  CHECK_THROWS_AS(Tensor(4, 1000), std::length_error);
}

TEST_CASE("zero tensor has a zero prefix") {
  for (int d = 1; d <= 3; ++d) {
    LangermanDS ds(Tensor(d, 4));
    CHECK(ds.query());
  }
}

TEST_CASE("one-dimensional worked example") {
  Tensor t(1, 4);
  t[{1}] = 1;
  t[{2}] = -1;
  t[{3}] = 0;
  t[{4}] = 5;
  LangermanDS ds(t, 2);
  CHECK(ds.prefix({1}) == 1);
  CHECK(ds.prefix({2}) == 0);
  CHECK(ds.prefix({3}) == 0);
  CHECK(ds.prefix({4}) == 5);
  CHECK(ds.anchor({1}) == 0);
  CHECK(ds.anchor({2}) == 5);
  ds.set({1}, 2);
  CHECK(ds.prefix({1}) == 2);
  CHECK(ds.prefix({2}) == 1);
  CHECK(ds.prefix({3}) == 1);
  CHECK(ds.prefix({4}) == 6);
  CHECK_FALSE(ds.query());
  ds.set({1}, 2);
  CHECK(ds.prefix({4}) == 6);
  ds.check_invariants();
  CHECK_THROWS(ds.set({5}, 1));
}

TEST_CASE("all-ones tensor has no zero prefix") {
  Tensor t(2, 5);
  for (size_t i = 0; i < t.cells(); ++i) t.at_flat(i) = 1;
  CHECK_FALSE(LangermanDS(t).query());
}

TEST_CASE("prefix sums reconstruct from the structures") {
  std::mt19937_64 rng(1);
  const Tensor t = random_tensor(rng, 3, 3, -3, 3);
  LangermanDS ds(t, 1);
  for (size_t i = 0; i < t.cells(); ++i) CHECK(ds.prefix(t.unflat(i)) == direct_prefix(t, t.unflat(i)));
}

TEST_CASE("random updates keep the structures consistent") {
  std::mt19937_64 rng(2);
  for (int d = 1; d <= 2; ++d) {
    for (int64_t n : {7, 9, 12}) {
      Tensor ref = random_tensor(rng, d, n, -2, 2);
      LangermanDS ds(ref, d == 2 && n == 9 ? std::optional<int64_t>(3) : std::nullopt);
      for (int step = 0; step < 200; ++step) {
        const Index z = random_index(rng, d, n);
        const int64_t v = uniform(rng, -2, 2);
        ds.set(z, v);
        ref[z] = v;
        for (size_t i = 0; i < ref.cells(); ++i) REQUIRE(ds.prefix(ref.unflat(i)) == direct_prefix(ref, ref.unflat(i)));
        CHECK(ds.query() == direct_has_zero(ref));
      }
      ds.check_invariants();
    }
  }
}

TEST_CASE("random tensors agree with the scan") {
  std::mt19937_64 rng(3);
  for (int round = 0; round < 500; ++round) {
    const int d = 1 + round % 2;
    const int64_t n = uniform(rng, 1, d == 1 ? 12 : 6);
    const Tensor t = random_tensor(rng, d, n, -3, 3);
    const bool want = direct_has_zero(t);
    CHECK(LangermanDS(t).query() == want);
    CHECK(LangermanOracle(t).query() == want);
  }
}

TEST_CASE("update cost tracks n^(d^2/(d+1))") {
  std::mt19937_64 rng(4);
  for (int64_t n : {4, 8, 16, 32, 64}) {
    auto counter = make_counter();
    LangermanDS ds(Tensor(1, n), std::nullopt, counter);
    counter->reset();
    for (int i = 0; i < 50; ++i) ds.set(random_index(rng, 1, n), uniform(rng, -3, 3));
    const double per = static_cast<double>(counter->visits) / 50.0;
    CHECK(per <= 8.0 * std::sqrt(static_cast<double>(n)) * std::log2(static_cast<double>(n) + 1));
  }
  for (int64_t n : {9, 27}) {
    auto counter = make_counter();
    LangermanDS ds(Tensor(2, n), std::nullopt, counter);
    counter->reset();
    for (int i = 0; i < 20; ++i) ds.set(random_index(rng, 2, n), uniform(rng, -3, 3));
    const double per = static_cast<double>(counter->visits) / 20.0;
    CHECK(per <= 8.0 * std::pow(static_cast<double>(n), 4.0 / 3.0) * std::pow(std::log2(static_cast<double>(n)), 2));
  }
}

TEST_CASE("erickson variants") {
  std::mt19937_64 rng(5);
  Tensor t = random_tensor(rng, 3, 5, -4, 4);
  int64_t initial = std::numeric_limits<int64_t>::min();
  for (size_t i = 0; i < t.cells(); ++i) initial = std::max(initial, t.at_flat(i));
  EricksonLazy lazy(t);
  EricksonEager eager(t);
  for (int axis = 1; axis <= 3; ++axis)
    for (int64_t x = 1; x <= 5; ++x) {
      lazy.increment(axis, x);
      eager.increment(axis, x);
    }
  CHECK(lazy.query_max() == initial + 3);
  CHECK(eager.query_max() == initial + 3);
  for (int step = 0; step < 300; ++step) {
    const int axis = static_cast<int>(uniform(rng, 1, 3));
    const int64_t x = uniform(rng, 1, 5);
    lazy.increment(axis, x);
    eager.increment(axis, x);
    CHECK(lazy.query_max() == eager.query_max());
  }
  CHECK_THROWS(lazy.increment(4, 1));
  CHECK_THROWS(eager.increment(1, 6));
}

TEST_CASE("erickson shift by a constant") {
  std::mt19937_64 rng(6);
  Tensor t = random_tensor(rng, 2, 4, -5, 5);
  Tensor shifted = t;
  for (size_t i = 0; i < t.cells(); ++i) shifted.at_flat(i) += 7;
  EricksonLazy a(t), b(shifted);
  EricksonEager c(shifted);
  for (int step = 0; step < 50; ++step) {
    const int axis = static_cast<int>(uniform(rng, 1, 2));
    const int64_t x = uniform(rng, 1, 4);
    a.increment(axis, x);
    b.increment(axis, x);
    c.increment(axis, x);
    CHECK(b.query_max() == a.query_max() + 7);
    CHECK(c.query_max() == a.query_max() + 7);
  }
}

TEST_CASE("hyperclique examples") {
  HypercliqueLazy lazy(4, 2, 0);
  HypercliqueCounting counting(4, 2, 0);
  CHECK_FALSE(lazy.query_s());
  CHECK_FALSE(counting.query_s());
  for (auto e : std::vector<Hyperedge>{{0, 1}, {0, 2}, {1, 2}}) {
    lazy.insert(e);
    counting.insert(e);
  }
  CHECK(lazy.query_s());
  CHECK(counting.query_s());
  CHECK(counting.count(0) == 1);
  CHECK_THROWS(lazy.insert({2, 1}));
  CHECK_THROWS(counting.erase({1, 3}));
  CHECK_THROWS(lazy.insert({1, 1}));
}

TEST_CASE("hyperclique variants agree on random graphs") {
  std::mt19937_64 rng(7);
  for (int round = 0; round < 10; ++round) {
    HypercliqueLazy lazy(8, 3, 0);
    HypercliqueCounting counting(8, 3, 0);
    std::vector<Hyperedge> present;
    for (int step = 0; step < 150; ++step) {
      if (present.empty() || uniform(rng, 0, 2) > 0) {
        Hyperedge e;
        while (e.size() < 3) {
          const int v = static_cast<int>(uniform(rng, 0, 7));
          if (std::find(e.begin(), e.end(), v) == e.end()) e.push_back(v);
        }
        std::sort(e.begin(), e.end());
        if (std::find(present.begin(), present.end(), e) != present.end()) continue;
        lazy.insert(e);
        counting.insert(e);
        present.push_back(e);
      } else {
        const auto i = static_cast<size_t>(uniform(rng, 0, static_cast<int64_t>(present.size()) - 1));
        const int64_t before = counting.count(0);
        lazy.erase(present[i]);
        counting.erase(present[i]);
        CHECK(counting.count(0) <= before);
        present.erase(present.begin() + static_cast<std::ptrdiff_t>(i));
      }
      if (step % 3 == 0) CHECK(lazy.query_s() == counting.query_s());
    }
  }
}

TEST_CASE("OuMv brute force") {
  OuMvInstance empty{2, 3, {}, {{{1}, {1}}}};
  CHECK(oumv_bruteforce(empty) == std::vector<bool>{false});
  OuMvInstance one{2, 2, {{1, 1}}, {{{1}, {1}}, {{2}, {1}}}};
  CHECK(oumv_bruteforce(one) == std::vector<bool>{true, false});
  OuMvInstance bad{2, 2, {{1, 3}}, {}};
  CHECK_THROWS(bad.validate());
}

TEST_CASE("OuMv brute force equals product enumeration") {
  std::mt19937_64 rng(8);
  for (int round = 0; round < 50; ++round) {
    OuMvInstance inst{3, 6, {}, {}};
    std::set<Tuple> m;
    for (int i = 0; i < 20; ++i) m.insert({uniform(rng, 1, 6), uniform(rng, 1, 6), uniform(rng, 1, 6)});
    inst.m.assign(m.begin(), m.end());
    for (int q = 0; q < 5; ++q) {
      SubsetQuery sq(3);
      for (auto& u : sq)
        for (int64_t v = 1; v <= 6; ++v)
          if (uniform(rng, 0, 2) == 0) u.push_back(v);
      inst.queries.push_back(sq);
    }
    const auto got = oumv_bruteforce(inst);
    for (size_t q = 0; q < inst.queries.size(); ++q) {
      bool hit = false;
      for (int64_t a : inst.queries[q][0])
        for (int64_t b : inst.queries[q][1])
          for (int64_t c : inst.queries[q][2]) hit = hit || m.count({a, b, c});
      CHECK(got[q] == hit);
    }
  }
}

TEST_CASE("batched driver examples") {
  OuMvInstance inst{2, 4, {{3, 4}}, {{{3}, {4}}, {{1, 2}, {4}}}};
  auto factory = [] { return std::make_unique<BruteForceSolver>(); };
  BatchedStats stats;
  CHECK(oumv_batched_driver(inst, 2, 1, factory, &stats) == std::vector<bool>{true, false});
  CHECK(stats.sub_tensors == 4);
  CHECK(oumv_batched_driver(inst, 4, 5, factory) == oumv_bruteforce(inst));
  CHECK_THROWS(oumv_batched_driver(inst, 5, 1, factory));
  CHECK_THROWS(oumv_batched_driver(inst, 2, 0, factory));
}

TEST_CASE("batched driver matches brute force for every split") {
  std::mt19937_64 rng(91);
  auto factory = [] { return std::make_unique<BruteForceSolver>(); };
  for (int rep = 0; rep < 100; ++rep) {
    OuMvInstance inst;
    inst.k = static_cast<int>(uniform(rng, 1, 3));
    inst.n = uniform(rng, 1, inst.k == 3 ? 5 : 8);
    std::set<Tuple> m;
    for (int i = 0; i < 12; ++i) {
      Tuple t;
      for (int a = 0; a < inst.k; ++a) t.push_back(uniform(rng, 1, inst.n));
      m.insert(t);
    }
    inst.m.assign(m.begin(), m.end());
    const int q = static_cast<int>(uniform(rng, 1, 5));
    for (int i = 0; i < q; ++i) {
      SubsetQuery sq;
      for (int a = 0; a < inst.k; ++a) {
        std::vector<int64_t> s;
        for (int64_t x = 1; x <= inst.n; ++x)
          if (uniform(rng, 0, 1)) s.push_back(x);
        sq.push_back(s);
      }
      inst.queries.push_back(sq);
    }
    const auto want = oumv_bruteforce(inst);
    for (int64_t side = 1; side <= inst.n; ++side)
      for (size_t phase : {size_t{1}, size_t{2}, static_cast<size_t>(q)})
        CHECK(oumv_batched_driver(inst, side, phase, factory) == want);
  }
}
