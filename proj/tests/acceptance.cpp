#include <algorithm>
#include <bit>
#include <chrono>
#include <cstdio>
#include <iostream>
#include <limits>
#include <random>
#include <set>
#include <sstream>

#include "dynds/bench.hpp"
#include "dynds/crosscheck.hpp"
#include "dynds/orthant_union.hpp"
#include "dynds/reductions.hpp"
#include "dynds/semionline.hpp"
#include "dynds/tensor.hpp"

using namespace dynds;

namespace {

using Clock = std::chrono::steady_clock;

double seconds_since(Clock::time_point t0) { return std::chrono::duration<double>(Clock::now() - t0).count(); }

struct Outcome {
  bool pass = true;
  std::string detail;
};

void report(int id, const Outcome& o) {
  std::cout << "criterion " << id << " " << (o.pass ? "PASS" : "FAIL") << " " << o.detail << std::endl;
}

constexpr uint64_t kSeed = 20240601;

Outcome reductions() {
  const auto t0 = Clock::now();
  size_t suites = 0, instances = 0, mismatches = 0;
  std::set<std::string> ids;
  std::string first_bad;
  for (const auto& c : default_suite(200)) {
    const auto r = crosscheck_suite(kSeed, c.reduction, c.param, c.adapter, c.instances);
    ++suites;
    instances += r.instances;
    mismatches += r.mismatches;
    ids.insert(c.reduction);
    if (r.mismatches && first_bad.empty()) first_bad = c.reduction + "/" + c.adapter;
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << "reductions=" << ids.size() << " suites=" << suites << " instances=" << instances
    << " mismatches=" << mismatches << " seconds=" << secs;
  if (!first_bad.empty()) d << " first_failure=" << first_bad;
  return {mismatches == 0 && secs < 300, d.str()};
}

Outcome structures() {
  const auto t0 = Clock::now();
  size_t cases = 0, mismatches = 0;
  std::string first_bad;
  for (const auto& s : structure_suite_ids()) {
    const auto r = structure_suite(kSeed, s, 1000);
    cases += r.instances;
    mismatches += r.mismatches;
    if (r.mismatches && first_bad.empty()) first_bad = s;
  }
  const double secs = seconds_since(t0);
  std::ostringstream d;
  d << "suites=" << structure_suite_ids().size() << " cases=" << cases << " mismatches=" << mismatches
    << " seconds=" << secs;
  if (!first_bad.empty()) d << " first_failure=" << first_bad;
  return {mismatches == 0 && secs < 300, d.str()};
}

Outcome exponents() {
  Outcome o;
  std::ostringstream d;
  for (const char* id : {"sequence-mode", "range-mode-2d", "langerman-d1", "langerman-d2", "skyline"}) {
    const auto t0 = Clock::now();
    const auto sizes = default_bench_sizes(id);
    const BenchReport r = run_bench(id, sizes, kSeed);
    const double secs = seconds_since(t0);
    const bool ok = r.pass && sizes.size() >= 5 && secs < 120;
    o.pass = o.pass && ok;
    char buf[160];
    std::snprintf(buf, sizeof buf, "%s%s=%.3f(target %.3f, %zu sizes, %.1fs)", d.tellp() ? " " : "", id, r.fit,
                  r.target, sizes.size(), secs);
    d << buf;
  }
  o.detail = d.str();
  return o;
}

int64_t draw_in(std::mt19937_64& rng, int64_t lo, int64_t hi) { return draw(rng, lo, hi); }

bool inside_box(const Box& b, const std::vector<int64_t>& q2) {
  // q2 holds doubled coordinates so open and closed ends are told apart.
  for (int a = 0; a < b.dim(); ++a) {
    const Bound lo = b.lower(a), hi = b.upper(a);
    if (lo.kind == Bound::Kind::finite && (lo.closed ? q2[a] < 2 * lo.raw : q2[a] <= 2 * lo.raw)) return false;
    if (hi.kind == Bound::Kind::finite && (hi.closed ? q2[a] > 2 * hi.raw : q2[a] >= 2 * hi.raw)) return false;
  }
  return true;
}

/// Volume of one box clipped to [lo, hi]^3.
int64_t clipped(const Box& b, int64_t lo, int64_t hi) {
  int64_t v = 1;
  for (int a = 0; a < 3; ++a) {
    int64_t x = lo, y = hi;
    if (b.lower(a).kind == Bound::Kind::finite) x = std::max(x, b.lower(a).raw);
    if (b.upper(a).kind == Bound::Kind::finite) y = std::min(y, b.upper(a).raw);
    v *= std::max<int64_t>(0, y - x);
  }
  return v;
}

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
    total += (std::popcount(mask) % 2 ? 1 : -1) * vol;
  }
  return total;
}

Outcome geometry() {
  std::mt19937_64 rng(kSeed);
  size_t bad_union = 0, bad_klee = 0;
  const int64_t span = 12;
  for (int round = 0; round < 500; ++round) {
    OrthantUnion3D u;
    const int n = static_cast<int>(draw_in(rng, 1, 30));
    for (int i = 0; i < n; ++i)
      u.corners.push_back(Point({draw_in(rng, 0, span), draw_in(rng, 0, span), draw_in(rng, 0, span)}, 1));
    const auto boxes = u.decompose();
    bool ok = boxes.size() <= 2 * u.corners.size();
    // Every cell centre and every lattice point of the doubled grid is
    // covered exactly once inside the union and not at all outside it.
    int64_t volume = 0;
    for (const Box& b : boxes) volume += clipped(b, -1, span + 1);
    int64_t cells = 0;
    for (int64_t x = -2; x <= 2 * span + 2 && ok; ++x)
      for (int64_t y = -2; y <= 2 * span + 2 && ok; ++y)
        for (int64_t z = -2; z <= 2 * span + 2 && ok; ++z) {
          const std::vector<int64_t> q{x, y, z};
          bool in = false;
          for (const Point& c : u.corners) in = in || (x <= 2 * c.raw[0] && y <= 2 * c.raw[1] && z <= 2 * c.raw[2]);
          int hits = 0;
          for (const Box& b : boxes) hits += inside_box(b, q);
          ok = hits == (in ? 1 : 0);
          if (in && x % 2 && y % 2 && z % 2 && x > -2 && y > -2 && z > -2) ++cells;
        }
    ok = ok && volume == cells;
    bad_union += !ok;
  }
  for (int round = 0; round < 500; ++round) {
    const int dim = static_cast<int>(draw_in(rng, 1, 3));
    const int64_t scale = draw_in(rng, 1, 3), side = draw_in(rng, 1, 3 * scale);
    std::vector<Point> corners;
    const int n = static_cast<int>(draw_in(rng, 1, 8));
    for (int i = 0; i < n; ++i) {
      std::vector<int64_t> raw;
      for (int a = 0; a < dim; ++a) raw.push_back(draw_in(rng, -8, 8));
      corners.push_back(Point::from_raw(raw, scale));
    }
    const Volume v = klee_unit_oracle(corners, side, dim, scale);
    bad_klee += !(v.scale == scale && v.dim == dim && v.raw == inclusion_exclusion(corners, side, dim));
  }
  std::ostringstream d;
  d << "orthant_inputs=500 orthant_failures=" << bad_union << " klee_inputs=500 klee_failures=" << bad_klee;
  return {bad_union == 0 && bad_klee == 0, d.str()};
}

OuMvInstance random_oumv_instance(std::mt19937_64& rng) {
  OuMvInstance inst;
  inst.k = static_cast<int>(draw_in(rng, 1, 3));
  inst.n = draw_in(rng, 1, 8);
  std::set<Tuple> m;
  const int tuples = static_cast<int>(draw_in(rng, 0, 20));
  for (int i = 0; i < tuples; ++i) {
    Tuple t;
    for (int a = 0; a < inst.k; ++a) t.push_back(draw_in(rng, 1, inst.n));
    m.insert(t);
  }
  inst.m.assign(m.begin(), m.end());
  const int q = static_cast<int>(draw_in(rng, 1, 6));
  for (int i = 0; i < q; ++i) {
    SubsetQuery sq;
    for (int a = 0; a < inst.k; ++a) {
      std::vector<int64_t> s;
      for (int64_t x = 1; x <= inst.n; ++x)
        if (draw_in(rng, 0, 1)) s.push_back(x);
      sq.push_back(s);
    }
    inst.queries.push_back(sq);
  }
  return inst;
}

Outcome batched() {
  std::mt19937_64 rng(kSeed + 5);
  auto factory = [] { return std::make_unique<BruteForceSolver>(); };
  size_t runs = 0, bad = 0;
  for (int rep = 0; rep < 100; ++rep) {
    const OuMvInstance inst = random_oumv_instance(rng);
    const auto want = oumv_bruteforce(inst);
    for (int64_t side = 1; side <= inst.n; ++side)
      for (size_t phase = 1; phase <= inst.queries.size(); ++phase) {
        ++runs;
        bad += oumv_batched_driver(inst, side, phase, factory) != want;
      }
  }
  std::ostringstream d;
  d << "instances=100 split_runs=" << runs << " mismatches=" << bad;
  return {bad == 0, d.str()};
}

/// Records every max the reduction reads.
class MaxRecorder : public SlabTarget {
 public:
  explicit MaxRecorder(SlabAdapter::Variant v) : inner_(v) {}
  void build(const Tensor& t) override { inner_.build(t); }
  void increment(int axis, int64_t x) override { inner_.increment(axis, x); }
  int64_t query_max() override {
    seen.push_back(inner_.query_max());
    return seen.back();
  }
  std::vector<int64_t> seen;

 private:
  SlabAdapter inner_;
};

Outcome formulas() {
  std::mt19937_64 rng(kSeed + 9);
  size_t sky_checks = 0, sky_bad = 0, eri_phases = 0, eri_bad = 0;
  for (int rep = 0; rep < 200; ++rep) {
    const int k = 2 + rep % 2;
    const auto inst = std::get<OuMvInstance>(random_instance("skyline", k, rng));
    SkylineOracleTarget t;
    const ReductionResult r = red_oumvk_skyline(inst, t);
    sky_bad += !r.formula_ok;
    for (size_t q = 0; q < inst.queries.size(); ++q) {
      const SubsetQuery& sq = inst.queries[q];
      int64_t base = static_cast<int64_t>(k - 1) * inst.n + 1;
      for (int i = 0; i + 1 < k; ++i) base -= static_cast<int64_t>(sq[static_cast<size_t>(i)].size());
      for (int64_t j = 0; j <= inst.n; ++j) {
        int64_t c = base;
        for (const Tuple& tu : inst.m) {
          bool in = tu.back() > j;
          for (int i = 0; i + 1 < k; ++i) {
            const auto& u = sq[static_cast<size_t>(i)];
            in = in && std::find(u.begin(), u.end(), tu[static_cast<size_t>(i)]) != u.end();
          }
          c += in;
        }
        ++sky_checks;
        sky_bad += r.skyline_counts.at(q).at(static_cast<size_t>(j)) != c;
      }
    }
  }
  for (int rep = 0; rep < 200; ++rep) {
    const int k = 2 + rep % 2;
    const auto inst = std::get<OuMvInstance>(random_instance("erickson", k, rng));
    const auto want = oumv_bruteforce(inst);
    for (auto v : {SlabAdapter::Variant::lazy, SlabAdapter::Variant::eager}) {
      MaxRecorder t(v);
      const ReductionResult r = red_oumvk_erickson(inst, t);
      for (size_t f = 1; f <= inst.queries.size(); ++f) {
        const int64_t threshold = k + 1 + static_cast<int64_t>(f - 1) * k;
        const int64_t seen = t.seen.at(f - 1);
        ++eri_phases;
        eri_bad += r.thresholds.at(f - 1) != threshold || seen > threshold || (seen == threshold) != want[f - 1];
      }
    }
  }
  std::ostringstream d;
  d << "skyline_counts=" << sky_checks << " skyline_failures=" << sky_bad << " erickson_phases=" << eri_phases
    << " erickson_failures=" << eri_bad;
  return {sky_bad == 0 && eri_bad == 0, d.str()};
}

}  // namespace

int main() {
  bool all = true;
  const std::vector<Outcome (*)()> checks = {reductions, structures, exponents, geometry, batched, formulas};
  for (size_t i = 0; i < checks.size(); ++i) {
    Outcome o;
    try {
      o = checks[i]();
    } catch (const std::exception& e) {
      o = {false, std::string("exception: ") + e.what()};
    }
    report(static_cast<int>(i + 1), o);
    all = all && o.pass;
  }
  return all ? 0 : 1;
}
