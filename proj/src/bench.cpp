#include "dynds/bench.hpp"

#include <chrono>
#include <cmath>
#include <iomanip>
#include <random>
#include <sstream>
#include <stdexcept>

#include "dynds/crosscheck.hpp"
#include "dynds/range_mode.hpp"
#include "dynds/semionline.hpp"
#include "dynds/tensor.hpp"

namespace dynds {

namespace {

struct Workload {
  uint64_t ops = 0;
  CounterPtr counter;
};

/// Labels are dealt round robin so each holds about three times the heavy
/// threshold, and every update swaps a point for one with the same label.
/// No label ever crosses the threshold: queries pay for every heavy label and
/// updates stay on the heavy path.
int64_t heavy_label_count(int64_t n, int dim, size_t cap) {
  return std::max<int64_t>(1, n / (3 * DynRangeModeDS::default_threshold(dim, cap)));
}

Workload sequence_mode(int64_t n, std::mt19937_64& rng) {
  auto counter = make_counter();
  const size_t cap = static_cast<size_t>(2 * n + 8);
  SequenceAdapter seq(cap, std::nullopt, counter);
  const int64_t labels = heavy_label_count(n, 1, cap);
  for (int64_t i = 0; i < n; ++i)
    seq.insert(static_cast<size_t>(draw(rng, 1, i + 1)), i % labels + 1);
  counter->reset();
  Workload w{0, counter};
  for (int rep = 0; rep < 100; ++rep) {
    const int64_t len = static_cast<int64_t>(seq.size());
    const int64_t l = draw(rng, 1, len / 4 + 1), r = draw(rng, 3 * len / 4, len);
    seq.query(static_cast<size_t>(l), static_cast<size_t>(r));
    const size_t gone = static_cast<size_t>(draw(rng, 1, len));
    const Label label = seq.at(gone);
    seq.erase(gone);
    seq.insert(static_cast<size_t>(draw(rng, 1, len)), label);
    w.ops += 3;
  }
  return w;
}

Workload range_mode_2d(int64_t n, std::mt19937_64& rng) {
  auto counter = make_counter();
  const size_t cap = static_cast<size_t>(n + 8);
  DynRangeModeDS ds(2, cap, std::nullopt, counter);
  const int64_t labels = heavy_label_count(n, 2, cap), coord = 4 * n;
  std::vector<LabeledPoint> pts;
  for (int64_t i = 0; i < n; ++i) {
    pts.push_back({Point({draw(rng, 0, coord), draw(rng, 0, coord)}, 1), i % labels + 1});
    ds.insert(pts.back().point, pts.back().label);
  }
  counter->reset();
  Workload w{0, counter};
  for (int rep = 0; rep < 100; ++rep) {
    Box b(2, 1);
    for (int a = 0; a < 2; ++a) b.set(a, Bound::at(draw(rng, 0, coord / 4)), Bound::at(draw(rng, 3 * coord / 4, coord)));
    ds.query(b);
    const size_t j = static_cast<size_t>(draw(rng, 0, static_cast<int64_t>(pts.size()) - 1));
    ds.erase(pts[j].point, pts[j].label);
    pts[j].point = Point({draw(rng, 0, coord), draw(rng, 0, coord)}, 1);
    ds.insert(pts[j].point, pts[j].label);
    w.ops += 3;
  }
  return w;
}

Workload langerman(int64_t n, int dim, std::mt19937_64& rng) {
  auto counter = make_counter();
  Tensor t(dim, n);
  for (size_t i = 0; i < t.cells(); ++i) t.at_flat(i) = draw(rng, 1, 3);
  LangermanDS ds(t, std::nullopt, counter);
  counter->reset();
  Workload w{0, counter};
  for (int rep = 0; rep < 60; ++rep) {
    Index z;
    for (int a = 0; a < dim; ++a) z.push_back(draw(rng, 1, n));
    ds.set(z, draw(rng, 1, 3));
    ++w.ops;
  }
  return w;
}

Workload skyline(int64_t n, std::mt19937_64& rng) {
  std::vector<SemiOnlineOp> trace;
  std::vector<size_t> pending;
  const int64_t coord = 1'000'000;
  auto random_point = [&] { return Point({draw(rng, 0, coord), draw(rng, 0, coord), draw(rng, 0, coord)}, 1); };
  for (int64_t i = 0; i < n / 2; ++i) {
    trace.push_back({SemiOnlineOp::Kind::insert, random_point(), std::nullopt});
    pending.push_back(trace.size() - 1);
  }
  const int64_t steps = n - n / 2;
  for (int64_t i = 0; i < steps; ++i) {
    const int64_t r = draw(rng, 1, 3);
    if (r == 1 || pending.empty()) {
      trace.push_back({SemiOnlineOp::Kind::insert, random_point(), std::nullopt});
      pending.push_back(trace.size() - 1);
    } else if (r == 2) {
      const size_t j = static_cast<size_t>(draw(rng, 0, static_cast<int64_t>(pending.size()) - 1));
      trace[pending[j]].death = trace.size();
      pending.erase(pending.begin() + static_cast<long>(j));
      trace.push_back({SemiOnlineOp::Kind::erase, {}, std::nullopt});
    } else {
      trace.push_back({SemiOnlineOp::Kind::query, {}, std::nullopt});
    }
  }
  auto counter = make_counter();
  Skyline3DBlock block(counter);
  semionline_run(block, trace);
  return {trace.size(), counter};
}

Workload oracle_scan(int64_t n, std::mt19937_64& rng) {
  auto counter = make_counter();
  std::vector<LabeledPoint> pts;
  for (int64_t i = 0; i < n; ++i) pts.push_back({Point({draw(rng, 0, n)}, 1), draw(rng, 1, 10)});
  Workload w{0, counter};
  for (int rep = 0; rep < 20; ++rep) {
    Box b(1, 1);
    const int64_t x = draw(rng, 0, n), y = draw(rng, 0, n);
    b.set(0, Bound::at(std::min(x, y)), Bound::at(std::max(x, y)));
    mode_oracle(pts, b);
    counter->add(pts.size());
    ++w.ops;
  }
  return w;
}

Workload run_one(const std::string& id, int64_t n, std::mt19937_64& rng) {
  if (id == "sequence-mode") return sequence_mode(n, rng);
  if (id == "range-mode-2d") return range_mode_2d(n, rng);
  if (id == "langerman-d1") return langerman(n, 1, rng);
  if (id == "langerman-d2") return langerman(n, 2, rng);
  if (id == "skyline") return skyline(n, rng);
  return oracle_scan(n, rng);
}

}  // namespace

const std::vector<std::string>& bench_ids() {
  static const std::vector<std::string> ids = {"sequence-mode", "range-mode-2d", "langerman-d1",
                                               "langerman-d2",  "skyline",       "oracle-scan"};
  return ids;
}

double bench_target(const std::string& id) {
  if (id == "sequence-mode") return 2.0 / 3.0;
  if (id == "range-mode-2d") return 0.8;
  if (id == "langerman-d1" || id == "skyline") return 0.5;
  if (id == "langerman-d2") return 4.0 / 3.0;
  if (id == "oracle-scan") return 1.0;
  throw std::invalid_argument("unknown bench structure " + id);
}

std::vector<int64_t> default_bench_sizes(const std::string& id) {
  bench_target(id);
  if (id == "sequence-mode") return {243, 729, 2187, 6561, 19683};
  if (id == "range-mode-2d") return {256, 512, 1024, 2048, 4096};
  if (id == "langerman-d1") return {16, 32, 64, 128, 256, 512, 1024};
  if (id == "langerman-d2") return {16, 32, 64, 128, 256};
  if (id == "skyline") return {1024, 2048, 4096, 8192, 16384};
  return {256, 512, 1024, 2048, 4096};
}

double fit_exponent(const std::vector<BenchRow>& rows) {
  if (rows.size() < 4) throw std::invalid_argument("an exponent fit needs at least 4 sizes");
  double sx = 0, sy = 0, sxx = 0, sxy = 0;
  for (const auto& r : rows) {
    if (r.n <= 0 || r.visits_per_op <= 0) throw std::invalid_argument("fit needs positive sizes and costs");
    const double x = std::log(static_cast<double>(r.n)), y = std::log(r.visits_per_op);
    sx += x;
    sy += y;
    sxx += x * x;
    sxy += x * y;
  }
  const double m = static_cast<double>(rows.size());
  const double den = m * sxx - sx * sx;
  if (den == 0) throw std::invalid_argument("fit needs at least two distinct sizes");
  return (m * sxy - sx * sy) / den;
}

BenchReport run_bench(const std::string& id, const std::vector<int64_t>& sizes, uint64_t seed, double tol) {
  BenchReport rep;
  rep.structure = id;
  rep.seed = seed;
  rep.target = bench_target(id);
  rep.tol = tol;
  if (sizes.size() < 4) throw std::invalid_argument("bench needs at least 4 sizes");
  for (int64_t n : sizes)
    if (n < 2) throw std::invalid_argument("bench sizes must be at least 2");
  for (int64_t n : sizes) {
    std::mt19937_64 rng(seed ^ static_cast<uint64_t>(n) * 0x9e3779b97f4a7c15ull);
    const auto t0 = std::chrono::steady_clock::now();
    const Workload w = run_one(id, n, rng);
    const auto t1 = std::chrono::steady_clock::now();
    BenchRow row;
    row.n = n;
    row.ops = w.ops;
    row.visits = w.counter->visits;
    row.ns = static_cast<uint64_t>(std::chrono::duration_cast<std::chrono::nanoseconds>(t1 - t0).count());
    row.visits_per_op = static_cast<double>(row.visits) / static_cast<double>(std::max<uint64_t>(1, row.ops));
    rep.rows.push_back(row);
  }
  rep.fit = fit_exponent(rep.rows);
  rep.pass = std::abs(rep.fit - rep.target) <= tol;
  return rep;
}

std::string BenchReport::csv() const {
  std::ostringstream out;
  out << "n,ops,visits,ns,visits_per_op\n";
  for (const auto& r : rows)
    out << r.n << "," << r.ops << "," << r.visits << "," << r.ns << "," << std::fixed << std::setprecision(3)
        << r.visits_per_op << std::defaultfloat << "\n";
  out << std::fixed << std::setprecision(4) << "fit_exponent=" << fit << " target=" << target << " tol=" << tol
      << " pass=" << (pass ? "true" : "false") << "\n";
  out << "# structure=" << structure << " seed=" << seed << "\n";
  return out.str();
}

}  // namespace dynds
