#include <algorithm>
#include <bit>
#include <map>
#include <functional>
#include <set>

#include "dynds/debug.hpp"
#include "dynds/reductions.hpp"
#include "phase_guard.hpp"

namespace dynds {

namespace {

void require_order(const OuMvInstance& inst, int min_k, int max_k, const char* name) {
  inst.validate();
  if (inst.k < min_k || inst.k > max_k)
    throw ArityError(std::string(name) + " supports k in [" + std::to_string(min_k) + ", " +
                     std::to_string(max_k) + "], got " + std::to_string(inst.k));
}

void for_each_product(const std::vector<std::vector<int64_t>>& sets,
                      const std::function<void(const std::vector<int64_t>&)>& fn) {
  std::vector<int64_t> cur(sets.size());
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == sets.size()) {
      fn(cur);
      return;
    }
    for (int64_t v : sets[i]) {
      cur[i] = v;
      rec(i + 1);
    }
  };
  rec(0);
}

bool member(const std::vector<int64_t>& u, int64_t x) { return std::find(u.begin(), u.end(), x) != u.end(); }

/// Tuple point (a_1 - a_k/S, N - a_1, ..., a_{k-1}, N - a_{k-1}, a_k) at scale S.
Point tuple_point(const Tuple& t, int64_t n, int64_t scale) {
  const size_t k = t.size();
  std::vector<int64_t> raw(2 * k - 1);
  for (size_t i = 0; i + 1 < k; ++i) {
    raw[2 * i] = t[i] * scale;
    raw[2 * i + 1] = (n - t[i]) * scale;
  }
  raw[0] -= t[k - 1];
  raw[2 * k - 2] = t[k - 1] * scale;
  return Point::from_raw(raw, scale);
}

/// Everything at `fill` except the pair (j, n - j) on axes 2i, 2i+1.
Point blocker(size_t k, size_t i, int64_t j, int64_t n, int64_t scale, int64_t fill) {
  std::vector<int64_t> raw(2 * k - 1, fill);
  raw[2 * i] = j * scale;
  raw[2 * i + 1] = (n - j) * scale;
  return Point::from_raw(raw, scale);
}

Point probe(size_t k, int64_t j, int64_t scale, int64_t fill) {
  std::vector<int64_t> raw(2 * k - 1, fill);
  raw[2 * k - 2] = j * scale;
  return Point::from_raw(raw, scale);
}

std::vector<Point> phase_blockers(const SubsetQuery& q, size_t k, int64_t n, int64_t universe, int64_t scale,
                                  int64_t fill) {
  std::vector<Point> out;
  for (size_t i = 0; i + 1 < k; ++i)
    for (int64_t j = 1; j <= universe; ++j)
      if (!member(q[i], j)) out.push_back(blocker(k, i, j, n, scale, fill));
  return out;
}

}  // namespace

int64_t skyline_count_formula(const OuMvInstance& inst, const SubsetQuery& q, int64_t j) {
  const size_t k = static_cast<size_t>(inst.k);
  int64_t c = static_cast<int64_t>(k - 1) * inst.n + 1;
  for (size_t i = 0; i + 1 < k; ++i) c -= static_cast<int64_t>(q[i].size());
  for (const Tuple& t : inst.m) {
    bool in = t[k - 1] > j;
    for (size_t i = 0; i + 1 < k && in; ++i) in = member(q[i], t[i]);
    c += in;
  }
  return c;
}

ReductionResult red_oumvk_skyline(const OuMvInstance& inst, SkylineTarget& target) {
  require_order(inst, 2, (kMaxDim + 1) / 2, "skyline reduction");
  const size_t k = static_cast<size_t>(inst.k);
  const int64_t n = inst.n, scale = n + 1, inf = 2 * n * scale;
  ReductionResult res;
  std::vector<Point> initial;
  for (const Tuple& t : inst.m) initial.push_back(tuple_point(t, n, scale));
  target.preprocess(initial);
  ++res.calls.builds;
  for (const SubsetQuery& q : inst.queries) {
    PhaseGuard guard(target, res);
    const auto blockers = phase_blockers(q, k, n, n, scale, inf);
    for (const Point& p : blockers) target.insert(p);
    res.calls.updates += blockers.size();
    std::vector<int64_t> c(static_cast<size_t>(n) + 1);
    for (int64_t j = 0; j <= n; ++j) {
      const Point p = probe(k, j, scale, inf);
      target.insert(p);
      c[static_cast<size_t>(j)] = target.count();
      target.erase(p);
      res.calls.updates += 2;
      ++res.calls.queries;
      if (c[static_cast<size_t>(j)] != skyline_count_formula(inst, q, j)) res.formula_ok = false;
    }
    for (const Point& p : blockers) target.erase(p);
    res.calls.updates += blockers.size();
    int64_t hits = 0;
    for (int64_t j : q[k - 1]) hits += c[static_cast<size_t>(j - 1)] - c[static_cast<size_t>(j)];
    res.answers.push_back(hits > 0);
    res.skyline_counts.push_back(std::move(c));
    guard.close();
  }
  return res;
}

ReductionResult red_oumvk_klee(const OuMvInstance& inst, KleeTarget& target, const ReductionOptions& opt) {
  require_order(inst, 2, (kMaxDim + 1) / 2, "klee reduction");
  const size_t k = static_cast<size_t>(inst.k);
  const int dim = static_cast<int>(2 * k - 1);
  // Without padding, a tuple with some a_i = N (i < k) has N - a_i = 0 and its
  // cube adds no volume to its slab, so the equal-difference test misses it.
  const int64_t n = opt.pad_klee ? inst.n + 1 : inst.n;
  const int64_t scale = n + 1, top = n * scale;
  ReductionResult res;
  std::vector<Point> corners;
  for (uint32_t mask = 0; mask + 1 < (1u << dim); ++mask) {
    std::vector<int64_t> raw(static_cast<size_t>(dim));
    for (int a = 0; a < dim; ++a) raw[static_cast<size_t>(a)] = (mask >> a & 1u) ? top : 0;
    corners.push_back(Point::from_raw(raw, scale));
  }
  for (const Tuple& t : inst.m) corners.push_back(tuple_point(t, n, scale));
  target.preprocess(dim, scale, top, corners);
  ++res.calls.builds;
  const std::set<Tuple> mset(inst.m.begin(), inst.m.end());
  for (const SubsetQuery& q : inst.queries) {
    PhaseGuard guard(target, res);
    const auto blockers = phase_blockers(q, k, n, n, scale, top);
    for (const Point& p : blockers) target.insert(p);
    res.calls.updates += blockers.size();
    std::vector<int64_t> v(static_cast<size_t>(n) + 1);
    v[0] = target.volume().raw;
    ++res.calls.queries;
    for (int64_t j = 1; j <= n; ++j) {
      const Point p = probe(k, j, scale, top);
      target.insert(p);
      v[static_cast<size_t>(j)] = target.volume().raw;
      target.erase(p);
      res.calls.updates += 2;
      ++res.calls.queries;
    }
    for (const Point& p : blockers) target.erase(p);
    res.calls.updates += blockers.size();

    std::vector<bool> nonempty(static_cast<size_t>(n) + 1, false);
    for (int64_t j = 1; j < n; ++j) {
      const size_t u = static_cast<size_t>(j);
      nonempty[u] = v[u] - v[u - 1] != v[u + 1] - v[u];
    }
    std::vector<std::vector<int64_t>> front(q.begin(), q.end() - 1);
    for_each_product(front, [&](const std::vector<int64_t>& pre) {
      Tuple t = pre;
      t.push_back(n);
      if (mset.count(t)) nonempty[static_cast<size_t>(n)] = true;
    });
    bool hit = false;
    for (int64_t j : q[k - 1]) hit = hit || nonempty[static_cast<size_t>(j)];
    res.answers.push_back(hit);
    guard.close();
  }
  return res;
}

ReductionResult red_oumvk_halfspace(const OuMvInstance& inst, HalfspaceTarget& target) {
  require_order(inst, 1, kMaxDim, "halfspace reduction");
  const size_t k = static_cast<size_t>(inst.k);
  ReductionResult res;
  if (inst.m.empty()) {
    res.answers.assign(inst.queries.size(), false);
    return res;
  }
  // Scale 2 makes the half-integer offsets j - 0.5 and j + 0.5 exact.
  std::vector<Point> pts;
  for (const Tuple& t : inst.m) {
    std::vector<int64_t> raw;
    for (int64_t a : t) raw.push_back(2 * a);
    pts.push_back(Point::from_raw(raw, 2));
  }
  target.build(inst.k, 2, pts);
  ++res.calls.builds;
  for (const SubsetQuery& q : inst.queries) {
    PhaseGuard guard(target, res);
    std::vector<Halfspace> hs;
    int64_t want = 0;
    for (size_t i = 0; i < k; ++i) {
      want += static_cast<int64_t>(q[i].size()) - 1;
      for (int64_t j : q[i]) {
        std::vector<int64_t> e(k, 0);
        e[i] = 1;
        hs.push_back({e, 2 * j - 1, true});  // x_i < j - 0.5
        e[i] = -1;
        hs.push_back({e, -(2 * j + 1), true});  // x_i > j + 0.5
      }
    }
    for (const auto& h : hs) target.insert(h);
    res.calls.updates += hs.size();
    const int64_t mn = target.query_min();
    ++res.calls.queries;
    res.answers.push_back(mn == want);
    for (const auto& h : hs) target.erase(h);
    res.calls.updates += hs.size();
    guard.close();
  }
  return res;
}

ReductionResult red_oumvk_hyperclique(const OuMvInstance& inst, HypergraphTarget& target) {
  require_order(inst, 2, 16, "hyperclique reduction");
  const int k = inst.k;
  const int64_t n = inst.n;
  // s = 0, (x, i) -> 1 + i*N + (x-1) with i 0-based.
  auto vid = [&](int64_t x, size_t i) { return static_cast<int>(1 + static_cast<int64_t>(i) * n + (x - 1)); };
  ReductionResult res;
  target.build(static_cast<int>(1 + n * k), k, 0);
  ++res.calls.builds;
  for (const Tuple& t : inst.m) {
    Hyperedge e;
    for (size_t i = 0; i < t.size(); ++i) e.push_back(vid(t[i], i));
    target.insert(e);
  }
  for (const SubsetQuery& q : inst.queries) {
    PhaseGuard guard(target, res);
    std::vector<Hyperedge> added;
    for (size_t skip = 0; skip < static_cast<size_t>(k); ++skip) {
      std::vector<std::vector<int64_t>> sets;
      std::vector<size_t> axes;
      for (size_t i = 0; i < static_cast<size_t>(k); ++i)
        if (i != skip) {
          sets.push_back(q[i]);
          axes.push_back(i);
        }
      for_each_product(sets, [&](const std::vector<int64_t>& xs) {
        Hyperedge e{0};
        for (size_t t = 0; t < xs.size(); ++t) e.push_back(vid(xs[t], axes[t]));
        target.insert(e);
        added.push_back(std::move(e));
      });
    }
    res.calls.updates += added.size();
    res.answers.push_back(target.query());
    ++res.calls.queries;
    for (const auto& e : added) target.erase(e);
    res.calls.updates += added.size();
    guard.close();
  }
  return res;
}

ReductionResult red_oumvk_erickson(const OuMvInstance& inst, SlabTarget& target) {
  require_order(inst, 1, 16, "Erickson reduction");
  const int k = inst.k;
  Tensor t(k, inst.n);
  for (const Tuple& a : inst.m) t[a] = 1;
  ReductionResult res;
  target.build(t);
  ++res.calls.builds;
  int64_t f = 0;
  for (const SubsetQuery& q : inst.queries) {
    ++f;
    ++res.phases;
    for (int i = 0; i < k; ++i)
      for (int64_t x : q[static_cast<size_t>(i)]) {
        target.increment(i + 1, x);
        ++res.calls.updates;
      }
    const int64_t threshold = k + 1 + (f - 1) * k;
    const int64_t mx = target.query_max();
    ++res.calls.queries;
    res.thresholds.push_back(threshold);
    if (mx > threshold) res.formula_ok = false;
    res.answers.push_back(mx == threshold);
    for (int i = 0; i < k; ++i)
      for (int64_t x = 1; x <= inst.n; ++x)
        if (!member(q[static_cast<size_t>(i)], x)) {
          target.increment(i + 1, x);
          ++res.calls.updates;
        }
  }
  return res;
}

std::optional<int64_t> exact_root(int64_t n, int d) {
  if (n < 1 || d < 1) return std::nullopt;
  for (int64_t b = 1;; ++b) {
    int64_t p = 1;
    for (int i = 0; i < d && p <= n; ++i) p *= b;
    if (p == n) return b;
    if (p > n) return std::nullopt;
  }
}

Tensor langerman_tensor(const OuMvInstance& inst, int64_t* block) {
  inst.validate();
  if (inst.k < 2) throw ArityError("Langerman reduction needs k >= 2");
  const int d = inst.k - 1;
  const auto root = exact_root(inst.n, d);
  if (!root)
    throw ArityError("N = " + std::to_string(inst.n) + " is not a perfect " + std::to_string(d) + "-th power");
  const int64_t b = *root, w = b + 1, n = inst.n;
  if (block) *block = b;
  Tensor t(d, w * n);
  // f^{-1}(v): the base-B digits of v - 1, shifted to 1-based.
  auto finv = [&](int64_t v) {
    Index y(static_cast<size_t>(d));
    int64_t r = v - 1;
    for (int i = 0; i < d; ++i) {
      y[static_cast<size_t>(i)] = r % b + 1;
      r /= b;
    }
    return y;
  };
  std::map<Index, Tensor> s;
  for (const Tuple& a : inst.m) {
    Index pre(a.begin(), a.end() - 1);
    auto it = s.try_emplace(pre, d, w).first;
    it->second[finv(a.back())] = a.back();
  }
  for (const auto& [a, sa] : s) {
    for (size_t c = 0; c < sa.cells(); ++c) {
      const Index y = sa.unflat(c);
      int64_t v = 0;
      for (uint32_t mask = 0; mask < (1u << d); ++mask) {
        Index z = y;
        bool inside = true;
        for (int i = 0; i < d; ++i)
          if (mask >> i & 1u) inside = inside && --z[static_cast<size_t>(i)] >= 1;
        if (!inside) continue;
        v += (std::popcount(mask) % 2 ? -1 : 1) * sa[z];
      }
      Index x(static_cast<size_t>(d));
      for (int i = 0; i < d; ++i)
        x[static_cast<size_t>(i)] = w * (a[static_cast<size_t>(i)] - 1) + y[static_cast<size_t>(i)];
      t[x] = v;
    }
  }
  return t;
}

ReductionResult red_oumvk_langerman(const OuMvInstance& inst, PrefixZeroTarget& target,
                                    const ReductionOptions& opt) {
  int64_t b = 0;
  const Tensor t = langerman_tensor(inst, &b);
  const int d = inst.k - 1;
  const int64_t w = b + 1, n = inst.n;
  if (opt.check_identity.value_or(debug_asserts())) {
    const Tensor p = t.prefix_sums();
    for (size_t c = 0; c < p.cells(); ++c) {
      const Index x = p.unflat(c);
      Tuple pre;
      Index y;
      for (int64_t xi : x) {
        pre.push_back((xi - 1) / w + 1);
        y.push_back((xi - 1) % w + 1);
      }
      int64_t want = 0;
      if (std::all_of(y.begin(), y.end(), [&](int64_t v) { return v <= b; })) {
        int64_t fy = 0;
        for (int i = d - 1; i >= 0; --i) fy = fy * b + (y[static_cast<size_t>(i)] - 1);
        Tuple full = pre;
        full.push_back(fy + 1);
        if (std::find(inst.m.begin(), inst.m.end(), full) != inst.m.end()) want = fy + 1;
      }
      if (p.at_flat(c) != want) throw std::logic_error("assembled tensor breaks the prefix identity");
    }
  }
  ReductionResult res;
  target.build(t);
  ++res.calls.builds;
  const int64_t big = 1000 * n;
  const Index ones(static_cast<size_t>(d), 1);
  for (const SubsetQuery& q : inst.queries) {
    PhaseGuard guard(target, res);
    std::vector<std::pair<Index, int64_t>> slabs;
    for (int i = 0; i < d; ++i)
      for (int64_t j = 1; j <= n; ++j) {
        if (member(q[static_cast<size_t>(i)], j)) continue;
        Index lo = ones, hi = ones;
        lo[static_cast<size_t>(i)] = (j - 1) * w + 1;
        hi[static_cast<size_t>(i)] = j * w;
        slabs.emplace_back(lo, big);
        slabs.emplace_back(hi, -big);
      }
    for (const auto& [z, v] : slabs) target.add(z, v);
    res.calls.updates += slabs.size();
    bool hit = false;
    for (int64_t j : q[static_cast<size_t>(d)]) {
      target.add(ones, -j);
      const bool zero = target.query();
      target.add(ones, j);
      res.calls.updates += 2;
      ++res.calls.queries;
      hit = hit || zero;
    }
    for (const auto& [z, v] : slabs) target.add(z, -v);
    res.calls.updates += slabs.size();
    res.answers.push_back(hit);
    guard.close();
  }
  return res;
}

}  // namespace dynds
