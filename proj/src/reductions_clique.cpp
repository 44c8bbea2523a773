#include <algorithm>
#include <functional>

#include "dynds/reductions.hpp"
#include "phase_guard.hpp"

namespace dynds {

namespace {

void require_parts(const KPartiteGraph& g, int parts, const char* name) {
  if (g.k() != parts)
    throw ArityError(std::string(name) + " needs a " + std::to_string(parts) + "-partite graph, got " +
                     std::to_string(g.k()) + " parts");
}

std::vector<int> complement(const std::vector<int>& in, int size) {
  std::vector<int> out;
  size_t j = 0;
  for (int v = 0; v < size; ++v) {
    if (j < in.size() && in[j] == v)
      ++j;
    else
      out.push_back(v);
  }
  return out;
}

void append(std::vector<Label>& arr, const std::vector<int>& xs) {
  for (int x : xs) arr.push_back(x);
}

ReductionResult sequence_reduction(const KPartiteGraph& g, SequenceTarget& target, Statistic stat) {
  require_parts(g, 4, stat == Statistic::mode ? "range mode reduction" : "range minority reduction");
  const int nA = g.size(0), nB = g.size(1), nC = g.size(2), nD = g.size(3);
  const bool mode = stat == Statistic::mode;
  ReductionResult res;
  res.answers = {false};

  // P_a holds the non-neighbors first for mode and the neighbors first for
  // minority, so the part the query cuts into always comes second.
  std::vector<size_t> startP(static_cast<size_t>(nA)), cutP(static_cast<size_t>(nA));
  std::vector<size_t> startQ(static_cast<size_t>(nB)), cutQ(static_cast<size_t>(nB));
  std::vector<Label> arr;
  for (int a = 0; a < nA; ++a) {
    const auto nb = g.neighbors(0, a, 3);
    const auto non = complement(nb, nD);
    startP[static_cast<size_t>(a)] = arr.size() + 1;
    cutP[static_cast<size_t>(a)] = mode ? non.size() : nb.size();
    append(arr, mode ? non : nb);
    append(arr, mode ? nb : non);
  }
  if (!mode)
    for (int d = 0; d < nD; ++d) arr.push_back(d);
  const size_t middle = arr.size() + 1;
  for (int b = 0; b < nB; ++b) {
    const auto nb = g.neighbors(1, b, 3);
    const auto non = complement(nb, nD);
    startQ[static_cast<size_t>(b)] = arr.size() + 1;
    cutQ[static_cast<size_t>(b)] = mode ? nb.size() : non.size();
    append(arr, mode ? nb : non);
    append(arr, mode ? non : nb);
  }
  target.build(arr, arr.size() + static_cast<size_t>(nD));
  ++res.calls.builds;
  if (nD == 0) return res;

  for (int c = 0; c < nC; ++c) {
    PhaseGuard guard(target, res);
    const auto nc = g.neighbors(2, c, 3);
    const auto inserted = mode ? nc : complement(nc, nD);
    for (size_t t = 0; t < inserted.size(); ++t) {
      target.insert(middle + t, inserted[t]);
      ++res.calls.updates;
    }
    for (int a = 0; a < nA; ++a) {
      const size_t ua = static_cast<size_t>(a);
      if (mode && cutP[ua] == static_cast<size_t>(nD)) continue;  // a has no neighbor in D
      const size_t l = startP[ua] + cutP[ua];
      for (int b = 0; b < nB; ++b) {
        const size_t ub = static_cast<size_t>(b);
        if (mode && cutQ[ub] == 0) continue;
        const size_t r = startQ[ub] + inserted.size() + cutQ[ub] - 1;
        const auto ans = target.query(l, r);
        ++res.calls.queries;
        // Full copies of D inside the range: the P blocks after a, the Q
        // blocks before b, and for minority the permutation in the middle.
        const int64_t full = (nA - 1 - a) + b + (mode ? 0 : 1);
        const int64_t want = mode ? full + 3 : full;
        if (ans && ans->freq == want && is_clique(g, {0, 1, 2}, {a, b, c})) res.answers[0] = true;
      }
    }
    for (size_t t = 0; t < inserted.size(); ++t) {
      target.erase(middle);
      ++res.calls.updates;
    }
    guard.close();
  }
  return res;
}

/// Half-axis layout shared by the batch and dynamic constructions: part i
/// (0-based) lies on axis i/2, positive for even i, negative for odd i, as the
/// concatenation of one neighbors-first permutation of the label part per vertex.
struct HalfAxes {
  int dim = 0;
  int label_part = 0;
  std::vector<LabeledPoint> points;
  std::vector<std::vector<int64_t>> last_neighbor;  // [part][vertex] 1-based index, 0 if none
};

HalfAxes half_axes(const KPartiteGraph& g, int d, int label_part) {
  HalfAxes h;
  h.dim = d;
  h.label_part = label_part;
  const int nL = g.size(label_part);
  h.last_neighbor.resize(static_cast<size_t>(2 * d));
  for (int i = 0; i < 2 * d; ++i) {
    int64_t j = 0;
    for (int v = 0; v < g.size(i); ++v) {
      const auto nb = g.neighbors(i, v, label_part);
      std::vector<int> perm = nb;
      for (int x : complement(nb, nL)) perm.push_back(x);
      h.last_neighbor[static_cast<size_t>(i)].push_back(nb.empty() ? 0 : j + static_cast<int64_t>(nb.size()));
      for (int x : perm) {
        ++j;
        std::vector<int64_t> raw(static_cast<size_t>(d), 0);
        raw[static_cast<size_t>(i / 2)] = i % 2 == 0 ? j : -j;
        h.points.push_back({Point::from_raw(raw, 1), x});
      }
    }
  }
  return h;
}

Box tuple_box(const HalfAxes& h, const std::vector<int>& tuple) {
  Box box(h.dim, 1);
  for (int t = 0; t < h.dim; ++t) {
    const int64_t hi = h.last_neighbor[static_cast<size_t>(2 * t)][static_cast<size_t>(tuple[static_cast<size_t>(2 * t)])];
    const int64_t lo =
        h.last_neighbor[static_cast<size_t>(2 * t + 1)][static_cast<size_t>(tuple[static_cast<size_t>(2 * t + 1)])];
    box.set(t, Bound::at(-lo), Bound::at(hi));
  }
  return box;
}

/// Every tuple over parts 0..2d-1 whose members all have a label-part neighbor.
void for_each_tuple(const HalfAxes& h, const std::function<void(const std::vector<int>&)>& fn) {
  const size_t parts = h.last_neighbor.size();
  std::vector<int> tuple(parts, 0);
  std::function<void(size_t)> rec = [&](size_t i) {
    if (i == parts) {
      fn(tuple);
      return;
    }
    for (size_t v = 0; v < h.last_neighbor[i].size(); ++v) {
      if (h.last_neighbor[i][v] == 0) continue;
      tuple[i] = static_cast<int>(v);
      rec(i + 1);
    }
  };
  rec(0);
}

int64_t full_copies(const std::vector<int>& tuple) {
  int64_t f = 0;
  for (int v : tuple) f += v;
  return f;
}

std::vector<int> iota_parts(int n) {
  std::vector<int> p(static_cast<size_t>(n));
  for (int i = 0; i < n; ++i) p[static_cast<size_t>(i)] = i;
  return p;
}

}  // namespace

ReductionResult red_4clique_range_mode(const KPartiteGraph& g, SequenceTarget& target) {
  return sequence_reduction(g, target, Statistic::mode);
}

ReductionResult red_4clique_range_minority(const KPartiteGraph& g, SequenceTarget& target) {
  return sequence_reduction(g, target, Statistic::minority);
}

ReductionResult red_clique_batch_dmode(const KPartiteGraph& g, BatchModeTarget& target) {
  if (g.k() < 3 || g.k() % 2 == 0)
    throw ArityError("batch range mode reduction needs 2d+1 parts, got " + std::to_string(g.k()));
  const int d = (g.k() - 1) / 2;
  if (d > kMaxDim) throw ArityError("dimension too large");
  ReductionResult res;
  res.answers = {false};
  const HalfAxes h = half_axes(g, d, 2 * d);
  std::vector<Box> boxes;
  std::vector<std::vector<int>> tuples;
  for_each_tuple(h, [&](const std::vector<int>& t) {
    tuples.push_back(t);
    boxes.push_back(tuple_box(h, t));
  });
  const auto answers = target.solve(d, h.points, boxes);
  ++res.calls.builds;
  res.calls.queries += boxes.size();
  if (answers.size() != boxes.size()) throw std::logic_error("batch target returned the wrong number of answers");
  const auto parts = iota_parts(2 * d);
  for (size_t i = 0; i < tuples.size(); ++i) {
    const auto& a = answers[i];
    if (a && a->freq == full_copies(tuples[i]) + 2 * d && is_clique(g, parts, tuples[i])) res.answers[0] = true;
  }
  return res;
}

ReductionResult red_clique_dyn_dmode(const KPartiteGraph& g, DynModeTarget& target) {
  if (g.k() < 4 || g.k() % 2 == 1)
    throw ArityError("dynamic range mode reduction needs 2d+2 parts, got " + std::to_string(g.k()));
  const int d = (g.k() - 2) / 2;
  if (d > kMaxDim) throw ArityError("dimension too large");
  const int phase_part = 2 * d, label_part = 2 * d + 1;
  ReductionResult res;
  res.answers = {false};
  const HalfAxes h = half_axes(g, d, label_part);
  target.build(d, h.points.size() + static_cast<size_t>(g.size(label_part)), h.points);
  ++res.calls.builds;
  const Point origin = Point::from_raw(std::vector<int64_t>(static_cast<size_t>(d), 0), 1);
  std::vector<std::vector<int>> tuples;
  for_each_tuple(h, [&](const std::vector<int>& t) { tuples.push_back(t); });
  std::vector<Box> boxes;
  for (const auto& t : tuples) boxes.push_back(tuple_box(h, t));
  auto parts = iota_parts(2 * d + 1);
  for (int v = 0; v < g.size(phase_part); ++v) {
    PhaseGuard guard(target, res);
    const auto nb = g.neighbors(phase_part, v, label_part);
    for (int x : nb) {
      target.insert(origin, x);
      ++res.calls.updates;
    }
    for (size_t i = 0; i < tuples.size(); ++i) {
      const auto a = target.query(boxes[i]);
      ++res.calls.queries;
      auto members = tuples[i];
      members.push_back(v);
      if (a && a->freq == full_copies(tuples[i]) + 2 * d + 1 && is_clique(g, parts, members)) res.answers[0] = true;
    }
    for (int x : nb) {
      target.erase(origin, x);
      ++res.calls.updates;
    }
    guard.close();
  }
  return res;
}

ReductionResult red_4clique_subconn(const KPartiteGraph& g, SubConnTarget& target) {
  require_parts(g, 4, "subgraph connectivity reduction");
  const int nA = g.size(0), nB = g.size(1), nC = g.size(2), nD = g.size(3);
  // Layers s | V_B | U_B | U_D | U_C | V_C | t.
  const int s = 0;
  auto vB = [&](int b) { return 1 + b; };
  auto uB = [&](int a) { return 1 + nB + a; };
  auto uD = [&](int a) { return 1 + nB + nA + a; };
  auto uC = [&](int a) { return 1 + nB + 2 * nA + a; };
  auto vC = [&](int c) { return 1 + nB + 3 * nA + c; };
  const int t = 1 + nB + 3 * nA + nC;
  std::vector<std::pair<int, int>> edges;
  for (int b = 0; b < nB; ++b) edges.emplace_back(s, vB(b));
  for (int c = 0; c < nC; ++c) edges.emplace_back(vC(c), t);
  for (int b = 0; b < nB; ++b)
    for (int a = 0; a < nA; ++a)
      if (g.adjacent(1, b, 0, a)) edges.emplace_back(vB(b), uB(a));
  for (int c = 0; c < nC; ++c)
    for (int a = 0; a < nA; ++a)
      if (g.adjacent(2, c, 0, a)) edges.emplace_back(uC(a), vC(c));
  for (int a = 0; a < nA; ++a) {
    edges.emplace_back(uB(a), uD(a));
    edges.emplace_back(uD(a), uC(a));
  }
  ReductionResult res;
  res.answers = {false};
  target.build(t + 1, edges, s, t);
  ++res.calls.builds;
  for (int d = 0; d < nD; ++d) {
    ++res.phases;
    for (int a = 0; a < nA; ++a) {
      target.set_active(uD(a), g.adjacent(0, a, 3, d));
      ++res.calls.updates;
    }
    for (int b = 0; b < nB; ++b) {
      if (!g.adjacent(1, b, 3, d)) continue;
      target.set_active(vB(b), true);
      ++res.calls.updates;
      for (int b2 = 0; b2 < nB; ++b2) {
        if (b2 == b) continue;
        target.set_active(vB(b2), false);
        ++res.calls.updates;
      }
      for (int c = 0; c < nC; ++c) {
        target.set_active(vC(c), g.adjacent(2, c, 3, d) && g.adjacent(2, c, 1, b));
        ++res.calls.updates;
      }
      ++res.calls.queries;
      if (target.query()) {
        res.answers[0] = true;
        return res;
      }
    }
  }
  return res;
}

ReductionResult red_4clique_2pattern(const KPartiteGraph& g, DocsTarget& target) {
  require_parts(g, 4, "2-pattern reduction");
  const int nA = g.size(0), nB = g.size(1), nC = g.size(2), nD = g.size(3);
  // Symbols: a -> a, b -> |A| + b. Document d lists its neighbors in A and B.
  std::vector<std::vector<Symbol>> docs(static_cast<size_t>(nD));
  for (int d = 0; d < nD; ++d) {
    for (int a : g.neighbors(3, d, 0)) docs[static_cast<size_t>(d)].push_back(a);
    for (int b : g.neighbors(3, d, 1)) docs[static_cast<size_t>(d)].push_back(nA + b);
  }
  ReductionResult res;
  res.answers = {false};
  target.build(docs);
  ++res.calls.builds;
  for (int c = 0; c < nC; ++c) {
    PhaseGuard guard(target, res);
    const auto nc = g.neighbors(2, c, 3);
    for (int d : nc) {
      target.set_on(static_cast<size_t>(d), true);
      ++res.calls.updates;
    }
    for (int a = 0; a < nA; ++a)
      for (int b = 0; b < nB; ++b) {
        const int64_t hits = target.query(a, nA + b);
        ++res.calls.queries;
        if (hits != 0 && is_clique(g, {0, 1, 2}, {a, b, c})) res.answers[0] = true;
      }
    for (int d : nc) {
      target.set_on(static_cast<size_t>(d), false);
      ++res.calls.updates;
    }
    guard.close();
  }
  return res;
}

ReductionResult red_4clique_color(const KPartiteGraph& g, ColorTarget& target, const ReductionOptions& opt) {
  require_parts(g, 4, "color counting reduction");
  const int nA = g.size(0), nB = g.size(1), nC = g.size(2), nD = g.size(3);
  // Vertices are 1-based here to match the coordinates (a, |A|+1-a), (-b, -|B|-1+b).
  std::vector<ColoredPoint> pts;
  for (int a = 1; a <= nA; ++a)
    for (int d : g.neighbors(0, a - 1, 3)) pts.push_back({Point({a, nA + 1 - a}), d});
  for (int b = 1; b <= nB; ++b)
    for (int d : g.neighbors(1, b - 1, 3)) pts.push_back({Point({-b, -nB - 1 + b}), d});
  ReductionResult res;
  res.answers = {false};
  target.build(pts.size() + static_cast<size_t>(nD), pts);
  ++res.calls.builds;

  auto rect = [](int64_t x1, int64_t y1, int64_t x2, int64_t y2) {
    return Box::closed({x1, y1}, {x2, y2});
  };
  auto ab_box = [&](int a, int b) { return rect(-b, -nB - 1 + b, a, nA + 1 - a); };
  std::vector<int64_t> qa(static_cast<size_t>(nA) + 1), qb(static_cast<size_t>(nB) + 1);
  for (int a = 1; a <= nA; ++a) qa[static_cast<size_t>(a)] = static_cast<int64_t>(g.neighbors(0, a - 1, 3).size());
  for (int b = 1; b <= nB; ++b) qb[static_cast<size_t>(b)] = static_cast<int64_t>(g.neighbors(1, b - 1, 3).size());

  std::vector<int64_t> qab(static_cast<size_t>((nA + 1) * (nB + 1)), 0);
  auto pair_counts = [&] {
    for (int a = 1; a <= nA; ++a)
      for (int b = 1; b <= nB; ++b) {
        qab[static_cast<size_t>(a * (nB + 1) + b)] = target.query(ab_box(a, b));
        ++res.calls.queries;
      }
  };
  if (!opt.strict_pairs) pair_counts();

  const Point origin({0, 0});
  for (int c = 1; c <= nC; ++c) {
    PhaseGuard guard(target, res);
    if (opt.strict_pairs) pair_counts();
    const auto nc = g.neighbors(2, c - 1, 3);
    for (int d : nc) {
      target.insert(origin, d);
      ++res.calls.updates;
    }
    const int64_t qc = static_cast<int64_t>(nc.size());
    for (int a = 1; a <= nA; ++a)
      for (int b = 1; b <= nB; ++b) {
        const int64_t qabc = target.query(ab_box(a, b));
        const int64_t qac = target.query(rect(0, 0, a, nA + 1 - a));
        const int64_t qbc = target.query(rect(-b, -nB - 1 + b, 0, 0));
        res.calls.queries += 3;
        const int64_t common = qabc - qab[static_cast<size_t>(a * (nB + 1) + b)] - qbc - qac +
                               qa[static_cast<size_t>(a)] + qb[static_cast<size_t>(b)] + qc;
        if (common != 0 && is_clique(g, {0, 1, 2}, {a - 1, b - 1, c - 1})) res.answers[0] = true;
      }
    for (int d : nc) {
      target.erase(origin, d);
      ++res.calls.updates;
    }
    guard.close();
  }
  return res;
}

ReductionResult red_4clique_streach(const KPartiteGraph& g, StReachTarget& target) {
  require_parts(g, 4, "st-reachability reduction");
  const int nA = g.size(0), nB = g.size(1), nC = g.size(2), nD = g.size(3);
  // Layers s | A1 | B1 | B2 | C1 | C2 | A2 | t.
  const int s = 0;
  auto a1 = [&](int a) { return 1 + a; };
  auto b1 = [&](int b) { return 1 + nA + b; };
  auto b2 = [&](int b) { return 1 + nA + nB + b; };
  auto c1 = [&](int c) { return 1 + nA + 2 * nB + c; };
  auto c2 = [&](int c) { return 1 + nA + 2 * nB + nC + c; };
  auto a2 = [&](int a) { return 1 + nA + 2 * nB + 2 * nC + a; };
  const int t = 1 + 2 * nA + 2 * nB + 2 * nC;
  std::vector<std::pair<int, int>> edges;
  for (int a = 0; a < nA; ++a)
    for (int b = 0; b < nB; ++b)
      if (g.adjacent(0, a, 1, b)) edges.emplace_back(a1(a), b1(b));
  for (int b = 0; b < nB; ++b)
    for (int c = 0; c < nC; ++c)
      if (g.adjacent(1, b, 2, c)) edges.emplace_back(b2(b), c1(c));
  for (int c = 0; c < nC; ++c)
    for (int a = 0; a < nA; ++a)
      if (g.adjacent(2, c, 0, a)) edges.emplace_back(c2(c), a2(a));
  ReductionResult res;
  res.answers = {false};
  target.build(t + 1, edges, s, t);
  ++res.calls.builds;
  for (int d = 0; d < nD; ++d) {
    PhaseGuard guard(target, res);
    const auto nb = g.neighbors(3, d, 1), nc = g.neighbors(3, d, 2);
    for (int b : nb) target.insert_edge(b1(b), b2(b));
    for (int c : nc) target.insert_edge(c1(c), c2(c));
    res.calls.updates += nb.size() + nc.size();
    for (int a : g.neighbors(3, d, 0)) {
      target.insert_edge(s, a1(a));
      target.insert_edge(a2(a), t);
      res.calls.updates += 2;
      ++res.calls.queries;
      if (target.query()) res.answers[0] = true;
      target.erase_edge(s, a1(a));
      target.erase_edge(a2(a), t);
      res.calls.updates += 2;
    }
    for (int b : nb) target.erase_edge(b1(b), b2(b));
    for (int c : nc) target.erase_edge(c1(c), c2(c));
    res.calls.updates += nb.size() + nc.size();
    guard.close();
  }
  return res;
}

}  // namespace dynds
