#include "dynds/solve.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <numeric>
#include <set>

#include "dynds/colors.hpp"
#include "dynds/debug.hpp"
#include "dynds/range_mode.hpp"
#include "dynds/semionline.hpp"
#include "dynds/tensor.hpp"

namespace dynds {

namespace {

using Args = std::vector<int64_t>;

std::string mode_line(const std::optional<ModeAnswer>& a) {
  return a ? std::to_string(a->label) + " " + std::to_string(a->freq) : "none";
}

Point point_of(const Args& a, size_t from, int dim, int64_t scale) {
  return Point::from_raw(Args(a.begin() + static_cast<long>(from), a.begin() + static_cast<long>(from) + dim), scale);
}

Box closed_box(const Args& a, int dim, int64_t scale) {
  Box b(dim, scale);
  for (int i = 0; i < dim; ++i) {
    if (a[static_cast<size_t>(2 * i)] > a[static_cast<size_t>(2 * i + 1)])
      throw std::invalid_argument("query box has lo > hi");
    b.set(i, Bound::at(a[static_cast<size_t>(2 * i)]), Bound::at(a[static_cast<size_t>(2 * i + 1)]));
  }
  return b;
}

size_t count_kind(const OpTrace& t, const std::string& kind) {
  return static_cast<size_t>(std::count_if(t.ops.begin(), t.ops.end(), [&](const TraceOp& o) { return o.kind == kind; }));
}

size_t capacity(const OpTrace& t, const std::string& insert_kind) {
  return t.header.cap > 0 ? static_cast<size_t>(t.header.cap) : std::max<size_t>(1, count_kind(t, insert_kind));
}

/// Calls fn for every op, turning any failure into an OpError for that op.
void each_op(const OpTrace& t, const std::function<void(const TraceOp&, size_t)>& fn) {
  for (size_t i = 0; i < t.ops.size(); ++i) {
    try {
      fn(t.ops[i], i);
    } catch (const OpError&) {
      throw;
    } catch (const std::exception& e) {
      throw OpError(i, e.what());
    }
  }
}

[[noreturn]] void unknown_structure(const OpTrace& t, const std::string& s) {
  throw std::invalid_argument("structure '" + s + "' does not support problem " + t.problem);
}

std::vector<std::string> run_range_mode(const OpTrace& t, const std::string& s, CounterPtr counter) {
  const int d = t.header.dim;
  const int64_t sc = t.header.scale;
  std::vector<std::string> out;
  std::vector<LabeledPoint> pts;
  std::unique_ptr<DynRangeModeDS> ds;
  if (s == "real") ds = std::make_unique<DynRangeModeDS>(d, capacity(t, "INS"), t.header.threshold, counter);
  else if (s != "oracle") unknown_structure(t, s);
  each_op(t, [&](const TraceOp& op, size_t) {
    if (op.kind == "QRY") {
      const Box b = closed_box(op.args, d, sc);
      out.push_back(mode_line(ds ? ds->query(b) : mode_oracle(pts, b)));
      return;
    }
    const Point p = point_of(op.args, 0, d, sc);
    const Label l = op.args[static_cast<size_t>(d)];
    if (op.kind == "INS") {
      if (ds) ds->insert(p, l);
      else pts.push_back({p, l});
    } else {
      if (ds) {
        ds->erase(p, l);
      } else {
        auto it = std::find_if(pts.begin(), pts.end(), [&](const LabeledPoint& q) { return q.label == l && q.point == p; });
        if (it == pts.end()) throw std::invalid_argument("delete of absent labelled point");
        pts.erase(it);
      }
    }
    if (ds && debug_asserts()) ds->check_invariants();
  });
  return out;
}

std::vector<std::string> run_sequence(const OpTrace& t, const std::string& s, CounterPtr counter) {
  std::vector<std::string> out;
  SequenceOracle oracle;
  std::unique_ptr<SequenceAdapter> seq;
  if (s == "real") seq = std::make_unique<SequenceAdapter>(capacity(t, "SINS"), t.header.threshold, counter);
  else if (s != "oracle") unknown_structure(t, s);
  each_op(t, [&](const TraceOp& op, size_t) {
    const auto& a = op.args;
    auto idx = [&](size_t i) {
      if (a[i] < 1) throw std::out_of_range("sequence index must be positive");
      return static_cast<size_t>(a[i]);
    };
    if (op.kind == "SINS") {
      if (seq) seq->insert(idx(0), a[1]);
      else oracle.insert(idx(0), a[1]);
    } else if (op.kind == "SDEL") {
      if (seq) seq->erase(idx(0));
      else oracle.erase(idx(0));
    } else {
      out.push_back(mode_line(seq ? seq->query(idx(0), idx(1)) : oracle.mode(idx(0), idx(1))));
    }
    if (seq && debug_asserts()) seq->structure().check_invariants();
  });
  return out;
}

std::vector<std::string> run_common_colors(const OpTrace& t, const std::string& s, CounterPtr counter) {
  if (s != "real" && s != "oracle") unknown_structure(t, s);
  std::vector<std::string> out;
  std::vector<Color> arr;
  std::set<Color> known, on;
  std::unique_ptr<CommonColorsDS> ds;
  bool have_array = false;
  each_op(t, [&](const TraceOp& op, size_t i) {
    if (op.kind == "ARR") {
      if (i != 0) throw std::invalid_argument("ARR must be the first op");
      arr = op.args;
      for (Color c : arr)
        if (c <= 0) throw std::invalid_argument("colors must be positive integers");
      known.insert(arr.begin(), arr.end());
      have_array = true;
      if (s == "real") ds = std::make_unique<CommonColorsDS>(arr, std::set<Color>{}, t.header.threshold, counter);
      return;
    }
    if (!have_array) throw std::invalid_argument("the array must be given by ARR first");
    if (op.kind == "CON" || op.kind == "COFF") {
      const Color c = op.args[0];
      if (!known.count(c)) throw std::invalid_argument("unknown color " + std::to_string(c));
      if (ds) ds->toggle(c, op.kind == "CON");
      if (op.kind == "CON") on.insert(c);
      else on.erase(c);
    } else {
      const Interval i1{op.args[0], op.args[1]}, i2{op.args[2], op.args[3]};
      const int64_t m = static_cast<int64_t>(arr.size());
      for (const Interval& iv : {i1, i2})
        if (iv.l < 1 || iv.l > iv.r || iv.r > m) throw std::out_of_range("malformed interval");
      out.push_back(std::to_string(ds ? ds->query(i1, i2) : cc_oracle(arr, on, i1, i2)));
    }
    if (ds && debug_asserts()) ds->check_invariants();
  });
  return out;
}

std::vector<std::string> run_color_count(const OpTrace& t, const std::string& s, CounterPtr counter) {
  const int64_t sc = t.header.scale;
  std::vector<std::string> out;
  std::vector<ColoredPoint> pts;
  std::unique_ptr<DynColorCountDS> ds;
  if (s == "real") {
    std::optional<size_t> period;
    if (t.header.threshold) {
      if (*t.header.threshold < 1) throw std::invalid_argument("rebuild period must be positive");
      period = static_cast<size_t>(*t.header.threshold);
    }
    ds = std::make_unique<DynColorCountDS>(capacity(t, "PINS"), period, nullptr, counter);
  } else if (s != "oracle") {
    unknown_structure(t, s);
  }
  each_op(t, [&](const TraceOp& op, size_t) {
    const auto& a = op.args;
    if (op.kind == "PQRY") {
      const Box b = closed_box(a, 2, sc);
      out.push_back(std::to_string(ds ? ds->query(b) : distinct_color_oracle(pts, b)));
      return;
    }
    const Point p = Point::from_raw({a[0], a[1]}, sc);
    if (op.kind == "PINS") {
      if (ds) ds->insert(p, a[2]);
      else pts.push_back({p, a[2]});
    } else if (ds) {
      ds->erase(p, a[2]);
    } else {
      auto it = std::find_if(pts.begin(), pts.end(), [&](const ColoredPoint& q) { return q.color == a[2] && q.point == p; });
      if (it == pts.end()) throw std::invalid_argument("delete of absent colored point");
      pts.erase(it);
    }
  });
  return out;
}

std::vector<std::string> run_klee(const OpTrace& t, const std::string& s) {
  if (s != "oracle") unknown_structure(t, s);
  const int d = t.header.dim;
  const int64_t sc = t.header.scale;
  if (!t.header.threshold || *t.header.threshold <= 0)
    throw std::invalid_argument("klee traces need the cube side as a positive threshold");
  const int64_t side = *t.header.threshold;
  std::vector<std::string> out;
  std::vector<Point> corners;
  each_op(t, [&](const TraceOp& op, size_t) {
    if (op.kind == "KVOL") {
      const Volume v = klee_unit_oracle(corners, side, d, sc);
      out.push_back(format_volume(v.raw, v.scale, v.dim));
      return;
    }
    const Point p = point_of(op.args, 0, d, sc);
    if (op.kind == "KINS") {
      corners.push_back(p);
    } else {
      auto it = std::find(corners.begin(), corners.end(), p);
      if (it == corners.end()) throw std::invalid_argument("delete of absent cube");
      corners.erase(it);
    }
  });
  return out;
}

std::vector<std::string> run_halfspace(const OpTrace& t, const std::string& s, CounterPtr counter) {
  const int d = t.header.dim;
  const int64_t sc = t.header.scale;
  std::vector<std::string> out;
  std::vector<Halfspace> hs;
  std::vector<Point> pts;
  std::unique_ptr<HalfspaceSystem> sys;
  if (s == "real") sys = std::make_unique<HalfspaceSystem>(d, sc, counter);
  else if (s != "oracle") unknown_structure(t, s);
  each_op(t, [&](const TraceOp& op, size_t) {
    const auto& a = op.args;
    if (op.kind == "HINS" || op.kind == "HDEL") {
      const int64_t strict = a[static_cast<size_t>(d + 1)];
      if (strict != 0 && strict != 1) throw std::invalid_argument("strict flag must be 0 or 1");
      const Halfspace h{Args(a.begin(), a.begin() + d), a[static_cast<size_t>(d)], strict == 1};
      if (sys) {
        if (op.kind == "HINS") sys->insert_halfspace(h);
        else sys->erase_halfspace(h);
      } else if (op.kind == "HINS") {
        hs.push_back(h);
      } else {
        auto it = std::find(hs.begin(), hs.end(), h);
        if (it == hs.end()) throw std::invalid_argument("delete of absent halfspace");
        hs.erase(it);
      }
    } else if (op.kind == "HPIN" || op.kind == "HPDEL") {
      const Point p = point_of(a, 0, d, sc);
      if (sys) {
        if (op.kind == "HPIN") sys->insert_point(p);
        else sys->erase_point(p);
      } else if (op.kind == "HPIN") {
        pts.push_back(p);
      } else {
        auto it = std::find(pts.begin(), pts.end(), p);
        if (it == pts.end()) throw std::invalid_argument("delete of absent point");
        pts.erase(it);
      }
    } else {
      if (!sys && pts.empty()) throw std::invalid_argument("minimum over an empty point set");
      out.push_back(std::to_string(sys ? sys->query_min() : halfspace_min_oracle(hs, pts)));
    }
  });
  return out;
}

std::vector<std::string> run_skyline(const OpTrace& t, const std::string& s, CounterPtr counter) {
  const int d = t.header.dim;
  const int64_t sc = t.header.scale;
  std::vector<SemiOnlineOp> trace;
  each_op(t, [&](const TraceOp& op, size_t) {
    if (op.kind == "SOINS") {
      const int64_t death = op.args[static_cast<size_t>(d)];
      if (death < -1) throw std::invalid_argument("death must be an op index or -1");
      trace.push_back({SemiOnlineOp::Kind::insert, point_of(op.args, 0, d, sc),
                       death < 0 ? std::nullopt : std::optional<size_t>(static_cast<size_t>(death))});
    } else if (op.kind == "SODEL") {
      trace.push_back({SemiOnlineOp::Kind::erase, {}, std::nullopt});
    } else {
      trace.push_back({SemiOnlineOp::Kind::query, {}, std::nullopt});
    }
  });
  validate_semionline(trace);
  std::vector<int64_t> answers;
  if (s == "real") {
    if (d != 3) throw std::invalid_argument("the semi-online skyline structure is three-dimensional");
    std::optional<size_t> b;
    if (t.header.threshold) {
      if (*t.header.threshold < 1) throw std::invalid_argument("block size must be positive");
      b = static_cast<size_t>(*t.header.threshold);
    }
    Skyline3DBlock block(counter);
    answers = semionline_run(block, trace, b);
  } else if (s == "oracle") {
    std::map<size_t, size_t> owner;
    for (size_t i = 0; i < trace.size(); ++i)
      if (trace[i].death) owner[*trace[i].death] = i;
    std::map<size_t, Point> live;
    for (size_t i = 0; i < trace.size(); ++i) {
      if (trace[i].kind == SemiOnlineOp::Kind::insert) {
        live[i] = trace[i].element;
      } else if (trace[i].kind == SemiOnlineOp::Kind::erase) {
        live.erase(owner.at(i));
      } else {
        std::vector<Point> pts;
        for (const auto& [_, p] : live) pts.push_back(p);
        answers.push_back(skyline_oracle(pts));
      }
    }
  } else {
    unknown_structure(t, s);
  }
  std::vector<std::string> out;
  for (int64_t a : answers) out.push_back(std::to_string(a));
  return out;
}

std::vector<std::string> run_langerman(const OpTrace& t, const std::string& s, CounterPtr counter) {
  const int d = t.header.dim;
  if (t.header.cap < 1) throw std::invalid_argument("langerman traces need the side as cap");
  const Tensor zero(d, t.header.cap);
  std::unique_ptr<LangermanTarget> target;
  LangermanDS* ds = nullptr;
  if (s == "real") {
    auto p = std::make_unique<LangermanDS>(zero, t.header.threshold, counter);
    ds = p.get();
    target = std::move(p);
  } else if (s == "oracle") {
    target = std::make_unique<LangermanOracle>(zero);
  } else {
    unknown_structure(t, s);
  }
  std::vector<std::string> out;
  each_op(t, [&](const TraceOp& op, size_t) {
    if (op.kind == "LQRY") {
      out.push_back(target->query() ? "true" : "false");
      return;
    }
    target->set(Index(op.args.begin(), op.args.begin() + d), op.args[static_cast<size_t>(d)]);
    if (ds && debug_asserts()) ds->check_invariants();
  });
  return out;
}

std::vector<std::string> run_erickson(const OpTrace& t, const std::string& s, CounterPtr counter) {
  const int k = t.header.dim;
  if (t.header.cap < 1) throw std::invalid_argument("erickson traces need the side as cap");
  Tensor dense(k, t.header.cap);
  std::unique_ptr<EricksonTarget> target;
  if (s == "lazy") target = std::make_unique<EricksonLazy>(dense, counter);
  else if (s == "eager" || s == "real") target = std::make_unique<EricksonEager>(dense, counter);
  else if (s != "oracle") unknown_structure(t, s);
  std::vector<std::string> out;
  each_op(t, [&](const TraceOp& op, size_t) {
    if (op.kind == "EMAX") {
      if (target) {
        out.push_back(std::to_string(target->query_max()));
      } else {
        int64_t mx = dense.at_flat(0);
        for (size_t i = 0; i < dense.cells(); ++i) mx = std::max(mx, dense.at_flat(i));
        out.push_back(std::to_string(mx));
      }
      return;
    }
    const int64_t axis = op.args[0], x = op.args[1];
    if (axis < 1 || axis > k || x < 1 || x > t.header.cap) throw std::out_of_range("slab out of range");
    if (target) {
      target->increment(static_cast<int>(axis), x);
    } else {
      for (size_t i = 0; i < dense.cells(); ++i)
        if (dense.unflat(i)[static_cast<size_t>(axis - 1)] == x) ++dense.at_flat(i);
    }
  });
  return out;
}

/// Direct check: some k other vertices whose every k-subset with s is an edge.
bool s_in_hyperclique(const std::set<Hyperedge>& edges, int n, int k, int s) {
  std::vector<int> others;
  for (int v = 0; v < n; ++v)
    if (v != s) others.push_back(v);
  std::vector<int> pick;
  std::function<bool(size_t)> rec = [&](size_t from) -> bool {
    if (static_cast<int>(pick.size()) == k) {
      std::vector<int> all = pick;
      all.push_back(s);
      std::sort(all.begin(), all.end());
      for (size_t drop = 0; drop < all.size(); ++drop) {
        Hyperedge e;
        for (size_t i = 0; i < all.size(); ++i)
          if (i != drop) e.push_back(all[i]);
        if (!edges.count(e)) return false;
      }
      return true;
    }
    for (size_t i = from; i < others.size(); ++i) {
      pick.push_back(others[i]);
      if (rec(i + 1)) return true;
      pick.pop_back();
    }
    return false;
  };
  return rec(0);
}

std::vector<std::string> run_hyperclique(const OpTrace& t, const std::string& s, CounterPtr counter) {
  const int k = t.header.dim;
  const int n = static_cast<int>(t.header.cap);
  if (n < k + 1) throw std::invalid_argument("hyperclique traces need at least k+1 vertices as cap");
  std::unique_ptr<HypercliqueTarget> target;
  if (s == "lazy") target = std::make_unique<HypercliqueLazy>(n, k, 0, counter);
  else if (s == "counting" || s == "real") target = std::make_unique<HypercliqueCounting>(n, k, 0, counter);
  else if (s != "oracle") unknown_structure(t, s);
  std::set<Hyperedge> edges;
  std::vector<std::string> out;
  each_op(t, [&](const TraceOp& op, size_t) {
    if (op.kind == "HSQ") {
      const bool r = target ? target->query_s() : s_in_hyperclique(edges, n, k, 0);
      out.push_back(r ? "true" : "false");
      return;
    }
    Hyperedge e;
    for (int64_t v : op.args) e.push_back(static_cast<int>(v));
    if (target) {
      if (op.kind == "HEINS") target->insert(e);
      else target->erase(e);
      return;
    }
    std::sort(e.begin(), e.end());
    if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw std::invalid_argument("hyperedge repeats a vertex");
    if (e.front() < 0 || e.back() >= n) throw std::invalid_argument("hyperedge vertex out of range");
    if (op.kind == "HEINS") {
      if (!edges.insert(e).second) throw std::invalid_argument("hyperedge already present");
    } else if (!edges.erase(e)) {
      throw std::invalid_argument("hyperedge absent");
    }
  });
  return out;
}

}  // namespace

std::vector<std::string> trace_structures(const std::string& problem) {
  if (problem == "klee") return {"oracle"};
  if (problem == "erickson") return {"oracle", "lazy", "eager", "real"};
  if (problem == "hyperclique") return {"oracle", "lazy", "counting", "real"};
  return {"oracle", "real"};
}

std::string format_volume(int64_t raw, int64_t scale, int dim) {
  int64_t den = 1;
  for (int i = 0; i < dim; ++i) den = checked_mul(den, scale);
  const int64_t g = std::gcd(raw < 0 ? -raw : raw, den);
  const int64_t num = g ? raw / g : raw, d = g ? den / g : den;
  return d == 1 ? std::to_string(num) : std::to_string(num) + "/" + std::to_string(d);
}

std::vector<std::string> solve_trace(const OpTrace& t, const std::string& structure, CounterPtr counter) {
  const auto ok = trace_structures(t.problem);
  if (std::find(ok.begin(), ok.end(), structure) == ok.end()) unknown_structure(t, structure);
  if (t.problem == "range-mode") return run_range_mode(t, structure, counter);
  if (t.problem == "sequence-mode") return run_sequence(t, structure, counter);
  if (t.problem == "common-colors") return run_common_colors(t, structure, counter);
  if (t.problem == "color-count") return run_color_count(t, structure, counter);
  if (t.problem == "klee") return run_klee(t, structure);
  if (t.problem == "halfspace") return run_halfspace(t, structure, counter);
  if (t.problem == "skyline") return run_skyline(t, structure, counter);
  if (t.problem == "langerman") return run_langerman(t, structure, counter);
  if (t.problem == "erickson") return run_erickson(t, structure, counter);
  if (t.problem == "hyperclique") return run_hyperclique(t, structure, counter);
  throw std::invalid_argument("unknown problem " + t.problem);
}

}  // namespace dynds
