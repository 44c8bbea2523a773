#include "dynds/crosscheck.hpp"

#include <algorithm>
#include <functional>
#include <map>
#include <set>
#include <sstream>

#include "dynds/solve.hpp"

namespace dynds {

int64_t draw(std::mt19937_64& rng, int64_t lo, int64_t hi) {
  const uint64_t span = static_cast<uint64_t>(hi - lo) + 1;
  return lo + static_cast<int64_t>(rng() % span);
}

namespace {

bool coin(std::mt19937_64& rng, int percent) { return draw(rng, 1, 100) <= percent; }

const std::vector<std::string> kOracle = {"oracle"};

}  // namespace

const std::vector<ReductionInfo>& reduction_catalog() {
  static const std::vector<ReductionInfo> c = {
      {"mode", true, {"oracle", "real"}},
      {"minority", true, kOracle},
      {"batch-dmode", true, {"oracle", "real"}},
      {"dyn-dmode", true, {"oracle", "real"}},
      {"subconn", true, kOracle},
      {"2pattern", true, {"oracle", "real"}},
      {"color", true, {"oracle", "real"}},
      {"streach", true, kOracle},
      {"skyline", false, {"oracle", "real"}},
      {"klee", false, kOracle},
      {"halfspace", false, {"oracle", "real"}},
      {"hyperclique", false, {"oracle", "lazy", "counting", "real", "fault"}},
      {"erickson", false, {"oracle", "lazy", "eager", "real"}},
      {"langerman", false, {"oracle", "real"}},
  };
  return c;
}

const ReductionInfo& reduction_info(const std::string& id) {
  for (const auto& r : reduction_catalog())
    if (r.id == id) return r;
  throw std::invalid_argument("unknown reduction " + id);
}

namespace {

[[noreturn]] void bad_adapter(const std::string& id, const std::string& adapter) {
  throw std::invalid_argument("adapter '" + adapter + "' is not available for reduction " + id);
}

ReductionResult run_graph(const std::string& id, const std::string& a, const KPartiteGraph& g, CounterPtr counter) {
  const bool real = a == "real";
  if (id == "mode") {
    if (real) {
      SequenceStructureTarget t(counter);
      return red_4clique_range_mode(g, t);
    }
    SequenceOracleTarget t(Statistic::mode);
    return red_4clique_range_mode(g, t);
  }
  if (id == "minority") {
    SequenceOracleTarget t(Statistic::minority);
    return red_4clique_range_minority(g, t);
  }
  if (id == "batch-dmode") {
    if (real) {
      BatchModeStructureTarget t(counter);
      return red_clique_batch_dmode(g, t);
    }
    BatchModeOracleTarget t;
    return red_clique_batch_dmode(g, t);
  }
  if (id == "dyn-dmode") {
    if (real) {
      DynModeStructureTarget t(counter);
      return red_clique_dyn_dmode(g, t);
    }
    DynModeOracleTarget t;
    return red_clique_dyn_dmode(g, t);
  }
  if (id == "subconn") {
    SubConnOracleTarget t;
    return red_4clique_subconn(g, t);
  }
  if (id == "2pattern") {
    if (real) {
      CommonColorsTarget t(counter);
      return red_4clique_2pattern(g, t);
    }
    DocsOracleTarget t;
    return red_4clique_2pattern(g, t);
  }
  if (id == "color") {
    if (real) {
      DynColorTarget t(counter);
      return red_4clique_color(g, t);
    }
    ColorScanTarget t;
    return red_4clique_color(g, t);
  }
  StReachOracleTarget t;
  return red_4clique_streach(g, t);
}

ReductionResult run_oumv(const std::string& id, const std::string& a, const OuMvInstance& inst, CounterPtr counter) {
  const bool real = a == "real";
  if (id == "skyline") {
    if (!real) {
      SkylineOracleTarget t;
      return red_oumvk_skyline(inst, t);
    }
    if (inst.k != 2) throw ArityError("the semi-online skyline structure needs k = 2");
    SkylineRecorder rec;
    red_oumvk_skyline(inst, rec);
    SemiOnlineSkylineTarget t(rec.calls(), std::nullopt, counter);
    return red_oumvk_skyline(inst, t);
  }
  if (id == "klee") {
    KleeOracleTarget t;
    return red_oumvk_klee(inst, t);
  }
  if (id == "halfspace") {
    if (real) {
      HalfspaceSystemTarget t(counter);
      return red_oumvk_halfspace(inst, t);
    }
    HalfspaceScanTarget t;
    return red_oumvk_halfspace(inst, t);
  }
  if (id == "hyperclique") {
    if (a == "fault") {
      FaultHypergraphTarget t(std::make_unique<HypergraphAdapter>(HypergraphAdapter::Variant::counting, counter), 0);
      return red_oumvk_hyperclique(inst, t);
    }
    HypergraphAdapter t(a == "lazy" ? HypergraphAdapter::Variant::lazy : HypergraphAdapter::Variant::counting,
                        counter);
    return red_oumvk_hyperclique(inst, t);
  }
  if (id == "erickson") {
    SlabAdapter t(a == "lazy" ? SlabAdapter::Variant::lazy : SlabAdapter::Variant::eager, counter);
    return red_oumvk_erickson(inst, t);
  }
  if (real) {
    PrefixZeroStructureTarget t(counter);
    return red_oumvk_langerman(inst, t);
  }
  PrefixZeroOracleTarget t;
  return red_oumvk_langerman(inst, t);
}

}  // namespace

ReductionResult run_reduction(const std::string& id, const std::string& adapter, const Instance& inst,
                              CounterPtr counter) {
  const ReductionInfo& info = reduction_info(id);
  if (std::find(info.adapters.begin(), info.adapters.end(), adapter) == info.adapters.end()) bad_adapter(id, adapter);
  if (info.graph_input) {
    const auto* g = std::get_if<KPartiteGraph>(&inst);
    if (!g) throw ArityError("reduction " + id + " takes a graph file");
    return run_graph(id, adapter, *g, std::move(counter));
  }
  const auto* o = std::get_if<OuMvInstance>(&inst);
  if (!o) throw ArityError("reduction " + id + " takes an OuMv file");
  return run_oumv(id, adapter, *o, std::move(counter));
}

std::vector<bool> direct_answers(const std::string& id, const Instance& inst) {
  if (reduction_info(id).graph_input) return {clique_bruteforce(std::get<KPartiteGraph>(inst))};
  return oumv_bruteforce(std::get<OuMvInstance>(inst));
}

namespace {

KPartiteGraph random_graph(std::mt19937_64& rng, int parts, int max_size) {
  std::vector<int> sizes;
  for (int i = 0; i < parts; ++i) sizes.push_back(static_cast<int>(draw(rng, 1, max_size)));
  KPartiteGraph g(sizes);
  const int p = static_cast<int>(draw(rng, 30, 95));
  for (int a = 0; a < parts; ++a)
    for (int b = a + 1; b < parts; ++b)
      for (int u = 0; u < sizes[static_cast<size_t>(a)]; ++u)
        for (int v = 0; v < sizes[static_cast<size_t>(b)]; ++v)
          if (coin(rng, p)) g.add_edge(a, u, b, v);
  return g;
}

OuMvInstance random_oumv(std::mt19937_64& rng, int k, int64_t n, size_t max_queries) {
  OuMvInstance inst;
  inst.k = k;
  inst.n = n;
  int64_t cells = 1;
  for (int i = 0; i < k; ++i) cells *= n;
  const int density = static_cast<int>(draw(rng, 0, 60));
  for (int64_t c = 0; c < cells; ++c) {
    if (!coin(rng, density)) continue;
    Tuple t;
    int64_t rest = c;
    for (int i = 0; i < k; ++i) {
      t.push_back(rest % n + 1);
      rest /= n;
    }
    inst.m.push_back(t);
  }
  const size_t q = static_cast<size_t>(draw(rng, 1, static_cast<int64_t>(max_queries)));
  for (size_t i = 0; i < q; ++i) {
    SubsetQuery sq;
    for (int j = 0; j < k; ++j) {
      const int pick = static_cast<int>(draw(rng, 20, 80));
      std::vector<int64_t> s;
      for (int64_t x = 1; x <= n; ++x)
        if (coin(rng, pick)) s.push_back(x);
      sq.push_back(s);
    }
    inst.queries.push_back(sq);
  }
  return inst;
}

}  // namespace

Instance random_instance(const std::string& id, int param, std::mt19937_64& rng) {
  const ReductionInfo& info = reduction_info(id);
  if (info.graph_input) {
    if (id == "batch-dmode") return random_graph(rng, 2 * param + 1, param == 1 ? 5 : 4);
    if (id == "dyn-dmode") return random_graph(rng, 2 * param + 2, 4);
    return random_graph(rng, 4, 5);
  }
  const int k = param;
  int64_t n = 0;
  if (id == "langerman") n = k == 2 ? draw(rng, 2, 4) : 4;
  else if (id == "klee") n = draw(rng, 1, 4);
  else if (id == "halfspace") n = draw(rng, 1, 6);
  else if (id == "skyline") n = draw(rng, 1, 5);
  else n = draw(rng, 1, k == 2 ? 5 : 4);
  return random_oumv(rng, k, n, 4);
}

std::string serialize_instance(const Instance& inst) {
  if (const auto* g = std::get_if<KPartiteGraph>(&inst)) return serialize_graph(*g);
  return serialize_oumv(std::get<OuMvInstance>(inst));
}

namespace {

std::string bits(const std::vector<bool>& v) {
  std::string s;
  for (bool b : v) s += b ? '1' : '0';
  return s.empty() ? "-" : s;
}

uint64_t text_hash(const std::string& s) {
  uint64_t h = 1469598103934665603ull;
  for (unsigned char c : s) h = (h ^ c) * 1099511628211ull;
  return h;
}

std::mt19937_64 seeded(uint64_t seed, const std::string& tag, int64_t param) {
  std::seed_seq seq{static_cast<uint32_t>(seed), static_cast<uint32_t>(seed >> 32),
                    static_cast<uint32_t>(text_hash(tag)), static_cast<uint32_t>(param)};
  return std::mt19937_64(seq);
}

}  // namespace

CrosscheckReport crosscheck_suite(uint64_t seed, const std::string& reduction, int param, const std::string& adapter,
                                  size_t instances) {
  reduction_info(reduction);
  auto rng = seeded(seed, reduction, param);
  CrosscheckReport rep;
  std::ostringstream out;
  out << "suite reduction=" << reduction << " param=" << param << " adapter=" << adapter << " seed=" << seed
      << " instances=" << instances << "\n";
  for (size_t i = 0; i < instances; ++i) {
    const Instance inst = random_instance(reduction, param, rng);
    const std::vector<bool> want = direct_answers(reduction, inst);
    std::string got, error;
    try {
      got = bits(run_reduction(reduction, adapter, inst).answers);
    } catch (const std::exception& e) {
      error = e.what();
    }
    ++rep.instances;
    if (error.empty() && got == bits(want)) continue;
    ++rep.mismatches;
    out << "mismatch instance=" << i << " expected=" << bits(want) << " got=" << (error.empty() ? got : "error")
        << "\n";
    if (!error.empty()) out << "error " << error << "\n";
    out << serialize_instance(inst);
  }
  out << "result instances=" << rep.instances << " mismatches=" << rep.mismatches << "\n";
  rep.text = out.str();
  return rep;
}

std::vector<SuiteCase> default_suite(size_t instances) {
  std::vector<SuiteCase> out;
  auto add = [&](const std::string& id, int param, std::vector<std::string> adapters) {
    for (const auto& a : adapters) out.push_back({id, param, a, instances});
  };
  add("mode", 0, {"oracle", "real"});
  add("minority", 0, {"oracle"});
  add("batch-dmode", 1, {"oracle", "real"});
  add("batch-dmode", 2, {"oracle", "real"});
  add("dyn-dmode", 1, {"oracle", "real"});
  add("subconn", 0, {"oracle"});
  add("2pattern", 0, {"oracle", "real"});
  add("color", 0, {"oracle", "real"});
  add("streach", 0, {"oracle"});
  add("skyline", 2, {"oracle", "real"});
  add("skyline", 3, {"oracle"});
  add("klee", 2, {"oracle"});
  add("halfspace", 2, {"oracle", "real"});
  add("halfspace", 3, {"oracle", "real"});
  add("hyperclique", 2, {"oracle", "lazy", "counting"});
  add("hyperclique", 3, {"oracle", "lazy", "counting"});
  add("erickson", 2, {"lazy", "eager"});
  add("erickson", 3, {"lazy", "eager"});
  add("langerman", 2, {"oracle", "real"});
  add("langerman", 3, {"oracle", "real"});
  return out;
}

// ---- structure suites ---------------------------------------------------------

const std::vector<std::string>& structure_suite_ids() {
  static const std::vector<std::string> ids = {
      "range-mode-d1", "range-mode-d2", "sequence",     "common-colors",   "color-count",
      "langerman-d1",  "langerman-d2",  "erickson-lazy", "erickson-eager", "hyperclique-lazy",
      "hyperclique-counting", "skyline", "halfspace"};
  return ids;
}

namespace {

struct SuiteShape {
  std::string problem;
  std::string structure;
};

SuiteShape suite_shape(const std::string& suite) {
  static const std::map<std::string, SuiteShape> m = {
      {"range-mode-d1", {"range-mode", "real"}},
      {"range-mode-d2", {"range-mode", "real"}},
      {"sequence", {"sequence-mode", "real"}},
      {"common-colors", {"common-colors", "real"}},
      {"color-count", {"color-count", "real"}},
      {"langerman-d1", {"langerman", "real"}},
      {"langerman-d2", {"langerman", "real"}},
      {"erickson-lazy", {"erickson", "lazy"}},
      {"erickson-eager", {"erickson", "eager"}},
      {"hyperclique-lazy", {"hyperclique", "lazy"}},
      {"hyperclique-counting", {"hyperclique", "counting"}},
      {"skyline", {"skyline", "real"}},
      {"halfspace", {"halfspace", "real"}},
  };
  auto it = m.find(suite);
  if (it == m.end()) throw std::invalid_argument("unknown structure suite " + suite);
  return it->second;
}

void gen_range_mode(OpTrace& t, std::mt19937_64& rng) {
  const int d = t.header.dim;
  const size_t len = static_cast<size_t>(draw(rng, 1, d == 1 ? 400 : 300));
  const int64_t coord = draw(rng, 3, 50), labels = draw(rng, 1, 20);
  std::vector<std::vector<int64_t>> live;
  if (coin(rng, 30)) t.header.threshold = draw(rng, 1, d == 1 ? 8 : 4);
  for (size_t i = 0; i < len; ++i) {
    const int64_t r = draw(rng, 1, 100);
    if (r <= 45 || live.empty()) {
      std::vector<int64_t> a;
      for (int j = 0; j < d; ++j) a.push_back(draw(rng, 0, coord));
      a.push_back(draw(rng, 1, labels));
      live.push_back(a);
      t.ops.push_back({"INS", a});
    } else if (r <= 65) {
      const size_t j = static_cast<size_t>(draw(rng, 0, static_cast<int64_t>(live.size()) - 1));
      t.ops.push_back({"DEL", live[j]});
      live.erase(live.begin() + static_cast<long>(j));
    } else {
      std::vector<int64_t> a;
      for (int j = 0; j < d; ++j) {
        const int64_t x = draw(rng, 0, coord), y = draw(rng, 0, coord);
        a.push_back(std::min(x, y));
        a.push_back(std::max(x, y));
      }
      t.ops.push_back({"QRY", a});
    }
  }
}

void gen_sequence(OpTrace& t, std::mt19937_64& rng) {
  const size_t len = static_cast<size_t>(draw(rng, 1, 400));
  const int64_t labels = draw(rng, 1, 20);
  if (coin(rng, 30)) t.header.threshold = draw(rng, 1, 8);
  int64_t size = 0;
  for (size_t i = 0; i < len; ++i) {
    const int64_t r = draw(rng, 1, 100);
    if (r <= 45 || size == 0) {
      t.ops.push_back({"SINS", {draw(rng, 1, size + 1), draw(rng, 1, labels)}});
      ++size;
    } else if (r <= 65) {
      t.ops.push_back({"SDEL", {draw(rng, 1, size)}});
      --size;
    } else {
      const int64_t x = draw(rng, 1, size), y = draw(rng, 1, size);
      t.ops.push_back({"SQRY", {std::min(x, y), std::max(x, y)}});
    }
  }
}

void gen_common_colors(OpTrace& t, std::mt19937_64& rng) {
  const int64_t m = draw(rng, 1, 100), colors = draw(rng, 3, 15);
  std::vector<int64_t> arr;
  for (int64_t i = 0; i < m; ++i) arr.push_back(draw(rng, 1, colors));
  t.header.threshold = coin(rng, 50) ? 1 : m;
  t.ops.push_back({"ARR", arr});
  const size_t len = static_cast<size_t>(draw(rng, 1, 60));
  for (size_t i = 0; i < len; ++i) {
    if (coin(rng, 50)) {
      const int64_t c = arr[static_cast<size_t>(draw(rng, 0, m - 1))];
      t.ops.push_back({coin(rng, 60) ? "CON" : "COFF", {c}});
    } else {
      std::vector<int64_t> a;
      for (int j = 0; j < 2; ++j) {
        const int64_t x = draw(rng, 1, m), y = draw(rng, 1, m);
        a.push_back(std::min(x, y));
        a.push_back(std::max(x, y));
      }
      t.ops.push_back({"CQRY", a});
    }
  }
}

void gen_color_count(OpTrace& t, std::mt19937_64& rng) {
  const size_t len = static_cast<size_t>(draw(rng, 1, 150));
  const int64_t coord = draw(rng, 2, 30), colors = draw(rng, 1, 10);
  if (coin(rng, 50)) t.header.threshold = draw(rng, 1, 6);
  std::vector<std::vector<int64_t>> live;
  for (size_t i = 0; i < len; ++i) {
    const int64_t r = draw(rng, 1, 100);
    if (r <= 45 || live.empty()) {
      std::vector<int64_t> a = {draw(rng, 0, coord), draw(rng, 0, coord), draw(rng, 1, colors)};
      live.push_back(a);
      t.ops.push_back({"PINS", a});
    } else if (r <= 65) {
      const size_t j = static_cast<size_t>(draw(rng, 0, static_cast<int64_t>(live.size()) - 1));
      t.ops.push_back({"PDEL", live[j]});
      live.erase(live.begin() + static_cast<long>(j));
    } else {
      std::vector<int64_t> a;
      for (int j = 0; j < 2; ++j) {
        const int64_t x = draw(rng, 0, coord), y = draw(rng, 0, coord);
        a.push_back(std::min(x, y));
        a.push_back(std::max(x, y));
      }
      t.ops.push_back({"PQRY", a});
    }
  }
}

void gen_langerman(OpTrace& t, std::mt19937_64& rng) {
  const int d = t.header.dim;
  t.header.cap = d == 1 ? draw(rng, 1, 12) : draw(rng, 1, 8);
  if (coin(rng, 50)) t.header.threshold = draw(rng, 1, t.header.cap);
  const size_t len = static_cast<size_t>(draw(rng, 1, 80));
  for (size_t i = 0; i < len; ++i) {
    if (coin(rng, 70)) {
      std::vector<int64_t> a;
      for (int j = 0; j < d; ++j) a.push_back(draw(rng, 1, t.header.cap));
      a.push_back(draw(rng, -2, 2));
      t.ops.push_back({"LSET", a});
    } else {
      t.ops.push_back({"LQRY", {}});
    }
  }
}

void gen_erickson(OpTrace& t, std::mt19937_64& rng) {
  t.header.dim = static_cast<int>(draw(rng, 1, 3));
  t.header.cap = draw(rng, 1, t.header.dim == 3 ? 4 : 6);
  const size_t len = static_cast<size_t>(draw(rng, 1, 60));
  for (size_t i = 0; i < len; ++i) {
    if (coin(rng, 70)) t.ops.push_back({"EINC", {draw(rng, 1, t.header.dim), draw(rng, 1, t.header.cap)}});
    else t.ops.push_back({"EMAX", {}});
  }
}

void gen_hyperclique(OpTrace& t, std::mt19937_64& rng) {
  const int k = static_cast<int>(draw(rng, 2, 3));
  t.header.dim = k;
  t.header.cap = draw(rng, k + 1, 7);
  const int n = static_cast<int>(t.header.cap);
  std::vector<std::vector<int64_t>> all;
  std::vector<int64_t> cur;
  std::function<void(int)> rec = [&](int from) {
    if (static_cast<int>(cur.size()) == k) {
      all.push_back(cur);
      return;
    }
    for (int v = from; v < n; ++v) {
      cur.push_back(v);
      rec(v + 1);
      cur.pop_back();
    }
  };
  rec(0);
  std::set<std::vector<int64_t>> present;
  const size_t len = static_cast<size_t>(draw(rng, 1, 80));
  for (size_t i = 0; i < len; ++i) {
    if (coin(rng, 25)) {
      t.ops.push_back({"HSQ", {}});
      continue;
    }
    auto e = all[static_cast<size_t>(draw(rng, 0, static_cast<int64_t>(all.size()) - 1))];
    const bool has = present.count(e) != 0;
    if (has) present.erase(e);
    else present.insert(e);
    std::vector<int64_t> shown = e;
    if (coin(rng, 50)) std::reverse(shown.begin(), shown.end());
    t.ops.push_back({has ? "HEDEL" : "HEINS", shown});
  }
}

void gen_skyline(OpTrace& t, std::mt19937_64& rng) {
  t.header.dim = 3;
  const int64_t coord = draw(rng, 2, 20);
  if (coin(rng, 50)) t.header.threshold = draw(rng, 1, 10);
  const size_t len = static_cast<size_t>(draw(rng, 1, 300));
  std::vector<size_t> pending;
  for (size_t i = 0; i < len; ++i) {
    const int64_t r = draw(rng, 1, 100);
    if (r <= 45 || (r <= 65 && pending.empty())) {
      t.ops.push_back({"SOINS", {draw(rng, 0, coord), draw(rng, 0, coord), draw(rng, 0, coord), -1}});
      pending.push_back(i);
    } else if (r <= 65) {
      const size_t j = static_cast<size_t>(draw(rng, 0, static_cast<int64_t>(pending.size()) - 1));
      t.ops[pending[j]].args[3] = static_cast<int64_t>(i);
      pending.erase(pending.begin() + static_cast<long>(j));
      t.ops.push_back({"SODEL", {}});
    } else {
      t.ops.push_back({"SOQRY", {}});
    }
  }
}

void gen_halfspace(OpTrace& t, std::mt19937_64& rng) {
  const int d = static_cast<int>(draw(rng, 2, 3));
  t.header.dim = d;
  t.header.scale = draw(rng, 1, 2);
  std::set<std::vector<int64_t>> hs, pts;
  const size_t len = static_cast<size_t>(draw(rng, 1, 80));
  for (size_t i = 0; i < len; ++i) {
    const int64_t r = draw(rng, 1, 100);
    if (r <= 30) {
      std::vector<int64_t> a;
      for (int j = 0; j < d; ++j) a.push_back(draw(rng, -2, 2));
      a.push_back(draw(rng, -5, 5));
      a.push_back(draw(rng, 0, 1));
      if (!hs.insert(a).second) continue;
      t.ops.push_back({"HINS", a});
    } else if (r <= 40 && !hs.empty()) {
      auto it = std::next(hs.begin(), draw(rng, 0, static_cast<int64_t>(hs.size()) - 1));
      t.ops.push_back({"HDEL", *it});
      hs.erase(it);
    } else if (r <= 65 || pts.empty()) {
      std::vector<int64_t> a;
      for (int j = 0; j < d; ++j) a.push_back(draw(rng, -5, 5));
      if (!pts.insert(a).second) continue;
      t.ops.push_back({"HPIN", a});
    } else if (r <= 75 && pts.size() > 1) {
      auto it = std::next(pts.begin(), draw(rng, 0, static_cast<int64_t>(pts.size()) - 1));
      t.ops.push_back({"HPDEL", *it});
      pts.erase(it);
    } else {
      t.ops.push_back({"HMIN", {}});
    }
  }
}

/// Frequency of a label inside a closed box, by scan.
int64_t label_count(const std::vector<std::vector<int64_t>>& live, const std::vector<int64_t>& box, int d,
                    int64_t label) {
  int64_t c = 0;
  for (const auto& p : live) {
    if (p[static_cast<size_t>(d)] != label) continue;
    bool in = true;
    for (int j = 0; j < d && in; ++j)
      in = box[static_cast<size_t>(2 * j)] <= p[static_cast<size_t>(j)] &&
           p[static_cast<size_t>(j)] <= box[static_cast<size_t>(2 * j + 1)];
    c += in;
  }
  return c;
}

std::pair<int64_t, int64_t> split_mode(const std::string& line) {
  if (line == "none") return {0, 0};
  std::istringstream in(line);
  int64_t l = 0, f = 0;
  in >> l >> f;
  return {l, f};
}

/// Mode answers may break ties differently: frequencies must agree and the
/// returned label must attain that frequency.
std::string compare_mode(const OpTrace& t, const std::vector<std::string>& want, const std::vector<std::string>& got) {
  if (want.size() != got.size()) return "answer count differs";
  const int d = t.header.dim;
  std::vector<std::vector<int64_t>> live;
  std::vector<int64_t> seq;
  size_t q = 0;
  for (const auto& op : t.ops) {
    if (op.kind == "INS") {
      live.push_back(op.args);
    } else if (op.kind == "DEL") {
      live.erase(std::find(live.begin(), live.end(), op.args));
    } else if (op.kind == "SINS") {
      seq.insert(seq.begin() + op.args[0] - 1, op.args[1]);
    } else if (op.kind == "SDEL") {
      seq.erase(seq.begin() + op.args[0] - 1);
    } else {
      const auto [wl, wf] = split_mode(want[q]);
      const auto [gl, gf] = split_mode(got[q]);
      (void)wl;
      int64_t actual = 0;
      if (op.kind == "QRY") {
        actual = label_count(live, op.args, d, gl);
      } else {
        for (int64_t i = op.args[0]; i <= op.args[1]; ++i) actual += seq[static_cast<size_t>(i - 1)] == gl;
      }
      if ((want[q] == "none") != (got[q] == "none") || wf != gf || (got[q] != "none" && actual != gf))
        return "query " + std::to_string(q) + ": expected " + want[q] + " got " + got[q];
      ++q;
    }
  }
  return "";
}

}  // namespace

OpTrace random_structure_trace(const std::string& suite, std::mt19937_64& rng) {
  const SuiteShape shape = suite_shape(suite);
  OpTrace t;
  t.problem = shape.problem;
  if (suite == "range-mode-d2" || suite == "langerman-d2") t.header.dim = 2;
  if (shape.problem == "range-mode") gen_range_mode(t, rng);
  else if (shape.problem == "sequence-mode") gen_sequence(t, rng);
  else if (shape.problem == "common-colors") gen_common_colors(t, rng);
  else if (shape.problem == "color-count") gen_color_count(t, rng);
  else if (shape.problem == "langerman") gen_langerman(t, rng);
  else if (shape.problem == "erickson") gen_erickson(t, rng);
  else if (shape.problem == "hyperclique") gen_hyperclique(t, rng);
  else if (shape.problem == "skyline") gen_skyline(t, rng);
  else gen_halfspace(t, rng);
  return t;
}

CrosscheckReport structure_suite(uint64_t seed, const std::string& suite, size_t cases) {
  const SuiteShape shape = suite_shape(suite);
  auto rng = seeded(seed, suite, 0);
  CrosscheckReport rep;
  std::ostringstream out;
  out << "structures suite=" << suite << " structure=" << shape.structure << " seed=" << seed << " cases=" << cases
      << "\n";
  const bool mode = shape.problem == "range-mode" || shape.problem == "sequence-mode";
  for (size_t i = 0; i < cases; ++i) {
    const OpTrace t = random_structure_trace(suite, rng);
    std::string problem;
    try {
      const auto want = solve_trace(t, "oracle");
      const auto got = solve_trace(t, shape.structure);
      if (mode) problem = compare_mode(t, want, got);
      else if (want != got) {
        for (size_t q = 0; q < std::min(want.size(), got.size()) && problem.empty(); ++q)
          if (want[q] != got[q]) problem = "query " + std::to_string(q) + ": expected " + want[q] + " got " + got[q];
        if (problem.empty()) problem = "answer count differs";
      }
    } catch (const std::exception& e) {
      problem = std::string("error ") + e.what();
    }
    ++rep.instances;
    if (problem.empty()) continue;
    ++rep.mismatches;
    out << "mismatch case=" << i << " " << problem << "\n" << serialize_trace(t);
  }
  out << "result cases=" << rep.instances << " mismatches=" << rep.mismatches << "\n";
  rep.text = out.str();
  return rep;
}

}  // namespace dynds
