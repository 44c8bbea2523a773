#include <algorithm>
#include <sstream>

#include "dynds/reductions.hpp"

namespace dynds {

namespace {

std::string points_key(std::vector<Point> pts) {
  std::sort(pts.begin(), pts.end());
  std::ostringstream os;
  for (const Point& p : pts) os << p << ';';
  return os.str();
}

template <class T, class Eq>
void erase_one(std::vector<T>& v, Eq eq, const char* what) {
  auto it = std::find_if(v.begin(), v.end(), eq);
  if (it == v.end()) throw std::invalid_argument(std::string("erase of absent ") + what);
  *it = v.back();
  v.pop_back();
}

}  // namespace

void SequenceOracleTarget::build(const std::vector<Label>& values, size_t) {
  seq_ = SequenceOracle();
  for (size_t i = 0; i < values.size(); ++i) seq_.insert(i + 1, values[i]);
}

std::optional<ModeAnswer> SequenceOracleTarget::query(size_t l, size_t r) {
  return stat_ == Statistic::mode ? seq_.mode(l, r) : seq_.minority(l, r);
}

std::optional<std::string> SequenceOracleTarget::fingerprint() const {
  std::ostringstream os;
  for (Label v : seq_.values()) os << v << ',';
  return os.str();
}

void SequenceStructureTarget::build(const std::vector<Label>& values, size_t capacity) {
  seq_ = std::make_unique<SequenceAdapter>(std::max(capacity, values.size()), std::nullopt, counter_);
  for (size_t i = 0; i < values.size(); ++i) seq_->insert(i + 1, values[i]);
}

std::vector<std::optional<ModeAnswer>> BatchModeOracleTarget::solve(int, const std::vector<LabeledPoint>& points,
                                                                    const std::vector<Box>& queries) {
  return batch_dmode_oracle(points, queries);
}

std::vector<std::optional<ModeAnswer>> BatchModeStructureTarget::solve(int dim,
                                                                       const std::vector<LabeledPoint>& points,
                                                                       const std::vector<Box>& queries) {
  DynRangeModeDS ds(dim, std::max<size_t>(points.size(), 1), std::nullopt, counter_);
  for (const auto& lp : points) ds.insert(lp.point, lp.label);
  std::vector<std::optional<ModeAnswer>> out;
  out.reserve(queries.size());
  for (const Box& b : queries) out.push_back(ds.query(b));
  return out;
}

void DynModeOracleTarget::build(int, size_t, const std::vector<LabeledPoint>& points) { points_ = points; }

void DynModeOracleTarget::insert(const Point& p, Label label) { points_.push_back({p, label}); }

void DynModeOracleTarget::erase(const Point& p, Label label) {
  erase_one(points_, [&](const LabeledPoint& lp) { return lp.label == label && lp.point == p; }, "labeled point");
}

std::optional<std::string> DynModeOracleTarget::fingerprint() const {
  std::vector<std::pair<Point, Label>> v;
  for (const auto& lp : points_) v.emplace_back(lp.point, lp.label);
  std::sort(v.begin(), v.end());
  std::ostringstream os;
  for (const auto& [p, l] : v) os << p << '#' << l << ';';
  return os.str();
}

void DynModeStructureTarget::build(int dim, size_t capacity, const std::vector<LabeledPoint>& points) {
  ds_ = std::make_unique<DynRangeModeDS>(dim, std::max(capacity, points.size()), std::nullopt, counter_);
  for (const auto& lp : points) ds_->insert(lp.point, lp.label);
}

void SubConnOracleTarget::build(int n, const std::vector<std::pair<int, int>>& edges, int s, int t) {
  g_ = std::make_unique<SubConnOracle>(n, edges, s, t);
}

void StReachOracleTarget::build(int n, const std::vector<std::pair<int, int>>& edges, int s, int t) {
  g_ = std::make_unique<StReachOracle>(n, s, t);
  for (auto [u, v] : edges) g_->insert_edge(u, v);
}

void DocsOracleTarget::build(const std::vector<std::vector<Symbol>>& docs) {
  docs_ = docs;
  on_.assign(docs.size(), false);
}

std::optional<std::string> DocsOracleTarget::fingerprint() const {
  std::string s(on_.size(), '0');
  for (size_t i = 0; i < on_.size(); ++i)
    if (on_[i]) s[i] = '1';
  return s;
}

void CommonColorsTarget::build(const std::vector<std::vector<Symbol>>& docs) {
  std::map<Symbol, std::vector<Color>> holders;
  for (size_t d = 0; d < docs.size(); ++d)
    for (Symbol s : docs[d]) holders[s].push_back(static_cast<Color>(d) + 1);  // colors are positive
  std::vector<Color> array;
  span_.clear();
  present_.clear();
  for (auto& [sym, ds] : holders) {
    std::sort(ds.begin(), ds.end());
    ds.erase(std::unique(ds.begin(), ds.end()), ds.end());
    const int64_t l = static_cast<int64_t>(array.size()) + 1;
    array.insert(array.end(), ds.begin(), ds.end());
    span_[sym] = {l, static_cast<int64_t>(array.size())};
    present_.insert(ds.begin(), ds.end());
  }
  ds_ = std::make_unique<CommonColorsDS>(std::move(array), std::set<Color>{}, std::nullopt, counter_);
}

void CommonColorsTarget::set_on(size_t doc, bool on) {
  // A document without symbols never matches, so it has no color in the array.
  const Color c = static_cast<Color>(doc) + 1;
  if (present_.count(c)) ds_->toggle(c, on);
}

int64_t CommonColorsTarget::query(Symbol t1, Symbol t2) {
  auto a = span_.find(t1), b = span_.find(t2);
  if (a == span_.end() || b == span_.end()) return 0;
  return ds_->query(a->second, b->second);
}

void ColorScanTarget::build(size_t, const std::vector<ColoredPoint>& points) { points_ = points; }

void ColorScanTarget::erase(const Point& p, Color c) {
  erase_one(points_, [&](const ColoredPoint& cp) { return cp.color == c && cp.point == p; }, "colored point");
}

std::optional<std::string> ColorScanTarget::fingerprint() const {
  std::vector<std::pair<Point, Color>> v;
  for (const auto& cp : points_) v.emplace_back(cp.point, cp.color);
  std::sort(v.begin(), v.end());
  std::ostringstream os;
  for (const auto& [p, c] : v) os << p << '#' << c << ';';
  return os.str();
}

void DynColorTarget::build(size_t capacity, const std::vector<ColoredPoint>& points) {
  ds_ = std::make_unique<DynColorCountDS>(std::max(capacity, points.size()), std::nullopt, nullptr, counter_);
  for (const auto& cp : points) ds_->insert(cp.point, cp.color);
}

void SkylineOracleTarget::erase(const Point& p) {
  erase_one(points_, [&](const Point& q) { return q == p; }, "skyline point");
}

std::optional<std::string> SkylineOracleTarget::fingerprint() const { return points_key(points_); }

void SkylineRecorder::preprocess(const std::vector<Point>& points) {
  calls_.push_back({SkylineCall::Kind::preprocess, points});
}

void SkylineRecorder::insert(const Point& p) { calls_.push_back({SkylineCall::Kind::insert, {p}}); }

void SkylineRecorder::erase(const Point& p) { calls_.push_back({SkylineCall::Kind::erase, {p}}); }

int64_t SkylineRecorder::count() {
  calls_.push_back({SkylineCall::Kind::count, {}});
  return 0;
}

SemiOnlineSkylineTarget::SemiOnlineSkylineTarget(const std::vector<SkylineCall>& script,
                                                 std::optional<size_t> block_override, CounterPtr counter)
    : script_(script) {
  // Flatten to a semi-online trace: preprocessed points are inserts that never die,
  // every erase is matched to the oldest live copy of the same point.
  std::vector<SemiOnlineOp> trace;
  std::multimap<Point, size_t> live;
  auto add_insert = [&](const Point& p) {
    if (p.dim != 3)
      throw std::invalid_argument("the semi-online skyline structure is three-dimensional");
    live.emplace(p, trace.size());
    trace.push_back({SemiOnlineOp::Kind::insert, p, std::nullopt});
  };
  for (const SkylineCall& c : script_) {
    switch (c.kind) {
      case SkylineCall::Kind::preprocess:
        for (const Point& p : c.points) add_insert(p);
        break;
      case SkylineCall::Kind::insert:
        add_insert(c.points.at(0));
        break;
      case SkylineCall::Kind::erase: {
        auto it = live.find(c.points.at(0));
        if (it == live.end()) throw std::invalid_argument("script erases an absent point");
        trace[it->second].death = trace.size();
        live.erase(it);
        trace.push_back({SemiOnlineOp::Kind::erase, {}, std::nullopt});
        break;
      }
      case SkylineCall::Kind::count:
        trace.push_back({SemiOnlineOp::Kind::query, {}, std::nullopt});
        break;
    }
  }
  Skyline3DBlock block(std::move(counter));
  answers_ = semionline_run(block, trace, block_override, &stats_);
}

void SemiOnlineSkylineTarget::expect(SkylineCall::Kind kind, const std::vector<Point>& pts) {
  if (pos_ >= script_.size() || script_[pos_].kind != kind || script_[pos_].points != pts)
    throw std::logic_error("call " + std::to_string(pos_) + " departs from the announced script");
  ++pos_;
}

void SemiOnlineSkylineTarget::preprocess(const std::vector<Point>& points) {
  expect(SkylineCall::Kind::preprocess, points);
}

void SemiOnlineSkylineTarget::insert(const Point& p) { expect(SkylineCall::Kind::insert, {p}); }

void SemiOnlineSkylineTarget::erase(const Point& p) { expect(SkylineCall::Kind::erase, {p}); }

int64_t SemiOnlineSkylineTarget::count() {
  expect(SkylineCall::Kind::count, {});
  return answers_.at(next_answer_++);
}

void KleeOracleTarget::preprocess(int dim, int64_t scale, int64_t side_raw, const std::vector<Point>& corners) {
  dim_ = dim;
  scale_ = scale;
  side_raw_ = side_raw;
  corners_ = corners;
}

void KleeOracleTarget::erase(const Point& corner) {
  erase_one(corners_, [&](const Point& q) { return q == corner; }, "cube");
}

std::optional<std::string> KleeOracleTarget::fingerprint() const { return points_key(corners_); }

void HalfspaceScanTarget::build(int, int64_t, const std::vector<Point>& points) {
  pts_ = points;
  hs_.clear();
}

void HalfspaceScanTarget::erase(const Halfspace& h) {
  erase_one(hs_, [&](const Halfspace& g) { return g == h; }, "halfspace");
}

std::optional<std::string> HalfspaceScanTarget::fingerprint() const {
  std::vector<Halfspace> hs = hs_;
  std::sort(hs.begin(), hs.end());
  std::ostringstream os;
  for (const auto& h : hs) {
    for (int64_t c : h.normal) os << c << ',';
    os << '<' << (h.strict ? "" : "=") << h.offset_raw << ';';
  }
  os << '|' << points_key(pts_);
  return os.str();
}

void HalfspaceSystemTarget::build(int dim, int64_t scale, const std::vector<Point>& points) {
  sys_ = std::make_unique<HalfspaceSystem>(dim, scale, counter_);
  for (const Point& q : points) sys_->insert_point(q);
}

void HypergraphAdapter::build(int vertices, int k, int s) {
  if (variant_ == Variant::lazy)
    h_ = std::make_unique<HypercliqueLazy>(vertices, k, s, counter_);
  else
    h_ = std::make_unique<HypercliqueCounting>(vertices, k, s, counter_);
}

std::optional<std::string> HypergraphAdapter::fingerprint() const {
  std::ostringstream os;
  for (const Hyperedge& e : h_->edge_set()) {
    for (int v : e) os << v << ',';
    os << ';';
  }
  return os.str();
}

bool FaultHypergraphTarget::query() {
  const bool r = inner_->query();
  return seen_++ == flip_at_ ? !r : r;
}

void SlabAdapter::build(const Tensor& t) {
  if (variant_ == Variant::lazy)
    e_ = std::make_unique<EricksonLazy>(t, counter_);
  else
    e_ = std::make_unique<EricksonEager>(t, counter_);
}

std::optional<std::string> PrefixZeroOracleTarget::fingerprint() const {
  std::ostringstream os;
  const Tensor& t = o_->tensor();
  for (size_t i = 0; i < t.cells(); ++i) os << t.at_flat(i) << ',';
  return os.str();
}

void PrefixZeroStructureTarget::build(const Tensor& t) {
  ds_ = std::make_unique<LangermanDS>(t, std::nullopt, counter_);
}

void PrefixZeroStructureTarget::add(const Index& z, int64_t delta) { ds_->add(z, delta); }

}  // namespace dynds
