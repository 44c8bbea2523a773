#include "dynds/colors.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dynds/debug.hpp"

namespace dynds {

int64_t CommonColorsDS::default_threshold(size_t m) {
  return std::max<int64_t>(1, static_cast<int64_t>(std::round(std::cbrt(static_cast<double>(m)))));
}

namespace {

std::vector<RangeEntry> quadruples(const std::vector<Color>& a, int64_t b,
                                   std::map<Color, std::vector<int64_t>>& occ,
                                   std::vector<std::pair<Color, std::pair<size_t, size_t>>>& ranges) {
  for (size_t i = 0; i < a.size(); ++i) {
    if (a[i] <= 0) throw std::invalid_argument("colors must be positive integers");
    occ[a[i]].push_back(static_cast<int64_t>(i + 1));
  }
  const auto end = static_cast<int64_t>(a.size()) + 1;
  std::vector<RangeEntry> out;
  for (const auto& [c, pos] : occ) {
    const auto k = static_cast<int64_t>(pos.size());
    if (k > b) continue;
    const size_t first = out.size();
    auto next = [&](size_t j) { return j + 1 < pos.size() ? pos[j + 1] : end; };
    for (size_t j1 = 0; j1 < pos.size(); ++j1)
      for (size_t j2 = 0; j2 < pos.size(); ++j2)
        out.push_back({Point{pos[j1], next(j1), pos[j2], next(j2)}, 0, static_cast<uint64_t>(c)});
    ranges.push_back({c, {first, out.size()}});
  }
  return out;
}

}  // namespace

CommonColorsDS::CommonColorsDS(std::vector<Color> a, const std::set<Color>& on,
                               std::optional<int64_t> b_thresh, CounterPtr counter)
    : a_(std::move(a)), counter_(counter ? std::move(counter) : make_counter()),
      tree_(4, {}, Aggregate::count, counter_) {
  if (b_thresh && *b_thresh <= 0) throw std::invalid_argument("threshold must be positive");
  b_ = b_thresh ? *b_thresh : default_threshold(a_.size());
  std::map<Color, std::vector<int64_t>> occ;
  std::vector<std::pair<Color, std::pair<size_t, size_t>>> ranges;
  auto universe = quadruples(a_, b_, occ, ranges);
  tree_ = RangeTree(4, std::move(universe), Aggregate::count, counter_);
  for (auto& [c, pos] : occ) colors_[c].occ = std::move(pos);
  for (const auto& [c, r] : ranges) {
    colors_[c].first = r.first;
    colors_[c].last = r.second;
  }
  for (Color c : on) toggle(c, true);
}

bool CommonColorsDS::heavy(Color c) const {
  auto it = colors_.find(c);
  if (it == colors_.end()) throw std::invalid_argument("unknown color");
  return static_cast<int64_t>(it->second.occ.size()) > b_;
}

void CommonColorsDS::toggle(Color c, bool on) {
  auto it = colors_.find(c);
  if (it == colors_.end()) throw std::invalid_argument("unknown color " + std::to_string(c));
  if (on)
    on_.insert(c);
  else
    on_.erase(c);
  const ColorInfo& info = it->second;
  for (size_t id = info.first; id < info.last; ++id) tree_.set_active(id, on);
  counter_->add();
  if (debug_asserts()) check_invariants();
}

void CommonColorsDS::check_interval(Interval i) const {
  if (i.l < 1 || i.l > i.r || i.r > static_cast<int64_t>(a_.size()))
    throw std::invalid_argument("malformed interval");
}

bool CommonColorsDS::occurs_in(const ColorInfo& info, Interval i) const {
  counter_->add();
  auto it = std::lower_bound(info.occ.begin(), info.occ.end(), i.l);
  return it != info.occ.end() && *it <= i.r;
}

int64_t CommonColorsDS::query(Interval i1, Interval i2) const {
  check_interval(i1);
  check_interval(i2);
  RangeSet r{};
  r[0] = {i1.l, i1.r};
  r[1] = {i1.r + 1, std::numeric_limits<int64_t>::max()};
  r[2] = {i2.l, i2.r};
  r[3] = {i2.r + 1, std::numeric_limits<int64_t>::max()};
  int64_t total = tree_.count(r);
  for (Color c : on_) {
    const ColorInfo& info = colors_.at(c);
    if (static_cast<int64_t>(info.occ.size()) <= b_) continue;
    if (occurs_in(info, i1) && occurs_in(info, i2)) ++total;
  }
  return total;
}

void CommonColorsDS::check_invariants() const {
  size_t expected = 0;
  for (Color c : on_) {
    const auto k = colors_.at(c).occ.size();
    if (static_cast<int64_t>(k) <= b_) expected += k * k;
  }
  invariant(expected == tree_.active_count(), "active quadruples equal sum of squared occurrences");
}

int64_t cc_oracle(const std::vector<Color>& a, const std::set<Color>& on, Interval i1, Interval i2) {
  std::set<Color> first, both;
  for (int64_t i = i1.l; i <= i1.r; ++i) first.insert(a.at(static_cast<size_t>(i - 1)));
  for (int64_t i = i2.l; i <= i2.r; ++i) {
    const Color c = a.at(static_cast<size_t>(i - 1));
    if (first.count(c) && on.count(c)) both.insert(c);
  }
  return static_cast<int64_t>(both.size());
}

int64_t docs_oracle(const std::vector<std::vector<Symbol>>& docs, const std::vector<bool>& on, Symbol t1,
                    Symbol t2) {
  int64_t total = 0;
  for (size_t i = 0; i < docs.size(); ++i) {
    if (!on.at(i)) continue;
    const auto& d = docs[i];
    if (std::find(d.begin(), d.end(), t1) != d.end() && std::find(d.begin(), d.end(), t2) != d.end()) ++total;
  }
  return total;
}

// ---------------------------------------------------------------------------

EnumerationBackend::EnumerationBackend(CounterPtr counter)
    : counter_(counter ? std::move(counter) : make_counter()) {}

void EnumerationBackend::build(const std::vector<ColoredPoint>& points) {
  std::map<Color, std::vector<RangeEntry>> by_color;
  for (const auto& cp : points) by_color[cp.color].push_back({cp.point, 0, 0});
  trees_.clear();
  for (auto& [c, pts] : by_color) trees_.emplace_back(2, std::move(pts), Aggregate::count, counter_, true);
}

int64_t EnumerationBackend::count(const Box& box) const {
  int64_t total = 0;
  for (const RangeTree& t : trees_) total += t.count(box) > 0;
  return total;
}

size_t DynColorCountDS::default_period(size_t n_cap) {
  const double r = std::round(std::pow(static_cast<double>(n_cap), 2.0 / 3.0));
  return std::max<size_t>(1, static_cast<size_t>(r));
}

DynColorCountDS::DynColorCountDS(size_t n_cap, std::optional<size_t> period,
                                 std::unique_ptr<ColorCountBackend> backend, CounterPtr counter)
    : period_(period ? *period : default_period(n_cap)),
      counter_(counter ? std::move(counter) : make_counter()),
      backend_(backend ? std::move(backend) : std::make_unique<EnumerationBackend>(counter_)) {
  if (period_ == 0) throw std::invalid_argument("rebuild period must be positive");
  backend_->build({});
}

void DynColorCountDS::insert(const Point& p, Color c) {
  if (p.dim != 2) throw std::invalid_argument("color counting points are 2D");
  auto it = colors_.find(c);
  if (it == colors_.end()) it = colors_.emplace(c, ColorState(counter_)).first;
  it->second.points.emplace(p, it->second.current.insert(p));
  ++size_;
  touched(c);
}

void DynColorCountDS::erase(const Point& p, Color c) {
  auto it = colors_.find(c);
  if (it == colors_.end()) throw std::invalid_argument("delete of absent colored point");
  auto pt = it->second.points.find(p);
  if (pt == it->second.points.end()) throw std::invalid_argument("delete of absent colored point");
  it->second.current.erase(pt->second);
  it->second.points.erase(pt);
  --size_;
  touched(c);
}

void DynColorCountDS::touched(Color c) {
  dirty_.insert(c);
  if (++since_rebuild_ >= period_) rebuild();
}

void DynColorCountDS::rebuild() {
  ++rebuilds_;
  std::vector<ColoredPoint> snapshot;
  snapshot.reserve(size_);
  for (auto it = colors_.begin(); it != colors_.end();) {
    ColorState& st = it->second;
    std::vector<RangeEntry> pts;
    for (const auto& [p, h] : st.points) {
      snapshot.push_back({p, it->first});
      pts.push_back({p, 0, 0});
    }
    if (pts.empty()) {
      it = colors_.erase(it);
      continue;
    }
    st.old.emplace(2, std::move(pts), Aggregate::count, counter_, true);
    ++it;
  }
  backend_->build(snapshot);
  dirty_.clear();
  since_rebuild_ = 0;
}

int64_t DynColorCountDS::query(const Box& box) const {
  if (box.dim() != 2) throw std::invalid_argument("color counting boxes are 2D");
  int64_t total = backend_->count(box);
  for (Color c : dirty_) {
    auto it = colors_.find(c);
    if (it == colors_.end()) continue;
    const ColorState& st = it->second;
    counter_->add();
    const bool now = st.current.size() > 0 && !st.current.empty(box);
    const bool before = st.old && st.old->count(box) > 0;
    total += static_cast<int64_t>(now) - static_cast<int64_t>(before);
  }
  return total;
}

int64_t distinct_color_oracle(const std::vector<ColoredPoint>& points, const Box& box) {
  std::set<Color> seen;
  for (const auto& cp : points)
    if (box.contains(cp.point)) seen.insert(cp.color);
  return static_cast<int64_t>(seen.size());
}

}  // namespace dynds
