#include "dynds/range_mode.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <stdexcept>

#include "dynds/debug.hpp"

namespace dynds {

namespace {

uint64_t label_tag(Label label) { return static_cast<uint64_t>(label) ^ (uint64_t{1} << 63); }
Label tag_label(uint64_t tag) { return static_cast<Label>(tag ^ (uint64_t{1} << 63)); }

bool better_answer(const ModeAnswer& a, const ModeAnswer& b) {
  return a.freq != b.freq ? a.freq > b.freq : a.label < b.label;
}

}  // namespace

int64_t DynRangeModeDS::default_threshold(int dim, size_t n_cap) {
  const double b = std::round(std::pow(static_cast<double>(n_cap), 1.0 / (2.0 * dim + 1.0)));
  return std::max<int64_t>(1, static_cast<int64_t>(b));
}

DynRangeModeDS::DynRangeModeDS(int dim, size_t n_cap, std::optional<int64_t> b_override,
                               CounterPtr counter)
    : dim_(dim), cap_(n_cap), counter_(counter ? std::move(counter) : make_counter()),
      boxes_(2 * std::max(dim, 1), Aggregate::max, counter_) {
  if (dim < 1 || 2 * dim > kMaxDim) throw std::invalid_argument("range mode dimension out of range");
  if (n_cap < 1) throw std::invalid_argument("range mode capacity must be positive");
  if (b_override && *b_override <= 0) throw std::invalid_argument("threshold override must be positive");
  b_ = b_override ? *b_override : default_threshold(dim, n_cap);
}

void DynRangeModeDS::check_point(const Point& p) const {
  if (p.dim != dim_) throw std::invalid_argument("point dimension does not match structure");
  if (scale_ != 0 && p.scale != scale_) throw std::invalid_argument("point scale does not match structure");
}

void DynRangeModeDS::insert(const Point& p, Label label) {
  check_point(p);
  if (size_ >= cap_) throw std::length_error("range mode capacity exceeded");
  scale_ = p.scale;
  auto it = labels_.find(label);
  if (it == labels_.end()) it = labels_.emplace(label, LabelState(dim_, counter_)).first;
  LabelState& st = it->second;
  st.occurrences.emplace(p, st.tree.insert(p));
  ++size_;
  refresh(label, st);
}

void DynRangeModeDS::erase(const Point& p, Label label) {
  check_point(p);
  auto it = labels_.find(label);
  if (it == labels_.end()) throw std::invalid_argument("delete of absent labelled point");
  LabelState& st = it->second;
  auto occ = st.occurrences.find(p);
  if (occ == st.occurrences.end()) throw std::invalid_argument("delete of absent labelled point");
  st.tree.erase(occ->second);
  st.occurrences.erase(occ);
  --size_;
  refresh(label, st);
  if (st.occurrences.empty()) labels_.erase(it);
}

void DynRangeModeDS::refresh(Label label, LabelState& st) {
  for (auto h : st.boxes) boxes_.erase(h);
  st.boxes.clear();
  const auto count = static_cast<int64_t>(st.occurrences.size());
  if (count > b_) {
    heavy_.insert(label);
    return;
  }
  heavy_.erase(label);
  if (count == 0) return;

  // Compress the label's own coordinates and take prefix sums on that grid.
  std::vector<std::vector<int64_t>> vals(static_cast<size_t>(dim_));
  for (const auto& [pt, h] : st.occurrences)
    for (int a = 0; a < dim_; ++a) vals[a].push_back(pt.raw[a]);
  std::vector<size_t> extent(static_cast<size_t>(dim_)), stride(static_cast<size_t>(dim_));
  size_t cells = 1;
  for (int a = 0; a < dim_; ++a) {
    auto& v = vals[a];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    extent[a] = v.size() + 1;  // slot 0 is the empty prefix
    stride[a] = cells;
    cells *= extent[a];
  }
  std::vector<int64_t> pre(cells, 0);
  for (const auto& [pt, h] : st.occurrences) {
    size_t idx = 0;
    for (int a = 0; a < dim_; ++a) {
      const auto pos = std::lower_bound(vals[a].begin(), vals[a].end(), pt.raw[a]) - vals[a].begin();
      idx += (static_cast<size_t>(pos) + 1) * stride[a];
    }
    ++pre[idx];
  }
  for (int a = 0; a < dim_; ++a)
    for (size_t i = 0; i < cells; ++i)
      if ((i / stride[a]) % extent[a] != 0) pre[i] += pre[i - stride[a]];
  counter_->add(cells * static_cast<uint64_t>(dim_));

  // Odometer over lo/hi index pairs per axis (1-based positions in vals).
  std::vector<size_t> lo(static_cast<size_t>(dim_), 1), hi(static_cast<size_t>(dim_), 1);
  const size_t corners = size_t{1} << dim_;
  for (;;) {
    int64_t inside = 0;
    for (size_t mask = 0; mask < corners; ++mask) {
      size_t idx = 0;
      int sign = 1;
      for (int a = 0; a < dim_; ++a) {
        if (mask >> a & 1) {
          idx += (lo[a] - 1) * stride[a];
          sign = -sign;
        } else {
          idx += hi[a] * stride[a];
        }
      }
      inside += sign * pre[idx];
    }
    counter_->add();
    if (inside > 0) {
      std::vector<int64_t> raw(2 * static_cast<size_t>(dim_));
      for (int a = 0; a < dim_; ++a) {
        raw[a] = vals[a][lo[a] - 1];
        raw[dim_ + a] = vals[a][hi[a] - 1];
      }
      st.boxes.push_back(boxes_.insert(Point::from_raw(raw, scale_), inside, label_tag(label)));
    }
    int a = 0;
    for (; a < dim_; ++a) {
      if (hi[a] < vals[a].size()) {
        ++hi[a];
        break;
      }
      if (lo[a] < vals[a].size()) {
        ++lo[a];
        hi[a] = lo[a];
        break;
      }
      lo[a] = hi[a] = 1;
    }
    if (a == dim_) break;
  }
}

std::optional<ModeAnswer> DynRangeModeDS::query(const Box& box) const {
  if (box.dim() != dim_) throw std::invalid_argument("query box dimension does not match structure");
  if (scale_ != 0 && box.scale() != scale_)
    throw std::invalid_argument("query box scale does not match structure");
  const RangeSet r = box.ranges();
  for (int a = 0; a < dim_; ++a)
    if (r[a].lo > r[a].hi) return std::nullopt;

  std::optional<ModeAnswer> best;
  auto offer = [&](ModeAnswer cand) {
    if (cand.freq > 0 && (!best || better_answer(cand, *best))) best = cand;
  };
  for (Label label : heavy_) {
    counter_->add();
    offer({label, labels_.at(label).tree.count(box)});
  }
  // A stored box lies inside the query iff its lower corner is >= L and its
  // upper corner is <= R, a dominance query in 2d dimensions.
  Box contained(2 * dim_, box.scale());
  constexpr int64_t kMin = std::numeric_limits<int64_t>::min();
  constexpr int64_t kMax = std::numeric_limits<int64_t>::max();
  for (int a = 0; a < dim_; ++a) {
    contained.set(a, r[a].lo == kMin ? Bound::neg_inf() : Bound::at(r[a].lo), Bound::pos_inf());
    contained.set(dim_ + a, Bound::neg_inf(), r[a].hi == kMax ? Bound::pos_inf() : Bound::at(r[a].hi));
  }
  if (auto hit = boxes_.max(contained)) offer({tag_label(hit->tag), hit->value});
  return best;
}

size_t DynRangeModeDS::box_count(Label label) const {
  auto it = labels_.find(label);
  return it == labels_.end() ? 0 : it->second.boxes.size();
}

int64_t DynRangeModeDS::label_count(Label label) const {
  auto it = labels_.find(label);
  return it == labels_.end() ? 0 : static_cast<int64_t>(it->second.occurrences.size());
}

void DynRangeModeDS::clear() {
  labels_.clear();
  heavy_.clear();
  boxes_.clear();
  size_ = 0;
}

void DynRangeModeDS::check_invariants() const {
  size_t total = 0;
  for (const auto& [label, st] : labels_) {
    const auto count = static_cast<int64_t>(st.occurrences.size());
    total += st.occurrences.size();
    invariant(static_cast<int64_t>(st.tree.size()) == count, "label tree size");
    invariant((count > b_) == (heavy_.count(label) != 0), "heavy set membership");
    if (count > b_) invariant(st.boxes.empty(), "heavy label keeps no boxes");
    for (auto h : st.boxes) {
      invariant(boxes_.live(h), "label box is live");
      const RangeEntry& e = boxes_.item(h);
      std::vector<int64_t> lo(e.point.raw.begin(), e.point.raw.begin() + dim_);
      std::vector<int64_t> hi(e.point.raw.begin() + dim_, e.point.raw.begin() + 2 * dim_);
      int64_t inside = 0;
      const Box b = Box::closed(lo, hi, e.point.scale);
      for (const auto& [pt, handle] : st.occurrences) inside += b.contains(pt);
      invariant(inside == e.value, "label box count");
    }
  }
  invariant(total == size_, "live size");
  invariant(heavy_.size() <= cap_ / static_cast<size_t>(b_), "heavy set bound");
}

namespace {

std::map<Label, int64_t> tally(const std::vector<LabeledPoint>& points, const Box& box) {
  std::map<Label, int64_t> freq;
  for (const auto& lp : points)
    if (box.contains(lp.point)) ++freq[lp.label];
  return freq;
}

}  // namespace

std::optional<ModeAnswer> mode_oracle(const std::vector<LabeledPoint>& points, const Box& box) {
  std::optional<ModeAnswer> best;
  for (const auto& [label, f] : tally(points, box))
    if (!best || f > best->freq) best = ModeAnswer{label, f};
  return best;
}

std::optional<ModeAnswer> minority_oracle(const std::vector<LabeledPoint>& points, const Box& box) {
  std::optional<ModeAnswer> best;
  for (const auto& [label, f] : tally(points, box))
    if (!best || f < best->freq) best = ModeAnswer{label, f};
  return best;
}

std::vector<std::optional<ModeAnswer>> batch_dmode_oracle(const std::vector<LabeledPoint>& points,
                                                          const std::vector<Box>& queries) {
  std::vector<std::optional<ModeAnswer>> out;
  out.reserve(queries.size());
  for (const Box& q : queries) out.push_back(mode_oracle(points, q));
  return out;
}

// ---------------------------------------------------------------------------

namespace {
constexpr int64_t kKeyLimit = int64_t{1} << 62;
}

SequenceAdapter::SequenceAdapter(size_t cap, std::optional<int64_t> b_override, CounterPtr counter)
    : cap_(cap), ds_(1, cap, b_override, std::move(counter)) {
  const int width = std::bit_width(static_cast<uint64_t>(cap) + 2);
  if (width > 60) throw std::invalid_argument("sequence capacity too large");
  gap_ = int64_t{1} << (62 - width);
}

void SequenceAdapter::insert(size_t index, Label value) {
  if (index < 1 || index > keys_.size() + 1) throw std::out_of_range("sequence insert index out of range");
  if (keys_.size() >= cap_) throw std::length_error("sequence capacity exceeded");
  auto pick = [&]() -> std::optional<int64_t> {
    const int64_t lower = index > 1 ? keys_[index - 2] : 0;
    if (index <= keys_.size()) {
      const int64_t upper = keys_[index - 1];
      if (upper - lower < 2) return std::nullopt;
      return lower + (upper - lower) / 2;
    }
    if (kKeyLimit - lower <= gap_) return std::nullopt;
    return lower + gap_;
  };
  auto key = pick();
  if (!key) {
    respace();
    key = pick();
  }
  keys_.insert(keys_.begin() + static_cast<std::ptrdiff_t>(index - 1), *key);
  values_.insert(values_.begin() + static_cast<std::ptrdiff_t>(index - 1), value);
  ds_.insert(Point{*key}, value);
}

void SequenceAdapter::erase(size_t index) {
  if (index < 1 || index > keys_.size()) throw std::out_of_range("sequence delete index out of range");
  ds_.erase(Point{keys_[index - 1]}, values_[index - 1]);
  keys_.erase(keys_.begin() + static_cast<std::ptrdiff_t>(index - 1));
  values_.erase(values_.begin() + static_cast<std::ptrdiff_t>(index - 1));
}

std::optional<ModeAnswer> SequenceAdapter::query(size_t l, size_t r) const {
  if (l < 1 || l > r || r > keys_.size()) throw std::out_of_range("sequence query range out of range");
  return ds_.query(Box::closed({keys_[l - 1]}, {keys_[r - 1]}));
}

void SequenceAdapter::respace() {
  ++rebuilds_;
  ds_.clear();
  for (size_t j = 0; j < keys_.size(); ++j) {
    keys_[j] = static_cast<int64_t>(j + 1) * gap_;
    ds_.insert(Point{keys_[j]}, values_[j]);
  }
}

void SequenceOracle::insert(size_t index, Label value) {
  if (index < 1 || index > values_.size() + 1) throw std::out_of_range("sequence insert index out of range");
  values_.insert(values_.begin() + static_cast<std::ptrdiff_t>(index - 1), value);
}

void SequenceOracle::erase(size_t index) {
  if (index < 1 || index > values_.size()) throw std::out_of_range("sequence delete index out of range");
  values_.erase(values_.begin() + static_cast<std::ptrdiff_t>(index - 1));
}

namespace {

std::map<Label, int64_t> tally_range(const std::vector<Label>& v, size_t l, size_t r) {
  if (l < 1 || l > r || r > v.size()) throw std::out_of_range("sequence query range out of range");
  std::map<Label, int64_t> freq;
  for (size_t i = l - 1; i < r; ++i) ++freq[v[i]];
  return freq;
}

}  // namespace

std::optional<ModeAnswer> SequenceOracle::mode(size_t l, size_t r) const {
  std::optional<ModeAnswer> best;
  for (const auto& [label, f] : tally_range(values_, l, r))
    if (!best || f > best->freq) best = ModeAnswer{label, f};
  return best;
}

std::optional<ModeAnswer> SequenceOracle::minority(size_t l, size_t r) const {
  std::optional<ModeAnswer> best;
  for (const auto& [label, f] : tally_range(values_, l, r))
    if (!best || f < best->freq) best = ModeAnswer{label, f};
  return best;
}

}  // namespace dynds
