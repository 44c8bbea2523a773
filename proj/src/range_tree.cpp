#include "dynds/range_tree.hpp"

#include <algorithm>
#include <bit>
#include <numeric>
#include <stdexcept>

namespace dynds {

namespace {
constexpr uint32_t kNone = 0xffffffffu;
}

struct RangeTree::Layer {
  struct Node {
    uint32_t lo = 0, hi = 0;
    int32_t left = -1, right = -1;
    std::unique_ptr<Layer> assoc;
  };

  int axis = 0;
  bool last = false;
  std::vector<int64_t> keys;
  std::vector<uint32_t> ids;
  std::vector<Node> nodes;
  size_t cap = 0;
  std::vector<int32_t> cnt;
  std::vector<uint32_t> best;
};

namespace {

struct Builder {
  const std::vector<RangeEntry>& entries;
  const std::vector<uint8_t>& active;
  const RangeTree& tree;
  int dim;
  Aggregate mode;
  uint64_t created = 0;

  std::unique_ptr<RangeTree::Layer> build(std::vector<uint32_t> ids, int axis);
  int32_t build_node(RangeTree::Layer& layer, uint32_t lo, uint32_t hi);
};

std::unique_ptr<RangeTree::Layer> Builder::build(std::vector<uint32_t> ids, int axis) {
  auto layer = std::make_unique<RangeTree::Layer>();
  layer->axis = axis;
  layer->last = (axis == dim - 1);
  std::sort(ids.begin(), ids.end(), [&](uint32_t a, uint32_t b) {
    const int64_t ka = entries[a].point.raw[axis], kb = entries[b].point.raw[axis];
    return ka != kb ? ka < kb : a < b;
  });
  layer->keys.resize(ids.size());
  for (size_t i = 0; i < ids.size(); ++i) layer->keys[i] = entries[ids[i]].point.raw[axis];
  layer->ids = std::move(ids);
  created += layer->ids.size();
  if (layer->last) {
    layer->cap = std::bit_ceil(std::max<size_t>(layer->ids.size(), 1));
    if (mode == Aggregate::max) {
      layer->best.assign(2 * layer->cap, kNone);
      for (size_t i = 0; i < layer->ids.size(); ++i)
        if (active[layer->ids[i]]) layer->best[layer->cap + i] = layer->ids[i];
      for (size_t i = layer->cap - 1; i >= 1; --i) {
        const uint32_t a = layer->best[2 * i], b = layer->best[2 * i + 1];
        layer->best[i] = (a == kNone) ? b : (b == kNone ? a : (tree.better(a, b) ? a : b));
      }
    } else {
      layer->cnt.assign(2 * layer->cap, 0);
      for (size_t i = 0; i < layer->ids.size(); ++i) layer->cnt[layer->cap + i] = active[layer->ids[i]];
      for (size_t i = layer->cap - 1; i >= 1; --i)
        layer->cnt[i] = layer->cnt[2 * i] + layer->cnt[2 * i + 1];
    }
    created += layer->cap;
  } else if (!layer->ids.empty()) {
    layer->nodes.reserve(2 * layer->ids.size());
    build_node(*layer, 0, static_cast<uint32_t>(layer->ids.size()));
  }
  return layer;
}

int32_t Builder::build_node(RangeTree::Layer& layer, uint32_t lo, uint32_t hi) {
  const auto index = static_cast<int32_t>(layer.nodes.size());
  layer.nodes.emplace_back();
  layer.nodes[index].lo = lo;
  layer.nodes[index].hi = hi;
  ++created;
  if (hi - lo > 1) {
    std::vector<uint32_t> sub(layer.ids.begin() + lo, layer.ids.begin() + hi);
    auto assoc = build(std::move(sub), layer.axis + 1);
    const uint32_t mid = lo + (hi - lo) / 2;
    const int32_t left = build_node(layer, lo, mid);
    const int32_t right = build_node(layer, mid, hi);
    layer.nodes[index].assoc = std::move(assoc);
    layer.nodes[index].left = left;
    layer.nodes[index].right = right;
  }
  return index;
}

}  // namespace

RangeTree::RangeTree(int dim, std::vector<RangeEntry> universe, Aggregate mode, CounterPtr counter,
                     bool initially_active)
    : dim_(dim), mode_(mode), counter_(counter ? std::move(counter) : make_counter()),
      entries_(std::move(universe)) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("range tree dimension out of range");
  if (entries_.size() >= kNone) throw std::invalid_argument("range tree universe too large");
  for (size_t i = 0; i < entries_.size(); ++i) {
    const Point& p = entries_[i].point;
    if (p.dim != dim) throw std::invalid_argument("range tree universe has mixed dimensions");
    if (i == 0)
      scale_ = p.scale;
    else if (p.scale != scale_)
      throw std::invalid_argument("range tree universe has mixed scales");
  }
  active_.assign(entries_.size(), initially_active ? 1 : 0);
  active_count_ = initially_active ? entries_.size() : 0;
  std::vector<uint32_t> ids(entries_.size());
  std::iota(ids.begin(), ids.end(), 0u);
  Builder builder{entries_, active_, *this, dim_, mode_};
  root_ = builder.build(std::move(ids), 0);
  counter_->add(builder.created);
}

RangeTree::~RangeTree() = default;
RangeTree::RangeTree(RangeTree&&) noexcept = default;
RangeTree& RangeTree::operator=(RangeTree&&) noexcept = default;

bool RangeTree::better(uint32_t a, uint32_t b) const {
  const RangeEntry& ea = entries_[a];
  const RangeEntry& eb = entries_[b];
  if (ea.value != eb.value) return ea.value > eb.value;
  if (ea.tag != eb.tag) return ea.tag < eb.tag;
  return a < b;
}

namespace {

struct Toggler {
  const std::vector<RangeEntry>& entries;
  const RangeTree& tree;
  Aggregate mode;
  VisitCounter& counter;
  uint32_t id;
  bool on;

  size_t position(const RangeTree::Layer& layer) const {
    const int64_t key = entries[id].point.raw[layer.axis];
    size_t lo = 0, hi = layer.ids.size();
    while (lo < hi) {
      counter.add();
      const size_t mid = (lo + hi) / 2;
      const bool less = layer.keys[mid] < key || (layer.keys[mid] == key && layer.ids[mid] < id);
      if (less)
        lo = mid + 1;
      else
        hi = mid;
    }
    if (lo >= layer.ids.size() || layer.ids[lo] != id)
      throw std::logic_error("range tree entry missing from layer");
    return lo;
  }

  void apply(RangeTree::Layer& layer) {
    const size_t pos = position(layer);
    if (layer.last) {
      size_t i = layer.cap + pos;
      if (mode == Aggregate::max) {
        layer.best[i] = on ? id : kNone;
        for (i /= 2; i >= 1; i /= 2) {
          counter.add();
          const uint32_t a = layer.best[2 * i], b = layer.best[2 * i + 1];
          layer.best[i] = (a == kNone) ? b : (b == kNone ? a : (tree.better(a, b) ? a : b));
        }
      } else {
        const int32_t delta = on ? 1 : -1;
        for (; i >= 1; i /= 2) {
          counter.add();
          layer.cnt[i] += delta;
        }
      }
      return;
    }
    int32_t node = 0;
    while (node >= 0) {
      counter.add();
      auto& n = layer.nodes[static_cast<size_t>(node)];
      if (!n.assoc) break;
      apply(*n.assoc);
      const uint32_t mid = n.lo + (n.hi - n.lo) / 2;
      node = pos < mid ? n.left : n.right;
    }
  }
};

template <class Visit>
void last_layer_walk(const RangeTree::Layer& layer, const IntRange& r, VisitCounter& counter,
                     Visit&& visit) {
  auto steps = [&](size_t n) {
    size_t s = 1;
    while (n > 1) {
      n >>= 1;
      ++s;
    }
    return s;
  };
  const auto first = std::lower_bound(layer.keys.begin(), layer.keys.end(), r.lo);
  const auto past = std::upper_bound(first, layer.keys.end(), r.hi);
  counter.add(2 * steps(layer.keys.size()));
  size_t lo = static_cast<size_t>(first - layer.keys.begin()) + layer.cap;
  size_t hi = static_cast<size_t>(past - layer.keys.begin()) + layer.cap;
  while (lo < hi) {
    if (lo & 1) {
      counter.add();
      visit(lo++);
    }
    if (hi & 1) {
      counter.add();
      visit(--hi);
    }
    lo >>= 1;
    hi >>= 1;
  }
}

struct Querier {
  const std::vector<RangeEntry>& entries;
  const std::vector<uint8_t>& active;
  const RangeTree& tree;
  int dim;
  VisitCounter& counter;
  const RangeSet& ranges;

  bool inside_from(uint32_t id, int axis) const {
    const Point& p = entries[id].point;
    for (int a = axis; a < dim; ++a)
      if (!ranges[a].contains(p.raw[a])) return false;
    return true;
  }

  // Calls on_node(layer, node) for canonical subtree roots and on_entry(id) for
  // canonical single entries on non-final axes.
  template <class OnLast, class OnEntry>
  void walk(const RangeTree::Layer& layer, OnLast& on_last, OnEntry& on_entry) const {
    if (layer.ids.empty()) return;
    const IntRange& r = ranges[layer.axis];
    if (layer.last) {
      on_last(layer, r);
      return;
    }
    descend(layer, 0, r, on_last, on_entry);
  }

  template <class OnLast, class OnEntry>
  void descend(const RangeTree::Layer& layer, int32_t index, const IntRange& r, OnLast& on_last,
               OnEntry& on_entry) const {
    counter.add();
    const auto& n = layer.nodes[static_cast<size_t>(index)];
    const int64_t kmin = layer.keys[n.lo], kmax = layer.keys[n.hi - 1];
    if (kmax < r.lo || kmin > r.hi) return;
    if (r.lo <= kmin && kmax <= r.hi) {
      if (!n.assoc) {
        const uint32_t id = layer.ids[n.lo];
        if (active[id] && inside_from(id, layer.axis + 1)) on_entry(id);
      } else {
        walk(*n.assoc, on_last, on_entry);
      }
      return;
    }
    descend(layer, n.left, r, on_last, on_entry);
    descend(layer, n.right, r, on_last, on_entry);
  }
};

}  // namespace

void RangeTree::set_active(size_t id, bool on) {
  if (id >= entries_.size()) throw std::out_of_range("unknown range tree entry");
  if ((active_[id] != 0) == on) return;
  active_[id] = on ? 1 : 0;
  active_count_ += on ? 1 : static_cast<size_t>(-1);
  Toggler t{entries_, *this, mode_, *counter_, static_cast<uint32_t>(id), on};
  t.apply(*root_);
}

void RangeTree::check_box(const Box& box) const {
  if (box.dim() != dim_) throw std::invalid_argument("query box dimension does not match tree");
  if (!entries_.empty() && box.scale() != scale_)
    throw std::invalid_argument("query box scale does not match tree");
}

int64_t RangeTree::count(const Box& box) const {
  check_box(box);
  return count(box.ranges());
}

int64_t RangeTree::count(const RangeSet& ranges) const {
  if (mode_ == Aggregate::max) throw std::logic_error("count query on a max-mode tree");
  if (entries_.empty()) return 0;
  int64_t total = 0;
  Querier q{entries_, active_, *this, dim_, *counter_, ranges};
  auto on_last = [&](const Layer& layer, const IntRange& r) {
    last_layer_walk(layer, r, *counter_, [&](size_t i) { total += layer.cnt[i]; });
  };
  auto on_entry = [&](uint32_t) { ++total; };
  q.walk(*root_, on_last, on_entry);
  return total;
}

bool RangeTree::empty(const Box& box) const {
  if (mode_ == Aggregate::max) return !max(box).has_value();
  return count(box) == 0;
}

std::optional<MaxHit> RangeTree::max(const Box& box) const {
  check_box(box);
  return max(box.ranges());
}

std::optional<MaxHit> RangeTree::max(const RangeSet& ranges) const {
  if (mode_ != Aggregate::max) throw std::logic_error("max query on a count-mode tree");
  if (entries_.empty()) return std::nullopt;
  uint32_t winner = kNone;
  auto offer = [&](uint32_t id) {
    if (id != kNone && (winner == kNone || better(id, winner))) winner = id;
  };
  Querier q{entries_, active_, *this, dim_, *counter_, ranges};
  auto on_last = [&](const Layer& layer, const IntRange& r) {
    last_layer_walk(layer, r, *counter_, [&](size_t i) { offer(layer.best[i]); });
  };
  auto on_entry = [&](uint32_t id) { offer(id); };
  q.walk(*root_, on_last, on_entry);
  if (winner == kNone) return std::nullopt;
  return MaxHit{entries_[winner].value, entries_[winner].tag, winner};
}

// ---------------------------------------------------------------------------

DynamicRangeTree::DynamicRangeTree(int dim, Aggregate mode, CounterPtr counter)
    : dim_(dim), mode_(mode), counter_(counter ? std::move(counter) : make_counter()) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("range tree dimension out of range");
}

void DynamicRangeTree::build_level(size_t level, std::vector<Handle> handles) {
  if (levels_.size() <= level) levels_.resize(level + 1);
  std::vector<RangeEntry> universe;
  universe.reserve(handles.size());
  for (size_t i = 0; i < handles.size(); ++i) {
    Item& it = items_[handles[i]];
    it.level = static_cast<int>(level);
    it.slot = static_cast<uint32_t>(i);
    universe.push_back(it.entry);
  }
  Level& lv = levels_[level];
  lv.tree.emplace(dim_, std::move(universe), mode_, counter_, true);
  lv.handles = std::move(handles);
  lv.dead = 0;
}

DynamicRangeTree::Handle DynamicRangeTree::insert(const Point& p, int64_t value, uint64_t tag) {
  if (p.dim != dim_) throw std::invalid_argument("point dimension does not match tree");
  if (scale_ == 0)
    scale_ = p.scale;
  else if (p.scale != scale_)
    throw std::invalid_argument("point scale does not match tree");
  const Handle h = items_.size();
  items_.push_back(Item{RangeEntry{p, value, tag}});
  ++live_;
  std::vector<Handle> carry{h};
  size_t level = 0;
  for (;; ++level) {
    if (level >= levels_.size() || !levels_[level].tree) break;
    Level& lv = levels_[level];
    for (Handle other : lv.handles)
      if (items_[other].live) carry.push_back(other);
    dead_ -= lv.dead;
    lv.tree.reset();
    lv.handles.clear();
    lv.dead = 0;
  }
  std::sort(carry.begin(), carry.end());
  // Merged sets may be smaller than the slot they would occupy; place by size.
  size_t target = 0;
  while ((size_t{1} << target) < carry.size()) ++target;
  target = std::min(target, level);
  while (target < levels_.size() && levels_[target].tree) ++target;
  build_level(target, std::move(carry));
  return h;
}

void DynamicRangeTree::erase(Handle h) {
  if (h >= items_.size() || !items_[h].live) throw std::invalid_argument("erase of absent entry");
  Item& it = items_[h];
  it.live = false;
  --live_;
  ++dead_;
  Level& lv = levels_[static_cast<size_t>(it.level)];
  lv.tree->set_active(it.slot, false);
  ++lv.dead;
  if (dead_ > live_ && dead_ >= 8) rebuild_all();
}

bool DynamicRangeTree::live(Handle h) const { return h < items_.size() && items_[h].live; }

void DynamicRangeTree::rebuild_all() {
  std::vector<Handle> all;
  all.reserve(live_);
  for (Level& lv : levels_) {
    for (Handle h : lv.handles)
      if (items_[h].live) all.push_back(h);
    lv.tree.reset();
    lv.handles.clear();
    lv.dead = 0;
  }
  dead_ = 0;
  if (all.empty()) return;
  std::sort(all.begin(), all.end());
  size_t target = 0;
  while ((size_t{1} << target) < all.size()) ++target;
  build_level(target, std::move(all));
}

void DynamicRangeTree::clear() {
  items_.clear();
  levels_.clear();
  live_ = dead_ = 0;
}

void DynamicRangeTree::check(const Box& box) const {
  if (box.dim() != dim_) throw std::invalid_argument("query box dimension does not match tree");
  if (scale_ != 0 && box.scale() != scale_)
    throw std::invalid_argument("query box scale does not match tree");
}

int64_t DynamicRangeTree::count(const Box& box) const {
  check(box);
  const RangeSet r = box.ranges();
  int64_t total = 0;
  for (const Level& lv : levels_)
    if (lv.tree && lv.tree->active_count() > 0) total += lv.tree->count(r);
  return total;
}

bool DynamicRangeTree::empty(const Box& box) const {
  check(box);
  const RangeSet r = box.ranges();
  for (const Level& lv : levels_) {
    if (!lv.tree || lv.tree->active_count() == 0) continue;
    if (mode_ == Aggregate::max ? lv.tree->max(r).has_value() : lv.tree->count(r) > 0) return false;
  }
  return true;
}

std::optional<MaxHit> DynamicRangeTree::max(const Box& box) const {
  check(box);
  const RangeSet r = box.ranges();
  std::optional<MaxHit> best;
  for (const Level& lv : levels_) {
    if (!lv.tree || lv.tree->active_count() == 0) continue;
    auto hit = lv.tree->max(r);
    if (!hit) continue;
    hit->entry = lv.handles[hit->entry];
    if (!best || hit->value > best->value ||
        (hit->value == best->value &&
         (hit->tag < best->tag || (hit->tag == best->tag && hit->entry < best->entry))))
      best = hit;
  }
  return best;
}

}  // namespace dynds
