#include "dynds/semionline.hpp"

#include <algorithm>
#include <bit>
#include <cmath>
#include <limits>
#include <map>
#include <set>
#include <unordered_map>

#include "dynds/debug.hpp"
#include "dynds/orthant_union.hpp"

namespace dynds {

size_t default_block_size(size_t n, double alpha, double beta) {
  const double b = std::round(std::pow(static_cast<double>(std::max<size_t>(n, 1)), beta / (1.0 + alpha)));
  return std::max<size_t>(1, static_cast<size_t>(b));
}

void validate_semionline(const std::vector<SemiOnlineOp>& trace) {
  std::vector<bool> claimed(trace.size(), false);
  for (size_t i = 0; i < trace.size(); ++i) {
    const SemiOnlineOp& op = trace[i];
    if (op.kind != SemiOnlineOp::Kind::insert) continue;
    if (!op.death) continue;
    const size_t d = *op.death;
    if (d <= i) throw OpError(i, "death time must come after the insertion");
    if (d >= trace.size()) throw OpError(i, "death time beyond the end of the trace");
    if (trace[d].kind != SemiOnlineOp::Kind::erase) throw OpError(i, "death time does not name a delete");
    if (claimed[d]) throw OpError(d, "delete claimed by two insertions");
    claimed[d] = true;
  }
  for (size_t i = 0; i < trace.size(); ++i)
    if (trace[i].kind == SemiOnlineOp::Kind::erase && !claimed[i])
      throw OpError(i, "delete matches no announced death time");
}

std::vector<int64_t> semionline_run(BlockProblem& problem, const std::vector<SemiOnlineOp>& trace,
                                    std::optional<size_t> b_override, SemiOnlineStats* stats) {
  validate_semionline(trace);
  size_t live_now = 0, n = 0;
  for (const auto& op : trace) {
    if (op.kind == SemiOnlineOp::Kind::insert) n = std::max(n, ++live_now);
    if (op.kind == SemiOnlineOp::Kind::erase) --live_now;
  }
  if (b_override && *b_override == 0) throw std::invalid_argument("block size must be positive");
  const size_t b = b_override ? *b_override : default_block_size(n, problem.alpha(), problem.beta());
  if (stats) stats->block_size = b;

  auto dies_before = [&](size_t insert_index, size_t end) {
    const auto& d = trace[insert_index].death;
    return d && *d < end;
  };
  std::unordered_map<size_t, size_t> owner;  // delete index -> insert index
  for (size_t i = 0; i < trace.size(); ++i)
    if (trace[i].kind == SemiOnlineOp::Kind::insert && trace[i].death) owner[*trace[i].death] = i;

  std::vector<int64_t> answers;
  std::set<size_t> live;  // insert indices
  for (size_t start = 0; start < trace.size(); start += b) {
    const size_t end = std::min(trace.size(), start + b);
    std::vector<Point> core;
    std::vector<Point> buffer;
    std::unordered_map<size_t, size_t> slot;  // insert index -> buffer position
    std::vector<size_t> slot_owner;
    for (size_t id : live) {
      if (dies_before(id, end)) {
        slot[id] = buffer.size();
        slot_owner.push_back(id);
        buffer.push_back(trace[id].element);
      } else {
        core.push_back(trace[id].element);
      }
    }
    problem.preprocess(core);
    if (stats) ++stats->windows;
    for (size_t i = start; i < end; ++i) {
      const SemiOnlineOp& op = trace[i];
      if (op.kind == SemiOnlineOp::Kind::insert) {
        live.insert(i);
        slot[i] = buffer.size();
        slot_owner.push_back(i);
        buffer.push_back(op.element);
      } else if (op.kind == SemiOnlineOp::Kind::erase) {
        const size_t id = owner.at(i);
        auto it = slot.find(id);
        if (it == slot.end()) throw OpError(i, "deleted element is not in the buffer");
        const size_t pos = it->second;
        const size_t moved = slot_owner.back();
        buffer[pos] = buffer.back();
        slot_owner[pos] = moved;
        slot[moved] = pos;
        buffer.pop_back();
        slot_owner.pop_back();
        slot.erase(id);
        live.erase(id);
      } else {
        answers.push_back(problem.block_query(buffer));
      }
      if (buffer.size() > 2 * b) throw std::logic_error("semi-online buffer exceeded 2b");
      if (stats) stats->max_buffer = std::max(stats->max_buffer, buffer.size());
    }
  }
  return answers;
}

int64_t skyline_oracle(const std::vector<Point>& points) {
  int64_t count = 0;
  for (size_t i = 0; i < points.size(); ++i) {
    bool maximal = true;
    for (size_t j = 0; j < points.size() && maximal; ++j) {
      if (i == j) continue;
      require_compatible(points[i], points[j]);
      bool above = true;
      for (int a = 0; a < points[i].dim; ++a)
        if (points[j].raw[a] < points[i].raw[a]) above = false;
      if (above) maximal = false;
    }
    count += maximal;
  }
  return count;
}

namespace {

RangeSet upper_orthant(const Point& p) {
  RangeSet r{};
  for (int a = 0; a < p.dim; ++a) r[a].lo = p.raw[a];
  return r;
}

RangeTree all_active(const std::vector<Point>& pts, const CounterPtr& counter) {
  std::vector<RangeEntry> entries;
  entries.reserve(pts.size());
  for (const Point& p : pts) entries.push_back({p, 0, 0});
  return RangeTree(3, std::move(entries), Aggregate::count, counter, true);
}

}  // namespace

Skyline3DBlock::Skyline3DBlock(CounterPtr counter) : counter_(counter ? std::move(counter) : make_counter()) {}

void Skyline3DBlock::preprocess(const std::vector<Point>& core) {
  for (const Point& p : core) {
    if (p.dim != 3) throw std::invalid_argument("skyline block points must be 3D");
    if (p.scale != core.front().scale) throw std::invalid_argument("skyline block points have mixed scales");
  }
  if (!core.empty()) scale_ = core.front().scale;
  std::vector<Point> sorted = core;
  std::sort(sorted.begin(), sorted.end(), [](const Point& a, const Point& b) { return a.raw > b.raw; });
  counter_->add(sorted.size() * static_cast<uint64_t>(std::bit_width(sorted.size())));
  // Sweep by decreasing position keeping the (y, z) staircase of everything
  // seen so far; a position is maximal iff the staircase does not cover it.
  std::map<int64_t, int64_t> stair;  // y -> z, z strictly decreasing in y
  std::vector<Point> maxima, sky;
  for (size_t i = 0; i < sorted.size();) {
    size_t j = i;
    while (j < sorted.size() && sorted[j].raw == sorted[i].raw) ++j;
    const Point& p = sorted[i];
    const int64_t y = p.raw[1], z = p.raw[2];
    counter_->add(std::bit_width(stair.size() + 1));
    auto it = stair.lower_bound(y);
    if (it == stair.end() || it->second < z) {
      maxima.push_back(p);
      if (j - i == 1) sky.push_back(p);
      auto lo = stair.upper_bound(y);
      while (lo != stair.begin()) {
        auto prev = std::prev(lo);
        if (prev->second > z) break;
        counter_->add();
        lo = stair.erase(prev);
      }
      stair[y] = z;
    }
    i = j;
  }
  skyline_size_ = sky.size();
  maxima_.emplace(all_active(maxima, counter_));
  skyline_.emplace(all_active(sky, counter_));
}

int64_t Skyline3DBlock::block_query(const std::vector<Point>& buffer) const {
  if (!maxima_) throw std::logic_error("block query before preprocessing");
  if (buffer.empty()) return static_cast<int64_t>(skyline_size_);
  for (const Point& p : buffer) {
    if (p.dim != 3) throw std::invalid_argument("skyline block points must be 3D");
    if (maxima_->size() > 0 && p.scale != scale_) throw std::invalid_argument("buffer scale does not match core");
  }
  const RangeTree mine = all_active(buffer, counter_);
  int64_t fresh = 0;
  for (const Point& p : buffer) {
    const RangeSet up = upper_orthant(p);
    if (maxima_->count(up) + mine.count(up) == 1) ++fresh;
  }
  // Core skyline points die iff some buffer point is >= them, i.e. they lie
  // in the union of the buffer's lower orthants. Only the buffer's maximal
  // coordinates matter for that union.
  std::vector<Point> distinct = buffer;
  std::sort(distinct.begin(), distinct.end());
  distinct.erase(std::unique(distinct.begin(), distinct.end()), distinct.end());
  const RangeTree uniq = all_active(distinct, counter_);
  OrthantUnion3D hull;
  for (const Point& p : distinct)
    if (uniq.count(upper_orthant(p)) == 1) hull.corners.push_back(p);
  int64_t killed = 0;
  for (const Box& box : hull.decompose(counter_.get())) killed += skyline_->count(box.ranges());
  return fresh + static_cast<int64_t>(skyline_size_) - killed;
}

int64_t OracleBlock::block_query(const std::vector<Point>& buffer) const {
  std::vector<Point> all = core_;
  all.insert(all.end(), buffer.begin(), buffer.end());
  return skyline_oracle(all);
}

Volume klee_unit_oracle(const std::vector<Point>& corners, int64_t side_raw, int dim, int64_t scale,
                        uint64_t max_cells) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("klee dimension out of range");
  if (side_raw <= 0) throw std::invalid_argument("cube side must be positive");
  Volume vol{0, scale, dim};
  if (corners.empty()) return vol;
  std::vector<std::vector<int64_t>> vals(static_cast<size_t>(dim));
  for (const Point& c : corners) {
    if (c.dim != dim || c.scale != scale) throw std::invalid_argument("cube corner dimension or scale mismatch");
    for (int a = 0; a < dim; ++a) {
      vals[a].push_back(checked_sub(c.raw[a], side_raw));
      vals[a].push_back(c.raw[a]);
    }
  }
  std::vector<size_t> extent(static_cast<size_t>(dim)), stride(static_cast<size_t>(dim));
  uint64_t cells = 1;
  for (int a = 0; a < dim; ++a) {
    auto& v = vals[a];
    std::sort(v.begin(), v.end());
    v.erase(std::unique(v.begin(), v.end()), v.end());
    extent[a] = v.size();  // one spare slot for the difference array
    stride[a] = cells;
    cells *= extent[a];
    if (cells > max_cells) throw std::length_error("klee oracle grid too large");
  }
  std::vector<int32_t> diff(cells, 0);
  const size_t corners_mask = size_t{1} << dim;
  for (const Point& c : corners) {
    std::vector<size_t> lo(static_cast<size_t>(dim)), hi(static_cast<size_t>(dim));
    for (int a = 0; a < dim; ++a) {
      lo[a] = static_cast<size_t>(std::lower_bound(vals[a].begin(), vals[a].end(), c.raw[a] - side_raw) - vals[a].begin());
      hi[a] = static_cast<size_t>(std::lower_bound(vals[a].begin(), vals[a].end(), c.raw[a]) - vals[a].begin());
    }
    for (size_t mask = 0; mask < corners_mask; ++mask) {
      size_t idx = 0;
      int sign = 1;
      for (int a = 0; a < dim; ++a) {
        if (mask >> a & 1) {
          idx += hi[a] * stride[a];
          sign = -sign;
        } else {
          idx += lo[a] * stride[a];
        }
      }
      diff[idx] += sign;
    }
  }
  for (int a = 0; a < dim; ++a)
    for (size_t i = 0; i < cells; ++i)
      if ((i / stride[a]) % extent[a] != 0) diff[i] += diff[i - stride[a]];
  for (size_t i = 0; i < cells; ++i) {
    if (diff[i] <= 0) continue;
    int64_t cell = 1;
    bool inside = true;
    for (int a = 0; a < dim && inside; ++a) {
      const size_t j = (i / stride[a]) % extent[a];
      if (j + 1 >= extent[a]) inside = false;
      else cell = checked_mul(cell, vals[a][j + 1] - vals[a][j]);
    }
    if (inside) vol.raw = checked_add(vol.raw, cell);
  }
  return vol;
}

bool Halfspace::contains(const Point& q) const {
  int64_t dot = 0;
  for (size_t i = 0; i < normal.size(); ++i) dot = checked_add(dot, checked_mul(normal[i], q.raw[i]));
  return strict ? dot < offset_raw : dot <= offset_raw;
}

HalfspaceSystem::HalfspaceSystem(int dim, int64_t scale, CounterPtr counter)
    : dim_(dim), scale_(scale), counter_(counter ? std::move(counter) : make_counter()) {
  if (dim < 1 || dim > kMaxDim) throw std::invalid_argument("halfspace dimension out of range");
  if (scale <= 0) throw std::invalid_argument("scale must be positive");
}

void HalfspaceSystem::check_halfspace(const Halfspace& h) const {
  if (static_cast<int>(h.normal.size()) != dim_) throw std::invalid_argument("halfspace normal has wrong dimension");
}

void HalfspaceSystem::check_point(const Point& q) const {
  if (q.dim != dim_ || q.scale != scale_) throw std::invalid_argument("point dimension or scale mismatch");
}

void HalfspaceSystem::adjust(int64_t from, int64_t to) {
  auto it = counts_.find(from);
  if (--it->second == 0) counts_.erase(it);
  ++counts_[to];
}

void HalfspaceSystem::insert_halfspace(const Halfspace& h) {
  check_halfspace(h);
  hs_.emplace(h, 0);
  for (auto& [q, c] : pts_) {
    counter_->add();
    if (h.contains(q)) {
      adjust(c, c + 1);
      ++c;
    }
  }
}

void HalfspaceSystem::erase_halfspace(const Halfspace& h) {
  check_halfspace(h);
  auto it = hs_.find(h);
  if (it == hs_.end()) throw std::invalid_argument("delete of absent halfspace");
  hs_.erase(it);
  for (auto& [q, c] : pts_) {
    counter_->add();
    if (h.contains(q)) {
      adjust(c, c - 1);
      --c;
    }
  }
}

void HalfspaceSystem::insert_point(const Point& q) {
  check_point(q);
  int64_t c = 0;
  for (const auto& [h, unused] : hs_) {
    counter_->add();
    c += h.contains(q);
  }
  pts_.emplace(q, c);
  ++counts_[c];
}

void HalfspaceSystem::erase_point(const Point& q) {
  check_point(q);
  auto it = pts_.find(q);
  if (it == pts_.end()) throw std::invalid_argument("delete of absent point");
  auto cnt = counts_.find(it->second);
  if (--cnt->second == 0) counts_.erase(cnt);
  pts_.erase(it);
}

int64_t HalfspaceSystem::query_min() const {
  if (pts_.empty()) throw std::logic_error("minimum over an empty point set");
  return counts_.begin()->first;
}

int64_t halfspace_min_oracle(const std::vector<Halfspace>& hs, const std::vector<Point>& pts) {
  if (pts.empty()) throw std::logic_error("minimum over an empty point set");
  int64_t best = std::numeric_limits<int64_t>::max();
  for (const Point& q : pts) {
    int64_t c = 0;
    for (const Halfspace& h : hs) c += h.contains(q);
    best = std::min(best, c);
  }
  return best;
}

}  // namespace dynds
