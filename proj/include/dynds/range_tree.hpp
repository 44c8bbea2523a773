#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <vector>

#include "dynds/counter.hpp"
#include "dynds/geometry.hpp"

namespace dynds {

enum class Aggregate { count, max, emptiness };

struct RangeEntry {
  Point point;
  int64_t value = 0;
  uint64_t tag = 0;
};

/// Result of a max query. Ties are broken by smallest tag, then smallest entry id.
struct MaxHit {
  int64_t value = 0;
  uint64_t tag = 0;
  size_t entry = 0;
};

/// Multi-dimensional range tree over a universe fixed at construction. Entries
/// are switched on and off; queries only see active entries.
///
/// Non-final axes are balanced binary trees whose internal nodes own a tree
/// over the next axis. The final axis is a segment tree over the node's
/// entries sorted by that axis, holding either an active count or the best
/// active entry.
class RangeTree {
 public:
  RangeTree(int dim, std::vector<RangeEntry> universe, Aggregate mode,
            CounterPtr counter = nullptr, bool initially_active = false);
  ~RangeTree();
  RangeTree(RangeTree&&) noexcept;
  RangeTree& operator=(RangeTree&&) noexcept;

  int dim() const { return dim_; }
  Aggregate mode() const { return mode_; }
  size_t size() const { return entries_.size(); }
  size_t active_count() const { return active_count_; }
  const RangeEntry& entry(size_t id) const { return entries_.at(id); }
  bool active(size_t id) const { return active_.at(id) != 0; }

  /// Idempotent: re-applying the current state is a no-op.
  void set_active(size_t id, bool on);

  int64_t count(const Box& box) const;
  std::optional<MaxHit> max(const Box& box) const;
  bool empty(const Box& box) const;

  int64_t count(const RangeSet& ranges) const;
  std::optional<MaxHit> max(const RangeSet& ranges) const;

  const CounterPtr& counter() const { return counter_; }

  /// True iff (value, tag, id) of a ranks above b.
  bool better(uint32_t a, uint32_t b) const;

  struct Layer;  // defined in the implementation file

 private:
  void check_box(const Box& box) const;

  int dim_;
  Aggregate mode_;
  CounterPtr counter_;
  std::vector<RangeEntry> entries_;
  std::vector<uint8_t> active_;
  size_t active_count_ = 0;
  std::unique_ptr<Layer> root_;
  int64_t scale_ = 1;
};

/// Fully dynamic wrapper built with the logarithmic method: static trees of
/// geometrically growing sizes, merged on insertion; deletions deactivate and a
/// global rebuild runs once dead entries outnumber live ones.
class DynamicRangeTree {
 public:
  using Handle = uint64_t;

  DynamicRangeTree(int dim, Aggregate mode, CounterPtr counter = nullptr);

  Handle insert(const Point& p, int64_t value = 0, uint64_t tag = 0);
  void erase(Handle h);
  bool live(Handle h) const;
  const RangeEntry& item(Handle h) const { return items_.at(h).entry; }

  size_t size() const { return live_; }
  int dim() const { return dim_; }

  int64_t count(const Box& box) const;
  bool empty(const Box& box) const;
  /// MaxHit::entry holds the handle of the winning item.
  std::optional<MaxHit> max(const Box& box) const;

  void clear();

 private:
  struct Item {
    RangeEntry entry;
    bool live = true;
    int level = -1;
    uint32_t slot = 0;
  };
  struct Level {
    std::optional<RangeTree> tree;
    std::vector<Handle> handles;
    size_t dead = 0;
  };

  void build_level(size_t level, std::vector<Handle> handles);
  void rebuild_all();
  void check(const Box& box) const;

  int dim_;
  Aggregate mode_;
  CounterPtr counter_;
  std::vector<Item> items_;
  std::vector<Level> levels_;
  size_t live_ = 0;
  size_t dead_ = 0;
  int64_t scale_ = 0;
};

}  // namespace dynds
