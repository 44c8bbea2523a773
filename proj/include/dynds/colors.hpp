#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <vector>

#include "dynds/range_tree.hpp"

namespace dynds {

using Color = int64_t;

struct Interval {
  int64_t l = 1;
  int64_t r = 1;
};

/// Common-colors queries over a fixed array whose colors are switched on and
/// off. A light color with occurrences i_1 < ... < i_k (i_{k+1} = m+1) stores
/// the k^2 quadruples (i_a, i_{a+1}, i_b, i_{b+1}) in a 4D count tree; heavy
/// colors are checked one by one at query time.
class CommonColorsDS {
 public:
  CommonColorsDS(std::vector<Color> a, const std::set<Color>& on,
                 std::optional<int64_t> b_thresh = std::nullopt, CounterPtr counter = nullptr);

  static int64_t default_threshold(size_t m);

  void toggle(Color c, bool on);
  int64_t query(Interval i1, Interval i2) const;

  int64_t threshold() const { return b_; }
  size_t length() const { return a_.size(); }
  bool heavy(Color c) const;
  bool is_on(Color c) const { return on_.count(c) != 0; }
  const std::set<Color>& on_set() const { return on_; }
  size_t quadruple_count() const { return tree_.size(); }
  size_t active_quadruples() const { return tree_.active_count(); }
  const CounterPtr& counter() const { return counter_; }

  void check_invariants() const;

 private:
  struct ColorInfo {
    std::vector<int64_t> occ;
    size_t first = 0, last = 0;  // entry id range in the quadruple tree
  };

  void check_interval(Interval i) const;
  bool occurs_in(const ColorInfo& info, Interval i) const;

  std::vector<Color> a_;
  int64_t b_;
  CounterPtr counter_;
  std::map<Color, ColorInfo> colors_;
  std::set<Color> on_;
  RangeTree tree_;
};

int64_t cc_oracle(const std::vector<Color>& a, const std::set<Color>& on, Interval i1, Interval i2);

using Symbol = int64_t;

/// Number of on documents containing both symbols.
int64_t docs_oracle(const std::vector<std::vector<Symbol>>& docs, const std::vector<bool>& on, Symbol t1,
                    Symbol t2);

struct ColoredPoint {
  Point point;
  Color color = 0;
};

/// Static distinct-color counter rebuilt from scratch on a snapshot.
class ColorCountBackend {
 public:
  virtual ~ColorCountBackend() = default;
  virtual void build(const std::vector<ColoredPoint>& points) = 0;
  virtual int64_t count(const Box& box) const = 0;
};

/// Default back end: one snapshot tree per color, all of them asked per query.
class EnumerationBackend : public ColorCountBackend {
 public:
  explicit EnumerationBackend(CounterPtr counter = nullptr);
  void build(const std::vector<ColoredPoint>& points) override;
  int64_t count(const Box& box) const override;

 private:
  CounterPtr counter_;
  std::vector<RangeTree> trees_;
};

/// Dynamic 2D range color counting: a static back end rebuilt every R updates,
/// corrected at query time by the colors touched since the last rebuild.
class DynColorCountDS {
 public:
  DynColorCountDS(size_t n_cap, std::optional<size_t> period = std::nullopt,
                  std::unique_ptr<ColorCountBackend> backend = nullptr, CounterPtr counter = nullptr);

  static size_t default_period(size_t n_cap);

  void insert(const Point& p, Color c);
  void erase(const Point& p, Color c);
  int64_t query(const Box& box) const;

  size_t period() const { return period_; }
  size_t size() const { return size_; }
  size_t dirty_count() const { return dirty_.size(); }
  size_t rebuilds() const { return rebuilds_; }
  const CounterPtr& counter() const { return counter_; }

 private:
  struct ColorState {
    DynamicRangeTree current;
    std::multimap<Point, DynamicRangeTree::Handle> points;
    std::optional<RangeTree> old;
    explicit ColorState(CounterPtr c) : current(2, Aggregate::count, std::move(c)) {}
  };

  void touched(Color c);
  void rebuild();

  size_t period_;
  CounterPtr counter_;
  std::unique_ptr<ColorCountBackend> backend_;
  std::map<Color, ColorState> colors_;
  std::set<Color> dirty_;
  size_t since_rebuild_ = 0;
  size_t size_ = 0;
  size_t rebuilds_ = 0;
};

int64_t distinct_color_oracle(const std::vector<ColoredPoint>& points, const Box& box);

}  // namespace dynds
