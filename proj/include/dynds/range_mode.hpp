#pragma once

#include <cstdint>
#include <map>
#include <optional>
#include <set>
#include <vector>

#include "dynds/range_tree.hpp"

namespace dynds {

using Label = int64_t;

struct LabeledPoint {
  Point point;
  Label label = 0;
};

struct ModeAnswer {
  Label label = 0;
  int64_t freq = 0;
  friend bool operator==(const ModeAnswer&, const ModeAnswer&) = default;
};

/// Dynamic d-dimensional orthogonal range mode.
///
/// Labels with at most B live points are light: every box spanned by their own
/// coordinates lives in one 2d-dimensional max tree, weighted by how many of
/// the label's points it holds. Heavy labels are counted directly in their own
/// d-dimensional tree at query time.
class DynRangeModeDS {
 public:
  DynRangeModeDS(int dim, size_t n_cap, std::optional<int64_t> b_override = std::nullopt,
                 CounterPtr counter = nullptr);

  static int64_t default_threshold(int dim, size_t n_cap);

  void insert(const Point& p, Label label);
  void erase(const Point& p, Label label);
  std::optional<ModeAnswer> query(const Box& box) const;

  int dim() const { return dim_; }
  int64_t threshold() const { return b_; }
  size_t size() const { return size_; }
  size_t capacity() const { return cap_; }
  bool heavy(Label label) const { return heavy_.count(label) != 0; }
  const std::set<Label>& heavy_labels() const { return heavy_; }
  /// Number of live boxes stored for a label in the global max tree.
  size_t box_count(Label label) const;
  int64_t label_count(Label label) const;
  const CounterPtr& counter() const { return counter_; }

  void clear();
  /// Checks the heavy/light partition and the per-label box sets.
  void check_invariants() const;

 private:
  struct LabelState {
    DynamicRangeTree tree;
    std::multimap<Point, DynamicRangeTree::Handle> occurrences;
    std::vector<DynamicRangeTree::Handle> boxes;
    explicit LabelState(int dim, CounterPtr c) : tree(dim, Aggregate::count, std::move(c)) {}
  };

  void refresh(Label label, LabelState& st);
  void check_point(const Point& p) const;

  int dim_;
  size_t cap_;
  int64_t b_;
  CounterPtr counter_;
  std::map<Label, LabelState> labels_;
  std::set<Label> heavy_;
  DynamicRangeTree boxes_;
  size_t size_ = 0;
  int64_t scale_ = 0;
};

std::optional<ModeAnswer> mode_oracle(const std::vector<LabeledPoint>& points, const Box& box);
std::optional<ModeAnswer> minority_oracle(const std::vector<LabeledPoint>& points, const Box& box);
std::vector<std::optional<ModeAnswer>> batch_dmode_oracle(const std::vector<LabeledPoint>& points,
                                                          const std::vector<Box>& queries);

/// Array with insertion and deletion at arbitrary positions plus range mode.
/// Each slot gets an integer key; new keys go halfway between neighbours and
/// all keys are re-spaced (with a full rebuild) when no midpoint is free.
class SequenceAdapter {
 public:
  explicit SequenceAdapter(size_t cap, std::optional<int64_t> b_override = std::nullopt,
                           CounterPtr counter = nullptr);

  /// 1-based; index may be len+1.
  void insert(size_t index, Label value);
  void erase(size_t index);
  std::optional<ModeAnswer> query(size_t l, size_t r) const;

  size_t size() const { return keys_.size(); }
  Label at(size_t index) const { return values_.at(index - 1); }
  size_t rebuilds() const { return rebuilds_; }
  const DynRangeModeDS& structure() const { return ds_; }
  const CounterPtr& counter() const { return ds_.counter(); }

 private:
  void respace();

  size_t cap_;
  int64_t gap_;
  std::vector<int64_t> keys_;
  std::vector<Label> values_;
  DynRangeModeDS ds_;
  size_t rebuilds_ = 0;
};

/// Vector-backed reference for SequenceAdapter.
class SequenceOracle {
 public:
  void insert(size_t index, Label value);
  void erase(size_t index);
  std::optional<ModeAnswer> mode(size_t l, size_t r) const;
  std::optional<ModeAnswer> minority(size_t l, size_t r) const;
  size_t size() const { return values_.size(); }
  const std::vector<Label>& values() const { return values_; }

 private:
  std::vector<Label> values_;
};

}  // namespace dynds
