#pragma once

#include <cstdint>
#include <map>
#include <memory>
#include <optional>
#include <stdexcept>
#include <vector>

#include "dynds/range_tree.hpp"

namespace dynds {

/// Raised for a malformed operation; carries the 0-based op index.
class OpError : public std::runtime_error {
 public:
  OpError(size_t index, const std::string& what)
      : std::runtime_error("op " + std::to_string(index) + ": " + what), index_(index) {}
  size_t index() const { return index_; }

 private:
  size_t index_;
};

struct SemiOnlineOp {
  enum class Kind { insert, erase, query };
  Kind kind = Kind::query;
  Point element;                // insert only
  std::optional<size_t> death;  // insert only; nullopt means never deleted
};

/// A decomposable problem answered on a preprocessed core plus a raw buffer.
class BlockProblem {
 public:
  virtual ~BlockProblem() = default;
  virtual void preprocess(const std::vector<Point>& core) = 0;
  virtual int64_t block_query(const std::vector<Point>& buffer) const = 0;
  virtual double alpha() const = 0;
  virtual double beta() const = 0;
};

struct SemiOnlineStats {
  size_t windows = 0;
  size_t max_buffer = 0;
  size_t block_size = 0;
};

/// Default block size round(n^(beta/(1+alpha))).
size_t default_block_size(size_t n, double alpha, double beta);

/// Runs a semi-online trace in windows of b operations. At each window start
/// the core is every live element outliving the window; everything else sits
/// in the buffer, which the window's inserts and deletes edit directly.
std::vector<int64_t> semionline_run(BlockProblem& problem, const std::vector<SemiOnlineOp>& trace,
                                    std::optional<size_t> b_override = std::nullopt,
                                    SemiOnlineStats* stats = nullptr);

/// Checks the semi-online contract; throws OpError at the first violation.
void validate_semionline(const std::vector<SemiOnlineOp>& trace);

/// Skyline size of a multiset of points: a point counts iff no other
/// occurrence is >= it on every axis, so coincident points knock each other out.
int64_t skyline_oracle(const std::vector<Point>& points);

/// 3D skyline counting on core + buffer.
class Skyline3DBlock : public BlockProblem {
 public:
  explicit Skyline3DBlock(CounterPtr counter = nullptr);

  void preprocess(const std::vector<Point>& core) override;
  int64_t block_query(const std::vector<Point>& buffer) const override;
  double alpha() const override { return 1.0; }
  double beta() const override { return 1.0; }

  int64_t core_skyline() const { return static_cast<int64_t>(skyline_size_); }
  const CounterPtr& counter() const { return counter_; }

 private:
  CounterPtr counter_;
  std::optional<RangeTree> maxima_;   // maximal distinct core positions
  std::optional<RangeTree> skyline_;  // core skyline points
  size_t skyline_size_ = 0;
  int64_t scale_ = 1;
};

/// Recomputes from scratch on core + buffer; used to test the engine itself.
class OracleBlock : public BlockProblem {
 public:
  void preprocess(const std::vector<Point>& core) override { core_ = core; }
  int64_t block_query(const std::vector<Point>& buffer) const override;
  double alpha() const override { return 1.0; }
  double beta() const override { return 1.0; }

 private:
  std::vector<Point> core_;
};

/// Exact volume as raw / scale^dim.
struct Volume {
  int64_t raw = 0;
  int64_t scale = 1;
  int dim = 1;
  friend bool operator==(const Volume&, const Volume&) = default;
};

/// Union volume of hypercubes [c - side, c] given by their largest corners.
Volume klee_unit_oracle(const std::vector<Point>& corners, int64_t side_raw, int dim, int64_t scale,
                        uint64_t max_cells = 100'000'000);

struct Halfspace {
  std::vector<int64_t> normal;
  int64_t offset_raw = 0;
  bool strict = true;

  /// normal . q < offset (or <= when not strict), on raw coordinates.
  bool contains(const Point& q) const;
  friend auto operator<=>(const Halfspace&, const Halfspace&) = default;
};

/// Halfspaces and points with the containment count of every point kept up to
/// date; the minimum comes from an ordered count multiset.
class HalfspaceSystem {
 public:
  HalfspaceSystem(int dim, int64_t scale, CounterPtr counter = nullptr);

  void insert_halfspace(const Halfspace& h);
  void erase_halfspace(const Halfspace& h);
  void insert_point(const Point& q);
  void erase_point(const Point& q);
  int64_t query_min() const;

  size_t halfspaces() const { return hs_.size(); }
  size_t points() const { return pts_.size(); }
  const CounterPtr& counter() const { return counter_; }

 private:
  void check_halfspace(const Halfspace& h) const;
  void check_point(const Point& q) const;
  void adjust(int64_t from, int64_t to);

  int dim_;
  int64_t scale_;
  CounterPtr counter_;
  std::multimap<Halfspace, int> hs_;
  std::multimap<Point, int64_t> pts_;  // point -> containment count
  std::map<int64_t, int64_t> counts_;  // count -> multiplicity
};

/// Minimum containment count by full recount.
int64_t halfspace_min_oracle(const std::vector<Halfspace>& hs, const std::vector<Point>& pts);

}  // namespace dynds
