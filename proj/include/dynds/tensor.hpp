#pragma once

#include <cstdint>
#include <functional>
#include <map>
#include <memory>
#include <optional>
#include <set>
#include <unordered_map>
#include <vector>

#include "dynds/counter.hpp"

namespace dynds {

using Index = std::vector<int64_t>;  // 1-based multi-index

/// Dense d-dimensional integer tensor of side n.
class Tensor {
 public:
  Tensor(int dim, int64_t side, uint64_t max_cells = 100'000'000);

  int dim() const { return dim_; }
  int64_t side() const { return side_; }
  size_t cells() const { return data_.size(); }

  size_t flat(const Index& x) const;
  Index unflat(size_t i) const;
  int64_t& operator[](const Index& x) { return data_[flat(x)]; }
  int64_t operator[](const Index& x) const { return data_[flat(x)]; }
  int64_t& at_flat(size_t i) { return data_[i]; }
  int64_t at_flat(size_t i) const { return data_[i]; }

  /// Dominance prefix sums: P[x] = sum of T[y] over y <= x.
  Tensor prefix_sums() const;

 private:
  int dim_;
  int64_t side_;
  std::vector<int64_t> data_;
};

/// Entry updates with "is some prefix sum zero" queries.
class LangermanTarget {
 public:
  virtual ~LangermanTarget() = default;
  virtual void set(const Index& z, int64_t value) = 0;
  virtual int64_t get(const Index& z) const = 0;
  virtual bool query() const = 0;
  void add(const Index& z, int64_t delta) { set(z, get(z) + delta); }
};

/// Block structure: cells are grouped by floor(x/B); the structure keeps the
/// prefix sum at every group anchor B*floor(x/B), every cell's residual against
/// its anchor, and a hashed multiset of residuals per group.
class LangermanDS : public LangermanTarget {
 public:
  LangermanDS(const Tensor& t, std::optional<int64_t> b_override = std::nullopt, CounterPtr counter = nullptr);

  static int64_t default_block(int dim, int64_t side);

  void set(const Index& z, int64_t value) override;
  int64_t get(const Index& z) const override { return t_[z]; }
  bool query() const override;

  int64_t block() const { return b_; }
  /// Prefix sum at x rebuilt from the anchor and residual structures.
  int64_t prefix(const Index& x) const;
  /// Stored anchor prefix sum P[B*y] for y in [1..floor(n/B)]^d.
  int64_t anchor(const Index& y) const;
  const CounterPtr& counter() const { return counter_; }

  void check_invariants() const;

 private:
  size_t group_of(const Index& x) const;
  int64_t anchor_value(size_t group) const;

  int dim_;
  int64_t n_;
  int64_t b_;
  int64_t groups_per_axis_;  // floor(n/B) + 1, group coordinates 0..floor(n/B)
  CounterPtr counter_;
  Tensor t_;
  std::vector<int64_t> anchors_;  // indexed by group; zero when any coordinate is 0
  std::vector<int64_t> residual_;
  std::vector<std::unordered_map<int64_t, int64_t>> bags_;
};

/// Recomputes all prefix sums per query.
class LangermanOracle : public LangermanTarget {
 public:
  explicit LangermanOracle(Tensor t) : t_(std::move(t)) {}
  void set(const Index& z, int64_t value) override { t_[z] = value; }
  int64_t get(const Index& z) const override { return t_[z]; }
  bool query() const override;
  const Tensor& tensor() const { return t_; }

 private:
  Tensor t_;
};

/// Axis-slab increments with a global maximum query.
class EricksonTarget {
 public:
  virtual ~EricksonTarget() = default;
  virtual void increment(int axis, int64_t x) = 0;  // axis and x are 1-based
  virtual int64_t query_max() const = 0;
};

/// O(1) update, full scan query.
class EricksonLazy : public EricksonTarget {
 public:
  explicit EricksonLazy(Tensor t, CounterPtr counter = nullptr);
  void increment(int axis, int64_t x) override;
  int64_t query_max() const override;

 private:
  Tensor t_;
  std::vector<std::vector<int64_t>> inc_;
  CounterPtr counter_;
};

/// Materialized entries plus an ordered value multiset.
class EricksonEager : public EricksonTarget {
 public:
  explicit EricksonEager(Tensor t, CounterPtr counter = nullptr);
  void increment(int axis, int64_t x) override;
  int64_t query_max() const override;

 private:
  Tensor t_;
  std::map<int64_t, int64_t> values_;
  CounterPtr counter_;
};

using Hyperedge = std::vector<int>;

/// k-uniform hypergraph with a fixed vertex s; asks whether s lies in a
/// (k+1)-set all of whose k-subsets are hyperedges.
class HypercliqueTarget {
 public:
  virtual ~HypercliqueTarget() = default;
  virtual void insert(Hyperedge e) = 0;
  virtual void erase(Hyperedge e) = 0;
  virtual bool query_s() const = 0;
};

class HypercliqueBase : public HypercliqueTarget {
 public:
  HypercliqueBase(int vertices, int k, int s, CounterPtr counter);
  int vertices() const { return n_; }
  int k() const { return k_; }
  int s() const { return s_; }
  size_t edges() const { return edges_.size(); }
  const std::set<Hyperedge>& edge_set() const { return edges_; }
  const CounterPtr& counter() const { return counter_; }

 protected:
  Hyperedge normalize(Hyperedge e) const;
  bool has(const Hyperedge& e) const { return edges_.count(e) != 0; }
  /// True iff every k-subset of the sorted (k+1)-set is an edge.
  bool full(const std::vector<int>& members) const;

  int n_, k_, s_;
  CounterPtr counter_;
  std::set<Hyperedge> edges_;
};

/// Records updates; the query enumerates all k-subsets.
class HypercliqueLazy : public HypercliqueBase {
 public:
  HypercliqueLazy(int vertices, int k, int s, CounterPtr counter = nullptr)
      : HypercliqueBase(vertices, k, s, std::move(counter)) {}
  void insert(Hyperedge e) override;
  void erase(Hyperedge e) override;
  bool query_s() const override;
};

/// Keeps, per vertex, how many (k+1)-hypercliques contain it.
class HypercliqueCounting : public HypercliqueBase {
 public:
  HypercliqueCounting(int vertices, int k, int s, CounterPtr counter = nullptr)
      : HypercliqueBase(vertices, k, s, std::move(counter)), through_(static_cast<size_t>(vertices), 0) {}
  void insert(Hyperedge e) override;
  void erase(Hyperedge e) override;
  bool query_s() const override { return through_[static_cast<size_t>(s_)] > 0; }
  int64_t count(int v) const { return through_.at(static_cast<size_t>(v)); }

 private:
  void adjust(const Hyperedge& e, int64_t delta);
  std::vector<int64_t> through_;
};

using Tuple = std::vector<int64_t>;
using SubsetQuery = std::vector<std::vector<int64_t>>;  // one subset per coordinate

struct OuMvInstance {
  int k = 2;
  int64_t n = 1;
  std::vector<Tuple> m;
  std::vector<SubsetQuery> queries;

  /// Throws if a tuple or subset member is outside [n] or arities disagree.
  void validate() const;
};

std::vector<bool> oumv_bruteforce(const OuMvInstance& inst);
bool oumv_answer(const std::vector<Tuple>& m, const SubsetQuery& q);

/// Inner solver used by the batched driver.
class OuMvSolver {
 public:
  virtual ~OuMvSolver() = default;
  virtual void build(int k, int64_t n, const std::vector<Tuple>& m) = 0;
  virtual bool query(const SubsetQuery& q) = 0;
  virtual void reset() = 0;
};

class BruteForceSolver : public OuMvSolver {
 public:
  void build(int, int64_t, const std::vector<Tuple>& m) override { m_ = m; }
  bool query(const SubsetQuery& q) override { return oumv_answer(m_, q); }
  void reset() override {}

 private:
  std::vector<Tuple> m_;
};

using SolverFactory = std::function<std::unique_ptr<OuMvSolver>()>;

struct BatchedStats {
  size_t sub_tensors = 0;
  size_t sub_queries = 0;
  size_t resets = 0;
};

/// Splits [N]^k into sub-tensors of side n (padding N up to a multiple of n),
/// routes each query to every sub-tensor it touches and resets all inner
/// solvers after every phase_size queries.
std::vector<bool> oumv_batched_driver(const OuMvInstance& inst, int64_t sub_side, size_t phase_size,
                                      const SolverFactory& factory, BatchedStats* stats = nullptr);

}  // namespace dynds
