#pragma once

#include <cstdint>
#include <memory>
#include <optional>
#include <stdexcept>
#include <string>
#include <vector>

#include "dynds/colors.hpp"
#include "dynds/graph.hpp"
#include "dynds/range_mode.hpp"
#include "dynds/semionline.hpp"
#include "dynds/tensor.hpp"

namespace dynds {

/// Instance shape does not fit the reduction (part count, k, N).
class ArityError : public std::invalid_argument {
 public:
  using std::invalid_argument::invalid_argument;
};

struct TargetCalls {
  uint64_t builds = 0;
  uint64_t updates = 0;
  uint64_t queries = 0;
};

struct ReductionResult {
  std::vector<bool> answers;  // one entry for clique reductions, one per query for OuMv
  TargetCalls calls;
  size_t phases = 0;
  size_t fingerprint_checks = 0;
  /// Skyline: every c_j matched its closed form. Erickson: every max stayed
  /// within the phase threshold.
  bool formula_ok = true;
  std::vector<int64_t> thresholds;  // Erickson, per phase
  std::vector<std::vector<int64_t>> skyline_counts;  // c_0..c_N per query
};

struct ReductionOptions {
  bool strict_pairs = false;  // color: recompute q_ab inside every phase
  bool pad_klee = true;       // klee: build over N+1 so no tuple sits on a zero-measure face
  std::optional<bool> check_identity;  // langerman prefix identity; defaults to the debug switch
};

/// Every target may expose a state fingerprint; reductions compare it across
/// each phase and throw std::logic_error when a phase leaks state.
class FingerprintSource {
 public:
  virtual ~FingerprintSource() = default;
  virtual std::optional<std::string> fingerprint() const { return std::nullopt; }
};

// ---- sequence mode / minority ------------------------------------------------

class SequenceTarget : public FingerprintSource {
 public:
  virtual void build(const std::vector<Label>& values, size_t capacity) = 0;
  virtual void insert(size_t index, Label value) = 0;  // 1-based
  virtual void erase(size_t index) = 0;
  virtual std::optional<ModeAnswer> query(size_t l, size_t r) = 0;
};

enum class Statistic { mode, minority };

class SequenceOracleTarget : public SequenceTarget {
 public:
  explicit SequenceOracleTarget(Statistic stat = Statistic::mode) : stat_(stat) {}
  void build(const std::vector<Label>& values, size_t capacity) override;
  void insert(size_t index, Label value) override { seq_.insert(index, value); }
  void erase(size_t index) override { seq_.erase(index); }
  std::optional<ModeAnswer> query(size_t l, size_t r) override;
  std::optional<std::string> fingerprint() const override;

 private:
  Statistic stat_;
  SequenceOracle seq_;
};

class SequenceStructureTarget : public SequenceTarget {
 public:
  explicit SequenceStructureTarget(CounterPtr counter = nullptr) : counter_(std::move(counter)) {}
  void build(const std::vector<Label>& values, size_t capacity) override;
  void insert(size_t index, Label value) override { seq_->insert(index, value); }
  void erase(size_t index) override { seq_->erase(index); }
  std::optional<ModeAnswer> query(size_t l, size_t r) override { return seq_->query(l, r); }

 private:
  CounterPtr counter_;
  std::unique_ptr<SequenceAdapter> seq_;
};

// ---- d-dimensional range mode -----------------------------------------------

class BatchModeTarget : public FingerprintSource {
 public:
  virtual std::vector<std::optional<ModeAnswer>> solve(int dim, const std::vector<LabeledPoint>& points,
                                                       const std::vector<Box>& queries) = 0;
};

class BatchModeOracleTarget : public BatchModeTarget {
 public:
  std::vector<std::optional<ModeAnswer>> solve(int dim, const std::vector<LabeledPoint>& points,
                                               const std::vector<Box>& queries) override;
};

class BatchModeStructureTarget : public BatchModeTarget {
 public:
  explicit BatchModeStructureTarget(CounterPtr counter = nullptr) : counter_(std::move(counter)) {}
  std::vector<std::optional<ModeAnswer>> solve(int dim, const std::vector<LabeledPoint>& points,
                                               const std::vector<Box>& queries) override;

 private:
  CounterPtr counter_;
};

class DynModeTarget : public FingerprintSource {
 public:
  virtual void build(int dim, size_t capacity, const std::vector<LabeledPoint>& points) = 0;
  virtual void insert(const Point& p, Label label) = 0;
  virtual void erase(const Point& p, Label label) = 0;
  virtual std::optional<ModeAnswer> query(const Box& box) = 0;
};

class DynModeOracleTarget : public DynModeTarget {
 public:
  void build(int dim, size_t capacity, const std::vector<LabeledPoint>& points) override;
  void insert(const Point& p, Label label) override;
  void erase(const Point& p, Label label) override;
  std::optional<ModeAnswer> query(const Box& box) override { return mode_oracle(points_, box); }
  std::optional<std::string> fingerprint() const override;

 private:
  std::vector<LabeledPoint> points_;
};

class DynModeStructureTarget : public DynModeTarget {
 public:
  explicit DynModeStructureTarget(CounterPtr counter = nullptr) : counter_(std::move(counter)) {}
  void build(int dim, size_t capacity, const std::vector<LabeledPoint>& points) override;
  void insert(const Point& p, Label label) override { ds_->insert(p, label); }
  void erase(const Point& p, Label label) override { ds_->erase(p, label); }
  std::optional<ModeAnswer> query(const Box& box) override { return ds_->query(box); }

 private:
  CounterPtr counter_;
  std::unique_ptr<DynRangeModeDS> ds_;
};

// ---- graph targets ----------------------------------------------------------

class SubConnTarget : public FingerprintSource {
 public:
  virtual void build(int n, const std::vector<std::pair<int, int>>& edges, int s, int t) = 0;
  virtual void set_active(int v, bool flag) = 0;
  virtual bool query() = 0;
};

class SubConnOracleTarget : public SubConnTarget {
 public:
  void build(int n, const std::vector<std::pair<int, int>>& edges, int s, int t) override;
  void set_active(int v, bool flag) override { g_->set_active(v, flag); }
  bool query() override { return g_->query(); }
  std::optional<std::string> fingerprint() const override { return g_->fingerprint(); }

 private:
  std::unique_ptr<SubConnOracle> g_;
};

class StReachTarget : public FingerprintSource {
 public:
  virtual void build(int n, const std::vector<std::pair<int, int>>& edges, int s, int t) = 0;
  virtual void insert_edge(int u, int v) = 0;
  virtual void erase_edge(int u, int v) = 0;
  virtual bool query() = 0;
};

class StReachOracleTarget : public StReachTarget {
 public:
  void build(int n, const std::vector<std::pair<int, int>>& edges, int s, int t) override;
  void insert_edge(int u, int v) override { g_->insert_edge(u, v); }
  void erase_edge(int u, int v) override { g_->erase_edge(u, v); }
  bool query() override { return g_->query(); }
  std::optional<std::string> fingerprint() const override { return g_->fingerprint(); }

 private:
  std::unique_ptr<StReachOracle> g_;
};

// ---- document retrieval and color counting ----------------------------------

class DocsTarget : public FingerprintSource {
 public:
  virtual void build(const std::vector<std::vector<Symbol>>& docs) = 0;  // every document starts off
  virtual void set_on(size_t doc, bool on) = 0;
  virtual int64_t query(Symbol t1, Symbol t2) = 0;
};

class DocsOracleTarget : public DocsTarget {
 public:
  void build(const std::vector<std::vector<Symbol>>& docs) override;
  void set_on(size_t doc, bool on) override { on_.at(doc) = on; }
  int64_t query(Symbol t1, Symbol t2) override { return docs_oracle(docs_, on_, t1, t2); }
  std::optional<std::string> fingerprint() const override;

 private:
  std::vector<std::vector<Symbol>> docs_;
  std::vector<bool> on_;
};

/// Single-symbol patterns become intervals: the array lists, symbol by symbol,
/// the documents containing that symbol; a document is a color.
class CommonColorsTarget : public DocsTarget {
 public:
  explicit CommonColorsTarget(CounterPtr counter = nullptr) : counter_(std::move(counter)) {}
  void build(const std::vector<std::vector<Symbol>>& docs) override;
  void set_on(size_t doc, bool on) override;
  int64_t query(Symbol t1, Symbol t2) override;

 private:
  CounterPtr counter_;
  std::map<Symbol, Interval> span_;
  std::set<Color> present_;
  std::unique_ptr<CommonColorsDS> ds_;
};

class ColorTarget : public FingerprintSource {
 public:
  virtual void build(size_t capacity, const std::vector<ColoredPoint>& points) = 0;
  virtual void insert(const Point& p, Color c) = 0;
  virtual void erase(const Point& p, Color c) = 0;
  virtual int64_t query(const Box& box) = 0;
};

class ColorScanTarget : public ColorTarget {
 public:
  void build(size_t capacity, const std::vector<ColoredPoint>& points) override;
  void insert(const Point& p, Color c) override { points_.push_back({p, c}); }
  void erase(const Point& p, Color c) override;
  int64_t query(const Box& box) override { return distinct_color_oracle(points_, box); }
  std::optional<std::string> fingerprint() const override;

 private:
  std::vector<ColoredPoint> points_;
};

class DynColorTarget : public ColorTarget {
 public:
  explicit DynColorTarget(CounterPtr counter = nullptr) : counter_(std::move(counter)) {}
  void build(size_t capacity, const std::vector<ColoredPoint>& points) override;
  void insert(const Point& p, Color c) override { ds_->insert(p, c); }
  void erase(const Point& p, Color c) override { ds_->erase(p, c); }
  int64_t query(const Box& box) override { return ds_->query(box); }

 private:
  CounterPtr counter_;
  std::unique_ptr<DynColorCountDS> ds_;
};

// ---- geometric targets -------------------------------------------------------

class SkylineTarget : public FingerprintSource {
 public:
  virtual void preprocess(const std::vector<Point>& points) = 0;
  virtual void insert(const Point& p) = 0;
  virtual void erase(const Point& p) = 0;
  virtual int64_t count() = 0;
};

class SkylineOracleTarget : public SkylineTarget {
 public:
  void preprocess(const std::vector<Point>& points) override { points_ = points; }
  void insert(const Point& p) override { points_.push_back(p); }
  void erase(const Point& p) override;
  int64_t count() override { return skyline_oracle(points_); }
  std::optional<std::string> fingerprint() const override;

 private:
  std::vector<Point> points_;
};

/// One recorded target call.
struct SkylineCall {
  enum class Kind { preprocess, insert, erase, count };
  Kind kind = Kind::count;
  std::vector<Point> points;  // preprocess: all points; insert/erase: one
};

/// Logs calls and answers every count with zero.
class SkylineRecorder : public SkylineTarget {
 public:
  void preprocess(const std::vector<Point>& points) override;
  void insert(const Point& p) override;
  void erase(const Point& p) override;
  int64_t count() override;
  const std::vector<SkylineCall>& calls() const { return calls_; }

 private:
  std::vector<SkylineCall> calls_;
};

/// The semi-online structure, fed a script that announces every deletion time
/// up front. Calls must replay the script exactly; answers come from one run
/// of the windowed engine over the 3D block structure.
class SemiOnlineSkylineTarget : public SkylineTarget {
 public:
  explicit SemiOnlineSkylineTarget(const std::vector<SkylineCall>& script,
                                   std::optional<size_t> block_override = std::nullopt,
                                   CounterPtr counter = nullptr);
  void preprocess(const std::vector<Point>& points) override;
  void insert(const Point& p) override;
  void erase(const Point& p) override;
  int64_t count() override;
  const SemiOnlineStats& stats() const { return stats_; }

 private:
  void expect(SkylineCall::Kind kind, const std::vector<Point>& pts);

  std::vector<SkylineCall> script_;
  std::vector<int64_t> answers_;
  size_t pos_ = 0;
  size_t next_answer_ = 0;
  SemiOnlineStats stats_;
};

class KleeTarget : public FingerprintSource {
 public:
  virtual void preprocess(int dim, int64_t scale, int64_t side_raw, const std::vector<Point>& corners) = 0;
  virtual void insert(const Point& corner) = 0;
  virtual void erase(const Point& corner) = 0;
  virtual Volume volume() = 0;
};

class KleeOracleTarget : public KleeTarget {
 public:
  void preprocess(int dim, int64_t scale, int64_t side_raw, const std::vector<Point>& corners) override;
  void insert(const Point& corner) override { corners_.push_back(corner); }
  void erase(const Point& corner) override;
  Volume volume() override { return klee_unit_oracle(corners_, side_raw_, dim_, scale_); }
  std::optional<std::string> fingerprint() const override;

 private:
  int dim_ = 1;
  int64_t scale_ = 1;
  int64_t side_raw_ = 1;
  std::vector<Point> corners_;
};

class HalfspaceTarget : public FingerprintSource {
 public:
  virtual void build(int dim, int64_t scale, const std::vector<Point>& points) = 0;
  virtual void insert(const Halfspace& h) = 0;
  virtual void erase(const Halfspace& h) = 0;
  virtual int64_t query_min() = 0;
};

class HalfspaceScanTarget : public HalfspaceTarget {
 public:
  void build(int dim, int64_t scale, const std::vector<Point>& points) override;
  void insert(const Halfspace& h) override { hs_.push_back(h); }
  void erase(const Halfspace& h) override;
  int64_t query_min() override { return halfspace_min_oracle(hs_, pts_); }
  std::optional<std::string> fingerprint() const override;

 private:
  std::vector<Halfspace> hs_;
  std::vector<Point> pts_;
};

class HalfspaceSystemTarget : public HalfspaceTarget {
 public:
  explicit HalfspaceSystemTarget(CounterPtr counter = nullptr) : counter_(std::move(counter)) {}
  void build(int dim, int64_t scale, const std::vector<Point>& points) override;
  void insert(const Halfspace& h) override { sys_->insert_halfspace(h); }
  void erase(const Halfspace& h) override { sys_->erase_halfspace(h); }
  int64_t query_min() override { return sys_->query_min(); }

 private:
  CounterPtr counter_;
  std::unique_ptr<HalfspaceSystem> sys_;
};

// ---- tensor and hypergraph targets ------------------------------------------

class HypergraphTarget : public FingerprintSource {
 public:
  virtual void build(int vertices, int k, int s) = 0;
  virtual void insert(const Hyperedge& e) = 0;
  virtual void erase(const Hyperedge& e) = 0;
  virtual bool query() = 0;
};

/// lazy = record and enumerate at query time; counting = per-vertex clique counts.
class HypergraphAdapter : public HypergraphTarget {
 public:
  enum class Variant { lazy, counting };
  explicit HypergraphAdapter(Variant v, CounterPtr counter = nullptr) : variant_(v), counter_(std::move(counter)) {}
  void build(int vertices, int k, int s) override;
  void insert(const Hyperedge& e) override { h_->insert(e); }
  void erase(const Hyperedge& e) override { h_->erase(e); }
  bool query() override { return h_->query_s(); }
  std::optional<std::string> fingerprint() const override;

 private:
  Variant variant_;
  CounterPtr counter_;
  std::unique_ptr<HypercliqueBase> h_;
};

/// Wraps another hypergraph target and inverts the answer of one query.
class FaultHypergraphTarget : public HypergraphTarget {
 public:
  FaultHypergraphTarget(std::unique_ptr<HypergraphTarget> inner, size_t flip_at)
      : inner_(std::move(inner)), flip_at_(flip_at) {}
  void build(int vertices, int k, int s) override { inner_->build(vertices, k, s); }
  void insert(const Hyperedge& e) override { inner_->insert(e); }
  void erase(const Hyperedge& e) override { inner_->erase(e); }
  bool query() override;
  std::optional<std::string> fingerprint() const override { return inner_->fingerprint(); }

 private:
  std::unique_ptr<HypergraphTarget> inner_;
  size_t flip_at_;
  size_t seen_ = 0;
};

class SlabTarget : public FingerprintSource {
 public:
  virtual void build(const Tensor& t) = 0;
  virtual void increment(int axis, int64_t x) = 0;  // 1-based
  virtual int64_t query_max() = 0;
};

class SlabAdapter : public SlabTarget {
 public:
  enum class Variant { lazy, eager };
  explicit SlabAdapter(Variant v, CounterPtr counter = nullptr) : variant_(v), counter_(std::move(counter)) {}
  void build(const Tensor& t) override;
  void increment(int axis, int64_t x) override { e_->increment(axis, x); }
  int64_t query_max() override { return e_->query_max(); }

 private:
  Variant variant_;
  CounterPtr counter_;
  std::unique_ptr<EricksonTarget> e_;
};

class PrefixZeroTarget : public FingerprintSource {
 public:
  virtual void build(const Tensor& t) = 0;
  virtual void add(const Index& z, int64_t delta) = 0;
  virtual bool query() = 0;
};

class PrefixZeroOracleTarget : public PrefixZeroTarget {
 public:
  void build(const Tensor& t) override { o_ = std::make_unique<LangermanOracle>(t); }
  void add(const Index& z, int64_t delta) override { o_->add(z, delta); }
  bool query() override { return o_->query(); }
  std::optional<std::string> fingerprint() const override;

 private:
  std::unique_ptr<LangermanOracle> o_;
};

class PrefixZeroStructureTarget : public PrefixZeroTarget {
 public:
  explicit PrefixZeroStructureTarget(CounterPtr counter = nullptr) : counter_(std::move(counter)) {}
  void build(const Tensor& t) override;
  void add(const Index& z, int64_t delta) override;
  bool query() override { return ds_->query(); }
  const LangermanDS& structure() const { return *ds_; }

 private:
  CounterPtr counter_;
  std::unique_ptr<LangermanDS> ds_;
};

// ---- reductions from clique detection ---------------------------------------

/// Parts A, B, C, D are parts 0..3.
ReductionResult red_4clique_range_mode(const KPartiteGraph& g, SequenceTarget& target);
ReductionResult red_4clique_range_minority(const KPartiteGraph& g, SequenceTarget& target);
/// (2d+1) parts; the last part supplies labels.
ReductionResult red_clique_batch_dmode(const KPartiteGraph& g, BatchModeTarget& target);
/// (2d+2) parts; part 2d drives the phases and the last part supplies labels.
ReductionResult red_clique_dyn_dmode(const KPartiteGraph& g, DynModeTarget& target);
ReductionResult red_4clique_subconn(const KPartiteGraph& g, SubConnTarget& target);
ReductionResult red_4clique_2pattern(const KPartiteGraph& g, DocsTarget& target);
ReductionResult red_4clique_color(const KPartiteGraph& g, ColorTarget& target, const ReductionOptions& opt = {});
ReductionResult red_4clique_streach(const KPartiteGraph& g, StReachTarget& target);

// ---- reductions from OuMv_k ---------------------------------------------------

ReductionResult red_oumvk_skyline(const OuMvInstance& inst, SkylineTarget& target);
ReductionResult red_oumvk_klee(const OuMvInstance& inst, KleeTarget& target, const ReductionOptions& opt = {});
ReductionResult red_oumvk_halfspace(const OuMvInstance& inst, HalfspaceTarget& target);
ReductionResult red_oumvk_hyperclique(const OuMvInstance& inst, HypergraphTarget& target);
ReductionResult red_oumvk_erickson(const OuMvInstance& inst, SlabTarget& target);
ReductionResult red_oumvk_langerman(const OuMvInstance& inst, PrefixZeroTarget& target,
                                    const ReductionOptions& opt = {});

/// Closed form for c_j in the skyline reduction, by enumeration over M.
int64_t skyline_count_formula(const OuMvInstance& inst, const SubsetQuery& q, int64_t j);

/// The tensor the Langerman reduction hands to its target, with B = N^(1/d).
Tensor langerman_tensor(const OuMvInstance& inst, int64_t* block = nullptr);

/// Exact integer d-th root, or nullopt.
std::optional<int64_t> exact_root(int64_t n, int d);

}  // namespace dynds
