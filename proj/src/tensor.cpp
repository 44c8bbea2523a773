#include "dynds/tensor.hpp"

#include <algorithm>
#include <cmath>
#include <stdexcept>

#include "dynds/debug.hpp"
#include "dynds/scaled.hpp"

namespace dynds {

namespace {

// Visits every index in the closed box [lo, hi]; does nothing if it is empty.
template <class Fn>
void for_each_in_box(const Index& lo, const Index& hi, Fn&& fn) {
  for (size_t i = 0; i < lo.size(); ++i)
    if (lo[i] > hi[i]) return;
  Index x = lo;
  for (;;) {
    fn(x);
    size_t a = 0;
    for (; a < x.size(); ++a) {
      if (x[a] < hi[a]) {
        ++x[a];
        break;
      }
      x[a] = lo[a];
    }
    if (a == x.size()) return;
  }
}

}  // namespace

Tensor::Tensor(int dim, int64_t side, uint64_t max_cells) : dim_(dim), side_(side) {
  if (dim < 1) throw std::invalid_argument("tensor order must be positive");
  if (side < 1) throw std::invalid_argument("tensor side must be positive");
  uint64_t cells = 1;
  for (int i = 0; i < dim; ++i) {
    cells *= static_cast<uint64_t>(side);
    if (cells > max_cells) throw std::length_error("tensor exceeds the cell guard");
  }
  data_.assign(cells, 0);
}

size_t Tensor::flat(const Index& x) const {
  if (static_cast<int>(x.size()) != dim_) throw std::invalid_argument("index has wrong arity");
  size_t idx = 0, stride = 1;
  for (int i = 0; i < dim_; ++i) {
    if (x[i] < 1 || x[i] > side_) throw std::out_of_range("tensor index out of range");
    idx += static_cast<size_t>(x[i] - 1) * stride;
    stride *= static_cast<size_t>(side_);
  }
  return idx;
}

Index Tensor::unflat(size_t i) const {
  Index x(static_cast<size_t>(dim_));
  for (int a = 0; a < dim_; ++a) {
    x[a] = static_cast<int64_t>(i % static_cast<size_t>(side_)) + 1;
    i /= static_cast<size_t>(side_);
  }
  return x;
}

Tensor Tensor::prefix_sums() const {
  Tensor p = *this;
  size_t stride = 1;
  for (int a = 0; a < dim_; ++a) {
    for (size_t i = 0; i < p.data_.size(); ++i)
      if ((i / stride) % static_cast<size_t>(side_) != 0) p.data_[i] = checked_add(p.data_[i], p.data_[i - stride]);
    stride *= static_cast<size_t>(side_);
  }
  return p;
}

// ---------------------------------------------------------------------------

int64_t LangermanDS::default_block(int dim, int64_t side) {
  const double b = std::round(std::pow(static_cast<double>(side), 1.0 / (dim + 1.0)));
  return std::max<int64_t>(1, static_cast<int64_t>(b));
}

LangermanDS::LangermanDS(const Tensor& t, std::optional<int64_t> b_override, CounterPtr counter)
    : dim_(t.dim()), n_(t.side()), counter_(counter ? std::move(counter) : make_counter()), t_(t) {
  if (b_override && (*b_override < 1 || *b_override > n_)) throw std::invalid_argument("block side out of range");
  b_ = b_override ? *b_override : default_block(dim_, n_);
  groups_per_axis_ = n_ / b_ + 1;
  size_t groups = 1;
  for (int i = 0; i < dim_; ++i) groups *= static_cast<size_t>(groups_per_axis_);
  const Tensor p = t_.prefix_sums();
  anchors_.assign(groups, 0);
  for (size_t g = 0; g < groups; ++g) {
    Index at(static_cast<size_t>(dim_));
    size_t rest = g;
    bool inner = true;
    for (int a = 0; a < dim_; ++a) {
      const auto ga = static_cast<int64_t>(rest % static_cast<size_t>(groups_per_axis_));
      rest /= static_cast<size_t>(groups_per_axis_);
      if (ga == 0) inner = false;
      at[a] = ga * b_;
    }
    if (inner) anchors_[g] = p[at];
  }
  residual_.assign(t_.cells(), 0);
  bags_.assign(groups, {});
  for (size_t i = 0; i < t_.cells(); ++i) {
    const Index x = t_.unflat(i);
    const size_t g = group_of(x);
    residual_[i] = p.at_flat(i) - anchors_[g];
    ++bags_[g][residual_[i]];
  }
  counter_->add(t_.cells() + groups);
}

size_t LangermanDS::group_of(const Index& x) const {
  size_t g = 0, stride = 1;
  for (int a = 0; a < dim_; ++a) {
    g += static_cast<size_t>(x[a] / b_) * stride;
    stride *= static_cast<size_t>(groups_per_axis_);
  }
  return g;
}

int64_t LangermanDS::anchor_value(size_t group) const { return anchors_[group]; }

int64_t LangermanDS::anchor(const Index& y) const {
  for (int64_t v : y)
    if (v < 1 || v > n_ / b_) throw std::out_of_range("anchor index out of range");
  Index x(y.size());
  for (size_t i = 0; i < y.size(); ++i) x[i] = y[i] * b_;
  return anchors_[group_of(x)];
}

int64_t LangermanDS::prefix(const Index& x) const { return anchors_[group_of(x)] + residual_[t_.flat(x)]; }

void LangermanDS::set(const Index& z, int64_t value) {
  const size_t zf = t_.flat(z);
  const int64_t delta = checked_sub(value, t_.at_flat(zf));
  if (delta == 0) return;
  t_.at_flat(zf) = value;

  // Anchors B*y with B*y >= z.
  Index lo(static_cast<size_t>(dim_)), hi(static_cast<size_t>(dim_), n_ / b_);
  for (int a = 0; a < dim_; ++a) lo[a] = std::max<int64_t>(1, (z[a] + b_ - 1) / b_);
  for_each_in_box(lo, hi, [&](const Index& y) {
    counter_->add();
    Index at(y.size());
    for (size_t i = 0; i < y.size(); ++i) at[i] = y[i] * b_;
    anchors_[group_of(at)] += delta;
  });

  // Residuals move for x >= z whose anchor does not dominate z. Such x is
  // within B of z on some axis; each candidate is enumerated once, under the
  // first axis on which it is near.
  for (int axis = 0; axis < dim_; ++axis) {
    Index clo(static_cast<size_t>(dim_)), chi(static_cast<size_t>(dim_), n_);
    for (int a = 0; a < dim_; ++a) {
      if (a < axis) clo[a] = z[a] + b_;
      else clo[a] = z[a];
    }
    chi[axis] = std::min(n_, z[axis] + b_ - 1);
    for_each_in_box(clo, chi, [&](const Index& x) {
      counter_->add();
      bool anchor_dominates = true;
      for (int a = 0; a < dim_; ++a)
        if (z[a] > b_ * (x[a] / b_)) anchor_dominates = false;
      if (anchor_dominates) return;
      const size_t xf = t_.flat(x);
      auto& bag = bags_[group_of(x)];
      auto it = bag.find(residual_[xf]);
      if (--it->second == 0) bag.erase(it);
      residual_[xf] += delta;
      ++bag[residual_[xf]];
    });
  }
  if (debug_asserts()) check_invariants();
}

bool LangermanDS::query() const {
  for (size_t g = 0; g < bags_.size(); ++g) {
    counter_->add();
    if (bags_[g].count(-anchors_[g])) return true;
  }
  return false;
}

void LangermanDS::check_invariants() const {
  const Tensor p = t_.prefix_sums();
  std::vector<std::unordered_map<int64_t, int64_t>> bags(bags_.size());
  for (size_t i = 0; i < t_.cells(); ++i) {
    const Index x = t_.unflat(i);
    invariant(prefix(x) == p.at_flat(i), "anchor plus residual equals the prefix sum");
    ++bags[group_of(x)][residual_[i]];
  }
  invariant(bags == bags_, "residual multisets");
}

bool LangermanOracle::query() const {
  const Tensor p = t_.prefix_sums();
  for (size_t i = 0; i < p.cells(); ++i)
    if (p.at_flat(i) == 0) return true;
  return false;
}

// ---------------------------------------------------------------------------

EricksonLazy::EricksonLazy(Tensor t, CounterPtr counter)
    : t_(std::move(t)), inc_(static_cast<size_t>(t_.dim()), std::vector<int64_t>(static_cast<size_t>(t_.side()) + 1, 0)),
      counter_(counter ? std::move(counter) : make_counter()) {}

void EricksonLazy::increment(int axis, int64_t x) {
  if (axis < 1 || axis > t_.dim() || x < 1 || x > t_.side()) throw std::out_of_range("slab out of range");
  counter_->add();
  ++inc_[static_cast<size_t>(axis - 1)][static_cast<size_t>(x)];
}

int64_t EricksonLazy::query_max() const {
  int64_t best = std::numeric_limits<int64_t>::min();
  Index lo(static_cast<size_t>(t_.dim()), 1), hi(static_cast<size_t>(t_.dim()), t_.side());
  for_each_in_box(lo, hi, [&](const Index& x) {
    counter_->add();
    int64_t v = t_[x];
    for (int a = 0; a < t_.dim(); ++a) v += inc_[static_cast<size_t>(a)][static_cast<size_t>(x[a])];
    best = std::max(best, v);
  });
  return best;
}

EricksonEager::EricksonEager(Tensor t, CounterPtr counter)
    : t_(std::move(t)), counter_(counter ? std::move(counter) : make_counter()) {
  for (size_t i = 0; i < t_.cells(); ++i) ++values_[t_.at_flat(i)];
}

void EricksonEager::increment(int axis, int64_t x) {
  if (axis < 1 || axis > t_.dim() || x < 1 || x > t_.side()) throw std::out_of_range("slab out of range");
  Index lo(static_cast<size_t>(t_.dim()), 1), hi(static_cast<size_t>(t_.dim()), t_.side());
  lo[static_cast<size_t>(axis - 1)] = hi[static_cast<size_t>(axis - 1)] = x;
  for_each_in_box(lo, hi, [&](const Index& at) {
    counter_->add();
    int64_t& v = t_[at];
    auto it = values_.find(v);
    if (--it->second == 0) values_.erase(it);
    ++values_[++v];
  });
}

int64_t EricksonEager::query_max() const {
  counter_->add();
  return values_.rbegin()->first;
}

// ---------------------------------------------------------------------------

HypercliqueBase::HypercliqueBase(int vertices, int k, int s, CounterPtr counter)
    : n_(vertices), k_(k), s_(s), counter_(counter ? std::move(counter) : make_counter()) {
  if (k < 1 || vertices < k + 1) throw std::invalid_argument("hypergraph too small for its uniformity");
  if (s < 0 || s >= vertices) throw std::invalid_argument("fixed vertex out of range");
}

Hyperedge HypercliqueBase::normalize(Hyperedge e) const {
  if (static_cast<int>(e.size()) != k_) throw std::invalid_argument("hyperedge has wrong size");
  std::sort(e.begin(), e.end());
  if (std::adjacent_find(e.begin(), e.end()) != e.end()) throw std::invalid_argument("hyperedge repeats a vertex");
  if (e.front() < 0 || e.back() >= n_) throw std::invalid_argument("hyperedge vertex out of range");
  return e;
}

bool HypercliqueBase::full(const std::vector<int>& members) const {
  Hyperedge sub(static_cast<size_t>(k_));
  for (size_t skip = 0; skip < members.size(); ++skip) {
    counter_->add();
    size_t j = 0;
    for (size_t i = 0; i < members.size(); ++i)
      if (i != skip) sub[j++] = members[i];
    if (!has(sub)) return false;
  }
  return true;
}

void HypercliqueLazy::insert(Hyperedge e) {
  e = normalize(std::move(e));
  if (!edges_.insert(e).second) throw std::invalid_argument("hyperedge already present");
  counter_->add();
}

void HypercliqueLazy::erase(Hyperedge e) {
  e = normalize(std::move(e));
  if (!edges_.erase(e)) throw std::invalid_argument("hyperedge absent");
  counter_->add();
}

bool HypercliqueLazy::query_s() const {
  std::vector<int> others;
  for (int v = 0; v < n_; ++v)
    if (v != s_) others.push_back(v);
  std::vector<size_t> pick(static_cast<size_t>(k_));
  for (size_t i = 0; i < pick.size(); ++i) pick[i] = i;
  if (others.size() < pick.size()) return false;
  for (;;) {
    std::vector<int> members{s_};
    for (size_t i : pick) members.push_back(others[i]);
    std::sort(members.begin(), members.end());
    if (full(members)) return true;
    // Next combination in lexicographic order.
    size_t i = pick.size();
    while (i > 0 && pick[i - 1] == others.size() - pick.size() + i - 1) --i;
    if (i == 0) return false;
    ++pick[i - 1];
    for (size_t j = i; j < pick.size(); ++j) pick[j] = pick[j - 1] + 1;
  }
}

void HypercliqueCounting::adjust(const Hyperedge& e, int64_t delta) {
  for (int v = 0; v < n_; ++v) {
    if (std::binary_search(e.begin(), e.end(), v)) continue;
    std::vector<int> members = e;
    members.insert(std::upper_bound(members.begin(), members.end(), v), v);
    if (!full(members)) continue;
    for (int u : members) through_[static_cast<size_t>(u)] += delta;
  }
}

void HypercliqueCounting::insert(Hyperedge e) {
  e = normalize(std::move(e));
  if (!edges_.insert(e).second) throw std::invalid_argument("hyperedge already present");
  adjust(e, +1);
}

void HypercliqueCounting::erase(Hyperedge e) {
  e = normalize(std::move(e));
  if (!has(e)) throw std::invalid_argument("hyperedge absent");
  adjust(e, -1);
  edges_.erase(e);
}

// ---------------------------------------------------------------------------

void OuMvInstance::validate() const {
  if (k < 1) throw std::invalid_argument("OuMv order must be positive");
  if (n < 1) throw std::invalid_argument("OuMv side must be positive");
  for (const Tuple& t : m) {
    if (static_cast<int>(t.size()) != k) throw std::invalid_argument("tuple arity mismatch");
    for (int64_t v : t)
      if (v < 1 || v > n) throw std::invalid_argument("tuple coordinate out of range");
  }
  if (std::set<Tuple>(m.begin(), m.end()).size() != m.size()) throw std::invalid_argument("duplicate tuple in M");
  for (const SubsetQuery& q : queries) {
    if (static_cast<int>(q.size()) != k) throw std::invalid_argument("query arity mismatch");
    for (const auto& u : q) {
      for (int64_t v : u)
        if (v < 1 || v > n) throw std::invalid_argument("query member out of range");
      if (std::set<int64_t>(u.begin(), u.end()).size() != u.size())
        throw std::invalid_argument("duplicate member in query subset");
    }
  }
}

bool oumv_answer(const std::vector<Tuple>& m, const SubsetQuery& q) {
  std::vector<std::set<int64_t>> sets;
  for (const auto& u : q) sets.emplace_back(u.begin(), u.end());
  for (const Tuple& t : m) {
    bool hit = true;
    for (size_t i = 0; i < t.size() && hit; ++i) hit = sets[i].count(t[i]) != 0;
    if (hit) return true;
  }
  return false;
}

std::vector<bool> oumv_bruteforce(const OuMvInstance& inst) {
  std::vector<bool> out;
  for (const auto& q : inst.queries) out.push_back(oumv_answer(inst.m, q));
  return out;
}

std::vector<bool> oumv_batched_driver(const OuMvInstance& inst, int64_t sub_side, size_t phase_size,
                                      const SolverFactory& factory, BatchedStats* stats) {
  inst.validate();
  if (sub_side < 1 || sub_side > inst.n) throw std::invalid_argument("sub-tensor side must lie in [1, N]");
  if (phase_size < 1) throw std::invalid_argument("phase size must be positive");
  const int64_t per_axis = (inst.n + sub_side - 1) / sub_side;
  size_t blocks = 1;
  for (int i = 0; i < inst.k; ++i) blocks *= static_cast<size_t>(per_axis);
  auto block_of = [&](const Tuple& t) {
    size_t b = 0, stride = 1;
    for (int i = 0; i < inst.k; ++i) {
      b += static_cast<size_t>((t[i] - 1) / sub_side) * stride;
      stride *= static_cast<size_t>(per_axis);
    }
    return b;
  };
  std::vector<std::vector<Tuple>> parts(blocks);
  for (const Tuple& t : inst.m) {
    Tuple local = t;
    for (auto& v : local) v = (v - 1) % sub_side + 1;
    parts[block_of(t)].push_back(local);
  }
  std::vector<std::unique_ptr<OuMvSolver>> solvers(blocks);
  for (size_t b = 0; b < blocks; ++b) {
    solvers[b] = factory();
    solvers[b]->build(inst.k, sub_side, parts[b]);
  }
  if (stats) stats->sub_tensors = blocks;

  std::vector<bool> out;
  for (size_t qi = 0; qi < inst.queries.size(); ++qi) {
    if (qi > 0 && qi % phase_size == 0) {
      for (size_t b = 0; b < blocks; ++b) {
        solvers[b]->reset();
        solvers[b]->build(inst.k, sub_side, parts[b]);
      }
      if (stats) ++stats->resets;
    }
    const SubsetQuery& q = inst.queries[qi];
    // Members of each U-set bucketed by slab and translated into it.
    std::vector<std::vector<std::vector<int64_t>>> slabs(static_cast<size_t>(inst.k),
                                                         std::vector<std::vector<int64_t>>(static_cast<size_t>(per_axis)));
    for (int i = 0; i < inst.k; ++i)
      for (int64_t v : q[i]) slabs[i][static_cast<size_t>((v - 1) / sub_side)].push_back((v - 1) % sub_side + 1);
    bool answer = false;
    for (size_t b = 0; b < blocks; ++b) {
      SubsetQuery sub(static_cast<size_t>(inst.k));
      size_t rest = b;
      bool empty = false;
      for (int i = 0; i < inst.k; ++i) {
        sub[i] = slabs[i][rest % static_cast<size_t>(per_axis)];
        rest /= static_cast<size_t>(per_axis);
        if (sub[i].empty()) empty = true;
      }
      if (empty) continue;
      if (stats) ++stats->sub_queries;
      answer = solvers[b]->query(sub) || answer;
    }
    out.push_back(answer);
  }
  return out;
}

}  // namespace dynds
