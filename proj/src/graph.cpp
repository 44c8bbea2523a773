#include "dynds/graph.hpp"

#include <algorithm>
#include <deque>
#include <sstream>
#include <stdexcept>

namespace dynds {

KPartiteGraph::KPartiteGraph(std::vector<int> sizes) : sizes_(std::move(sizes)) {
  if (sizes_.empty()) throw std::invalid_argument("graph needs at least one part");
  for (int s : sizes_)
    if (s < 0) throw std::invalid_argument("negative part size");
  const size_t k = sizes_.size();
  adj_.resize(k * k);
  for (size_t p = 0; p < k; ++p)
    for (size_t q = p + 1; q < k; ++q)
      adj_[p * k + q].assign(static_cast<size_t>(sizes_[p]) * static_cast<size_t>(sizes_[q]), 0);
}

void KPartiteGraph::check(int p, int u) const {
  if (p < 0 || p >= k()) throw std::out_of_range("part " + std::to_string(p) + " out of range");
  if (u < 0 || u >= sizes_[static_cast<size_t>(p)])
    throw std::out_of_range("vertex " + std::to_string(u) + " outside part " + std::to_string(p));
}

size_t KPartiteGraph::slot(int p, int u, int q, int v) const {
  check(p, u);
  check(q, v);
  if (p == q) throw std::invalid_argument("edges inside one part are not allowed");
  if (p > q) {
    std::swap(p, q);
    std::swap(u, v);
  }
  return static_cast<size_t>(u) * static_cast<size_t>(sizes_[static_cast<size_t>(q)]) + static_cast<size_t>(v);
}

void KPartiteGraph::add_edge(int p, int u, int q, int v) {
  const size_t s = slot(p, u, q, v);
  adj_[static_cast<size_t>(std::min(p, q)) * sizes_.size() + static_cast<size_t>(std::max(p, q))][s] = 1;
}

void KPartiteGraph::remove_edge(int p, int u, int q, int v) {
  const size_t s = slot(p, u, q, v);
  adj_[static_cast<size_t>(std::min(p, q)) * sizes_.size() + static_cast<size_t>(std::max(p, q))][s] = 0;
}

bool KPartiteGraph::adjacent(int p, int u, int q, int v) const {
  if (p == q) return false;
  const size_t s = slot(p, u, q, v);
  return adj_[static_cast<size_t>(std::min(p, q)) * sizes_.size() + static_cast<size_t>(std::max(p, q))][s] != 0;
}

std::vector<int> KPartiteGraph::neighbors(int p, int u, int q) const {
  std::vector<int> out;
  for (int v = 0; v < size(q); ++v)
    if (adjacent(p, u, q, v)) out.push_back(v);
  return out;
}

size_t KPartiteGraph::edge_count() const {
  size_t c = 0;
  for (const auto& m : adj_)
    for (char e : m) c += e != 0;
  return c;
}

std::vector<std::array<int, 4>> KPartiteGraph::edges() const {
  std::vector<std::array<int, 4>> out;
  for (int p = 0; p < k(); ++p)
    for (int q = p + 1; q < k(); ++q)
      for (int u = 0; u < size(p); ++u)
        for (int v = 0; v < size(q); ++v)
          if (adjacent(p, u, q, v)) out.push_back({p, u, q, v});
  return out;
}

namespace {

bool extend(const KPartiteGraph& g, std::vector<int>& chosen) {
  const int p = static_cast<int>(chosen.size());
  if (p == g.k()) return true;
  for (int v = 0; v < g.size(p); ++v) {
    bool ok = true;
    for (int q = 0; q < p && ok; ++q) ok = g.adjacent(q, chosen[static_cast<size_t>(q)], p, v);
    if (!ok) continue;
    chosen.push_back(v);
    if (extend(g, chosen)) return true;
    chosen.pop_back();
  }
  return false;
}

}  // namespace

bool clique_bruteforce(const KPartiteGraph& g) {
  std::vector<int> chosen;
  return extend(g, chosen);
}

bool is_clique(const KPartiteGraph& g, const std::vector<int>& parts, const std::vector<int>& members) {
  if (parts.size() != members.size()) throw std::invalid_argument("parts and members differ in length");
  for (size_t i = 0; i < parts.size(); ++i)
    for (size_t j = i + 1; j < parts.size(); ++j)
      if (!g.adjacent(parts[i], members[i], parts[j], members[j])) return false;
  return true;
}

SubConnOracle::SubConnOracle(int n, const std::vector<std::pair<int, int>>& edges, int s, int t)
    : adj_(static_cast<size_t>(n)), active_(static_cast<size_t>(n), 1), s_(s), t_(t) {
  check(s);
  check(t);
  for (auto [u, v] : edges) {
    check(u);
    check(v);
    adj_[static_cast<size_t>(u)].push_back(v);
    adj_[static_cast<size_t>(v)].push_back(u);
  }
}

void SubConnOracle::check(int v) const {
  if (v < 0 || v >= vertices()) throw std::out_of_range("unknown vertex " + std::to_string(v));
}

void SubConnOracle::set_active(int v, bool flag) {
  check(v);
  active_[static_cast<size_t>(v)] = flag ? 1 : 0;
}

bool SubConnOracle::active(int v) const {
  check(v);
  return active_[static_cast<size_t>(v)] != 0;
}

bool SubConnOracle::query() const {
  if (!active_[static_cast<size_t>(s_)] || !active_[static_cast<size_t>(t_)]) return false;
  std::vector<char> seen(adj_.size(), 0);
  std::deque<int> queue{s_};
  seen[static_cast<size_t>(s_)] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == t_) return true;
    for (int v : adj_[static_cast<size_t>(u)]) {
      if (seen[static_cast<size_t>(v)] || !active_[static_cast<size_t>(v)]) continue;
      seen[static_cast<size_t>(v)] = 1;
      queue.push_back(v);
    }
  }
  return false;
}

std::string SubConnOracle::fingerprint() const {
  std::string s(active_.size(), '0');
  for (size_t i = 0; i < active_.size(); ++i)
    if (active_[i]) s[i] = '1';
  return s;
}

StReachOracle::StReachOracle(int n, int s, int t) : n_(n), s_(s), t_(t) {
  if (n < 0) throw std::invalid_argument("negative vertex count");
  check(s);
  check(t);
}

void StReachOracle::check(int v) const {
  if (v < 0 || v >= n_) throw std::out_of_range("unknown vertex " + std::to_string(v));
}

void StReachOracle::insert_edge(int u, int v) {
  check(u);
  check(v);
  if (!edges_.insert({u, v}).second)
    throw std::invalid_argument("edge " + std::to_string(u) + "->" + std::to_string(v) + " already present");
}

void StReachOracle::erase_edge(int u, int v) {
  if (edges_.erase({u, v}) == 0)
    throw std::invalid_argument("edge " + std::to_string(u) + "->" + std::to_string(v) + " not present");
}

bool StReachOracle::query() const {
  std::vector<std::vector<int>> out(static_cast<size_t>(n_));
  for (auto [u, v] : edges_) out[static_cast<size_t>(u)].push_back(v);
  std::vector<char> seen(static_cast<size_t>(n_), 0);
  std::deque<int> queue{s_};
  seen[static_cast<size_t>(s_)] = 1;
  while (!queue.empty()) {
    const int u = queue.front();
    queue.pop_front();
    if (u == t_) return true;
    for (int v : out[static_cast<size_t>(u)]) {
      if (seen[static_cast<size_t>(v)]) continue;
      seen[static_cast<size_t>(v)] = 1;
      queue.push_back(v);
    }
  }
  return false;
}

std::string StReachOracle::fingerprint() const {
  std::ostringstream os;
  for (auto [u, v] : edges_) os << u << '>' << v << ';';
  return os.str();
}

}  // namespace dynds
