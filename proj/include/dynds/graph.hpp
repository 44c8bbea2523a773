#pragma once

#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <utility>
#include <vector>

namespace dynds {

/// k-partite graph; parts and indices are 0-based.
class KPartiteGraph {
 public:
  explicit KPartiteGraph(std::vector<int> sizes);

  int k() const { return static_cast<int>(sizes_.size()); }
  int size(int part) const { return sizes_.at(static_cast<size_t>(part)); }
  const std::vector<int>& sizes() const { return sizes_; }

  void add_edge(int p, int u, int q, int v);
  void remove_edge(int p, int u, int q, int v);
  bool adjacent(int p, int u, int q, int v) const;
  /// Members of part q adjacent to (p, u), ascending.
  std::vector<int> neighbors(int p, int u, int q) const;
  size_t edge_count() const;

  /// Edges as (p, u, q, v) with p < q, sorted.
  std::vector<std::array<int, 4>> edges() const;

 private:
  size_t slot(int p, int u, int q, int v) const;
  void check(int p, int u) const;

  std::vector<int> sizes_;
  std::vector<std::vector<char>> adj_;  // one matrix per ordered part pair p < q
};

/// Is there one vertex per part with all pairs adjacent.
bool clique_bruteforce(const KPartiteGraph& g);

/// True iff the listed vertices (one per entry of parts) are pairwise adjacent.
bool is_clique(const KPartiteGraph& g, const std::vector<int>& parts, const std::vector<int>& members);

/// Undirected graph with a dynamic active vertex set; s-t connectivity by search.
class SubConnOracle {
 public:
  SubConnOracle(int n, const std::vector<std::pair<int, int>>& edges, int s, int t);

  void set_active(int v, bool flag);
  bool active(int v) const;
  bool query() const;
  int vertices() const { return static_cast<int>(adj_.size()); }
  std::string fingerprint() const;

 private:
  void check(int v) const;

  std::vector<std::vector<int>> adj_;
  std::vector<char> active_;
  int s_, t_;
};

/// Directed graph under edge insertions and deletions; s-t reachability by search.
class StReachOracle {
 public:
  StReachOracle(int n, int s, int t);

  void insert_edge(int u, int v);
  void erase_edge(int u, int v);
  bool has_edge(int u, int v) const { return edges_.count({u, v}) != 0; }
  bool query() const;
  size_t edge_count() const { return edges_.size(); }
  std::string fingerprint() const;

 private:
  void check(int v) const;

  int n_, s_, t_;
  std::set<std::pair<int, int>> edges_;
};

}  // namespace dynds
