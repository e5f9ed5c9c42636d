#include "oshn/graphs.hpp"

#include <numeric>
#include <stdexcept>

namespace oshn {

int pair_slot(int n, int i, int j) {
  // Slots ordered (0,1),(0,2),...,(0,n-1),(1,2),...
  int s = 0;
  for (int a = 0; a < i; ++a) s += n - 1 - a;
  return s + (j - i - 1);
}

std::vector<std::pair<int, int>> LabeledGraph::edges() const {
  std::vector<std::pair<int, int>> e;
  int slot = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++slot)
      if (edge_mask & (1u << slot)) e.emplace_back(i, j);
  return e;
}

int LabeledGraph::degree(int v) const {
  int d = 0;
  for (auto [i, j] : edges())
    if (i == v || j == v) ++d;
  return d;
}

int LabeledGraph::edge_count() const { return __builtin_popcount(edge_mask); }

bool LabeledGraph::has_edge(int i, int j) const {
  if (i == j) return false;
  if (i > j) std::swap(i, j);
  return edge_mask & (1u << pair_slot(n, i, j));
}

namespace {

struct UnionFind {
  std::vector<int> parent;
  explicit UnionFind(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

bool connected(int n, uint32_t mask) {
  UnionFind uf(n);
  int slot = 0;
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j, ++slot)
      if (mask & (1u << slot)) uf.unite(i, j);
  for (int v = 1; v < n; ++v)
    if (uf.find(v) != uf.find(0)) return false;
  return true;
}

}  // namespace

std::vector<LabeledGraph> enumerate_connected(int n) {
  if (n < 1 || n > 6) throw std::invalid_argument("enumerate_connected: n out of range [1,6]");
  int slots = n * (n - 1) / 2;
  std::vector<LabeledGraph> out;
  for (uint32_t mask = 0; mask < (1u << slots); ++mask)
    if (connected(n, mask)) out.push_back({n, mask});
  return out;
}

GraphParts classify(const LabeledGraph& g) {
  GraphParts parts;
  std::vector<int> deg(g.n, 0);
  for (auto [i, j] : g.edges()) {
    ++deg[i];
    ++deg[j];
  }
  for (int v = 0; v < g.n; ++v)
    if (deg[v] >= 2 || g.n == 1) parts.internal.push_back(v);
  for (auto [i, j] : g.edges()) {
    bool li = deg[i] == 1, lj = deg[j] == 1;
    if (li && lj) {
      // Two adjacent leaves happen only for the n=2 single-edge graph; by
      // convention neither endpoint is internal and the edge is not a leaf
      // edge, callers handle n=2 separately.
      continue;
    }
    if (li)
      parts.leaf_edges.emplace_back(i, j);
    else if (lj)
      parts.leaf_edges.emplace_back(j, i);
    else
      parts.inner_edges.emplace_back(i, j);
  }
  return parts;
}

}  // namespace oshn
