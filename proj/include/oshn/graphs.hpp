#pragma once

#include <cstdint>
#include <utility>
#include <vector>

namespace oshn {

// Connected simple graph on n labeled vertices 0..n-1. Edges are stored as a
// bitmask over the (n choose 2) unordered pair slots, pair (i,j), i<j, at
// slot index pair_slot(n,i,j); enumeration order is ascending bitmask, which
// fixes a deterministic term order everywhere downstream.
struct LabeledGraph {
  int n = 0;
  uint32_t edge_mask = 0;

  std::vector<std::pair<int, int>> edges() const;  // (i,j) with i<j, slot order
  int degree(int v) const;
  int edge_count() const;
  bool has_edge(int i, int j) const;
};

int pair_slot(int n, int i, int j);

// All connected simple graphs on n labeled vertices, 1 <= n <= 6.
std::vector<LabeledGraph> enumerate_connected(int n);

// Internal vertices (degree >= 2, plus the lone vertex when n == 1) and leaf
// edges (exactly one endpoint of degree 1).
struct GraphParts {
  std::vector<int> internal;                     // ascending
  std::vector<std::pair<int, int>> leaf_edges;   // (leaf, internal endpoint)
  std::vector<std::pair<int, int>> inner_edges;  // both endpoints internal, (i,j), i<j
};

GraphParts classify(const LabeledGraph& g);

}  // namespace oshn
