#include <doctest.h>

#include <queue>
#include <stdexcept>

#include "oshn/graphs.hpp"

using namespace oshn;

namespace {

// Independent connectivity oracle: adjacency BFS over an explicit edge list.
bool bfs_connected(int n, const std::vector<std::pair<int, int>>& edges) {
  std::vector<std::vector<int>> adj(n);
  for (auto [i, j] : edges) {
    adj[i].push_back(j);
    adj[j].push_back(i);
  }
  std::vector<bool> seen(n, false);
  std::queue<int> q;
  q.push(0);
  seen[0] = true;
  int cnt = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!seen[w]) {
        seen[w] = true;
        ++cnt;
        q.push(w);
      }
  }
  return cnt == n;
}

long brute_force_count(int n) {
  int slots = n * (n - 1) / 2;
  long count = 0;
  for (uint32_t mask = 0; mask < (1u << slots); ++mask) {
    std::vector<std::pair<int, int>> edges;
    int s = 0;
    for (int i = 0; i < n; ++i)
      for (int j = i + 1; j < n; ++j, ++s)
        if (mask & (1u << s)) edges.emplace_back(i, j);
    if (bfs_connected(n, edges)) ++count;
  }
  return count;
}

}  // namespace

TEST_CASE("connected graph counts match brute force") {
  long expected[] = {0, 1, 1, 4, 38, 728};
  for (int n = 1; n <= 5; ++n) {
    auto graphs = enumerate_connected(n);
    CHECK(static_cast<long>(graphs.size()) == expected[n]);
    CHECK(brute_force_count(n) == expected[n]);
  }
  CHECK_THROWS_AS((void)enumerate_connected(0), std::invalid_argument);
  CHECK_THROWS_AS((void)enumerate_connected(7), std::invalid_argument);
}

TEST_CASE("deterministic enumeration order") {
  auto graphs = enumerate_connected(3);
  for (std::size_t k = 1; k < graphs.size(); ++k) CHECK(graphs[k - 1].edge_mask < graphs[k].edge_mask);
}

TEST_CASE("n=4 trees split into 4 stars and 12 paths") {
  auto graphs = enumerate_connected(4);
  int stars = 0, paths = 0, trees = 0;
  for (const auto& g : graphs) {
    if (g.edge_count() != 3) continue;
    ++trees;
    int maxdeg = 0;
    for (int v = 0; v < 4; ++v) maxdeg = std::max(maxdeg, g.degree(v));
    if (maxdeg == 3)
      ++stars;
    else
      ++paths;
  }
  CHECK(trees == 16);
  CHECK(stars == 4);
  CHECK(paths == 12);
}

TEST_CASE("classify") {
  // path v0 - v1 - v2
  LabeledGraph path{3, 0};
  path.edge_mask = (1u << pair_slot(3, 0, 1)) | (1u << pair_slot(3, 1, 2));
  auto parts = classify(path);
  CHECK(parts.internal == std::vector<int>{1});
  CHECK(parts.leaf_edges ==
        std::vector<std::pair<int, int>>{{0, 1}, {2, 1}});
  CHECK(parts.inner_edges.empty());

  // triangle: all internal, no leaf edges
  LabeledGraph tri{3, 0};
  tri.edge_mask = 7;
  parts = classify(tri);
  CHECK(parts.internal == std::vector<int>{0, 1, 2});
  CHECK(parts.leaf_edges.empty());
  CHECK(parts.inner_edges.size() == 3);

  // star on 4 vertices centered at 0
  LabeledGraph star{4, 0};
  star.edge_mask = (1u << pair_slot(4, 0, 1)) | (1u << pair_slot(4, 0, 2)) | (1u << pair_slot(4, 0, 3));
  parts = classify(star);
  CHECK(parts.internal == std::vector<int>{0});
  CHECK(parts.leaf_edges.size() == 3);
  for (auto [leaf, k] : parts.leaf_edges) CHECK(k == 0);

  // single vertex: internal by convention
  LabeledGraph lone{1, 0};
  parts = classify(lone);
  CHECK(parts.internal == std::vector<int>{0});

  // every edge of a connected graph with n >= 3 is leaf or inner
  for (int n = 3; n <= 5; ++n)
    for (const auto& g : enumerate_connected(n)) {
      auto p = classify(g);
      CHECK(static_cast<int>(p.leaf_edges.size() + p.inner_edges.size()) == g.edge_count());
    }
}
