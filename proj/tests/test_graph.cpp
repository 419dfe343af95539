#include "doctest.h"

#include <algorithm>
#include <random>
#include <set>

#include "surfiso/graph.hpp"

using namespace surfiso;

namespace {

Graph complete(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i + 1; j < n; ++j) g.add_edge(i, j);
  return g;
}

Graph cycle(int n) {
  Graph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(i, (i + 1) % n);
  return g;
}

// Independent oracle: k-connectivity by removing all vertex subsets of size < k.
bool brute_k_connected(const Graph& g, int k) {
  if (!is_connected(g)) return false;
  std::vector<int> vs(g.n);
  for (int i = 0; i < g.n; ++i) vs[i] = i;
  for (int size = 1; size < k; ++size) {
    std::vector<int> idx(size);
    std::function<bool(int, int)> rec = [&](int pos, int start) -> bool {
      if (pos == size) {
        std::vector<int> keep;
        std::set<int> gone(idx.begin(), idx.end());
        for (int v = 0; v < g.n; ++v)
          if (!gone.count(v)) keep.push_back(v);
        Graph h = induced_subgraph(g, keep);
        return !is_connected(h);
      }
      for (int v = start; v < g.n; ++v) {
        idx[pos] = v;
        if (rec(pos + 1, v + 1)) return true;
      }
      return false;
    };
    if (rec(0, 0)) return false;
  }
  return true;
}

}  // namespace

TEST_CASE("connectivity basic cases") {
  CHECK(connectivity(complete(4), 3));
  Graph p3(3);
  p3.add_edge(0, 1);
  p3.add_edge(1, 2);
  CHECK_FALSE(connectivity(p3, 2));
  // C5, k=3: removing any 2 non-adjacent vertices disconnects (pair oracle)
  Graph c5 = cycle(5);
  CHECK_FALSE(connectivity(c5, 3));
  CHECK(brute_k_connected(c5, 2));
  CHECK_FALSE(brute_k_connected(c5, 3));
  CHECK_THROWS_AS(connectivity(complete(4), 4), std::invalid_argument);
  CHECK_THROWS_AS(connectivity(complete(3), 3), std::invalid_argument);
}

TEST_CASE("connectivity agrees with subset oracle on random graphs") {
  std::mt19937 rng(12345);
  for (int trial = 0; trial < 60; ++trial) {
    int n = 4 + static_cast<int>(rng() % 5);
    Graph g(n);
    std::set<std::pair<int, int>> used;
    int target = n + static_cast<int>(rng() % (n * (n - 1) / 2 - n + 1));
    while (static_cast<int>(used.size()) < target) {
      int u = rng() % n, v = rng() % n;
      if (u == v) continue;
      auto key = std::make_pair(std::min(u, v), std::max(u, v));
      if (used.insert(key).second) g.add_edge(key.first, key.second);
    }
    for (int k = 1; k <= 3; ++k) {
      if (g.n < k + 1) continue;
      CHECK(connectivity(g, k) == brute_k_connected(g, k));
    }
  }
}

TEST_CASE("bridges of a triangle skeleton in K4") {
  Graph k4 = complete(4);
  // skeleton = triangle {0,1,2}
  Skeleton tri = make_skeleton(k4, {0, 1, 2}, {{0, 1}, {1, 2}, {0, 2}});
  auto bs = bridges_of(k4, tri);
  REQUIRE(bs.size() == 1);
  CHECK(bs[0].kernel == std::vector<int>{3});
  CHECK(bs[0].attachments == std::vector<int>{0, 1, 2});
  CHECK(bs[0].stable);
}

TEST_CASE("bridges: skeleton equals graph, and chord case") {
  Graph k4 = complete(4);
  Skeleton full = full_skeleton(k4);
  CHECK(bridges_of(k4, full).empty());

  Graph c6 = cycle(6);
  c6.add_edge(1, 4);
  Skeleton ring = make_skeleton(
      c6, {0, 1, 2, 3, 4, 5},
      {{0, 1}, {1, 2}, {2, 3}, {3, 4}, {4, 5}, {5, 0}});
  auto bs = bridges_of(c6, ring);
  REQUIRE(bs.size() == 1);
  CHECK(bs[0].kernel.empty());
  CHECK(bs[0].attachments == std::vector<int>{1, 4});
}

TEST_CASE("bridges partition the non-skeleton edges") {
  std::mt19937 rng(777);
  for (int trial = 0; trial < 30; ++trial) {
    int n = 5 + static_cast<int>(rng() % 5);
    Graph g(n);
    std::set<std::pair<int, int>> used;
    for (int i = 1; i < n; ++i) {  // random spanning tree first
      int p = rng() % i;
      used.insert({p, i});
      g.add_edge(p, i);
    }
    int extra = static_cast<int>(rng() % (2 * n));
    for (int t = 0; t < extra; ++t) {
      int u = rng() % n, v = rng() % n;
      if (u == v) continue;
      auto key = std::make_pair(std::min(u, v), std::max(u, v));
      if (used.insert(key).second) g.add_edge(key.first, key.second);
    }
    // skeleton: a random connected subtree's induced structure
    int sz = 3 + static_cast<int>(rng() % (n - 2));
    std::vector<int> verts;
    std::vector<bool> in(n, false);
    verts.push_back(0);
    in[0] = true;
    auto adj = neighbor_lists(g);
    while (static_cast<int>(verts.size()) < sz) {
      int v = verts[rng() % verts.size()];
      std::vector<int> cands;
      for (int w : adj[v])
        if (!in[w]) cands.push_back(w);
      if (cands.empty()) continue;
      int w = cands[rng() % cands.size()];
      in[w] = true;
      verts.push_back(w);
    }
    std::vector<std::pair<int, int>> sedges;
    std::set<std::pair<int, int>> seen_edge;
    for (auto& [u, v] : g.edges) {
      auto key = std::make_pair(std::min(u, v), std::max(u, v));
      if (in[u] && in[v] && !seen_edge.count(key) && rng() % 2) {
        sedges.push_back({u, v});
        seen_edge.insert(key);
      }
    }
    if (sedges.empty()) continue;
    std::set<int> sverts;
    for (auto& [u, v] : sedges) {
      sverts.insert(u);
      sverts.insert(v);
    }
    Skeleton k = make_skeleton(g, {sverts.begin(), sverts.end()}, sedges);
    auto bs = bridges_of(g, k);
    std::vector<int> owner(g.m(), -1);
    for (int i = 0; i < static_cast<int>(bs.size()); ++i)
      for (int e : bs[i].edge_ids) {
        CHECK(owner[e] == -1);
        owner[e] = i;
      }
    int covered = 0;
    for (int e = 0; e < g.m(); ++e)
      if (owner[e] >= 0) ++covered;
    CHECK(covered == g.m() - static_cast<int>(sedges.size()));
  }
}

TEST_CASE("stabilize_bridges: fixed point when no local bridges") {
  Graph k4 = complete(4);
  Skeleton tri = make_skeleton(k4, {0, 1, 2}, {{0, 1}, {1, 2}, {0, 2}});
  Skeleton out = stabilize_bridges(k4, tri);
  CHECK(out.edges.size() == tri.edges.size());
  for (auto& b : bridges_of(k4, out)) CHECK(b.stable);
}

TEST_CASE("stabilize_bridges reroutes a local chord") {
  // C8 plus chord (2,4) plus spokes from a hub making it 3-connected.
  Graph g(9);
  for (int i = 0; i < 8; ++i) g.add_edge(i, (i + 1) % 8);
  g.add_edge(2, 4);
  for (int i = 0; i < 8; i += 1) g.add_edge(8, i);
  REQUIRE(connectivity(g, 3));
  // Skeleton: the C8 ring plus spokes at 0 and 5 only; branch 0..5 contains
  // the chord(2,4) bridge as a local bridge.
  std::vector<std::pair<int, int>> sedges;
  for (int i = 0; i < 8; ++i) sedges.push_back({i, (i + 1) % 8});
  sedges.push_back({8, 0});
  sedges.push_back({8, 5});
  Skeleton k = make_skeleton(g, {0, 1, 2, 3, 4, 5, 6, 7, 8}, sedges);
  auto before = bridges_of(g, k);
  bool was_local = false;
  for (auto& b : before)
    if (!b.stable) was_local = true;
  REQUIRE(was_local);
  Skeleton out = stabilize_bridges(g, k);
  CHECK(out.branch_vertices == k.branch_vertices);
  for (auto& b : bridges_of(g, out)) CHECK(b.stable);
}

TEST_CASE("stabilize_bridges property: random 3-connected graphs") {
  std::mt19937 rng(4242);
  int done = 0;
  for (int trial = 0; trial < 200 && done < 25; ++trial) {
    int n = 6 + static_cast<int>(rng() % 4);
    Graph g(n);
    std::set<std::pair<int, int>> used;
    // random graph with min degree ~4
    for (int v = 0; v < n; ++v) {
      int want = 4;
      int guard = 0;
      while (want > 0 && guard++ < 50) {
        int w = rng() % n;
        if (w == v) continue;
        auto key = std::make_pair(std::min(v, w), std::max(v, w));
        if (used.insert(key).second) {
          g.add_edge(key.first, key.second);
          --want;
        }
      }
    }
    if (!connectivity(g, 3)) continue;
    ++done;
    // skeleton: spanning structure from a BFS tree plus a few extra edges
    auto adj = neighbor_lists(g);
    std::vector<std::pair<int, int>> sedges;
    std::vector<bool> seen(n, false);
    std::vector<int> order{0};
    seen[0] = true;
    for (size_t i = 0; i < order.size(); ++i)
      for (int w : adj[order[i]])
        if (!seen[w]) {
          seen[w] = true;
          sedges.push_back({order[i], w});
          order.push_back(w);
        }
    sedges.push_back(g.edges[rng() % g.m()]);
    std::set<std::pair<int, int>> dedup;
    std::vector<std::pair<int, int>> fedges;
    for (auto [u, v] : sedges) {
      auto key = std::make_pair(std::min(u, v), std::max(u, v));
      if (dedup.insert(key).second) fedges.push_back({u, v});
    }
    std::vector<int> all(n);
    for (int i = 0; i < n; ++i) all[i] = i;
    Skeleton k = make_skeleton(g, all, fedges);
    Skeleton out = stabilize_bridges(g, k);
    for (auto& b : bridges_of(g, out)) CHECK(b.stable);
    CHECK(out.branch_vertices == k.branch_vertices);
  }
  CHECK(done >= 10);
}

TEST_CASE("graph text round trip and errors") {
  Graph g(4);
  g.add_edge(0, 1);
  g.add_edge(1, 2);
  g.add_edge(2, 3);
  g.set_mark(2, 5);
  Graph h = parse_graph_string(format_graph(g));
  CHECK(h.n == 4);
  CHECK(h.edges == g.edges);
  CHECK(h.mark(2) == 5);
  CHECK_THROWS_WITH_AS(parse_graph_string("graph 2 1\n0 5\n"),
                       doctest::Contains("line 2"), std::invalid_argument);
  CHECK_THROWS_AS(parse_graph_string("graph 2 2\n0 1\n"), std::invalid_argument);
}
