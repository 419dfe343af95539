#include "surfiso/embed.hpp"

#include <algorithm>
#include <cassert>
#include <functional>
#include <map>
#include <queue>
#include <set>

#include "surfiso/canon.hpp"
#include "surfiso/facewidth.hpp"

namespace surfiso {

namespace {

// ---------------------------------------------------------------------------
// Planarity with embedding: face-by-face bridge placement on each block
// (Demoucron-Malgrange-Pertuiset), blocks merged at cutvertices.
// ---------------------------------------------------------------------------

// Faces are directed dart cycles of an oriented sphere embedding.
struct PlanarState {
  std::vector<std::vector<int>> faces;  // dart cycles
  std::vector<bool> embedded;           // per host edge id
  std::vector<int> h_vertices;          // sorted vertex set of H
  std::vector<std::pair<int, int>> h_edges;
};

std::optional<CombinatorialMap> embed_block(const Graph& g,
                                            const std::vector<int>& block) {
  // Single edge: handled by the caller's merge step.
  // Bond (all edges on one vertex pair): direct annulus of parallel edges.
  std::vector<int> bedges = block;
  std::sort(bedges.begin(), bedges.end());
  {
    auto [u0, v0] = g.edges[bedges[0]];
    int a = std::min(u0, v0), b = std::max(u0, v0);
    bool bond = true;
    for (int e : bedges) {
      auto [u, v] = g.edges[e];
      if (std::make_pair(std::min(u, v), std::max(u, v)) != std::make_pair(a, b))
        bond = false;
    }
    if (bond || bedges.size() == 1) {
      CombinatorialMap m;
      m.n = g.n;
      m.rot.resize(g.n);
      std::vector<int> at_a, at_b;
      for (int e : bedges) {
        int id = m.m();
        auto [u, v] = g.edges[e];
        m.edges.emplace_back(u, v);
        m.sig.push_back(1);
        at_a.push_back(u == a ? 2 * id : 2 * id + 1);
        at_b.push_back(u == a ? 2 * id + 1 : 2 * id);
      }
      m.rot[a] = at_a;
      std::reverse(at_b.begin(), at_b.end());
      m.rot[b] = at_b;
      // rewire to host edge ids later via the shared convention below
      // (the caller re-owns edges); here we instead return host-id darts:
      CombinatorialMap host;
      host.n = g.n;
      host.edges = g.edges;
      host.sig.assign(g.m(), 1);
      host.rot.resize(g.n);
      std::vector<int> ra, rb;
      for (int e : bedges) {
        auto [u, v] = g.edges[e];
        ra.push_back(u == a ? 2 * e : 2 * e + 1);
        rb.push_back(u == a ? 2 * e + 1 : 2 * e);
      }
      std::reverse(rb.begin(), rb.end());
      host.rot[a] = ra;
      host.rot[b] = rb;
      return host;
    }
  }

  // Initial cycle through the lexicographically least fundamental cycle.
  auto adj = edge_adjacency(g);
  std::vector<int> in_block(g.m(), 0);
  for (int e : bedges) in_block[e] = 1;

  std::vector<int> par_edge(g.n, -1), par(g.n, -1), depth(g.n, -1);
  int root = g.n;
  for (int e : bedges) {
    auto [u, v] = g.edges[e];
    root = std::min({root, u, v});
  }
  std::queue<int> bfs;
  bfs.push(root);
  depth[root] = 0;
  while (!bfs.empty()) {
    int v = bfs.front();
    bfs.pop();
    for (int e : adj[v]) {
      if (!in_block[e]) continue;
      auto [a, b] = g.edges[e];
      int w = (a == v) ? b : a;
      if (depth[w] == -1) {
        depth[w] = depth[v] + 1;
        par[w] = v;
        par_edge[w] = e;
        bfs.push(w);
      }
    }
  }
  int cyc_edge = -1;
  for (int e : bedges) {
    auto [a, b] = g.edges[e];
    if (par_edge[a] == e || par_edge[b] == e) continue;
    cyc_edge = e;
    break;
  }
  if (cyc_edge == -1) return std::nullopt;  // a tree block is not 2-connected
  // cycle = tree paths to lca + the closing edge
  auto [ca, cb] = g.edges[cyc_edge];
  std::vector<int> pa{ca}, pb{cb};
  {
    int x = ca, y = cb;
    while (depth[x] > depth[y]) { x = par[x]; pa.push_back(x); }
    while (depth[y] > depth[x]) { y = par[y]; pb.push_back(y); }
    while (x != y) {
      x = par[x];
      pa.push_back(x);
      y = par[y];
      pb.push_back(y);
    }
  }
  // vertex cycle: ca..lca reversed plus cb..(before lca)
  std::vector<int> cyc(pa.rbegin(), pa.rend());  // lca .. ca
  for (size_t i = 0; i + 1 < pb.size(); ++i) cyc.push_back(pb[pb.size() - 2 - i + 0]);
  // Rebuild properly: lca..ca then cb..(child of lca)
  cyc.assign(pa.rbegin(), pa.rend());
  for (size_t i = 0; i + 1 < pb.size(); ++i) cyc.push_back(pb[i]);
  std::reverse(cyc.begin() + static_cast<long>(pa.size()), cyc.end());
  std::reverse(cyc.begin() + static_cast<long>(pa.size()), cyc.end());
  // simpler: cyc = reverse(pa) gives lca...ca; then append pb[0..size-2]
  // reversed so we continue cb -> ... -> child-of-lca
  cyc.assign(pa.rbegin(), pa.rend());
  {
    std::vector<int> tail(pb.begin(), pb.end() - 1);  // cb .. child-of-lca
    cyc.insert(cyc.end(), tail.begin(), tail.end());
    std::reverse(cyc.end() - static_cast<long>(tail.size()), cyc.end());
  }

  PlanarState st;
  st.embedded.assign(g.m(), false);
  auto dart_between = [&](int u, int v, std::vector<int>& used_edge) {
    // host dart from u to v along an unused block edge
    for (int e : adj[u]) {
      if (!in_block[e] || st.embedded[e]) continue;
      if (std::find(used_edge.begin(), used_edge.end(), e) != used_edge.end())
        continue;
      auto [a, b] = g.edges[e];
      if ((a == u && b == v) || (a == v && b == u)) {
        used_edge.push_back(e);
        return (a == u) ? 2 * e : 2 * e + 1;
      }
    }
    return -1;
  };
  {
    std::vector<int> used;
    std::vector<int> fwd;
    int L = static_cast<int>(cyc.size());
    for (int i = 0; i < L; ++i) {
      int d = dart_between(cyc[i], cyc[(i + 1) % L], used);
      assert(d >= 0);
      fwd.push_back(d);
    }
    for (int e : used) st.embedded[e] = true;
    std::vector<int> bwd;
    for (int i = L - 1; i >= 0; --i) bwd.push_back(dart_twin(fwd[i]));
    st.faces.push_back(fwd);
    st.faces.push_back(bwd);
  }

  auto current_skeleton = [&]() {
    std::set<int> vs;
    std::vector<std::pair<int, int>> es;
    for (int e : bedges)
      if (st.embedded[e]) {
        es.push_back(g.edges[e]);
        vs.insert(g.edges[e].first);
        vs.insert(g.edges[e].second);
      }
    return make_skeleton(g, {vs.begin(), vs.end()}, es);
  };
  Graph block_graph(g.n);
  for (int e : bedges) block_graph.add_edge(g.edges[e].first, g.edges[e].second);
  std::vector<int> block_host(bedges);  // block edge i -> host edge id

  while (true) {
    bool all = true;
    for (int e : bedges)
      if (!st.embedded[e]) all = false;
    if (all) break;

    Skeleton h = current_skeleton();
    auto bridges = bridges_of(block_graph, h);
    if (bridges.empty()) break;
    // face vertex sets
    std::vector<std::set<int>> fverts;
    for (auto& f : st.faces) {
      std::set<int> s;
      for (int d : f) s.insert((d & 1) ? g.edges[block_host[dart_edge(d)]].second
                                       : g.edges[block_host[dart_edge(d)]].first);
      fverts.push_back(std::move(s));
    }
    int best_bridge = -1;
    std::vector<int> best_adm;
    for (int bi = 0; bi < static_cast<int>(bridges.size()); ++bi) {
      std::vector<int> adm;
      for (int fi = 0; fi < static_cast<int>(st.faces.size()); ++fi) {
        bool ok = true;
        for (int a : bridges[bi].attachments)
          if (!fverts[fi].count(a)) { ok = false; break; }
        if (ok) adm.push_back(fi);
      }
      if (adm.empty()) return std::nullopt;  // non-planar
      if (best_bridge == -1 || adm.size() < best_adm.size()) {
        best_bridge = bi;
        best_adm = adm;
      }
    }
    const BridgeInfo& br = bridges[best_bridge];
    int face = best_adm.front();
    // path through the bridge between two distinct attachments
    int a0 = br.attachments[0];
    int a1 = br.attachments[1];
    std::vector<int> path_vertices;
    std::vector<int> path_block_edges;
    if (br.kernel.empty()) {
      path_vertices = {a0, a1};
      path_block_edges = {br.edge_ids[0]};
    } else {
      // BFS from a0 through kernel to any other attachment
      std::map<int, std::pair<int, int>> prev;  // vertex -> (prev vertex, edge)
      std::queue<int> q;
      q.push(a0);
      prev[a0] = {a0, -1};
      int reached = -1;
      std::set<int> kernel(br.kernel.begin(), br.kernel.end());
      std::set<int> atts(br.attachments.begin(), br.attachments.end());
      auto badj = edge_adjacency(block_graph);
      std::set<int> bedgeset(br.edge_ids.begin(), br.edge_ids.end());
      while (!q.empty() && reached == -1) {
        int v = q.front();
        q.pop();
        for (int e : badj[v]) {
          if (!bedgeset.count(e)) continue;
          auto [x, y] = block_graph.edges[e];
          int w = (x == v) ? y : x;
          if (prev.count(w)) continue;
          if (v != a0 && atts.count(v)) continue;  // do not pass through H
          prev[w] = {v, e};
          if (w != a0 && atts.count(w)) { reached = w; break; }
          if (kernel.count(w)) q.push(w);
        }
      }
      assert(reached != -1);
      int cur = reached;
      while (cur != a0) {
        path_vertices.push_back(cur);
        path_block_edges.push_back(prev[cur].second);
        cur = prev[cur].first;
      }
      path_vertices.push_back(a0);
      std::reverse(path_vertices.begin(), path_vertices.end());
      std::reverse(path_block_edges.begin(), path_block_edges.end());
      a1 = reached;
    }
    // embed path into the face: split its dart cycle
    auto& D = st.faces[face];
    int ja = -1, jb = -1;
    auto origin_host = [&](int d) {
      int he = block_host[dart_edge(d)];
      return (d & 1) ? g.edges[he].second : g.edges[he].first;
    };
    for (int j = 0; j < static_cast<int>(D.size()); ++j) {
      int ov = origin_host(D[j]);
      if (ov == a0 && ja == -1) ja = j;
      if (ov == a1 && jb == -1) jb = j;
    }
    assert(ja != -1 && jb != -1 && ja != jb);
    // path darts a0 -> a1 in host-dart ids
    std::vector<int> P;
    for (size_t i = 0; i < path_block_edges.size(); ++i) {
      int be = path_block_edges[i];
      int he = block_host[be];
      int from = path_vertices[i];
      P.push_back(g.edges[he].first == from ? 2 * he : 2 * he + 1);
      st.embedded[he] = true;
    }
    std::vector<int> f1, f2;
    for (int j = jb; j != ja; j = (j + 1) % static_cast<int>(D.size()))
      f1.push_back(D[j]);
    for (int d : P) f1.push_back(d);
    for (int j = ja; j != jb; j = (j + 1) % static_cast<int>(D.size()))
      f2.push_back(D[j]);
    for (auto it = P.rbegin(); it != P.rend(); ++it) f2.push_back(dart_twin(*it));
    st.faces[face] = f1;
    st.faces.push_back(f2);
  }

  // rotations: sigma(x) = successor of twin(x) in twin(x)'s face
  std::vector<int> next_in_face(2 * g.m(), -1);
  for (auto& f : st.faces)
    for (size_t i = 0; i < f.size(); ++i)
      next_in_face[f[i]] = f[(i + 1) % f.size()];
  CombinatorialMap host;
  host.n = g.n;
  host.edges = g.edges;
  host.sig.assign(g.m(), 1);
  host.rot.resize(g.n);
  for (int e : bedges) {
    for (int d : {2 * e, 2 * e + 1}) {
      int v = (d & 1) ? g.edges[dart_edge(d)].second : g.edges[dart_edge(d)].first;
      if (!host.rot[v].empty()) continue;
      // chase sigma starting at d
      int cur = d;
      do {
        host.rot[v].push_back(cur);
        cur = next_in_face[dart_twin(cur)];
      } while (cur != d);
    }
  }
  return host;
}

// Fix the block-local maps into one planar map (blocks share only cutvertices;
// concatenating their rotations keeps the sphere).
std::optional<CombinatorialMap> planar_embed_impl(const Graph& g) {
  if (g.n == 0) return std::nullopt;
  CombinatorialMap m;
  m.n = g.n;
  m.edges = g.edges;
  m.sig.assign(g.m(), 1);
  m.rot.resize(g.n);
  m.marks = g.marks;
  if (g.m() == 0) return m;
  auto blocks = block_decomposition(g);
  for (auto& be : blocks.block_edges) {
    auto sub = embed_block(g, be);
    if (!sub) return std::nullopt;
    for (int e : be)
      for (int d : {2 * e, 2 * e + 1}) {
        int v = (d & 1) ? g.edges[e].second : g.edges[e].first;
        (void)v;
      }
    for (int v = 0; v < g.n; ++v) {
      // append this block's rotation at v (darts of this block only)
      if (sub->rot[v].empty()) continue;
      bool mine = false;
      for (int e : be)
        if (g.edges[e].first == v || g.edges[e].second == v) mine = true;
      if (!mine) continue;
      for (int d : sub->rot[v]) m.rot[v].push_back(d);
    }
  }
  validate_map(m);
  if (total_euler_genus(m) != 0)
    throw std::runtime_error("planar_embed: internal genus error");
  return m;
}

// ---------------------------------------------------------------------------
// Backtracking dart-insertion search over rotation/signature schemes.
// ---------------------------------------------------------------------------

struct EdgeStep {
  int host_edge;
  int u, v;      // u is always already placed; v may be fresh
  bool fresh_v;  // first edge of v: signature forced +1
};

struct InsertionSearch {
  const Graph& g;
  int target;
  const Budget& budget;
  CombinatorialMap cur;
  std::vector<EdgeStep> steps;
  std::function<bool(const CombinatorialMap&)> on_complete;  // true = stop
  bool stopped = false;

  InsertionSearch(const Graph& gg, int tgt, const Budget& b)
      : g(gg), target(tgt), budget(b) {}

  // Plan insertion order from the already-placed vertex set.
  void plan(const std::vector<bool>& placed0, const std::vector<bool>& edge_done0) {
    std::vector<bool> placed = placed0;
    std::vector<bool> edge_done = edge_done0;
    std::vector<int> by_rank(g.n);
    for (int i = 0; i < g.n; ++i) by_rank[i] = i;
    std::vector<int> deg(g.n, 0);
    for (auto& [u, v] : g.edges) {
      deg[u]++;
      deg[v]++;
    }
    std::stable_sort(by_rank.begin(), by_rank.end(), [&](int a, int b) {
      return deg[a] != deg[b] ? deg[a] > deg[b] : a < b;
    });
    bool any_placed = false;
    for (int v = 0; v < g.n; ++v) any_placed = any_placed || placed[v];
    if (!any_placed) placed[by_rank[0]] = true;

    auto add_internal = [&]() {
      for (int e = 0; e < g.m(); ++e) {
        if (edge_done[e]) continue;
        auto [u, v] = g.edges[e];
        if (placed[u] && placed[v]) {
          steps.push_back({e, u, v, false});
          edge_done[e] = true;
        }
      }
    };
    add_internal();
    while (true) {
      int pick = -1;
      int pick_edge = -1;
      for (int vi : by_rank) {
        if (placed[vi]) continue;
        for (int e = 0; e < g.m(); ++e) {
          if (edge_done[e]) continue;
          auto [a, b] = g.edges[e];
          if ((a == vi && placed[b]) || (b == vi && placed[a])) {
            pick = vi;
            pick_edge = e;
            break;
          }
        }
        if (pick != -1) break;
      }
      if (pick == -1) break;
      auto [a, b] = g.edges[pick_edge];
      steps.push_back({pick_edge, placed[a] ? a : b, pick, true});
      edge_done[pick_edge] = true;
      placed[pick] = true;
      add_internal();
    }
    for (int e = 0; e < g.m(); ++e)
      if (!edge_done[e])
        throw std::invalid_argument("embedding search: graph not connected");
  }

  void remove_last_edge() {
    int e = cur.m() - 1;
    auto [u, v] = cur.edges[e];
    auto strip = [&](int w, int d) {
      auto& r = cur.rot[w];
      r.erase(std::find(r.begin(), r.end(), d));
    };
    strip(u, 2 * e);
    strip(v, 2 * e + 1);
    cur.edges.pop_back();
    cur.sig.pop_back();
  }

  void rec(size_t i, int genus_now) {
    if (stopped) return;
    budget.charge();
    if (i == steps.size()) {
      if (on_complete(cur)) stopped = true;
      return;
    }
    const EdgeStep& stp = steps[i];
    if (stp.fresh_v) {
      int du = static_cast<int>(cur.rot[stp.u].size());
      int gaps = std::max(1, du);
      for (int gu = 0; gu < gaps; ++gu) {
        insert_edge(cur, stp.u, gu % std::max(1, du), stp.v, 0, 1);
        // a pendant vertex never changes the genus
        rec(i + 1, genus_now);
        remove_last_edge();
        if (stopped) return;
        if (du == 0) break;
      }
      return;
    }
    int du = static_cast<int>(cur.rot[stp.u].size());
    int dv = static_cast<int>(cur.rot[stp.v].size());
    int ugaps = std::max(1, du);
    int vgaps = std::max(1, dv);
    for (int gu = 0; gu < ugaps; ++gu) {
      for (int gv = 0; gv < vgaps; ++gv) {
        for (int sign : {1, -1}) {
          insert_edge(cur, stp.u, gu, stp.v, gv, sign);
          int genus_new = total_euler_genus(cur);
          if (genus_new <= target) rec(i + 1, genus_new);
          remove_last_edge();
          if (stopped) return;
        }
        if (dv == 0) break;
      }
      if (du == 0) break;
    }
  }

  void run(const CombinatorialMap& start) {
    cur = start;
    std::vector<bool> placed(g.n, false);
    for (int v = 0; v < g.n; ++v)
      if (!start.rot[v].empty()) placed[v] = true;
    std::vector<bool> edge_done(g.m(), false);
    // match start edges against host edges by endpoints
    std::multimap<std::pair<int, int>, int> host_by_pair;
    for (int e = 0; e < g.m(); ++e) {
      auto [u, v] = g.edges[e];
      host_by_pair.insert({{std::min(u, v), std::max(u, v)}, e});
    }
    for (auto& [u, v] : start.edges) {
      auto key = std::make_pair(std::min(u, v), std::max(u, v));
      auto it = host_by_pair.find(key);
      if (it == host_by_pair.end())
        throw std::invalid_argument("fixed sub-map edge not in graph");
      edge_done[it->second] = true;
      host_by_pair.erase(it);
    }
    plan(placed, edge_done);
    rec(0, total_euler_genus(start));
  }
};

CombinatorialMap empty_start(const Graph& g) {
  CombinatorialMap m;
  m.n = g.n;
  m.rot.resize(g.n);
  m.marks = g.marks;
  return m;
}

// Re-id the search result's edges to the host graph's edge ids so that darts
// are stable across calls: the search inserts edges in its own order.
CombinatorialMap renumber_to_host(const Graph& g, const CombinatorialMap& m) {
  // match m's edges to host ids by endpoints
  std::multimap<std::pair<int, int>, int> host_by_pair;
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    host_by_pair.insert({{std::min(u, v), std::max(u, v)}, e});
  }
  std::vector<int> to_host(m.m(), -1);
  for (int e = 0; e < m.m(); ++e) {
    auto [u, v] = m.edges[e];
    auto key = std::make_pair(std::min(u, v), std::max(u, v));
    auto it = host_by_pair.find(key);
    if (it == host_by_pair.end())
      throw std::runtime_error("renumber_to_host: edge mismatch");
    to_host[e] = it->second;
    host_by_pair.erase(it);
  }
  CombinatorialMap r;
  r.n = m.n;
  r.edges = g.edges;
  r.sig.assign(g.m(), 1);
  r.rot.resize(m.n);
  r.marks = m.marks;
  for (int e = 0; e < m.m(); ++e) {
    int he = to_host[e];
    // orient host edge consistently with m's edge
    if (g.edges[he] != m.edges[e]) {
      // endpoints swapped
      r.edges[he] = g.edges[he];
    }
    r.sig[he] = m.sig[e];
  }
  for (int v = 0; v < m.n; ++v) {
    for (int d : m.rot[v]) {
      int e = dart_edge(d);
      int he = to_host[e];
      bool tail = (d & 1) == 0;
      int origin = tail ? m.edges[e].first : m.edges[e].second;
      int hd;
      if (g.edges[he].first == origin &&
          (g.edges[he].second == (tail ? m.edges[e].second : m.edges[e].first)))
        hd = 2 * he;
      else if (g.edges[he].second == origin)
        hd = 2 * he + 1;
      else
        hd = 2 * he;
      r.rot[v].push_back(hd);
    }
  }
  validate_map(r);
  return r;
}

}  // namespace

std::optional<CombinatorialMap> planar_embed(const Graph& g) {
  if (!is_connected(g)) throw std::invalid_argument("planar_embed: not connected");
  if (g.has_loop()) throw std::invalid_argument("planar_embed: loops not supported");
  return planar_embed_impl(g);
}

std::optional<std::pair<int, CombinatorialMap>> min_euler_genus(
    const Graph& g, int gmax, const Budget& budget) {
  if (!is_connected(g))
    throw std::invalid_argument("min_euler_genus: not connected");
  if (auto pm = planar_embed(g)) {
    return std::make_pair(0, *pm);
  }
  for (int t = 1; t <= gmax; ++t) {
    InsertionSearch search(g, t, budget);
    std::optional<CombinatorialMap> found;
    search.on_complete = [&](const CombinatorialMap& m) {
      found = m;
      return true;
    };
    search.run(empty_start(g));
    if (found) return std::make_pair(total_euler_genus(*found),
                                     renumber_to_host(g, *found));
  }
  return std::nullopt;
}

std::optional<int> min_genus_total(const Graph& g, int gmax, const Budget& budget) {
  int nc = 0;
  auto comp = component_ids(g, &nc);
  int total = 0;
  for (int c = 0; c < nc; ++c) {
    std::vector<int> vs;
    for (int v = 0; v < g.n; ++v)
      if (comp[v] == c) vs.push_back(v);
    Graph sub = induced_subgraph(g, vs);
    if (sub.m() == 0) continue;
    auto r = min_euler_genus(sub, gmax - total, budget);
    if (!r) return std::nullopt;
    total += r->first;
  }
  return total;
}

std::optional<CombinatorialMap> extend_embedding(const EmbeddingQuery& q) {
  if (!q.fixed_sub_map)
    throw std::invalid_argument("extend_embedding: fixed_sub_map required");
  const CombinatorialMap& sub = *q.fixed_sub_map;
  if (sub.n != q.graph.n)
    throw std::invalid_argument("extend_embedding: sub-map must share vertex ids");
  int base = total_euler_genus(sub);
  if (base != q.max_genus)
    throw std::invalid_argument("extend_embedding: target genus must match sub-map");
  if (sub.m() == static_cast<int>(q.graph.edges.size())) return sub;  // identity
  InsertionSearch search(q.graph, q.max_genus, q.budget);
  std::optional<CombinatorialMap> found;
  search.on_complete = [&](const CombinatorialMap& m) {
    if (total_euler_genus(m) == q.max_genus) {
      found = m;
      return true;
    }
    return false;
  };
  search.run(sub);
  if (!found) return std::nullopt;
  return renumber_to_host(q.graph, *found);
}

Skeleton genus_critical_subgraph(const Graph& g, int genus, const Budget& budget) {
  auto check = min_genus_total(g, genus, budget);
  if (!check || *check != genus)
    throw std::invalid_argument("genus_critical_subgraph: wrong genus precondition");
  Graph cur = g;
  std::vector<int> keep(g.m(), 1);
  for (int e = 0; e < g.m(); ++e) {
    Graph trial(g.n);
    for (int f = 0; f < g.m(); ++f)
      if (keep[f] && f != e) trial.add_edge(g.edges[f].first, g.edges[f].second);
    auto r = min_genus_total(trial, genus, budget);
    if (r && *r == genus) keep[e] = 0;
  }
  std::vector<std::pair<int, int>> edges;
  std::set<int> vs;
  for (int e = 0; e < g.m(); ++e)
    if (keep[e]) {
      edges.push_back(g.edges[e]);
      vs.insert(g.edges[e].first);
      vs.insert(g.edges[e].second);
    }
  return make_skeleton(g, {vs.begin(), vs.end()}, edges);
}

std::vector<CombinatorialMap> enumerate_embeddings(const EmbeddingQuery& q) {
  if (!is_connected(q.graph))
    throw std::invalid_argument("enumerate_embeddings: not connected");
  std::vector<CombinatorialMap> out;
  std::set<CanonicalCode> seen;
  InsertionSearch search(q.graph, q.max_genus, q.budget);
  search.on_complete = [&](const CombinatorialMap& m) {
    CombinatorialMap host = renumber_to_host(q.graph, m);
    if (q.min_face_width) {
      auto fw = face_width(host, q.budget);
      int val = fw ? *fw : 1 << 20;  // genus 0: unbounded beats any bound
      if (val < *q.min_face_width) return false;
    }
    if (q.enumerate_all) {
      out.push_back(host);
      return false;
    }
    CanonicalCode code = canonical_code(host, CanonMode::free);
    if (seen.insert(code).second) out.push_back(host);
    return false;
  };
  CombinatorialMap start =
      q.fixed_sub_map ? *q.fixed_sub_map : empty_start(q.graph);
  search.run(start);
  if (!q.enumerate_all) {
    std::sort(out.begin(), out.end(),
              [](const CombinatorialMap& a, const CombinatorialMap& b) {
                return canonical_code(a).word < canonical_code(b).word;
              });
  }
  return out;
}

}  // namespace surfiso
