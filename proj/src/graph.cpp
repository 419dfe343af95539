#include "surfiso/graph.hpp"

#include <algorithm>
#include <functional>
#include <istream>
#include <map>
#include <ostream>
#include <queue>
#include <set>
#include <sstream>

namespace surfiso {

void Budget::charge(long long amount) const {
  used += amount;
  if (used > max_nodes) throw budget_exceeded();
}

std::vector<std::vector<int>> edge_adjacency(const Graph& g) {
  std::vector<std::vector<int>> adj(g.n);
  for (int e = 0; e < g.m(); ++e) {
    auto [u, v] = g.edges[e];
    adj[u].push_back(e);
    if (v != u) adj[v].push_back(e);
    else adj[u].push_back(e);
  }
  return adj;
}

std::vector<std::vector<int>> neighbor_lists(const Graph& g) {
  std::vector<std::vector<int>> adj(g.n);
  for (auto& [u, v] : g.edges) {
    adj[u].push_back(v);
    adj[v].push_back(u);
  }
  return adj;
}

std::vector<int> component_ids(const Graph& g, int* count) {
  std::vector<int> comp(g.n, -1);
  auto adj = neighbor_lists(g);
  int c = 0;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] != -1) continue;
    std::queue<int> q;
    q.push(s);
    comp[s] = c;
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : adj[v])
        if (comp[w] == -1) {
          comp[w] = c;
          q.push(w);
        }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

bool is_connected(const Graph& g) {
  if (g.n <= 1) return true;
  int c = 0;
  component_ids(g, &c);
  return c == 1;
}

namespace {

// Connectivity of g minus a set of removed vertices.
bool connected_excluding(const Graph& g, const std::vector<bool>& removed) {
  int start = -1, alive = 0;
  for (int v = 0; v < g.n; ++v)
    if (!removed[v]) {
      ++alive;
      if (start == -1) start = v;
    }
  if (alive <= 1) return true;
  auto adj = neighbor_lists(g);
  std::vector<bool> seen(g.n, false);
  std::queue<int> q;
  q.push(start);
  seen[start] = true;
  int cnt = 1;
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : adj[v])
      if (!removed[w] && !seen[w]) {
        seen[w] = true;
        ++cnt;
        q.push(w);
      }
  }
  return cnt == alive;
}

}  // namespace

bool connectivity(const Graph& g, int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("connectivity: k must be in {1,2,3}");
  if (g.n < k + 1) throw std::invalid_argument("connectivity: graph too small for k");
  if (!is_connected(g)) return false;
  if (k == 1) return true;
  std::vector<bool> removed(g.n, false);
  for (int v = 0; v < g.n; ++v) {
    removed[v] = true;
    bool ok = connected_excluding(g, removed);
    removed[v] = false;
    if (!ok) return false;
  }
  if (k == 2) return true;
  for (int u = 0; u < g.n; ++u)
    for (int v = u + 1; v < g.n; ++v) {
      removed[u] = removed[v] = true;
      bool ok = connected_excluding(g, removed);
      removed[u] = removed[v] = false;
      if (!ok) return false;
    }
  return true;
}

bool Skeleton::contains_vertex(int v) const {
  return std::binary_search(vertices.begin(), vertices.end(), v);
}

Skeleton make_skeleton(const Graph& host, const std::vector<int>& vertices,
                       const std::vector<std::pair<int, int>>& edges) {
  Skeleton k;
  k.vertices = vertices;
  std::sort(k.vertices.begin(), k.vertices.end());
  k.vertices.erase(std::unique(k.vertices.begin(), k.vertices.end()), k.vertices.end());
  k.edges = edges;
  for (auto& [u, v] : k.edges)
    if (!k.contains_vertex(u) || !k.contains_vertex(v))
      throw std::invalid_argument("skeleton edge endpoint not declared");
  (void)host;

  // Degrees inside the skeleton.
  std::map<int, std::vector<std::pair<int, int>>> inc;  // v -> (other, edge idx)
  for (int i = 0; i < static_cast<int>(k.edges.size()); ++i) {
    auto [u, v] = k.edges[i];
    inc[u].push_back({v, i});
    inc[v].push_back({u, i});
  }
  for (int v : k.vertices) {
    int deg = inc.count(v) ? static_cast<int>(inc[v].size()) : 0;
    if (deg != 2) k.branch_vertices.push_back(v);
  }

  // Walk branches: from each branch vertex along each incident edge until the
  // next branch vertex. Each edge belongs to exactly one branch.
  std::vector<bool> used(k.edges.size(), false);
  std::set<int> bset(k.branch_vertices.begin(), k.branch_vertices.end());
  auto walk = [&](int start, int first_edge) {
    std::vector<int> path{start};
    int prev = start;
    int e = first_edge;
    while (true) {
      used[e] = true;
      auto [a, b] = k.edges[e];
      int next = (a == prev) ? b : a;
      path.push_back(next);
      if (bset.count(next)) break;
      // degree-2 interior vertex: continue on the other edge
      int cont = -1;
      for (auto& [w, ei] : inc[next])
        if (ei != e) cont = ei;
      if (cont == -1) break;  // dead end (degree-1 is a branch vertex anyway)
      prev = next;
      e = cont;
    }
    return path;
  };
  for (int v : k.branch_vertices)
    for (auto& [w, ei] : inc[v])
      if (!used[ei]) k.branches.push_back(walk(v, ei));
  // Leftover components are cycles with all degrees 2: closed branches.
  for (int i = 0; i < static_cast<int>(k.edges.size()); ++i)
    if (!used[i]) {
      auto [a, b] = k.edges[i];
      used[i] = true;
      std::vector<int> path{a, b};
      int prev = a, cur = b;
      while (cur != a) {
        int cont = -1;
        for (auto& [w, ei] : inc[cur])
          if (!used[ei]) { cont = ei; break; }
        if (cont == -1) break;
        used[cont] = true;
        auto [x, y] = k.edges[cont];
        int next = (x == cur) ? y : x;
        prev = cur;
        cur = next;
        path.push_back(cur);
      }
      k.branches.push_back(path);
    }
  std::sort(k.branches.begin(), k.branches.end());
  return k;
}

Skeleton full_skeleton(const Graph& g) {
  std::vector<int> vs(g.n);
  for (int i = 0; i < g.n; ++i) vs[i] = i;
  return make_skeleton(g, vs, g.edges);
}

std::vector<BridgeInfo> bridges_of(const Graph& g, const Skeleton& k) {
  for (int v : k.vertices)
    if (v < 0 || v >= g.n) throw std::invalid_argument("skeleton not inside graph");
  std::set<std::pair<int, int>> kedges;
  for (auto [u, v] : k.edges) {
    if (u > v) std::swap(u, v);
    kedges.insert({u, v});
  }
  // Multi-edge care: kedges as a multiset count.
  std::map<std::pair<int, int>, int> kcount;
  for (auto [u, v] : k.edges) {
    if (u > v) std::swap(u, v);
    kcount[{u, v}]++;
  }

  std::vector<bool> on_k(g.n, false);
  for (int v : k.vertices) on_k[v] = true;

  auto adj = edge_adjacency(g);
  std::vector<bool> edge_in_k(g.m(), false);
  {
    std::map<std::pair<int, int>, int> remaining = kcount;
    for (int e = 0; e < g.m(); ++e) {
      auto [u, v] = g.edges[e];
      if (u > v) std::swap(u, v);
      auto it = remaining.find({u, v});
      if (it != remaining.end() && it->second > 0) {
        edge_in_k[e] = true;
        it->second--;
      }
    }
  }

  std::vector<BridgeInfo> out;
  // Kernels: components of G - V(K).
  std::vector<int> comp(g.n, -1);
  int nc = 0;
  for (int s = 0; s < g.n; ++s) {
    if (on_k[s] || comp[s] != -1) continue;
    std::queue<int> q;
    q.push(s);
    comp[s] = nc;
    std::vector<int> kernel{s};
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : adj[v]) {
        auto [a, b] = g.edges[e];
        int w = (a == v) ? b : a;
        if (!on_k[w] && comp[w] == -1) {
          comp[w] = nc;
          kernel.push_back(w);
          q.push(w);
        }
      }
    }
    BridgeInfo b;
    std::sort(kernel.begin(), kernel.end());
    b.kernel = kernel;
    out.push_back(b);
    ++nc;
  }
  // Assign non-skeleton edges.
  for (int e = 0; e < g.m(); ++e) {
    if (edge_in_k[e]) continue;
    auto [u, v] = g.edges[e];
    if (!on_k[u] || !on_k[v]) {
      int c = on_k[u] ? comp[v] : comp[u];
      out[c].edge_ids.push_back(e);
    }
  }
  for (auto& b : out) {
    std::set<int> att;
    for (int e : b.edge_ids) {
      auto [u, v] = g.edges[e];
      if (on_k[u]) att.insert(u);
      if (on_k[v]) att.insert(v);
    }
    b.attachments.assign(att.begin(), att.end());
  }
  // Chord bridges: single non-skeleton edges with both ends on K.
  for (int e = 0; e < g.m(); ++e) {
    if (edge_in_k[e]) continue;
    auto [u, v] = g.edges[e];
    if (on_k[u] && on_k[v]) {
      BridgeInfo b;
      b.edge_ids = {e};
      b.attachments = {std::min(u, v), std::max(u, v)};
      if (u == v) b.attachments = {u};
      out.push_back(b);
    }
  }
  // Stability: a bridge is local iff some branch contains all attachments.
  // A cycle component without branch vertices is a closed branch; rerouting
  // is undefined there, so it does not make bridges local.
  for (auto& b : out) {
    bool local = false;
    for (auto& br : k.branches) {
      if (br.size() >= 2 && br.front() == br.back() &&
          std::find(k.branch_vertices.begin(), k.branch_vertices.end(),
                    br.front()) == k.branch_vertices.end())
        continue;
      std::set<int> bs(br.begin(), br.end());
      bool all = !b.attachments.empty();
      for (int a : b.attachments)
        if (!bs.count(a)) { all = false; break; }
      if (all) { local = true; break; }
    }
    b.stable = !local;
  }
  // Deterministic order: by smallest attachment, then kernel.
  std::sort(out.begin(), out.end(), [](const BridgeInfo& a, const BridgeInfo& b) {
    return std::tie(a.attachments, a.kernel, a.edge_ids) <
           std::tie(b.attachments, b.kernel, b.edge_ids);
  });
  return out;
}

namespace {

std::string skeleton_key(const Skeleton& k) {
  std::ostringstream os;
  std::vector<std::pair<int, int>> es;
  for (auto [u, v] : k.edges) es.emplace_back(std::min(u, v), std::max(u, v));
  std::sort(es.begin(), es.end());
  for (auto& [u, v] : es) os << u << ',' << v << ';';
  return os.str();
}

// One proper rerouting: returns the new skeleton, or nullopt if none applies
// to this (bridge, branch) combination.
struct Rerouting {
  Skeleton result;
  long long local_vertex_count;  // potential after the move
  std::pair<int, int> attachment_pair;
  int branch_index;
};

long long local_bridge_vertices(const Graph& g, const Skeleton& k) {
  long long total = 0;
  for (auto& b : bridges_of(g, k))
    if (!b.stable) total += static_cast<long long>(b.kernel.size()) + 1;
  return total;
}

}  // namespace

Skeleton stabilize_bridges(const Graph& g, const Skeleton& start) {
  // Deterministic walk over skeleton states. Each step applies a proper
  // rerouting; we prefer moves that shrink the local-bridge vertex count and
  // keep a seen-set so the walk cannot revisit a state.
  std::set<std::string> seen;
  std::vector<Skeleton> stack{start};
  seen.insert(skeleton_key(start));
  Budget budget;
  budget.max_nodes = 200000;

  while (!stack.empty()) {
    budget.charge();
    Skeleton cur = stack.back();
    stack.pop_back();
    auto bridges = bridges_of(g, cur);
    bool any_local = false;
    for (auto& b : bridges)
      if (!b.stable) any_local = true;
    if (!any_local) return cur;

    // Collect all proper reroutings, deterministically ordered.
    std::vector<Rerouting> moves;
    for (int bi = 0; bi < static_cast<int>(cur.branches.size()); ++bi) {
      const auto& br = cur.branches[bi];
      if (br.size() < 3) continue;  // rerouting needs branch length >= 2
      std::set<int> on_branch(br.begin(), br.end());
      for (auto& b : bridges) {
        if (b.stable || b.attachments.size() < 2) continue;
        bool on_this = true;
        for (int a : b.attachments)
          if (!on_branch.count(a)) { on_this = false; break; }
        if (!on_this) continue;
        // Outermost attachments along the branch order.
        std::vector<int> pos;
        for (int i = 0; i < static_cast<int>(br.size()); ++i)
          if (std::find(b.attachments.begin(), b.attachments.end(), br[i]) !=
              b.attachments.end())
            pos.push_back(i);
        if (pos.size() < 2) continue;
        int x = br[pos.front()], y = br[pos.back()];
        if (pos.back() - pos.front() < 1) continue;
        // Path through the bridge between x and y (BFS on bridge edges).
        std::map<int, int> prev;
        std::queue<int> q;
        q.push(x);
        prev[x] = x;
        std::vector<std::vector<std::pair<int, int>>> badj(g.n);
        for (int e : b.edge_ids) {
          auto [u, v] = g.edges[e];
          badj[u].push_back({v, e});
          badj[v].push_back({u, e});
        }
        bool found = false;
        while (!q.empty() && !found) {
          int v = q.front();
          q.pop();
          for (auto [w, e] : badj[v]) {
            if (prev.count(w)) continue;
            // interior of the path must avoid the skeleton
            if (w != y && cur.contains_vertex(w)) continue;
            prev[w] = v;
            if (w == y) { found = true; break; }
            q.push(w);
          }
        }
        if (!found) continue;
        std::vector<int> qpath{y};
        while (qpath.back() != x) qpath.push_back(prev[qpath.back()]);
        std::reverse(qpath.begin(), qpath.end());  // x .. y

        // Build new skeleton: branch subpath x..y replaced by qpath.
        std::vector<std::pair<int, int>> new_edges;
        std::set<std::pair<int, int>> drop;
        for (int i = pos.front(); i < pos.back(); ++i) {
          int u = br[i], v = br[i + 1];
          drop.insert({std::min(u, v), std::max(u, v)});
        }
        for (auto [u, v] : cur.edges) {
          auto key = std::make_pair(std::min(u, v), std::max(u, v));
          auto it = drop.find(key);
          if (it != drop.end()) drop.erase(it);
          else new_edges.emplace_back(u, v);
        }
        for (size_t i = 0; i + 1 < qpath.size(); ++i)
          new_edges.emplace_back(qpath[i], qpath[i + 1]);
        std::set<int> new_vs;
        for (auto [u, v] : new_edges) {
          new_vs.insert(u);
          new_vs.insert(v);
        }
        Skeleton next = make_skeleton(
            g, std::vector<int>(new_vs.begin(), new_vs.end()), new_edges);
        // Proper reroutings must not change the branch vertex set.
        if (next.branch_vertices != cur.branch_vertices) continue;
        Rerouting mv;
        mv.result = next;
        mv.local_vertex_count = local_bridge_vertices(g, next);
        mv.attachment_pair = {x, y};
        mv.branch_index = bi;
        moves.push_back(std::move(mv));
      }
    }
    std::sort(moves.begin(), moves.end(), [](const Rerouting& a, const Rerouting& b) {
      return std::tie(a.local_vertex_count, a.branch_index, a.attachment_pair) <
             std::tie(b.local_vertex_count, b.branch_index, b.attachment_pair);
    });
    // Push in reverse so the best move is explored first.
    for (auto it = moves.rbegin(); it != moves.rend(); ++it) {
      std::string key = skeleton_key(it->result);
      if (seen.insert(key).second) stack.push_back(it->result);
    }
  }
  throw std::runtime_error("stabilize_bridges: no all-stable skeleton reachable");
}

BlockDecomposition block_decomposition(const Graph& g) {
  BlockDecomposition out;
  out.block_of_edge.assign(g.m(), -1);
  auto adj = edge_adjacency(g);
  std::vector<int> disc(g.n, -1), low(g.n, 0);
  std::vector<int> estack;
  int timer = 0;

  // iterative DFS; frames carry (vertex, parent edge, adjacency cursor)
  struct Frame {
    int v;
    int pe;
    size_t i;
    int children = 0;
  };
  for (int root = 0; root < g.n; ++root) {
    if (disc[root] != -1) continue;
    std::vector<Frame> st{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!st.empty()) {
      Frame& f = st.back();
      if (f.i < adj[f.v].size()) {
        int e = adj[f.v][f.i++];
        if (e == f.pe) continue;  // the tree edge to the parent, seen once
        auto [a, b] = g.edges[e];
        int w = (a == f.v) ? b : a;
        if (w == f.v) {  // loop: its own block
          out.block_edges.push_back({e});
          out.block_of_edge[e] = static_cast<int>(out.block_edges.size()) - 1;
          continue;
        }
        if (disc[w] == -1) {
          estack.push_back(e);
          disc[w] = low[w] = timer++;
          f.children++;
          st.push_back({w, e, 0});
        } else if (disc[w] < disc[f.v]) {
          estack.push_back(e);
          low[f.v] = std::min(low[f.v], disc[w]);
        }
      } else {
        Frame done = f;
        st.pop_back();
        if (!st.empty()) {
          Frame& p = st.back();
          low[p.v] = std::min(low[p.v], low[done.v]);
          if (low[done.v] >= disc[p.v]) {
            // pop the block: everything up to and including the tree edge
            std::vector<int> block;
            while (true) {
              int e = estack.back();
              estack.pop_back();
              block.push_back(e);
              if (e == done.pe) break;
            }
            std::sort(block.begin(), block.end());
            for (int e : block)
              out.block_of_edge[e] = static_cast<int>(out.block_edges.size());
            out.block_edges.push_back(std::move(block));
          }
        }
      }
    }
  }
  // cutvertices: recompute robustly (vertex in >= 2 blocks)
  std::vector<std::set<int>> blocks_of_vertex(g.n);
  for (int e = 0; e < g.m(); ++e) {
    auto [a, b] = g.edges[e];
    if (out.block_of_edge[e] >= 0) {
      blocks_of_vertex[a].insert(out.block_of_edge[e]);
      blocks_of_vertex[b].insert(out.block_of_edge[e]);
    }
  }
  for (int v = 0; v < g.n; ++v)
    if (blocks_of_vertex[v].size() >= 2) out.cut_vertices.push_back(v);
  return out;
}

Graph parse_graph(std::istream& in) {
  Graph g;
  std::string line;
  int lineno = 0;
  int m_expected = -1;
  int m_seen = 0;
  bool header = false;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (!header) {
      if (tok != "graph") fail("expected 'graph <n> <m>' header");
      int n, m;
      if (!(ls >> n >> m) || n < 0 || m < 0) fail("bad graph header");
      g = Graph(n);
      m_expected = m;
      header = true;
    } else if (tok == "mark") {
      int v, c;
      if (!(ls >> v >> c)) fail("bad mark line");
      if (v < 0 || v >= g.n) fail("mark vertex out of range");
      if (c < 0) fail("mark color must be non-negative");
      g.set_mark(v, c);
    } else {
      int u, v;
      std::istringstream es(line);
      if (!(es >> u >> v)) fail("expected edge 'u v'");
      if (u < 0 || v < 0 || u >= g.n || v >= g.n) fail("edge endpoint out of range");
      if (u == v) fail("loops are not allowed in input graphs");
      g.add_edge(u, v);
      ++m_seen;
    }
  }
  if (!header) throw std::invalid_argument("line 1: empty input, expected graph header");
  if (m_seen != m_expected)
    throw std::invalid_argument("edge count mismatch: header says " +
                                std::to_string(m_expected) + ", got " +
                                std::to_string(m_seen));
  return g;
}

Graph parse_graph_string(const std::string& text) {
  std::istringstream in(text);
  return parse_graph(in);
}

std::string format_graph(const Graph& g) {
  std::ostringstream os;
  os << "graph " << g.n << ' ' << g.m() << '\n';
  for (auto& [u, v] : g.edges) os << u << ' ' << v << '\n';
  for (int v = 0; v < g.n; ++v)
    if (g.mark(v) != 0) os << "mark " << v << ' ' << g.mark(v) << '\n';
  return os.str();
}

Graph relabel(const Graph& g, const std::vector<int>& perm) {
  if (static_cast<int>(perm.size()) != g.n)
    throw std::invalid_argument("relabel: permutation size mismatch");
  Graph h(g.n);
  for (auto& [u, v] : g.edges) h.add_edge(perm[u], perm[v]);
  for (int v = 0; v < g.n; ++v)
    if (g.mark(v) != 0) h.set_mark(perm[v], g.mark(v));
  return h;
}

Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices,
                       std::vector<int>* old_ids) {
  std::vector<int> vs = vertices;
  std::sort(vs.begin(), vs.end());
  vs.erase(std::unique(vs.begin(), vs.end()), vs.end());
  std::vector<int> newid(g.n, -1);
  for (int i = 0; i < static_cast<int>(vs.size()); ++i) newid[vs[i]] = i;
  Graph h(static_cast<int>(vs.size()));
  for (auto& [u, v] : g.edges)
    if (newid[u] != -1 && newid[v] != -1) h.add_edge(newid[u], newid[v]);
  for (int v : vs)
    if (g.mark(v) != 0) h.set_mark(newid[v], g.mark(v));
  if (old_ids) *old_ids = vs;
  return h;
}

}  // namespace surfiso
