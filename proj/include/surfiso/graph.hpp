#ifndef SURFISO_GRAPH_HPP
#define SURFISO_GRAPH_HPP

#include <cstdint>
#include <iosfwd>
#include <optional>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

namespace surfiso {

/// Search budget shared by the backtracking procedures. Exceeding it raises
/// budget_exceeded, never a wrong answer.
struct Budget {
  long long max_nodes = 50'000'000;
  mutable long long used = 0;

  void charge(long long amount = 1) const;
};

struct budget_exceeded : std::runtime_error {
  budget_exceeded() : std::runtime_error("search budget exceeded") {}
};

/// Undirected multigraph with dense vertex ids 0..n-1 and optional integer
/// vertex marks (colors). Input graphs are simple; parallel edges arise only
/// inside triconnected torsos, and loops only inside combinatorial maps.
struct Graph {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<int> marks;  // empty or size n; absent entries behave as 0

  Graph() = default;
  explicit Graph(int n_) : n(n_) {}

  int m() const { return static_cast<int>(edges.size()); }

  void add_edge(int u, int v) {
    if (u < 0 || v < 0 || u >= n || v >= n)
      throw std::invalid_argument("edge endpoint out of range");
    edges.emplace_back(u, v);
  }

  int mark(int v) const {
    return (v < static_cast<int>(marks.size())) ? marks[v] : 0;
  }

  void set_mark(int v, int color) {
    if (color < 0) throw std::invalid_argument("marks are non-negative");
    if (static_cast<int>(marks.size()) < n) marks.resize(n, 0);
    marks[v] = color;
  }

  bool has_loop() const {
    for (auto& [u, v] : edges)
      if (u == v) return true;
    return false;
  }
};

/// Adjacency index: per vertex the incident edge ids (loops listed twice).
std::vector<std::vector<int>> edge_adjacency(const Graph& g);
/// Plain neighbor lists (with multiplicity, loops listed twice).
std::vector<std::vector<int>> neighbor_lists(const Graph& g);

bool is_connected(const Graph& g);
std::vector<int> component_ids(const Graph& g, int* count = nullptr);

struct Separation {
  std::vector<int> side_a;
  std::vector<int> side_b;
  int order = 0;
};

/// Skeleton: a subgraph K of some host graph, with its branch structure.
/// Vertex ids live in the host graph's id space. A branch is a maximal path
/// whose interior vertices have degree 2 in K; a cycle component without
/// branch vertices is stored as a closed branch (first == last).
struct Skeleton {
  std::vector<int> vertices;                 // sorted host ids
  std::vector<std::pair<int, int>> edges;    // subset of host edges
  std::vector<int> branch_vertices;          // degree != 2 in the skeleton
  std::vector<std::vector<int>> branches;    // vertex sequences

  bool contains_vertex(int v) const;
  int bsize() const { return static_cast<int>(branch_vertices.size()); }
};

/// Build a skeleton from a subgraph, computing branch structure.
Skeleton make_skeleton(const Graph& host, const std::vector<int>& vertices,
                       const std::vector<std::pair<int, int>>& edges);
/// Whole graph as its own skeleton.
Skeleton full_skeleton(const Graph& g);

struct BridgeInfo {
  std::vector<int> kernel;       // component of G - V(K); empty for a chord
  std::vector<int> attachments;  // sorted vertices on K
  std::vector<int> edge_ids;     // edges of g owned by this bridge
  bool stable = false;           // false iff all attachments on one branch
};

/// connectivity(g, k) for k in {1,2,3}: true iff g has no separation of
/// order < k with both strict sides nonempty. Requires n >= k+1.
bool connectivity(const Graph& g, int k);

/// All K-bridges of g with attachments and stability flags. The bridges plus
/// the skeleton cover g exactly; every non-skeleton edge lies in one bridge.
std::vector<BridgeInfo> bridges_of(const Graph& g, const Skeleton& k);

/// Proper reroutings until every bridge is stable. Preserves the branch
/// vertex set. Termination: reroutings that strictly shrink the total vertex
/// count of local bridges are preferred; otherwise we walk the finite state
/// space of skeletons with a seen-set and deterministic tie-breaks
/// (min branch index, then lexicographically least attachment pair).
Skeleton stabilize_bridges(const Graph& g, const Skeleton& k);

/// Blocks (biconnected components) as groups of edge ids, with cutvertices.
struct BlockDecomposition {
  std::vector<std::vector<int>> block_edges;
  std::vector<int> block_of_edge;
  std::vector<int> cut_vertices;  // sorted
};
BlockDecomposition block_decomposition(const Graph& g);

/// Edge-list text format: "graph <n> <m>", m lines "u v",
/// optional "mark <v> <color>" lines.
Graph parse_graph(std::istream& in);
Graph parse_graph_string(const std::string& text);
std::string format_graph(const Graph& g);

/// Relabel vertices by perm (perm[old] = new). Marks follow.
Graph relabel(const Graph& g, const std::vector<int>& perm);

/// Induced subgraph on the given vertex set; returns the old-id list for
/// each new id via old_ids (new id = position).
Graph induced_subgraph(const Graph& g, const std::vector<int>& vertices,
                       std::vector<int>* old_ids = nullptr);

}  // namespace surfiso

#endif
