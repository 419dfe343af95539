#ifndef SURFISO_EMBED_HPP
#define SURFISO_EMBED_HPP

#include <optional>
#include <utility>
#include <vector>

#include "surfiso/graph.hpp"
#include "surfiso/map.hpp"

namespace surfiso {

/// Inputs for constrained embedding search. The fixed sub-map (when present)
/// lives in the same vertex id space as the graph: unplaced vertices carry
/// empty rotations, and sub-map edges are matched to graph edges by their
/// endpoints. Every linear-time black box of the source material is replaced
/// here by backtracking over dart insertions with genus pruning; budgets make
/// "too slow" a distinct outcome from "no".
struct EmbeddingQuery {
  Graph graph;
  int max_genus = 0;
  std::optional<CombinatorialMap> fixed_sub_map;
  std::optional<int> min_face_width;
  bool enumerate_all = false;  // raw schemes, no isomorphism dedup
  Budget budget;
};

/// Genus-0 map of a connected graph, or nullopt when non-planar.
/// Quadratic face-by-face bridge placement; deterministic.
std::optional<CombinatorialMap> planar_embed(const Graph& g);

/// Smallest Euler genus <= gmax with a witness map, or nullopt. The witness
/// is the first embedding found under the documented insertion order
/// (vertices by descending degree then id; edges ascending; gaps ascending;
/// signature + before -).
std::optional<std::pair<int, CombinatorialMap>> min_euler_genus(
    const Graph& g, int gmax, const Budget& budget = Budget{});

/// Component-wise sum of minimum genera (nullopt if any component exceeds gmax).
std::optional<int> min_genus_total(const Graph& g, int gmax,
                                   const Budget& budget = Budget{});

/// Extend q.fixed_sub_map to an embedding of q.graph of the same genus, or
/// nullopt when no extension exists. Budget overruns throw budget_exceeded.
std::optional<CombinatorialMap> extend_embedding(const EmbeddingQuery& q);

/// Edge-minimal subgraph with the same minimum genus, by greedy deletion in
/// ascending edge order (one pass suffices: genus is monotone under taking
/// subgraphs, so undeletable edges stay undeletable).
Skeleton genus_critical_subgraph(const Graph& g, int genus,
                                 const Budget& budget = Budget{});

/// All embeddings of genus <= max_genus meeting the face-width constraint.
/// Deduplicated up to free map isomorphism and sorted by canonical code,
/// unless enumerate_all is set (then: every tree-normalized rotation/signature
/// scheme, in search order).
std::vector<CombinatorialMap> enumerate_embeddings(const EmbeddingQuery& q);

}  // namespace surfiso

#endif
