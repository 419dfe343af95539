#ifndef SURFISO_FACEWIDTH_HPP
#define SURFISO_FACEWIDTH_HPP

#include <optional>
#include <vector>

#include "surfiso/graph.hpp"
#include "surfiso/map.hpp"

namespace surfiso {

/// Minimum number of vertices hit by a non-contractible closed curve, found
/// by iterative deepening over corner walks in the radial structure with a
/// contractibility filter. nullopt = unbounded (genus 0: no non-contractible
/// curve exists).
std::optional<int> face_width(const CombinatorialMap& m,
                              const Budget& budget = Budget{});

/// All non-contractible nooses of length exactly l, deduplicated up to
/// rotation and reversal of the point sequence, in deterministic order.
std::vector<Noose> enumerate_nooses(const CombinatorialMap& m, int l,
                                    const Budget& budget = Budget{});

/// Candidate homotopy classes for curves of length l in extensions of a
/// skeleton embedding. The key approximates free homotopy: per hit vertex the
/// branch vertex (or the branch's endpoint set) the curve slides to, plus the
/// orientation character and the cut signature (genus delta, component count,
/// orientability after cut_along).
struct NooseClass {
  Noose representative;
  std::vector<int> branch_signature;
  bool orientation_preserving = false;
  int genus_delta = 0;
  int components_after = 1;
  bool orientable_after = false;
  std::vector<Noose> members;
};

std::vector<NooseClass> homotopy_buckets(const CombinatorialMap& m, int l,
                                         const Budget& budget = Budget{});

/// Forced left/right placement of skeleton bridges around a two-vertex curve
/// class through branches r1, r2 shared by faces w1, w2 (Canonical Lemma).
/// Bridges with every attachment inside r1 u r2 stay flexible and are not
/// assigned. Returns nullopt when the forced placement conflicts, meaning no
/// such curve exists.
struct SideAssignment {
  std::vector<int> left_bridges;   // indices into bridges_of(g, skeleton)
  std::vector<int> right_bridges;
  // filled in by candidate_cut_vertices once (u, v) are chosen:
  // per hit vertex, the two dart arcs of the split
  std::vector<std::pair<std::vector<int>, std::vector<int>>> split_arcs;
};

std::optional<SideAssignment> assign_bridge_sides(
    const Graph& g, const Skeleton& skeleton, const CombinatorialMap& skeleton_map,
    int w1, int w2, const std::vector<int>& r1, const std::vector<int>& r2);

/// Lexicographically least pair (u in r1, v in r2) admitting a
/// non-contractible two-vertex curve through w1 and w2 that extends to a full
/// embedding of g, confirmed by the two-path gadget and extend_embedding.
/// Also reports the blocked-prefix candidate intervals.
struct CutCandidates {
  std::optional<std::pair<int, int>> pair;
  std::pair<int, int> r1_interval{-1, -1};  // a', b' as vertex ids
  std::pair<int, int> r2_interval{-1, -1};  // a'', b''
};

CutCandidates candidate_cut_vertices(
    const Graph& g, const Skeleton& skeleton, const CombinatorialMap& skeleton_map,
    const SideAssignment& assignment, int w1, int w2,
    const std::vector<int>& r1, const std::vector<int>& r2,
    const Budget& budget = Budget{});

/// Normal form for noose identity: minimum over rotations and reversal.
std::vector<int> noose_key(const Noose& c);

}  // namespace surfiso

#endif
