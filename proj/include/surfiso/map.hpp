#ifndef SURFISO_MAP_HPP
#define SURFISO_MAP_HPP

#include <array>
#include <cstdint>
#include <iosfwd>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "surfiso/graph.hpp"

namespace surfiso {

// Darts: edge e owns darts 2e (at edges[e].first) and 2e+1 (at edges[e].second).
// twin(d) = d ^ 1. A flag is a dart plus a side bit: flag = 2*dart + side,
// side 0 meaning traversal sense +1. Face tracing moves
//   (d, s) -> (d', s') with s' = s * sig(edge(d)),
//   d' = rotation successor (s' = +1) or predecessor (s' = -1) of twin(d).
// Orbits of this permutation pair up into faces; the reversal
// R(d, s) = (twin(d), -s * sig(edge(d))) maps each orbit onto its partner.

inline int dart_twin(int d) { return d ^ 1; }
inline int dart_edge(int d) { return d >> 1; }
inline int flag_dart(int f) { return f >> 1; }
inline int flag_side(int f) { return f & 1; }
inline int make_flag(int dart, int side) { return dart * 2 + side; }

/// A 2-cell embedding: rotation system plus edge signature. Loops and
/// parallel edges allowed. 2-cellness is implicit: faces are whatever the
/// flag traversal yields, and the Euler formula is applied to them.
struct CombinatorialMap {
  int n = 0;
  std::vector<std::pair<int, int>> edges;
  std::vector<std::int8_t> sig;          // per edge, +1 or -1
  std::vector<std::vector<int>> rot;     // per vertex, cyclic dart sequence
  std::vector<int> marks;                // empty or size n

  int m() const { return static_cast<int>(edges.size()); }
  int dart_origin(int d) const {
    return (d & 1) ? edges[d >> 1].second : edges[d >> 1].first;
  }
  int mark(int v) const {
    return (v < static_cast<int>(marks.size())) ? marks[v] : 0;
  }
  int degree(int v) const { return static_cast<int>(rot[v].size()); }
  Graph underlying() const;
};

/// Throws std::invalid_argument when rotations are malformed (a dart missing,
/// duplicated, or listed away from its origin).
void validate_map(const CombinatorialMap& m);

/// Faces of a map. Each face is one canonical orbit of the flag traversal
/// (the orbit of the pair that contains the smaller flag id); walk length
/// equals the number of edge traversals, and the sum of walk lengths is 2|E|.
struct FaceStructure {
  std::vector<std::vector<int>> walks;      // per face: flag sequence
  std::vector<int> face_of_flag;            // all 4|E| flags -> face id
  // Corner = gap g at vertex v (between rot[v][g] and rot[v][g+1]).
  // Each corner is visited exactly once over all canonical walks.
  std::vector<std::vector<int>> gap_face;   // [v][gap] -> face id
  std::vector<std::vector<std::pair<int, int>>> corners;  // per face: (v, gap)

  int count() const { return static_cast<int>(walks.size()); }
};

FaceStructure trace_faces(const CombinatorialMap& m);

/// 2 - (V - E + F); requires a connected underlying graph.
int euler_genus(const CombinatorialMap& m);
/// Sum of per-component Euler genera (edge-free components count 0).
int total_euler_genus(const CombinatorialMap& m);

/// Normalized copy: signatures +1 on a spanning forest (vertex flips).
CombinatorialMap normalize_signs(const CombinatorialMap& m);
bool is_orientable(const CombinatorialMap& m);

/// Bipartite vertex/face incidence graph. Vertices 0..n-1 are map vertices,
/// n..n+F-1 are faces; one edge per corner, in corner order.
struct RadialGraph {
  Graph graph;
  int n_vertices = 0;
  int n_faces = 0;
  // provenance per radial edge: (vertex, gap, face)
  std::vector<std::array<int, 3>> corner_of_edge;
};
RadialGraph radial_graph(const CombinatorialMap& m);

/// A noose: simple closed curve through vertices and faces, recorded at
/// corner precision. The curve enters pts[i].v through corner gap_in (a
/// corner of the previous face) and leaves through gap_out into the next
/// face. Faces are implied: face(i) = face of pts[i].gap_out.
struct NoosePoint {
  int v = -1;
  int gap_in = -1;
  int gap_out = -1;
};
struct Noose {
  std::vector<NoosePoint> pts;
  int length() const { return static_cast<int>(pts.size()); }
};

/// Face passed between pts[i] and pts[i+1].
int noose_face(const CombinatorialMap& m, const FaceStructure& fs,
               const Noose& c, int i);

/// Structural validity: distinct vertices, gap_in != gap_out, incidence along
/// faces, consecutive faces distinct, and chords of a revisited face pairwise
/// non-crossing (the curve must be simple).
bool noose_valid(const CombinatorialMap& m, const FaceStructure& fs, const Noose& c);

struct CutResult {
  CombinatorialMap map;
  // (original vertex, copy carrying the arc after gap_in, copy carrying the
  // arc after gap_out). The first copy reuses the original id.
  std::vector<std::array<int, 3>> split_pairs;
  int genus_delta = 0;        // total genus after minus before (<= 0)
  int boundary_circles = 0;   // 1 for one-sided curves, 2 for two-sided
  std::vector<int> cap_faces; // new-map face ids along the cut
  // closing corner of every copy: (copy vertex, gap index, cap face)
  std::vector<std::array<int, 3>> closing_corners;
};

/// Cut the surface along the noose and cap the resulting boundary circles.
/// Each hit vertex splits into two copies whose rotations are the two arcs
/// between the entry and exit gaps; signatures and dart ids are unchanged.
CutResult cut_along(const CombinatorialMap& m, const Noose& c);

/// True iff the curve is two-sided (its cut leaves two boundary circles).
bool is_orientation_preserving(const CombinatorialMap& m, const Noose& c);

/// True iff the noose bounds a disk: its cut keeps the total genus, separates
/// the component, and one side caps to a sphere.
bool is_contractible(const CombinatorialMap& m, const Noose& c);

/// Insert a new edge u-v with the given signature, placing the u-dart into
/// gap gu of u's rotation and the v-dart into gap gv. Pass v >= current n to
/// create a fresh vertex (gv ignored). Returns the new edge id.
int insert_edge(CombinatorialMap& m, int u, int gu, int v, int gv, int sign);

/// Map text format:
///   map <n> <m>
///   rot <v>: d1 d2 ... dk
///   edge <e>: dA dB <+|->
///   mark <v> <color>
CombinatorialMap parse_map(std::istream& in);
CombinatorialMap parse_map_string(const std::string& text);
std::string format_map(const CombinatorialMap& m);

/// Noose text: "noose v0 f0 v1 f1 ..." using canonical face ids. Parsing
/// picks the lexicographically least corner assignment that is valid.
std::string format_noose(const CombinatorialMap& m, const FaceStructure& fs,
                         const Noose& c);
std::optional<Noose> parse_noose(const CombinatorialMap& m, const FaceStructure& fs,
                                 const std::string& text);

/// Vertex relabeling (dart ids unchanged).
CombinatorialMap relabel_map(const CombinatorialMap& m, const std::vector<int>& perm);

}  // namespace surfiso

#endif
