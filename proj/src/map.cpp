#include "surfiso/map.hpp"

#include <algorithm>
#include <array>
#include <cassert>
#include <functional>
#include <istream>
#include <map>
#include <numeric>
#include <queue>
#include <set>
#include <sstream>

namespace surfiso {

Graph CombinatorialMap::underlying() const {
  Graph g(n);
  for (auto& [u, v] : edges) g.edges.emplace_back(u, v);
  g.marks = marks;
  return g;
}

void validate_map(const CombinatorialMap& m) {
  if (static_cast<int>(m.sig.size()) != m.m())
    throw std::invalid_argument("map: signature size mismatch");
  if (static_cast<int>(m.rot.size()) != m.n)
    throw std::invalid_argument("map: rotation table size mismatch");
  std::vector<int> seen(2 * m.m(), 0);
  for (int v = 0; v < m.n; ++v)
    for (int d : m.rot[v]) {
      if (d < 0 || d >= 2 * m.m())
        throw std::invalid_argument("map: dart id out of range");
      if (m.dart_origin(d) != v)
        throw std::invalid_argument("map: dart listed away from its origin");
      if (seen[d]++)
        throw std::invalid_argument("map: dart duplicated in rotations");
    }
  for (int d = 0; d < 2 * m.m(); ++d)
    if (!seen[d]) throw std::invalid_argument("map: dart missing from rotations");
  for (auto s : m.sig)
    if (s != 1 && s != -1) throw std::invalid_argument("map: signature not +-1");
}

namespace {

// Position of each dart within its rotation.
std::vector<int> dart_positions(const CombinatorialMap& m) {
  std::vector<int> pos(2 * m.m(), -1);
  for (int v = 0; v < m.n; ++v)
    for (int i = 0; i < static_cast<int>(m.rot[v].size()); ++i)
      pos[m.rot[v][i]] = i;
  return pos;
}

struct Tracer {
  const CombinatorialMap& m;
  std::vector<int> pos;

  explicit Tracer(const CombinatorialMap& mm) : m(mm), pos(dart_positions(mm)) {}

  // Flag successor in the face walk, plus the corner (vertex, gap) the step
  // passes through.
  int next(int flag, int* corner_v = nullptr, int* corner_gap = nullptr) const {
    int d = flag_dart(flag);
    int s = flag_side(flag);
    int sp = s ^ (m.sig[dart_edge(d)] < 0 ? 1 : 0);
    int t = dart_twin(d);
    int u = m.dart_origin(t);
    int deg = static_cast<int>(m.rot[u].size());
    int i = pos[t];
    int dn;
    if (sp == 0) {
      dn = m.rot[u][(i + 1) % deg];
      if (corner_gap) *corner_gap = i;
    } else {
      dn = m.rot[u][(i - 1 + deg) % deg];
      if (corner_gap) *corner_gap = pos[dn];
    }
    if (corner_v) *corner_v = u;
    return make_flag(dn, sp);
  }

  // Reversal involution: maps a face orbit onto its partner orbit.
  int reverse(int flag) const {
    int d = flag_dart(flag);
    int s = flag_side(flag);
    int e = dart_edge(d);
    return make_flag(dart_twin(d), s ^ (m.sig[e] > 0 ? 1 : 0));
  }
};

}  // namespace

FaceStructure trace_faces(const CombinatorialMap& m) {
  validate_map(m);
  Tracer tr(m);
  int nf = 4 * m.m();
  std::vector<int> orbit_of(nf, -1);
  std::vector<std::vector<int>> orbits;
  for (int f = 0; f < nf; ++f) {
    if (orbit_of[f] != -1) continue;
    std::vector<int> orb;
    int cur = f;
    do {
      orbit_of[cur] = static_cast<int>(orbits.size());
      orb.push_back(cur);
      cur = tr.next(cur);
    } while (cur != f);
    orbits.push_back(std::move(orb));
  }
  // Pair each orbit with its reversal; keep the one holding the smaller flag.
  int no = static_cast<int>(orbits.size());
  std::vector<int> partner(no, -1);
  for (int i = 0; i < no; ++i) {
    if (partner[i] != -1) continue;
    int j = orbit_of[tr.reverse(orbits[i][0])];
    assert(j != i && "face orbit equal to its own reversal");
    partner[i] = j;
    partner[j] = i;
  }
  std::vector<int> canon;
  for (int i = 0; i < no; ++i) {
    int j = partner[i];
    int mi = *std::min_element(orbits[i].begin(), orbits[i].end());
    int mj = *std::min_element(orbits[j].begin(), orbits[j].end());
    if (mi < mj) canon.push_back(i);
  }
  std::sort(canon.begin(), canon.end(), [&](int a, int b) {
    return *std::min_element(orbits[a].begin(), orbits[a].end()) <
           *std::min_element(orbits[b].begin(), orbits[b].end());
  });

  FaceStructure fs;
  fs.face_of_flag.assign(nf, -1);
  fs.gap_face.resize(m.n);
  for (int v = 0; v < m.n; ++v) fs.gap_face[v].assign(m.rot[v].size(), -1);
  for (int idx = 0; idx < static_cast<int>(canon.size()); ++idx) {
    int oi = canon[idx];
    // rotate the walk to start at the minimal flag, for determinism
    auto walk = orbits[oi];
    auto mn = std::min_element(walk.begin(), walk.end());
    std::rotate(walk.begin(), mn, walk.end());
    fs.walks.push_back(walk);
    for (int f : orbits[oi]) fs.face_of_flag[f] = idx;
    for (int f : orbits[partner[oi]]) fs.face_of_flag[f] = idx;
    std::vector<std::pair<int, int>> cs;
    for (int i = 0; i < static_cast<int>(walk.size()); ++i) {
      int cv, cg;
      tr.next(walk[i], &cv, &cg);
      cs.emplace_back(cv, cg);
      assert(fs.gap_face[cv][cg] == -1 && "corner visited twice");
      fs.gap_face[cv][cg] = idx;
    }
    fs.corners.push_back(std::move(cs));
  }
  for (int v = 0; v < m.n; ++v)
    for (int g = 0; g < static_cast<int>(m.rot[v].size()); ++g)
      assert(fs.gap_face[v][g] != -1 && "corner not covered by any face");
  return fs;
}

namespace {

int component_genus_sum(const CombinatorialMap& m, std::vector<int>* comp_genus_out,
                        std::vector<int>* comp_ids_out) {
  int nc = 0;
  auto comp = component_ids(m.underlying(), &nc);
  FaceStructure fs = trace_faces(m);
  std::vector<int> vcnt(nc, 0), ecnt(nc, 0), fcnt(nc, 0), has_edge(nc, 0);
  for (int v = 0; v < m.n; ++v) vcnt[comp[v]]++;
  for (auto& [u, v] : m.edges) {
    ecnt[comp[u]]++;
    has_edge[comp[u]] = 1;
  }
  for (auto& w : fs.walks) {
    int v = m.dart_origin(flag_dart(w[0]));
    fcnt[comp[v]]++;
  }
  int total = 0;
  std::vector<int> cg(nc, 0);
  for (int c = 0; c < nc; ++c) {
    if (!has_edge[c]) {
      cg[c] = 0;  // isolated vertices sit on spheres
      continue;
    }
    int chi = vcnt[c] - ecnt[c] + fcnt[c];
    cg[c] = 2 - chi;
    if (cg[c] < 0) throw std::runtime_error("negative component genus: invalid map");
    total += cg[c];
  }
  if (comp_genus_out) *comp_genus_out = cg;
  if (comp_ids_out) *comp_ids_out = comp;
  return total;
}

}  // namespace

int euler_genus(const CombinatorialMap& m) {
  if (!is_connected(m.underlying()))
    throw std::invalid_argument("euler_genus: underlying graph disconnected");
  FaceStructure fs = trace_faces(m);
  int chi = m.n - m.m() + fs.count();
  if (chi > 2) throw std::runtime_error("euler characteristic above 2: invalid map");
  return 2 - chi;
}

int total_euler_genus(const CombinatorialMap& m) {
  return component_genus_sum(m, nullptr, nullptr);
}

CombinatorialMap normalize_signs(const CombinatorialMap& m) {
  CombinatorialMap r = m;
  auto adj = edge_adjacency(r.underlying());
  std::vector<int> state(r.n, -1);  // -1 unseen, 0 kept, 1 flipped
  auto flip = [&](int v) {
    std::reverse(r.rot[v].begin(), r.rot[v].end());
    for (int e : adj[v]) {
      auto [a, b] = r.edges[e];
      if (a != b) r.sig[e] = -r.sig[e];
    }
  };
  for (int s = 0; s < r.n; ++s) {
    if (state[s] != -1) continue;
    state[s] = 0;
    std::queue<int> q;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int e : adj[v]) {
        auto [a, b] = r.edges[e];
        int w = (a == v) ? b : a;
        if (w == v || state[w] != -1) continue;
        state[w] = 0;
        if (r.sig[e] < 0) flip(w);
        q.push(w);
      }
    }
  }
  return r;
}

bool is_orientable(const CombinatorialMap& m) {
  CombinatorialMap r = normalize_signs(m);
  for (auto s : r.sig)
    if (s < 0) return false;
  return true;
}

RadialGraph radial_graph(const CombinatorialMap& m) {
  FaceStructure fs = trace_faces(m);
  RadialGraph r;
  r.n_vertices = m.n;
  r.n_faces = fs.count();
  r.graph = Graph(m.n + fs.count());
  for (int f = 0; f < fs.count(); ++f)
    for (auto& [v, g] : fs.corners[f]) {
      r.corner_of_edge.push_back({v, g, f});
      r.graph.edges.emplace_back(v, m.n + f);
    }
  return r;
}

int noose_face(const CombinatorialMap& m, const FaceStructure& fs,
               const Noose& c, int i) {
  (void)m;
  const auto& p = c.pts[i];
  return fs.gap_face[p.v][p.gap_out];
}

bool noose_valid(const CombinatorialMap& m, const FaceStructure& fs, const Noose& c) {
  int k = c.length();
  if (k < 1) return false;
  std::set<int> vs;
  for (auto& p : c.pts) {
    if (p.v < 0 || p.v >= m.n) return false;
    int deg = m.degree(p.v);
    if (p.gap_in < 0 || p.gap_in >= deg || p.gap_out < 0 || p.gap_out >= deg)
      return false;
    if (p.gap_in == p.gap_out) return false;
    if (!vs.insert(p.v).second) return false;
  }
  // face continuity: exit face of point i == entry face of point i+1
  for (int i = 0; i < k; ++i) {
    const auto& a = c.pts[i];
    const auto& b = c.pts[(i + 1) % k];
    if (fs.gap_face[a.v][a.gap_out] != fs.gap_face[b.v][b.gap_in]) return false;
  }
  // consecutive faces distinct
  if (k >= 2) {
    for (int i = 0; i < k; ++i) {
      int f1 = noose_face(m, fs, c, i);
      int f2 = noose_face(m, fs, c, (i + 1) % k);
      if (f1 == f2) return false;
    }
  }
  // chords of a revisited face must not interleave
  std::map<int, std::vector<std::pair<int, int>>> chords;  // face -> corner pos pairs
  for (int i = 0; i < k; ++i) {
    const auto& a = c.pts[i];
    const auto& b = c.pts[(i + 1) % k];
    int f = fs.gap_face[a.v][a.gap_out];
    auto find_pos = [&](int v, int g) {
      const auto& cs = fs.corners[f];
      for (int j = 0; j < static_cast<int>(cs.size()); ++j)
        if (cs[j] == std::make_pair(v, g)) return j;
      return -1;
    };
    int pa = find_pos(a.v, a.gap_out);
    int pb = find_pos(b.v, b.gap_in);
    if (pa < 0 || pb < 0 || pa == pb) return false;
    chords[f].push_back({std::min(pa, pb), std::max(pa, pb)});
  }
  for (auto& [f, cl] : chords) {
    for (size_t i = 0; i < cl.size(); ++i)
      for (size_t j = i + 1; j < cl.size(); ++j) {
        auto [a1, b1] = cl[i];
        auto [a2, b2] = cl[j];
        if (a1 == a2 || a1 == b2 || b1 == a2 || b1 == b2) return false;
        bool in1 = a1 < a2 && a2 < b1;
        bool in2 = a1 < b2 && b2 < b1;
        if (in1 != in2) return false;  // interleaved: curve would self-cross
      }
  }
  return true;
}

CutResult cut_along(const CombinatorialMap& m, const Noose& c) {
  FaceStructure fs = trace_faces(m);
  if (!noose_valid(m, fs, c))
    throw std::invalid_argument("cut_along: noose not incident-consistent");
  int k = c.length();
  CutResult res;
  CombinatorialMap r = m;
  if (static_cast<int>(r.marks.size()) < r.n && !r.marks.empty())
    r.marks.resize(r.n, 0);
  int before = total_euler_genus(m);
  int comp_before = 0;
  component_ids(m.underlying(), &comp_before);

  for (int i = 0; i < k; ++i) {
    const auto& p = c.pts[i];
    const auto& old_rot = m.rot[p.v];
    int deg = static_cast<int>(old_rot.size());
    auto arc = [&](int from_gap, int to_gap) {
      // darts strictly after from_gap, up to and including position to_gap
      std::vector<int> out;
      int idx = (from_gap + 1) % deg;
      while (true) {
        out.push_back(old_rot[idx]);
        if (idx == to_gap) break;
        idx = (idx + 1) % deg;
      }
      return out;
    };
    std::vector<int> arc_a = arc(p.gap_in, p.gap_out);
    std::vector<int> arc_b = arc(p.gap_out, p.gap_in);
    int copy_b = r.n++;
    r.rot[p.v] = arc_a;
    r.rot.push_back(arc_b);
    if (!r.marks.empty()) r.marks.push_back(m.mark(p.v));
    else if (m.mark(p.v) != 0) {
      r.marks.assign(r.n, 0);
      r.marks[p.v] = m.mark(p.v);
      r.marks[copy_b] = m.mark(p.v);
    }
    for (int d : arc_b) {
      int e = dart_edge(d);
      if (d & 1) r.edges[e].second = copy_b;
      else r.edges[e].first = copy_b;
    }
    res.split_pairs.push_back({p.v, p.v, copy_b});
  }

  res.map = r;
  FaceStructure nfs = trace_faces(r);
  std::set<int> caps;
  for (int i = 0; i < k; ++i) {
    int va = res.split_pairs[i][1];
    int vb = res.split_pairs[i][2];
    int ga = static_cast<int>(r.rot[va].size()) - 1;
    int gb = static_cast<int>(r.rot[vb].size()) - 1;
    int fa = nfs.gap_face[va][ga];
    int fb = nfs.gap_face[vb][gb];
    res.closing_corners.push_back({va, ga, fa});
    res.closing_corners.push_back({vb, gb, fb});
    caps.insert(fa);
    caps.insert(fb);
  }
  res.cap_faces.assign(caps.begin(), caps.end());
  res.boundary_circles = static_cast<int>(caps.size());
  assert(res.boundary_circles == 1 || res.boundary_circles == 2);
  int after = total_euler_genus(r);
  res.genus_delta = after - before;
  (void)comp_before;
  return res;
}

bool is_orientation_preserving(const CombinatorialMap& m, const Noose& c) {
  return cut_along(m, c).boundary_circles == 2;
}

bool is_contractible(const CombinatorialMap& m, const Noose& c) {
  CutResult r = cut_along(m, c);
  if (r.genus_delta != 0) return false;
  if (r.boundary_circles != 2) return false;
  std::vector<int> cg, comp;
  component_genus_sum(r.map, &cg, &comp);
  FaceStructure nfs = trace_faces(r.map);
  // component of a face = component of any flag's origin vertex
  auto face_comp = [&](int face) {
    for (auto& w : nfs.walks)
      if (nfs.face_of_flag[w[0]] == face)
        return comp[r.map.dart_origin(flag_dart(w[0]))];
    // walks are indexed by face id directly
    return comp[r.map.dart_origin(flag_dart(nfs.walks[face][0]))];
  };
  int ca = face_comp(r.cap_faces[0]);
  int cb = face_comp(r.cap_faces[1]);
  if (ca == cb) return false;  // did not separate
  return cg[ca] == 0 || cg[cb] == 0;
}

int insert_edge(CombinatorialMap& m, int u, int gu, int v, int gv, int sign) {
  int e = m.m();
  int du = 2 * e, dv = 2 * e + 1;
  if (u == v) {
    // loop: splice both darts into one rotation, higher gap first
    m.edges.emplace_back(u, u);
    m.sig.push_back(static_cast<std::int8_t>(sign));
    if (gu < gv) {
      m.rot[u].insert(m.rot[u].begin() + gv + 1, dv);
      m.rot[u].insert(m.rot[u].begin() + gu + 1, du);
    } else {
      m.rot[u].insert(m.rot[u].begin() + gu + 1, du);
      m.rot[u].insert(m.rot[u].begin() + gv + 1, dv);
    }
    return e;
  }
  m.edges.emplace_back(u, v);
  m.sig.push_back(static_cast<std::int8_t>(sign));
  if (m.rot[u].empty()) m.rot[u].push_back(du);
  else m.rot[u].insert(m.rot[u].begin() + gu + 1, du);
  if (v >= m.n) {
    if (v != m.n) throw std::invalid_argument("insert_edge: fresh vertex must be n");
    m.n++;
    m.rot.push_back({dv});
    if (!m.marks.empty()) m.marks.push_back(0);
  } else if (m.rot[v].empty()) {
    m.rot[v].push_back(dv);
  } else {
    m.rot[v].insert(m.rot[v].begin() + gv + 1, dv);
  }
  return e;
}

CombinatorialMap parse_map(std::istream& in) {
  CombinatorialMap m;
  std::string line;
  int lineno = 0;
  bool header = false;
  int nedges = 0;
  std::vector<bool> edge_seen;
  auto fail = [&](const std::string& msg) {
    throw std::invalid_argument("line " + std::to_string(lineno) + ": " + msg);
  };
  while (std::getline(in, line)) {
    ++lineno;
    for (auto& ch : line)
      if (ch == ':') ch = ' ';
    std::istringstream ls(line);
    std::string tok;
    if (!(ls >> tok)) continue;
    if (!header) {
      if (tok != "map") fail("expected 'map <n> <m>' header");
      int n, mm;
      if (!(ls >> n >> mm) || n < 0 || mm < 0) fail("bad map header");
      m.n = n;
      m.rot.resize(n);
      m.edges.assign(mm, {-1, -1});
      m.sig.assign(mm, 1);
      edge_seen.assign(mm, false);
      nedges = mm;
      header = true;
    } else if (tok == "rot") {
      int v;
      if (!(ls >> v) || v < 0 || v >= m.n) fail("bad rot vertex");
      int d;
      m.rot[v].clear();
      while (ls >> d) m.rot[v].push_back(d);
    } else if (tok == "edge") {
      int e, da, db;
      std::string sgn;
      if (!(ls >> e >> da >> db >> sgn)) fail("bad edge line");
      if (e < 0 || e >= nedges) fail("edge id out of range");
      if (da != 2 * e || db != 2 * e + 1) fail("edge darts must be (2e, 2e+1)");
      m.sig[e] = (sgn == "-") ? -1 : 1;
      edge_seen[e] = true;
    } else if (tok == "mark") {
      int v, c;
      if (!(ls >> v >> c)) fail("bad mark line");
      if (v < 0 || v >= m.n) fail("mark vertex out of range");
      if (static_cast<int>(m.marks.size()) < m.n) m.marks.assign(m.n, 0);
      m.marks[v] = c;
    } else {
      fail("unknown directive '" + tok + "'");
    }
  }
  if (!header) throw std::invalid_argument("line 1: empty input, expected map header");
  // endpoints from rotations
  for (int v = 0; v < m.n; ++v)
    for (int d : m.rot[v]) {
      if (d < 0 || d >= 2 * nedges) fail("dart id out of range");
      int e = dart_edge(d);
      if (d & 1) m.edges[e].second = v;
      else m.edges[e].first = v;
    }
  for (int e = 0; e < nedges; ++e)
    if (m.edges[e].first < 0 || m.edges[e].second < 0)
      throw std::invalid_argument("edge " + std::to_string(e) +
                                  " has darts missing from rotations");
  validate_map(m);
  return m;
}

CombinatorialMap parse_map_string(const std::string& text) {
  std::istringstream in(text);
  return parse_map(in);
}

std::string format_map(const CombinatorialMap& m) {
  std::ostringstream os;
  os << "map " << m.n << ' ' << m.m() << '\n';
  for (int v = 0; v < m.n; ++v) {
    os << "rot " << v << ':';
    for (int d : m.rot[v]) os << ' ' << d;
    os << '\n';
  }
  for (int e = 0; e < m.m(); ++e)
    os << "edge " << e << ": " << 2 * e << ' ' << 2 * e + 1 << ' '
       << (m.sig[e] > 0 ? '+' : '-') << '\n';
  for (int v = 0; v < m.n; ++v)
    if (m.mark(v) != 0) os << "mark " << v << ' ' << m.mark(v) << '\n';
  return os.str();
}

std::string format_noose(const CombinatorialMap& m, const FaceStructure& fs,
                         const Noose& c) {
  std::ostringstream os;
  os << "noose";
  for (int i = 0; i < c.length(); ++i)
    os << ' ' << c.pts[i].v << ' ' << noose_face(m, fs, c, i);
  return os.str();
}

std::optional<Noose> parse_noose(const CombinatorialMap& m, const FaceStructure& fs,
                                 const std::string& text) {
  std::istringstream ls(text);
  std::string tok;
  if (!(ls >> tok) || tok != "noose") return std::nullopt;
  std::vector<int> vals;
  int x;
  while (ls >> x) vals.push_back(x);
  if (vals.size() < 2 || vals.size() % 2 != 0) return std::nullopt;
  int k = static_cast<int>(vals.size()) / 2;
  std::vector<int> vs(k), faces(k);
  for (int i = 0; i < k; ++i) {
    vs[i] = vals[2 * i];
    faces[i] = vals[2 * i + 1];
  }
  // choose the lexicographically least valid corner assignment
  std::vector<std::vector<int>> out_choices(k);
  for (int i = 0; i < k; ++i) {
    if (vs[i] < 0 || vs[i] >= m.n) return std::nullopt;
    for (int g = 0; g < m.degree(vs[i]); ++g)
      if (fs.gap_face[vs[i]][g] == faces[i]) out_choices[i].push_back(g);
    if (out_choices[i].empty()) return std::nullopt;
  }
  Noose c;
  c.pts.resize(k);
  std::function<bool(int)> rec = [&](int i) -> bool {
    if (i == k) return noose_valid(m, fs, c);
    int prev_face = faces[(i + k - 1) % k];
    for (int gin = 0; gin < m.degree(vs[i]); ++gin) {
      if (fs.gap_face[vs[i]][gin] != prev_face) continue;
      for (int gout : out_choices[i]) {
        if (gout == gin) continue;
        c.pts[i] = {vs[i], gin, gout};
        if (rec(i + 1)) return true;
      }
    }
    return false;
  };
  if (!rec(0)) return std::nullopt;
  return c;
}

CombinatorialMap relabel_map(const CombinatorialMap& m, const std::vector<int>& perm) {
  CombinatorialMap r;
  r.n = m.n;
  r.edges.resize(m.m());
  r.sig = m.sig;
  r.rot.resize(m.n);
  for (int e = 0; e < m.m(); ++e)
    r.edges[e] = {perm[m.edges[e].first], perm[m.edges[e].second]};
  for (int v = 0; v < m.n; ++v) r.rot[perm[v]] = m.rot[v];
  if (!m.marks.empty()) {
    r.marks.assign(m.n, 0);
    for (int v = 0; v < m.n; ++v) r.marks[perm[v]] = m.mark(v);
  }
  return r;
}

}  // namespace surfiso
