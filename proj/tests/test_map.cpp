#include "doctest.h"

#include <numeric>
#include <random>
#include <set>

#include "surfiso/map.hpp"

using namespace surfiso;

namespace {

// Planar tetrahedron: rotations read off a straight-line drawing.
CombinatorialMap k4_planar() {
  CombinatorialMap m;
  m.n = 4;
  m.edges = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};
  m.sig.assign(6, 1);
  m.rot = {{0, 2, 4}, {6, 1, 8}, {10, 3, 7}, {9, 5, 11}};
  return m;
}

CombinatorialMap projective_loop() {
  CombinatorialMap m;
  m.n = 1;
  m.edges = {{0, 0}};
  m.sig = {-1};
  m.rot = {{0, 1}};
  return m;
}

CombinatorialMap planar_loop() {
  CombinatorialMap m = projective_loop();
  m.sig = {1};
  return m;
}

CombinatorialMap triangle_sphere() {
  CombinatorialMap m;
  m.n = 3;
  m.edges = {{0, 1}, {1, 2}, {2, 0}};
  m.sig.assign(3, 1);
  m.rot = {{0, 5}, {1, 2}, {3, 4}};
  return m;
}

// C3 x C3 grid on the torus, all quads; vertex (i,j) -> 3i+j.
CombinatorialMap torus_grid3() {
  CombinatorialMap m;
  m.n = 9;
  auto id = [](int i, int j) { return 3 * ((i + 3) % 3) + ((j + 3) % 3); };
  // horizontal edges first (i,j)-(i,j+1), then vertical (i,j)-(i+1,j)
  std::vector<std::pair<int, int>> h, v;
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) h.push_back({id(i, j), id(i, j + 1)});
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) v.push_back({id(i, j), id(i + 1, j)});
  m.edges = h;
  for (auto& e : v) m.edges.push_back(e);
  m.sig.assign(m.edges.size(), 1);
  m.rot.resize(9);
  auto hedge = [&](int i, int j) { return 3 * ((i + 3) % 3) + ((j + 3) % 3); };
  auto vedge = [&](int i, int j) { return 9 + 3 * ((i + 3) % 3) + ((j + 3) % 3); };
  for (int i = 0; i < 3; ++i)
    for (int j = 0; j < 3; ++j) {
      int east = 2 * hedge(i, j);          // dart at (i,j) toward (i,j+1)
      int west = 2 * hedge(i, j - 1) + 1;  // dart at (i,j) toward (i,j-1)
      int south = 2 * vedge(i, j);         // toward (i+1,j)
      int north = 2 * vedge(i - 1, j) + 1; // toward (i-1,j)
      m.rot[id(i, j)] = {east, south, west, north};
    }
  return m;
}

CombinatorialMap random_map(std::mt19937& rng, int n, int m_edges) {
  CombinatorialMap m;
  m.n = n;
  for (int e = 0; e < m_edges; ++e) {
    int u = rng() % n, v = rng() % n;
    m.edges.emplace_back(u, v);
    m.sig.push_back(rng() % 2 ? 1 : -1);
  }
  m.rot.resize(n);
  for (int e = 0; e < m_edges; ++e) {
    m.rot[m.edges[e].first].push_back(2 * e);
    m.rot[m.edges[e].second].push_back(2 * e + 1);
  }
  for (auto& r : m.rot) std::shuffle(r.begin(), r.end(), rng);
  return m;
}

}  // namespace

TEST_CASE("planar K4: four triangular faces, genus 0") {
  auto m = k4_planar();
  auto fs = trace_faces(m);
  CHECK(fs.count() == 4);
  for (auto& w : fs.walks) CHECK(w.size() == 3);
  CHECK(euler_genus(m) == 0);
  CHECK(is_orientable(m));
}

TEST_CASE("one-vertex one-loop with signature -1 is the projective plane") {
  auto m = projective_loop();
  auto fs = trace_faces(m);
  REQUIRE(fs.count() == 1);
  CHECK(fs.walks[0].size() == 2);
  CHECK(euler_genus(m) == 1);
  CHECK_FALSE(is_orientable(m));
}

TEST_CASE("planar loop has two faces of length one") {
  auto m = planar_loop();
  auto fs = trace_faces(m);
  REQUIRE(fs.count() == 2);
  CHECK(fs.walks[0].size() == 1);
  CHECK(fs.walks[1].size() == 1);
  CHECK(euler_genus(m) == 0);
}

TEST_CASE("torus grid: nine quads, genus 2") {
  auto m = torus_grid3();
  auto fs = trace_faces(m);
  CHECK(fs.count() == 9);
  for (auto& w : fs.walks) CHECK(w.size() == 4);
  CHECK(euler_genus(m) == 2);
  CHECK(is_orientable(m));
}

TEST_CASE("face walk lengths sum to 2E on random maps") {
  std::mt19937 rng(99);
  for (int t = 0; t < 200; ++t) {
    int n = 1 + static_cast<int>(rng() % 6);
    int e = 1 + static_cast<int>(rng() % 10);
    auto m = random_map(rng, n, e);
    auto fs = trace_faces(m);
    size_t total = 0;
    for (auto& w : fs.walks) total += w.size();
    CHECK(total == 2 * m.edges.size());
    CHECK(total_euler_genus(m) >= 0);
  }
}

TEST_CASE("sign normalization: tree signs forced positive, orientability") {
  CombinatorialMap m;
  m.n = 2;
  m.edges = {{0, 1}};
  m.sig = {-1};
  m.rot = {{0}, {1}};
  CHECK(is_orientable(m));
  auto nrm = normalize_signs(m);
  CHECK(nrm.sig[0] == 1);
  CHECK(euler_genus(nrm) == 0);

  // genus parity matches orientability on fixtures
  CHECK(euler_genus(torus_grid3()) % 2 == 0);
  CHECK_FALSE(is_orientable(projective_loop()));
}

TEST_CASE("radial graph sizes") {
  auto r1 = radial_graph(k4_planar());
  CHECK(r1.n_vertices == 4);
  CHECK(r1.n_faces == 4);
  CHECK(r1.graph.m() == 12);

  auto r2 = radial_graph(projective_loop());
  CHECK(r2.n_vertices == 1);
  CHECK(r2.n_faces == 1);
  CHECK(r2.graph.m() == 2);  // two parallel incidences

  auto r3 = radial_graph(triangle_sphere());
  CHECK(r3.n_vertices == 3);
  CHECK(r3.n_faces == 2);
  CHECK(r3.graph.m() == 6);
}

TEST_CASE("cutting the projective loop noose yields the plane") {
  auto m = projective_loop();
  Noose c;
  c.pts = {{0, 0, 1}};
  auto fs = trace_faces(m);
  REQUIRE(noose_valid(m, fs, c));
  CHECK_FALSE(is_orientation_preserving(m, c));
  CHECK_FALSE(is_contractible(m, c));
  auto r = cut_along(m, c);
  CHECK(r.genus_delta == -1);
  CHECK(r.boundary_circles == 1);
  CHECK(r.map.n == 2);
  CHECK(total_euler_genus(r.map) == 0);
}

TEST_CASE("cutting a torus meridian drops genus by two") {
  auto m = torus_grid3();
  auto fs = trace_faces(m);
  // vertical curve through column 0: at (i,0) enter gap 2 (W,N), exit gap 1 (S,W)
  Noose c;
  c.pts = {{0, 2, 1}, {3, 2, 1}, {6, 2, 1}};
  REQUIRE(noose_valid(m, fs, c));
  CHECK(is_orientation_preserving(m, c));
  CHECK_FALSE(is_contractible(m, c));
  auto r = cut_along(m, c);
  CHECK(r.genus_delta == -2);
  CHECK(r.boundary_circles == 2);
  CHECK(total_euler_genus(r.map) == 0);
}

TEST_CASE("contractible length-1 noose around one half of a bowtie") {
  CombinatorialMap m;
  m.n = 5;
  m.edges = {{0, 1}, {0, 2}, {1, 2}, {0, 3}, {0, 4}, {3, 4}};
  m.sig.assign(6, 1);
  m.rot = {{0, 2, 6, 8}, {1, 4}, {3, 5}, {7, 10}, {9, 11}};
  REQUIRE(euler_genus(m) == 0);
  auto fs = trace_faces(m);
  int found = 0;
  for (int g1 = 0; g1 < 4; ++g1)
    for (int g2 = 0; g2 < 4; ++g2) {
      if (g1 == g2) continue;
      Noose c;
      c.pts = {{0, g1, g2}};
      if (!noose_valid(m, fs, c)) continue;
      ++found;
      CHECK(is_contractible(m, c));
      auto r = cut_along(m, c);
      CHECK(r.genus_delta == 0);
      CHECK(r.map.n == 6);
      int nc = 0;
      component_ids(r.map.underlying(), &nc);
      CHECK(nc == 2);
    }
  CHECK(found > 0);
}

TEST_CASE("noose validity rejects grazing and face-repeating curves") {
  auto m = torus_grid3();
  auto fs = trace_faces(m);
  Noose graze;
  graze.pts = {{0, 1, 1}};
  CHECK_FALSE(noose_valid(m, fs, graze));
  Noose repeat_v;
  repeat_v.pts = {{0, 2, 1}, {0, 2, 1}};
  CHECK_FALSE(noose_valid(m, fs, repeat_v));
}

TEST_CASE("map text round trip") {
  auto m = torus_grid3();
  auto text = format_map(m);
  auto p = parse_map_string(text);
  CHECK(p.n == m.n);
  CHECK(p.edges == m.edges);
  CHECK(p.rot == m.rot);
  CHECK(euler_genus(p) == 2);
}

TEST_CASE("noose serialization round trip") {
  auto m = torus_grid3();
  auto fs = trace_faces(m);
  Noose c;
  c.pts = {{0, 2, 1}, {3, 2, 1}, {6, 2, 1}};
  REQUIRE(noose_valid(m, fs, c));
  auto text = format_noose(m, fs, c);
  auto back = parse_noose(m, fs, text);
  REQUIRE(back.has_value());
  CHECK(noose_valid(m, fs, *back));
  // same vertices and faces
  for (int i = 0; i < 3; ++i) {
    CHECK(back->pts[i].v == c.pts[i].v);
    CHECK(noose_face(m, fs, *back, i) == noose_face(m, fs, c, i));
  }
}

TEST_CASE("insert_edge splits a face and keeps genus") {
  auto m = triangle_sphere();
  auto fs = trace_faces(m);
  // both faces are triangles; insert a chord 0-1 inside the face at gap of 0
  int f = fs.gap_face[0][0];
  int g1 = -1;
  for (int g = 0; g < m.degree(1); ++g)
    if (fs.gap_face[1][g] == f) g1 = g;
  REQUIRE(g1 >= 0);
  insert_edge(m, 0, 0, 1, g1, 1);
  validate_map(m);
  CHECK(euler_genus(m) == 0);
  auto fs2 = trace_faces(m);
  CHECK(fs2.count() == 3);
}
