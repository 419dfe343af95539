#include "surfiso/canon.hpp"

#include <algorithm>
#include <cassert>
#include <sstream>

namespace surfiso {

namespace {

constexpr std::uint32_t kNew = 0;
constexpr std::uint32_t kOld = 1;

struct FlagWalk {
  const CombinatorialMap& m;
  std::vector<int> pos;        // dart -> index in its rotation
  // per-run state
  std::vector<int> vnum, ventry, vsense, vorder;

  explicit FlagWalk(const CombinatorialMap& mm) : m(mm) {
    pos.assign(2 * m.m(), -1);
    for (int v = 0; v < m.n; ++v)
      for (int i = 0; i < static_cast<int>(m.rot[v].size()); ++i)
        pos[m.rot[v][i]] = i;
  }

  // Generate the word for one root, comparing against `best` as we go.
  // Returns -1 (worse, aborted), 0 (equal), +1 (strictly smaller).
  int run(int root_dart, int root_sense, const std::vector<std::uint32_t>& best,
          std::vector<std::uint32_t>& out) {
    out.clear();
    int verdict = best.empty() ? 1 : 0;
    auto emit = [&](std::uint32_t tok) {
      if (verdict == 0) {
        size_t i = out.size();
        if (i >= best.size() || tok > best[i]) { verdict = -1; return false; }
        if (tok < best[i]) verdict = 1;
      }
      out.push_back(tok);
      return true;
    };
    vnum.assign(m.n, -1);
    ventry.assign(m.n, -1);
    vsense.assign(m.n, 0);
    vorder.clear();
    int root_v = m.dart_origin(root_dart);
    vnum[root_v] = 0;
    ventry[root_v] = root_dart;
    vsense[root_v] = root_sense;
    vorder.push_back(root_v);
    for (size_t qi = 0; qi < vorder.size(); ++qi) {
      int v = vorder[qi];
      int deg = static_cast<int>(m.rot[v].size());
      if (!emit(static_cast<std::uint32_t>(deg))) return -1;
      if (!emit(static_cast<std::uint32_t>(m.mark(v)) + 2)) return -1;
      int start = pos[ventry[v]];
      int dir = vsense[v] ? -1 : 1;
      for (int i = 0; i < deg; ++i) {
        int c = m.rot[v][((start + dir * i) % deg + deg) % deg];
        int t = dart_twin(c);
        int u = m.dart_origin(t);
        int sbit = vsense[v] ^ (m.sig[dart_edge(c)] < 0 ? 1 : 0);
        if (vnum[u] == -1) {
          vnum[u] = static_cast<int>(vorder.size());
          ventry[u] = t;
          vsense[u] = sbit;
          vorder.push_back(u);
          if (!emit(kNew)) return -1;
        } else {
          int udeg = static_cast<int>(m.rot[u].size());
          int udir = vsense[u] ? -1 : 1;
          int rel = (((pos[t] - pos[ventry[u]]) * udir) % udeg + udeg) % udeg;
          if (!emit(kOld)) return -1;
          if (!emit(static_cast<std::uint32_t>(vnum[u]))) return -1;
          if (!emit(static_cast<std::uint32_t>(rel))) return -1;
          if (!emit(static_cast<std::uint32_t>(sbit ^ vsense[u]))) return -1;
        }
      }
    }
    if (static_cast<int>(vorder.size()) != m.n)
      throw std::invalid_argument("canonical_code: map not connected");
    return verdict;
  }
};

// Shared by canonical_code and maps_isomorphic: also reports the winning
// vertex order.
CanonicalCode canon_with_order(const CombinatorialMap& m, CanonMode mode,
                               std::vector<int>* order_out) {
  validate_map(m);
  CanonicalCode code;
  if (m.m() == 0) {
    if (m.n != 1)
      throw std::invalid_argument("canonical_code: map not connected");
    code.word = {0u, static_cast<std::uint32_t>(m.mark(0)) + 2};
    if (order_out) *order_out = {0};
    return code;
  }
  FlagWalk walk(m);
  std::vector<std::uint32_t> best, cur;
  std::vector<int> best_order;
  int senses = (mode == CanonMode::free) ? 2 : 1;
  for (int s = 0; s < senses; ++s)
    for (int d = 0; d < 2 * m.m(); ++d) {
      int verdict = walk.run(d, s, best, cur);
      if (verdict > 0) {
        best = cur;
        best_order = walk.vorder;
      }
    }
  code.word = std::move(best);
  if (order_out) *order_out = best_order;
  return code;
}

}  // namespace

std::vector<std::uint8_t> CanonicalCode::bytes() const {
  std::vector<std::uint8_t> out;
  out.reserve(4 * word.size());
  for (auto w : word) {
    out.push_back(static_cast<std::uint8_t>(w >> 24));
    out.push_back(static_cast<std::uint8_t>(w >> 16));
    out.push_back(static_cast<std::uint8_t>(w >> 8));
    out.push_back(static_cast<std::uint8_t>(w));
  }
  return out;
}

std::string CanonicalCode::hex() const {
  static const char* digits = "0123456789abcdef";
  std::string s;
  for (auto b : bytes()) {
    s += digits[b >> 4];
    s += digits[b & 15];
  }
  return s;
}

CanonicalCode canonical_code(const CombinatorialMap& m, CanonMode mode) {
  return canon_with_order(m, mode, nullptr);
}

std::optional<MapCorrespondence> maps_isomorphic(const CombinatorialMap& a,
                                                 const CombinatorialMap& b,
                                                 CanonMode mode) {
  if (a.n != b.n || a.m() != b.m()) return std::nullopt;
  std::vector<int> oa, ob;
  CanonicalCode ca = canon_with_order(a, mode, &oa);
  CanonicalCode cb = canon_with_order(b, mode, &ob);
  if (ca.word != cb.word) return std::nullopt;
  MapCorrespondence corr;
  corr.vertex_map.assign(a.n, -1);
  for (int i = 0; i < a.n; ++i) corr.vertex_map[oa[i]] = ob[i];
  return corr;
}

}  // namespace surfiso
