#ifndef SURFISO_CANON_HPP
#define SURFISO_CANON_HPP

#include <compare>
#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include "surfiso/map.hpp"

namespace surfiso {

enum class CanonMode { oriented, free };

struct CanonicalCode {
  std::vector<std::uint32_t> word;
  std::string scheme = "flagwalk-1";

  auto operator<=>(const CanonicalCode&) const = default;
  std::vector<std::uint8_t> bytes() const;
  std::string hex() const;
};

/// Canonical form of a marked map: run the breadth-first flag walk from every
/// root dart (both traversal senses in free mode) and keep the
/// lexicographically least word. Equal codes <=> isomorphic marked maps under
/// the mode's reflection convention. O(m^2) with early abort per root.
CanonicalCode canonical_code(const CombinatorialMap& m, CanonMode mode = CanonMode::free);

struct MapCorrespondence {
  std::vector<int> vertex_map;  // vertex of a -> vertex of b
};

/// Vertex correspondence realizing a map isomorphism (rotations, twins,
/// signatures up to flips, marks), or nullopt. Consistent with code equality.
std::optional<MapCorrespondence> maps_isomorphic(const CombinatorialMap& a,
                                                 const CombinatorialMap& b,
                                                 CanonMode mode = CanonMode::free);

}  // namespace surfiso

#endif
