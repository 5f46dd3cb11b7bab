#pragma once

#include "bridgesurf/angles.hpp"
#include "bridgesurf/triangulation.hpp"

#include <optional>
#include <string>
#include <vector>

namespace bsurf {

struct AngledTriangulation {
  IdealTriangulation tri;
  AngleStructure angles;
  std::optional<BoundaryPath> meridian;
  int depth = 0;
  // Moves from the input, e.g. "2-3 face 1", "3-2 edge 4".
  std::vector<std::string> moves;
};

// Breadth-first search over 2-3 and 3-2 moves up to `depth`, levels ordered
// by isomorphism signature.
std::optional<AngledTriangulation> search_angled_triangulation(const IdealTriangulation& tri,
                                                               const std::optional<BoundaryPath>& meridian, int depth,
                                                               const AngleSearchOptions& opts);

}  // namespace bsurf
