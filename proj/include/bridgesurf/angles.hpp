#pragma once

#include "bridgesurf/rational.hpp"
#include "bridgesurf/triangulation.hpp"

#include <array>
#include <optional>
#include <vector>

namespace bsurf {

// Dihedral angles in units of pi, indexed per tetrahedron by opposite-edge
// pair (tet::angle_pair).
struct AngleStructure {
  std::vector<std::array<Rational, 3>> angles;
  std::vector<bool> flat;
  // True when some tetrahedron is flat: the layered-polygon condition on the
  // flat part is not checked.
  bool condition4_unverified() const;
};

struct AngleSearchOptions {
  bool allow_flat = false;
  // Largest number of flat tetrahedra tried; negative means tet count.
  int flat_budget = -1;
};

std::optional<AngleStructure> find_angle_structure(const IdealTriangulation& tri, const AngleSearchOptions& opts = {});
bool verify_angle_structure(const IdealTriangulation& tri, const AngleStructure& a);

// Angle at interior edge `edge` (tet:: id) of tetrahedron `tet`.
const Rational& edge_angle(const AngleStructure& a, int tet, int edge);

// Combinatorial area (units of pi) of a disc in `tet` meeting the interior
// edges with the given multiplicities and `boundary_crossings` boundary edges.
Rational disc_area(const AngleStructure& a, int tet, const std::array<int, 6>& interior_mult, int boundary_crossings);

}  // namespace bsurf
