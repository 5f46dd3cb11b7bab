#pragma once

#include "bridgesurf/perm.hpp"

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace bsurf {

// Face `face` of a tetrahedron is glued to face perm[face] of `tet`; perm
// carries the vertex labels of the source tetrahedron to those of `tet`.
struct Gluing {
  int tet = -1;
  Perm4 perm;
};

// (tet, edge slot) member of an interior edge class; the slot uses the
// tet:: interior edge ids.
struct EdgeSlot {
  int tet;
  int edge;
};

// A crossing of a curve on the boundary torus: the curve leaves truncation
// triangle (tet, vertex) through its side lying in hexagon `face`.
struct BoundaryCrossing {
  int tet;
  int vertex;
  int face;
  auto operator<=>(const BoundaryCrossing&) const = default;
};

using BoundaryPath = std::vector<BoundaryCrossing>;

class IdealTriangulation {
 public:
  // Throws Error(Parse) when the table is not a fixed-point-free involution
  // on face slots.
  explicit IdealTriangulation(std::vector<std::array<Gluing, 4>> gluings);

  int size() const { return int(gluings_.size()); }
  const Gluing& glue(int tet, int face) const { return gluings_[tet][face]; }
  const std::vector<std::array<Gluing, 4>>& gluings() const { return gluings_; }

  int edge_class_count() const { return int(edge_members_.size()); }
  int edge_class(int tet, int edge) const { return edge_class_[tet][edge]; }
  const std::vector<EdgeSlot>& edge_members(int cls) const { return edge_members_[cls]; }
  int edge_valence(int cls) const { return int(edge_members_[cls].size()); }
  // True when some edge is identified with itself in reverse.
  bool has_reversed_edge() const { return reversed_edge_; }

  // Boundary edge classes "B<k>", numbered in lexicographic order of the
  // first (tet, vertex, face) slot met.
  int boundary_edge_count() const { return int(boundary_members_.size()); }
  int boundary_edge_class(int tet, int vertex, int face) const;
  const std::array<BoundaryCrossing, 2>& boundary_edge_slots(int cls) const { return boundary_members_[cls]; }

  // Hexagon face classes, one per glued pair, numbered by lowest (tet, face).
  int face_class_count() const { return int(face_members_.size()); }
  int face_class(int tet, int face) const { return face_class_[tet][face]; }
  const std::array<std::array<int, 2>, 2>& face_members(int cls) const { return face_members_[cls]; }

  // Triangle entered by a boundary crossing.
  std::array<int, 2> crossing_target(const BoundaryCrossing& c) const;
  // The same boundary edge crossed in the opposite direction.
  BoundaryCrossing reverse(const BoundaryCrossing& c) const;

  // Canonical isomorphism signature: lexicographic minimum over all
  // relabelings. Equal signatures iff the triangulations are combinatorially
  // isomorphic (for connected inputs).
  std::string isosig() const;

  bool connected() const;

 private:
  std::vector<std::array<Gluing, 4>> gluings_;
  std::vector<std::array<int, 6>> edge_class_;
  std::vector<std::vector<EdgeSlot>> edge_members_;
  bool reversed_edge_ = false;
  std::vector<std::array<int, 12>> boundary_class_;
  std::vector<std::array<BoundaryCrossing, 2>> boundary_members_;
  std::vector<std::array<int, 4>> face_class_;
  std::vector<std::array<std::array<int, 2>, 2>> face_members_;
};

struct ValidationReport {
  bool ok = false;
  int edge_class_count = 0;
  int boundary_genus = 0;
  int boundary_component_count = 0;
  bool boundary_orientable = false;
  int boundary_triangles = 0;
  int boundary_edges = 0;
  int boundary_vertices = 0;
  std::vector<std::string> diagnostics;
};

// Consistent orientation flags for the truncation triangles (index
// tet*4+vertex), or nullopt when the boundary is non-orientable.
std::optional<std::vector<bool>> orient_boundary(const IdealTriangulation& tri);

ValidationReport validate(const IdealTriangulation& tri);

// Parsed contents of a triangulation file.
struct TriangulationFile {
  IdealTriangulation tri;
  std::optional<BoundaryPath> meridian;
};

TriangulationFile parse_triangulation(const std::string& text);
std::string write_triangulation(const IdealTriangulation& tri, const std::optional<BoundaryPath>& meridian);

// Resolves a cyclic list of boundary-edge class ids into a closed path.
BoundaryPath resolve_boundary_word(const IdealTriangulation& tri, const std::vector<int>& classes);
std::vector<int> boundary_word(const IdealTriangulation& tri, const BoundaryPath& path);
// Removes immediate backtracks (cyclically) until none remain.
BoundaryPath normalize_path(const IdealTriangulation& tri, BoundaryPath path);
bool is_closed_path(const IdealTriangulation& tri, const BoundaryPath& path);

// Result of a Pachner move, with enough bookkeeping to carry boundary curves
// across it.
struct PachnerMove {
  IdealTriangulation result;
  // For each old tetrahedron, its index in the result or -1 if removed.
  std::vector<int> kept;
  // old (tet*4+face) -> (new tet, new face, map new vertex -> old vertex);
  // tet -1 when the face disappears.
  struct SlotImage {
    int tet = -1;
    int face = -1;
    Perm4 to_old;
  };
  std::vector<SlotImage> slots;
  // Faces of new tetrahedra glued to each other.
  std::vector<std::array<int, 2>> internal_faces;
};

// 2-3 move across a hexagon face class joining two distinct tetrahedra.
PachnerMove pachner_23(const IdealTriangulation& tri, int face_class);
// 3-2 move on an edge class of valence three with three distinct tetrahedra.
PachnerMove pachner_32(const IdealTriangulation& tri, int edge_class);

bool can_pachner_23(const IdealTriangulation& tri, int face_class);
bool can_pachner_32(const IdealTriangulation& tri, int edge_class);

// Carries a closed boundary path across a move; the result is normalized.
BoundaryPath transport(const IdealTriangulation& before, const PachnerMove& move, const BoundaryPath& path);

}  // namespace bsurf
