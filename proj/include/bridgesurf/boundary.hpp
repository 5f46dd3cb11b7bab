#pragma once

#include "bridgesurf/rational.hpp"
#include "bridgesurf/triangulation.hpp"

#include <array>
#include <compare>
#include <vector>

namespace bsurf {

// Oriented triangle of a torus Delta-complex. Side k runs from corner k to
// corner k+1; across a side the neighbour's side runs the other way, so
// corner k meets the neighbour's corner k'+1.
struct TorusTriangle {
  std::array<int, 3> vertex{};
  std::array<int, 3> edge{};
  std::array<std::array<int, 2>, 3> nbr{};  // (triangle, side)
  std::array<int, 2> origin{-1, -1};         // (tet, vertex) when from a cusp
};

struct BoundaryTorus {
  std::vector<TorusTriangle> triangles;
  int vertices = 0;
  int edges = 0;

  std::array<int, 3> counts() const { return {vertices, edges, int(triangles.size())}; }
  // Throws Error(Invalid) on inconsistent gluings or chi != 0.
  void check() const;
};

// The curve leaves `triangle` through `side`.
struct Crossing {
  int triangle;
  int side;
  auto operator<=>(const Crossing&) const = default;
};
using CurveWord = std::vector<Crossing>;

// Boundary torus of an ideal triangulation; triangle index tet*4 + vertex.
BoundaryTorus cusp_torus(const IdealTriangulation& tri);
CurveWord cusp_word(const IdealTriangulation& tri, const BoundaryTorus& torus, const BoundaryPath& path);
// One vertex, three edges, two triangles.
BoundaryTorus base_torus();

bool is_valid_word(const BoundaryTorus& torus, const CurveWord& word);
// Removes backtracks cyclically until none remain.
CurveWord normalize_curve(const BoundaryTorus& torus, CurveWord word);

std::vector<int> contractible_edges(const BoundaryTorus& torus);

struct TorusMove {
  BoundaryTorus torus;
  CurveWord word;
};

// Throws Error(Precondition) when the edge is not contractible.
TorusMove contract_edge(const BoundaryTorus& torus, int edge, const CurveWord& word);

// Inverse contraction: splits the vertex at corner (triangle, corner) along
// the fan slots i < j (slot m is the side crossed after the m-th fan corner,
// walking forward). The new edge is the last one.
TorusMove split_vertex(const BoundaryTorus& torus, int triangle, int corner, int i, int j, const CurveWord& word);
// Number of corners around the vertex at (triangle, corner).
int fan_size(const BoundaryTorus& torus, int triangle, int corner);
// Edge crossed at fan slot m.
int fan_slot_edge(const BoundaryTorus& torus, int triangle, int corner, int m);

struct BoundStep {
  int edge;
  CurveWord word;
};

struct MeridionalBound {
  int input_length = 0;  // after normalization
  int n = 0;             // final word length
  int k = 0;             // contractions performed
  BigInt u;              // n * 4^k
  BigInt coarse;         // n * 4^(edges of the input)
  std::vector<BoundStep> trace;
  std::array<int, 3> terminal{};
  bool standard_terminal = false;  // (V, E, T) = (1, 3, 2)
};

// Greedy lowest-id contraction; throws Error(Invalid) for a word that is not
// a closed crossing sequence or normalizes away.
MeridionalBound meridional_bound(const BoundaryTorus& torus, const CurveWord& meridian);

// Vertex meridional coordinates in [0, 1) and, per edge (oriented from the
// vertex at the start of its first side), the signed displacement of the
// coordinate along the edge.
struct StandardPosition {
  std::vector<Rational> vertex_coord;
  std::vector<Rational> edge_delta;
};

// Maximum number of edge crossings of a non-singular meridian. Throws
// Error(Invalid) for an inconsistent or non-monotone position.
std::int64_t scan_standard_position(const BoundaryTorus& torus, const StandardPosition& pos);

}  // namespace bsurf
