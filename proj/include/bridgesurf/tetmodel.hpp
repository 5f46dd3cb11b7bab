#pragma once

#include <array>

// Combinatorics of a single truncated (compactified ideal) tetrahedron.
//
// Vertices of the ideal tetrahedron are 0..3. Truncation leaves
//   - 4 hexagonal faces (face f lies opposite vertex f), ids 0..3,
//   - 4 truncation triangles (triangle v cuts off vertex v), ids 4..7,
//   - 6 interior edges {a,b}, ids 0..5,
//   - 12 boundary edges (v,f) where triangle v meets hexagon f, ids 6..17,
//   - 12 corners (v,w): the end of interior edge {v,w} at triangle v.
namespace bsurf::tet {

inline constexpr int kHexagons = 4;
inline constexpr int kFaces = 8;
inline constexpr int kInteriorEdges = 6;
inline constexpr int kEdges = 18;
inline constexpr int kCorners = 12;

inline constexpr int triangle_face(int v) { return 4 + v; }
inline constexpr bool is_hexagon(int face) { return face < 4; }
inline constexpr bool is_interior_edge(int edge) { return edge < kInteriorEdges; }

// Interior edge id for the unordered pair {a,b}; order 01,02,03,12,13,23.
int interior_edge(int a, int b);
std::array<int, 2> interior_edge_ends(int edge);
// Opposite-pair index carrying the dihedral angle: {01,23}->0, {02,13}->1, {03,12}->2.
int angle_pair(int edge);

int boundary_edge(int v, int f);
std::array<int, 2> boundary_edge_slot(int edge);  // (v, f)

int corner(int v, int w);
std::array<int, 2> corner_slot(int c);

// Corners at the two ends of an edge; positions along an edge run from
// ends[0] to ends[1].
std::array<int, 2> edge_corners(int edge);
std::array<int, 2> edge_faces(int edge);

// Number of sides of a face (6 or 3).
inline constexpr int side_count(int face) { return is_hexagon(face) ? 6 : 3; }
// Edge id of side k of a face, sides listed in cyclic order around the face.
int face_side(int face, int k);
// Corner between side k-1 and side k.
int face_corner(int face, int k);
// Side index of an edge inside a face, or -1.
int side_of(int face, int edge);
// True when the face boundary traverses side k from edge_corners[0] to [1].
bool side_forward(int face, int k);

}  // namespace bsurf::tet
