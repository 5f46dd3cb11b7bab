#include "bridgesurf/tetmodel.hpp"

#include <cassert>

namespace bsurf::tet {
namespace {

constexpr int kPairs[6][2] = {{0, 1}, {0, 2}, {0, 3}, {1, 2}, {1, 3}, {2, 3}};

std::array<int, 3> others(int v) {
  std::array<int, 3> out{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != v) out[k++] = i;
  return out;
}

std::array<int, 2> others2(int v, int f) {
  std::array<int, 2> out{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != v && i != f) out[k++] = i;
  return out;
}

struct Tables {
  std::array<std::array<int, 6>, kFaces> sides{};
  std::array<std::array<int, 6>, kFaces> corners{};
  std::array<std::array<bool, 6>, kFaces> forward{};

  Tables() {
    for (int f = 0; f < 4; ++f) {
      auto [a, b, c] = others(f);
      sides[f] = {interior_edge(a, b), boundary_edge(b, f), interior_edge(b, c),
                  boundary_edge(c, f), interior_edge(c, a), boundary_edge(a, f)};
      corners[f] = {corner(a, b), corner(b, a), corner(b, c), corner(c, b), corner(c, a), corner(a, c)};
    }
    for (int v = 0; v < 4; ++v) {
      auto [x, y, z] = others(v);
      int face = triangle_face(v);
      sides[face] = {boundary_edge(v, z), boundary_edge(v, x), boundary_edge(v, y), -1, -1, -1};
      corners[face] = {corner(v, x), corner(v, y), corner(v, z), -1, -1, -1};
    }
    for (int face = 0; face < kFaces; ++face) {
      int n = side_count(face);
      for (int k = 0; k < n; ++k) {
        // side k runs from corner k to corner k+1
        [[maybe_unused]] int from = corners[face][k];
        [[maybe_unused]] int to = corners[face][(k + 1) % n];
        auto ends = edge_corners(sides[face][k]);
        assert((ends[0] == from && ends[1] == to) || (ends[0] == to && ends[1] == from));
        forward[face][k] = ends[0] == from;
      }
    }
  }
};

const Tables& tables() {
  static const Tables t;
  return t;
}

}  // namespace

int interior_edge(int a, int b) {
  if (a > b) std::swap(a, b);
  for (int e = 0; e < 6; ++e)
    if (kPairs[e][0] == a && kPairs[e][1] == b) return e;
  return -1;
}

std::array<int, 2> interior_edge_ends(int edge) { return {kPairs[edge][0], kPairs[edge][1]}; }

int angle_pair(int edge) { return edge < 3 ? edge : 5 - edge; }

int boundary_edge(int v, int f) { return kInteriorEdges + v * 3 + (f - (f > v ? 1 : 0)); }

std::array<int, 2> boundary_edge_slot(int edge) {
  int k = edge - kInteriorEdges;
  int v = k / 3;
  int f = k % 3;
  if (f >= v) ++f;
  return {v, f};
}

int corner(int v, int w) { return v * 3 + (w - (w > v ? 1 : 0)); }

std::array<int, 2> corner_slot(int c) {
  int v = c / 3;
  int w = c % 3;
  if (w >= v) ++w;
  return {v, w};
}

std::array<int, 2> edge_corners(int edge) {
  if (is_interior_edge(edge)) {
    auto [a, b] = interior_edge_ends(edge);
    return {corner(a, b), corner(b, a)};
  }
  auto [v, f] = boundary_edge_slot(edge);
  auto [x, y] = others2(v, f);
  return {corner(v, x), corner(v, y)};
}

std::array<int, 2> edge_faces(int edge) {
  if (is_interior_edge(edge)) {
    auto [a, b] = interior_edge_ends(edge);
    auto [c, d] = others2(a, b);
    return {c, d};
  }
  auto [v, f] = boundary_edge_slot(edge);
  return {f, triangle_face(v)};
}

int face_side(int face, int k) { return tables().sides[face][k]; }
int face_corner(int face, int k) { return tables().corners[face][k]; }

int side_of(int face, int edge) {
  for (int k = 0; k < side_count(face); ++k)
    if (tables().sides[face][k] == edge) return k;
  return -1;
}

bool side_forward(int face, int k) { return tables().forward[face][k]; }

}  // namespace bsurf::tet
