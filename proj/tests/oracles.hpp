#pragma once

// Independent brute-force references used by several test files.

#include "bridgesurf/discs.hpp"
#include "bridgesurf/tetmodel.hpp"

#include <algorithm>
#include <array>
#include <functional>
#include <set>
#include <vector>

namespace oracle {

// One step of a closed walk: face, entry side, exit side.
struct Step {
  int face, in, out;
};
using Walk = std::vector<Step>;

inline int pair_id(int n, int s, int t) {
  if (s > t) std::swap(s, t);
  int id = 0;
  for (int a = 0; a < n; ++a)
    for (int b = a + 1; b < n; ++b, ++id)
      if (a == s && b == t) return id;
  return -1;
}

inline bsurf::Curve to_curve(const Walk& w) {
  bsurf::Curve c;
  for (const auto& s : w) c.push_back({s.face, pair_id(bsurf::tet::side_count(s.face), s.in, s.out)});
  return c;
}

inline std::vector<std::pair<int, int>> canonical(const Walk& w) {
  std::vector<std::pair<int, int>> seq;
  for (const auto& a : to_curve(w)) seq.push_back({a.face, a.type});
  auto best = seq;
  const std::size_t n = seq.size();
  for (std::size_t r = 0; r < n; ++r) {
    std::vector<std::pair<int, int>> f(n), b(n);
    for (std::size_t i = 0; i < n; ++i) {
      f[i] = seq[(r + i) % n];
      b[i] = seq[(r + n - i) % n];
    }
    best = std::min({best, f, b});
  }
  return best;
}

inline int other_face(int edge, int face) {
  auto f = bsurf::tet::edge_faces(edge);
  return f[0] == face ? f[1] : f[0];
}

// Every closed walk with at most b_max boundary crossings and at most `cap`
// crossings per interior edge, one representative per rotation/reflection.
inline std::vector<Walk> closed_walks(int b_max, int cap) {
  using namespace bsurf;
  std::set<std::vector<std::pair<int, int>>> seen;
  std::vector<Walk> out;
  for (int e0 = 0; e0 < tet::kEdges; ++e0) {
    for (int f0 : tet::edge_faces(e0)) {
      std::array<int, 18> mult{};
      int bcount = !tet::is_interior_edge(e0);
      if (bcount > b_max) continue;
      mult[e0] = 1;
      Walk w;
      std::function<void(int, int)> go = [&](int face, int in) {
        for (int s = 0; s < tet::side_count(face); ++s) {
          if (s == in) continue;
          int e = tet::face_side(face, s);
          int next = other_face(e, face);
          w.push_back({face, in, s});
          if (e == e0 && next == f0 && seen.insert(canonical(w)).second) out.push_back(w);
          bool boundary = !tet::is_interior_edge(e);
          if (boundary ? bcount < b_max : mult[e] < cap) {
            ++mult[e];
            bcount += boundary;
            go(next, tet::side_of(next, e));
            --mult[e];
            bcount -= boundary;
          }
          w.pop_back();
        }
      };
      go(f0, tet::side_of(f0, e0));
    }
  }
  return out;
}

// Backtracking over crossing orders on every edge; a face is planar when no
// two of its chords interleave.
inline bool embeddable(const Walk& w) {
  using namespace bsurf;
  const int n = int(w.size());
  std::vector<int> edge(n);  // edge crossed after step i
  for (int i = 0; i < n; ++i) edge[i] = tet::face_side(w[i].face, w[i].out);
  std::vector<std::vector<int>> on_edge(tet::kEdges);
  for (int i = 0; i < n; ++i) on_edge[edge[i]].push_back(i);
  std::vector<int> pos(n);
  std::vector<int> edges_used;
  for (int e = 0; e < tet::kEdges; ++e)
    if (!on_edge[e].empty()) edges_used.push_back(e);

  auto coord = [&](int face, int side, int crossing) {
    int e = tet::face_side(face, side);
    int m = int(on_edge[e].size());
    int p = tet::side_forward(face, side) ? pos[crossing] : m - 1 - pos[crossing];
    return side * 1000 + p;
  };
  auto planar = [&] {
    for (int face = 0; face < tet::kFaces; ++face) {
      std::vector<std::array<int, 2>> chords;
      for (int i = 0; i < n; ++i) {
        if (w[i].face != face) continue;
        int a = coord(face, w[i].in, (i + n - 1) % n);
        int b = coord(face, w[i].out, i);
        chords.push_back({std::min(a, b), std::max(a, b)});
      }
      for (std::size_t x = 0; x < chords.size(); ++x)
        for (std::size_t y = x + 1; y < chords.size(); ++y) {
          auto [a, b] = chords[x];
          auto [c, d] = chords[y];
          bool c_in = a < c && c < b, d_in = a < d && d < b;
          if (c_in != d_in) return false;
        }
    }
    return true;
  };
  std::function<bool(std::size_t)> assign = [&](std::size_t k) -> bool {
    if (k == edges_used.size()) return planar();
    auto idx = on_edge[edges_used[k]];
    std::vector<int> perm(idx.size());
    for (std::size_t i = 0; i < perm.size(); ++i) perm[i] = int(i);
    do {
      for (std::size_t i = 0; i < idx.size(); ++i) pos[idx[i]] = perm[i];
      if (assign(k + 1)) return true;
    } while (std::next_permutation(perm.begin(), perm.end()));
    return false;
  };
  return assign(0);
}

}  // namespace oracle
