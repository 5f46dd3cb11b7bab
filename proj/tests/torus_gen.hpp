#pragma once

// Random tori built by vertex splits of the three-edge base torus.

#include "bridgesurf/boundary.hpp"

#include <array>
#include <numeric>
#include <random>
#include <utility>
#include <vector>

namespace torus_gen {

// Closed words on the base torus (triangle 0 below the diagonal, 1 above).
inline const std::vector<bsurf::CurveWord>& base_words() {
  static const std::vector<bsurf::CurveWord> w = {
      {{0, 1}, {1, 0}},
      {{0, 2}, {1, 1}},
      {{0, 1}, {1, 1}},
      {{0, 1}, {1, 0}, {0, 1}, {1, 1}},
  };
  return w;
}

// k random vertex splits of the base torus.
inline bsurf::TorusMove random_split(std::mt19937_64& rng, int k, const bsurf::CurveWord& word) {
  using namespace bsurf;
  TorusMove cur{base_torus(), word};
  for (int step = 0; step < k;) {
    std::uniform_int_distribution<int> tri(0, int(cur.torus.triangles.size()) - 1), corner(0, 2);
    int t = tri(rng), c = corner(rng);
    int d = fan_size(cur.torus, t, c);
    std::uniform_int_distribution<int> slot(0, d - 1);
    int i = slot(rng), j = slot(rng);
    if (i > j) std::swap(i, j);
    if (i == j || fan_slot_edge(cur.torus, t, c, i) == fan_slot_edge(cur.torus, t, c, j)) continue;
    cur = split_vertex(cur.torus, t, c, i, j, cur.word);
    ++step;
  }
  return cur;
}

// Terminal complex of a recorded contraction sequence.
inline bsurf::BoundaryTorus replay(bsurf::BoundaryTorus t, bsurf::CurveWord w, const bsurf::MeridionalBound& mb) {
  for (const auto& step : mb.trace) {
    auto mv = bsurf::contract_edge(t, step.edge, w);
    t = mv.torus;
    w = mv.word;
  }
  return t;
}

// Divisibility of the homology class on a one-vertex torus: every edge is a
// loop, so signed crossing counts are intersection numbers. -1 otherwise.
inline std::int64_t class_gcd(const bsurf::BoundaryTorus& t, const bsurf::CurveWord& w) {
  if (t.vertices != 1) return -1;
  std::vector<std::array<int, 2>> ref(t.edges, {-1, -1});
  for (int i = 0; i < int(t.triangles.size()); ++i)
    for (int k = 0; k < 3; ++k)
      if (ref[t.triangles[i].edge[k]][0] < 0) ref[t.triangles[i].edge[k]] = {i, k};
  std::vector<std::int64_t> z(t.edges, 0);
  for (const auto& c : w) {
    int e = t.triangles[c.triangle].edge[c.side];
    z[e] += ref[e] == std::array<int, 2>{c.triangle, c.side} ? 1 : -1;
  }
  std::int64_t g = 0;
  for (auto x : z) g = std::gcd(g, x < 0 ? -x : x);
  return g;
}

}  // namespace torus_gen
