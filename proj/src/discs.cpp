#include "bridgesurf/discs.hpp"

#include "bridgesurf/error.hpp"
#include "bridgesurf/tetmodel.hpp"

#include <algorithm>
#include <atomic>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <thread>

namespace bsurf {

namespace {

std::vector<ArcType> build_catalogue(int sides, bool returning) {
  std::vector<ArcType> out;
  for (int a = 0; a < sides; ++a)
    for (int b = a + 1; b < sides; ++b) out.push_back({int(out.size()), a, b, 0});
  if (returning)
    for (int s = 1; s < sides; s += 2)
      for (int k = 1; k <= sides - 2; ++k) out.push_back({int(out.size()), s, s, k});
  return out;
}

bool strictly_between(int a, int x, int b) { return a < x && x < b; }

}  // namespace

const std::vector<ArcType>& arc_types(FaceKind kind) {
  static const std::vector<ArcType> hex = build_catalogue(6, true);
  static const std::vector<ArcType> tri = build_catalogue(3, false);
  return kind == FaceKind::Hexagon ? hex : tri;
}

int arc_type_count(int face) { return tet::is_hexagon(face) ? kHexArcTypes : kTriArcTypes; }

const ArcType& arc_type(int face, int id) {
  return arc_types(tet::is_hexagon(face) ? FaceKind::Hexagon : FaceKind::Triangle).at(id);
}

int arc_type_id(int face, int s, int t) {
  const int n = tet::side_count(face);
  if (s == t || s < 0 || t < 0 || s >= n || t >= n) fail(ErrorKind::Argument, "arc needs two distinct sides");
  if (s > t) std::swap(s, t);
  // Position of (s,t) in the lexicographic list of pairs.
  return s * n - s * (s + 1) / 2 + (t - s - 1);
}

bool arcs_cross(int face, int a, int b) {
  const ArcType& x = arc_type(face, a);
  const ArcType& y = arc_type(face, b);
  if (x.returning() || y.returning()) return false;
  if (x.side_a == y.side_a || x.side_a == y.side_b || x.side_b == y.side_a || x.side_b == y.side_b) return false;
  return strictly_between(x.side_a, y.side_a, x.side_b) != strictly_between(x.side_a, y.side_b, x.side_b);
}

int crossing_edge(const Curve& c, std::size_t i) {
  const Arc& a = c[i];
  const Arc& b = c[(i + 1) % c.size()];
  const ArcType& ta = arc_type(a.face, a.type);
  const ArcType& tb = arc_type(b.face, b.type);
  for (int ea : {tet::face_side(a.face, ta.side_a), tet::face_side(a.face, ta.side_b)})
    for (int eb : {tet::face_side(b.face, tb.side_a), tet::face_side(b.face, tb.side_b)})
      if (ea == eb && a.face != b.face) return ea;
  fail(ErrorKind::Argument, "arcs do not chain");
}

bool chains(const Curve& c) {
  if (c.size() < 2) return false;
  // Each arc must enter through one end and leave through the other.
  for (std::size_t i = 0; i < c.size(); ++i) {
    const ArcType& t = arc_type(c[i].face, c[i].type);
    if (t.returning()) return false;
    int in, out;
    try {
      in = crossing_edge(c, (i + c.size() - 1) % c.size());
      out = crossing_edge(c, i);
    } catch (const Error&) {
      return false;
    }
    int ea = tet::face_side(c[i].face, t.side_a), eb = tet::face_side(c[i].face, t.side_b);
    if (!((in == ea && out == eb) || (in == eb && out == ea))) return false;
  }
  return true;
}

Curve canonical_curve(const Curve& c) {
  Curve best = c;
  const std::size_t n = c.size();
  Curve cand(n);
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t i = 0; i < n; ++i) cand[i] = dir == 0 ? c[(r + i) % n] : c[(r + n - i) % n];
      if (cand < best) best = cand;
    }
  }
  return best;
}

FaceCounts empty_face_counts() {
  FaceCounts out;
  for (int f = 0; f < 8; ++f) out[f].assign(arc_type_count(f), 0);
  return out;
}

void add_counts(FaceCounts& into, const Curve& c, int times) {
  for (const Arc& a : c) into[a.face][a.type] += times;
}

// ---------------------------------------------------------------------------
// Arrangements

std::optional<TetArrangement> arrange(const FaceCounts& counts) {
  struct Chord {
    int face, type;
    std::array<std::array<int, 2>, 2> ends;  // (edge, pos) at side_a, side_b
  };
  std::vector<Chord> chords;
  TetArrangement out;
  std::array<int, 18> seen_from{};
  seen_from.fill(-1);
  // (edge, pos, which face of the edge) -> (chord, end)
  std::map<std::array<int, 3>, std::array<int, 2>> at;

  for (int face = 0; face < tet::kFaces; ++face) {
    const auto& cnt = counts[face];
    const int n = tet::side_count(face);
    const int types = arc_type_count(face);
    for (int a = 0; a < types; ++a) {
      if (cnt[a] == 0) continue;
      if (arc_type(face, a).returning()) return std::nullopt;
      for (int b = a + 1; b < types; ++b)
        if (cnt[b] > 0 && arcs_cross(face, a, b)) return std::nullopt;
    }
    const int first_chord = int(chords.size());
    std::vector<int> chord_of_type(types, -1);
    for (int a = 0; a < types; ++a) {
      if (cnt[a] == 0) continue;
      chord_of_type[a] = int(chords.size());
      for (int j = 0; j < cnt[a]; ++j) chords.push_back({face, a, {}});
    }
    for (int s = 0; s < n; ++s) {
      // Types touching side s, farthest partner (in traversal order) first.
      std::vector<std::pair<int, int>> touching;  // (offset, type)
      for (int a = 0; a < types; ++a) {
        if (cnt[a] == 0) continue;
        const ArcType& t = arc_type(face, a);
        if (t.side_a != s && t.side_b != s) continue;
        int other = t.side_a == s ? t.side_b : t.side_a;
        touching.push_back({(other - s + n) % n, a});
      }
      std::sort(touching.begin(), touching.end(), std::greater<>());
      int m = 0;
      for (auto& [d, a] : touching) m += cnt[a];
      const int edge = tet::face_side(face, s);
      const int which = tet::edge_faces(edge)[0] == face ? 0 : 1;
      if (seen_from[edge] >= 0 && seen_from[edge] != m) return std::nullopt;
      seen_from[edge] = m;
      out.edge_points[edge] = m;
      const bool forward = tet::side_forward(face, s);
      int idx = 0;
      for (auto& [d, a] : touching) {
        const ArcType& t = arc_type(face, a);
        const int end = t.side_a == s ? 0 : 1;
        for (int j = 0; j < cnt[a]; ++j, ++idx) {
          // Parallel copies nest: copy j at side_a meets copy cnt-1-j at side_b.
          int copy = end == 0 ? j : cnt[a] - 1 - j;
          int pos = forward ? idx : m - 1 - idx;
          int chord = chord_of_type[a] + copy;
          chords[chord].ends[end] = {edge, pos};
          at[{edge, pos, which}] = {chord, end};
        }
      }
    }
    (void)first_chord;
  }
  // Both faces of every edge must see the same number of points.
  for (int e = 0; e < tet::kEdges; ++e) {
    auto faces = tet::edge_faces(e);
    int m0 = 0, m1 = 0;
    for (int w = 0; w < 2; ++w) {
      int face = faces[w];
      int s = tet::side_of(face, e);
      int m = 0;
      for (int a = 0; a < arc_type_count(face); ++a) {
        const ArcType& t = arc_type(face, a);
        if (!t.returning() && (t.side_a == s || t.side_b == s)) m += counts[face][a];
      }
      (w == 0 ? m0 : m1) = m;
    }
    if (m0 != m1) return std::nullopt;
  }

  std::vector<bool> used(chords.size(), false);
  for (std::size_t start = 0; start < chords.size(); ++start) {
    if (used[start]) continue;
    TracedCurve curve;
    int chord = int(start);
    int enter = 0;
    while (!used[chord]) {
      used[chord] = true;
      const Chord& c = chords[chord];
      auto exit = c.ends[1 - enter];
      curve.arcs.push_back({c.face, c.type});
      curve.exits.push_back(exit);
      auto faces = tet::edge_faces(exit[0]);
      int which = faces[0] == c.face ? 1 : 0;
      auto next = at.at({exit[0], exit[1], which});
      chord = next[0];
      enter = next[1];
    }
    if (chord != int(start)) fail(ErrorKind::Invalid, "arrangement tracing did not close");
    out.curves.push_back(std::move(curve));
  }
  return out;
}

namespace {

// Rotate/reflect a traced curve to its canonical arc order, carrying exits.
TracedCurve canonical_traced(const TracedCurve& t) {
  const std::size_t n = t.arcs.size();
  TracedCurve best = t;
  TracedCurve cand{Curve(n), std::vector<std::array<int, 2>>(n)};
  for (int dir = 0; dir < 2; ++dir) {
    for (std::size_t r = 0; r < n; ++r) {
      for (std::size_t i = 0; i < n; ++i) {
        if (dir == 0) {
          cand.arcs[i] = t.arcs[(r + i) % n];
          cand.exits[i] = t.exits[(r + i) % n];
        } else {
          std::size_t j = (r + n - i) % n;
          cand.arcs[i] = t.arcs[j];
          cand.exits[i] = t.exits[(j + n - 1) % n];
        }
      }
      if (cand.arcs < best.arcs) best = cand;
    }
  }
  return best;
}

}  // namespace

std::optional<TracedCurve> realize(const Curve& c) {
  if (!chains(c)) fail(ErrorKind::Argument, "arc sequence does not chain");
  FaceCounts counts = empty_face_counts();
  add_counts(counts, c);
  auto arr = arrange(counts);
  if (!arr || arr->curves.size() != 1) return std::nullopt;
  TracedCurve traced = canonical_traced(arr->curves[0]);
  if (traced.arcs != canonical_curve(c)) return std::nullopt;
  return traced;
}

bool is_embeddable(const Curve& c) { return realize(c).has_value(); }

// ---------------------------------------------------------------------------
// Compressions and classification

std::vector<Compression> edge_compression_sides(const Curve& c) {
  auto real = realize(c);
  if (!real) fail(ErrorKind::Precondition, "curve has no embedded realization");
  const TracedCurve& t = *real;
  std::array<int, 18> mult{};
  for (const auto& x : t.exits) ++mult[x[0]];

  // Two-colour the corners by crossing parity.
  std::array<int, 12> region;
  region.fill(-1);
  region[0] = 0;
  std::deque<int> queue{0};
  while (!queue.empty()) {
    int p = queue.front();
    queue.pop_front();
    for (int e = 0; e < tet::kEdges; ++e) {
      auto ends = tet::edge_corners(e);
      int q = ends[0] == p ? ends[1] : ends[1] == p ? ends[0] : -1;
      if (q < 0 || region[q] >= 0) continue;
      region[q] = region[p] ^ (mult[e] & 1);
      queue.push_back(q);
    }
  }
  std::array<bool, 8> touched{};
  for (const Arc& a : t.arcs) touched[a.face] = true;
  int plus;
  if (!touched[tet::triangle_face(0)]) {
    plus = region[tet::face_corner(tet::triangle_face(0), 0)];
  } else {
    int face = 0;
    while (face < tet::kFaces && touched[face]) ++face;
    plus = face < tet::kFaces ? region[tet::face_corner(face, 0)] : region[0];
  }

  std::vector<Compression> out;
  for (int e = 0; e < tet::kInteriorEdges; ++e) {
    if (mult[e] < 2) continue;
    std::vector<int> by_pos(mult[e], -1);
    for (std::size_t i = 0; i < t.exits.size(); ++i)
      if (t.exits[i][0] == e) by_pos[t.exits[i][1]] = int(i);
    int r0 = region[tet::edge_corners(e)[0]];
    for (int k = 0; k + 1 < mult[e]; ++k) {
      int r = r0 ^ ((k + 1) & 1);
      out.push_back({e, k, r == plus ? Side::Plus : Side::Minus, by_pos[k], by_pos[k + 1]});
    }
  }
  return out;
}

Classification classify_disc(const Curve& c) {
  auto comps = edge_compression_sides(c);
  Classification out;
  if (comps.empty()) return out;
  bool plus = false, minus = false;
  for (const auto& x : comps) (x.side == Side::Plus ? plus : minus) = true;
  if (plus != minus) {
    out.kind = DiscClass::NormalToOneSide;
    out.side = plus ? Side::Plus : Side::Minus;
    return out;
  }
  std::array<int, 18> mult{};
  for (std::size_t i = 0; i < c.size(); ++i) ++mult[crossing_edge(c, i)];
  int top = *std::max_element(mult.begin(), mult.begin() + tet::kInteriorEdges);
  out.kind = DiscClass::Rejected;
  if (top > 2) {
    out.reason = "compressions on both sides and an interior edge crossed " + std::to_string(top) + " times";
    return out;
  }
  for (const auto& x : comps) {
    for (const auto& y : comps) {
      if (x.side != Side::Plus || y.side != Side::Minus) continue;
      int a = std::min(x.first, x.second), b = std::max(x.first, x.second);
      bool shared = y.first == a || y.first == b || y.second == a || y.second == b;
      bool interleave = strictly_between(a, y.first, b) != strictly_between(a, y.second, b);
      if (!shared && !interleave) {
        out.reason = "compressions on opposite sides can be disjoint (edges " + std::to_string(x.edge) + " and " +
                     std::to_string(y.edge) + ")";
        return out;
      }
    }
  }
  out.kind = DiscClass::AlmostNormal;
  return out;
}

int DiscType::boundary_degree() const {
  int s = 0;
  for (int m : boundary_mult) s += m;
  return s;
}

int DiscType::interior_degree() const {
  int s = 0;
  for (int m : interior_mult) s += m;
  return s;
}

int DiscType::max_interior_mult() const { return *std::max_element(interior_mult.begin(), interior_mult.end()); }

int DiscType::hexagon_arcs() const {
  int s = 0;
  for (const Arc& a : curve) s += tet::is_hexagon(a.face);
  return s;
}

int DiscType::triangle_arcs() const { return int(curve.size()) - hexagon_arcs(); }

DiscType make_disc(const Curve& c) {
  DiscType d;
  d.curve = canonical_curve(c);
  if (!is_embeddable(d.curve)) fail(ErrorKind::Argument, "curve is not embeddable");
  for (std::size_t i = 0; i < d.curve.size(); ++i) {
    int e = crossing_edge(d.curve, i);
    if (tet::is_interior_edge(e)) ++d.interior_mult[e];
    else ++d.boundary_mult[e - tet::kInteriorEdges];
  }
  d.cls = classify_disc(d.curve);
  d.counts = empty_face_counts();
  add_counts(d.counts, d.curve);
  return d;
}

bool compatible(const DiscType& a, const DiscType& b) {
  if (a.curve == b.curve) return true;
  for (int f = 0; f < tet::kFaces; ++f)
    for (int x = 0; x < arc_type_count(f); ++x) {
      if (!a.counts[f][x]) continue;
      for (int y = 0; y < arc_type_count(f); ++y)
        if (b.counts[f][y] && arcs_cross(f, x, y)) return false;
    }
  FaceCounts sum = a.counts;
  add_counts(sum, b.curve);
  auto arr = arrange(sum);
  if (!arr || arr->curves.size() != 2) return false;
  std::set<Curve> got{canonical_curve(arr->curves[0].arcs), canonical_curve(arr->curves[1].arcs)};
  return got == std::set<Curve>{a.curve, b.curve};
}

// ---------------------------------------------------------------------------
// Enumeration
//
// A disjoint arrangement is forced by its arc counts, so every embedded curve
// is the unique curve of one count vector. Enumerate edge counts within the
// budgets, then the chord diagrams compatible with them face by face.

namespace {

using SideCounts = std::array<int, 6>;

void hex_diagrams_rec(int face, int s, SideCounts& rest, std::vector<int>& cnt, std::vector<std::vector<int>>& out) {
  if (s == 6) {
    out.push_back(cnt);
    return;
  }
  // Distribute the remaining endpoints on side s among arcs (s, t), t > s.
  std::function<void(int)> place = [&](int t) {
    if (rest[s] == 0) {
      hex_diagrams_rec(face, s + 1, rest, cnt, out);
      return;
    }
    if (t == 6) return;
    const int type = arc_type_id(face, s, t);
    int most = std::min(rest[s], rest[t]);
    for (int k = most; k >= 0; --k) {
      if (k > 0) {
        bool ok = true;
        for (int u = 0; u < 15 && ok; ++u)
          if (cnt[u] > 0 && arcs_cross(face, u, type)) ok = false;
        if (!ok) continue;
      }
      cnt[type] += k;
      rest[s] -= k;
      rest[t] -= k;
      place(t + 1);
      cnt[type] -= k;
      rest[s] += k;
      rest[t] += k;
    }
  };
  place(s + 1);
}

std::vector<std::vector<int>> hex_diagrams(int face, SideCounts sides) {
  std::vector<std::vector<int>> out;
  int total = 0;
  for (int c : sides) total += c;
  if (total % 2) return out;
  std::vector<int> cnt(kHexArcTypes, 0);
  hex_diagrams_rec(face, 0, sides, cnt, out);
  return out;
}

std::optional<std::vector<int>> tri_diagram(int face, int x0, int x1, int x2) {
  int s = x0 + x1 + x2;
  if (s % 2) return std::nullopt;
  int n01 = s / 2 - x2, n02 = s / 2 - x1, n12 = s / 2 - x0;
  if (n01 < 0 || n02 < 0 || n12 < 0) return std::nullopt;
  std::vector<int> cnt(kTriArcTypes, 0);
  cnt[arc_type_id(face, 0, 1)] = n01;
  cnt[arc_type_id(face, 0, 2)] = n02;
  cnt[arc_type_id(face, 1, 2)] = n12;
  return cnt;
}

// Boundary edge count vectors (index edge - 6) with total <= budget whose
// triangles admit normal arcs.
void boundary_vectors(int v, int budget, std::array<int, 12>& cur, std::vector<std::array<int, 12>>& out) {
  if (v == 4) {
    out.push_back(cur);
    return;
  }
  const int face = tet::triangle_face(v);
  std::array<int, 3> idx;
  for (int k = 0; k < 3; ++k) idx[k] = tet::face_side(face, k) - tet::kInteriorEdges;
  for (int a = 0; a <= budget; ++a)
    for (int b = 0; a + b <= budget; ++b)
      for (int c = 0; a + b + c <= budget; ++c) {
        if (!tri_diagram(face, a, b, c)) continue;
        cur[idx[0]] = a;
        cur[idx[1]] = b;
        cur[idx[2]] = c;
        boundary_vectors(v + 1, budget - a - b - c, cur, out);
      }
  for (int k = 0; k < 3; ++k) cur[idx[k]] = 0;
}

}  // namespace

DiscEnumeration enumerate_disc_types(int b_max, int interior_cap, int threads) {
  if (b_max < 0) fail(ErrorKind::Argument, "b_max must be non-negative");
  if (interior_cap < 1) fail(ErrorKind::Argument, "interior cap must be at least 1");
  threads = std::max(1, threads);
  const int probe = interior_cap + 1;

  std::vector<std::array<int, 12>> bvecs;
  std::array<int, 12> cur{};
  boundary_vectors(0, b_max, cur, bvecs);

  long interior_total = 1;
  for (int e = 0; e < tet::kInteriorEdges; ++e) interior_total *= probe + 1;

  // Work item = (boundary vector, interior vector index).
  const long items = long(bvecs.size()) * interior_total;
  std::vector<std::vector<DiscType>> found(threads);
  std::atomic<long> next{0};
  constexpr long kChunk = 256;

  auto worker = [&](int tid) {
    std::map<std::pair<int, SideCounts>, std::vector<std::vector<int>>> cache;
    for (long base = next.fetch_add(kChunk); base < items; base = next.fetch_add(kChunk)) {
      for (long item = base; item < std::min(items, base + kChunk); ++item) {
        const auto& bv = bvecs[item / interior_total];
        long code = item % interior_total;
        std::array<int, 18> m{};
        for (int e = 0; e < tet::kInteriorEdges; ++e) {
          m[e] = int(code % (probe + 1));
          code /= probe + 1;
        }
        for (int k = 0; k < 12; ++k) m[tet::kInteriorEdges + k] = bv[k];
        bool any = false;
        for (int x : m) any |= x > 0;
        if (!any) continue;

        FaceCounts counts;
        for (int v = 0; v < 4; ++v) {
          int face = tet::triangle_face(v);
          counts[face] = *tri_diagram(face, m[tet::face_side(face, 0)], m[tet::face_side(face, 1)], m[tet::face_side(face, 2)]);
        }
        std::array<const std::vector<std::vector<int>>*, 4> options{};
        bool feasible = true;
        for (int f = 0; f < 4 && feasible; ++f) {
          SideCounts sides;
          for (int k = 0; k < 6; ++k) sides[k] = m[tet::face_side(f, k)];
          auto key = std::make_pair(f, sides);
          auto it = cache.find(key);
          if (it == cache.end()) it = cache.emplace(key, hex_diagrams(f, sides)).first;
          options[f] = &it->second;
          feasible = !it->second.empty();
        }
        if (!feasible) continue;
        std::array<std::size_t, 4> pick{};
        for (;;) {
          for (int f = 0; f < 4; ++f) counts[f] = (*options[f])[pick[f]];
          auto arr = arrange(counts);
          if (arr && arr->curves.size() == 1) found[tid].push_back(make_disc(arr->curves[0].arcs));
          int f = 3;
          while (f >= 0 && ++pick[f] == options[f]->size()) pick[f--] = 0;
          if (f < 0) break;
        }
      }
    }
  };
  if (threads == 1) {
    worker(0);
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker, i);
    for (auto& th : pool) th.join();
  }

  DiscEnumeration out;
  for (auto& part : found) {
    for (auto& d : part) {
      if (d.max_interior_mult() > interior_cap) {
        out.cap_pruned = true;
        continue;
      }
      out.discs.push_back(std::move(d));
    }
  }
  std::sort(out.discs.begin(), out.discs.end(), [](const DiscType& a, const DiscType& b) { return a.curve < b.curve; });
  return out;
}

Rational disc_area(const AngleStructure& a, int tet, const DiscType& d) {
  return disc_area(a, tet, d.interior_mult, d.boundary_degree());
}

std::string to_string(DiscClass k) {
  switch (k) {
    case DiscClass::Normal: return "Normal";
    case DiscClass::NormalToOneSide: return "NormalToOneSide";
    case DiscClass::AlmostNormal: return "AlmostNormal";
    case DiscClass::Rejected: return "Rejected";
  }
  return "?";
}

std::string to_string(Side s) { return s == Side::Plus ? "plus" : "minus"; }

}  // namespace bsurf
