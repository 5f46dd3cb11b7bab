#include "bridgesurf/boundary.hpp"

#include "bridgesurf/error.hpp"
#include "bridgesurf/tetmodel.hpp"

#include <algorithm>
#include <map>
#include <numeric>
#include <optional>

namespace bsurf {
namespace {

int next(int k) { return (k + 1) % 3; }
int prev(int k) { return (k + 2) % 3; }

const std::array<int, 2>& partner(const BoundaryTorus& t, Crossing c) { return t.triangles[c.triangle].nbr[c.side]; }

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Corner labels of triangle v in its oriented order.
std::array<int, 3> oriented_labels(int v, bool flip) {
  const int f = tet::triangle_face(v);
  std::array<int, 3> l{};
  for (int k = 0; k < 3; ++k) l[k] = tet::corner_slot(tet::face_corner(f, k))[1];
  if (flip) std::swap(l[1], l[2]);
  return l;
}

int missing_label(int v, int a, int b) {
  for (int f = 0; f < 4; ++f)
    if (f != v && f != a && f != b) return f;
  return -1;
}

// Rewalks a corner fan. Forward leaves corner c through side c, backward
// through side c-1.
struct FanStep {
  Crossing exit;
  int triangle;
  int corner;
};

FanStep fan_step(const BoundaryTorus& t, int tri, int c, bool forward) {
  if (forward) {
    auto [nt, ns] = t.triangles[tri].nbr[c];
    return {{tri, c}, nt, next(ns)};
  }
  auto [nt, ns] = t.triangles[tri].nbr[prev(c)];
  return {{tri, prev(c)}, nt, ns};
}

// Compact renumbering of the surviving ids, order kept.
std::vector<int> compact(int size, const std::vector<bool>& alive) {
  std::vector<int> out(size, -1);
  int k = 0;
  for (int i = 0; i < size; ++i)
    if (alive[i]) out[i] = k++;
  return out;
}

// First side carrying an edge.
Crossing edge_side(const BoundaryTorus& t, int edge) {
  for (int i = 0; i < int(t.triangles.size()); ++i)
    for (int k = 0; k < 3; ++k)
      if (t.triangles[i].edge[k] == edge) return {i, k};
  fail(ErrorKind::Argument, "edge id out of range");
}

struct Collapsed {
  BoundaryTorus torus;
  std::vector<int> tmap;  // -1 for the two removed triangles
  bool cone = false;
};

// Contracts the edge on side e1: vertex b (the end of e1) joins a and two
// triangles disappear. Usually these are the two triangles on the edge and
// their outer sides pair up. When both sides of the edge lie in one folded
// triangle around a degree-one vertex, that cone vanishes together with its
// loop side, and the triangle across the loop closes up into an edge. A side
// glued into a removed triangle follows its twin there, possibly through the
// other removed triangle. nullopt when the result would not be a torus.
std::optional<Collapsed> collapse(const BoundaryTorus& torus, Crossing e1) {
  const auto& tr1 = torus.triangles[e1.triangle];
  int a = tr1.vertex[e1.side], b = tr1.vertex[next(e1.side)];
  if (a == b) return std::nullopt;
  const Crossing e2{partner(torus, e1)[0], partner(torus, e1)[1]};
  const int n = int(torus.triangles.size());
  const int edge = tr1.edge[e1.side];

  std::array<int, 2> dead{};
  std::map<Crossing, Crossing> twins;
  std::vector<std::array<int, 2>> unions;
  std::vector<int> removed{edge};
  auto pair_up = [&](int t, int k) {
    Crossing x{t, next(k)}, y{t, prev(k)};
    twins[x] = y;
    twins[y] = x;
    unions.push_back({torus.triangles[t].edge[x.side], torus.triangles[t].edge[y.side]});
  };
  const bool cone = e2.triangle == e1.triangle;
  if (!cone) {
    dead = {e1.triangle, e2.triangle};
    pair_up(e1.triangle, e1.side);
    pair_up(e2.triangle, e2.side);
  } else {
    // the shared corner of the two glued sides is the cone point
    const int c = e2.side == prev(e1.side) ? e1.side : e2.side;
    b = tr1.vertex[c];
    a = tr1.vertex[next(c)];
    const int g = 3 - e1.side - e2.side;
    auto [t2, k2] = tr1.nbr[g];
    if (t2 == e1.triangle) return std::nullopt;
    dead = {e1.triangle, t2};
    removed.push_back(tr1.edge[g]);
    pair_up(t2, k2);
  }
  Dsu edges(torus.edges);
  for (auto [x, y] : unions) {
    x = edges.find(x);
    y = edges.find(y);
    for (int r : removed)
      if (x == edges.find(r) || y == edges.find(r)) return std::nullopt;
    if (x == y) return std::nullopt;
    edges.unite(x, y);
  }
  std::vector<int> low(torus.edges, -1);
  for (int e = 0; e < torus.edges; ++e)
    if (low[edges.find(e)] < 0) low[edges.find(e)] = e;
  std::vector<bool> alive_t(n, true), alive_e(torus.edges, false), alive_v(torus.vertices, true);
  alive_t[dead[0]] = alive_t[dead[1]] = false;
  for (int e = 0; e < torus.edges; ++e) alive_e[low[edges.find(e)]] = true;
  for (int r : removed) alive_e[r] = false;
  alive_v[b] = false;
  auto tmap = compact(n, alive_t), emap = compact(torus.edges, alive_e), vmap = compact(torus.vertices, alive_v);

  BoundaryTorus res;
  res.vertices = torus.vertices - 1;
  res.edges = int(std::count(alive_e.begin(), alive_e.end(), true));
  res.triangles.resize(n - 2);
  for (int i = 0; i < n; ++i) {
    if (!alive_t[i]) continue;
    TorusTriangle t = torus.triangles[i];
    for (int k = 0; k < 3; ++k) {
      t.vertex[k] = vmap[t.vertex[k] == b ? a : t.vertex[k]];
      t.edge[k] = emap[low[edges.find(t.edge[k])]];
      Crossing via{t.nbr[k][0], t.nbr[k][1]};
      for (int hops = 0; !alive_t[via.triangle]; ++hops) {
        auto it = twins.find(via);
        if (it == twins.end() || hops > 4) return std::nullopt;
        via = Crossing{partner(torus, it->second)[0], partner(torus, it->second)[1]};
      }
      if (via.triangle == i && via.side == k) return std::nullopt;
      t.nbr[k] = {tmap[via.triangle], via.side};
    }
    res.triangles[tmap[i]] = t;
  }
  try {
    res.check();
  } catch (const Error&) {
    return std::nullopt;
  }
  if (res.edges != torus.edges - 3) return std::nullopt;
  return Collapsed{std::move(res), std::move(tmap), cone};
}

bool contractible(const BoundaryTorus& t, int edge) { return collapse(t, edge_side(t, edge)).has_value(); }

}  // namespace

void BoundaryTorus::check() const {
  const int n = int(triangles.size());
  for (int i = 0; i < n; ++i)
    for (int k = 0; k < 3; ++k) {
      const auto& tr = triangles[i];
      auto [o, ok] = tr.nbr[k];
      if (o < 0 || o >= n || ok < 0 || ok > 2) fail(ErrorKind::Invalid, "torus side glued out of range");
      const auto& other = triangles[o];
      if (other.nbr[ok] != std::array<int, 2>{i, k}) fail(ErrorKind::Invalid, "torus gluing is not an involution");
      if (o == i && ok == k) fail(ErrorKind::Invalid, "torus side glued to itself");
      if (tr.edge[k] != other.edge[ok]) fail(ErrorKind::Invalid, "glued sides carry different edges");
      if (tr.vertex[k] != other.vertex[next(ok)] || tr.vertex[next(k)] != other.vertex[ok])
        fail(ErrorKind::Invalid, "torus gluing does not respect orientation");
      if (tr.edge[k] < 0 || tr.edge[k] >= edges || tr.vertex[k] < 0 || tr.vertex[k] >= vertices)
        fail(ErrorKind::Invalid, "torus id out of range");
    }
  if (vertices - edges + n != 0 || 2 * edges != 3 * n) fail(ErrorKind::Invalid, "complex is not a torus");
}

BoundaryTorus cusp_torus(const IdealTriangulation& tri) {
  auto flip = orient_boundary(tri);
  if (!flip) fail(ErrorKind::Invalid, "boundary is not orientable");
  const int n = tri.size();
  BoundaryTorus out;
  out.triangles.resize(4 * n);
  Dsu corners(12 * n);
  for (int t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v) {
      auto l = oriented_labels(v, (*flip)[t * 4 + v]);
      auto& tr = out.triangles[t * 4 + v];
      tr.origin = {t, v};
      for (int k = 0; k < 3; ++k) {
        const int f = missing_label(v, l[k], l[next(k)]);
        tr.edge[k] = tri.boundary_edge_class(t, v, f);
        const Gluing& g = tri.glue(t, f);
        const int nv = g.perm[v];
        auto nl = oriented_labels(nv, (*flip)[g.tet * 4 + nv]);
        int ks = -1;
        for (int j = 0; j < 3; ++j)
          if (missing_label(nv, nl[j], nl[next(j)]) == g.perm[f]) ks = j;
        if (nl[next(ks)] != g.perm[l[k]]) fail(ErrorKind::Invalid, "boundary orientation is inconsistent");
        tr.nbr[k] = {g.tet * 4 + nv, ks};
        corners.unite(t * 12 + tet::corner(v, l[k]), g.tet * 12 + tet::corner(nv, nl[next(ks)]));
      }
    }
  std::map<int, int> id;
  for (int t = 0; t < n; ++t)
    for (int v = 0; v < 4; ++v) {
      auto l = oriented_labels(v, (*flip)[t * 4 + v]);
      for (int k = 0; k < 3; ++k) {
        int r = corners.find(t * 12 + tet::corner(v, l[k]));
        auto it = id.try_emplace(r, int(id.size())).first;
        out.triangles[t * 4 + v].vertex[k] = it->second;
      }
    }
  out.vertices = int(id.size());
  out.edges = tri.boundary_edge_count();
  out.check();
  return out;
}

CurveWord cusp_word(const IdealTriangulation& tri, const BoundaryTorus& torus, const BoundaryPath& path) {
  if (int(torus.triangles.size()) != 4 * tri.size()) fail(ErrorKind::Argument, "torus does not belong to the triangulation");
  CurveWord out;
  for (const auto& c : path) {
    if (c.tet < 0 || c.tet >= tri.size() || c.vertex < 0 || c.vertex > 3 || c.face < 0 || c.face > 3 || c.face == c.vertex)
      fail(ErrorKind::Argument, "boundary crossing out of range");
    const int e = tri.boundary_edge_class(c.tet, c.vertex, c.face);
    const auto& tr = torus.triangles[c.tet * 4 + c.vertex];
    int side = -1;
    for (int k = 0; k < 3; ++k) {
      // the two sides of one triangle never carry the same class unless folded
      if (tr.edge[k] != e) continue;
      auto [nt, ns] = tr.nbr[k];
      (void)ns;
      auto target = tri.crossing_target(c);
      if (nt == target[0] * 4 + target[1]) side = k;
    }
    if (side < 0) fail(ErrorKind::Invalid, "crossing does not match the torus");
    out.push_back({c.tet * 4 + c.vertex, side});
  }
  if (!is_valid_word(torus, out)) fail(ErrorKind::Invalid, "boundary path is not closed");
  return out;
}

BoundaryTorus base_torus() {
  // Unit square with its diagonal; A below it, B above, x bottom/top,
  // y right/left, z the diagonal.
  BoundaryTorus t;
  t.vertices = 1;
  t.edges = 3;
  TorusTriangle a, b;
  a.vertex = b.vertex = {0, 0, 0};
  a.edge = {0, 1, 2};
  b.edge = {2, 0, 1};
  a.nbr = {{{1, 1}, {1, 2}, {1, 0}}};
  b.nbr = {{{0, 2}, {0, 0}, {0, 1}}};
  t.triangles = {a, b};
  t.check();
  return t;
}

bool is_valid_word(const BoundaryTorus& torus, const CurveWord& word) {
  const int n = int(torus.triangles.size());
  for (const auto& c : word)
    if (c.triangle < 0 || c.triangle >= n || c.side < 0 || c.side > 2) return false;
  for (std::size_t i = 0; i < word.size(); ++i)
    if (partner(torus, word[i])[0] != word[(i + 1) % word.size()].triangle) return false;
  return true;
}

CurveWord normalize_curve(const BoundaryTorus& torus, CurveWord word) {
  if (!is_valid_word(torus, word)) fail(ErrorKind::Invalid, "curve word is not a closed crossing sequence");
  // stack pass, then fold the two ends together
  CurveWord st;
  for (const auto& c : word) {
    if (!st.empty()) {
      auto p = partner(torus, st.back());
      if (p[0] == c.triangle && p[1] == c.side) {
        st.pop_back();
        continue;
      }
    }
    st.push_back(c);
  }
  std::size_t lo = 0, hi = st.size();
  while (hi - lo >= 2) {
    auto p = partner(torus, st[hi - 1]);
    if (p[0] == st[lo].triangle && p[1] == st[lo].side) {
      ++lo;
      --hi;
    } else {
      break;
    }
  }
  return CurveWord(st.begin() + lo, st.begin() + hi);
}

std::vector<int> contractible_edges(const BoundaryTorus& torus) {
  std::vector<int> out;
  for (int e = 0; e < torus.edges; ++e)
    if (contractible(torus, e)) out.push_back(e);
  return out;
}

TorusMove contract_edge(const BoundaryTorus& torus, int edge, const CurveWord& input) {
  if (edge < 0 || edge >= torus.edges) fail(ErrorKind::Argument, "edge id out of range");
  if (!contractible(torus, edge)) fail(ErrorKind::Precondition, "edge is not contractible");
  const Crossing e1 = edge_side(torus, edge);
  const Crossing e2{partner(torus, e1)[0], partner(torus, e1)[1]};
  const int corners_total = 3 * int(torus.triangles.size());
  CurveWord word = normalize_curve(torus, input);
  auto col = collapse(torus, e1);
  if (col->cone) {
    // loops around the cone point are trivial
    std::erase_if(word, [&](const Crossing& c) { return c == e1 || c == e2; });
    word = normalize_curve(torus, std::move(word));
  }

  // Push every crossing of the edge around the corner it cuts off, the long
  // way, so the curve meets the two triangles only in arcs parallel to it.
  for (;;) {
    auto it = std::find_if(word.begin(), word.end(), [&](const Crossing& c) { return c == e1 || c == e2; });
    if (it == word.end()) break;
    const std::size_t n = word.size();
    std::rotate(word.begin(), word.begin() + ((it - word.begin()) + n - 1) % n, word.end());
    // word[0] enters the edge's triangle, word[1] leaves it through the edge
    const Crossing in = word[0], out = word[1];
    const int ke = out.side;
    const int st = partner(torus, in)[1];
    const auto [t2, k2] = partner(torus, out);
    int tri = in.triangle, c = 0, target = 0;
    bool forward = false;
    if (st == prev(ke)) {
      c = in.side;
      forward = false;
      target = next(k2);
    } else {
      c = next(in.side);
      forward = true;
      target = k2;
    }
    CurveWord path;
    for (int steps = 0;; ++steps) {
      if (steps > corners_total) fail(ErrorKind::Invalid, "corner fan does not close");
      FanStep s = fan_step(torus, tri, c, forward);
      path.push_back(s.exit);
      tri = s.triangle;
      c = s.corner;
      if (tri == t2 && c == target) break;
    }
    CurveWord next_word = path;
    next_word.insert(next_word.end(), word.begin() + 2, word.end());
    word = normalize_curve(torus, std::move(next_word));
  }

  const BoundaryTorus& res = col->torus;
  CurveWord out;
  for (const auto& c : word)
    if (col->tmap[c.triangle] >= 0) out.push_back({col->tmap[c.triangle], c.side});
  auto norm = normalize_curve(res, std::move(out));
  return {std::move(col->torus), std::move(norm)};
}

int fan_size(const BoundaryTorus& torus, int triangle, int corner) {
  if (triangle < 0 || triangle >= int(torus.triangles.size()) || corner < 0 || corner > 2)
    fail(ErrorKind::Argument, "corner out of range");
  int t = triangle, c = corner, size = 0;
  do {
    FanStep s = fan_step(torus, t, c, true);
    t = s.triangle;
    c = s.corner;
    ++size;
    if (size > 3 * int(torus.triangles.size())) fail(ErrorKind::Invalid, "corner fan does not close");
  } while (t != triangle || c != corner);
  return size;
}

namespace {

std::vector<std::array<int, 2>> fan(const BoundaryTorus& torus, int triangle, int corner) {
  std::vector<std::array<int, 2>> out;
  const int d = fan_size(torus, triangle, corner);
  int t = triangle, c = corner;
  for (int m = 0; m < d; ++m) {
    out.push_back({t, c});
    FanStep s = fan_step(torus, t, c, true);
    t = s.triangle;
    c = s.corner;
  }
  return out;
}

}  // namespace

int fan_slot_edge(const BoundaryTorus& torus, int triangle, int corner, int m) {
  auto f = fan(torus, triangle, corner);
  if (m < 0 || m >= int(f.size())) fail(ErrorKind::Argument, "fan slot out of range");
  return torus.triangles[f[m][0]].edge[f[m][1]];
}

TorusMove split_vertex(const BoundaryTorus& torus, int triangle, int corner, int i, int j, const CurveWord& word) {
  auto f = fan(torus, triangle, corner);
  const int d = int(f.size());
  if (!(0 <= i && i < j && j < d)) fail(ErrorKind::Argument, "fan slots must satisfy 0 <= i < j < fan size");
  auto slot_edge = [&](int m) { return torus.triangles[f[m][0]].edge[f[m][1]]; };
  if (slot_edge(i) == slot_edge(j)) fail(ErrorKind::Precondition, "split slots lie on the same edge");
  if (!is_valid_word(torus, word)) fail(ErrorKind::Invalid, "curve word is not a closed crossing sequence");

  BoundaryTorus res = torus;
  const int n = int(torus.triangles.size());
  const int a = torus.triangles[triangle].vertex[corner];
  const int b = torus.vertices;
  const int e = torus.edges + 2;
  const int ei = torus.edges, ej = torus.edges + 1;
  res.vertices += 1;
  res.edges += 3;
  for (int m = i + 1; m <= j; ++m) res.triangles[f[m][0]].vertex[f[m][1]] = b;

  // slot m: side (f[m], corner) glued to (f[m+1], corner-1)
  const Crossing si{f[i][0], f[i][1]}, si2{f[(i + 1) % d][0], prev(f[(i + 1) % d][1])};
  const Crossing sj{f[j][0], f[j][1]}, sj2{f[(j + 1) % d][0], prev(f[(j + 1) % d][1])};
  const int T1 = n, T2 = n + 1;
  TorusTriangle t1, t2;
  t1.vertex = {a, b, res.triangles[si.triangle].vertex[next(si.side)]};
  t1.edge = {e, ei, slot_edge(i)};
  t1.nbr = {{{T2, 0}, {si2.triangle, si2.side}, {si.triangle, si.side}}};
  t2.vertex = {b, a, res.triangles[sj2.triangle].vertex[sj2.side]};
  t2.edge = {e, slot_edge(j), ej};
  t2.nbr = {{{T1, 0}, {sj2.triangle, sj2.side}, {sj.triangle, sj.side}}};
  res.triangles.push_back(t1);
  res.triangles.push_back(t2);
  res.triangles[si.triangle].nbr[si.side] = {T1, 2};
  res.triangles[si2.triangle].nbr[si2.side] = {T1, 1};
  res.triangles[si2.triangle].edge[si2.side] = ei;
  res.triangles[sj.triangle].nbr[sj.side] = {T2, 2};
  res.triangles[sj.triangle].edge[sj.side] = ej;
  res.triangles[sj2.triangle].nbr[sj2.side] = {T2, 1};
  res.check();

  CurveWord out;
  for (const auto& c : word) {
    out.push_back(c);
    if (c == si) out.push_back({T1, 1});
    else if (c == si2) out.push_back({T1, 2});
    else if (c == sj) out.push_back({T2, 1});
    else if (c == sj2) out.push_back({T2, 2});
  }
  return {std::move(res), std::move(out)};
}

MeridionalBound meridional_bound(const BoundaryTorus& torus, const CurveWord& meridian) {
  torus.check();
  MeridionalBound out;
  CurveWord word = normalize_curve(torus, meridian);
  if (word.empty()) fail(ErrorKind::Invalid, "meridian word normalizes to the empty curve");
  out.input_length = int(word.size());
  BoundaryTorus cur = torus;
  for (;;) {
    auto cands = contractible_edges(cur);
    if (cands.empty()) break;
    auto mv = contract_edge(cur, cands.front(), word);
    cur = std::move(mv.torus);
    word = std::move(mv.word);
    if (word.empty()) fail(ErrorKind::Invalid, "meridian became inessential under contraction");
    out.trace.push_back({cands.front(), word});
    ++out.k;
  }
  out.n = int(word.size());
  out.u = BigInt(out.n) << (2 * out.k);
  out.coarse = BigInt(out.input_length) << (2 * torus.edges);
  out.terminal = cur.counts();
  out.standard_terminal = out.terminal == std::array<int, 3>{1, 3, 2};
  return out;
}

std::int64_t scan_standard_position(const BoundaryTorus& torus, const StandardPosition& pos) {
  if (int(pos.vertex_coord.size()) != torus.vertices || int(pos.edge_delta.size()) != torus.edges)
    fail(ErrorKind::Argument, "standard position does not match the torus");
  for (const auto& x : pos.vertex_coord)
    if (x < 0 || x >= 1) fail(ErrorKind::Invalid, "vertex coordinates must lie in [0, 1)");
  std::vector<std::array<int, 2>> ends(torus.edges, {-1, -1});
  for (const auto& t : torus.triangles)
    for (int k = 0; k < 3; ++k)
      if (ends[t.edge[k]][0] < 0) ends[t.edge[k]] = {t.vertex[k], t.vertex[next(k)]};
  for (int e = 0; e < torus.edges; ++e) {
    const Rational& d = pos.edge_delta[e];
    Rational w = d - (pos.vertex_coord[ends[e][1]] - pos.vertex_coord[ends[e][0]]);
    if (d == 0 || denominator(w) != 1) fail(ErrorKind::Invalid, "non-monotone edge data");
  }
  std::vector<Rational> levels(pos.vertex_coord);
  std::sort(levels.begin(), levels.end());
  levels.erase(std::unique(levels.begin(), levels.end()), levels.end());
  auto floor_q = [](const Rational& x) {
    BigInt q = numerator(x) / denominator(x);
    if (numerator(x) < 0 && q * denominator(x) != numerator(x)) q -= 1;
    return q;
  };
  std::int64_t best = 0;
  for (std::size_t i = 0; i < levels.size(); ++i) {
    Rational hi = i + 1 < levels.size() ? levels[i + 1] : levels[0] + 1;
    Rational theta = (levels[i] + hi) / 2;
    BigInt total = 0;
    for (int e = 0; e < torus.edges; ++e) {
      Rational s = pos.vertex_coord[ends[e][0]], d = pos.edge_delta[e];
      if (d < 0) {
        s += d;
        d = -d;
      }
      total += floor_q(s + d - theta) - floor_q(s - theta);
    }
    best = std::max(best, std::int64_t(total));
  }
  return best;
}

}  // namespace bsurf
