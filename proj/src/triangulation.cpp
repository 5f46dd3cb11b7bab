#include "bridgesurf/triangulation.hpp"

#include "bridgesurf/error.hpp"
#include "bridgesurf/tetmodel.hpp"

#include <json.hpp>

#include <algorithm>
#include <deque>
#include <functional>
#include <map>
#include <set>
#include <sstream>

namespace bsurf {

using nlohmann::json;

IdealTriangulation::IdealTriangulation(std::vector<std::array<Gluing, 4>> gluings)
    : gluings_(std::move(gluings)) {
  const int n = size();
  if (n < 1) fail(ErrorKind::Parse, "triangulation needs at least one tetrahedron");
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = gluings_[t][f];
      if (g.tet < 0 || g.tet >= n) fail(ErrorKind::Parse, "dangling face: tet " + std::to_string(t) + " face " + std::to_string(f));
      if (!g.perm.is_bijection()) fail(ErrorKind::Parse, "permutation not a bijection");
      int back_face = g.perm[f];
      if (g.tet == t && back_face == f)
        fail(ErrorKind::Parse, "face glued to itself: tet " + std::to_string(t) + " face " + std::to_string(f));
      const Gluing& back = gluings_[g.tet][back_face];
      if (back.tet != t || !(back.perm == g.perm.inverse()))
        fail(ErrorKind::Parse, "face glued twice: tet " + std::to_string(g.tet) + " face " + std::to_string(back_face));
    }
  }

  // Interior edge classes, tracking orientation to catch reversed edges.
  edge_class_.assign(n, {});
  for (auto& row : edge_class_) row.fill(-1);
  std::vector<std::array<int, 6>> first_end(n);
  for (int t = 0; t < n; ++t) {
    for (int e = 0; e < 6; ++e) {
      if (edge_class_[t][e] >= 0) continue;
      const int cls = int(edge_members_.size());
      edge_members_.emplace_back();
      auto ends = tet::interior_edge_ends(e);
      std::deque<std::array<int, 3>> queue{{t, ends[0], ends[1]}};
      edge_class_[t][e] = cls;
      first_end[t][e] = ends[0];
      while (!queue.empty()) {
        auto [tt, a, b] = queue.front();
        queue.pop_front();
        edge_members_[cls].push_back({tt, tet::interior_edge(a, b)});
        for (int f = 0; f < 4; ++f) {
          if (f == a || f == b) continue;
          const Gluing& g = gluings_[tt][f];
          int na = g.perm[a], nb = g.perm[b];
          int ne = tet::interior_edge(na, nb);
          if (edge_class_[g.tet][ne] >= 0) {
            if (first_end[g.tet][ne] != na) reversed_edge_ = true;
            continue;
          }
          edge_class_[g.tet][ne] = cls;
          first_end[g.tet][ne] = na;
          queue.push_back({g.tet, na, nb});
        }
      }
      std::sort(edge_members_[cls].begin(), edge_members_[cls].end(),
                [](const EdgeSlot& x, const EdgeSlot& y) { return std::tie(x.tet, x.edge) < std::tie(y.tet, y.edge); });
    }
  }

  boundary_class_.assign(n, {});
  for (auto& row : boundary_class_) row.fill(-1);
  for (int t = 0; t < n; ++t) {
    for (int v = 0; v < 4; ++v) {
      for (int f = 0; f < 4; ++f) {
        if (v == f) continue;
        int slot = tet::boundary_edge(v, f) - tet::kInteriorEdges;
        if (boundary_class_[t][slot] >= 0) continue;
        BoundaryCrossing here{t, v, f};
        BoundaryCrossing there = reverse(here);
        int cls = int(boundary_members_.size());
        boundary_members_.push_back({here, there});
        boundary_class_[t][slot] = cls;
        boundary_class_[there.tet][tet::boundary_edge(there.vertex, there.face) - tet::kInteriorEdges] = cls;
      }
    }
  }

  face_class_.assign(n, {-1, -1, -1, -1});
  for (int t = 0; t < n; ++t) {
    for (int f = 0; f < 4; ++f) {
      if (face_class_[t][f] >= 0) continue;
      const Gluing& g = gluings_[t][f];
      int cls = int(face_members_.size());
      face_members_.push_back({{{t, f}, {g.tet, g.perm[f]}}});
      face_class_[t][f] = cls;
      face_class_[g.tet][g.perm[f]] = cls;
    }
  }
}

int IdealTriangulation::boundary_edge_class(int tet, int vertex, int face) const {
  return boundary_class_[tet][tet::boundary_edge(vertex, face) - tet::kInteriorEdges];
}

std::array<int, 2> IdealTriangulation::crossing_target(const BoundaryCrossing& c) const {
  const Gluing& g = gluings_[c.tet][c.face];
  return {g.tet, g.perm[c.vertex]};
}

BoundaryCrossing IdealTriangulation::reverse(const BoundaryCrossing& c) const {
  const Gluing& g = gluings_[c.tet][c.face];
  return {g.tet, g.perm[c.vertex], g.perm[c.face]};
}

bool IdealTriangulation::connected() const {
  std::vector<bool> seen(size(), false);
  std::vector<int> stack{0};
  seen[0] = true;
  int count = 0;
  while (!stack.empty()) {
    int t = stack.back();
    stack.pop_back();
    ++count;
    for (int f = 0; f < 4; ++f) {
      int u = gluings_[t][f].tet;
      if (!seen[u]) {
        seen[u] = true;
        stack.push_back(u);
      }
    }
  }
  return count == size();
}

std::string IdealTriangulation::isosig() const {
  const int n = size();
  std::vector<int> best;
  for (int start = 0; start < n; ++start) {
    for (const Perm4& pi : Perm4::all()) {
      std::vector<int> index(n, -1);
      std::vector<Perm4> relabel(n);
      std::vector<int> order{start};
      index[start] = 0;
      relabel[start] = pi;
      std::vector<int> seq;
      seq.reserve(8 * n);
      bool worse = false;
      bool better = best.empty();
      for (std::size_t k = 0; k < order.size() && !worse; ++k) {
        int old = order[k];
        Perm4 inv = relabel[old].inverse();
        for (int nf = 0; nf < 4; ++nf) {
          const Gluing& g = gluings_[old][inv[nf]];
          if (index[g.tet] < 0) {
            index[g.tet] = int(order.size());
            order.push_back(g.tet);
            relabel[g.tet] = relabel[old] * g.perm.inverse();
          }
          Perm4 np = relabel[g.tet] * g.perm * inv;
          for (int value : {index[g.tet], np.index()}) {
            std::size_t pos = seq.size();
            seq.push_back(value);
            if (!better) {
              if (value < best[pos]) better = true;
              else if (value > best[pos]) { worse = true; break; }
            }
          }
          if (worse) break;
        }
      }
      if (!worse && (better || seq.size() < best.size())) best = std::move(seq);
    }
  }
  std::ostringstream out;
  out << n;
  for (int v : best) out << '.' << v;
  return out.str();
}

namespace {

// Side direction of boundary edge (v, face) in triangle v, as the pair of
// opposite vertex labels of the corners it runs between, respecting `flip`.
std::array<int, 2> side_direction(int v, int face, bool flip) {
  int tri = tet::triangle_face(v);
  int k = tet::side_of(tri, tet::boundary_edge(v, face));
  int from = tet::corner_slot(tet::face_corner(tri, k))[1];
  int to = tet::corner_slot(tet::face_corner(tri, (k + 1) % 3))[1];
  if (flip) std::swap(from, to);
  return {from, to};
}

}  // namespace

std::optional<std::vector<bool>> orient_boundary(const IdealTriangulation& tri) {
  const int n = tri.size();
  std::vector<int> flip(4 * n, -1);
  for (int root = 0; root < 4 * n; ++root) {
    if (flip[root] >= 0) continue;
    flip[root] = 0;
    std::vector<int> stack{root};
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      int t = id / 4, v = id % 4;
      for (int f = 0; f < 4; ++f) {
        if (f == v) continue;
        const Gluing& g = tri.glue(t, f);
        auto dir = side_direction(v, f, flip[id] == 1);
        int nv = g.perm[v];
        int nid = g.tet * 4 + nv;
        // The neighbour must traverse the shared side in the opposite direction.
        auto want = std::array<int, 2>{g.perm[dir[1]], g.perm[dir[0]]};
        int need = side_direction(nv, g.perm[f], false) == want ? 0 : 1;
        if (flip[nid] < 0) {
          flip[nid] = need;
          stack.push_back(nid);
        } else if (flip[nid] != need) {
          return std::nullopt;
        }
      }
    }
  }
  std::vector<bool> out(4 * n);
  for (int i = 0; i < 4 * n; ++i) out[i] = flip[i] == 1;
  return out;
}

ValidationReport validate(const IdealTriangulation& tri) {
  ValidationReport report;
  const int n = tri.size();
  report.edge_class_count = tri.edge_class_count();
  report.boundary_triangles = 4 * n;
  report.boundary_edges = tri.boundary_edge_count();

  if (!tri.connected()) report.diagnostics.push_back("triangulation not connected");
  if (tri.has_reversed_edge()) report.diagnostics.push_back("edge identified with itself in reverse");

  // Boundary vertices: corner (t, v, w) glued across faces avoiding v and w.
  std::vector<int> corner_class(12 * n, -1);
  int vertices = 0;
  for (int id = 0; id < 12 * n; ++id) {
    if (corner_class[id] >= 0) continue;
    std::vector<int> stack{id};
    corner_class[id] = vertices;
    while (!stack.empty()) {
      int c = stack.back();
      stack.pop_back();
      int t = c / 12;
      auto [v, w] = tet::corner_slot(c % 12);
      for (int f = 0; f < 4; ++f) {
        if (f == v || f == w) continue;
        const Gluing& g = tri.glue(t, f);
        int nc = g.tet * 12 + tet::corner(g.perm[v], g.perm[w]);
        if (corner_class[nc] < 0) {
          corner_class[nc] = vertices;
          stack.push_back(nc);
        }
      }
    }
    ++vertices;
  }
  report.boundary_vertices = vertices;

  // Components of the boundary surface.
  std::vector<int> comp(4 * n, -1);
  int components = 0;
  std::vector<int> comp_triangles, comp_vertices;
  for (int root = 0; root < 4 * n; ++root) {
    if (comp[root] >= 0) continue;
    comp[root] = components;
    std::vector<int> stack{root};
    int count = 0;
    while (!stack.empty()) {
      int id = stack.back();
      stack.pop_back();
      ++count;
      for (int f = 0; f < 4; ++f) {
        if (f == id % 4) continue;
        auto target = tri.crossing_target({id / 4, id % 4, f});
        int nid = target[0] * 4 + target[1];
        if (comp[nid] < 0) {
          comp[nid] = components;
          stack.push_back(nid);
        }
      }
    }
    comp_triangles.push_back(count);
    ++components;
  }
  comp_vertices.assign(components, 0);
  std::set<int> counted;
  for (int c = 0; c < 12 * n; ++c) {
    if (counted.insert(corner_class[c]).second) ++comp_vertices[comp[(c / 12) * 4 + tet::corner_slot(c % 12)[0]]];
  }
  report.boundary_component_count = components;
  report.boundary_orientable = orient_boundary(tri).has_value();

  bool all_tori = report.boundary_orientable;
  int genus = 0;
  for (int k = 0; k < components; ++k) {
    // Each component has 3T/2 edges.
    int chi = comp_vertices[k] - 3 * comp_triangles[k] / 2 + comp_triangles[k];
    if (chi != 0) all_tori = false;
    genus += (2 - chi) / 2;
  }
  report.boundary_genus = report.boundary_orientable ? genus : 0;

  if (components != 1 || !all_tori) report.diagnostics.push_back("boundary not a torus");
  if (report.edge_class_count != n)
    report.diagnostics.push_back("edge class count " + std::to_string(report.edge_class_count) + " differs from tetrahedron count " + std::to_string(n));
  report.ok = report.diagnostics.empty();
  return report;
}

// ---------------------------------------------------------------------------
// File format

namespace {

int require_int(const json& obj, const char* key) {
  if (!obj.is_object() || !obj.contains(key) || !obj.at(key).is_number_integer())
    fail(ErrorKind::Parse, std::string("syntax error: expected integer field \"") + key + "\"");
  return obj.at(key).get<int>();
}

}  // namespace

TriangulationFile parse_triangulation(const std::string& text) {
  json doc;
  try {
    doc = json::parse(text);
  } catch (const json::parse_error& e) {
    fail(ErrorKind::Parse, std::string("syntax error: ") + e.what());
  }
  int n = require_int(doc, "tets");
  if (n < 1) fail(ErrorKind::Parse, "syntax error: \"tets\" must be positive");
  if (!doc.contains("gluings") || !doc["gluings"].is_array()) fail(ErrorKind::Parse, "syntax error: missing \"gluings\" array");

  std::vector<std::array<Gluing, 4>> table(n);
  std::vector<std::array<bool, 4>> seen(n, {false, false, false, false});
  for (const json& entry : doc["gluings"]) {
    int t = require_int(entry, "tet");
    int f = require_int(entry, "face");
    int u = require_int(entry, "to_tet");
    int g = require_int(entry, "to_face");
    if (t < 0 || t >= n || u < 0 || u >= n || f < 0 || f > 3 || g < 0 || g > 3)
      fail(ErrorKind::Parse, "syntax error: gluing index out of range");
    if (!entry.contains("perm")) fail(ErrorKind::Parse, "syntax error: gluing without \"perm\"");
    const json& p = entry["perm"];
    std::array<int, 4> image{};
    image[f] = g;
    int k = 0;
    const char* keys[3] = {"a", "b", "c"};
    for (int x = 0; x < 4; ++x) {
      if (x == f) continue;
      int y = require_int(p, keys[k++]);
      if (y < 0 || y > 3) fail(ErrorKind::Parse, "permutation not a bijection");
      image[x] = y;
    }
    Perm4 perm(image[0], image[1], image[2], image[3]);
    if (!perm.is_bijection()) fail(ErrorKind::Parse, "permutation not a bijection");
    if (seen[t][f]) fail(ErrorKind::Parse, "face glued twice: tet " + std::to_string(t) + " face " + std::to_string(f));
    seen[t][f] = true;
    table[t][f] = {u, perm};
  }
  for (int t = 0; t < n; ++t)
    for (int f = 0; f < 4; ++f)
      if (!seen[t][f]) fail(ErrorKind::Parse, "dangling face: tet " + std::to_string(t) + " face " + std::to_string(f));

  TriangulationFile out{IdealTriangulation(std::move(table)), std::nullopt};
  if (doc.contains("meridian") && !doc["meridian"].is_null()) {
    std::vector<int> classes;
    for (const json& id : doc["meridian"]) {
      if (!id.is_string()) fail(ErrorKind::Parse, "syntax error: meridian ids must be strings");
      std::string s = id.get<std::string>();
      if (s.size() < 2 || s[0] != 'B') fail(ErrorKind::Parse, "syntax error: bad boundary edge id " + s);
      int k = -1;
      try {
        std::size_t used = 0;
        k = std::stoi(s.substr(1), &used);
        if (used != s.size() - 1) k = -1;
      } catch (const std::exception&) {
        k = -1;
      }
      if (k < 0 || k >= out.tri.boundary_edge_count()) fail(ErrorKind::Parse, "unknown boundary edge id " + s);
      classes.push_back(k);
    }
    if (!classes.empty()) out.meridian = resolve_boundary_word(out.tri, classes);
  }
  return out;
}

std::string write_triangulation(const IdealTriangulation& tri, const std::optional<BoundaryPath>& meridian) {
  json doc;
  doc["tets"] = tri.size();
  json gl = json::array();
  for (int t = 0; t < tri.size(); ++t) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.glue(t, f);
      json perm;
      const char* keys[3] = {"a", "b", "c"};
      int k = 0;
      for (int x = 0; x < 4; ++x)
        if (x != f) perm[keys[k++]] = g.perm[x];
      gl.push_back({{"tet", t}, {"face", f}, {"to_tet", g.tet}, {"to_face", g.perm[f]}, {"perm", perm}});
    }
  }
  doc["gluings"] = gl;
  json mer = json::array();
  if (meridian)
    for (int c : boundary_word(tri, *meridian)) mer.push_back("B" + std::to_string(c));
  doc["meridian"] = mer;
  return doc.dump(1);
}

// ---------------------------------------------------------------------------
// Boundary paths

BoundaryPath resolve_boundary_word(const IdealTriangulation& tri, const std::vector<int>& classes) {
  const std::size_t len = classes.size();
  BoundaryPath path(len);
  std::function<bool(std::size_t)> place = [&](std::size_t i) -> bool {
    if (i == len) {
      auto end = tri.crossing_target(path.back());
      return end[0] == path.front().tet && end[1] == path.front().vertex;
    }
    for (const BoundaryCrossing& slot : tri.boundary_edge_slots(classes[i])) {
      if (i > 0) {
        auto at = tri.crossing_target(path[i - 1]);
        if (at[0] != slot.tet || at[1] != slot.vertex) continue;
      }
      path[i] = slot;
      if (place(i + 1)) return true;
    }
    return false;
  };
  if (len == 0 || !place(0)) fail(ErrorKind::Parse, "meridian word is not a closed curve on the boundary");
  return path;
}

std::vector<int> boundary_word(const IdealTriangulation& tri, const BoundaryPath& path) {
  std::vector<int> out;
  out.reserve(path.size());
  for (const auto& c : path) out.push_back(tri.boundary_edge_class(c.tet, c.vertex, c.face));
  return out;
}

BoundaryPath normalize_path(const IdealTriangulation& tri, BoundaryPath path) {
  BoundaryPath stack;
  for (const auto& c : path) {
    if (!stack.empty() && tri.reverse(stack.back()) == c) stack.pop_back();
    else stack.push_back(c);
  }
  std::size_t lo = 0;
  while (stack.size() - lo >= 2 && tri.reverse(stack.back()) == stack[lo]) {
    stack.pop_back();
    ++lo;
  }
  return BoundaryPath(stack.begin() + lo, stack.end());
}

bool is_closed_path(const IdealTriangulation& tri, const BoundaryPath& path) {
  if (path.empty()) return false;
  for (std::size_t i = 0; i < path.size(); ++i) {
    const auto& next = path[(i + 1) % path.size()];
    auto at = tri.crossing_target(path[i]);
    if (at[0] != next.tet || at[1] != next.vertex) return false;
  }
  return true;
}

// ---------------------------------------------------------------------------
// Pachner moves

namespace {

using Names = std::array<int, 4>;

int position_of(const Names& names, int name) {
  for (int p = 0; p < 4; ++p)
    if (names[p] == name) return p;
  return -1;
}

// Map positions of `from` to positions of `to`, identifying vertices by name
// except that `from_opp` is sent to the vertex named `to_opp`.
Perm4 name_map(const Names& from, const Names& to, int from_opp, int to_opp) {
  std::array<int, 4> img{};
  for (int p = 0; p < 4; ++p) {
    int name = from[p] == from_opp ? to_opp : from[p];
    img[p] = position_of(to, name);
  }
  return Perm4(img[0], img[1], img[2], img[3]);
}

struct MappedSlot {
  int old_tet, old_face;
  int new_tet, new_face;
  Perm4 to_old;
};

struct InternalGluing {
  int tet, face, other, other_face;
  Perm4 perm;
};

PachnerMove retriangulate(const IdealTriangulation& tri, const std::vector<int>& removed, int new_count,
                          const std::vector<MappedSlot>& mapped, const std::vector<InternalGluing>& internal) {
  const int n = tri.size();
  PachnerMove move{tri, std::vector<int>(n, -1), std::vector<PachnerMove::SlotImage>(4 * n), {}};
  int next = 0;
  for (int t = 0; t < n; ++t)
    if (std::find(removed.begin(), removed.end(), t) == removed.end()) move.kept[t] = next++;
  const int base = next;
  for (int t = 0; t < n; ++t)
    if (move.kept[t] >= 0)
      for (int f = 0; f < 4; ++f) move.slots[4 * t + f] = {move.kept[t], f, Perm4()};
  for (const auto& m : mapped) move.slots[4 * m.old_tet + m.old_face] = {base + m.new_tet, m.new_face, m.to_old};

  std::vector<std::array<Gluing, 4>> table(base + new_count);
  for (int t = 0; t < n; ++t) {
    if (move.kept[t] < 0) continue;
    for (int f = 0; f < 4; ++f) {
      const Gluing& g = tri.glue(t, f);
      if (move.kept[g.tet] >= 0) {
        table[move.kept[t]][f] = {move.kept[g.tet], g.perm};
      } else {
        const auto& img = move.slots[4 * g.tet + g.perm[f]];
        table[move.kept[t]][f] = {img.tet, img.to_old.inverse() * g.perm};
      }
    }
  }
  for (const auto& m : mapped) {
    const Gluing& g = tri.glue(m.old_tet, m.old_face);
    Gluing out;
    if (move.kept[g.tet] >= 0) {
      out = {move.kept[g.tet], g.perm * m.to_old};
    } else {
      const auto& img = move.slots[4 * g.tet + g.perm[m.old_face]];
      if (img.tet < 0) fail(ErrorKind::Precondition, "degenerate identification around the move");
      out = {img.tet, img.to_old.inverse() * g.perm * m.to_old};
    }
    table[base + m.new_tet][m.new_face] = out;
  }
  for (const auto& g : internal) {
    table[base + g.tet][g.face] = {base + g.other, g.perm};
    table[base + g.other][g.other_face] = {base + g.tet, g.perm.inverse()};
    move.internal_faces.push_back({base + g.tet, g.face});
    move.internal_faces.push_back({base + g.other, g.other_face});
  }
  std::sort(move.internal_faces.begin(), move.internal_faces.end());
  move.result = IdealTriangulation(std::move(table));
  return move;
}

constexpr int kApexA = 10, kApexB = 11;

// Walk around a valence-three edge; returns the vertex names of the three
// tetrahedra (P=10, Q=11, equator X0..X2 = 20..22) or nullopt.
struct EdgeStar {
  std::array<int, 3> tets;
  std::array<Names, 3> names;
};

std::optional<EdgeStar> edge_star(const IdealTriangulation& tri, int edge_class) {
  if (edge_class < 0 || edge_class >= tri.edge_class_count()) return std::nullopt;
  const auto& members = tri.edge_members(edge_class);
  if (members.size() != 3) return std::nullopt;
  constexpr int P = 10, Q = 11, X0 = 20, X1 = 21, X2 = 22;
  EdgeStar star;
  int t0 = members[0].tet;
  auto [p0, q0] = tet::interior_edge_ends(members[0].edge);
  std::array<int, 2> rest{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != p0 && v != q0) rest[k++] = v;
  Names n0{};
  n0[p0] = P;
  n0[q0] = Q;
  n0[rest[0]] = X0;
  n0[rest[1]] = X1;
  star.tets[0] = t0;
  star.names[0] = n0;

  // T0 --(face opposite X0)--> T1 --(face opposite X1)--> T2 --(face opposite X2)--> T0
  auto step = [&](int t, const Names& names, int opp_name, int new_name) -> std::pair<int, Names> {
    int face = position_of(names, opp_name);
    const Gluing& g = tri.glue(t, face);
    Names out{};
    for (int v = 0; v < 4; ++v) out[g.perm[v]] = v == face ? new_name : names[v];
    return {g.tet, out};
  };
  auto [t1, n1] = step(t0, n0, X0, X2);
  auto [t2, n2] = step(t1, n1, X1, X0);
  auto [t3, n3] = step(t2, n2, X2, X1);
  if (t1 == t0 || t2 == t0 || t2 == t1) return std::nullopt;
  if (t3 != t0 || n3 != n0) return std::nullopt;
  star.tets = {t0, t1, t2};
  star.names = {n0, n1, n2};
  return star;
}

}  // namespace

bool can_pachner_23(const IdealTriangulation& tri, int face_class) {
  if (face_class < 0 || face_class >= tri.face_class_count()) return false;
  const auto& m = tri.face_members(face_class);
  return m[0][0] != m[1][0];
}

bool can_pachner_32(const IdealTriangulation& tri, int edge_class) { return edge_star(tri, edge_class).has_value(); }

PachnerMove pachner_23(const IdealTriangulation& tri, int face_class) {
  if (face_class < 0 || face_class >= tri.face_class_count()) fail(ErrorKind::Argument, "face class out of range");
  if (!can_pachner_23(tri, face_class)) fail(ErrorKind::Precondition, "face not eligible: both sides lie in one tetrahedron");
  const auto& members = tri.face_members(face_class);
  const int a = members[0][0], f = members[0][1];
  const Gluing& g = tri.glue(a, f);
  const int b = g.tet;
  const Perm4 sigma = g.perm;

  std::array<int, 3> x{};
  int k = 0;
  for (int v = 0; v < 4; ++v)
    if (v != f) x[k++] = v;

  // Vertex names: the face vertices keep A's labels, apexes are 10 and 11.
  Names names_a{}, names_b{};
  for (int v = 0; v < 4; ++v) names_a[v] = v == f ? kApexA : v;
  for (int v = 0; v < 4; ++v) names_b[sigma[v]] = v == f ? kApexB : v;

  std::array<Names, 3> nn{};
  for (int i = 0; i < 3; ++i) {
    int j = x[(i + 1) % 3], l = x[(i + 2) % 3];
    if (j > l) std::swap(j, l);
    nn[i] = {kApexA, kApexB, j, l};
  }

  std::vector<MappedSlot> mapped;
  for (int i = 0; i < 3; ++i) {
    // Face opposite apex B of N_i is A's face opposite x_i.
    mapped.push_back({a, x[i], i, 1, name_map(nn[i], names_a, kApexB, x[i])});
    // Face opposite apex A of N_i is B's face opposite sigma(x_i).
    mapped.push_back({b, sigma[x[i]], i, 0, name_map(nn[i], names_b, kApexA, x[i])});
  }
  std::vector<InternalGluing> internal;
  for (int i = 0; i < 3; ++i) {
    for (int j = i + 1; j < 3; ++j) {
      int fi = position_of(nn[i], x[j]);
      int fj = position_of(nn[j], x[i]);
      internal.push_back({i, fi, j, fj, name_map(nn[i], nn[j], x[j], x[i])});
    }
  }
  return retriangulate(tri, {a, b}, 3, mapped, internal);
}

PachnerMove pachner_32(const IdealTriangulation& tri, int edge_class) {
  if (edge_class < 0 || edge_class >= tri.edge_class_count()) fail(ErrorKind::Argument, "edge class out of range");
  if (tri.edge_valence(edge_class) != 3)
    fail(ErrorKind::Precondition, "edge valence is " + std::to_string(tri.edge_valence(edge_class)) + ", not 3");
  auto star = edge_star(tri, edge_class);
  if (!star) fail(ErrorKind::Precondition, "degenerate identification around the edge");
  constexpr int P = 10, Q = 11;
  const Names top{P, 20, 21, 22};
  const Names bottom{Q, 20, 21, 22};
  std::vector<MappedSlot> mapped;
  for (int i = 0; i < 3; ++i) {
    const Names& nm = star->names[i];
    int missing = 20 + 21 + 22 + P + Q - nm[0] - nm[1] - nm[2] - nm[3];
    mapped.push_back({star->tets[i], position_of(nm, Q), 0, position_of(top, missing), name_map(top, nm, missing, Q)});
    mapped.push_back({star->tets[i], position_of(nm, P), 1, position_of(bottom, missing), name_map(bottom, nm, missing, P)});
  }
  std::vector<int> removed(star->tets.begin(), star->tets.end());
  std::sort(removed.begin(), removed.end());
  return retriangulate(tri, removed, 2, mapped, {{0, 0, 1, 0, Perm4()}});
}

BoundaryPath transport(const IdealTriangulation& before, const PachnerMove& move, const BoundaryPath& path) {
  BoundaryPath norm = normalize_path(before, path);
  const IdealTriangulation& after = move.result;
  std::vector<std::optional<BoundaryCrossing>> image(norm.size());
  std::size_t first = norm.size();
  for (std::size_t i = 0; i < norm.size(); ++i) {
    const auto& c = norm[i];
    const auto& slot = move.slots[4 * c.tet + c.face];
    if (slot.tet < 0) continue;
    image[i] = BoundaryCrossing{slot.tet, slot.to_old.inverse()[c.vertex], slot.face};
    if (first == norm.size()) first = i;
  }
  if (first == norm.size()) fail(ErrorKind::Precondition, "curve lies inside the retriangulated region");

  std::set<std::array<int, 2>> internal(move.internal_faces.begin(), move.internal_faces.end());
  // Shortest route between two truncation triangles through new internal faces.
  auto route = [&](std::array<int, 2> from, std::array<int, 2> to) {
    std::map<std::array<int, 2>, BoundaryCrossing> parent;
    std::deque<std::array<int, 2>> queue{from};
    std::set<std::array<int, 2>> seen{from};
    while (!queue.empty()) {
      auto cur = queue.front();
      queue.pop_front();
      if (cur == to) break;
      for (int f = 0; f < 4; ++f) {
        if (f == cur[1] || !internal.count({cur[0], f})) continue;
        BoundaryCrossing c{cur[0], cur[1], f};
        auto nxt = after.crossing_target(c);
        if (seen.insert(nxt).second) {
          parent[nxt] = c;
          queue.push_back(nxt);
        }
      }
    }
    if (!seen.count(to)) fail(ErrorKind::Precondition, "cannot reroute curve across the move");
    BoundaryPath steps;
    for (auto cur = to; cur != from;) {
      const auto& c = parent.at(cur);
      steps.push_back(c);
      cur = {c.tet, c.vertex};
    }
    std::reverse(steps.begin(), steps.end());
    return steps;
  };

  BoundaryPath out;
  const std::size_t len = norm.size();
  std::size_t i = first;
  do {
    const BoundaryCrossing cur = *image[i];
    out.push_back(cur);
    std::size_t j = (i + 1) % len;
    while (!image[j]) j = (j + 1) % len;
    auto from = after.crossing_target(cur);
    std::array<int, 2> to{image[j]->tet, image[j]->vertex};
    if (from != to)
      for (const auto& step : route(from, to)) out.push_back(step);
    i = j;
  } while (i != first);
  return normalize_path(after, out);
}

}  // namespace bsurf
