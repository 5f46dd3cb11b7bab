#include "bridgesurf/peripheral.hpp"

#include "bridgesurf/checked.hpp"
#include "bridgesurf/error.hpp"
#include "bridgesurf/rational.hpp"
#include "bridgesurf/tetmodel.hpp"

#include <cstdlib>
#include <numeric>
#include <queue>
#include <tuple>

namespace bsurf {
namespace {

using Vec = std::vector<std::int64_t>;

std::array<int, 2> others2(int v, int f) {
  std::array<int, 2> out{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != v && i != f) out[k++] = i;
  return out;
}

// Labels (from, to) of the corners the oriented boundary of triangle v runs
// between along its side in hexagon `face`.
std::array<int, 2> traversal(int v, int face, bool flip) {
  int tri = tet::triangle_face(v);
  int k = tet::side_of(tri, tet::boundary_edge(v, face));
  int from = tet::corner_slot(tet::face_corner(tri, k))[1];
  int to = tet::corner_slot(tet::face_corner(tri, (k + 1) % 3))[1];
  if (flip) std::swap(from, to);
  return {from, to};
}

struct Dsu {
  std::vector<int> parent;
  explicit Dsu(int n) : parent(n) { std::iota(parent.begin(), parent.end(), 0); }
  int find(int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); }
  void unite(int a, int b) { parent[find(a)] = find(b); }
};

// Signed sums of edges along spanning-tree paths to the root.
struct Tree {
  std::vector<int> parent_edge;
  std::vector<int> dir;  // +1 when the edge runs parent -> node
  std::vector<int> parent;
};

Tree spanning_tree(int nodes, const std::vector<std::array<int, 2>>& edges, std::vector<bool>& in_tree) {
  std::vector<std::vector<int>> adj(nodes);
  for (int e = 0; e < int(edges.size()); ++e) {
    adj[edges[e][0]].push_back(e);
    adj[edges[e][1]].push_back(e);
  }
  Tree t{std::vector<int>(nodes, -1), std::vector<int>(nodes, 0), std::vector<int>(nodes, -1)};
  std::vector<bool> seen(nodes, false);
  in_tree.assign(edges.size(), false);
  for (int root = 0; root < nodes; ++root) {
    if (seen[root]) continue;
    seen[root] = true;
    std::queue<int> q;
    q.push(root);
    while (!q.empty()) {
      int u = q.front();
      q.pop();
      for (int e : adj[u]) {
        int w = edges[e][0] == u ? edges[e][1] : edges[e][0];
        if (seen[w]) continue;
        seen[w] = true;
        in_tree[e] = true;
        t.parent[w] = u;
        t.parent_edge[w] = e;
        t.dir[w] = edges[e][0] == u ? 1 : -1;
        q.push(w);
      }
    }
  }
  return t;
}

// Adds `sign` times the tree path root -> node, with edge e weighted by weight[e].
void add_root_path(const Tree& t, int node, int sign, const std::vector<int>& weight, Vec& out) {
  for (int u = node; t.parent[u] >= 0; u = t.parent[u]) {
    int e = t.parent_edge[u];
    out[e] += sign * t.dir[u] * weight[e];
  }
}

// Fundamental cycles of a graph: non-tree edge e traversed forward, then the
// tree path back.
std::vector<Vec> fundamental_cycles(int nodes, const std::vector<std::array<int, 2>>& edges, const std::vector<int>& weight) {
  std::vector<bool> in_tree;
  Tree t = spanning_tree(nodes, edges, in_tree);
  std::vector<Vec> out;
  for (int e = 0; e < int(edges.size()); ++e) {
    if (in_tree[e]) continue;
    Vec c(edges.size(), 0);
    c[e] += weight[e];
    // b -> a = (root -> a) - (root -> b)
    add_root_path(t, edges[e][0], 1, weight, c);
    add_root_path(t, edges[e][1], -1, weight, c);
    out.push_back(std::move(c));
  }
  return out;
}

std::int64_t dot(const Vec& a, const Vec& b) {
  std::int64_t s = 0;
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] && b[i]) s = checked_add(s, checked_mul(a[i], b[i]));
  return s;
}

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

// x, y with a*x + b*y = gcd(a, b) >= 0.
std::array<std::int64_t, 3> ext_gcd(std::int64_t a, std::int64_t b) {
  std::int64_t x0 = 1, y0 = 0, x1 = 0, y1 = 1;
  while (b != 0) {
    std::int64_t q = floor_div(a, b);
    std::tie(a, b) = std::make_pair(b, a - q * b);
    std::tie(x0, x1) = std::make_pair(x1, x0 - q * x1);
    std::tie(y0, y1) = std::make_pair(y1, y0 - q * y1);
  }
  if (a < 0) return {-a, -x0, -y0};
  return {a, x0, y0};
}

// Row-echelon basis over Q; reduce() returns the residue of a vector.
struct Echelon {
  std::vector<std::vector<Rational>> rows;
  std::vector<int> pivots;

  std::vector<Rational> reduce(std::vector<Rational> v) const {
    for (std::size_t r = 0; r < rows.size(); ++r) {
      const Rational f = v[pivots[r]] / rows[r][pivots[r]];
      if (f == 0) continue;
      for (std::size_t i = 0; i < v.size(); ++i) v[i] -= f * rows[r][i];
    }
    return v;
  }
  void add(const std::vector<Rational>& v) {
    auto r = reduce(v);
    for (std::size_t i = 0; i < r.size(); ++i)
      if (r[i] != 0) {
        rows.push_back(std::move(r));
        pivots.push_back(int(i));
        return;
      }
  }
};

std::vector<Rational> to_rational(const Vec& v) { return {v.begin(), v.end()}; }

bool is_zero(const std::vector<Rational>& v) {
  for (const auto& x : v)
    if (x != 0) return false;
  return true;
}

}  // namespace

Peripheral::Peripheral(const IdealTriangulation& tri, const BoundaryPath& meridian) : tri_(&tri) {
  auto flip = orient_boundary(tri);
  if (!flip) fail(ErrorKind::Invalid, "boundary is not orientable");
  flip_ = *flip;
  if (meridian.empty() || !is_closed_path(tri, meridian)) fail(ErrorKind::Invalid, "meridian is not a closed boundary curve");

  const int n = tri.size();
  const int edges = tri.boundary_edge_count();
  class_orient_.resize(edges);
  Dsu corners(12 * n);
  std::vector<std::array<int, 2>> primal(edges);
  for (int e = 0; e < edges; ++e) {
    const auto& s0 = tri.boundary_edge_slots(e)[0];
    const auto& s1 = tri.boundary_edge_slots(e)[1];
    auto [x, y] = others2(s0.vertex, s0.face);
    class_orient_[e] = {x, y};
    const Perm4& p = tri.glue(s0.tet, s0.face).perm;
    for (int w : {x, y}) corners.unite(s0.tet * 12 + tet::corner(s0.vertex, w), s1.tet * 12 + tet::corner(p[s0.vertex], p[w]));
    primal[e] = {s0.tet * 12 + tet::corner(s0.vertex, x), s0.tet * 12 + tet::corner(s0.vertex, y)};
  }
  std::vector<int> vertex_id(12 * n, -1);
  int vertices = 0;
  for (int c = 0; c < 12 * n; ++c) {
    int r = corners.find(c);
    if (vertex_id[r] < 0) vertex_id[r] = vertices++;
  }
  for (auto& pe : primal) pe = {vertex_id[corners.find(pe[0])], vertex_id[corners.find(pe[1])]};

  cycles_ = fundamental_cycles(vertices, primal, std::vector<int>(edges, 1));

  // Dual graph on the truncation triangles; forward = leaving through slot 0.
  std::vector<std::array<int, 2>> dual(edges);
  std::vector<int> sign0(edges);
  for (int e = 0; e < edges; ++e) {
    const auto& s0 = tri.boundary_edge_slots(e)[0];
    const auto& s1 = tri.boundary_edge_slots(e)[1];
    dual[e] = {s0.tet * 4 + s0.vertex, s1.tet * 4 + s1.vertex};
    sign0[e] = int(crossing_vector({s0})[e]);
  }
  auto generators = fundamental_cycles(4 * n, dual, sign0);

  // Face-class image of a crossing vector, for the rational longitude.
  const int faces = tri.face_class_count();
  auto face_image = [&](const Vec& z) {
    Vec out(faces, 0);
    for (int e = 0; e < edges; ++e) {
      if (!z[e]) continue;
      const auto& s0 = tri.boundary_edge_slots(e)[0];
      int fc = tri.face_class(s0.tet, s0.face);
      int tau = tri.face_members(fc)[0] == std::array<int, 2>{s0.tet, s0.face} ? 1 : -1;
      out[fc] += z[e] * sign0[e] * tau;
    }
    return out;
  };

  // Integer elimination on the intersection images; payload carries the
  // face image along.
  const int cols = int(cycles_.size());
  struct Item {
    Vec img;
    Vec face;
  };
  std::vector<Item> items;
  for (const auto& g : generators) {
    Item it{Vec(cols), face_image(g)};
    for (int c = 0; c < cols; ++c) it.img[c] = dot(cycles_[c], g);
    items.push_back(std::move(it));
  }
  std::array<Item, 2> basis;
  int found = 0;
  for (int c = 0; c < cols && found < 2; ++c) {
    for (;;) {
      int best = -1;
      for (int i = 0; i < int(items.size()); ++i)
        if (items[i].img[c] != 0 && (best < 0 || std::abs(items[i].img[c]) < std::abs(items[best].img[c]))) best = i;
      if (best < 0) break;
      bool others = false;
      for (int i = 0; i < int(items.size()); ++i) {
        if (i == best || items[i].img[c] == 0) continue;
        others = true;
        std::int64_t q = items[i].img[c] / items[best].img[c];
        for (int k = 0; k < cols; ++k) items[i].img[k] = checked_add(items[i].img[k], -checked_mul(q, items[best].img[k]));
        for (int k = 0; k < faces; ++k) items[i].face[k] = checked_add(items[i].face[k], -checked_mul(q, items[best].face[k]));
      }
      if (!others) {
        pivot_[found] = c;
        basis[found++] = std::move(items[best]);
        items.erase(items.begin() + best);
        break;
      }
    }
  }
  if (found != 2) fail(ErrorKind::Invalid, "boundary homology does not have rank 2");
  basis_img_ = {basis[0].img, basis[1].img};

  Vec mz = crossing_vector(meridian);
  auto m = lattice_coords(mz);
  auto [g, a, b] = ext_gcd(m[0], m[1]);
  if (g != 1) fail(ErrorKind::Invalid, "meridian is not primitive in the boundary torus");
  // m0 * a + m1 * b = 1, so (l1, l2) = (-b, a) completes the basis.
  ml_ = {m[0], m[1], -b, a};

  Echelon rel;
  for (int x = 0; x < vertices; ++x) {
    Vec z(edges, 0);
    for (int e = 0; e < edges; ++e) z[e] = (primal[e][0] == x) - (primal[e][1] == x);
    rel.add(to_rational(face_image(z)));
  }
  Vec lface(faces, 0);
  for (int k = 0; k < faces; ++k) lface[k] = checked_add(checked_mul(ml_[2], basis[0].face[k]), checked_mul(ml_[3], basis[1].face[k]));
  auto rm = rel.reduce(to_rational(face_image(mz)));
  auto rl = rel.reduce(to_rational(lface));
  if (is_zero(rm) && is_zero(rl)) fail(ErrorKind::Invalid, "boundary torus is compressible in rational homology");
  // p * rm + q * rl = 0 with (p, q) primitive and q >= 0
  std::int64_t p = 0, q = 1;
  if (is_zero(rm)) {
    p = 1;
    q = 0;
  } else if (!is_zero(rl)) {
    std::size_t i = 0;
    while (rm[i] == 0) ++i;
    Rational ratio = -rl[i] / rm[i];
    p = std::int64_t(numerator(ratio));
    q = std::int64_t(denominator(ratio));
    for (std::size_t k = 0; k < rm.size(); ++k)
      if (rm[k] * p + rl[k] * q != 0) fail(ErrorKind::Invalid, "boundary maps onto rank 2 in rational homology");
  }
  if (q == 1) {
    rational_ = true;
    shift_ = p;
    rational_class_ = {0, 1};
  } else {
    rational_ = false;
    shift_ = 0;
    rational_class_ = {p, q};
  }
}

std::vector<std::int64_t> Peripheral::crossing_vector(const BoundaryPath& path) const {
  const auto& tri = *tri_;
  Vec z(tri.boundary_edge_count(), 0);
  for (const auto& c : path) {
    if (c.tet < 0 || c.tet >= tri.size() || c.vertex < 0 || c.vertex > 3 || c.face < 0 || c.face > 3 || c.face == c.vertex)
      fail(ErrorKind::Argument, "boundary crossing out of range");
    int e = tri.boundary_edge_class(c.tet, c.vertex, c.face);
    const auto& s0 = tri.boundary_edge_slots(e)[0];
    std::array<int, 2> orient = class_orient_[e];
    if (!(c == s0)) {
      const Perm4& p = tri.glue(s0.tet, s0.face).perm;
      orient = {p[orient[0]], p[orient[1]]};
    }
    auto dir = traversal(c.vertex, c.face, flip_[c.tet * 4 + c.vertex]);
    z[e] += dir == orient ? 1 : -1;
  }
  return z;
}

std::array<std::int64_t, 2> Peripheral::lattice_coords(const std::vector<std::int64_t>& z) const {
  Vec img(cycles_.size());
  for (std::size_t c = 0; c < cycles_.size(); ++c) img[c] = dot(cycles_[c], z);
  std::array<std::int64_t, 2> out{};
  for (int k = 0; k < 2; ++k) {
    std::int64_t piv = basis_img_[k][pivot_[k]];
    if (img[pivot_[k]] % piv != 0) fail(ErrorKind::Invalid, "not a boundary cycle");
    out[k] = img[pivot_[k]] / piv;
    for (std::size_t c = 0; c < img.size(); ++c) img[c] = checked_add(img[c], -checked_mul(out[k], basis_img_[k][c]));
  }
  for (auto x : img)
    if (x != 0) fail(ErrorKind::Invalid, "not a boundary cycle");
  return out;
}

std::array<std::int64_t, 2> Peripheral::homology_class(const std::vector<std::int64_t>& z) const {
  if (int(z.size()) != tri_->boundary_edge_count()) fail(ErrorKind::Argument, "crossing vector size mismatch");
  auto [a, b] = lattice_coords(z);
  auto [m1, m2, l1, l2] = ml_;
  // solve (a, b) = P (m1, m2) + Q (l1, l2); the determinant is 1
  std::int64_t P = checked_add(checked_mul(l2, a), -checked_mul(l1, b));
  std::int64_t Q = checked_add(-checked_mul(m2, a), checked_mul(m1, b));
  // longitude = shift * meridian + complement
  return {checked_add(P, -checked_mul(Q, shift_)), Q};
}

std::array<std::int64_t, 2> Peripheral::homology_class(const BoundaryPath& path) const {
  if (!is_closed_path(*tri_, path)) fail(ErrorKind::Argument, "boundary path is not closed");
  return homology_class(crossing_vector(path));
}

}  // namespace bsurf
