#include "bridgesurf/surfaces.hpp"

#include "bridgesurf/checked.hpp"
#include "bridgesurf/error.hpp"
#include "bridgesurf/tetmodel.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace bsurf {
namespace {

// Per tetrahedron, sum of x * (per-disc quantity).
template <class F>
std::vector<std::int64_t> per_tet(const SurfaceSetting& s, const SolutionVector& v, F quantity) {
  std::vector<std::int64_t> out(s.tri.size(), 0);
  for (auto [i, x] : v) {
    const auto& var = s.sys.variables.at(i);
    out[var.tet] = checked_add(out[var.tet], checked_mul(x, quantity(s.universe[var.tet][var.disc])));
  }
  return out;
}

struct CellCounts {
  std::int64_t discs = 0, hex = 0, tri = 0, interior = 0, boundary = 0;
  std::int64_t euler() const { return interior + boundary - hex - tri + discs; }
};

CellCounts cell_counts(const SurfaceSetting& s, const SolutionVector& v) {
  const auto& tri = s.tri;
  CellCounts c;
  for (auto [i, x] : v) c.discs = checked_add(c.discs, x);
  for (int fc = 0; fc < tri.face_class_count(); ++fc) {
    auto [t, face] = tri.face_members(fc)[0];
    auto arcs = per_tet(s, v, [face = face](const DiscType& d) {
      std::int64_t k = 0;
      for (int m : d.counts[face]) k += m;
      return k;
    });
    c.hex = checked_add(c.hex, arcs[t]);
  }
  for (auto x : per_tet(s, v, [](const DiscType& d) { return std::int64_t(d.triangle_arcs()); })) c.tri = checked_add(c.tri, x);
  for (int ec = 0; ec < tri.edge_class_count(); ++ec) {
    auto slot = tri.edge_members(ec)[0];
    auto pts = per_tet(s, v, [e = slot.edge](const DiscType& d) { return std::int64_t(d.interior_mult[e]); });
    c.interior = checked_add(c.interior, pts[slot.tet]);
  }
  for (int bc = 0; bc < tri.boundary_edge_count(); ++bc) {
    auto slot = tri.boundary_edge_slots(bc)[0];
    int e = tet::boundary_edge(slot.vertex, slot.face) - tet::kInteriorEdges;
    auto pts = per_tet(s, v, [e](const DiscType& d) { return std::int64_t(d.boundary_mult[e]); });
    c.boundary = checked_add(c.boundary, pts[slot.tet]);
  }
  return c;
}

std::array<int, 2> others2(int v, int f) {
  std::array<int, 2> out{};
  int k = 0;
  for (int i = 0; i < 4; ++i)
    if (i != v && i != f) out[k++] = i;
  return out;
}

}  // namespace

const DiscType& SurfaceSetting::disc(int variable) const {
  const auto& var = sys.variables.at(variable);
  return universe.at(var.tet).at(var.disc);
}

std::int64_t euler_characteristic(const SurfaceSetting& s, const SolutionVector& v) { return cell_counts(s, v).euler(); }

std::int64_t boundary_degree(const SurfaceSetting& s, const SolutionVector& v) {
  std::int64_t b = 0;
  for (auto [i, x] : v) b = checked_add(b, checked_mul(x, s.disc(i).boundary_degree()));
  return b;
}

std::optional<AssembledSurface> assemble(const SurfaceSetting& s, const SolutionVector& v) {
  if (!is_solution(s.sys, v)) fail(ErrorKind::Precondition, "vector does not satisfy the matching equations");
  const auto& tri = s.tri;
  const int n = tri.size();
  std::vector<FaceCounts> counts(n, empty_face_counts());
  std::vector<std::map<Curve, std::int64_t>> wanted(n);
  for (auto [i, x] : v) {
    const auto& var = s.sys.variables[i];
    const DiscType& d = s.universe[var.tet][var.disc];
    if (x > (1 << 20)) fail(ErrorKind::Invalid, "coefficient too large to assemble");
    add_counts(counts[var.tet], d.curve, int(x));
    wanted[var.tet][d.curve] += x;
  }
  std::vector<TetArrangement> arr;
  for (int t = 0; t < n; ++t) {
    auto a = arrange(counts[t]);
    if (!a) return std::nullopt;
    std::map<Curve, std::int64_t> got;
    for (const auto& c : a->curves) ++got[canonical_curve(c.arcs)];
    if (got != wanted[t]) return std::nullopt;
    arr.push_back(std::move(*a));
  }

  AssembledSurface out;
  out.vector = v;
  CellCounts c = cell_counts(s, v);
  // The arrangements must see the same number of points from every slot.
  for (int ec = 0; ec < tri.edge_class_count(); ++ec)
    for (const auto& m : tri.edge_members(ec))
      if (arr[m.tet].edge_points[m.edge] != arr[tri.edge_members(ec)[0].tet].edge_points[tri.edge_members(ec)[0].edge])
        fail(ErrorKind::Invalid, "edge point counts disagree around an edge");
  out.discs = c.discs;
  out.hexagon_arcs = c.hex;
  out.triangle_arcs = c.tri;
  out.interior_points = c.interior;
  out.boundary_points = c.boundary;
  out.euler = c.euler();

  // Triangle-arc endpoints: (edge, position) -> (curve, arc).
  std::vector<std::map<std::array<int, 2>, std::array<int, 2>>> ends(n);
  for (int t = 0; t < n; ++t)
    for (int ci = 0; ci < int(arr[t].curves.size()); ++ci) {
      const auto& tc = arr[t].curves[ci];
      const int len = int(tc.arcs.size());
      for (int i = 0; i < len; ++i) {
        if (tet::is_hexagon(tc.arcs[i].face)) continue;
        ends[t][tc.exits[i]] = {ci, i};
        ends[t][tc.exits[(i + len - 1) % len]] = {ci, i};
      }
    }
  std::set<std::array<int, 3>> visited;
  for (int t0 = 0; t0 < n; ++t0)
    for (const auto& [pt0, arc0] : ends[t0]) {
      if (visited.count({t0, arc0[0], arc0[1]})) continue;
      BoundaryPath path;
      int t = t0;
      std::array<int, 2> arc = arc0;
      std::array<int, 2> entry = pt0;
      for (;;) {
        visited.insert({t, arc[0], arc[1]});
        const auto& tc = arr[t].curves[arc[0]];
        const int len = int(tc.arcs.size());
        std::array<int, 2> a = tc.exits[arc[1]], b = tc.exits[(arc[1] + len - 1) % len];
        std::array<int, 2> exit = a == entry ? b : a;
        auto [v, f] = tet::boundary_edge_slot(exit[0]);
        path.push_back({t, v, f});
        const Gluing& g = tri.glue(t, f);
        const int nv = g.perm[v], nf = g.perm[f];
        const int ne = tet::boundary_edge(nv, nf);
        auto [x, y] = others2(v, f);
        (void)y;
        const bool same = tet::edge_corners(ne)[0] == tet::corner(nv, g.perm[x]);
        const int m = arr[t].edge_points[exit[0]];
        std::array<int, 2> next_pt{ne, same ? exit[1] : m - 1 - exit[1]};
        t = g.tet;
        auto it = ends[t].find(next_pt);
        if (it == ends[t].end()) fail(ErrorKind::Invalid, "boundary arcs do not match across a boundary edge");
        arc = it->second;
        entry = next_pt;
        if (t == t0 && arc == arc0) break;
      }
      out.boundary.push_back(std::move(path));
    }
  return out;
}

std::vector<std::array<std::int64_t, 2>> boundary_classes(const Peripheral& per, const AssembledSurface& surf) {
  std::vector<std::array<std::int64_t, 2>> out;
  for (const auto& p : surf.boundary) {
    auto c = per.homology_class(p);
    if (c[1] < 0 || (c[1] == 0 && c[0] < 0)) c = {-c[0], -c[1]};
    out.push_back(c);
  }
  return out;
}

bool is_boundary_parallel_torus(const AssembledSurface& surf) { return surf.closed() && surf.euler == 0; }

Rational surface_area(const SurfaceSetting& s, const AngleStructure& a, const SolutionVector& v) {
  Rational total = 0;
  for (auto [i, x] : v) total += Rational(x) * disc_area(a, s.sys.variables[i].tet, s.disc(i));
  return total;
}

SolutionVector link_vector(const SurfaceSetting& s) {
  SolutionVector out;
  std::vector<int> found(s.tri.size(), 0);
  for (int i = 0; i < s.sys.dimension; ++i) {
    const DiscType& d = s.disc(i);
    if (d.boundary_degree() == 0 && d.interior_degree() == 3) {
      out.push_back({i, 1});
      ++found[s.sys.variables[i].tet];
    }
  }
  for (int f : found)
    if (f != 4) fail(ErrorKind::Argument, "disc universe lacks the truncation-parallel triangles");
  return out;
}

SolutionVector add_link_torus(const SolutionVector& v, const SolutionVector& link, std::int64_t k) {
  if (k < 0) fail(ErrorKind::Argument, "negative torus multiple");
  if (k == 0) return v;
  return add_scaled(v, link, k);
}

std::array<std::int64_t, 4> class_counts(const SurfaceSetting& s, const SolutionVector& v) {
  std::array<std::int64_t, 4> out{};
  for (auto [i, x] : v) out[int(s.disc(i).cls.kind)] += x;
  return out;
}

CoefficientCaps coefficient_caps(const SurfaceSetting& s, const HilbertBasis& basis, const CandidateParameters& p) {
  if (basis.truncated) fail(ErrorKind::Incomplete, "basis was truncated by the coordinate cap");
  if (p.n < 0 || p.b < 0) fail(ErrorKind::Argument, "candidate parameters must be nonnegative");
  const std::size_t k = basis.elements.size();
  CoefficientCaps out;
  out.caps.assign(k, 0);
  out.kinds.assign(k, CapKind::BoundaryTouching);
  out.link_torus.assign(k, false);
  std::vector<std::int64_t> bdeg(k), chi(k);
  for (std::size_t i = 0; i < k; ++i) {
    bdeg[i] = boundary_degree(s, basis.elements[i]);
    chi[i] = euler_characteristic(s, basis.elements[i]);
  }
  // X: exhaustive over boundary-touching tuples within the budget.
  std::vector<std::size_t> touching;
  for (std::size_t i = 0; i < k; ++i)
    if (bdeg[i] > 0) touching.push_back(i);
  std::function<void(std::size_t, std::int64_t, std::int64_t)> walk = [&](std::size_t pos, std::int64_t used, std::int64_t x) {
    out.x = std::max(out.x, x < 0 ? -x : x);
    for (std::size_t j = pos; j < touching.size(); ++j) {
      const std::size_t i = touching[j];
      for (std::int64_t a = 1; used + a * bdeg[i] <= p.b; ++a) walk(j + 1, used + a * bdeg[i], x + a * chi[i]);
    }
  };
  walk(0, 0, 0);
  for (std::size_t i = 0; i < k; ++i) {
    if (bdeg[i] > 0) {
      out.caps[i] = p.b / bdeg[i];
    } else if (chi[i] < 0) {
      out.kinds[i] = CapKind::ClosedNegative;
      out.caps[i] = p.n + out.x;
    } else {
      out.kinds[i] = CapKind::ClosedNonNegative;
      out.caps[i] = 4 * std::int64_t(p.b) + 4;
      auto cls = class_counts(s, basis.elements[i]);
      out.link_torus[i] = chi[i] == 0 && cls[1] == 0 && cls[2] == 0 && cls[3] == 0;
    }
  }
  return out;
}

void candidate_vectors(const SurfaceSetting& s, const HilbertBasis& basis, const CoefficientCaps& caps,
                       const CandidateParameters& p, const std::vector<std::vector<int>>* conflicts,
                       const std::function<bool(const Candidate&)>& emit) {
  const std::size_t k = basis.elements.size();
  if (caps.caps.size() != k) fail(ErrorKind::Argument, "caps do not match the basis");
  std::vector<std::int64_t> bdeg(k), chi(k);
  for (std::size_t i = 0; i < k; ++i) {
    bdeg[i] = boundary_degree(s, basis.elements[i]);
    chi[i] = euler_characteristic(s, basis.elements[i]);
  }
  auto rank = [&](std::size_t i) { return bdeg[i] > 0 ? 0 : chi[i] >= 0 ? 1 : 2; };
  std::vector<std::size_t> order(k);
  for (std::size_t i = 0; i < k; ++i) order[i] = i;
  std::stable_sort(order.begin(), order.end(), [&](std::size_t a, std::size_t b) { return rank(a) < rank(b); });

  std::vector<std::int64_t> coeff(k, 0);
  bool stop = false;
  std::function<void(std::size_t, SolutionVector, std::int64_t, std::int64_t)> dfs =
      [&](std::size_t pos, SolutionVector v, std::int64_t used, std::int64_t x) {
        if (stop) return;
        if (pos == k) {
          if (v.empty() || x < -p.n) return;
          if (conflicts && !admissible(v, *conflicts)) return;
          auto surf = assemble(s, v);
          if (!surf) return;
          Candidate c{coeff, v, std::move(*surf)};
          if (!emit(c)) stop = true;
          return;
        }
        const std::size_t i = order[pos];
        for (std::int64_t a = 0; a <= caps.caps[i]; ++a) {
          if (used + a * bdeg[i] > p.b) break;
          // past this point only chi < 0 elements remain
          if (rank(i) == 2 && x + a * chi[i] < -p.n) break;
          coeff[i] = a;
          dfs(pos + 1, a ? add_scaled(v, basis.elements[i], a) : v, used + a * bdeg[i], x + a * chi[i]);
          if (stop) break;
        }
        coeff[i] = 0;
      };
  dfs(0, {}, 0, 0);
}

}  // namespace bsurf
