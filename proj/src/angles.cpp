#include "bridgesurf/angles.hpp"

#include "bridgesurf/error.hpp"
#include "bridgesurf/lp.hpp"
#include "bridgesurf/tetmodel.hpp"

#include <algorithm>
#include <functional>

namespace bsurf {

bool AngleStructure::condition4_unverified() const {
  return std::find(flat.begin(), flat.end(), true) != flat.end();
}

const Rational& edge_angle(const AngleStructure& a, int tet, int edge) {
  return a.angles.at(tet)[tet::angle_pair(edge)];
}

namespace {

// How many times pair p of tet t appears around edge class e.
std::vector<std::vector<std::array<int, 3>>> incidence(const IdealTriangulation& tri) {
  std::vector<std::vector<std::array<int, 3>>> inc(tri.edge_class_count(), std::vector<std::array<int, 3>>(tri.size()));
  for (int e = 0; e < tri.edge_class_count(); ++e)
    for (const auto& m : tri.edge_members(e)) ++inc[e][m.tet][tet::angle_pair(m.edge)];
  return inc;
}

// Fixed: pattern for flat tets (pair carrying 1), -1 for free tets. Free tets
// must be strictly positive; returns the structure on success.
std::optional<AngleStructure> solve_pattern(const IdealTriangulation& tri, const std::vector<int>& fixed,
                                            const std::vector<std::vector<std::array<int, 3>>>& inc) {
  const int n = tri.size();
  std::vector<int> free;
  for (int t = 0; t < n; ++t)
    if (fixed[t] < 0) free.push_back(t);

  AngleStructure out;
  out.angles.assign(n, {Rational(0), Rational(0), Rational(0)});
  out.flat.assign(n, false);
  for (int t = 0; t < n; ++t) {
    if (fixed[t] >= 0) {
      out.angles[t][fixed[t]] = 1;
      out.flat[t] = true;
    }
  }
  const int E = tri.edge_class_count();
  std::vector<Rational> rhs(E, Rational(2));
  for (int e = 0; e < E; ++e)
    for (int t = 0; t < n; ++t)
      if (fixed[t] >= 0) rhs[e] -= inc[e][t][fixed[t]];

  if (free.empty()) {
    for (const auto& r : rhs)
      if (r != 0) return std::nullopt;
    return out;
  }

  // Variables: s, then y per (free tet, pair); angle = s + y.
  const int vars = 1 + 3 * int(free.size());
  std::vector<std::vector<Rational>> A;
  std::vector<Rational> b;
  for (std::size_t k = 0; k < free.size(); ++k) {
    std::vector<Rational> row(vars);
    row[0] = 3;
    for (int p = 0; p < 3; ++p) row[1 + 3 * k + p] = 1;
    A.push_back(row);
    b.push_back(1);
  }
  for (int e = 0; e < E; ++e) {
    std::vector<Rational> row(vars);
    for (std::size_t k = 0; k < free.size(); ++k) {
      for (int p = 0; p < 3; ++p) {
        int c = inc[e][free[k]][p];
        row[0] += c;
        row[1 + 3 * k + p] += c;
      }
    }
    A.push_back(row);
    b.push_back(rhs[e]);
  }
  std::vector<Rational> cost(vars);
  cost[0] = -1;
  auto res = lp_minimize(A, b, cost);
  if (res.status != LpResult::Status::Optimal || res.x[0] <= 0) return std::nullopt;
  for (std::size_t k = 0; k < free.size(); ++k)
    for (int p = 0; p < 3; ++p) out.angles[free[k]][p] = res.x[0] + res.x[1 + 3 * k + p];
  return out;
}

}  // namespace

std::optional<AngleStructure> find_angle_structure(const IdealTriangulation& tri, const AngleSearchOptions& opts) {
  const int n = tri.size();
  const auto inc = incidence(tri);
  int budget = opts.allow_flat ? (opts.flat_budget < 0 ? n : std::min(opts.flat_budget, n)) : 0;
  std::vector<int> fixed(n, -1);
  for (int k = 0; k <= budget; ++k) {
    // Subsets of size k in lexicographic order, then pair choices.
    std::vector<int> subset(k);
    for (int i = 0; i < k; ++i) subset[i] = i;
    for (;;) {
      std::vector<int> pairs(k, 0);
      for (;;) {
        std::fill(fixed.begin(), fixed.end(), -1);
        for (int i = 0; i < k; ++i) fixed[subset[i]] = pairs[i];
        if (auto found = solve_pattern(tri, fixed, inc)) return found;
        int i = k - 1;
        while (i >= 0 && pairs[i] == 2) pairs[i--] = 0;
        if (i < 0) break;
        ++pairs[i];
      }
      int i = k - 1;
      while (i >= 0 && subset[i] == n - k + i) --i;
      if (i < 0) break;
      ++subset[i];
      for (int j = i + 1; j < k; ++j) subset[j] = subset[j - 1] + 1;
    }
  }
  return std::nullopt;
}

bool verify_angle_structure(const IdealTriangulation& tri, const AngleStructure& a) {
  const int n = tri.size();
  if (int(a.angles.size()) != n || int(a.flat.size()) != n)
    fail(ErrorKind::Argument, "angle structure does not match the triangulation");
  for (int t = 0; t < n; ++t) {
    Rational sum;
    int zeros = 0, ones = 0;
    for (const auto& x : a.angles[t]) {
      if (x < 0 || x > 1) return false;
      sum += x;
      zeros += x == 0;
      ones += x == 1;
    }
    if (sum != 1) return false;
    if (a.flat[t] ? (ones != 1 || zeros != 2) : (zeros != 0 || ones != 0)) return false;
  }
  for (int e = 0; e < tri.edge_class_count(); ++e) {
    Rational sum;
    for (const auto& m : tri.edge_members(e)) sum += edge_angle(a, m.tet, m.edge);
    if (sum != 2) return false;
  }
  return true;
}

Rational disc_area(const AngleStructure& a, int tet, const std::array<int, 6>& interior_mult, int boundary_crossings) {
  Rational area(-2);
  for (int e = 0; e < 6; ++e)
    if (interior_mult[e] > 0) area += interior_mult[e] * (1 - edge_angle(a, tet, e));
  area += Rational(boundary_crossings, 2);
  return area;
}

}  // namespace bsurf
