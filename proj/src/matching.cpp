#include "bridgesurf/matching.hpp"

#include "bridgesurf/checked.hpp"
#include "bridgesurf/error.hpp"
#include "bridgesurf/lp.hpp"
#include "bridgesurf/tetmodel.hpp"

#include <algorithm>
#include <atomic>
#include <functional>
#include <limits>
#include <map>
#include <set>
#include <thread>

namespace bsurf {

namespace {

// Side of face g carrying side k of face f under the gluing of (tet, f).
int glued_side(const IdealTriangulation& tri, int tet_index, int f, int k) {
  const Gluing& g = tri.glue(tet_index, f);
  const int target = g.perm[f];
  const int edge = tet::face_side(f, k);
  int image;
  if (tet::is_interior_edge(edge)) {
    auto [a, b] = tet::interior_edge_ends(edge);
    image = tet::interior_edge(g.perm[a], g.perm[b]);
  } else {
    auto [v, face] = tet::boundary_edge_slot(edge);
    (void)face;
    image = tet::boundary_edge(g.perm[v], target);
  }
  return tet::side_of(target, image);
}

}  // namespace

std::vector<SparseRow> MatchingSystem::columns() const {
  std::vector<SparseRow> cols(dimension);
  for (std::size_t r = 0; r < rows.size(); ++r)
    for (auto [j, a] : rows[r]) cols[j].push_back({int(r), a});
  return cols;
}

int glued_arc_type(const IdealTriangulation& tri, int tet_index, int face, int type) {
  const ArcType& t = arc_type(face, type);
  const int target = tri.glue(tet_index, face).perm[face];
  int a = glued_side(tri, tet_index, face, t.side_a);
  if (!t.returning()) return arc_type_id(target, a, glued_side(tri, tet_index, face, t.side_b));
  // Returning arc: the cut-off run keeps its length when the side map keeps
  // the cyclic order, and turns into the complementary run otherwise.
  int next = glued_side(tri, tet_index, face, (t.side_a + 1) % 6);
  bool keeps = next == (a + 1) % 6;
  int sep = keeps ? t.separation : 5 - t.separation;
  for (const auto& c : arc_types(FaceKind::Hexagon))
    if (c.returning() && c.side_a == a && c.separation == sep) return c.id;
  fail(ErrorKind::Invalid, "no matching returning arc type");
}

MatchingSystem build_system(const IdealTriangulation& tri, const std::vector<std::vector<DiscType>>& universe) {
  if (int(universe.size()) != tri.size()) fail(ErrorKind::Argument, "disc universe references tetrahedra outside the triangulation");
  MatchingSystem sys;
  for (int t = 0; t < tri.size(); ++t)
    for (std::size_t d = 0; d < universe[t].size(); ++d) {
      sys.variables.push_back({t, int(d)});
      sys.weight.push_back(universe[t][d].boundary_degree());
    }
  sys.dimension = int(sys.variables.size());
  for (int fc = 0; fc < tri.face_class_count(); ++fc) {
    const auto& m = tri.face_members(fc);
    const int t0 = m[0][0], f0 = m[0][1], t1 = m[1][0], f1 = m[1][1];
    std::vector<std::map<int, std::int64_t>> acc(kHexArcTypes);
    for (int j = 0; j < sys.dimension; ++j) {
      const auto& var = sys.variables[j];
      const DiscType& d = universe[var.tet][var.disc];
      if (var.tet == t0)
        for (int ty = 0; ty < kHexArcTypes; ++ty)
          if (d.counts[f0][ty]) acc[ty][j] += d.counts[f0][ty];
      if (var.tet == t1)
        for (int ty = 0; ty < kHexArcTypes; ++ty)
          if (d.counts[f1][ty]) acc[glued_arc_type(tri, t1, f1, ty)][j] -= d.counts[f1][ty];
    }
    for (int ty = 0; ty < kHexArcTypes; ++ty) {
      SparseRow row;
      for (auto [j, a] : acc[ty])
        if (a != 0) row.push_back({j, a});
      if (row.empty()) continue;
      sys.rows.push_back(std::move(row));
      sys.row_labels.push_back({fc, ty});
    }
  }
  return sys;
}

MatchingSystem make_system(int dimension, const std::vector<std::vector<std::int64_t>>& dense_rows) {
  MatchingSystem sys;
  sys.dimension = dimension;
  sys.weight.assign(dimension, 0);
  for (int j = 0; j < dimension; ++j) sys.variables.push_back({0, j});
  for (std::size_t r = 0; r < dense_rows.size(); ++r) {
    if (int(dense_rows[r].size()) != dimension) fail(ErrorKind::Argument, "dimension mismatch");
    SparseRow row;
    for (int j = 0; j < dimension; ++j)
      if (dense_rows[r][j] != 0) row.push_back({j, dense_rows[r][j]});
    if (row.empty()) continue;
    sys.rows.push_back(std::move(row));
    sys.row_labels.push_back({-1, int(r)});
  }
  return sys;
}

SolutionVector sparse(const std::vector<std::int64_t>& d) {
  SolutionVector out;
  for (std::size_t i = 0; i < d.size(); ++i)
    if (d[i] != 0) out.push_back({int(i), d[i]});
  return out;
}

std::vector<std::int64_t> dense(const SolutionVector& v, int dimension) {
  std::vector<std::int64_t> out(dimension, 0);
  for (auto [i, x] : v) {
    if (i < 0 || i >= dimension) fail(ErrorKind::Argument, "dimension mismatch");
    out[i] = x;
  }
  return out;
}

SolutionVector add_scaled(const SolutionVector& a, const SolutionVector& b, std::int64_t k) {
  SolutionVector out;
  std::size_t i = 0, j = 0;
  while (i < a.size() || j < b.size()) {
    if (j == b.size() || (i < a.size() && a[i].first < b[j].first)) {
      out.push_back(a[i++]);
    } else if (i == a.size() || b[j].first < a[i].first) {
      std::int64_t x = checked_mul(k, b[j].second);
      if (x != 0) out.push_back({b[j].first, x});
      ++j;
    } else {
      std::int64_t x = checked_add(a[i].second, checked_mul(k, b[j].second));
      if (x != 0) out.push_back({a[i].first, x});
      ++i;
      ++j;
    }
  }
  return out;
}

bool dominates(const SolutionVector& big, const SolutionVector& small) {
  std::size_t i = 0;
  for (auto [idx, x] : small) {
    while (i < big.size() && big[i].first < idx) ++i;
    if (i == big.size() || big[i].first != idx || big[i].second < x) return false;
  }
  return true;
}

namespace {

std::vector<std::int64_t> image(const MatchingSystem& sys, const std::vector<SparseRow>& cols, const SolutionVector& v) {
  std::vector<std::int64_t> out(sys.rows.size(), 0);
  for (auto [j, x] : v) {
    if (j < 0 || j >= sys.dimension) fail(ErrorKind::Argument, "dimension mismatch");
    for (auto [r, a] : cols[j]) out[r] = checked_add(out[r], checked_mul(a, x));
  }
  return out;
}

}  // namespace

bool is_solution(const MatchingSystem& sys, const SolutionVector& v) {
  for (auto [j, x] : v) {
    if (j < 0 || j >= sys.dimension) fail(ErrorKind::Argument, "dimension mismatch");
    if (x < 0) return false;
  }
  for (const auto& row : sys.rows) {
    std::int64_t s = 0;
    std::size_t i = 0;
    for (auto [j, a] : row) {
      while (i < v.size() && v[i].first < j) ++i;
      if (i < v.size() && v[i].first == j) s = checked_add(s, checked_mul(a, v[i].second));
    }
    if (s != 0) return false;
  }
  return true;
}

std::int64_t weight_of(const MatchingSystem& sys, const SolutionVector& v) {
  std::int64_t s = 0;
  for (auto [j, x] : v) s = checked_add(s, checked_mul(sys.weight.at(j), x));
  return s;
}

namespace {

// Completion from every unit vector (root < 0) or from one unit vector with
// nothing frozen; the latter finds exactly the basis elements using `root`.
// Vectors dominating an element of `reducers` are pruned as well.
HilbertBasis completion(const MatchingSystem& sys, const HilbertOptions& opts, int root,
                        const std::vector<SolutionVector>& reducers = {}) {
  const int n = sys.dimension;
  const auto cols = sys.columns();
  HilbertBasis out;
  // Basis elements bucketed by their lowest support index.
  std::vector<std::vector<int>> by_first(n);
  auto reducible = [&](const SolutionVector& q) {
    for (auto [i, x] : q)
      for (int b : by_first[i])
        if (dominates(q, out.elements[b])) return true;
    for (const auto& r : reducers)
      if (dominates(q, r)) return true;
    return false;
  };

  // Frozen components: every index below `below` plus `extra`.
  struct Frozen {
    int below = 0;
    std::vector<int> extra;
    bool contains(int i) const { return i < below || std::binary_search(extra.begin(), extra.end(), i); }
  };
  // Same vector reached twice: exploring with the smaller frozen set covers both.
  auto meet = [](const Frozen& a, const Frozen& b) {
    const Frozen& lo = a.below <= b.below ? a : b;
    const Frozen& hi = a.below <= b.below ? b : a;
    Frozen out;
    out.below = lo.below;
    for (int i : lo.extra)
      if (i < hi.below || std::binary_search(hi.extra.begin(), hi.extra.end(), i)) out.extra.push_back(i);
    return out;
  };

  std::vector<std::pair<SolutionVector, Frozen>> level;
  for (int j = 0; j < n; ++j) {
    if (root >= 0 && j != root) continue;
    if (!opts.weight_budget || sys.weight[j] <= *opts.weight_budget) level.push_back({{{j, 1}}, Frozen{root < 0 ? j : 0, {}}});
  }

  const int threads = std::max(1, opts.threads);
  std::atomic<bool> truncated{false};
  while (!level.empty()) {
    std::vector<std::pair<SolutionVector, Frozen>> pending;
    for (auto& node : level) {
      if (is_solution(sys, node.first)) {
        if (reducible(node.first)) continue;
        by_first[node.first.front().first].push_back(int(out.elements.size()));
        out.elements.push_back(std::move(node.first));
      } else {
        pending.push_back(std::move(node));
      }
    }
    std::vector<std::vector<std::pair<SolutionVector, Frozen>>> found(threads);
    std::atomic<std::size_t> next{0};
    auto worker = [&](int tid) {
      std::vector<std::int64_t> w(n, 0);
      std::vector<int> touched;
      std::vector<int> frozen_now;
      auto expand = [&](const SolutionVector& p, const Frozen& fz, int j, std::int64_t base_weight,
                        std::vector<std::pair<SolutionVector, Frozen>>& sink) {
        if (opts.weight_budget && base_weight + sys.weight[j] > *opts.weight_budget) return;
        SolutionVector q = add_scaled(p, {{j, 1}});
        if (opts.coord_cap) {
          bool over = false;
          for (auto [i, x] : q) over |= x > *opts.coord_cap;
          if (over) {
            truncated = true;
            return;
          }
        }
        if (opts.conflicts) {
          const auto& bad = (*opts.conflicts)[j];
          bool clash = false;
          for (auto [i, x] : p) clash |= std::binary_search(bad.begin(), bad.end(), i);
          if (clash) return;
        }
        if (reducible(q)) return;
        Frozen child{fz.below, fz.extra};
        for (int i : frozen_now)
          if (i >= child.below) child.extra.push_back(i);
        std::sort(child.extra.begin(), child.extra.end());
        sink.push_back({std::move(q), std::move(child)});
      };
      for (std::size_t k = next++; k < pending.size(); k = next++) {
        const SolutionVector& p = pending[k].first;
        const Frozen& fz = pending[k].second;
        auto ap = image(sys, cols, p);
        for (std::size_t r = 0; r < ap.size(); ++r) {
          if (ap[r] == 0) continue;
          for (auto [j, a] : sys.rows[r]) {
            if (w[j] == 0) touched.push_back(j);
            w[j] = checked_add(w[j], checked_mul(ap[r], a));
          }
        }
        const std::int64_t base_weight = weight_of(sys, p);
        std::sort(touched.begin(), touched.end());
        touched.erase(std::unique(touched.begin(), touched.end()), touched.end());
        frozen_now.clear();
        for (int j : touched) {
          if (w[j] >= 0 || fz.contains(j)) continue;
          expand(p, fz, j, base_weight, found[tid]);
          // later siblings never raise j again
          frozen_now.push_back(j);
        }
        for (int j : touched) w[j] = 0;
        touched.clear();
      }
    };
    if (threads == 1) {
      worker(0);
    } else {
      std::vector<std::thread> pool;
      for (int i = 0; i < threads; ++i) pool.emplace_back(worker, i);
      for (auto& th : pool) th.join();
    }
    std::map<SolutionVector, Frozen> merged;
    for (auto& f : found)
      for (auto& [q, fz] : f) {
        auto [it, fresh] = merged.try_emplace(std::move(q), fz);
        if (!fresh) it->second = meet(it->second, fz);
      }
    level.assign(std::make_move_iterator(merged.begin()), std::make_move_iterator(merged.end()));
  }
  out.truncated = truncated;
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

// Restriction to the variables `keep` (renumbered in order), plus one extra
// column of weight 1 when given.
MatchingSystem restrict_system(const MatchingSystem& sys, const std::vector<int>& keep, const std::vector<std::int64_t>* extra) {
  std::vector<int> index(sys.dimension, -1);
  for (int k = 0; k < int(keep.size()); ++k) index[keep[k]] = k;
  MatchingSystem out;
  out.dimension = int(keep.size()) + (extra ? 1 : 0);
  for (int j : keep) {
    out.variables.push_back(sys.variables[j]);
    out.weight.push_back(0);
  }
  if (extra) {
    out.variables.push_back({-1, -1});
    out.weight.push_back(1);
  }
  for (std::size_t r = 0; r < sys.rows.size(); ++r) {
    SparseRow row;
    for (auto [j, a] : sys.rows[r])
      if (index[j] >= 0) row.push_back({index[j], a});
    if (extra && (*extra)[r] != 0) row.push_back({int(keep.size()), (*extra)[r]});
    if (row.empty()) continue;
    out.rows.push_back(std::move(row));
    out.row_labels.push_back(sys.row_labels.empty() ? std::array<int, 2>{-1, -1} : sys.row_labels[r]);
  }
  return out;
}

std::vector<std::vector<int>> restrict_conflicts(const std::vector<std::vector<int>>& conflicts, const std::vector<int>& keep, int extra) {
  std::vector<int> index(conflicts.size(), -1);
  for (int k = 0; k < int(keep.size()); ++k) index[keep[k]] = k;
  std::vector<std::vector<int>> out(keep.size() + extra);
  for (int k = 0; k < int(keep.size()); ++k)
    for (int j : conflicts[keep[k]])
      if (index[j] >= 0) out[k].push_back(index[j]);
  return out;
}

SolutionVector lift(const SolutionVector& v, const std::vector<int>& keep) {
  SolutionVector out;
  for (auto [k, x] : v)
    if (k < int(keep.size())) out.push_back({keep[k], x});
  std::sort(out.begin(), out.end());
  return out;
}

// Weight-bounded basis through the positive-weight part. A basis element is a
// multiset of positive-weight variables within the budget plus a minimal
// completion by weight-zero variables; it is fundamental iff it dominates no
// lighter fundamental element.
HilbertBasis split_by_weight(const MatchingSystem& sys, const HilbertOptions& opts) {
  const int n = sys.dimension;
  const std::int64_t budget = *opts.weight_budget;
  std::vector<int> closed_vars, heavy;
  for (int j = 0; j < n; ++j) {
    if (sys.weight[j] < 0) fail(ErrorKind::Argument, "negative variable weight");
    (sys.weight[j] == 0 ? closed_vars : heavy).push_back(j);
  }
  const auto cols = sys.columns();
  HilbertBasis out;
  std::atomic<bool> truncated{false};

  {
    auto sub = restrict_system(sys, closed_vars, nullptr);
    HilbertOptions o = opts;
    o.weight_budget.reset();
    std::vector<std::vector<int>> conf;
    if (opts.conflicts) {
      conf = restrict_conflicts(*opts.conflicts, closed_vars, 0);
      o.conflicts = &conf;
    }
    auto hb = completion(sub, o, -1);
    truncated = hb.truncated;
    for (auto& e : hb.elements) out.elements.push_back(lift(e, closed_vars));

  }

  const std::vector<SolutionVector> closed_basis = out.elements;
  std::vector<SolutionVector> multisets;
  SolutionVector cur;
  std::function<void(std::size_t, std::int64_t)> grow = [&](std::size_t start, std::int64_t w) {
    for (std::size_t h = start; h < heavy.size(); ++h) {
      const int j = heavy[h];
      if (w + sys.weight[j] > budget) continue;
      const bool repeat = !cur.empty() && cur.back().first == j;
      if (!repeat && opts.conflicts) {
        const auto& bad = (*opts.conflicts)[j];
        bool clash = false;
        for (auto [i, x] : cur) clash |= std::binary_search(bad.begin(), bad.end(), i);
        if (clash) continue;
      }
      if (repeat && opts.coord_cap && cur.back().second >= *opts.coord_cap) {
        truncated = true;
        continue;
      }
      if (repeat)
        ++cur.back().second;
      else
        cur.push_back({j, 1});
      multisets.push_back(cur);
      grow(h, w + sys.weight[j]);
      if (--cur.back().second == 0) cur.pop_back();
    }
  };
  grow(0, 0);

  std::vector<std::vector<SolutionVector>> found(multisets.size());
  std::atomic<std::size_t> next{0};
  auto worker = [&] {
    for (std::size_t k = next++; k < multisets.size(); k = next++) {
      const SolutionVector& m = multisets[k];
      auto r = image(sys, cols, m);
      bool zero = std::all_of(r.begin(), r.end(), [](std::int64_t x) { return x == 0; });
      if (zero) {
        found[k].push_back(m);
        continue;
      }
      std::vector<int> keep;
      for (int j : closed_vars) {
        bool clash = false;
        if (opts.conflicts)
          for (auto [i, x] : m) clash |= std::binary_search((*opts.conflicts)[j].begin(), (*opts.conflicts)[j].end(), i);
        if (!clash) keep.push_back(j);
      }
      // Residual rows that no usable closed variable meets cannot balance.
      std::vector<bool> reachable(sys.rows.size(), false);
      for (int j : keep)
        for (auto [row, a] : cols[j]) reachable[row] = true;
      bool feasible = true;
      for (std::size_t row = 0; row < r.size(); ++row) feasible &= r[row] == 0 || reachable[row];
      if (!feasible) continue;
      // Rational infeasibility is cheap to detect; completion would have to
      // exhaust its whole search to see it.
      {
        std::vector<std::vector<Rational>> a;
        std::vector<Rational> rhs;
        for (std::size_t row = 0; row < r.size(); ++row) {
          if (!reachable[row]) continue;
          std::vector<Rational> line(keep.size(), 0);
          bool any = false;
          for (std::size_t c = 0; c < keep.size(); ++c)
            for (auto [rr, x] : cols[keep[c]])
              if (rr == int(row)) {
                line[c] = x;
                any = true;
              }
          if (!any) continue;
          a.push_back(std::move(line));
          rhs.push_back(-r[row]);
        }
        if (lp_minimize(a, rhs, std::vector<Rational>(keep.size(), 0)).status == LpResult::Status::Infeasible) continue;
      }
      auto sub = restrict_system(sys, keep, &r);
      HilbertOptions o;
      o.coord_cap = opts.coord_cap;
      o.weight_budget = 1;
      std::vector<std::vector<int>> conf;
      if (opts.conflicts) {
        conf = restrict_conflicts(*opts.conflicts, keep, 1);
        o.conflicts = &conf;
      }
      std::vector<int> index(n, -1);
      for (int c = 0; c < int(keep.size()); ++c) index[keep[c]] = c;
      std::vector<SolutionVector> reducers;
      for (const auto& e : closed_basis) {
        SolutionVector local;
        bool inside = true;
        for (auto [i, x] : e) {
          inside &= index[i] >= 0;
          if (inside) local.push_back({index[i], x});
        }
        if (inside) reducers.push_back(std::move(local));
      }
      auto hb = completion(sub, o, int(keep.size()), reducers);
      if (hb.truncated) truncated = true;
      for (auto& e : hb.elements) found[k].push_back(add_scaled(m, lift(e, keep)));
    }
  };
  const int threads = std::max(1, opts.threads);
  if (threads == 1 || multisets.size() < 2) {
    worker();
  } else {
    std::vector<std::thread> pool;
    for (int i = 0; i < threads; ++i) pool.emplace_back(worker);
    for (auto& th : pool) th.join();
  }

  std::vector<std::pair<std::int64_t, SolutionVector>> cands;
  for (auto& f : found)
    for (auto& v : f) cands.push_back({weight_of(sys, v), std::move(v)});
  std::sort(cands.begin(), cands.end());
  std::vector<std::vector<int>> by_first(n);
  std::vector<SolutionVector> kept;
  for (auto& [w, v] : cands) {
    bool reducible = false;
    for (auto [i, x] : v) {
      for (int b : by_first[i])
        if (dominates(v, kept[b])) {
          reducible = true;
          break;
        }
      if (reducible) break;
    }
    if (reducible) continue;
    by_first[v.front().first].push_back(int(kept.size()));
    kept.push_back(v);
  }
  for (auto& v : kept) out.elements.push_back(std::move(v));
  out.truncated = truncated;
  std::sort(out.elements.begin(), out.elements.end());
  return out;
}

}  // namespace

HilbertBasis fundamental_solutions(const MatchingSystem& sys, const HilbertOptions& opts) {
  const bool split = opts.strategy == HilbertStrategy::Split || (opts.strategy == HilbertStrategy::Auto && opts.weight_budget);
  if (split) {
    if (!opts.weight_budget) fail(ErrorKind::Argument, "split strategy needs a weight budget");
    return split_by_weight(sys, opts);
  }
  return completion(sys, opts, -1);
}

std::vector<std::vector<int>> disc_conflicts(const MatchingSystem& sys, const std::vector<std::vector<DiscType>>& universe) {
  std::vector<std::vector<int>> out(sys.dimension);
  for (int i = 0; i < sys.dimension; ++i)
    for (int j = i + 1; j < sys.dimension; ++j) {
      const auto& a = sys.variables[i];
      const auto& b = sys.variables[j];
      if (a.tet != b.tet) continue;
      if (!compatible(universe[a.tet][a.disc], universe[b.tet][b.disc])) {
        out[i].push_back(j);
        out[j].push_back(i);
      }
    }
  for (auto& l : out) std::sort(l.begin(), l.end());
  return out;
}

bool admissible(const SolutionVector& v, const std::vector<std::vector<int>>& conflicts) {
  for (auto [i, x] : v)
    for (auto [j, y] : v)
      if (i < j && std::binary_search(conflicts[i].begin(), conflicts[i].end(), j)) return false;
  return true;
}

bool decompose(const MatchingSystem& sys, const SolutionVector& v, const std::vector<SolutionVector>& basis,
               std::vector<std::int64_t>* coeffs) {
  const int n = sys.dimension;
  for (const auto& b : basis) dense(b, n);
  auto residual = dense(v, n);
  for (auto x : residual)
    if (x < 0) return false;
  std::vector<std::int64_t> a(basis.size(), 0);
  std::function<bool(std::size_t)> go = [&](std::size_t i) -> bool {
    if (i == basis.size()) {
      for (auto x : residual)
        if (x != 0) return false;
      return true;
    }
    std::int64_t most = std::numeric_limits<std::int64_t>::max();
    for (auto [j, x] : basis[i]) most = std::min(most, residual[j] / x);
    if (basis[i].empty()) most = 0;
    for (std::int64_t k = most; k >= 0; --k) {
      for (auto [j, x] : basis[i]) residual[j] -= k * x;
      a[i] = k;
      bool ok = go(i + 1);
      for (auto [j, x] : basis[i]) residual[j] += k * x;
      if (ok) return true;
    }
    a[i] = 0;
    return false;
  };
  bool ok = go(0);
  if (ok && coeffs) *coeffs = a;
  return ok;
}

}  // namespace bsurf
