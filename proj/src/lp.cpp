#include "bridgesurf/lp.hpp"

#include "bridgesurf/error.hpp"

namespace bsurf {

namespace {

struct Tableau {
  // rows x (cols + 1); last column is the right-hand side.
  std::vector<std::vector<Rational>> rows;
  std::vector<int> basis;
  int cols = 0;

  void pivot(int r, int c) {
    Rational p = rows[r][c];
    for (auto& v : rows[r]) v /= p;
    for (std::size_t i = 0; i < rows.size(); ++i) {
      if (int(i) == r || rows[i][c] == 0) continue;
      Rational f = rows[i][c];
      for (int j = 0; j <= cols; ++j)
        if (rows[r][j] != 0) rows[i][j] -= f * rows[r][j];
    }
    basis[r] = c;
  }

  // Reduced costs of `cost` restricted to columns < limit; returns false when unbounded.
  bool optimize(const std::vector<Rational>& cost, int limit) {
    for (;;) {
      int enter = -1;
      for (int j = 0; j < limit && enter < 0; ++j) {
        Rational d = cost[j];
        for (std::size_t i = 0; i < rows.size(); ++i)
          if (rows[i][j] != 0) d -= cost[basis[i]] * rows[i][j];
        if (d < 0) enter = j;
      }
      if (enter < 0) return true;
      int leave = -1;
      Rational best;
      for (std::size_t i = 0; i < rows.size(); ++i) {
        if (rows[i][enter] <= 0) continue;
        Rational ratio = rows[i][cols] / rows[i][enter];
        if (leave < 0 || ratio < best || (ratio == best && basis[i] < basis[leave])) {
          leave = int(i);
          best = ratio;
        }
      }
      if (leave < 0) return false;
      pivot(leave, enter);
    }
  }
};

}  // namespace

LpResult lp_minimize(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                     const std::vector<Rational>& c) {
  const int m = int(A.size());
  const int n = int(c.size());
  if (int(b.size()) != m) fail(ErrorKind::Argument, "lp: row/rhs mismatch");
  for (const auto& row : A)
    if (int(row.size()) != n) fail(ErrorKind::Argument, "lp: ragged matrix");

  Tableau t;
  t.cols = n + m;
  t.rows.assign(m, std::vector<Rational>(n + m + 1));
  t.basis.resize(m);
  for (int i = 0; i < m; ++i) {
    int sign = b[i] < 0 ? -1 : 1;
    for (int j = 0; j < n; ++j) t.rows[i][j] = sign * A[i][j];
    t.rows[i][n + i] = 1;
    t.rows[i][n + m] = sign * b[i];
    t.basis[i] = n + i;
  }

  std::vector<Rational> phase1(n + m);
  for (int j = n; j < n + m; ++j) phase1[j] = 1;
  t.optimize(phase1, n + m);
  Rational infeas;
  for (int i = 0; i < m; ++i)
    if (t.basis[i] >= n) infeas += t.rows[i][n + m];
  LpResult out;
  if (infeas != 0) return out;

  // Drive artificials out of the basis; drop redundant rows.
  for (int i = 0; i < int(t.rows.size());) {
    if (t.basis[i] < n) {
      ++i;
      continue;
    }
    int col = -1;
    for (int j = 0; j < n && col < 0; ++j)
      if (t.rows[i][j] != 0) col = j;
    if (col >= 0) {
      t.pivot(i, col);
      ++i;
    } else {
      t.rows.erase(t.rows.begin() + i);
      t.basis.erase(t.basis.begin() + i);
    }
  }

  std::vector<Rational> cost(n + m);
  for (int j = 0; j < n; ++j) cost[j] = c[j];
  if (!t.optimize(cost, n)) {
    out.status = LpResult::Status::Unbounded;
    return out;
  }
  out.status = LpResult::Status::Optimal;
  out.x.assign(n, Rational(0));
  for (std::size_t i = 0; i < t.rows.size(); ++i) out.x[t.basis[i]] = t.rows[i][n + m];
  for (int j = 0; j < n; ++j) out.value += c[j] * out.x[j];
  return out;
}

}  // namespace bsurf
