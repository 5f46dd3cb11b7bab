#pragma once

#include <algorithm>
#include <cstdint>
#include <random>
#include <vector>

namespace oracle {

using Dense = std::vector<std::int64_t>;
using Matrix = std::vector<Dense>;

// Every nonzero solution of A x = 0 with 0 <= x_i <= box.
inline std::vector<Dense> box_solutions(const Matrix& a, int n, int box) {
  std::vector<Dense> out;
  Dense x(n, 0);
  for (;;) {
    int i = 0;
    while (i < n && x[i] == box) x[i++] = 0;
    if (i == n) break;
    ++x[i];
    bool ok = true;
    for (const auto& row : a) {
      std::int64_t s = 0;
      for (int j = 0; j < n; ++j) s += row[j] * x[j];
      if (s != 0) {
        ok = false;
        break;
      }
    }
    if (ok) out.push_back(x);
  }
  return out;
}

inline bool leq(const Dense& a, const Dense& b) {
  for (std::size_t i = 0; i < a.size(); ++i)
    if (a[i] > b[i]) return false;
  return true;
}

// Minimal nonzero solutions with coordinates <= box, sorted.
inline std::vector<Dense> minimal_solutions(const Matrix& a, int n, int box) {
  auto sols = box_solutions(a, n, box);
  auto total = [](const Dense& v) {
    std::int64_t s = 0;
    for (auto x : v) s += x;
    return s;
  };
  std::stable_sort(sols.begin(), sols.end(), [&](const Dense& u, const Dense& v) { return total(u) < total(v); });
  std::vector<Dense> minimal;
  for (const auto& s : sols) {
    bool reducible = false;
    for (const auto& m : minimal)
      if (leq(m, s)) {
        reducible = true;
        break;
      }
    if (!reducible) minimal.push_back(s);
  }
  std::sort(minimal.begin(), minimal.end());
  return minimal;
}

struct RandomSystem {
  int n;
  Matrix a;
};

inline RandomSystem random_system(std::mt19937_64& rng) {
  std::uniform_int_distribution<int> vars(1, 6), eqs(1, 4), coef(-3, 3);
  RandomSystem s;
  s.n = vars(rng);
  int m = eqs(rng);
  s.a.assign(m, Dense(s.n, 0));
  for (auto& row : s.a)
    for (auto& x : row) x = coef(rng);
  return s;
}

}  // namespace oracle
