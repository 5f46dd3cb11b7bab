#pragma once

#include "bridgesurf/rational.hpp"

#include <vector>

namespace bsurf {

// Exact two-phase simplex with Bland's rule:
//   minimize c.x  subject to  A x = b, x >= 0.
struct LpResult {
  enum class Status { Optimal, Infeasible, Unbounded };
  Status status = Status::Infeasible;
  Rational value;
  std::vector<Rational> x;
};

LpResult lp_minimize(const std::vector<std::vector<Rational>>& A, const std::vector<Rational>& b,
                     const std::vector<Rational>& c);

}  // namespace bsurf
