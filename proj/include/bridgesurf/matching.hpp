#pragma once

#include "bridgesurf/discs.hpp"
#include "bridgesurf/triangulation.hpp"

#include <cstdint>
#include <optional>
#include <utility>
#include <vector>

namespace bsurf {

// Sparse nonnegative integer vector: (index, value) pairs, indices ascending,
// values nonzero.
using SolutionVector = std::vector<std::pair<int, std::int64_t>>;
using SparseRow = std::vector<std::pair<int, std::int64_t>>;

struct Variable {
  int tet;
  int disc;
};

struct MatchingSystem {
  int dimension = 0;
  std::vector<Variable> variables;
  std::vector<SparseRow> rows;
  // (face class, arc type on the first member's face) per row.
  std::vector<std::array<int, 2>> row_labels;
  // Linear weight per variable used for degree budgets (boundary degree).
  std::vector<std::int64_t> weight;

  std::vector<SparseRow> columns() const;
};

// One variable per (tet, disc) in order; universe[t] lists the disc types of tet t.
MatchingSystem build_system(const IdealTriangulation& tri, const std::vector<std::vector<DiscType>>& universe);
// Plain homogeneous system from a dense integer matrix (weights all zero).
MatchingSystem make_system(int dimension, const std::vector<std::vector<std::int64_t>>& dense_rows);

// Arc type on face g of tet u carried by arc type `type` on face f of tet t
// under the gluing of (t, f).
int glued_arc_type(const IdealTriangulation& tri, int tet, int face, int type);

bool is_solution(const MatchingSystem& sys, const SolutionVector& v);
std::int64_t weight_of(const MatchingSystem& sys, const SolutionVector& v);

SolutionVector sparse(const std::vector<std::int64_t>& dense);
std::vector<std::int64_t> dense(const SolutionVector& v, int dimension);
SolutionVector add_scaled(const SolutionVector& a, const SolutionVector& b, std::int64_t k = 1);
bool dominates(const SolutionVector& big, const SolutionVector& small);

enum class HilbertStrategy {
  Auto,        // Split when a weight budget is given
  Completion,  // Contejean-Devie completion with frozen components
  Split,       // bounded positive-weight multisets plus minimal closed completions
};

struct HilbertOptions {
  std::optional<std::int64_t> coord_cap;
  // Only elements with weight <= budget are produced (the weight is
  // nonnegative, so pruning is exact for that slice of the basis).
  std::optional<std::int64_t> weight_budget;
  // Optional per-variable sorted lists of variables that may not share a
  // support (disc types that cannot be disjoint in one tetrahedron). With it,
  // only admissible elements are produced: exactly the basis elements that
  // can occur in a decomposition of an admissible solution.
  const std::vector<std::vector<int>>* conflicts = nullptr;
  int threads = 1;
  HilbertStrategy strategy = HilbertStrategy::Auto;
};

// Conflict lists for a system built from `universe`.
std::vector<std::vector<int>> disc_conflicts(const MatchingSystem& sys, const std::vector<std::vector<DiscType>>& universe);
bool admissible(const SolutionVector& v, const std::vector<std::vector<int>>& conflicts);

struct HilbertBasis {
  std::vector<SolutionVector> elements;
  bool truncated = false;  // some element withheld by coord_cap
};

HilbertBasis fundamental_solutions(const MatchingSystem& sys, const HilbertOptions& opts = {});

// True iff v is a nonnegative integer combination of the basis; the
// coefficients are written to `coeffs` when given.
bool decompose(const MatchingSystem& sys, const SolutionVector& v, const std::vector<SolutionVector>& basis,
               std::vector<std::int64_t>* coeffs = nullptr);

}  // namespace bsurf
