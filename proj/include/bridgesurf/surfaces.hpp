#pragma once

#include "bridgesurf/angles.hpp"
#include "bridgesurf/discs.hpp"
#include "bridgesurf/matching.hpp"
#include "bridgesurf/peripheral.hpp"
#include "bridgesurf/rational.hpp"
#include "bridgesurf/triangulation.hpp"

#include <array>
#include <cstdint>
#include <functional>
#include <optional>
#include <vector>

namespace bsurf {

using DiscUniverse = std::vector<std::vector<DiscType>>;

// Everything needed to read a solution vector as discs.
struct SurfaceSetting {
  const IdealTriangulation& tri;
  const MatchingSystem& sys;
  const DiscUniverse& universe;

  const DiscType& disc(int variable) const;
};

struct AssembledSurface {
  SolutionVector vector;
  std::int64_t discs = 0;
  std::int64_t hexagon_arcs = 0;
  std::int64_t triangle_arcs = 0;
  std::int64_t interior_points = 0;
  std::int64_t boundary_points = 0;
  std::int64_t euler = 0;
  std::vector<BoundaryPath> boundary;
  // Local gluing choices; the forced arrangement leaves none.
  int ambiguities = 0;

  bool closed() const { return boundary.empty(); }
};

// Cell-count Euler characteristic of a solution (linear in the vector).
std::int64_t euler_characteristic(const SurfaceSetting& s, const SolutionVector& v);
std::int64_t boundary_degree(const SurfaceSetting& s, const SolutionVector& v);

// Canonical realization, or nullopt when the discs cannot sit disjointly in
// some tetrahedron. Throws Error(Precondition) for a non-solution.
std::optional<AssembledSurface> assemble(const SurfaceSetting& s, const SolutionVector& v);

// Homology classes of the boundary curves, each up to sign: (p, q) with q > 0,
// or q = 0 and p > 0.
std::vector<std::array<std::int64_t, 2>> boundary_classes(const Peripheral& per, const AssembledSurface& surf);

// Closed with zero Euler characteristic; under a (partially flat) angle
// structure such a surface is parallel to the boundary.
bool is_boundary_parallel_torus(const AssembledSurface& surf);

// Area in units of pi.
Rational surface_area(const SurfaceSetting& s, const AngleStructure& a, const SolutionVector& v);

// One copy of each truncation-parallel triangle per tetrahedron; throws when
// the universe lacks one.
SolutionVector link_vector(const SurfaceSetting& s);
SolutionVector add_link_torus(const SolutionVector& v, const SolutionVector& link, std::int64_t k);

// Per-disc class tallies for reporting.
std::array<std::int64_t, 4> class_counts(const SurfaceSetting& s, const SolutionVector& v);

struct CandidateParameters {
  int n = 0;  // -chi budget
  int b = 0;  // boundary edge degree budget
};

enum class CapKind { BoundaryTouching, ClosedNegative, ClosedNonNegative };

struct CoefficientCaps {
  std::vector<std::int64_t> caps;
  std::vector<CapKind> kinds;
  std::vector<bool> link_torus;  // closed, chi 0, Normal discs only
  std::int64_t x = 0;            // max |chi| over boundary-touching sums
};

// Throws Error(Incomplete) for a truncated basis.
CoefficientCaps coefficient_caps(const SurfaceSetting& s, const HilbertBasis& basis, const CandidateParameters& p);

struct Candidate {
  std::vector<std::int64_t> coefficients;  // per basis element
  SolutionVector vector;
  AssembledSurface surface;
};

// Every nonzero capped combination within the degree budget that assembles
// with chi >= -n, in lexicographic order of the coefficients listed by cap
// kind (boundary-touching, closed chi >= 0, closed chi < 0) then basis order.
// The callback returns false to stop.
void candidate_vectors(const SurfaceSetting& s, const HilbertBasis& basis, const CoefficientCaps& caps,
                       const CandidateParameters& p, const std::vector<std::vector<int>>* conflicts,
                       const std::function<bool(const Candidate&)>& emit);

}  // namespace bsurf
