#pragma once

#include "bridgesurf/triangulation.hpp"

#include <array>
#include <cstdint>
#include <vector>

namespace bsurf {

// First homology of the boundary torus with the basis (meridian, longitude).
// The longitude is the rational longitude (the boundary class that dies in
// the rational homology of the manifold) when it pairs to 1 with the
// meridian; otherwise an arbitrary complement of the meridian is used and
// longitude_is_rational() is false.
class Peripheral {
 public:
  // Throws Error(Invalid) when the boundary is not an oriented torus or the
  // meridian is not a closed primitive curve.
  Peripheral(const IdealTriangulation& tri, const BoundaryPath& meridian);

  // Signed crossing count per boundary edge class.
  std::vector<std::int64_t> crossing_vector(const BoundaryPath& path) const;
  // (p, q) with [path] = p * meridian + q * longitude.
  std::array<std::int64_t, 2> homology_class(const BoundaryPath& path) const;
  // Classes of arbitrary cycles in crossing-vector form.
  std::array<std::int64_t, 2> homology_class(const std::vector<std::int64_t>& z) const;

  bool longitude_is_rational() const { return rational_; }
  // Class of the rational longitude in the (meridian, longitude) basis.
  std::array<std::int64_t, 2> rational_longitude() const { return rational_class_; }

 private:
  std::array<std::int64_t, 2> lattice_coords(const std::vector<std::int64_t>& z) const;

  const IdealTriangulation* tri_;
  std::vector<bool> flip_;
  std::vector<std::array<int, 2>> class_orient_;  // slot-0 labels (from, to)
  std::vector<std::vector<std::int64_t>> cycles_;  // primal fundamental cycles
  // Lattice basis of H1 in image coordinates, with pivot columns.
  std::array<std::vector<std::int64_t>, 2> basis_img_;
  std::array<int, 2> pivot_{};
  // Meridian (m1, m2) and complement (l1, l2) in lattice coordinates.
  std::array<std::int64_t, 4> ml_{};
  // longitude = shift * meridian + complement
  std::int64_t shift_ = 0;
  bool rational_ = false;
  std::array<std::int64_t, 2> rational_class_{0, 1};
};

}  // namespace bsurf
