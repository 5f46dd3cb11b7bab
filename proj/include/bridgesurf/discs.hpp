#pragma once

#include "bridgesurf/angles.hpp"
#include "bridgesurf/rational.hpp"

#include <array>
#include <compare>
#include <optional>
#include <string>
#include <vector>

namespace bsurf {

enum class FaceKind { Hexagon, Triangle };

// An isotopy class of arcs in a face. Two-sided arcs join sides a < b;
// returning arcs have a == b and cut off sides a+1 .. a+separation.
struct ArcType {
  int id;
  int side_a;
  int side_b;
  int separation;
  bool returning() const { return side_a == side_b; }
};

inline constexpr int kHexArcTypes = 27;
inline constexpr int kTriArcTypes = 3;

const std::vector<ArcType>& arc_types(FaceKind kind);
int arc_type_count(int face);
// Id of the two-sided arc joining sides s != t of `face`.
int arc_type_id(int face, int s, int t);
const ArcType& arc_type(int face, int id);
// True when the two types cannot be drawn disjointly in one face.
bool arcs_cross(int face, int a, int b);

struct Arc {
  int face;
  int type;
  auto operator<=>(const Arc&) const = default;
};

// Cyclic sequence of arcs; arc i leaves its face through the edge the next
// arc enters from.
using Curve = std::vector<Arc>;

// Edge crossed between arc i and arc i+1, or throws when the arcs do not chain.
int crossing_edge(const Curve& c, std::size_t i);
bool chains(const Curve& c);
// Lexicographically least rotation/reflection.
Curve canonical_curve(const Curve& c);

// Arc counts per face (index = face id, vectors sized by arc_type_count).
using FaceCounts = std::array<std::vector<int>, 8>;
FaceCounts empty_face_counts();
void add_counts(FaceCounts& into, const Curve& c, int times = 1);

struct TracedCurve {
  Curve arcs;
  // (edge, position along the edge) where arc i exits its face.
  std::vector<std::array<int, 2>> exits;
};

// The forced disjoint arrangement of the given arcs on the boundary sphere of
// one tetrahedron, traced into closed curves; nullopt when two arcs must cross
// or edge counts disagree.
struct TetArrangement {
  std::array<int, 18> edge_points{};
  std::vector<TracedCurve> curves;
};
std::optional<TetArrangement> arrange(const FaceCounts& counts);

// Throws Error(Argument) for a non-chaining sequence.
bool is_embeddable(const Curve& c);
// Canonical curve with the crossing positions of its realization.
std::optional<TracedCurve> realize(const Curve& c);

enum class Side { Plus, Minus };
enum class DiscClass { Normal, NormalToOneSide, AlmostNormal, Rejected };

struct Compression {
  int edge;
  int position;  // beta lies between crossings `position` and `position + 1`
  Side side;
  int first;     // curve crossing indices of the two ends
  int second;
};

struct Classification {
  DiscClass kind = DiscClass::Normal;
  Side side = Side::Plus;  // meaningful for NormalToOneSide
  std::string reason;      // for Rejected
};

std::vector<Compression> edge_compression_sides(const Curve& c);
Classification classify_disc(const Curve& c);

struct DiscType {
  Curve curve;  // canonical
  std::array<int, 6> interior_mult{};
  std::array<int, 12> boundary_mult{};
  Classification cls;
  FaceCounts counts;

  int boundary_degree() const;
  int interior_degree() const;
  int max_interior_mult() const;
  int hexagon_arcs() const;
  int triangle_arcs() const;
};

DiscType make_disc(const Curve& c);

// True when the two disc types can be realized disjointly in one tetrahedron.
bool compatible(const DiscType& a, const DiscType& b);

struct DiscEnumeration {
  std::vector<DiscType> discs;
  // Raising the interior cap by one would add further embedded curves.
  bool cap_pruned = false;
};

DiscEnumeration enumerate_disc_types(int b_max, int interior_cap, int threads = 1);

Rational disc_area(const AngleStructure& a, int tet, const DiscType& d);

std::string to_string(DiscClass k);
std::string to_string(Side s);

}  // namespace bsurf
