#include "bridgesurf/discs.hpp"
#include "bridgesurf/error.hpp"
#include "bridgesurf/tetmodel.hpp"
#include "oracles.hpp"

#include <doctest.h>

#include <map>
#include <set>

using namespace bsurf;

namespace {

std::set<Curve> curves_of(const DiscEnumeration& e) {
  std::set<Curve> out;
  for (const auto& d : e.discs) out.insert(d.curve);
  return out;
}

std::set<Curve> oracle_curves(int b_max, int cap) {
  std::set<Curve> out;
  for (const auto& w : oracle::closed_walks(b_max, cap))
    if (oracle::embeddable(w)) out.insert(canonical_curve(oracle::to_curve(w)));
  return out;
}

const DiscType* find_by_length(const DiscEnumeration& e, std::size_t len) {
  for (const auto& d : e.discs)
    if (d.curve.size() == len) return &d;
  return nullptr;
}

}  // namespace

TEST_CASE("arc catalogue sizes match a side-pair and separation count") {
  CHECK(arc_types(FaceKind::Triangle).size() == 3);
  CHECK(arc_types(FaceKind::Hexagon).size() == 27);
  // Brute force: unordered distinct side pairs, plus for each boundary side
  // every contiguous run of the other five sides that leaves a nonempty rest.
  int pairs = 0, returning = 0;
  std::map<int, int> per_side;
  for (int s = 0; s < 6; ++s)
    for (int t = 0; t < 6; ++t)
      if (s < t) ++pairs;
  for (int s = 1; s < 6; s += 2)
    for (int len = 1; len < 5; ++len) {
      ++returning;
      ++per_side[s];
    }
  CHECK(pairs + returning == 27);
  for (const auto& t : arc_types(FaceKind::Hexagon))
    if (t.returning()) --per_side[t.side_a];
  for (auto [s, c] : per_side) CHECK(c == 0);
  for (int s = 0; s < 6; ++s)
    for (int t = 0; t < 6; ++t)
      if (s != t) {
        const auto& a = arc_type(0, arc_type_id(0, s, t));
        CHECK(a.side_a == std::min(s, t));
        CHECK(a.side_b == std::max(s, t));
      }
}

TEST_CASE("b_max 0 enumeration: 7 at cap 1, 10 at cap 2") {
  auto c1 = enumerate_disc_types(0, 1);
  REQUIRE(c1.discs.size() == 7);
  int tris = 0, quads = 0;
  for (const auto& d : c1.discs) {
    CHECK(d.cls.kind == DiscClass::Normal);
    tris += d.curve.size() == 3;
    quads += d.curve.size() == 4;
  }
  CHECK(tris == 4);
  CHECK(quads == 3);
  CHECK(c1.cap_pruned);

  auto c2 = enumerate_disc_types(0, 2);
  REQUIRE(c2.discs.size() == 10);
  std::map<DiscClass, int> kinds;
  for (const auto& d : c2.discs) ++kinds[d.cls.kind];
  CHECK(kinds[DiscClass::Normal] == 7);
  CHECK(kinds[DiscClass::AlmostNormal] == 3);
  for (const auto& d : c2.discs)
    if (d.cls.kind == DiscClass::AlmostNormal) CHECK(d.curve.size() == 8);
}

TEST_CASE("enumeration agrees with the closed-walk oracle") {
  for (auto [b, cap] : {std::pair{0, 1}, {0, 2}, {0, 3}, {2, 1}, {2, 2}}) {
    CAPTURE(b);
    CAPTURE(cap);
    CHECK(curves_of(enumerate_disc_types(b, cap)) == oracle_curves(b, cap));
  }
}

TEST_CASE("library embeddability agrees with backtracking on every short walk") {
  bool saw_false = false;
  for (const auto& w : oracle::closed_walks(2, 2)) {
    Curve c = oracle::to_curve(w);
    bool expect = oracle::embeddable(w);
    CHECK(is_embeddable(c) == expect);
    if (!expect && !saw_false) {
      saw_false = true;
      MESSAGE("non-embeddable witness of length " << c.size());
    }
  }
  CHECK(saw_false);
}

TEST_CASE("two arcs forced to cross in one hexagon are not embeddable") {
  // In hexagon 0, arcs (0,2) and (1,3) interleave.
  CHECK(arcs_cross(0, arc_type_id(0, 0, 2), arc_type_id(0, 1, 3)));
  FaceCounts counts = empty_face_counts();
  counts[0][arc_type_id(0, 0, 2)] = 1;
  counts[0][arc_type_id(0, 1, 3)] = 1;
  CHECK_FALSE(arrange(counts).has_value());
}

TEST_CASE("is_embeddable basics") {
  auto c1 = enumerate_disc_types(0, 1);
  for (const auto& d : c1.discs) CHECK(is_embeddable(d.curve));
  // Non-chaining sequence.
  Curve bad{{0, arc_type_id(0, 0, 2)}, {0, arc_type_id(0, 0, 2)}};
  CHECK_THROWS_AS(is_embeddable(bad), Error);
}

TEST_CASE("link triangle is the only cap-1 closed curve at vertex 0") {
  auto c1 = enumerate_disc_types(0, 1);
  int hits = 0;
  for (const auto& d : c1.discs) {
    // A curve meets vertex 0's region when it cuts all three edges at vertex 0.
    if (d.interior_mult[tet::interior_edge(0, 1)] && d.interior_mult[tet::interior_edge(0, 2)] &&
        d.interior_mult[tet::interior_edge(0, 3)])
      ++hits;
  }
  CHECK(hits == 1);
}

TEST_CASE("enumeration is monotone in both budgets and respects them") {
  auto small = curves_of(enumerate_disc_types(2, 1));
  auto wide_b = enumerate_disc_types(4, 1);
  auto wide_c = curves_of(enumerate_disc_types(2, 2));
  auto wb = curves_of(wide_b);
  for (const auto& c : small) {
    CHECK(wb.count(c));
    CHECK(wide_c.count(c));
  }
  for (const auto& d : wide_b.discs) {
    CHECK(d.boundary_degree() <= 4);
    CHECK(d.max_interior_mult() <= 1);
  }
}

TEST_CASE("threads do not change the output") {
  auto a = enumerate_disc_types(4, 2, 1);
  auto b = enumerate_disc_types(4, 2, 4);
  REQUIRE(a.discs.size() == b.discs.size());
  for (std::size_t i = 0; i < a.discs.size(); ++i) CHECK(a.discs[i].curve == b.discs[i].curve);
  CHECK(a.cap_pruned == b.cap_pruned);
}

TEST_CASE("compression sides") {
  auto c2 = enumerate_disc_types(0, 2);
  const DiscType* quad = find_by_length(c2, 4);
  REQUIRE(quad);
  CHECK(edge_compression_sides(quad->curve).empty());
  const DiscType* oct = find_by_length(c2, 8);
  REQUIRE(oct);
  auto comps = edge_compression_sides(oct->curve);
  REQUIRE(comps.size() == 2);
  CHECK(comps[0].side != comps[1].side);
  CHECK(comps[0].edge != comps[1].edge);

  // One-sided discs from the b_max = 2 enumeration: a single doubled edge.
  auto e = enumerate_disc_types(2, 2);
  int plus = 0, minus = 0;
  for (const auto& d : e.discs) {
    int doubled = 0;
    for (int m : d.interior_mult) doubled += m == 2;
    if (doubled != 1 || d.max_interior_mult() != 2) continue;
    auto cs = edge_compression_sides(d.curve);
    REQUIRE(cs.size() == 1);
    CHECK(d.cls.kind == DiscClass::NormalToOneSide);
    CHECK(d.cls.side == cs[0].side);
    (cs[0].side == Side::Plus ? plus : minus)++;
  }
  CHECK(plus > 0);
  CHECK(minus > 0);
}

TEST_CASE("classification is stable under rotation and reflection") {
  auto e = enumerate_disc_types(2, 2);
  for (const auto& d : e.discs) {
    Curve rot(d.curve.begin() + 1, d.curve.end());
    rot.push_back(d.curve.front());
    Curve rev(d.curve.rbegin(), d.curve.rend());
    CHECK(classify_disc(rot).kind == d.cls.kind);
    CHECK(classify_disc(rev).kind == d.cls.kind);
  }
}

TEST_CASE("rejections: none up to b_max 2, disjoint opposite compressions appear at 4") {
  for (const auto& d : enumerate_disc_types(2, 2).discs) CHECK(d.cls.kind != DiscClass::Rejected);
  auto e = enumerate_disc_types(4, 2);
  int disjoint = 0;
  for (const auto& d : e.discs) {
    if (d.cls.kind != DiscClass::Rejected) continue;
    CHECK(d.cls.reason.find("disjoint") != std::string::npos);
    ++disjoint;
  }
  CHECK(disjoint > 0);
}

TEST_CASE("closed normal and almost normal discs have non-negative area") {
  auto e = enumerate_disc_types(0, 2);
  std::vector<std::array<Rational, 3>> shapes{{Rational(1, 3), Rational(1, 3), Rational(1, 3)},
                                              {Rational(1, 10), Rational(1, 5), Rational(7, 10)},
                                              {Rational(1), Rational(0), Rational(0)},
                                              {Rational(1, 2), Rational(1, 2), Rational(0)}};
  for (const auto& s : shapes) {
    AngleStructure a;
    a.angles = {s};
    a.flat = {false};
    for (const auto& d : e.discs) CHECK(disc_area(a, 0, d) >= 0);
  }
}
