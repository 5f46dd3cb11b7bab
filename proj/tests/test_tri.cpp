#include "bridgesurf/error.hpp"
#include "bridgesurf/tetmodel.hpp"
#include "bridgesurf/triangulation.hpp"
#include "fixtures.hpp"

#include <doctest.h>

using namespace bsurf;

namespace {

std::string one_gluing_file(const std::string& extra) {
  return R"({"tets":1,"gluings":[)" + extra + "]}";
}

std::string g(int t, int f, int u, int h, int a, int b, int c) {
  return "{\"tet\":" + std::to_string(t) + ",\"face\":" + std::to_string(f) + ",\"to_tet\":" + std::to_string(u) +
         ",\"to_face\":" + std::to_string(h) + ",\"perm\":{\"a\":" + std::to_string(a) + ",\"b\":" + std::to_string(b) +
         ",\"c\":" + std::to_string(c) + "}}";
}

int new_central_edge(const PachnerMove& m) {
  int base = m.result.size() - 3;
  return m.result.edge_class(base, tet::interior_edge(0, 1));
}

}  // namespace

TEST_CASE("census fixture parses and validates") {
  auto file = load_fixture("m004.json");
  CHECK(file.tri.size() == 2);
  auto r = validate(file.tri);
  CHECK(r.ok);
  CHECK(r.edge_class_count == 2);
  CHECK(r.boundary_triangles == 8);
  CHECK(r.boundary_edges == 12);
  CHECK(r.boundary_vertices == 4);
  CHECK(r.boundary_component_count == 1);
  CHECK(r.boundary_genus == 1);
  CHECK(r.boundary_orientable);
  REQUIRE(file.meridian);
  CHECK(is_closed_path(file.tri, *file.meridian));
  for (int c = 0; c < file.tri.edge_class_count(); ++c) CHECK(file.tri.edge_valence(c) == 6);
}

TEST_CASE("other fixtures validate with E = t and 2t boundary vertices") {
  for (const char* name : {"m003.json", "structureless.json"}) {
    auto file = load_fixture(name);
    auto r = validate(file.tri);
    CHECK(r.ok);
    CHECK(r.edge_class_count == file.tri.size());
    CHECK(r.boundary_vertices == 2 * file.tri.size());
    CHECK(r.boundary_edges == 6 * file.tri.size());
    REQUIRE(file.meridian);
    CHECK(is_closed_path(file.tri, *file.meridian));
  }
}

TEST_CASE("malformed gluing tables are rejected") {
  auto expect_parse_error = [](const std::string& text, const std::string& needle) {
    try {
      parse_triangulation(text);
      FAIL("no error for " << text);
    } catch (const Error& e) {
      CHECK(e.kind() == ErrorKind::Parse);
      CHECK_MESSAGE(std::string(e.what()).find(needle) != std::string::npos, e.what());
    }
  };
  expect_parse_error("{\"tets\": 1, ", "syntax error");
  expect_parse_error(one_gluing_file(g(0, 0, 0, 1, 0, 2, 3) + "," + g(0, 1, 0, 0, 1, 2, 3) + "," + g(0, 2, 0, 3, 0, 1, 2)),
                     "dangling face");
  expect_parse_error(one_gluing_file(g(0, 0, 0, 0, 1, 2, 3) + "," + g(0, 1, 0, 2, 0, 1, 3) + "," + g(0, 2, 0, 1, 0, 2, 3) +
                                     "," + g(0, 3, 0, 3, 0, 1, 2)),
                     "glued to itself");
  expect_parse_error(one_gluing_file(g(0, 0, 0, 1, 0, 0, 3) + "," + g(0, 1, 0, 0, 1, 2, 3) + "," + g(0, 2, 0, 3, 0, 1, 2) +
                                     "," + g(0, 3, 0, 2, 0, 1, 3)),
                     "not a bijection");
  expect_parse_error(one_gluing_file(g(0, 0, 0, 1, 0, 2, 3) + "," + g(0, 0, 0, 1, 0, 2, 3) + "," + g(0, 1, 0, 0, 1, 2, 3) +
                                     "," + g(0, 2, 0, 3, 0, 1, 2) + "," + g(0, 3, 0, 2, 0, 1, 3)),
                     "glued twice");
}

TEST_CASE("one-tetrahedron brute force finds a non-torus boundary") {
  // Pair faces {0,x},{y,z} and try every bijection on each pair.
  bool found_bad = false;
  const auto& perms = Perm4::all();
  for (int partner = 1; partner <= 3 && !found_bad; ++partner) {
    int y = partner == 1 ? 2 : 1;
    int z = 6 - partner - y;
    for (const Perm4& p : perms) {
      if (p[0] != partner) continue;
      for (const Perm4& q : perms) {
        if (q[y] != z) continue;
        std::vector<std::array<Gluing, 4>> table(1);
        table[0][0] = {0, p};
        table[0][partner] = {0, p.inverse()};
        table[0][y] = {0, q};
        table[0][z] = {0, q.inverse()};
        IdealTriangulation tri(table);
        auto r = validate(tri);
        CHECK(r.boundary_triangles == 4);
        if (!r.ok) {
          bool torus_message = false;
          for (const auto& d : r.diagnostics) torus_message |= d == "boundary not a torus";
          if (torus_message) found_bad = true;
        }
      }
    }
  }
  CHECK(found_bad);
}

TEST_CASE("file round trip keeps the isomorphism class and the meridian") {
  auto file = load_fixture("m003.json");
  auto again = parse_triangulation(write_triangulation(file.tri, file.meridian));
  CHECK(again.tri.isosig() == file.tri.isosig());
  CHECK(boundary_word(again.tri, *again.meridian) == boundary_word(file.tri, *file.meridian));
}

TEST_CASE("isosig is invariant under relabeling") {
  auto file = load_fixture("m003.json");
  const auto& tri = file.tri;
  // Swap the two tetrahedra and relabel vertices of tet 0 by a 4-cycle.
  Perm4 rho(1, 2, 3, 0);
  std::array<Perm4, 2> relabel{rho, Perm4()};
  std::vector<std::array<Gluing, 4>> table(2);
  for (int t = 0; t < 2; ++t) {
    for (int f = 0; f < 4; ++f) {
      const Gluing& gl = tri.glue(t, f);
      table[1 - t][relabel[t][f]] = {1 - gl.tet, relabel[gl.tet] * gl.perm * relabel[t].inverse()};
    }
  }
  IdealTriangulation other(table);
  CHECK(other.isosig() == tri.isosig());
  CHECK(load_fixture("m004.json").tri.isosig() != tri.isosig());
}

TEST_CASE("2-3 then 3-2 restores the triangulation") {
  for (const char* name : {"m004.json", "m003.json", "structureless.json"}) {
    auto file = load_fixture(name);
    const auto& tri = file.tri;
    for (int fc = 0; fc < tri.face_class_count(); ++fc) {
      CAPTURE(name);
      CAPTURE(fc);
      if (!can_pachner_23(tri, fc)) continue;
      auto up = pachner_23(tri, fc);
      CHECK(up.result.size() == 3);
      auto r = validate(up.result);
      CHECK(r.ok);
      CHECK(r.edge_class_count == tri.edge_class_count() + 1);
      auto path = transport(tri, up, *file.meridian);
      CHECK(is_closed_path(up.result, path));
      int edge = new_central_edge(up);
      CHECK(up.result.edge_valence(edge) == 3);
      REQUIRE(can_pachner_32(up.result, edge));
      auto down = pachner_32(up.result, edge);
      CHECK(validate(down.result).ok);
      CHECK(down.result.isosig() == tri.isosig());
      auto back = transport(up.result, down, path);
      CHECK(is_closed_path(down.result, back));
      CHECK(!back.empty());
    }
  }
}

TEST_CASE("3-2 preconditions") {
  auto file = load_fixture("m004.json");
  CHECK_THROWS_AS(pachner_32(file.tri, 0), Error);
  CHECK_FALSE(can_pachner_32(file.tri, 1));
  CHECK_THROWS_AS(pachner_23(file.tri, 99), Error);
}

TEST_CASE("normalize_path removes backtracks and is idempotent") {
  auto file = load_fixture("m004.json");
  const auto& tri = file.tri;
  BoundaryPath m = *file.meridian;
  BoundaryPath detour = m;
  // Insert a there-and-back excursion after the first crossing.
  auto at = tri.crossing_target(m[0]);
  int f = at[1] == 0 ? 1 : 0;
  BoundaryCrossing out{at[0], at[1], f};
  detour.insert(detour.begin() + 1, {out, tri.reverse(out)});
  CHECK(is_closed_path(tri, detour));
  auto once = normalize_path(tri, detour);
  CHECK(once == m);
  CHECK(normalize_path(tri, once) == once);
  BoundaryPath trivial{out, tri.reverse(out)};
  CHECK(normalize_path(tri, trivial).empty());
}
