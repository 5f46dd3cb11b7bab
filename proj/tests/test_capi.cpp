#include "bridgesurf/bridgesurf.h"
#include "fixtures.hpp"

#include <doctest.h>
#include <json.hpp>

#include <string>

using nlohmann::json;

namespace {

struct Handle {
  bs_triangulation* t = nullptr;
  explicit Handle(const std::string& name) { REQUIRE(bs_triangulation_parse(read_fixture(name).c_str(), &t) == BS_OK); }
  ~Handle() { bs_triangulation_free(t); }
};

json take(char* s) {
  REQUIRE(s);
  json j = json::parse(s);
  bs_string_free(s);
  return j;
}

}  // namespace

TEST_CASE("handles carry the parsed triangulation") {
  CHECK(std::string(bs_version()).size() > 0);
  Handle h("m004.json");
  CHECK(bs_triangulation_size(h.t) == 2);
  CHECK(bs_triangulation_has_meridian(h.t) == 1);
  CHECK(bs_triangulation_size(nullptr) == 0);
  bs_triangulation_free(nullptr);

  bs_triangulation* f = nullptr;
  CHECK(bs_triangulation_load(FIXTURE_DIR "/m003.json", &f) == BS_OK);
  CHECK(bs_triangulation_size(f) == 2);
  bs_triangulation_free(f);
}

TEST_CASE("errors map to status codes with a message") {
  bs_triangulation* t = nullptr;
  CHECK(bs_triangulation_parse("{not json", &t) == BS_ERR_PARSE);
  CHECK(t == nullptr);
  CHECK(std::string(bs_last_error()).size() > 0);
  CHECK(bs_triangulation_parse(nullptr, &t) == BS_ERR_ARGUMENT);
  CHECK(bs_triangulation_load("/nonexistent/file.json", &t) == BS_ERR_ARGUMENT);

  Handle h("m004.json");
  char* out = nullptr;
  CHECK(bs_angles(h.t, "{\"bogus\": 1}", &out) == BS_ERR_ARGUMENT);
  CHECK(bs_angles(h.t, "{", &out) == BS_ERR_PARSE);
  CHECK(bs_angles(h.t, "{\"depth\": -1}", &out) == BS_ERR_ARGUMENT);
  CHECK(bs_validate(nullptr, &out) == BS_ERR_ARGUMENT);
  CHECK(bs_validate(h.t, nullptr) == BS_ERR_ARGUMENT);
  CHECK(bs_discs(nullptr, "{}", &out) == BS_ERR_ARGUMENT);  // auto budget without input
  CHECK(out == nullptr);
  CHECK(bs_validate(h.t, &out) == BS_OK);
  bs_string_free(out);
  CHECK(std::string(bs_last_error()).empty());
}

TEST_CASE("stage reports") {
  Handle h("m004.json");
  char* out = nullptr;
  REQUIRE(bs_validate(h.t, &out) == BS_OK);
  auto v = take(out);
  CHECK(v["ok"] == true);
  CHECK(v["edge_classes"] == 2);
  CHECK(v["flags"].empty());

  REQUIRE(bs_angles(h.t, nullptr, &out) == BS_OK);
  auto a = take(out);
  CHECK(a["angle_structure_found"] == true);
  CHECK(a["structure"]["angles"][0][0] == "1/3");

  REQUIRE(bs_meridian_bound(h.t, &out) == BS_OK);
  auto m = take(out);
  CHECK(m["meridian_bound"]["k"] == 3);
  CHECK(m["meridian_bound"]["terminal"] == json::array({1, 3, 2}));

  REQUIRE(bs_discs(nullptr, "{\"b\": 0, \"interior_cap\": 1}", &out) == BS_OK);
  auto d = take(out);
  CHECK(d["discs"]["count"] == 7);

  REQUIRE(bs_fundamental(h.t, "{\"b\": 0}", &out) == BS_OK);
  auto fs = take(out);
  CHECK(fs["fundamental"]["elements"].size() == 1);
}

TEST_CASE("pipeline at b = 0 lists only link multiples") {
  Handle h("m004.json");
  char* out = nullptr;
  REQUIRE(bs_pipeline(h.t, "{\"b\": 0, \"n\": 0}", &out) == BS_OK);
  auto p = take(out);
  CHECK(p["angle_structure_found"] == true);
  REQUIRE(!p["candidates"].empty());
  for (const auto& c : p["candidates"]) {
    CHECK(c["euler"] == 0);
    CHECK(c["area"] == "0");
    auto tags = c["tags"].get<std::vector<std::string>>();
    CHECK(std::find(tags.begin(), tags.end(), "boundary_parallel_torus") != tags.end());
  }
}

TEST_CASE("pipeline without an angle structure stops early") {
  Handle h("structureless.json");
  char* out = nullptr;
  REQUIRE(bs_pipeline(h.t, "{\"b\": 0, \"depth\": 1}", &out) == BS_OK);
  auto p = take(out);
  CHECK(p["angle_structure_found"] == false);
  CHECK_FALSE(p.contains("candidates"));
}

TEST_CASE("automatic budget that overflows is refused before any enumeration") {
  Handle h("m004.json");
  char* out = nullptr;
  // u = 2 * 4^3 = 128, so (2 + 0) * 128 * 2^30 is out of range
  CHECK(bs_match(h.t, "{\"factor\": 1073741824}", &out) == BS_ERR_ARGUMENT);
  CHECK(std::string(bs_last_error()).find("too large") != std::string::npos);
  CHECK(out == nullptr);
}
