#pragma once

// JSON documents for each stage; shared by the C API.

#include "bridgesurf/triangulation.hpp"

#include <json.hpp>

#include <optional>

namespace bsurf::report {

using nlohmann::json;

struct Config {
  int depth = 2;
  int flat_budget = 0;     // 0: strict structures only
  std::optional<int> b;    // nullopt: derive from the meridional bound
  int n = 0;
  int interior_cap = 1;
  int coord_cap = 0;       // 0: no cap
  int threads = 1;
  int factor = 1;          // surface-count factor of the auto budget
};

// Throws Error(Argument) on unknown keys or bad values.
Config parse_config(const json& j);
json config_json(const Config& c);

json validate_stage(const IdealTriangulation& tri);
json angles_stage(const TriangulationFile& in, const Config& c);
json meridian_bound_stage(const TriangulationFile& in);
json discs_stage(const Config& c, const TriangulationFile* in);
json match_stage(const TriangulationFile& in, const Config& c);
json fundamental_stage(const TriangulationFile& in, const Config& c);
json candidates_stage(const TriangulationFile& in, const Config& c);
json pipeline(const TriangulationFile& in, const Config& c);

}  // namespace bsurf::report
