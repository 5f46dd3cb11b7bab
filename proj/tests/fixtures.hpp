#pragma once

#include "bridgesurf/triangulation.hpp"

#include <fstream>
#include <sstream>
#include <string>

inline std::string read_fixture(const std::string& name) {
  std::ifstream in(std::string(FIXTURE_DIR) + "/" + name);
  std::stringstream ss;
  ss << in.rdbuf();
  return ss.str();
}

inline bsurf::TriangulationFile load_fixture(const std::string& name) {
  return bsurf::parse_triangulation(read_fixture(name));
}
