#include "bridgesurf/bridgesurf.h"

#include "bridgesurf/error.hpp"
#include "report.hpp"

#include <cstring>
#include <fstream>
#include <sstream>
#include <string>

struct bs_triangulation {
  bsurf::TriangulationFile file;
};

namespace {

using bsurf::report::json;

thread_local std::string last_error;

bs_status status_of(bsurf::ErrorKind k) {
  switch (k) {
    case bsurf::ErrorKind::Parse: return BS_ERR_PARSE;
    case bsurf::ErrorKind::Invalid: return BS_ERR_INVALID;
    case bsurf::ErrorKind::Argument: return BS_ERR_ARGUMENT;
    case bsurf::ErrorKind::Precondition: return BS_ERR_PRECONDITION;
    case bsurf::ErrorKind::Incomplete: return BS_ERR_INCOMPLETE;
  }
  return BS_ERR_INTERNAL;
}

template <class F>
bs_status guarded(F&& f) {
  last_error.clear();
  try {
    f();
    return BS_OK;
  } catch (const bsurf::Error& e) {
    last_error = e.what();
    return status_of(e.kind());
  } catch (const json::exception& e) {
    last_error = std::string("options: ") + e.what();
    return BS_ERR_PARSE;
  } catch (const std::exception& e) {
    last_error = e.what();
    return BS_ERR_INTERNAL;
  }
}

char* dup(const std::string& s) {
  char* out = new char[s.size() + 1];
  std::memcpy(out, s.c_str(), s.size() + 1);
  return out;
}

void emit(const json& doc, char** out) { *out = dup(doc.dump(2) + "\n"); }

void need(const void* p, const char* what) {
  if (!p) bsurf::fail(bsurf::ErrorKind::Argument, std::string(what) + " is null");
}

bsurf::report::Config config(const char* options) {
  if (!options) return {};
  json j;
  try {
    j = json::parse(options);
  } catch (const json::parse_error& e) {
    bsurf::fail(bsurf::ErrorKind::Parse, std::string("options: ") + e.what());
  }
  return bsurf::report::parse_config(j);
}

template <class F>
bs_status run(const bs_triangulation* tri, char** out, F&& f) {
  return guarded([&] {
    need(tri, "triangulation");
    need(out, "output pointer");
    emit(f(tri->file), out);
  });
}

}  // namespace

extern "C" {

const char* bs_version(void) { return "1.0.0"; }

const char* bs_last_error(void) { return last_error.c_str(); }

bs_status bs_triangulation_parse(const char* json_text, bs_triangulation** out) {
  return guarded([&] {
    need(json_text, "text");
    need(out, "output pointer");
    *out = new bs_triangulation{bsurf::parse_triangulation(json_text)};
  });
}

bs_status bs_triangulation_load(const char* path, bs_triangulation** out) {
  return guarded([&] {
    need(path, "path");
    need(out, "output pointer");
    std::ifstream in(path);
    if (!in) bsurf::fail(bsurf::ErrorKind::Argument, std::string("cannot open ") + path);
    std::stringstream ss;
    ss << in.rdbuf();
    *out = new bs_triangulation{bsurf::parse_triangulation(ss.str())};
  });
}

void bs_triangulation_free(bs_triangulation* tri) { delete tri; }

int bs_triangulation_size(const bs_triangulation* tri) { return tri ? tri->file.tri.size() : 0; }

int bs_triangulation_has_meridian(const bs_triangulation* tri) { return tri && tri->file.meridian ? 1 : 0; }

bs_status bs_validate(const bs_triangulation* tri, char** json_out) {
  return run(tri, json_out, [](const bsurf::TriangulationFile& f) { return bsurf::report::validate_stage(f.tri); });
}

bs_status bs_angles(const bs_triangulation* tri, const char* options, char** json_out) {
  return run(tri, json_out, [&](const bsurf::TriangulationFile& f) { return bsurf::report::angles_stage(f, config(options)); });
}

bs_status bs_meridian_bound(const bs_triangulation* tri, char** json_out) {
  return run(tri, json_out, [](const bsurf::TriangulationFile& f) { return bsurf::report::meridian_bound_stage(f); });
}

bs_status bs_discs(const bs_triangulation* tri, const char* options, char** json_out) {
  return guarded([&] {
    need(json_out, "output pointer");
    emit(bsurf::report::discs_stage(config(options), tri ? &tri->file : nullptr), json_out);
  });
}

bs_status bs_match(const bs_triangulation* tri, const char* options, char** json_out) {
  return run(tri, json_out, [&](const bsurf::TriangulationFile& f) { return bsurf::report::match_stage(f, config(options)); });
}

bs_status bs_fundamental(const bs_triangulation* tri, const char* options, char** json_out) {
  return run(tri, json_out, [&](const bsurf::TriangulationFile& f) { return bsurf::report::fundamental_stage(f, config(options)); });
}

bs_status bs_candidates(const bs_triangulation* tri, const char* options, char** json_out) {
  return run(tri, json_out, [&](const bsurf::TriangulationFile& f) { return bsurf::report::candidates_stage(f, config(options)); });
}

bs_status bs_pipeline(const bs_triangulation* tri, const char* options, char** json_out) {
  return run(tri, json_out, [&](const bsurf::TriangulationFile& f) { return bsurf::report::pipeline(f, config(options)); });
}

void bs_string_free(char* s) { delete[] s; }

}  // extern "C"
