// Command-line front end over the C interface.
#include <bridgesurf/bridgesurf.h>

#include <CLI11.hpp>
#include <json.hpp>

#include <cstdio>
#include <fstream>
#include <iostream>
#include <string>

namespace {

using nlohmann::json;

struct Args {
  std::string input, out, b = "auto";
  int depth = 2, flat_budget = 0, n = 0, interior_cap = 1, coord_cap = 0, threads = 1, factor = 1;
};

std::string options(const Args& a) {
  json o = {{"depth", a.depth}, {"flat_budget", a.flat_budget}, {"n", a.n}, {"interior_cap", a.interior_cap},
            {"coord_cap", a.coord_cap}, {"threads", a.threads}, {"factor", a.factor}};
  if (a.b == "auto") {
    o["b"] = "auto";
  } else {
    try {
      std::size_t used = 0;
      int v = std::stoi(a.b, &used);
      if (used != a.b.size()) throw std::invalid_argument(a.b);
      o["b"] = v;
    } catch (const std::exception&) {
      throw CLI::ValidationError("--b", "expected an integer or 'auto'");
    }
  }
  return o.dump();
}

int report_error(const char* what, bs_status st) {
  std::cerr << "bridgesurf: " << what << " failed (status " << int(st) << "): " << bs_last_error() << "\n";
  return 1;
}

int finish(const std::string& name, const Args& a, bs_status st, char* text) {
  if (st != BS_OK) return report_error(name.c_str(), st);
  std::string s(text);
  bs_string_free(text);
  if (a.out.empty()) {
    std::cout << s;
  } else {
    std::ofstream f(a.out, std::ios::binary);
    f << s;
    if (!f) {
      std::cerr << "bridgesurf: cannot write " << a.out << "\n";
      return 1;
    }
  }
  json doc = json::parse(s);
  if (doc.contains("angle_structure_found") && !doc["angle_structure_found"].get<bool>()) return 3;
  return doc["flags"].empty() ? 0 : 2;
}

int dispatch(const std::string& name, const Args& a) {
  bs_triangulation* tri = nullptr;
  if (!a.input.empty()) {
    bs_status st = bs_triangulation_load(a.input.c_str(), &tri);
    if (st != BS_OK) return report_error("load", st);
  } else if (name != "discs") {
    std::cerr << "bridgesurf: " << name << " requires --input\n";
    bs_triangulation_free(tri);
    return 1;
  }
  const std::string opts = options(a);
  char* text = nullptr;
  bs_status st = BS_ERR_INTERNAL;
  if (name == "validate") st = bs_validate(tri, &text);
  else if (name == "angles") st = bs_angles(tri, opts.c_str(), &text);
  else if (name == "meridian-bound") st = bs_meridian_bound(tri, &text);
  else if (name == "discs") st = bs_discs(tri, opts.c_str(), &text);
  else if (name == "match") st = bs_match(tri, opts.c_str(), &text);
  else if (name == "fundamental") st = bs_fundamental(tri, opts.c_str(), &text);
  else if (name == "candidates") st = bs_candidates(tri, opts.c_str(), &text);
  else if (name == "pipeline") st = bs_pipeline(tri, opts.c_str(), &text);
  bs_triangulation_free(tri);
  return finish(name, a, st, text);
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"Search for bounded-genus surfaces in cusped 3-manifold triangulations"};
  app.set_version_flag("--version", bs_version());
  app.require_subcommand(1);
  Args a;
  struct Cmd {
    const char* name;
    const char* help;
  };
  const Cmd cmds[] = {
      {"validate", "check the triangulation and report its cusp"},
      {"angles", "search for an angle structure"},
      {"meridian-bound", "bound the meridian length on the cusp torus"},
      {"discs", "enumerate normal disc types"},
      {"match", "build the matching system"},
      {"fundamental", "compute the fundamental solutions"},
      {"candidates", "list candidate surfaces"},
      {"pipeline", "run every stage"},
  };
  for (const auto& c : cmds) {
    auto* sub = app.add_subcommand(c.name, c.help);
    sub->add_option("--input,-i", a.input, "triangulation JSON file");
    sub->add_option("--out,-o", a.out, "write the report here instead of stdout");
    sub->add_option("--depth", a.depth, "move depth for the angle search")->check(CLI::NonNegativeNumber);
    sub->add_option("--flat-budget", a.flat_budget, "flat tetrahedra allowed")->check(CLI::NonNegativeNumber);
    sub->add_option("--b", a.b, "boundary degree budget, integer or 'auto'");
    sub->add_option("--n", a.n, "genus budget (-chi)")->check(CLI::NonNegativeNumber);
    sub->add_option("--interior-cap", a.interior_cap, "interior arc cap per disc")->check(CLI::PositiveNumber);
    sub->add_option("--coord-cap", a.coord_cap, "coordinate cap, 0 for none")->check(CLI::NonNegativeNumber);
    sub->add_option("--threads", a.threads, "worker threads")->check(CLI::PositiveNumber);
    sub->add_option("--factor", a.factor, "surface-count factor for the automatic budget")->check(CLI::PositiveNumber);
  }
  try {
    app.parse(argc, argv);
    for (auto* sub : app.get_subcommands()) return dispatch(sub->get_name(), a);
  } catch (const CLI::ParseError& e) {
    int rc = app.exit(e);
    return rc == 0 ? 0 : 1;
  }
  return 1;
}
