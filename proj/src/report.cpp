#include "report.hpp"

#include "bridgesurf/boundary.hpp"
#include "bridgesurf/error.hpp"
#include "bridgesurf/search.hpp"
#include "bridgesurf/surfaces.hpp"

#include <climits>

namespace bsurf::report {
namespace {

template <class F>
auto stage(const char* name, F&& f) -> decltype(f()) {
  try {
    return f();
  } catch (const Error& e) {
    throw Error(e.kind(), std::string(name) + ": " + e.what());
  }
}

int get_int(const json& j, const char* key, int lo) {
  if (!j.is_number_integer()) fail(ErrorKind::Argument, std::string(key) + " must be an integer");
  auto v = j.get<std::int64_t>();
  if (v < lo || v > INT_MAX) fail(ErrorKind::Argument, std::string(key) + " out of range");
  return int(v);
}

json vector_json(const SolutionVector& v) {
  json out = json::array();
  for (auto [i, x] : v) out.push_back({i, x});
  return out;
}

json word_json(const CurveWord& w) {
  json out = json::array();
  for (const auto& c : w) out.push_back({c.triangle, c.side});
  return out;
}

json angles_json(const AngleStructure& a) {
  json angles = json::array(), flat = json::array();
  for (std::size_t t = 0; t < a.angles.size(); ++t) {
    json row = json::array();
    for (const auto& x : a.angles[t]) row.push_back(to_string(x));
    angles.push_back(row);
    flat.push_back(bool(a.flat[t]));
  }
  return {{"angles", angles}, {"flat", flat}, {"condition4_unverified", a.condition4_unverified()}};
}

void add_flag(json& doc, const std::string& flag) { doc["flags"].push_back(flag); }

json flags_init() { return json::array(); }

std::optional<BoundaryPath> require_meridian(const TriangulationFile& in) {
  if (!in.meridian) fail(ErrorKind::Argument, "input has no marked meridian");
  return in.meridian;
}

json bound_json(const MeridionalBound& mb) {
  json trace = json::array();
  for (const auto& s : mb.trace) trace.push_back({{"edge", s.edge}, {"word", word_json(s.word)}, {"length", s.word.size()}});
  return {{"input_length", mb.input_length}, {"n", mb.n}, {"k", mb.k}, {"u", to_string(mb.u)},
          {"coarse", to_string(mb.coarse)}, {"terminal", mb.terminal}, {"standard_terminal", mb.standard_terminal},
          {"trace", trace}};
}

MeridionalBound bound_of(const IdealTriangulation& tri, const BoundaryPath& meridian) {
  auto torus = cusp_torus(tri);
  return meridional_bound(torus, cusp_word(tri, torus, meridian));
}

int auto_budget(const MeridionalBound& mb, const Config& c) {
  BigInt b = BigInt(2 + c.n) * mb.u * c.factor;
  if (b > INT_MAX) fail(ErrorKind::Argument, "automatic boundary budget " + to_string(b) + " is too large");
  return int(b);
}

const char* class_name(DiscClass k) {
  switch (k) {
    case DiscClass::Normal: return "normal";
    case DiscClass::NormalToOneSide: return "normal_to_one_side";
    case DiscClass::AlmostNormal: return "almost_normal";
    case DiscClass::Rejected: return "rejected";
  }
  return "";
}

// Disc universe through fundamental solutions for one triangulation.
struct Solved {
  DiscEnumeration enumeration;
  DiscUniverse universe;
  MatchingSystem sys;
  std::vector<std::vector<int>> conflicts;
  HilbertBasis basis;
};

DiscUniverse universe_of(const DiscEnumeration& e, int tets) {
  std::vector<DiscType> keep;
  for (const auto& d : e.discs)
    if (d.cls.kind != DiscClass::Rejected) keep.push_back(d);
  return DiscUniverse(tets, keep);
}

void build(Solved& s, const IdealTriangulation& tri, int b, const Config& c, bool basis) {
  s.enumeration = stage("discs", [&] { return enumerate_disc_types(b, c.interior_cap, c.threads); });
  s.universe = universe_of(s.enumeration, tri.size());
  s.sys = stage("match", [&] { return build_system(tri, s.universe); });
  if (!basis) return;
  s.basis = stage("fundamental", [&] {
    s.conflicts = disc_conflicts(s.sys, s.universe);
    HilbertOptions o;
    o.weight_budget = b;
    o.conflicts = &s.conflicts;
    o.threads = c.threads;
    if (c.coord_cap > 0) o.coord_cap = c.coord_cap;
    return fundamental_solutions(s.sys, o);
  });
}

json discs_json(const DiscEnumeration& e, int b, const Config& c) {
  json list = json::array();
  json by_class = {{"normal", 0}, {"normal_to_one_side", 0}, {"almost_normal", 0}, {"rejected", 0}};
  for (const auto& d : e.discs) {
    by_class[class_name(d.cls.kind)] = by_class[class_name(d.cls.kind)].get<int>() + 1;
    if (d.cls.kind == DiscClass::Rejected) continue;
    json curve = json::array();
    for (const auto& a : d.curve) curve.push_back({a.face, a.type});
    json item = {{"curve", curve},
                 {"class", class_name(d.cls.kind)},
                 {"boundary_degree", d.boundary_degree()},
                 {"interior_degree", d.interior_degree()},
                 {"interior_mult", d.interior_mult},
                 {"boundary_mult", d.boundary_mult}};
    if (d.cls.kind == DiscClass::NormalToOneSide) item["side"] = to_string(d.cls.side);
    list.push_back(item);
  }
  return {{"b", b}, {"interior_cap", c.interior_cap}, {"count", list.size()}, {"by_class", by_class}, {"types", list},
          {"cap_pruned", e.cap_pruned}};
}

json system_json(const MatchingSystem& sys, bool rows) {
  json out = {{"variables", sys.dimension}, {"equations", sys.rows.size()}};
  if (rows) {
    json vars = json::array(), eqs = json::array();
    for (const auto& v : sys.variables) vars.push_back({v.tet, v.disc});
    for (std::size_t r = 0; r < sys.rows.size(); ++r)
      eqs.push_back({{"label", sys.row_labels[r]}, {"row", vector_json(SolutionVector(sys.rows[r].begin(), sys.rows[r].end()))}});
    out["variable_map"] = vars;
    out["rows"] = eqs;
  }
  return out;
}

json basis_json(const Solved& s, const IdealTriangulation& tri) {
  SurfaceSetting st{tri, s.sys, s.universe};
  json list = json::array();
  for (const auto& v : s.basis.elements)
    list.push_back({{"vector", vector_json(v)}, {"weight", weight_of(s.sys, v)}, {"euler", euler_characteristic(st, v)}});
  return {{"elements", list}, {"count", list.size()}, {"truncated", s.basis.truncated}};
}

// Caps and candidates; appends flags to doc.
void candidates_into(json& doc, const Solved& s, const IdealTriangulation& tri, const std::optional<BoundaryPath>& meridian,
                     const std::optional<AngleStructure>& angles, const CandidateParameters& p) {
  if (s.basis.truncated) {
    doc["candidates"] = nullptr;
    doc["candidates_skipped"] = "basis truncated by the coordinate cap";
    return;
  }
  SurfaceSetting st{tri, s.sys, s.universe};
  auto caps = stage("caps", [&] { return coefficient_caps(st, s.basis, p); });
  json kinds = json::array();
  for (auto k : caps.kinds)
    kinds.push_back(k == CapKind::BoundaryTouching ? "boundary_touching" : k == CapKind::ClosedNegative ? "closed_negative" : "closed_nonnegative");
  doc["caps"] = {{"caps", caps.caps}, {"kinds", kinds}, {"link_torus", caps.link_torus}, {"x", caps.x}};
  std::optional<Peripheral> per;
  if (meridian) per.emplace(stage("peripheral", [&] { return Peripheral(tri, *meridian); }));
  const std::optional<SolutionVector> link = link_vector(st);
  json list = json::array();
  stage("candidates", [&] {
    candidate_vectors(st, s.basis, caps, p, &s.conflicts, [&](const Candidate& c) {
      const auto& surf = c.surface;
      json tags = json::array();
      if (surf.closed()) tags.push_back("closed");
      if (is_boundary_parallel_torus(surf)) tags.push_back("boundary_parallel_torus");
      if (link && c.vector.size() == link->size() && add_scaled({}, *link, c.vector.front().second) == c.vector)
        tags.push_back("link_multiple");
      json item = {{"coefficients", c.coefficients},
                   {"vector", vector_json(c.vector)},
                   {"euler", surf.euler},
                   {"boundary_degree", boundary_degree(st, c.vector)},
                   {"components", surf.boundary.size()},
                   {"class_counts", class_counts(st, c.vector)},
                   {"ambiguities", surf.ambiguities},
                   {"tags", tags}};
      item["area"] = angles ? json(to_string(surface_area(st, *angles, c.vector))) : json(nullptr);
      if (per) {
        json cls = json::array();
        bool meridional = !surf.closed();
        for (auto x : boundary_classes(*per, surf)) {
          cls.push_back(x);
          meridional = meridional && x == std::array<std::int64_t, 2>{1, 0};
        }
        item["boundary_classes"] = cls;
        if (meridional) item["tags"].push_back("meridional_boundary");
      }
      list.push_back(std::move(item));
      return true;
    });
    return 0;
  });
  doc["candidates"] = list;
}

std::optional<AngleStructure> structure_for(const IdealTriangulation& tri, const Config& c) {
  AngleSearchOptions o;
  o.allow_flat = c.flat_budget > 0;
  o.flat_budget = c.flat_budget;
  return find_angle_structure(tri, o);
}

}  // namespace

Config parse_config(const json& j) {
  if (!j.is_object()) fail(ErrorKind::Argument, "options must be a JSON object");
  Config c;
  for (auto it = j.begin(); it != j.end(); ++it) {
    const std::string& k = it.key();
    if (k == "depth") c.depth = get_int(*it, "depth", 0);
    else if (k == "flat_budget") c.flat_budget = get_int(*it, "flat_budget", 0);
    else if (k == "n") c.n = get_int(*it, "n", 0);
    else if (k == "interior_cap") c.interior_cap = get_int(*it, "interior_cap", 1);
    else if (k == "coord_cap") c.coord_cap = get_int(*it, "coord_cap", 0);
    else if (k == "threads") c.threads = get_int(*it, "threads", 1);
    else if (k == "factor") c.factor = get_int(*it, "factor", 1);
    else if (k == "b") {
      if (it->is_string() && it->get<std::string>() == "auto") c.b.reset();
      else c.b = get_int(*it, "b", 0);
    } else {
      fail(ErrorKind::Argument, "unknown option " + k);
    }
  }
  return c;
}

json config_json(const Config& c) {
  // threads are left out: they never change results
  return {{"depth", c.depth}, {"flat_budget", c.flat_budget}, {"b", c.b ? json(*c.b) : json("auto")}, {"n", c.n},
          {"interior_cap", c.interior_cap}, {"coord_cap", c.coord_cap}, {"factor", c.factor}};
}

json validate_stage(const IdealTriangulation& tri) {
  auto r = validate(tri);
  return {{"ok", r.ok},
          {"tetrahedra", tri.size()},
          {"edge_classes", r.edge_class_count},
          {"boundary_components", r.boundary_component_count},
          {"boundary_genus", r.boundary_genus},
          {"boundary_orientable", r.boundary_orientable},
          {"boundary_cells", {r.boundary_vertices, r.boundary_edges, r.boundary_triangles}},
          {"diagnostics", r.diagnostics},
          {"isosig", tri.isosig()},
          {"flags", flags_init()}};
}

json angles_stage(const TriangulationFile& in, const Config& c) {
  json doc = {{"flags", flags_init()}};
  AngleSearchOptions o;
  o.allow_flat = c.flat_budget > 0;
  o.flat_budget = c.flat_budget;
  auto found = stage("search", [&] { return search_angled_triangulation(in.tri, in.meridian, c.depth, o); });
  doc["angle_structure_found"] = bool(found);
  if (!found) return doc;
  doc["depth"] = found->depth;
  doc["moves"] = found->moves;
  doc["isosig"] = found->tri.isosig();
  doc["tetrahedra"] = found->tri.size();
  doc["structure"] = angles_json(found->angles);
  doc["verified"] = verify_angle_structure(found->tri, found->angles);
  if (found->angles.condition4_unverified()) add_flag(doc, "angles: condition4_unverified");
  return doc;
}

json meridian_bound_stage(const TriangulationFile& in) {
  json doc = {{"flags", flags_init()}};
  auto mb = stage("meridian-bound", [&] { return bound_of(in.tri, *require_meridian(in)); });
  doc["meridian_bound"] = bound_json(mb);
  if (!mb.standard_terminal) add_flag(doc, "meridian-bound: nonstandard_terminal");
  return doc;
}

json discs_stage(const Config& c, const TriangulationFile* in) {
  json doc = {{"flags", flags_init()}};
  int b = 0;
  if (c.b) {
    b = *c.b;
  } else {
    if (!in) fail(ErrorKind::Argument, "automatic budget needs an input triangulation");
    auto mb = stage("meridian-bound", [&] { return bound_of(in->tri, *require_meridian(*in)); });
    b = auto_budget(mb, c);
  }
  auto e = stage("discs", [&] { return enumerate_disc_types(b, c.interior_cap, c.threads); });
  doc["discs"] = discs_json(e, b, c);
  if (e.cap_pruned) add_flag(doc, "discs: cap_pruned");
  return doc;
}

namespace {

int budget_for(const TriangulationFile& in, const Config& c, json& doc) {
  if (c.b) {
    doc["budgets"] = {{"n", c.n}, {"b", *c.b}, {"b_source", "explicit"}};
    return *c.b;
  }
  auto mb = stage("meridian-bound", [&] { return bound_of(in.tri, *require_meridian(in)); });
  doc["meridian_bound"] = bound_json(mb);
  if (!mb.standard_terminal) add_flag(doc, "meridian-bound: nonstandard_terminal");
  int b = auto_budget(mb, c);
  doc["budgets"] = {{"n", c.n}, {"b", b}, {"b_source", "auto"}, {"factor", c.factor}, {"u", to_string(mb.u)}};
  return b;
}

}  // namespace

json match_stage(const TriangulationFile& in, const Config& c) {
  json doc = {{"flags", flags_init()}};
  int b = budget_for(in, c, doc);
  Solved s;
  build(s, in.tri, b, c, false);
  if (s.enumeration.cap_pruned) add_flag(doc, "discs: cap_pruned");
  doc["system"] = system_json(s.sys, true);
  return doc;
}

json fundamental_stage(const TriangulationFile& in, const Config& c) {
  json doc = {{"flags", flags_init()}};
  int b = budget_for(in, c, doc);
  Solved s;
  build(s, in.tri, b, c, true);
  if (s.enumeration.cap_pruned) add_flag(doc, "discs: cap_pruned");
  doc["system"] = system_json(s.sys, false);
  doc["fundamental"] = basis_json(s, in.tri);
  if (s.basis.truncated) add_flag(doc, "fundamental: truncated");
  return doc;
}

json candidates_stage(const TriangulationFile& in, const Config& c) {
  json doc = {{"flags", flags_init()}};
  int b = budget_for(in, c, doc);
  auto angles = stage("angles", [&] { return structure_for(in.tri, c); });
  doc["angle_structure_found"] = bool(angles);
  if (angles && angles->condition4_unverified()) add_flag(doc, "angles: condition4_unverified");
  Solved s;
  build(s, in.tri, b, c, true);
  if (s.enumeration.cap_pruned) add_flag(doc, "discs: cap_pruned");
  doc["system"] = system_json(s.sys, false);
  doc["fundamental"] = basis_json(s, in.tri);
  if (s.basis.truncated) add_flag(doc, "fundamental: truncated");
  candidates_into(doc, s, in.tri, in.meridian, angles, {c.n, b});
  return doc;
}

json pipeline(const TriangulationFile& in, const Config& c) {
  json doc = {{"flags", flags_init()}, {"config", config_json(c)}};
  doc["input"] = {{"tetrahedra", in.tri.size()}, {"isosig", in.tri.isosig()}, {"meridian", bool(in.meridian)}};
  auto v = validate(in.tri);
  if (!v.ok) {
    std::string msg = "validate: triangulation is not a one-cusped torus-boundary triangulation";
    for (const auto& d : v.diagnostics) msg += "; " + d;
    fail(ErrorKind::Invalid, msg);
  }
  AngleSearchOptions o;
  o.allow_flat = c.flat_budget > 0;
  o.flat_budget = c.flat_budget;
  auto found = stage("search", [&] { return search_angled_triangulation(in.tri, in.meridian, c.depth, o); });
  doc["angle_structure_found"] = bool(found);
  if (!found) return doc;
  doc["search"] = {{"depth", found->depth},
                   {"moves", found->moves},
                   {"isosig", found->tri.isosig()},
                   {"tetrahedra", found->tri.size()},
                   {"structure", angles_json(found->angles)}};
  if (found->angles.condition4_unverified()) add_flag(doc, "angles: condition4_unverified");

  TriangulationFile work{found->tri, found->meridian};
  int b = budget_for(work, c, doc);
  Solved s;
  build(s, work.tri, b, c, true);
  doc["discs"] = {{"b", b},
                  {"interior_cap", c.interior_cap},
                  {"count", std::count_if(s.enumeration.discs.begin(), s.enumeration.discs.end(),
                                          [](const DiscType& d) { return d.cls.kind != DiscClass::Rejected; })},
                  {"cap_pruned", s.enumeration.cap_pruned}};
  if (s.enumeration.cap_pruned) add_flag(doc, "discs: cap_pruned");
  doc["system"] = system_json(s.sys, false);
  doc["fundamental"] = basis_json(s, work.tri);
  if (s.basis.truncated) add_flag(doc, "fundamental: truncated");
  candidates_into(doc, s, work.tri, work.meridian, found->angles, {c.n, b});
  return doc;
}

}  // namespace bsurf::report
