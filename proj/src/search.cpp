#include "bridgesurf/search.hpp"

#include "bridgesurf/error.hpp"

#include <algorithm>
#include <set>

namespace bsurf {

namespace {

struct Node {
  IdealTriangulation tri;
  std::optional<BoundaryPath> meridian;
  std::vector<std::string> moves;
  std::string sig;
};

}  // namespace

std::optional<AngledTriangulation> search_angled_triangulation(const IdealTriangulation& tri,
                                                               const std::optional<BoundaryPath>& meridian, int depth,
                                                               const AngleSearchOptions& opts) {
  if (depth < 0) fail(ErrorKind::Argument, "search depth must be non-negative");
  std::vector<Node> level{{tri, meridian, {}, tri.isosig()}};
  std::set<std::string> seen{level[0].sig};
  for (int d = 0;; ++d) {
    for (const Node& node : level) {
      if (auto a = find_angle_structure(node.tri, opts))
        return AngledTriangulation{node.tri, *a, node.meridian, d, node.moves};
    }
    if (d == depth) return std::nullopt;
    std::vector<Node> next;
    auto add = [&](const Node& parent, const PachnerMove& move, std::string label) {
      std::string sig = move.result.isosig();
      if (!seen.insert(sig).second) return;
      Node child{move.result, std::nullopt, parent.moves, std::move(sig)};
      child.moves.push_back(std::move(label));
      if (parent.meridian) child.meridian = transport(parent.tri, move, *parent.meridian);
      next.push_back(std::move(child));
    };
    for (const Node& node : level) {
      for (int fc = 0; fc < node.tri.face_class_count(); ++fc)
        if (can_pachner_23(node.tri, fc)) add(node, pachner_23(node.tri, fc), "2-3 face " + std::to_string(fc));
      for (int ec = 0; ec < node.tri.edge_class_count(); ++ec)
        if (can_pachner_32(node.tri, ec)) add(node, pachner_32(node.tri, ec), "3-2 edge " + std::to_string(ec));
    }
    std::stable_sort(next.begin(), next.end(), [](const Node& a, const Node& b) { return a.sig < b.sig; });
    level = std::move(next);
    if (level.empty()) return std::nullopt;
  }
}

}  // namespace bsurf
