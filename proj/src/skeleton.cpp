#include "troplanar/skeleton.hpp"

#include <algorithm>
#include <stdexcept>

namespace troplanar {

DualGraph dual_graph(const Triangulation& t) {
  DualGraph d;
  d.triangles = t.triangles();
  d.graph = Multigraph(static_cast<int>(d.triangles.size()));
  auto index = [&](int a, int b, int c) {
    std::array<int, 3> key{a, b, c};
    std::sort(key.begin(), key.end());
    auto it = std::lower_bound(d.triangles.begin(), d.triangles.end(), key);
    return static_cast<int>(it - d.triangles.begin());
  };
  const auto& cfg = t.config();
  for (int id : t.edge_ids()) {
    if (cfg.is_boundary_edge(id)) continue;
    auto [a, b] = cfg.edge(id);
    d.graph.add_edge(index(a, b, t.apex(id, 0)), index(a, b, t.apex(id, 1)));
    d.edge_origin.push_back(id);
  }
  return d;
}

Skeleton skeleton_traced(const Triangulation& t) {
  if (t.polygon().genus() < 1) throw std::invalid_argument("skeleton needs a polygon of positive genus");
  auto smooth = prune_and_smooth_traced(dual_graph(t).graph, true);
  Skeleton s{std::move(smooth.graph), std::move(smooth.vertex_origin), std::move(smooth.edge_paths)};
  if (s.graph.genus() != t.polygon().genus()) throw std::logic_error("skeleton genus differs from polygon genus");
  return s;
}

Multigraph skeleton(const Triangulation& t) {
  if (t.polygon().genus() < 1) throw std::invalid_argument("skeleton needs a polygon of positive genus");
  Multigraph g = prune_and_smooth(dual_graph(t).graph);
  if (g.genus() != t.polygon().genus()) throw std::logic_error("skeleton genus differs from polygon genus");
  if (t.polygon().genus() >= 2 && (!g.is_trivalent() || g.vertex_count() != 2 * t.polygon().genus() - 2))
    throw std::logic_error("skeleton is not trivalent");
  return g;
}

}  // namespace troplanar
