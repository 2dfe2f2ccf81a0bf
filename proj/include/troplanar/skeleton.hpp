#pragma once

#include <array>
#include <vector>

#include "troplanar/multigraph.hpp"
#include "troplanar/triangulation.hpp"

namespace troplanar {

struct DualGraph {
  Multigraph graph;                         // one vertex per triangle
  std::vector<std::array<int, 3>> triangles;  // point-index triples, vertex order
  std::vector<int> edge_origin;             // triangulation edge id per dual edge
};

DualGraph dual_graph(const Triangulation& t);

struct Skeleton {
  Multigraph graph;
  std::vector<int> vertex_triangle;              // triangle index per skeleton vertex
  std::vector<std::vector<int>> edge_triangles;  // triangles traversed by each skeleton edge
};

// Prunes leaves of the dual graph and smooths 2-valent vertices. Requires
// polygon genus >= 1.
Skeleton skeleton_traced(const Triangulation& t);
Multigraph skeleton(const Triangulation& t);

}  // namespace troplanar
