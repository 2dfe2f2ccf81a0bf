#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

namespace troplanar {

/// Finite multigraph with loops and parallel edges. Edge ids are stable
/// indices into edges(); each edge is stored with its smaller endpoint first.
class Multigraph {
 public:
  Multigraph() = default;
  explicit Multigraph(int vertices) : n_(vertices) {}
  Multigraph(int vertices, std::vector<std::pair<int, int>> edges);

  int vertex_count() const { return n_; }
  int edge_count() const { return static_cast<int>(edges_.size()); }
  const std::vector<std::pair<int, int>>& edges() const { return edges_; }
  std::pair<int, int> edge(int id) const { return edges_[id]; }

  int add_vertex() { return n_++; }
  int add_edge(int u, int v);

  int degree(int v) const;
  std::vector<int> degrees() const;
  int multiplicity(int u, int v) const;
  // Incident edge ids per vertex; a loop is listed twice.
  std::vector<std::vector<int>> incidence() const;

  int component_count() const;
  bool connected() const { return component_count() == 1; }
  // First Betti number |E| - |V| + #components.
  int genus() const;
  bool is_trivalent() const;

  // Keeps only the listed vertices (in the given order) and edges among them.
  Multigraph induced(const std::vector<int>& keep) const;
  Multigraph relabeled(const std::vector<int>& perm) const;  // v -> perm[v]

  std::string to_text() const;  // "n m : u-v ..."
  static Multigraph from_text(const std::string& line);

  friend bool operator==(const Multigraph& a, const Multigraph& b) {
    return a.n_ == b.n_ && a.edges_ == b.edges_;
  }

 private:
  int n_ = 0;
  std::vector<std::pair<int, int>> edges_;
};

struct MarkedGraph {
  Multigraph graph;
  int left = 0;
  int right = 0;
};

struct BridgeData {
  std::vector<int> bridges;          // edge ids, sorted
  std::vector<int> component;        // 2-edge-connected component per vertex
  int component_count = 0;
};

BridgeData bridges_and_components(const Multigraph& g);

using Certificate = std::string;

// Canonical labeling by color refinement and individualization; the
// certificate is the hex encoding of the least adjacency serialization.
Certificate certificate(const Multigraph& g);
Certificate marked_certificate(const MarkedGraph& m);
// Canonical relabeling achieving the certificate (perm[v] = new label).
std::vector<int> canonical_labeling(const Multigraph& g, const std::vector<int>& colors);
Certificate certificate_with_colors(const Multigraph& g, const std::vector<int>& colors);

Multigraph graph_from_certificate(const Certificate& c);

// Removes v (deg 2) and joins its two neighbors; returns false if v carries a loop.
bool suppress_vertex(Multigraph& g, int v);
// Deletes isolated and removed vertices: compacts labels.
Multigraph compact(const Multigraph& g, const std::vector<bool>& alive);

// Repeatedly deletes degree-1 vertices, then suppresses degree-2 vertices.
// A lone cycle collapses to one vertex with a loop.
Multigraph prune_and_smooth(const Multigraph& g);

struct SmoothResult {
  Multigraph graph;
  std::vector<int> vertex_origin;           // input vertex per output vertex
  std::vector<std::vector<int>> edge_paths;  // input vertices along each output edge
};
SmoothResult prune_and_smooth_traced(const Multigraph& g, bool trace = true);

Multigraph theta_graph();
Multigraph dumbbell_graph();
Multigraph loop_graph();

// bits[i] == '1': bridge between cycles i and i+1; '0': shared edge.
Multigraph chain(const std::string& bits);
std::vector<std::string> chain_strings(int genus);  // one per chain up to reversal
std::uint64_t chain_count_formula(int genus);

// All connected trivalent multigraphs of genus g, as sorted certificates.
std::vector<Certificate> enumerate_trivalent(int g);

std::string to_dot(const Multigraph& g, const std::string& name = "G");

}  // namespace troplanar
