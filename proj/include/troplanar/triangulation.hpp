#pragma once

#include <array>
#include <cstdint>
#include <functional>
#include <memory>
#include <optional>
#include <string>
#include <utility>
#include <vector>

#include "troplanar/lattice.hpp"

namespace troplanar {

using EdgeBits = std::vector<std::uint64_t>;

enum class SymmetryGroup { Trivial, Rotations, Full };

/// Lattice points of a polygon together with every primitive segment between
/// them. Unimodular triangulations are subsets of these segments.
class PointConfiguration {
 public:
  explicit PointConfiguration(LatticePolygon polygon);

  const LatticePolygon& polygon() const { return polygon_; }
  const std::vector<LatticePoint>& points() const { return points_; }
  int point_count() const { return static_cast<int>(points_.size()); }
  int index_of(LatticePoint p) const;

  int edge_count() const { return static_cast<int>(edges_.size()); }
  int words() const { return words_; }
  std::pair<int, int> edge(int id) const { return edges_[id]; }
  int edge_id(int a, int b) const { return edge_index_[a * point_count() + b]; }
  bool is_boundary_edge(int id) const { return boundary_[id]; }
  bool crosses(int e, int f) const;

  struct Apex {
    int point;
    int edge_a;  // edge from the first endpoint to the apex
    int edge_b;  // edge from the second endpoint to the apex
  };
  // side 0: apexes c with orient(a, b, c) == 1; side 1: orient == -1.
  const std::vector<Apex>& apexes(int id, int side) const { return apexes_[2 * id + side]; }

  // Permutations of edge ids induced by polygon automorphisms of the group.
  const std::vector<std::vector<int>>& edge_permutations(SymmetryGroup group) const;
  const std::vector<std::vector<int>>& point_permutations(SymmetryGroup group) const;

 private:
  LatticePolygon polygon_;
  std::vector<LatticePoint> points_;
  std::vector<std::pair<int, int>> edges_;
  std::vector<int> edge_index_;
  std::vector<bool> boundary_;
  std::vector<std::vector<Apex>> apexes_;
  int words_ = 0;
  std::array<std::vector<std::vector<int>>, 3> edge_perms_;
  std::array<std::vector<std::vector<int>>, 3> point_perms_;
};

using ConfigPtr = std::shared_ptr<const PointConfiguration>;

ConfigPtr make_configuration(const LatticePolygon& p);

/// Unimodular triangulation stored as the set of its edges.
class Triangulation {
 public:
  Triangulation(ConfigPtr config, EdgeBits edges);

  static Triangulation from_triangles(ConfigPtr config, const std::vector<std::array<LatticePoint, 3>>& triangles);

  const PointConfiguration& config() const { return *config_; }
  const ConfigPtr& config_ptr() const { return config_; }
  const LatticePolygon& polygon() const { return config_->polygon(); }
  const EdgeBits& bits() const { return bits_; }
  bool has_edge(int id) const { return (bits_[id >> 6] >> (id & 63)) & 1; }
  std::vector<int> edge_ids() const;

  // Point indices of the triangle on the given side of an edge, or -1.
  int apex(int edge, int side) const;

  // Triangles as sorted point-index triples, sorted.
  std::vector<std::array<int, 3>> triangles() const;
  std::vector<std::array<LatticePoint, 3>> lattice_triangles() const;

  // Throws std::logic_error unless the edges form a unimodular triangulation.
  void validate() const;

  // Hex encoding of the edge set; stable for a fixed polygon.
  std::string id() const;
  static Triangulation from_id(ConfigPtr config, const std::string& hex);

  Triangulation transformed_by(const std::vector<int>& edge_perm) const;

  friend bool operator==(const Triangulation& a, const Triangulation& b) { return a.bits_ == b.bits_; }

 private:
  ConfigPtr config_;
  EdgeBits bits_;
};

std::optional<Triangulation> bistellar_flip(const Triangulation& t, int edge);
std::optional<Triangulation> bistellar_flip(const Triangulation& t, LatticePoint a, LatticePoint b);

// A fixed starting triangulation: greedily insert primitive segments by
// increasing length, skipping any that cross what is already present.
Triangulation greedy_triangulation(ConfigPtr config);

struct OrbitInfo {
  std::size_t orbit_size = 1;  // labeled triangulations in the orbit
  std::size_t level = 0;       // flip distance from the seed orbit
};

struct EnumerationStats {
  std::size_t orbits = 0;
  std::size_t labeled = 0;
  std::size_t levels = 0;
  std::size_t peak_stored = 0;
};

// Breadth-first traversal of the flip graph modulo the chosen symmetry group.
// Calls visit once per orbit with its canonical representative. The visited
// set only keeps three consecutive BFS levels. Returning false stops early.
EnumerationStats for_each_triangulation_orbit(const ConfigPtr& config, SymmetryGroup group,
                                              const std::function<bool(const Triangulation&, const OrbitInfo&)>& visit);

// Least image of the edge set under the group; also returns the stabilizer order.
EdgeBits canonical_bits(const PointConfiguration& config, SymmetryGroup group, const EdgeBits& bits,
                        std::size_t* stabilizer = nullptr);

// Independent enumeration by recursive insertion of non-crossing primitive
// segments. Intended for small polygons.
std::vector<EdgeBits> placement_oracle(const PointConfiguration& config);

struct Split {
  LatticePoint a, b;
  LatticePolygon left, right;
  bool nontrivial = false;
};

std::vector<Split> splits(const Triangulation& t);

std::string to_json(const Triangulation& t);
// Straight-line drawing with pinned lattice coordinates (for neato -n).
std::string to_dot(const Triangulation& t, const std::string& name = "T");
Triangulation triangulation_from_json(const std::string& text);

}  // namespace troplanar
