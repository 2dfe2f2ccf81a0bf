#pragma once

#include <functional>
#include <vector>

#include "troplanar/multigraph.hpp"

namespace troplanar {

// Darts: edge e has dart 2e at edges()[e].first and 2e+1 at edges()[e].second.
inline int dart_twin(int d) { return d ^ 1; }
int dart_vertex(const Multigraph& g, int d);

struct EmbeddedGraph {
  Multigraph graph;
  std::vector<std::vector<int>> rotation;  // cyclic dart order per vertex
  std::vector<std::vector<int>> faces;     // dart sequences of the boundary walks
  std::vector<int> dart_face;
  int outer_face = 0;
};

constexpr int max_embedding_vertices = 16;

// Face tracing for a rotation system.
EmbeddedGraph embed(const Multigraph& g, std::vector<std::vector<int>> rotation);

// Every rotation system of a connected graph whose face count satisfies
// Euler's formula. With outer_face_views, one copy per choice of outer face.
std::vector<EmbeddedGraph> planar_embeddings(const Multigraph& g, bool outer_face_views = false);
// Visits planar rotation systems; stops when the callback returns false.
void for_each_planar_embedding(const Multigraph& g, const std::function<bool(const EmbeddedGraph&)>& fn);

bool is_planar(const Multigraph& g);
// Independent check through the Boyer-Myrvold test on a simple subdivision.
bool is_planar_reference(const Multigraph& g);

// Some vertex whose deletion leaves at least three components.
bool is_sprawling(const Multigraph& g);

// Whether the embedding with the given outer face has two considered faces
// sharing at least two edges, or a considered face traversing an edge twice.
// Only bounded faces are considered unless all_faces is set.
bool embedding_is_crowded(const EmbeddedGraph& e, int outer_face, bool all_faces = false);
// Every planar embedding with every choice of outer face is crowded.
// Throws std::invalid_argument for nonplanar graphs.
bool is_crowded(const Multigraph& g, bool all_faces = false);

struct TieFighterWitness {
  int v1 = -1, v2 = -1;
  int e1 = -1, e2 = -1;
};
bool is_tie_fighter(const Multigraph& g, TieFighterWitness* witness = nullptr);

// Path v1 v2 v3 where each vi has a neighbor off the path that carries a loop.
bool has_triple_loop_path(const Multigraph& g);

// Deletes the bridge and smooths its endpoints; a bare loop becomes the
// one-vertex loop graph. Components are ordered by the bridge's endpoints.
std::vector<Multigraph> bridge_split(const Multigraph& g, int bridge);

// A bridge is reducible unless all six edge ends at its two endpoints lie on
// bridges; reducing such a bridge only permutes the hanging pieces.
bool is_reducible_bridge(const Multigraph& g, int bridge);
std::vector<int> reducible_bridges(const Multigraph& g);

// Replaces the bridge (v, w) by splitting v and w and rejoining their other
// edge ends in both possible pairings. Results deduplicated by certificate.
// Throws std::invalid_argument for bridges that are not reducible.
std::vector<Multigraph> bridge_reduce(const Multigraph& g, int bridge);
// The single pairing that keeps the given planar embedding planar.
Multigraph bridge_reduce_embedded(const EmbeddedGraph& e, int bridge);

// Picks which bridge to reduce next among the current reducible bridge ids.
using BridgeChooser = std::function<int(const Multigraph&, const std::vector<int>&)>;
BridgeChooser first_bridge_chooser();

// All 2-edge-connected graphs reachable by repeated bridge reduction, as
// sorted certificates.
std::vector<Certificate> reduce_to_2ec(const Multigraph& g, const BridgeChooser& choose = first_bridge_chooser());

}  // namespace troplanar
