#pragma once

#include <optional>
#include <string>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>
#include <json.hpp>

#include "troplanar/lattice.hpp"
#include "troplanar/multigraph.hpp"
#include "troplanar/triangulation.hpp"

namespace troplanar {

using BigInt = boost::multiprecision::cpp_int;

// Hull of (0,3), (1,0), (g/2,3), ((g+2)/2,0).
LatticePolygon parallelogram(int g);

enum class Parity { Odd, Even };

// Q_n^odd = (0,3),(2,0),(n+2,3),(n+3,0); Q_n^even adds (0,1).
LatticePolygon q_polygon(int n, Parity parity);
std::pair<LatticePolygon, LatticePolygon> q_polygons(int n);

// What a triangulated piece adds to the skeleton once its slanted edges are
// glued to neighbours: the graph with the two bridge attachment vertices.
struct Contribution {
  MarkedGraph marked;
  // 2-edge-connected components from left to right, each with its own marks.
  std::vector<MarkedGraph> components;
  bool chain_form = false;  // components joined in a path by the only bridges
};

struct Tile {
  int genus = 0;
  Triangulation triangulation;
  MarkedGraph marked_graph;
  std::vector<Certificate> components;  // marked certificates, left to right
  bool bridged = false;
  Certificate certificate() const { return marked_certificate(marked_graph); }
};

// Contribution of a triangulation of parallelogram(2k) placed between neighbours.
Contribution tile_contribution(const Triangulation& t);

struct TileSet {
  int genus = 0;
  std::size_t triangulations = 0;
  std::vector<Tile> tiles;  // bridgeless first, each group ordered by marked certificate
  std::size_t bridgeless() const;
  std::size_t bridged() const;
};

// k in {1,2,3}: tiles of genus 2k.
TileSet derive_tiles(int k);

// Fixed triangulations of the pieces of Q_n outside the tiled parallelogram.
struct EndCaps {
  Triangulation left_odd, left_even, right;
};
const EndCaps& end_caps();

struct Assembly {
  Triangulation triangulation;
  Multigraph skeleton;
  Certificate certificate;
  bool regular = false;
};

// Tiles in order from left to right; their genera sum to 2n.
Assembly assemble(const std::vector<const Tile*>& sequence, Parity parity, bool check_regularity = true);

struct DistinctnessReport {
  int n = 0;
  std::size_t sequences = 0;
  std::size_t distinct_odd = 0, distinct_even = 0;
  bool all_regular = true;
  BigInt expected;          // a_n with coefficients 2, 13, 75
  BigInt expected_derived;  // the same recurrence with the supplied tile counts
};
// Assembles every tile sequence of total genus 2n. Guarded to n <= 4.
DistinctnessReport verify_distinctness(int n, const std::vector<TileSet>& tiles, bool check_regularity = true);

// a_0 = 1, a_n = c1 a_{n-1} + c2 a_{n-2} + c3 a_{n-3} (terms with negative index vanish).
BigInt tiling_recurrence(int n, unsigned c1, unsigned c2, unsigned c3);
BigInt recurrence_a(int n);  // coefficients 2, 13, 75

struct ClosedForm {
  double alpha = 0, r = 0, theta = 0, a_coeff = 0;
  double b_re = 0, b_im = 0;
  double max_relative_error = 0;  // over n = 5..n_max
  double ratio_at_n_max = 0;      // a_n / a_{n-1}
  int n_max = 0;
};
ClosedForm closed_form_check(int n_max = 40);

struct LowerBoundReport {
  int genus = 0;
  int n = 0;
  BigInt tiling_bound;  // a_{floor((g-3)/2)}
  BigInt chain_bound;   // 2^{g-2} + 2^{floor((g-2)/2)}
  std::optional<BigInt> derived_tiling_bound;  // with the derived tile counts, when supplied
  double gamma = 0;
  double gamma_power = 0;
  std::optional<std::size_t> census;
};
LowerBoundReport lower_bound_report(int g, std::optional<std::size_t> census = std::nullopt,
                                    const std::vector<TileSet>* derived = nullptr);

nlohmann::json to_json(const Tile& t);
nlohmann::json to_json(const TileSet& s);
nlohmann::json to_json(const DistinctnessReport& r);
nlohmann::json to_json(const ClosedForm& c);
nlohmann::json to_json(const LowerBoundReport& r);

}  // namespace troplanar
