#pragma once

#include <cstdint>
#include <filesystem>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "troplanar/lattice.hpp"
#include "troplanar/multigraph.hpp"

namespace troplanar {

struct CensusOptions {
  int threads = 1;
  bool long_run = false;
  bool symmetry_reduction = true;
  // Check every triangulation orbit for regularity instead of one per
  // (polygon, certificate), recording every regular orbit.
  bool full_provenance = false;
  std::optional<std::filesystem::path> db;
  double checkpoint_seconds = 60;
  // Stop after this many polygons finish in this invocation (simulated interruption).
  int stop_after_polygons = -1;
  std::function<void(const std::string&)> progress;
};

struct Provenance {
  std::optional<LatticePolygon> polygon;  // empty for a chain
  std::string triangulation;              // triangulation id within the polygon
  std::string chain;                      // chain string for hyperelliptic entries
  int lattice_width = 2;
};

struct PolygonStats {
  LatticePolygon polygon;
  int lattice_width = 0;
  int boundary_points = 0;
  std::uint64_t orbits = 0;
  std::uint64_t labeled = 0;
  std::uint64_t regularity_checks = 0;
  std::uint64_t regular_found = 0;
  std::uint64_t nonregular_found = 0;
  std::uint64_t certificates = 0;
};

struct CensusRecord {
  int genus = 0;
  bool complete = false;
  bool full_provenance = false;
  bool symmetry_reduction = true;
  std::vector<Certificate> certificates;  // sorted
  std::map<Certificate, std::vector<Provenance>> provenance;
  std::vector<PolygonStats> polygons;

  bool contains(const Certificate& c) const;
  bool two_edge_connected(const Certificate& c) const;
  bool from_hyperelliptic(const Certificate& c) const;
  std::size_t two_edge_connected_count() const;
};

// Throws ResourceGuard outside 2..7, or for genus 7 without long_run.
void check_census_genus(int g, bool long_run);

CensusRecord run_census(int g, const CensusOptions& options = {});

// Canonical serialization; equal records give identical bytes.
std::string snapshot_bytes(const CensusRecord& rec);
CensusRecord record_from_snapshot(const std::string& bytes);
// Rebuilds the record from an event log, using only finished polygons.
CensusRecord replay_events(int g, const std::vector<nlohmann::json>& events);
std::filesystem::path genus_directory(const std::filesystem::path& db, int g);

struct Stratification {
  int genus = 0;
  std::size_t total = 0;
  // Certificates arising from some polygon of the given width (overlapping).
  std::size_t width2 = 0, width3 = 0, width4plus = 0;
  // Partition by the least width over each certificate's provenance.
  std::map<int, std::size_t> by_min_width;
  std::size_t chains_also_nonhyperelliptic = 0;
  bool width3_interiors_are_trapezoids = true;
};
Stratification stratify_by_lattice_width(const CensusRecord& rec);

struct BreakdownReport {
  int genus = 0;
  std::size_t total = 0, troplanar = 0, nonplanar = 0, sprawling = 0, crowded = 0, both = 0;
  std::size_t tie_new = 0, bridge_del_new = 0, unresolved = 0;
  std::vector<Certificate> tie_fighters, bridge_deleted, unresolved_graphs;
  // Two-edge-connected planar non-troplanar graphs that are not crowded.
  std::vector<Certificate> open_question_candidates;
};
// records must hold complete censuses for every genus 2..g.
BreakdownReport breakdown_report(int g, const std::map<int, CensusRecord>& records, bool all_faces = false);

struct BoundsReport {
  int genus = 0;
  std::size_t troplanar = 0, two_edge_connected = 0;
  std::string corollary_bound;  // 2^{g-1} times the 2-edge-connected count, decimal
  bool corollary_holds = false;
  struct PolygonBound {
    LatticePolygon polygon;
    int lattice_width = 0, boundary_points = 0;
    std::uint64_t observed = 0;
    int exponent = 0;  // 3g + r - 3
    bool holds = false;
  };
  std::vector<PolygonBound> polygons;
  std::size_t stratified_sum = 0;
  struct Strip {
    int a = 0, b = 0;
    std::uint64_t counted = 0, binomial = 0;
  };
  std::vector<Strip> strips;
  std::uint64_t central_binomial = 0;
};
BoundsReport bound_report(int g, const CensusRecord& rec);

struct TableRow {
  int genus = 0;
  std::size_t trivalent = 0, planar = 0;
};
TableRow table_row(int g);

nlohmann::json to_json(const CensusRecord& rec, bool with_provenance);
nlohmann::json to_json(const Stratification& s);
nlohmann::json to_json(const BreakdownReport& b);
nlohmann::json to_json(const BoundsReport& b);
nlohmann::json to_json(const TableRow& t);

}  // namespace troplanar
