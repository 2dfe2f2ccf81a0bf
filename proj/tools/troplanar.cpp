#include <cstdlib>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>

#include <CLI11.hpp>
#include <json.hpp>

#include "troplanar/census.hpp"
#include "troplanar/criteria.hpp"
#include "troplanar/database.hpp"
#include "troplanar/errors.hpp"
#include "troplanar/regularity.hpp"
#include "troplanar/skeleton.hpp"
#include "troplanar/tiling.hpp"

using namespace troplanar;
using json = nlohmann::json;

namespace {

const std::vector<std::string> kVerbs{"census", "breakdown", "stratify",    "bounds",       "polygons",  "triangulate",
                                      "classify", "tiles",   "lower-bound", "verify-tiling", "export-dot"};

constexpr int kExitError = 1;
constexpr int kExitGuard = 2;
constexpr int kExitUsage = 64;

std::string usage() {
  std::ostringstream os;
  os << "usage: troplanar <verb> [options]\n\nverbs:\n";
  for (const auto& v : kVerbs) os << "  " << v << "\n";
  os << "\nrun 'troplanar <verb> --help' for the options of a verb\n";
  return os.str();
}

struct CensusFlags {
  int genus = 0;
  int threads = 1;
  std::string db;
  bool long_run = false;
  bool no_symmetry = false;
  bool full_provenance = false;
  double checkpoint = 60;
  bool quiet = false;
};

void add_census_flags(CLI::App* sub, CensusFlags& f) {
  sub->add_option("--genus,-g", f.genus, "genus of the census")->required();
  sub->add_option("--threads,-j", f.threads, "worker threads");
  sub->add_option("--db", f.db, "database directory (TROPLANAR_DB overrides)");
  sub->add_flag("--long-run", f.long_run, "allow the genus 7 census");
  sub->add_flag("--no-symmetry", f.no_symmetry, "enumerate labeled triangulations instead of orbits");
  sub->add_flag("--full-provenance", f.full_provenance, "check and record every regular orbit");
  sub->add_option("--checkpoint", f.checkpoint, "seconds between progress events in the log");
  sub->add_flag("--quiet,-q", f.quiet, "no progress on stderr");
}

std::optional<std::filesystem::path> database_path(const std::string& flag) {
  if (const char* env = std::getenv("TROPLANAR_DB"); env && *env) return std::filesystem::path(env);
  if (!flag.empty()) return std::filesystem::path(flag);
  return std::nullopt;
}

CensusOptions census_options(const CensusFlags& f) {
  if (f.threads < 1) throw std::invalid_argument("--threads must be at least 1");
  CensusOptions o;
  o.threads = f.threads;
  o.long_run = f.long_run;
  o.symmetry_reduction = !f.no_symmetry;
  o.full_provenance = f.full_provenance;
  o.db = database_path(f.db);
  o.checkpoint_seconds = f.checkpoint;
  if (!f.quiet) o.progress = [](const std::string& m) { std::cerr << m << "\n"; };
  return o;
}

CensusRecord obtain(int g, const CensusFlags& f) {
  check_census_genus(g, f.long_run);
  return run_census(g, census_options(f));
}

std::vector<LatticePoint> parse_points(const std::string& text) {
  std::vector<LatticePoint> out;
  std::string t = text;
  for (char& c : t)
    if (c == ',' || c == '(' || c == ')' || c == '[' || c == ']' || c == ';') c = ' ';
  std::istringstream in(t);
  std::int64_t x, y;
  while (in >> x) {
    if (!(in >> y)) throw std::invalid_argument("odd number of coordinates in polygon");
    out.push_back({x, y});
  }
  if (!in.eof()) throw std::invalid_argument("could not parse polygon coordinates");
  return out;
}

json points_json(const std::vector<LatticePoint>& v) {
  json a = json::array();
  for (const auto& p : v) a.push_back({p.x, p.y});
  return a;
}

void emit(const json& j) { std::cout << j.dump(2) << "\n"; }

std::optional<CensusRecord> stored_census(const std::optional<std::filesystem::path>& db, int g) {
  if (!db) return std::nullopt;
  auto head = head_snapshot(genus_directory(*db, g));
  if (!head) return std::nullopt;
  auto rec = record_from_snapshot(read_file(head->file));
  if (!rec.complete) return std::nullopt;
  return rec;
}

json classify_line(const std::string& line, const std::optional<std::filesystem::path>& db) {
  auto g = Multigraph::from_text(line);
  json j;
  j["input"] = line;
  j["certificate"] = certificate(g);
  j["genus"] = g.genus();
  j["trivalent"] = g.is_trivalent();
  bool planar = is_planar(g);
  j["planar"] = planar;
  j["sprawling"] = is_sprawling(g);
  j["crowded"] = planar ? json(is_crowded(g)) : json(nullptr);
  j["tie_fighter"] = is_tie_fighter(g);
  j["triple_loop"] = has_triple_loop_path(g);
  json bridges = json::array();
  for (int e : bridges_and_components(g).bridges) bridges.push_back({g.edge(e).first, g.edge(e).second});
  j["bridges"] = bridges;
  if (auto rec = stored_census(db, g.genus())) j["troplanar"] = rec->contains(j["certificate"].get<std::string>());
  return j;
}

}  // namespace

int main(int argc, char** argv) {
  if (argc < 2) {
    std::cerr << usage();
    return kExitUsage;
  }
  int verb_at = 1;
  std::string first = argv[1];
  if (first.starts_with("--config")) {
    verb_at = first.find('=') == std::string::npos ? 3 : 2;
    if (verb_at >= argc) {
      std::cerr << usage();
      return kExitUsage;
    }
    first = argv[verb_at];
  }
  if (first == "--help" || first == "-h") {
    std::cout << usage();
    return 0;
  }
  if (std::find(kVerbs.begin(), kVerbs.end(), first) == kVerbs.end()) {
    std::cerr << "unknown verb '" << first << "'\n\n" << usage();
    return kExitUsage;
  }

  CLI::App app{"Census engine for tropically planar graphs", "troplanar"};
  app.require_subcommand(1);
  app.set_config("--config", "", "TOML/INI file with option defaults");

  CensusFlags census_f, breakdown_f, stratify_f, bounds_f;
  bool with_provenance = false;
  auto* census = app.add_subcommand("census", "troplanar graphs of one genus");
  add_census_flags(census, census_f);
  census->add_flag("--provenance", with_provenance, "include the provenance index");

  std::string crowdedness = "bounded";
  auto* breakdown = app.add_subcommand("breakdown", "classify the non-troplanar trivalent graphs of one genus");
  add_census_flags(breakdown, breakdown_f);
  breakdown->add_option("--crowdedness", crowdedness, "faces considered: bounded or all")
      ->check(CLI::IsMember({"bounded", "all"}));

  auto* stratify = app.add_subcommand("stratify", "troplanar counts by lattice width");
  add_census_flags(stratify, stratify_f);
  auto* bounds = app.add_subcommand("bounds", "counting bounds checked on census data");
  add_census_flags(bounds, bounds_f);

  int polygons_genus = 0;
  auto* polygons = app.add_subcommand("polygons", "maximal nonhyperelliptic polygons of one genus");
  polygons->add_option("--genus,-g", polygons_genus, "genus")->required();

  std::string tri_polygon, tri_symmetry = "full";
  bool tri_list = false, tri_no_regularity = false;
  auto* triangulate = app.add_subcommand("triangulate", "unimodular triangulations of a polygon");
  triangulate->add_option("--polygon,-p", tri_polygon, "vertices as 'x,y x,y ...'")->required();
  triangulate->add_option("--symmetry", tri_symmetry, "full, rotations or trivial")
      ->check(CLI::IsMember({"full", "rotations", "trivial"}));
  triangulate->add_flag("--list", tri_list, "list every orbit");
  triangulate->add_flag("--no-regularity", tri_no_regularity, "skip the regularity checks");

  std::string classify_input, classify_db;
  auto* classify = app.add_subcommand("classify", "necessary-condition checks for graphs read one per line");
  classify->add_option("--input,-i", classify_input, "file with 'n m : u-v ...' lines (default stdin)");
  classify->add_option("--db", classify_db, "database used to report census membership");

  int tiles_genus = 0;
  auto* tiles = app.add_subcommand("tiles", "derived tiles of genus 2, 4 or 6");
  tiles->add_option("--genus,-g", tiles_genus, "tile genus")->required()->check(CLI::IsMember({2, 4, 6}));

  int lb_genus = 0;
  std::string lb_db;
  auto* lower = app.add_subcommand("lower-bound", "tiling lower bound on the troplanar count");
  lower->add_option("--genus,-g", lb_genus, "genus (at least 5)")->required();
  lower->add_option("--db", lb_db, "database used to report the census count");

  int vt_n = 0, vt_nmax = 40;
  bool vt_no_regularity = false;
  auto* verify = app.add_subcommand("verify-tiling", "assemble every tile sequence and compare skeletons");
  verify->add_option("--n", vt_n, "parallelogram P_{2n}")->required();
  verify->add_option("--n-max", vt_nmax, "largest n for the closed-form check");
  verify->add_flag("--no-regularity", vt_no_regularity, "skip regularity checks of assembled triangulations");

  std::string dot_graph, dot_cert, dot_polygon, dot_tri, dot_name = "G";
  auto* dot = app.add_subcommand("export-dot", "Graphviz output for a graph or a triangulation");
  dot->add_option("--graph", dot_graph, "graph as 'n m : u-v ...'");
  dot->add_option("--certificate", dot_cert, "graph certificate");
  dot->add_option("--polygon", dot_polygon, "polygon of the triangulation");
  dot->add_option("--triangulation", dot_tri, "triangulation id within --polygon");
  dot->add_option("--name", dot_name, "graph name");

  try {
    app.parse(argc, argv);
  } catch (const CLI::ParseError& e) {
    int code = app.exit(e);
    return code == 0 ? 0 : kExitUsage;
  }

  try {
    if (census->parsed()) {
      auto rec = obtain(census_f.genus, census_f);
      emit(to_json(rec, with_provenance));
    } else if (breakdown->parsed()) {
      int g = breakdown_f.genus;
      check_census_genus(g, breakdown_f.long_run);
      std::map<int, CensusRecord> recs;
      for (int h = 2; h <= g; ++h) recs[h] = obtain(h, breakdown_f);
      auto j = to_json(breakdown_report(g, recs, crowdedness == "all"));
      j["crowdedness"] = crowdedness;
      emit(j);
    } else if (stratify->parsed()) {
      emit(to_json(stratify_by_lattice_width(obtain(stratify_f.genus, stratify_f))));
    } else if (bounds->parsed()) {
      emit(to_json(bound_report(bounds_f.genus, obtain(bounds_f.genus, bounds_f))));
    } else if (polygons->parsed()) {
      if (polygons_genus < 2) throw std::invalid_argument("genus must be at least 2");
      if (polygons_genus > 12) throw ResourceGuard("polygon enumeration is limited to genus 12");
      json list = json::array();
      for (const auto& p : enumerate_maximal_nonhyperelliptic(polygons_genus))
        list.push_back({{"vertices", points_json(p.vertices())},
                        {"lattice_width", lattice_width(p)},
                        {"boundary_points", p.boundary_count()},
                        {"lattice_points", p.lattice_point_count()},
                        {"interior_vertices", points_json(interior_polygon(p).polygon->vertices())}});
      emit({{"genus", polygons_genus}, {"count", list.size()}, {"polygons", list}});
    } else if (triangulate->parsed()) {
      auto poly = LatticePolygon::hull(parse_points(tri_polygon));
      if (poly.lattice_point_count() > 40) throw ResourceGuard("triangulate is limited to 40 lattice points");
      auto group = tri_symmetry == "full" ? SymmetryGroup::Full
                   : tri_symmetry == "rotations" ? SymmetryGroup::Rotations
                                                 : SymmetryGroup::Trivial;
      std::size_t orbits = 0, labeled = 0, regular = 0, nonregular = 0;
      std::set<Certificate> skeletons;
      json list = json::array();
      for_each_triangulation_orbit(make_configuration(poly), group, [&](const Triangulation& t, const OrbitInfo& info) {
        ++orbits;
        labeled += info.orbit_size;
        json e{{"id", t.id()}, {"orbit_size", info.orbit_size}};
        if (!tri_no_regularity) {
          bool r = is_regular(t).regular;
          (r ? regular : nonregular) += 1;
          e["regular"] = r;
          if (r && poly.genus() >= 1) skeletons.insert(certificate(skeleton(t)));
        }
        if (poly.genus() >= 1) e["skeleton"] = certificate(skeleton(t));
        if (tri_list) list.push_back(e);
        return true;
      });
      json j{{"polygon", points_json(poly.vertices())},
             {"genus", poly.genus()},
             {"symmetry", tri_symmetry},
             {"orbits", orbits},
             {"labeled", labeled}};
      if (!tri_no_regularity) {
        j["regular_orbits"] = regular;
        j["nonregular_orbits"] = nonregular;
        j["regular_skeletons"] = skeletons;
      }
      if (tri_list) j["triangulations"] = list;
      emit(j);
    } else if (classify->parsed()) {
      std::ifstream file;
      if (!classify_input.empty()) {
        file.open(classify_input);
        if (!file) throw std::runtime_error("cannot open " + classify_input);
      }
      std::istream& in = classify_input.empty() ? std::cin : file;
      auto db = database_path(classify_db);
      std::string line;
      int status = 0;
      while (std::getline(in, line)) {
        if (line.find_first_not_of(" \t\r") == std::string::npos || line[0] == '#') continue;
        try {
          std::cout << classify_line(line, db).dump() << "\n";
        } catch (const ResourceGuard& e) {
          std::cout << json{{"input", line}, {"error", e.what()}}.dump() << "\n";
          status = std::max(status, kExitGuard);
        } catch (const std::exception& e) {
          std::cout << json{{"input", line}, {"error", e.what()}}.dump() << "\n";
          status = std::max(status, kExitError);
        }
      }
      return status;
    } else if (tiles->parsed()) {
      emit(to_json(derive_tiles(tiles_genus / 2)));
    } else if (lower->parsed()) {
      std::optional<std::size_t> count;
      if (auto rec = stored_census(database_path(lb_db), lb_genus)) count = rec->certificates.size();
      std::vector<TileSet> sets{derive_tiles(1), derive_tiles(2), derive_tiles(3)};
      emit(to_json(lower_bound_report(lb_genus, count, &sets)));
    } else if (verify->parsed()) {
      std::vector<TileSet> sets{derive_tiles(1), derive_tiles(2), derive_tiles(3)};
      json counts = json::array();
      for (const auto& s : sets)
        counts.push_back({{"genus", s.genus}, {"bridgeless", s.bridgeless()}, {"bridged", s.bridged()}});
      emit({{"tiles", counts},
            {"distinctness", to_json(verify_distinctness(vt_n, sets, !vt_no_regularity))},
            {"closed_form", to_json(closed_form_check(vt_nmax))}});
    } else if (dot->parsed()) {
      int given = !dot_graph.empty() + !dot_cert.empty() + !dot_tri.empty();
      if (given != 1) throw std::invalid_argument("give exactly one of --graph, --certificate, --triangulation");
      if (!dot_graph.empty()) {
        std::cout << to_dot(Multigraph::from_text(dot_graph), dot_name);
      } else if (!dot_cert.empty()) {
        std::cout << to_dot(graph_from_certificate(dot_cert), dot_name);
      } else {
        if (dot_polygon.empty()) throw std::invalid_argument("--triangulation needs --polygon");
        auto cfg = make_configuration(LatticePolygon::hull(parse_points(dot_polygon)));
        std::cout << to_dot(Triangulation::from_id(cfg, dot_tri), dot_name);
      }
    }
  } catch (const ResourceGuard& e) {
    std::cerr << "refused: " << e.what() << "\n";
    return kExitGuard;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    return kExitError;
  }
  return 0;
}
