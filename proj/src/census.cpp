#include "troplanar/census.hpp"

#include <algorithm>
#include <atomic>
#include <chrono>
#include <mutex>
#include <set>
#include <stdexcept>
#include <thread>
#include <unordered_set>

#include "troplanar/criteria.hpp"
#include "troplanar/database.hpp"
#include "troplanar/errors.hpp"
#include "troplanar/regularity.hpp"
#include "troplanar/skeleton.hpp"
#include "troplanar/triangulation.hpp"

namespace troplanar {

namespace {

using json = nlohmann::json;

json polygon_json(const LatticePolygon& p) {
  json out = json::array();
  for (const auto& v : p.vertices()) out.push_back({v.x, v.y});
  return out;
}

LatticePolygon polygon_of(const json& j) {
  std::vector<LatticePoint> v;
  for (const auto& q : j) v.push_back({q.at(0).get<std::int64_t>(), q.at(1).get<std::int64_t>()});
  return LatticePolygon(v);
}

json stats_json(const PolygonStats& s) {
  return {{"polygon", polygon_json(s.polygon)},
          {"lattice_width", s.lattice_width},
          {"boundary_points", s.boundary_points},
          {"orbits", s.orbits},
          {"labeled", s.labeled},
          {"regularity_checks", s.regularity_checks},
          {"regular_found", s.regular_found},
          {"nonregular_found", s.nonregular_found},
          {"certificates", s.certificates}};
}

PolygonStats stats_of(const json& j) {
  PolygonStats s{polygon_of(j.at("polygon"))};
  s.lattice_width = j.at("lattice_width");
  s.boundary_points = j.at("boundary_points");
  s.orbits = j.at("orbits");
  s.labeled = j.at("labeled");
  s.regularity_checks = j.at("regularity_checks");
  s.regular_found = j.at("regular_found");
  s.nonregular_found = j.at("nonregular_found");
  s.certificates = j.at("certificates");
  return s;
}

struct PolygonResult {
  PolygonStats stats;
  std::vector<std::pair<Certificate, std::string>> entries;
};

// Serializes event writes from worker threads.
class EventSink {
 public:
  explicit EventSink(EventLog* log) : log_(log) {}
  void emit(const json& e) {
    if (!log_) return;
    std::lock_guard<std::mutex> lock(mu_);
    log_->append(e);
  }

 private:
  EventLog* log_;
  std::mutex mu_;
};

PolygonResult run_polygon(const LatticePolygon& p, int index, const CensusOptions& opt, EventSink& sink) {
  PolygonResult res{PolygonStats{p}, {}};
  auto& st = res.stats;
  st.lattice_width = static_cast<int>(lattice_width(p));
  st.boundary_points = static_cast<int>(p.boundary_count());
  sink.emit({{"type", "polygon_started"}, {"index", index}, {"polygon", polygon_json(p)}});
  auto cfg = make_configuration(p);
  auto group = opt.symmetry_reduction ? SymmetryGroup::Full : SymmetryGroup::Trivial;
  std::unordered_set<Certificate> confirmed;
  auto last = std::chrono::steady_clock::now();
  for_each_triangulation_orbit(cfg, group, [&](const Triangulation& t, const OrbitInfo& info) {
    ++st.orbits;
    st.labeled += info.orbit_size;
    auto cert = certificate(skeleton(t));
    if (opt.full_provenance || !confirmed.count(cert)) {
      ++st.regularity_checks;
      if (is_regular(t).regular) {
        ++st.regular_found;
        bool fresh = confirmed.insert(cert).second;
        if (fresh || opt.full_provenance) {
          res.entries.push_back({cert, t.id()});
          sink.emit({{"type", "certificate"}, {"index", index}, {"certificate", cert}, {"triangulation", t.id()}});
        }
      } else {
        ++st.nonregular_found;
      }
    }
    if ((st.orbits & 0xfff) == 0) {
      auto now = std::chrono::steady_clock::now();
      if (std::chrono::duration<double>(now - last).count() >= opt.checkpoint_seconds) {
        last = now;
        sink.emit({{"type", "triangulation_batch"},
                   {"index", index},
                   {"orbits", st.orbits},
                   {"labeled", st.labeled},
                   {"regularity_checks", st.regularity_checks}});
      }
    }
    return true;
  });
  st.certificates = confirmed.size();
  sink.emit({{"type", "polygon_finished"}, {"index", index}, {"stats", stats_json(st)}});
  return res;
}

std::map<int, PolygonResult> collect_results(const std::vector<json>& events) {
  std::map<int, PolygonResult> open, done;
  for (const auto& e : events) {
    const std::string type = e.at("type");
    if (type == "polygon_started") {
      open[e.at("index").get<int>()] = PolygonResult{PolygonStats{polygon_of(e.at("polygon"))}, {}};
    } else if (type == "certificate") {
      auto it = open.find(e.at("index").get<int>());
      if (it == open.end()) throw std::runtime_error("certificate event outside a polygon");
      it->second.entries.push_back({e.at("certificate"), e.at("triangulation")});
    } else if (type == "polygon_finished") {
      int i = e.at("index");
      auto it = open.find(i);
      if (it == open.end()) throw std::runtime_error("polygon finished without start");
      it->second.stats = stats_of(e.at("stats"));
      done[i] = std::move(it->second);
      open.erase(it);
    }
  }
  return done;
}

CensusRecord assemble(int g, std::size_t polygon_count, const std::map<int, PolygonResult>& results, bool symmetry,
                      bool full) {
  CensusRecord rec;
  rec.genus = g;
  rec.symmetry_reduction = symmetry;
  rec.full_provenance = full;
  rec.complete = results.size() == polygon_count;
  for (const auto& s : chain_strings(g)) {
    Provenance pv;
    pv.chain = s;
    rec.provenance[certificate(chain(s))].push_back(pv);
  }
  for (const auto& [i, r] : results) {
    rec.polygons.push_back(r.stats);
    for (const auto& [cert, tid] : r.entries)
      rec.provenance[cert].push_back(Provenance{r.stats.polygon, tid, "", r.stats.lattice_width});
  }
  for (const auto& [c, pv] : rec.provenance) rec.certificates.push_back(c);
  return rec;
}

json census_started(int g, const CensusOptions& opt, std::size_t polygons) {
  return {{"type", "census_started"},
          {"genus", g},
          {"symmetry_reduction", opt.symmetry_reduction},
          {"full_provenance", opt.full_provenance},
          {"polygons", polygons}};
}

}  // namespace

bool CensusRecord::contains(const Certificate& c) const {
  return std::binary_search(certificates.begin(), certificates.end(), c);
}

bool CensusRecord::two_edge_connected(const Certificate& c) const {
  return bridges_and_components(graph_from_certificate(c)).bridges.empty();
}

bool CensusRecord::from_hyperelliptic(const Certificate& c) const {
  auto it = provenance.find(c);
  if (it == provenance.end()) return false;
  return std::any_of(it->second.begin(), it->second.end(), [](const Provenance& p) { return !p.chain.empty(); });
}

std::size_t CensusRecord::two_edge_connected_count() const {
  return static_cast<std::size_t>(
      std::count_if(certificates.begin(), certificates.end(), [&](const Certificate& c) { return two_edge_connected(c); }));
}

void check_census_genus(int g, bool long_run) {
  if (g < 2) throw std::invalid_argument("census genus must be at least 2");
  if (g > 7) throw ResourceGuard("census is limited to genus 7");
  if (g == 7 && !long_run) throw ResourceGuard("genus 7 census requires --long-run");
}

std::filesystem::path genus_directory(const std::filesystem::path& db, int g) {
  return db / ("genus-" + std::to_string(g));
}

CensusRecord run_census(int g, const CensusOptions& opt) {
  check_census_genus(g, opt.long_run);
  if (opt.threads < 1) throw std::invalid_argument("thread count must be at least 1");
  auto polys = enumerate_maximal_nonhyperelliptic(g);
  std::map<int, PolygonResult> results;
  std::optional<EventLog> log;
  std::filesystem::path dir;
  bool logged_finish = false;
  if (opt.db) {
    dir = genus_directory(*opt.db, g);
    auto events = EventLog::read(dir / "events.ndjson");
    if (!events.empty()) {
      const auto& head = events.front();
      if (head.at("type") != "census_started" || head.at("genus") != g ||
          head.at("symmetry_reduction") != opt.symmetry_reduction || head.at("full_provenance") != opt.full_provenance)
        throw std::runtime_error("database at " + dir.string() + " was written with different census options");
      results = collect_results(events);
      logged_finish = events.back().at("type") == "census_finished";
      for (const auto& [i, r] : results)
        if (i < 0 || i >= static_cast<int>(polys.size()) || !(r.stats.polygon == polys[i]))
          throw std::runtime_error("database polygon list does not match this build");
    }
    log.emplace(dir / "events.ndjson");
    if (events.empty()) log->append(census_started(g, opt, polys.size()));
  }
  EventSink sink(log ? &*log : nullptr);

  std::vector<int> pending;
  for (int i = 0; i < static_cast<int>(polys.size()); ++i)
    if (!results.count(i)) pending.push_back(i);
  std::mutex mu;
  std::atomic<std::size_t> next{0};
  std::atomic<int> finished{0};
  std::exception_ptr failure;
  auto worker = [&]() {
    try {
      for (;;) {
        if (opt.stop_after_polygons >= 0 && finished.load() >= opt.stop_after_polygons) return;
        std::size_t k = next++;
        if (k >= pending.size()) return;
        int i = pending[k];
        auto r = run_polygon(polys[i], i, opt, sink);
        std::lock_guard<std::mutex> lock(mu);
        if (opt.progress)
          opt.progress("genus " + std::to_string(g) + " polygon " + std::to_string(i + 1) + "/" +
                       std::to_string(polys.size()) + ": " + std::to_string(r.stats.orbits) + " orbits, " +
                       std::to_string(r.stats.certificates) + " skeletons");
        results[i] = std::move(r);
        ++finished;
      }
    } catch (...) {
      std::lock_guard<std::mutex> lock(mu);
      if (!failure) failure = std::current_exception();
    }
  };
  int nthreads = std::min<int>(opt.threads, std::max<int>(1, static_cast<int>(pending.size())));
  if (opt.stop_after_polygons >= 0) nthreads = 1;
  std::vector<std::thread> pool;
  for (int t = 1; t < nthreads; ++t) pool.emplace_back(worker);
  worker();
  for (auto& th : pool) th.join();
  if (failure) std::rethrow_exception(failure);

  auto rec = assemble(g, polys.size(), results, opt.symmetry_reduction, opt.full_provenance);
  if (log && rec.complete) {
    auto ref = write_snapshot(dir, snapshot_bytes(rec));
    if (!logged_finish) log->append({{"type", "census_finished"}, {"snapshot", ref.hash}});
  }
  return rec;
}

CensusRecord replay_events(int g, const std::vector<json>& events) {
  if (events.empty() || events.front().at("type") != "census_started") throw std::runtime_error("log lacks a header");
  const auto& head = events.front();
  if (head.at("genus") != g) throw std::runtime_error("log is for a different genus");
  return assemble(g, head.at("polygons").get<std::size_t>(), collect_results(events), head.at("symmetry_reduction"),
                  head.at("full_provenance"));
}

json to_json(const CensusRecord& rec, bool with_provenance) {
  json j;
  j["format"] = "troplanar-census/1";
  j["genus"] = rec.genus;
  j["complete"] = rec.complete;
  j["symmetry_reduction"] = rec.symmetry_reduction;
  j["full_provenance"] = rec.full_provenance;
  j["troplanar_count"] = rec.certificates.size();
  j["two_edge_connected_count"] = rec.two_edge_connected_count();
  j["certificates"] = rec.certificates;
  json flags = json::object();
  for (const auto& c : rec.certificates)
    flags[c] = {{"two_edge_connected", rec.two_edge_connected(c)}, {"from_hyperelliptic", rec.from_hyperelliptic(c)}};
  j["flags"] = flags;
  json polys = json::array();
  for (const auto& s : rec.polygons) polys.push_back(stats_json(s));
  j["polygons"] = polys;
  if (with_provenance) {
    json prov = json::object();
    for (const auto& [c, list] : rec.provenance) {
      json arr = json::array();
      for (const auto& p : list) {
        json e;
        e["lattice_width"] = p.lattice_width;
        if (p.polygon) {
          e["polygon"] = polygon_json(*p.polygon);
          e["triangulation"] = p.triangulation;
        } else {
          e["chain"] = p.chain;
        }
        arr.push_back(e);
      }
      prov[c] = arr;
    }
    j["provenance"] = prov;
  }
  return j;
}

std::string snapshot_bytes(const CensusRecord& rec) { return to_json(rec, true).dump() + "\n"; }

CensusRecord record_from_snapshot(const std::string& bytes) {
  auto j = json::parse(bytes);
  CensusRecord rec;
  rec.genus = j.at("genus");
  rec.complete = j.at("complete");
  rec.symmetry_reduction = j.at("symmetry_reduction");
  rec.full_provenance = j.at("full_provenance");
  rec.certificates = j.at("certificates").get<std::vector<Certificate>>();
  for (const auto& s : j.at("polygons")) rec.polygons.push_back(stats_of(s));
  for (const auto& [c, list] : j.at("provenance").items())
    for (const auto& e : list) {
      Provenance p;
      p.lattice_width = e.at("lattice_width");
      if (e.contains("polygon")) {
        p.polygon = polygon_of(e.at("polygon"));
        p.triangulation = e.at("triangulation");
      } else {
        p.chain = e.at("chain");
      }
      rec.provenance[c].push_back(p);
    }
  return rec;
}

Stratification stratify_by_lattice_width(const CensusRecord& rec) {
  Stratification s;
  s.genus = rec.genus;
  s.total = rec.certificates.size();
  for (const auto& [c, list] : rec.provenance) {
    bool w2 = false, w3 = false, w4 = false, chain_entry = false, polygon_entry = false;
    int least = 1 << 20;
    for (const auto& p : list) {
      least = std::min(least, p.lattice_width);
      w2 = w2 || p.lattice_width == 2;
      w3 = w3 || p.lattice_width == 3;
      w4 = w4 || p.lattice_width >= 4;
      chain_entry = chain_entry || !p.chain.empty();
      polygon_entry = polygon_entry || p.polygon.has_value();
    }
    s.width2 += w2;
    s.width3 += w3;
    s.width4plus += w4;
    ++s.by_min_width[least];
    if (chain_entry && polygon_entry) ++s.chains_also_nonhyperelliptic;
  }
  for (const auto& st : rec.polygons) {
    if (st.lattice_width != 3) continue;
    auto inner = interior_polygon(st.polygon);
    if (!inner.polygon || lattice_width(*inner.polygon) != 1) s.width3_interiors_are_trapezoids = false;
  }
  return s;
}

BreakdownReport breakdown_report(int g, const std::map<int, CensusRecord>& records, bool all_faces) {
  for (int h = 2; h <= g; ++h) {
    auto it = records.find(h);
    if (it == records.end() || !it->second.complete)
      throw std::invalid_argument("breakdown needs complete censuses for every genus up to " + std::to_string(g));
  }
  const auto& rec = records.at(g);
  BreakdownReport b;
  b.genus = g;
  auto troplanar_lower = [&](const Multigraph& h) {
    int hg = h.genus();
    return hg <= 1 || records.at(hg).contains(certificate(h));
  };
  for (const auto& c : enumerate_trivalent(g)) {
    ++b.total;
    if (rec.contains(c)) {
      ++b.troplanar;
      continue;
    }
    auto gr = graph_from_certificate(c);
    if (!is_planar(gr)) {
      ++b.nonplanar;
      continue;
    }
    bool s = is_sprawling(gr), k = is_crowded(gr, all_faces);
    auto bridges = bridges_and_components(gr).bridges;
    if (bridges.empty() && !is_crowded(gr, false)) b.open_question_candidates.push_back(c);
    b.sprawling += s;
    b.crowded += k;
    b.both += s && k;
    if (s || k) continue;
    if (is_tie_fighter(gr)) {
      ++b.tie_new;
      b.tie_fighters.push_back(c);
      continue;
    }
    bool deleted = false;
    for (int e : bridges)
      for (const auto& part : bridge_split(gr, e))
        if (!troplanar_lower(part)) deleted = true;
    if (deleted) {
      ++b.bridge_del_new;
      b.bridge_deleted.push_back(c);
      continue;
    }
    ++b.unresolved;
    b.unresolved_graphs.push_back(c);
  }
  return b;
}

namespace {

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

BoundsReport bound_report(int g, const CensusRecord& rec) {
  BoundsReport b;
  b.genus = g;
  b.troplanar = rec.certificates.size();
  b.two_edge_connected = rec.two_edge_connected_count();
  std::uint64_t bound = (std::uint64_t{1} << (g - 1)) * b.two_edge_connected;
  b.corollary_bound = std::to_string(bound);
  b.corollary_holds = b.troplanar <= bound;
  for (const auto& st : rec.polygons) {
    BoundsReport::PolygonBound pb{st.polygon};
    pb.lattice_width = st.lattice_width;
    pb.boundary_points = st.boundary_points;
    pb.observed = st.labeled;
    pb.exponent = 3 * g + st.boundary_points - 3;
    pb.holds = pb.exponent >= 64 || st.labeled <= (std::uint64_t{1} << pb.exponent);
    b.polygons.push_back(pb);
  }
  auto s = stratify_by_lattice_width(rec);
  b.stratified_sum = s.width2 + s.width3 + s.width4plus;
  for (int a = 1; a <= g - 3; ++a) {
    int c = g - 2 - a;
    LatticePolygon strip({{0, 0}, {a, 0}, {c, 1}, {0, 1}});
    std::uint64_t n = 0;
    for_each_triangulation_orbit(make_configuration(strip), SymmetryGroup::Trivial, [&](const Triangulation&, const OrbitInfo&) {
      ++n;
      return true;
    });
    b.strips.push_back({a, c, n, binomial(a + c, a)});
  }
  b.central_binomial = binomial(g - 2, (g - 2) / 2);
  return b;
}

TableRow table_row(int g) {
  if (g < 2 || g > 7) throw ResourceGuard("table rows are computed for genus 2..7");
  TableRow t;
  t.genus = g;
  for (const auto& c : enumerate_trivalent(g)) {
    ++t.trivalent;
    t.planar += is_planar(graph_from_certificate(c));
  }
  return t;
}

json to_json(const Stratification& s) {
  json by = json::object();
  for (const auto& [w, n] : s.by_min_width) by[std::to_string(w)] = n;
  return {{"genus", s.genus},
          {"troplanar_count", s.total},
          {"width2", s.width2},
          {"width3", s.width3},
          {"width4plus", s.width4plus},
          {"stratified_sum", s.width2 + s.width3 + s.width4plus},
          {"by_min_width", by},
          {"chains_also_nonhyperelliptic", s.chains_also_nonhyperelliptic},
          {"width3_interiors_are_trapezoids", s.width3_interiors_are_trapezoids}};
}

json to_json(const BreakdownReport& b) {
  return {{"genus", b.genus},
          {"total", b.total},
          {"troplanar", b.troplanar},
          {"nonplanar", b.nonplanar},
          {"sprawling", b.sprawling},
          {"crowded", b.crowded},
          {"both", b.both},
          {"tie_new", b.tie_new},
          {"bridge_del_new", b.bridge_del_new},
          {"unresolved", b.unresolved},
          {"tie_fighters", b.tie_fighters},
          {"bridge_deleted", b.bridge_deleted},
          {"unresolved_graphs", b.unresolved_graphs},
          {"open_question_candidates", b.open_question_candidates}};
}

json to_json(const BoundsReport& b) {
  json polys = json::array();
  for (const auto& p : b.polygons)
    polys.push_back({{"polygon", polygon_json(p.polygon)},
                     {"lattice_width", p.lattice_width},
                     {"boundary_points", p.boundary_points},
                     {"observed_triangulations", p.observed},
                     {"bound_exponent", p.exponent},
                     {"holds", p.holds}});
  json strips = json::array();
  for (const auto& s : b.strips) strips.push_back({{"a", s.a}, {"b", s.b}, {"counted", s.counted}, {"binomial", s.binomial}});
  return {{"genus", b.genus},
          {"troplanar_count", b.troplanar},
          {"two_edge_connected_count", b.two_edge_connected},
          {"corollary_bound", b.corollary_bound},
          {"corollary_holds", b.corollary_holds},
          {"polygons", polys},
          {"stratified_sum", b.stratified_sum},
          {"strips", strips},
          {"central_binomial", b.central_binomial}};
}

json to_json(const TableRow& t) { return {{"genus", t.genus}, {"trivalent", t.trivalent}, {"planar", t.planar}}; }

}  // namespace troplanar
