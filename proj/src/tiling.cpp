#include "troplanar/tiling.hpp"

#include <algorithm>
#include <cmath>
#include <functional>
#include <map>
#include <mutex>
#include <set>
#include <stdexcept>

#include <boost/multiprecision/cpp_bin_float.hpp>

#include "troplanar/errors.hpp"
#include "troplanar/regularity.hpp"
#include "troplanar/skeleton.hpp"

namespace troplanar {

namespace {

using Real = boost::multiprecision::cpp_bin_float_50;
using Segment = std::pair<LatticePoint, LatticePoint>;

int triangle_on(const DualGraph& d, const PointConfiguration& cfg, const Segment& s) {
  int a = cfg.index_of(s.first), b = cfg.index_of(s.second);
  for (int i = 0; i < static_cast<int>(d.triangles.size()); ++i) {
    const auto& t = d.triangles[i];
    bool ha = std::find(t.begin(), t.end(), a) != t.end();
    bool hb = std::find(t.begin(), t.end(), b) != t.end();
    if (ha && hb) return i;
  }
  throw std::invalid_argument("segment is not an edge of the triangulation");
}

// Hangs a looped stub on each glued side, retracts, then removes the stubs.
Contribution piece_contribution(const Triangulation& t, const std::optional<Segment>& left,
                                const std::optional<Segment>& right) {
  auto d = dual_graph(t);
  Multigraph h = d.graph;
  int stub_l = -1, stub_r = -1;
  auto hang = [&](const Segment& s) {
    int tri = triangle_on(d, t.config(), s);
    int v = h.add_vertex();
    h.add_edge(v, v);
    h.add_edge(v, tri);
    return v;
  };
  if (left) stub_l = hang(*left);
  if (right) stub_r = hang(*right);
  auto sm = prune_and_smooth_traced(h, false);
  const auto& g = sm.graph;
  int sl = -1, sr = -1;
  for (int v = 0; v < g.vertex_count(); ++v) {
    if (sm.vertex_origin[v] == stub_l) sl = v;
    if (sm.vertex_origin[v] == stub_r) sr = v;
  }
  std::vector<int> keep, index(g.vertex_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v)
    if (v != sl && v != sr) {
      index[v] = static_cast<int>(keep.size());
      keep.push_back(v);
    }
  auto attach = [&](int stub) {
    if (stub < 0) return -1;
    for (auto [a, b] : g.edges())
      if (a != b && (a == stub || b == stub)) return index[a == stub ? b : a];
    throw std::logic_error("stub lost its attachment");
  };
  Contribution c;
  c.marked.graph = g.induced(keep);
  c.marked.left = attach(sl);
  c.marked.right = attach(sr);
  if (c.marked.left < 0) c.marked.left = c.marked.right;
  if (c.marked.right < 0) c.marked.right = c.marked.left;

  const auto& r = c.marked.graph;
  auto bd = bridges_and_components(r);
  // Components must form a path from the left mark to the right mark.
  std::vector<std::vector<std::pair<int, int>>> adj(bd.component_count);  // (next component, bridge)
  for (int e : bd.bridges) {
    auto [a, b] = r.edge(e);
    adj[bd.component[a]].push_back({bd.component[b], e});
    adj[bd.component[b]].push_back({bd.component[a], e});
  }
  int start = bd.component[c.marked.left], finish = bd.component[c.marked.right];
  int prev = -1, cur = start, entry = c.marked.left;
  std::vector<bool> seen(bd.component_count, false);
  c.chain_form = true;
  while (true) {
    seen[cur] = true;
    int exit = -1, next = -1;
    if (cur == finish) {
      exit = c.marked.right;
      if (adj[cur].size() != (prev < 0 ? 0u : 1u)) c.chain_form = false;
    } else {
      for (auto [nb, e] : adj[cur])
        if (nb != prev) {
          if (next >= 0) c.chain_form = false;
          next = nb;
          auto [a, b] = r.edge(e);
          exit = bd.component[a] == cur ? a : b;
        }
      if (next < 0) c.chain_form = false;
    }
    std::vector<int> members;
    for (int v = 0; v < r.vertex_count(); ++v)
      if (bd.component[v] == cur) members.push_back(v);
    auto local = [&](int v) { return static_cast<int>(std::find(members.begin(), members.end(), v) - members.begin()); };
    if (exit < 0) exit = entry;
    c.components.push_back({r.induced(members), local(entry), local(exit)});
    if (!c.chain_form || cur == finish) break;
    int bridge_far = -1;
    for (auto [nb, e] : adj[cur])
      if (nb == next) {
        auto [a, b] = r.edge(e);
        bridge_far = bd.component[a] == next ? a : b;
      }
    prev = cur;
    cur = next;
    entry = bridge_far;
    if (seen[cur]) {
      c.chain_form = false;
      break;
    }
  }
  if (c.chain_form && std::count(seen.begin(), seen.end(), true) != bd.component_count) c.chain_form = false;
  for (const auto& comp : c.components)
    if (comp.graph.genus() < 1) c.chain_form = false;
  return c;
}

Segment left_slant() { return {{0, 3}, {1, 0}}; }
Segment right_slant(int k) { return {{k, 3}, {k + 1, 0}}; }

std::vector<Triangulation> all_triangulations(const LatticePolygon& p) {
  std::vector<Triangulation> out;
  for_each_triangulation_orbit(make_configuration(p), SymmetryGroup::Trivial, [&](const Triangulation& t, const OrbitInfo&) {
    out.push_back(t);
    return true;
  });
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.id() < b.id(); });
  return out;
}

Tile make_tile(int k, const Triangulation& t, const Contribution& c) {
  Tile tile{2 * k, t, c.marked, {}, c.components.size() > 1};
  for (const auto& comp : c.components) tile.components.push_back(marked_certificate(comp));
  return tile;
}

bool has_loop(const Multigraph& g) {
  return std::any_of(g.edges().begin(), g.edges().end(), [](auto e) { return e.first == e.second; });
}

Triangulation pick_cap(const LatticePolygon& p, const std::optional<Segment>& left, const std::optional<Segment>& right,
                       const std::function<bool(const Contribution&)>& accept) {
  for (const auto& t : all_triangulations(p)) {
    auto c = piece_contribution(t, left, right);
    if (accept(c)) return t;
  }
  throw std::logic_error("no end cap triangulation with the required shape");
}

std::vector<std::array<LatticePoint, 3>> shifted(const Triangulation& t, std::int64_t dx) {
  auto tris = t.lattice_triangles();
  for (auto& tri : tris)
    for (auto& p : tri) p.x += dx;
  return tris;
}


nlohmann::json marked_json(const MarkedGraph& m) {
  return {{"graph", m.graph.to_text()}, {"left", m.left}, {"right", m.right}};
}

}  // namespace

LatticePolygon parallelogram(int g) {
  if (g < 2 || g % 2 != 0) throw std::invalid_argument("parallelogram genus must be even and at least 2");
  std::int64_t h = g / 2;
  std::vector<LatticePoint> v{{0, 3}, {1, 0}, {h, 3}, {h + 1, 0}};
  return LatticePolygon::hull(v);
}

LatticePolygon q_polygon(int n, Parity parity) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  std::vector<LatticePoint> v{{0, 3}, {2, 0}, {n + 2, 3}, {n + 3, 0}};
  if (parity == Parity::Even) v.push_back({0, 1});
  return LatticePolygon::hull(v);
}

std::pair<LatticePolygon, LatticePolygon> q_polygons(int n) { return {q_polygon(n, Parity::Odd), q_polygon(n, Parity::Even)}; }

Contribution tile_contribution(const Triangulation& t) {
  auto w = t.polygon().vertices();
  std::int64_t k = 0;
  for (const auto& p : w) k = std::max(k, p.x);
  return piece_contribution(t, left_slant(), right_slant(static_cast<int>(k - 1)));
}

std::size_t TileSet::bridgeless() const {
  return static_cast<std::size_t>(std::count_if(tiles.begin(), tiles.end(), [](const Tile& t) { return !t.bridged; }));
}
std::size_t TileSet::bridged() const { return tiles.size() - bridgeless(); }

TileSet derive_tiles(int k) {
  if (k < 1 || k > 3) throw std::invalid_argument("tiles exist for genus 2, 4 and 6 only");
  std::set<Certificate> single;  // components available from a bridgeless tile of lower genus
  for (int j = 1; j < k; ++j)
    for (const auto& t : all_triangulations(parallelogram(2 * j))) {
      auto c = tile_contribution(t);
      if (c.chain_form && c.components.size() == 1) single.insert(marked_certificate(c.components[0]));
    }
  TileSet set;
  set.genus = 2 * k;
  std::map<Certificate, Tile> bridgeless;
  std::map<std::pair<Certificate, Certificate>, Tile> bridged;
  auto tris = all_triangulations(parallelogram(2 * k));
  set.triangulations = tris.size();
  std::vector<std::pair<Triangulation, Contribution>> two;
  for (const auto& t : tris) {
    auto c = tile_contribution(t);
    if (!c.chain_form) continue;
    if (c.components.size() == 1)
      bridgeless.emplace(marked_certificate(c.components[0]), make_tile(k, t, c));
    else if (c.components.size() == 2)
      two.push_back({t, c});
  }
  for (const auto& [cert, tile] : bridgeless) single.insert(cert);
  for (const auto& [t, c] : two) {
    auto first = marked_certificate(c.components[0]), second = marked_certificate(c.components[1]);
    if (single.count(first) || single.count(second)) continue;
    bridged.emplace(std::make_pair(first, second), make_tile(k, t, c));
  }
  // Triangulations are visited in increasing id order, so emplace keeps the least.
  for (auto& [cert, tile] : bridgeless) set.tiles.push_back(tile);
  for (auto& [key, tile] : bridged) set.tiles.push_back(tile);
  return set;
}

const EndCaps& end_caps() {
  static const EndCaps caps = [] {
    Segment glue_left{{1, 3}, {2, 0}};
    auto odd = pick_cap(LatticePolygon::hull(std::vector<LatticePoint>{{0, 3}, {1, 3}, {2, 0}}), std::nullopt, glue_left,
                        [](const Contribution& c) { return c.marked.graph.genus() == 1; });
    auto even = pick_cap(LatticePolygon::hull(std::vector<LatticePoint>{{0, 1}, {0, 3}, {1, 3}, {2, 0}}), std::nullopt,
                         glue_left, [](const Contribution& c) { return has_loop(c.marked.graph); });
    auto right = pick_cap(parallelogram(2), left_slant(), std::nullopt, [](const Contribution& c) {
      return c.chain_form && c.components.size() == 1 && !has_loop(c.marked.graph);
    });
    return EndCaps{odd, even, right};
  }();
  return caps;
}

Assembly assemble(const std::vector<const Tile*>& sequence, Parity parity, bool check_regularity) {
  int total = 0;
  for (const auto* t : sequence) {
    if (!t || t->genus < 2 || t->genus % 2 != 0) throw std::invalid_argument("malformed tile sequence");
    total += t->genus;
  }
  if (total < 2) throw std::invalid_argument("tile sequence must have positive genus");
  const int n = total / 2;
  static std::mutex mu;
  static std::map<std::pair<int, int>, ConfigPtr> configs;
  ConfigPtr cfg;
  {
    std::lock_guard<std::mutex> lock(mu);
    auto& slot = configs[{n, static_cast<int>(parity)}];
    if (!slot) slot = make_configuration(q_polygon(n, parity));
    cfg = slot;
  }
  const auto& caps = end_caps();
  auto tris = (parity == Parity::Odd ? caps.left_odd : caps.left_even).lattice_triangles();
  std::int64_t offset = 1;
  for (const auto* t : sequence) {
    auto part = shifted(t->triangulation, offset);
    tris.insert(tris.end(), part.begin(), part.end());
    offset += t->genus / 2;
  }
  auto part = shifted(caps.right, offset);
  tris.insert(tris.end(), part.begin(), part.end());
  Assembly a{Triangulation::from_triangles(cfg, tris), {}, {}, false};
  a.skeleton = skeleton(a.triangulation);
  a.certificate = certificate(a.skeleton);
  if (check_regularity) a.regular = is_regular(a.triangulation).regular;
  return a;
}

DistinctnessReport verify_distinctness(int n, const std::vector<TileSet>& sets, bool check_regularity) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  if (n > 4) throw ResourceGuard("verify-tiling enumerates every sequence and is limited to n <= 4");
  std::map<int, const TileSet*> by_genus;
  for (const auto& s : sets) by_genus[s.genus] = &s;
  DistinctnessReport rep;
  rep.n = n;
  rep.expected = recurrence_a(n);
  unsigned counts[3] = {0, 0, 0};
  for (int k = 1; k <= 3; ++k)
    if (by_genus.count(2 * k)) counts[k - 1] = static_cast<unsigned>(by_genus[2 * k]->tiles.size());
  rep.expected_derived = tiling_recurrence(n, counts[0], counts[1], counts[2]);
  std::set<Certificate> odd, even;
  std::vector<const Tile*> seq;
  std::function<void(int)> grow = [&](int left) {
    if (left == 0) {
      ++rep.sequences;
      auto a = assemble(seq, Parity::Odd, check_regularity);
      auto b = assemble(seq, Parity::Even, check_regularity);
      odd.insert(a.certificate);
      even.insert(b.certificate);
      if (check_regularity && !(a.regular && b.regular)) rep.all_regular = false;
      return;
    }
    for (int k = 1; k <= std::min(left, 3); ++k) {
      auto it = by_genus.find(2 * k);
      if (it == by_genus.end()) throw std::invalid_argument("missing tiles of genus " + std::to_string(2 * k));
      for (const auto& t : it->second->tiles) {
        seq.push_back(&t);
        grow(left - k);
        seq.pop_back();
      }
    }
  };
  grow(n);
  rep.distinct_odd = odd.size();
  rep.distinct_even = even.size();
  return rep;
}

BigInt tiling_recurrence(int n, unsigned c1, unsigned c2, unsigned c3) {
  if (n < 0) throw std::invalid_argument("n must be non-negative");
  std::vector<BigInt> a{1};
  for (int i = 1; i <= n; ++i) {
    BigInt next = c1 * a[i - 1];
    if (i >= 2) next += c2 * a[i - 2];
    if (i >= 3) next += c3 * a[i - 3];
    a.push_back(next);
  }
  return a[n];
}

BigInt recurrence_a(int n) { return tiling_recurrence(n, 2, 13, 75); }

ClosedForm closed_form_check(int n_max) {
  if (n_max < 5) throw std::invalid_argument("n_max must be at least 5");
  Real x = 6;
  for (int i = 0; i < 200; ++i) {
    Real f = ((x - 2) * x - 13) * x - 75;
    Real df = (3 * x - 4) * x - 13;
    Real step = f / df;
    x -= step;
    if (abs(step) < Real("1e-45")) break;
  }
  const Real alpha = x;
  const Real b = alpha - 2, c = alpha * (alpha - 2) - 13;
  const Real re = -b / 2, im = sqrt(c - b * b / 4);
  const Real r = sqrt(c), theta = atan2(im, re);

  // a_n = A alpha^n + 2 Re(B rho^n), rho = r e^{i theta}; unknowns A, Re B, Im B.
  Real m[3][4];
  const int init[3] = {1, 2, 17};
  for (int n = 0; n < 3; ++n) {
    Real rn = pow(r, n);
    m[n][0] = pow(alpha, n);
    m[n][1] = 2 * rn * cos(n * theta);
    m[n][2] = -2 * rn * sin(n * theta);
    m[n][3] = init[n];
  }
  for (int col = 0; col < 3; ++col) {
    int piv = col;
    for (int row = col + 1; row < 3; ++row)
      if (abs(m[row][col]) > abs(m[piv][col])) piv = row;
    for (int j = 0; j < 4; ++j) std::swap(m[col][j], m[piv][j]);
    for (int row = 0; row < 3; ++row) {
      if (row == col) continue;
      Real f = m[row][col] / m[col][col];
      for (int j = 0; j < 4; ++j) m[row][j] -= f * m[col][j];
    }
  }
  const Real a_coeff = m[0][3] / m[0][0], u = m[1][3] / m[1][1], v = m[2][3] / m[2][2];
  const Real d = sqrt(u * u + v * v), delta = atan2(v, u);

  ClosedForm out;
  out.alpha = static_cast<double>(alpha);
  out.r = static_cast<double>(r);
  out.theta = static_cast<double>(theta);
  out.a_coeff = static_cast<double>(a_coeff);
  out.b_re = static_cast<double>(u);
  out.b_im = static_cast<double>(v);
  out.n_max = n_max;
  for (int n = 5; n <= n_max; ++n) {
    Real exact = static_cast<Real>(recurrence_a(n));
    Real model = a_coeff * pow(alpha, n) + 2 * d * pow(r, n) * cos(n * theta + delta);
    out.max_relative_error = std::max(out.max_relative_error, static_cast<double>(abs(model - exact) / exact));
  }
  out.ratio_at_n_max =
      static_cast<double>(static_cast<Real>(recurrence_a(n_max)) / static_cast<Real>(recurrence_a(n_max - 1)));
  return out;
}

LowerBoundReport lower_bound_report(int g, std::optional<std::size_t> census, const std::vector<TileSet>* derived) {
  if (g < 5) throw std::invalid_argument("the tiling bound starts at genus 5");
  LowerBoundReport rep;
  rep.genus = g;
  rep.n = (g - 3) / 2;
  rep.tiling_bound = recurrence_a(rep.n);
  rep.chain_bound = (BigInt(1) << (g - 2)) + (BigInt(1) << ((g - 2) / 2));
  rep.gamma = std::sqrt(closed_form_check(5).alpha);
  rep.gamma_power = std::pow(rep.gamma, g);
  rep.census = census;
  if (derived) {
    unsigned counts[3] = {0, 0, 0};
    for (const auto& set : *derived)
      if (set.genus == 2 || set.genus == 4 || set.genus == 6) counts[set.genus / 2 - 1] = static_cast<unsigned>(set.tiles.size());
    rep.derived_tiling_bound = tiling_recurrence(rep.n, counts[0], counts[1], counts[2]);
  }
  return rep;
}

nlohmann::json to_json(const Tile& t) {
  nlohmann::json tris = nlohmann::json::array();
  for (const auto& tri : t.triangulation.lattice_triangles()) {
    nlohmann::json one = nlohmann::json::array();
    for (const auto& p : tri) one.push_back({p.x, p.y});
    tris.push_back(one);
  }
  return {{"genus", t.genus},
          {"bridged", t.bridged},
          {"triangulation", t.triangulation.id()},
          {"triangles", tris},
          {"marked_graph", marked_json(t.marked_graph)},
          {"marked_certificate", t.certificate()},
          {"components", t.components}};
}

nlohmann::json to_json(const TileSet& s) {
  nlohmann::json tiles = nlohmann::json::array();
  for (const auto& t : s.tiles) tiles.push_back(to_json(t));
  return {{"genus", s.genus},
          {"triangulations", s.triangulations},
          {"bridgeless", s.bridgeless()},
          {"bridged", s.bridged()},
          {"count", s.tiles.size()},
          {"tiles", tiles}};
}

nlohmann::json to_json(const DistinctnessReport& r) {
  return {{"n", r.n},
          {"sequences", r.sequences},
          {"distinct_odd", r.distinct_odd},
          {"distinct_even", r.distinct_even},
          {"expected", r.expected.str()},
          {"expected_derived", r.expected_derived.str()},
          {"all_regular", r.all_regular},
          {"distinct", r.distinct_odd == r.sequences && r.distinct_even == r.sequences},
          {"matches_expected", BigInt(r.distinct_odd) == r.expected && BigInt(r.distinct_even) == r.expected}};
}

nlohmann::json to_json(const ClosedForm& c) {
  return {{"alpha", c.alpha},
          {"r", c.r},
          {"theta", c.theta},
          {"A", c.a_coeff},
          {"B", {{"re", c.b_re}, {"im", c.b_im}}},
          {"max_relative_error", c.max_relative_error},
          {"n_max", c.n_max},
          {"ratio_at_n_max", c.ratio_at_n_max}};
}

nlohmann::json to_json(const LowerBoundReport& r) {
  nlohmann::json j = {{"genus", r.genus},
                      {"n", r.n},
                      {"tiling_bound", r.tiling_bound.str()},
                      {"chain_bound", r.chain_bound.str()},
                      {"gamma", r.gamma},
                      {"gamma_power", r.gamma_power}};
  if (r.census) j["troplanar_count"] = *r.census;
  if (r.derived_tiling_bound) j["derived_tiling_bound"] = r.derived_tiling_bound->str();
  return j;
}

}  // namespace troplanar
