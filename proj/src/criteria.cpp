#include "troplanar/criteria.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <stdexcept>

#include <boost/graph/adjacency_list.hpp>
#include <boost/graph/boyer_myrvold_planar_test.hpp>

#include "troplanar/errors.hpp"

namespace troplanar {

namespace {

std::vector<std::vector<int>> darts_by_vertex(const Multigraph& g) {
  std::vector<std::vector<int>> out(g.vertex_count());
  for (int e = 0; e < g.edge_count(); ++e) {
    out[g.edge(e).first].push_back(2 * e);
    out[g.edge(e).second].push_back(2 * e + 1);
  }
  return out;
}

// Face index per dart for the rotation successor table; returns face count.
int trace_faces(const std::vector<int>& succ, std::vector<int>& face) {
  std::fill(face.begin(), face.end(), -1);
  int faces = 0;
  for (std::size_t start = 0; start < succ.size(); ++start) {
    if (face[start] >= 0) continue;
    int d = static_cast<int>(start);
    while (face[d] < 0) {
      face[d] = faces;
      d = succ[dart_twin(d)];
    }
    ++faces;
  }
  return faces;
}

std::vector<std::vector<int>> cyclic_orders(const std::vector<int>& darts) {
  std::vector<std::vector<int>> out;
  if (darts.size() <= 2) {
    out.push_back(darts);
    return out;
  }
  std::vector<int> rest(darts.begin() + 1, darts.end());
  std::sort(rest.begin(), rest.end());
  do {
    std::vector<int> order{darts[0]};
    order.insert(order.end(), rest.begin(), rest.end());
    out.push_back(order);
  } while (std::next_permutation(rest.begin(), rest.end()));
  return out;
}

std::vector<int> component_without_edge(const Multigraph& g, int start, int skip_edge) {
  auto inc = g.incidence();
  std::vector<bool> seen(g.vertex_count(), false);
  std::vector<int> stack{start}, out;
  seen[start] = true;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    out.push_back(v);
    for (int e : inc[v]) {
      if (e == skip_edge) continue;
      auto [a, b] = g.edge(e);
      int w = a == v ? b : a;
      if (!seen[w]) {
        seen[w] = true;
        stack.push_back(w);
      }
    }
  }
  std::sort(out.begin(), out.end());
  return out;
}

// Connected components of the subgraph on the alive vertices.
std::vector<std::vector<int>> components(const Multigraph& g, const std::vector<bool>& alive) {
  const int n = g.vertex_count();
  std::vector<int> parent(n);
  std::iota(parent.begin(), parent.end(), 0);
  auto find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto [a, b] : g.edges())
    if (alive[a] && alive[b]) parent[find(a)] = find(b);
  std::vector<std::vector<int>> groups(n);
  for (int v = 0; v < n; ++v)
    if (alive[v]) groups[find(v)].push_back(v);
  std::vector<std::vector<int>> out;
  for (auto& grp : groups)
    if (!grp.empty()) out.push_back(std::move(grp));
  return out;
}

bool has_loop(const Multigraph& g, int v) {
  for (auto [a, b] : g.edges())
    if (a == v && b == v) return true;
  return false;
}

// A cycle in g passing through both distinct vertices s and t.
bool on_common_cycle(const Multigraph& g, int s, int t) {
  auto inc = g.incidence();
  const int n = g.vertex_count();
  std::vector<bool> on_path(n, false), edge_used(g.edge_count(), false);
  on_path[s] = true;
  auto second_path = [&]() {
    std::vector<bool> seen(n, false);
    std::vector<int> stack{t};
    seen[t] = true;
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int e : inc[v]) {
        if (edge_used[e]) continue;
        auto [a, b] = g.edge(e);
        int w = a == v ? b : a;
        if (w == s) return true;
        if (seen[w] || on_path[w]) continue;
        seen[w] = true;
        stack.push_back(w);
      }
    }
    return false;
  };
  std::function<bool(int)> extend = [&](int v) {
    for (int e : inc[v]) {
      auto [a, b] = g.edge(e);
      if (a == b || edge_used[e]) continue;
      int w = a == v ? b : a;
      if (on_path[w]) continue;
      edge_used[e] = true;
      if (w == t) {
        if (second_path()) return true;
      } else {
        on_path[w] = true;
        if (extend(w)) return true;
        on_path[w] = false;
      }
      edge_used[e] = false;
    }
    return false;
  };
  return extend(s);
}

void check_bridge(const Multigraph& g, int bridge) {
  if (bridge < 0 || bridge >= g.edge_count()) throw std::out_of_range("edge id out of range");
  auto bd = bridges_and_components(g);
  if (!std::binary_search(bd.bridges.begin(), bd.bridges.end(), bridge))
    throw std::invalid_argument("edge is not a bridge");
}

bool all_bridges_at(const Multigraph& g, const std::vector<int>& bridges, int v) {
  for (int e = 0; e < g.edge_count(); ++e) {
    auto [a, b] = g.edge(e);
    if ((a == v || b == v) && !std::binary_search(bridges.begin(), bridges.end(), e)) return false;
  }
  return true;
}

bool reducible(const Multigraph& g, const std::vector<int>& bridges, int bridge) {
  auto [v, w] = g.edge(bridge);
  return !all_bridges_at(g, bridges, v) || !all_bridges_at(g, bridges, w);
}

}  // namespace

int dart_vertex(const Multigraph& g, int d) {
  auto [a, b] = g.edge(d / 2);
  return d % 2 == 0 ? a : b;
}

EmbeddedGraph embed(const Multigraph& g, std::vector<std::vector<int>> rotation) {
  if (static_cast<int>(rotation.size()) != g.vertex_count()) throw std::invalid_argument("rotation size mismatch");
  std::vector<int> succ(2 * g.edge_count(), -1);
  for (int v = 0; v < g.vertex_count(); ++v) {
    const auto& r = rotation[v];
    for (std::size_t i = 0; i < r.size(); ++i) {
      if (dart_vertex(g, r[i]) != v || succ[r[i]] != -1) throw std::invalid_argument("invalid rotation system");
      succ[r[i]] = r[(i + 1) % r.size()];
    }
  }
  if (std::count(succ.begin(), succ.end(), -1) != 0) throw std::invalid_argument("rotation misses a dart");
  EmbeddedGraph out;
  out.graph = g;
  out.rotation = std::move(rotation);
  out.dart_face.assign(succ.size(), -1);
  int f = trace_faces(succ, out.dart_face);
  out.faces.assign(f, {});
  std::vector<bool> done(succ.size(), false);
  for (std::size_t start = 0; start < succ.size(); ++start) {
    if (done[start]) continue;
    int d = static_cast<int>(start);
    while (!done[d]) {
      done[d] = true;
      out.faces[out.dart_face[d]].push_back(d);
      d = succ[dart_twin(d)];
    }
  }
  if (g.edge_count() == 0) out.faces.assign(1, {});
  return out;
}

void for_each_planar_embedding(const Multigraph& g, const std::function<bool(const EmbeddedGraph&)>& fn) {
  if (g.vertex_count() > max_embedding_vertices) throw ResourceGuard("too many vertices for embedding enumeration");
  if (g.vertex_count() == 0 || !g.connected()) throw std::invalid_argument("embedding requires a connected graph");
  auto darts = darts_by_vertex(g);
  std::vector<std::vector<std::vector<int>>> choices;
  double total = 1;
  for (const auto& d : darts) {
    choices.push_back(cyclic_orders(d));
    total *= static_cast<double>(choices.back().size());
  }
  if (total > 1e7) throw ResourceGuard("too many rotation systems");
  const int target = g.edge_count() - g.vertex_count() + 2;
  const int n = g.vertex_count();
  std::vector<int> pick(n, 0), succ(2 * g.edge_count()), face(2 * g.edge_count());
  while (true) {
    for (int v = 0; v < n; ++v) {
      const auto& r = choices[v][pick[v]];
      for (std::size_t i = 0; i < r.size(); ++i) succ[r[i]] = r[(i + 1) % r.size()];
    }
    int f = g.edge_count() == 0 ? 1 : trace_faces(succ, face);
    if (f == target) {
      std::vector<std::vector<int>> rot(n);
      for (int v = 0; v < n; ++v) rot[v] = choices[v][pick[v]];
      if (!fn(embed(g, std::move(rot)))) return;
    }
    int v = 0;
    while (v < n && ++pick[v] == static_cast<int>(choices[v].size())) pick[v++] = 0;
    if (v == n) return;
  }
}

std::vector<EmbeddedGraph> planar_embeddings(const Multigraph& g, bool outer_face_views) {
  std::vector<EmbeddedGraph> out;
  for_each_planar_embedding(g, [&](const EmbeddedGraph& e) {
    if (!outer_face_views) {
      out.push_back(e);
      return true;
    }
    for (int f = 0; f < static_cast<int>(e.faces.size()); ++f) {
      out.push_back(e);
      out.back().outer_face = f;
    }
    return true;
  });
  return out;
}

bool is_planar(const Multigraph& g) {
  bool found = false;
  for_each_planar_embedding(g, [&](const EmbeddedGraph&) {
    found = true;
    return false;
  });
  return found;
}

bool is_planar_reference(const Multigraph& g) {
  using Graph = boost::adjacency_list<boost::vecS, boost::vecS, boost::undirectedS>;
  Graph bg(g.vertex_count());
  int next = g.vertex_count();
  for (auto [a, b] : g.edges()) {
    if (a == b) {
      int x = next++, y = next++;
      boost::add_vertex(bg);
      boost::add_vertex(bg);
      boost::add_edge(a, x, bg);
      boost::add_edge(x, y, bg);
      boost::add_edge(y, a, bg);
    } else if (g.multiplicity(a, b) > 1) {
      int x = next++;
      boost::add_vertex(bg);
      boost::add_edge(a, x, bg);
      boost::add_edge(x, b, bg);
    } else {
      boost::add_edge(a, b, bg);
    }
  }
  return boost::boyer_myrvold_planarity_test(bg);
}

bool is_sprawling(const Multigraph& g) {
  for (int v = 0; v < g.vertex_count(); ++v) {
    std::vector<bool> alive(g.vertex_count(), true);
    alive[v] = false;
    if (components(g, alive).size() >= 3) return true;
  }
  return false;
}

bool embedding_is_crowded(const EmbeddedGraph& e, int outer_face, bool all_faces) {
  auto considered = [&](int f) { return all_faces || f != outer_face; };
  std::set<std::pair<int, int>> shared;
  for (int id = 0; id < e.graph.edge_count(); ++id) {
    int f1 = e.dart_face[2 * id], f2 = e.dart_face[2 * id + 1];
    if (!considered(f1) || !considered(f2)) continue;
    if (f1 == f2) return true;
    if (!shared.insert({std::min(f1, f2), std::max(f1, f2)}).second) return true;
  }
  return false;
}

bool is_crowded(const Multigraph& g, bool all_faces) {
  bool any = false, crowded = true;
  for_each_planar_embedding(g, [&](const EmbeddedGraph& e) {
    any = true;
    for (int f = 0; f < static_cast<int>(e.faces.size()); ++f)
      if (!embedding_is_crowded(e, f, all_faces)) {
        crowded = false;
        return false;
      }
    return true;
  });
  if (!any) throw std::invalid_argument("crowdedness is defined for planar graphs");
  return crowded;
}

bool is_tie_fighter(const Multigraph& g, TieFighterWitness* witness) {
  const int n = g.vertex_count();
  auto bd = bridges_and_components(g);
  struct Side {
    int v, e;
    std::vector<bool> far;
  };
  std::vector<Side> sides;
  for (int e : bd.bridges) {
    auto [a, b] = g.edge(e);
    for (auto [v, w] : {std::pair{a, b}, std::pair{b, a}}) {
      auto comp = component_without_edge(g, w, e);
      if (g.induced(comp).genus() <= 0) continue;
      Side s{v, e, std::vector<bool>(n, false)};
      for (int x : comp) s.far[x] = true;
      sides.push_back(std::move(s));
    }
  }
  for (std::size_t i = 0; i < sides.size(); ++i)
    for (std::size_t j = i + 1; j < sides.size(); ++j) {
      const auto& s1 = sides[i];
      const auto& s2 = sides[j];
      if (s1.v == s2.v || s1.e == s2.e) continue;
      if (s1.far[s2.v] || s2.far[s1.v]) continue;
      std::vector<int> keep;
      bool overlap = false;
      for (int x = 0; x < n; ++x) {
        if (s1.far[x] && s2.far[x]) overlap = true;
        if (!s1.far[x] && !s2.far[x]) keep.push_back(x);
      }
      if (overlap) continue;
      Multigraph rest = g.induced(keep);
      int v1 = static_cast<int>(std::lower_bound(keep.begin(), keep.end(), s1.v) - keep.begin());
      int v2 = static_cast<int>(std::lower_bound(keep.begin(), keep.end(), s2.v) - keep.begin());
      if (!on_common_cycle(rest, v1, v2)) continue;
      std::vector<bool> alive(rest.vertex_count(), true);
      alive[v1] = alive[v2] = false;
      auto comps = components(rest, alive);
      if (comps.size() != 2) continue;
      bool positive = std::all_of(comps.begin(), comps.end(), [&](const auto& c) { return rest.induced(c).genus() > 0; });
      if (!positive) continue;
      if (witness) *witness = {s1.v, s2.v, s1.e, s2.e};
      return true;
    }
  return false;
}

bool has_triple_loop_path(const Multigraph& g) {
  const int n = g.vertex_count();
  std::vector<std::vector<int>> nbrs(n);
  for (auto [a, b] : g.edges())
    if (a != b) {
      nbrs[a].push_back(b);
      nbrs[b].push_back(a);
    }
  std::vector<bool> looped(n);
  for (int v = 0; v < n; ++v) looped[v] = has_loop(g, v);
  auto pendant = [&](int v, int p1, int p2, int p3) {
    for (int w : nbrs[v])
      if (looped[w] && w != p1 && w != p2 && w != p3) return true;
    return false;
  };
  for (int v2 = 0; v2 < n; ++v2)
    for (int v1 : nbrs[v2])
      for (int v3 : nbrs[v2]) {
        if (v1 == v3 || v1 == v2 || v3 == v2) continue;
        if (pendant(v1, v1, v2, v3) && pendant(v2, v1, v2, v3) && pendant(v3, v1, v2, v3)) return true;
      }
  return false;
}

std::vector<Multigraph> bridge_split(const Multigraph& g, int bridge) {
  check_bridge(g, bridge);
  auto [a, b] = g.edge(bridge);
  std::vector<Multigraph> out;
  for (int end : {a, b}) out.push_back(prune_and_smooth(g.induced(component_without_edge(g, end, bridge))));
  return out;
}

namespace {

Multigraph rejoin(const Multigraph& g, int bridge, const std::vector<int>& at_v, const std::vector<int>& at_w) {
  auto [v, w] = g.edge(bridge);
  std::vector<int> endpoint(2 * g.edge_count());
  for (int d = 0; d < 2 * g.edge_count(); ++d) endpoint[d] = dart_vertex(g, d);
  for (int d : at_v) endpoint[d] = v;
  for (int d : at_w) endpoint[d] = w;
  Multigraph out(g.vertex_count());
  for (int e = 0; e < g.edge_count(); ++e)
    if (e != bridge) out.add_edge(endpoint[2 * e], endpoint[2 * e + 1]);
  out.add_edge(v, w);
  return out;
}

std::vector<int> other_darts(const Multigraph& g, int v, int skip_edge) {
  std::vector<int> out;
  for (int e = 0; e < g.edge_count(); ++e) {
    if (e == skip_edge) continue;
    if (g.edge(e).first == v) out.push_back(2 * e);
    if (g.edge(e).second == v) out.push_back(2 * e + 1);
  }
  return out;
}

}  // namespace

bool is_reducible_bridge(const Multigraph& g, int bridge) {
  check_bridge(g, bridge);
  return reducible(g, bridges_and_components(g).bridges, bridge);
}

std::vector<int> reducible_bridges(const Multigraph& g) {
  auto bridges = bridges_and_components(g).bridges;
  std::vector<int> out;
  for (int b : bridges)
    if (reducible(g, bridges, b)) out.push_back(b);
  return out;
}

std::vector<Multigraph> bridge_reduce(const Multigraph& g, int bridge) {
  if (!is_reducible_bridge(g, bridge)) throw std::invalid_argument("bridge joins two cut vertices");
  auto [v, w] = g.edge(bridge);
  auto a = other_darts(g, v, bridge);
  auto c = other_darts(g, w, bridge);
  if (a.size() != 2 || c.size() != 2) throw std::invalid_argument("bridge endpoints must be trivalent");
  std::vector<Multigraph> out;
  std::set<Certificate> seen;
  for (auto r : {rejoin(g, bridge, {a[0], c[0]}, {a[1], c[1]}), rejoin(g, bridge, {a[0], c[1]}, {a[1], c[0]})})
    if (seen.insert(certificate(r)).second) out.push_back(std::move(r));
  return out;
}

Multigraph bridge_reduce_embedded(const EmbeddedGraph& e, int bridge) {
  const auto& g = e.graph;
  if (!is_reducible_bridge(g, bridge)) throw std::invalid_argument("bridge joins two cut vertices");
  auto [v, w] = g.edge(bridge);
  auto after = [&](int vertex, int dart) {
    const auto& r = e.rotation[vertex];
    if (r.size() != 3) throw std::invalid_argument("bridge endpoints must be trivalent");
    auto it = std::find(r.begin(), r.end(), dart);
    std::size_t i = it - r.begin();
    return std::pair{r[(i + 1) % 3], r[(i + 2) % 3]};
  };
  auto [a1, a2] = after(v, 2 * bridge);
  auto [c1, c2] = after(w, 2 * bridge + 1);
  return rejoin(g, bridge, {a1, c2}, {a2, c1});
}

BridgeChooser first_bridge_chooser() {
  return [](const Multigraph&, const std::vector<int>& bridges) { return bridges.front(); };
}

std::vector<Certificate> reduce_to_2ec(const Multigraph& g, const BridgeChooser& choose) {
  std::set<Certificate> result, visited;
  std::vector<Multigraph> work{g};
  visited.insert(certificate(g));
  while (!work.empty()) {
    Multigraph cur = std::move(work.back());
    work.pop_back();
    auto candidates = reducible_bridges(cur);
    if (candidates.empty()) {
      result.insert(certificate(cur));
      continue;
    }
    int b = choose(cur, candidates);
    for (auto& r : bridge_reduce(cur, b))
      if (visited.insert(certificate(r)).second) work.push_back(std::move(r));
  }
  return {result.begin(), result.end()};
}

}  // namespace troplanar
