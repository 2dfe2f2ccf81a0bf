#include "troplanar/multigraph.hpp"

#include <algorithm>
#include <cstdio>
#include <functional>
#include <numeric>
#include <set>
#include <sstream>
#include <stdexcept>

namespace troplanar {

Multigraph::Multigraph(int vertices, std::vector<std::pair<int, int>> edges) : n_(vertices) {
  for (auto [u, v] : edges) add_edge(u, v);
}

int Multigraph::add_edge(int u, int v) {
  if (u < 0 || v < 0 || u >= n_ || v >= n_) throw std::out_of_range("edge endpoint out of range");
  edges_.push_back({std::min(u, v), std::max(u, v)});
  return edge_count() - 1;
}

int Multigraph::degree(int v) const {
  int d = 0;
  for (auto [a, b] : edges_) d += (a == v) + (b == v);
  return d;
}

std::vector<int> Multigraph::degrees() const {
  std::vector<int> d(n_, 0);
  for (auto [a, b] : edges_) {
    ++d[a];
    ++d[b];
  }
  return d;
}

int Multigraph::multiplicity(int u, int v) const {
  if (u > v) std::swap(u, v);
  return static_cast<int>(std::count(edges_.begin(), edges_.end(), std::pair<int, int>{u, v}));
}

std::vector<std::vector<int>> Multigraph::incidence() const {
  std::vector<std::vector<int>> inc(n_);
  for (int id = 0; id < edge_count(); ++id) {
    inc[edges_[id].first].push_back(id);
    inc[edges_[id].second].push_back(id);
  }
  return inc;
}

int Multigraph::component_count() const {
  std::vector<int> parent(n_);
  std::iota(parent.begin(), parent.end(), 0);
  std::function<int(int)> find = [&](int x) { return parent[x] == x ? x : parent[x] = find(parent[x]); };
  int comps = n_;
  for (auto [a, b] : edges_) {
    int ra = find(a), rb = find(b);
    if (ra != rb) {
      parent[ra] = rb;
      --comps;
    }
  }
  return comps;
}

int Multigraph::genus() const { return edge_count() - n_ + component_count(); }

bool Multigraph::is_trivalent() const {
  auto d = degrees();
  return std::all_of(d.begin(), d.end(), [](int x) { return x == 3; });
}

Multigraph Multigraph::induced(const std::vector<int>& keep) const {
  std::vector<int> map(n_, -1);
  for (std::size_t i = 0; i < keep.size(); ++i) map[keep[i]] = static_cast<int>(i);
  Multigraph out(static_cast<int>(keep.size()));
  for (auto [a, b] : edges_)
    if (map[a] >= 0 && map[b] >= 0) out.add_edge(map[a], map[b]);
  return out;
}

Multigraph Multigraph::relabeled(const std::vector<int>& perm) const {
  Multigraph out(n_);
  for (auto [a, b] : edges_) out.add_edge(perm[a], perm[b]);
  return out;
}

std::string Multigraph::to_text() const {
  std::ostringstream os;
  os << n_ << ' ' << edge_count() << " :";
  for (auto [a, b] : edges_) os << ' ' << a << '-' << b;
  return os.str();
}

Multigraph Multigraph::from_text(const std::string& line) {
  std::istringstream is(line);
  int n = 0, m = 0;
  std::string colon;
  if (!(is >> n >> m >> colon) || colon != ":" || n < 0 || m < 0) throw std::invalid_argument("bad graph line: " + line);
  Multigraph g(n);
  for (int i = 0; i < m; ++i) {
    std::string tok;
    if (!(is >> tok)) throw std::invalid_argument("graph line has too few edges");
    auto dash = tok.find('-');
    if (dash == std::string::npos) throw std::invalid_argument("bad edge token: " + tok);
    g.add_edge(std::stoi(tok.substr(0, dash)), std::stoi(tok.substr(dash + 1)));
  }
  std::string extra;
  if (is >> extra) throw std::invalid_argument("graph line has too many edges");
  return g;
}

BridgeData bridges_and_components(const Multigraph& g) {
  const int n = g.vertex_count();
  auto inc = g.incidence();
  std::vector<int> disc(n, -1), low(n, 0);
  std::vector<bool> is_bridge(g.edge_count(), false);
  int timer = 0;
  for (int root = 0; root < n; ++root) {
    if (disc[root] >= 0) continue;
    // Iterative DFS; frames hold (vertex, parent edge, next incidence index).
    std::vector<std::tuple<int, int, std::size_t>> stack{{root, -1, 0}};
    disc[root] = low[root] = timer++;
    while (!stack.empty()) {
      auto& [v, pe, idx] = stack.back();
      if (idx < inc[v].size()) {
        int e = inc[v][idx++];
        auto [a, b] = g.edge(e);
        if (a == b || e == pe) continue;
        int w = a == v ? b : a;
        if (disc[w] < 0) {
          disc[w] = low[w] = timer++;
          stack.push_back({w, e, 0});
        } else {
          low[v] = std::min(low[v], disc[w]);
        }
      } else {
        int vv = v, pedge = pe;
        stack.pop_back();
        if (!stack.empty()) {
          int u = std::get<0>(stack.back());
          low[u] = std::min(low[u], low[vv]);
          if (low[vv] > disc[u]) is_bridge[pedge] = true;
        }
      }
    }
  }
  BridgeData out;
  for (int e = 0; e < g.edge_count(); ++e)
    if (is_bridge[e]) out.bridges.push_back(e);
  out.component.assign(n, -1);
  for (int s = 0; s < n; ++s) {
    if (out.component[s] >= 0) continue;
    int c = out.component_count++;
    std::vector<int> todo{s};
    out.component[s] = c;
    while (!todo.empty()) {
      int v = todo.back();
      todo.pop_back();
      for (int e : inc[v]) {
        if (is_bridge[e]) continue;
        auto [a, b] = g.edge(e);
        int w = a == v ? b : a;
        if (out.component[w] < 0) {
          out.component[w] = c;
          todo.push_back(w);
        }
      }
    }
  }
  return out;
}

namespace {

struct Adjacency {
  int n;
  std::vector<std::uint8_t> mult;  // n*n
  std::vector<std::vector<int>> nbrs;

  explicit Adjacency(const Multigraph& g) : n(g.vertex_count()), mult(static_cast<std::size_t>(n) * n, 0), nbrs(n) {
    for (auto [a, b] : g.edges()) {
      if (mult[a * n + b] == 255) throw std::overflow_error("edge multiplicity too large");
      ++mult[a * n + b];
      if (a != b) ++mult[b * n + a];
    }
    for (int v = 0; v < n; ++v)
      for (int w = 0; w < n; ++w)
        if (w != v && mult[v * n + w]) nbrs[v].push_back(w);
  }
  int m(int a, int b) const { return mult[a * n + b]; }
};

// Replaces colors by the ranks of refined signatures until stable.
void refine(const Adjacency& adj, std::vector<int>& colors) {
  const int n = adj.n;
  int classes = static_cast<int>(std::set<int>(colors.begin(), colors.end()).size());
  std::vector<std::vector<int>> sig(n);
  for (;;) {
    for (int v = 0; v < n; ++v) {
      auto& s = sig[v];
      s.clear();
      s.push_back(colors[v]);
      s.push_back(adj.m(v, v));
      std::vector<int> tail;
      for (int w : adj.nbrs[v]) tail.push_back(colors[w] * 256 + adj.m(v, w));
      std::sort(tail.begin(), tail.end());
      s.insert(s.end(), tail.begin(), tail.end());
    }
    std::vector<int> order(n);
    std::iota(order.begin(), order.end(), 0);
    std::sort(order.begin(), order.end(), [&](int a, int b) { return sig[a] < sig[b]; });
    std::vector<int> next(n);
    int rank = 0;
    for (int i = 0; i < n; ++i) {
      if (i > 0 && sig[order[i]] != sig[order[i - 1]]) ++rank;
      next[order[i]] = rank;
    }
    colors.swap(next);
    if (rank + 1 == classes) return;
    classes = rank + 1;
  }
}

struct Search {
  const Adjacency& adj;
  std::vector<std::uint8_t> best;
  std::vector<int> best_perm;

  void leaf(const std::vector<int>& colors) {
    const int n = adj.n;
    std::vector<int> inv(n);
    for (int v = 0; v < n; ++v) inv[colors[v]] = v;
    std::vector<std::uint8_t> ser;
    ser.reserve(static_cast<std::size_t>(n) * (n + 1) / 2);
    for (int i = 0; i < n; ++i)
      for (int j = i; j < n; ++j) ser.push_back(adj.m(inv[i], inv[j]));
    if (best.empty() || ser < best) {
      best = std::move(ser);
      best_perm = colors;
    }
  }

  void run(std::vector<int> colors) {
    refine(adj, colors);
    const int n = adj.n;
    std::vector<int> count(n, 0);
    for (int c : colors) ++count[c];
    int target = -1;
    for (int c = 0; c < n; ++c)
      if (count[c] > 1) {
        target = c;
        break;
      }
    if (target < 0) {
      leaf(colors);
      return;
    }
    for (int v = 0; v < n; ++v) {
      if (colors[v] != target) continue;
      std::vector<int> child(n);
      for (int w = 0; w < n; ++w) child[w] = 2 * colors[w] + ((colors[w] == target && w != v) ? 1 : 0);
      run(std::move(child));
    }
  }
};

const char* kHex = "0123456789abcdef";

void append_hex(std::string& s, std::uint8_t b) {
  s += kHex[b >> 4];
  s += kHex[b & 15];
}

std::vector<int> normalized_colors(const std::vector<int>& colors) {
  std::vector<int> sorted(colors);
  std::sort(sorted.begin(), sorted.end());
  sorted.erase(std::unique(sorted.begin(), sorted.end()), sorted.end());
  std::vector<int> out(colors.size());
  for (std::size_t i = 0; i < colors.size(); ++i)
    out[i] = static_cast<int>(std::lower_bound(sorted.begin(), sorted.end(), colors[i]) - sorted.begin());
  return out;
}

Certificate encode(const Multigraph& g, const std::vector<int>& colors, bool colored) {
  Adjacency adj(g);
  const int n = adj.n;
  if (n > 255) throw std::invalid_argument("certificate supports at most 255 vertices");
  std::string out;
  append_hex(out, colored ? 1 : 0);
  append_hex(out, static_cast<std::uint8_t>(n));
  if (n == 0) return out;
  Search s{adj, {}, {}};
  s.run(normalized_colors(colors));
  if (colored) {
    std::vector<int> canon_colors(n);
    for (int v = 0; v < n; ++v) {
      if (colors[v] < 0 || colors[v] > 255) throw std::invalid_argument("vertex colors must fit in a byte");
      canon_colors[s.best_perm[v]] = colors[v];
    }
    for (int c : canon_colors) append_hex(out, static_cast<std::uint8_t>(c));
  }
  for (auto b : s.best) append_hex(out, b);
  return out;
}

}  // namespace

std::vector<int> canonical_labeling(const Multigraph& g, const std::vector<int>& colors) {
  Adjacency adj(g);
  if (adj.n == 0) return {};
  Search s{adj, {}, {}};
  s.run(normalized_colors(colors));
  return s.best_perm;
}

Certificate certificate(const Multigraph& g) { return encode(g, std::vector<int>(g.vertex_count(), 0), false); }

Certificate certificate_with_colors(const Multigraph& g, const std::vector<int>& colors) {
  return encode(g, colors, true);
}

Certificate marked_certificate(const MarkedGraph& m) {
  std::vector<int> colors(m.graph.vertex_count(), 0);
  // A one-vertex graph may carry both marks on the same vertex.
  colors[m.left] = 1;
  colors[m.right] = m.left == m.right ? 3 : 2;
  return certificate_with_colors(m.graph, colors);
}

Multigraph graph_from_certificate(const Certificate& c) {
  auto byte = [&](std::size_t i) { return static_cast<int>(std::stoi(c.substr(2 * i, 2), nullptr, 16)); };
  if (c.size() < 4) throw std::invalid_argument("certificate too short");
  bool colored = byte(0) == 1;
  int n = byte(1);
  std::size_t pos = 2 + (colored ? n : 0);
  Multigraph g(n);
  for (int i = 0; i < n; ++i)
    for (int j = i; j < n; ++j) {
      int k = byte(pos++);
      for (int t = 0; t < k; ++t) g.add_edge(i, j);
    }
  return g;
}

bool suppress_vertex(Multigraph& g, int v) {
  auto inc = g.incidence();
  if (inc[v].size() != 2) throw std::invalid_argument("suppress_vertex needs a degree-2 vertex");
  if (inc[v][0] == inc[v][1]) return false;
  auto other = [&](int e) {
    auto [a, b] = g.edge(e);
    return a == v ? b : a;
  };
  int a = other(inc[v][0]), b = other(inc[v][1]);
  std::vector<std::pair<int, int>> edges;
  for (int e = 0; e < g.edge_count(); ++e)
    if (e != inc[v][0] && e != inc[v][1]) edges.push_back(g.edge(e));
  edges.push_back({a, b});
  std::vector<bool> alive(g.vertex_count(), true);
  alive[v] = false;
  g = compact(Multigraph(g.vertex_count(), edges), alive);
  return true;
}

Multigraph compact(const Multigraph& g, const std::vector<bool>& alive) {
  std::vector<int> keep;
  for (int v = 0; v < g.vertex_count(); ++v)
    if (alive[v]) keep.push_back(v);
  return g.induced(keep);
}

SmoothResult prune_and_smooth_traced(const Multigraph& g, bool trace) {
  const int n = g.vertex_count();
  std::vector<std::pair<int, int>> edges = g.edges();
  std::vector<std::vector<int>> paths;
  if (trace)
    for (auto [a, b] : edges) paths.push_back({a, b});
  std::vector<bool> edge_alive(edges.size(), true), alive(n, true);
  std::vector<std::vector<int>> inc(n);
  for (int e = 0; e < static_cast<int>(edges.size()); ++e) {
    inc[edges[e].first].push_back(e);
    inc[edges[e].second].push_back(e);
  }
  auto live_inc = [&](int v) {
    std::vector<int> out;
    for (int e : inc[v])
      if (edge_alive[e]) out.push_back(e);
    return out;
  };
  std::vector<int> todo;
  for (int v = 0; v < n; ++v)
    if (live_inc(v).size() == 1) todo.push_back(v);
  while (!todo.empty()) {
    int v = todo.back();
    todo.pop_back();
    auto li = live_inc(v);
    if (!alive[v] || li.size() != 1) continue;
    int e = li[0];
    edge_alive[e] = false;
    alive[v] = false;
    int w = edges[e].first == v ? edges[e].second : edges[e].first;
    if (live_inc(w).size() == 1) todo.push_back(w);
  }
  for (int v = 0; v < n; ++v)
    if (alive[v] && live_inc(v).empty() && n > 1) alive[v] = false;
  bool changed = true;
  while (changed) {
    changed = false;
    for (int v = 0; v < n; ++v) {
      if (!alive[v]) continue;
      auto li = live_inc(v);
      if (li.size() != 2 || li[0] == li[1]) continue;
      int a = edges[li[0]].first == v ? edges[li[0]].second : edges[li[0]].first;
      int b = edges[li[1]].first == v ? edges[li[1]].second : edges[li[1]].first;
      edge_alive[li[0]] = edge_alive[li[1]] = false;
      alive[v] = false;
      int id = static_cast<int>(edges.size());
      edges.push_back({std::min(a, b), std::max(a, b)});
      edge_alive.push_back(true);
      if (trace) {
        std::vector<int> p1 = paths[li[0]], p2 = paths[li[1]];
        if (p1.front() == v) std::reverse(p1.begin(), p1.end());
        if (p2.back() == v) std::reverse(p2.begin(), p2.end());
        p1.insert(p1.end(), p2.begin() + 1, p2.end());
        if (p1.front() != std::min(a, b)) std::reverse(p1.begin(), p1.end());
        paths.push_back(std::move(p1));
      }
      inc[a].push_back(id);
      inc[b].push_back(id);
      changed = true;
    }
  }
  SmoothResult out;
  std::vector<int> map(n, -1);
  for (int v = 0; v < n; ++v)
    if (alive[v]) {
      map[v] = static_cast<int>(out.vertex_origin.size());
      out.vertex_origin.push_back(v);
    }
  out.graph = Multigraph(static_cast<int>(out.vertex_origin.size()));
  for (std::size_t e = 0; e < edges.size(); ++e) {
    if (!edge_alive[e]) continue;
    out.graph.add_edge(map[edges[e].first], map[edges[e].second]);
    if (trace) out.edge_paths.push_back(paths[e]);
  }
  return out;
}

Multigraph prune_and_smooth(const Multigraph& g) { return prune_and_smooth_traced(g, false).graph; }

Multigraph theta_graph() { return Multigraph(2, {{0, 1}, {0, 1}, {0, 1}}); }
Multigraph dumbbell_graph() { return Multigraph(2, {{0, 0}, {0, 1}, {1, 1}}); }
Multigraph loop_graph() { return Multigraph(1, {{0, 0}}); }

Multigraph chain(const std::string& bits) {
  for (char c : bits)
    if (c != '0' && c != '1') throw std::invalid_argument("chain string must be binary");
  std::vector<int> blocks{1};
  for (char c : bits) {
    if (c == '0')
      ++blocks.back();
    else
      blocks.push_back(1);
  }
  Multigraph g;
  int prev_port = -1;
  for (std::size_t i = 0; i < blocks.size(); ++i) {
    const int k = blocks[i];
    const bool has_left = i > 0, has_right = i + 1 < blocks.size();
    int left = -1, right = -1;
    if (k == 1) {
      if (has_left && has_right) {
        left = g.add_vertex();
        right = g.add_vertex();
        g.add_edge(left, right);
        g.add_edge(left, right);
      } else {
        left = right = g.add_vertex();
        g.add_edge(left, left);
      }
    } else {
      std::vector<int> top, bot;
      for (int j = 0; j + 1 < k; ++j) {
        top.push_back(g.add_vertex());
        bot.push_back(g.add_vertex());
        g.add_edge(top.back(), bot.back());
        if (j > 0) {
          g.add_edge(top[j - 1], top[j]);
          g.add_edge(bot[j - 1], bot[j]);
        }
      }
      auto close = [&](int t, int b, bool port) {
        if (!port) {
          g.add_edge(t, b);
          return -1;
        }
        int p = g.add_vertex();
        g.add_edge(t, p);
        g.add_edge(p, b);
        return p;
      };
      left = close(top.front(), bot.front(), has_left);
      right = close(top.back(), bot.back(), has_right);
    }
    if (has_left) g.add_edge(prev_port, left);
    prev_port = right;
  }
  return g;
}

std::vector<std::string> chain_strings(int genus) {
  if (genus < 2) throw std::invalid_argument("chains need genus >= 2");
  const int len = genus - 1;
  std::vector<std::string> out;
  for (std::uint64_t mask = 0; mask < (std::uint64_t{1} << len); ++mask) {
    std::string s(len, '0');
    for (int i = 0; i < len; ++i)
      if (mask >> i & 1) s[i] = '1';
    std::string r(s.rbegin(), s.rend());
    if (s <= r) out.push_back(s);
  }
  std::sort(out.begin(), out.end());
  return out;
}

std::uint64_t chain_count_formula(int genus) {
  return (std::uint64_t{1} << (genus - 2)) + (std::uint64_t{1} << ((genus - 2) / 2));
}

std::vector<Certificate> enumerate_trivalent(int g) {
  if (g < 2 || g > 8) throw std::invalid_argument("enumerate_trivalent supports genus 2..8");
  std::set<Certificate> level{certificate(theta_graph()), certificate(dumbbell_graph())};
  for (int genus = 3; genus <= g; ++genus) {
    std::set<Certificate> next;
    for (const auto& c : level) {
      Multigraph base = graph_from_certificate(c);
      const int m = base.edge_count();
      // Subdivide edge e (returning the new vertex) in a copy.
      auto subdivide = [](Multigraph& h, int e) {
        auto [a, b] = h.edge(e);
        int x = h.add_vertex();
        std::vector<std::pair<int, int>> edges = h.edges();
        edges[e] = {std::min(a, x), std::max(a, x)};
        Multigraph r(h.vertex_count(), edges);
        r.add_edge(x, b);
        h = r;
        return x;
      };
      for (int e = 0; e < m; ++e) {
        // Pendant loop on e.
        {
          Multigraph h = base;
          int x = subdivide(h, e);
          int y = h.add_vertex();
          h.add_edge(x, y);
          h.add_edge(y, y);
          next.insert(certificate(h));
        }
        for (int f = e; f < m; ++f) {
          Multigraph h = base;
          int x = subdivide(h, e);
          // After subdividing e, the second half of e is the last edge.
          int target = f == e ? h.edge_count() - 1 : f;
          int y = subdivide(h, target);
          h.add_edge(x, y);
          next.insert(certificate(h));
        }
      }
    }
    level = std::move(next);
  }
  return {level.begin(), level.end()};
}

std::string to_dot(const Multigraph& g, const std::string& name) {
  std::ostringstream os;
  os << "graph " << name << " {\n";
  for (int v = 0; v < g.vertex_count(); ++v) os << "  " << v << ";\n";
  for (auto [a, b] : g.edges()) os << "  " << a << " -- " << b << ";\n";
  os << "}\n";
  return os.str();
}

}  // namespace troplanar
