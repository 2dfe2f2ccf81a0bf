#include "troplanar/triangulation.hpp"

#include <algorithm>
#include <sstream>
#include <cstdio>
#include <numeric>
#include <stdexcept>

#include <json.hpp>

namespace troplanar {

namespace {

int sign(std::int64_t v) { return (v > 0) - (v < 0); }

// Open-addressing set of fixed-width keys kept in one arena.
class KeyStore {
 public:
  explicit KeyStore(int words) : words_(words) { table_.assign(1024, kEmpty); }

  std::size_t size() const { return count_; }
  const std::uint64_t* key(std::size_t i) const { return arena_.data() + i * words_; }

  bool contains(const std::uint64_t* k) const {
    std::size_t mask = table_.size() - 1;
    for (std::size_t pos = hash(k) & mask;; pos = (pos + 1) & mask) {
      std::uint32_t slot = table_[pos];
      if (slot == kEmpty) return false;
      if (std::equal(k, k + words_, key(slot))) return true;
    }
  }

  bool insert(const std::uint64_t* k) {
    if (2 * (count_ + 1) > table_.size()) grow();
    std::size_t mask = table_.size() - 1;
    for (std::size_t pos = hash(k) & mask;; pos = (pos + 1) & mask) {
      std::uint32_t slot = table_[pos];
      if (slot == kEmpty) {
        table_[pos] = static_cast<std::uint32_t>(count_);
        arena_.insert(arena_.end(), k, k + words_);
        ++count_;
        return true;
      }
      if (std::equal(k, k + words_, key(slot))) return false;
    }
  }

  void clear() {
    arena_.clear();
    arena_.shrink_to_fit();
    table_.assign(1024, kEmpty);
    count_ = 0;
  }

 private:
  static constexpr std::uint32_t kEmpty = 0xffffffffu;

  std::size_t hash(const std::uint64_t* k) const {
    std::uint64_t h = 0x9e3779b97f4a7c15ull;
    for (int i = 0; i < words_; ++i) {
      h ^= k[i] + 0x9e3779b97f4a7c15ull + (h << 6) + (h >> 2);
      h ^= h >> 31;
      h *= 0xbf58476d1ce4e5b9ull;
    }
    return static_cast<std::size_t>(h ^ (h >> 29));
  }

  void grow() {
    std::vector<std::uint32_t> bigger(table_.size() * 2, kEmpty);
    std::size_t mask = bigger.size() - 1;
    for (std::size_t i = 0; i < count_; ++i) {
      std::size_t pos = hash(key(i)) & mask;
      while (bigger[pos] != kEmpty) pos = (pos + 1) & mask;
      bigger[pos] = static_cast<std::uint32_t>(i);
    }
    table_.swap(bigger);
  }

  int words_;
  std::vector<std::uint64_t> arena_;
  std::vector<std::uint32_t> table_;
  std::size_t count_ = 0;
};

void set_bit(EdgeBits& b, int id) { b[id >> 6] |= std::uint64_t{1} << (id & 63); }
void clear_bit(EdgeBits& b, int id) { b[id >> 6] &= ~(std::uint64_t{1} << (id & 63)); }

template <class F>
void for_each_bit(const std::uint64_t* words, int count, F&& f) {
  for (int w = 0; w < count; ++w) {
    std::uint64_t x = words[w];
    while (x) {
      int b = __builtin_ctzll(x);
      f(w * 64 + b);
      x &= x - 1;
    }
  }
}

std::size_t group_index(SymmetryGroup g) { return static_cast<std::size_t>(g); }

}  // namespace

PointConfiguration::PointConfiguration(LatticePolygon polygon) : polygon_(std::move(polygon)) {
  points_ = polygon_.lattice_points();
  const int n = point_count();
  edge_index_.assign(static_cast<std::size_t>(n) * n, -1);
  const auto& verts = polygon_.vertices();
  auto on_boundary_line = [&](LatticePoint a, LatticePoint b) {
    for (std::size_t i = 0; i < verts.size(); ++i) {
      LatticePoint u = verts[i], v = verts[(i + 1) % verts.size()];
      if (orient(u, v, a) == 0 && orient(u, v, b) == 0) return true;
    }
    return false;
  };
  for (int a = 0; a < n; ++a) {
    for (int b = a + 1; b < n; ++b) {
      if (lattice_length(points_[a], points_[b]) != 1) continue;
      int id = static_cast<int>(edges_.size());
      edges_.push_back({a, b});
      edge_index_[a * n + b] = edge_index_[b * n + a] = id;
      boundary_.push_back(on_boundary_line(points_[a], points_[b]));
    }
  }
  words_ = (edge_count() + 63) / 64;
  apexes_.resize(2 * edges_.size());
  for (int id = 0; id < edge_count(); ++id) {
    auto [a, b] = edges_[id];
    for (int c = 0; c < n; ++c) {
      std::int64_t o = orient(points_[a], points_[b], points_[c]);
      if (o != 1 && o != -1) continue;
      Apex ap{c, edge_id(a, c), edge_id(b, c)};
      apexes_[2 * id + (o == 1 ? 0 : 1)].push_back(ap);
    }
  }
  std::vector<int> identity_points(n), identity_edges(edge_count());
  std::iota(identity_points.begin(), identity_points.end(), 0);
  std::iota(identity_edges.begin(), identity_edges.end(), 0);
  point_perms_[group_index(SymmetryGroup::Trivial)] = {identity_points};
  edge_perms_[group_index(SymmetryGroup::Trivial)] = {identity_edges};
  for (const auto& m : automorphisms(polygon_)) {
    std::vector<int> pp(n), ep(edge_count());
    for (int i = 0; i < n; ++i) pp[i] = index_of(m(points_[i]));
    for (int id = 0; id < edge_count(); ++id) ep[id] = edge_id(pp[edges_[id].first], pp[edges_[id].second]);
    point_perms_[group_index(SymmetryGroup::Full)].push_back(pp);
    edge_perms_[group_index(SymmetryGroup::Full)].push_back(ep);
    if (m.det() > 0) {
      point_perms_[group_index(SymmetryGroup::Rotations)].push_back(pp);
      edge_perms_[group_index(SymmetryGroup::Rotations)].push_back(ep);
    }
  }
}

int PointConfiguration::index_of(LatticePoint p) const {
  auto it = std::lower_bound(points_.begin(), points_.end(), p);
  if (it == points_.end() || *it != p) return -1;
  return static_cast<int>(it - points_.begin());
}

bool PointConfiguration::crosses(int e, int f) const {
  auto [a, b] = edges_[e];
  auto [c, d] = edges_[f];
  if (a == c || a == d || b == c || b == d) return false;
  const auto &pa = points_[a], &pb = points_[b], &pc = points_[c], &pd = points_[d];
  return sign(orient(pa, pb, pc)) * sign(orient(pa, pb, pd)) < 0 &&
         sign(orient(pc, pd, pa)) * sign(orient(pc, pd, pb)) < 0;
}

const std::vector<std::vector<int>>& PointConfiguration::edge_permutations(SymmetryGroup group) const {
  return edge_perms_[group_index(group)];
}

const std::vector<std::vector<int>>& PointConfiguration::point_permutations(SymmetryGroup group) const {
  return point_perms_[group_index(group)];
}

ConfigPtr make_configuration(const LatticePolygon& p) { return std::make_shared<const PointConfiguration>(p); }

Triangulation::Triangulation(ConfigPtr config, EdgeBits edges) : config_(std::move(config)), bits_(std::move(edges)) {
  if (static_cast<int>(bits_.size()) != config_->words()) throw std::invalid_argument("edge set has the wrong width");
}

Triangulation Triangulation::from_triangles(ConfigPtr config, const std::vector<std::array<LatticePoint, 3>>& triangles) {
  EdgeBits bits(config->words(), 0);
  for (const auto& tri : triangles) {
    int idx[3];
    for (int k = 0; k < 3; ++k) {
      idx[k] = config->index_of(tri[k]);
      if (idx[k] < 0) throw std::invalid_argument("triangle vertex outside the polygon");
    }
    for (int k = 0; k < 3; ++k) {
      int id = config->edge_id(idx[k], idx[(k + 1) % 3]);
      if (id < 0) throw std::invalid_argument("triangle edge is not primitive");
      set_bit(bits, id);
    }
  }
  Triangulation t(std::move(config), std::move(bits));
  t.validate();
  if (t.triangles().size() != triangles.size()) throw std::invalid_argument("triangle list does not match its edges");
  return t;
}

std::vector<int> Triangulation::edge_ids() const {
  std::vector<int> out;
  for_each_bit(bits_.data(), config_->words(), [&](int id) { out.push_back(id); });
  return out;
}

int Triangulation::apex(int edge, int side) const {
  for (const auto& ap : config_->apexes(edge, side))
    if (has_edge(ap.edge_a) && has_edge(ap.edge_b)) return ap.point;
  return -1;
}

std::vector<std::array<int, 3>> Triangulation::triangles() const {
  std::vector<std::array<int, 3>> out;
  for (int id : edge_ids()) {
    int c = apex(id, 0);
    if (c < 0) continue;
    auto [a, b] = config_->edge(id);
    std::array<int, 3> tri{a, b, c};
    std::sort(tri.begin(), tri.end());
    out.push_back(tri);
  }
  std::sort(out.begin(), out.end());
  out.erase(std::unique(out.begin(), out.end()), out.end());
  return out;
}

std::vector<std::array<LatticePoint, 3>> Triangulation::lattice_triangles() const {
  std::vector<std::array<LatticePoint, 3>> out;
  const auto& pts = config_->points();
  for (const auto& t : triangles()) out.push_back({pts[t[0]], pts[t[1]], pts[t[2]]});
  return out;
}

void Triangulation::validate() const {
  auto ids = edge_ids();
  for (std::size_t i = 0; i < ids.size(); ++i)
    for (std::size_t j = i + 1; j < ids.size(); ++j)
      if (config_->crosses(ids[i], ids[j])) throw std::logic_error("triangulation edges cross");
  std::int64_t boundary_edges = 0;
  for (int id : ids) {
    bool left = apex(id, 0) >= 0, right = apex(id, 1) >= 0;
    if (config_->is_boundary_edge(id)) {
      ++boundary_edges;
      if (left == right) throw std::logic_error("boundary edge must bound exactly one triangle");
    } else if (!left || !right) {
      throw std::logic_error("interior edge must bound two triangles");
    }
  }
  if (boundary_edges != polygon().boundary_count()) throw std::logic_error("boundary is not fully covered");
  if (static_cast<std::int64_t>(triangles().size()) != polygon().area2())
    throw std::logic_error("triangles do not tile the polygon");
}

std::string Triangulation::id() const {
  std::string s;
  char buf[17];
  for (auto w : bits_) {
    std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(w));
    s += buf;
  }
  return s;
}

Triangulation Triangulation::from_id(ConfigPtr config, const std::string& hex) {
  if (hex.size() != 16 * static_cast<std::size_t>(config->words())) throw std::invalid_argument("bad triangulation id");
  EdgeBits bits(config->words());
  for (int w = 0; w < config->words(); ++w) bits[w] = std::stoull(hex.substr(16 * w, 16), nullptr, 16);
  Triangulation t(std::move(config), std::move(bits));
  t.validate();
  return t;
}

Triangulation Triangulation::transformed_by(const std::vector<int>& edge_perm) const {
  EdgeBits out(bits_.size(), 0);
  for_each_bit(bits_.data(), config_->words(), [&](int id) { set_bit(out, edge_perm[id]); });
  return Triangulation(config_, std::move(out));
}

std::optional<Triangulation> bistellar_flip(const Triangulation& t, int edge) {
  const auto& cfg = t.config();
  if (!t.has_edge(edge) || cfg.is_boundary_edge(edge)) return std::nullopt;
  int c = t.apex(edge, 0), d = t.apex(edge, 1);
  if (c < 0 || d < 0) return std::nullopt;
  int f = cfg.edge_id(c, d);
  if (f < 0 || !cfg.crosses(edge, f)) return std::nullopt;
  EdgeBits bits = t.bits();
  clear_bit(bits, edge);
  set_bit(bits, f);
  return Triangulation(t.config_ptr(), std::move(bits));
}

std::optional<Triangulation> bistellar_flip(const Triangulation& t, LatticePoint a, LatticePoint b) {
  int ia = t.config().index_of(a), ib = t.config().index_of(b);
  if (ia < 0 || ib < 0) return std::nullopt;
  int id = t.config().edge_id(ia, ib);
  if (id < 0) return std::nullopt;
  return bistellar_flip(t, id);
}

Triangulation greedy_triangulation(ConfigPtr config) {
  const auto& pts = config->points();
  std::vector<int> order(config->edge_count());
  std::iota(order.begin(), order.end(), 0);
  auto len2 = [&](int id) {
    auto [a, b] = config->edge(id);
    LatticePoint d = pts[b] - pts[a];
    return dot(d, d);
  };
  std::stable_sort(order.begin(), order.end(), [&](int x, int y) { return len2(x) < len2(y); });
  std::vector<int> chosen;
  EdgeBits bits(config->words(), 0);
  for (int id : order) {
    bool ok = std::none_of(chosen.begin(), chosen.end(), [&](int c) { return config->crosses(id, c); });
    if (ok) {
      chosen.push_back(id);
      set_bit(bits, id);
    }
  }
  Triangulation t(std::move(config), std::move(bits));
  t.validate();
  return t;
}

EdgeBits canonical_bits(const PointConfiguration& config, SymmetryGroup group, const EdgeBits& bits,
                        std::size_t* stabilizer) {
  const auto& perms = config.edge_permutations(group);
  const int words = config.words();
  EdgeBits best, image(words);
  std::size_t hits = 0;
  for (const auto& perm : perms) {
    std::fill(image.begin(), image.end(), 0);
    for_each_bit(bits.data(), words, [&](int id) { set_bit(image, perm[id]); });
    if (best.empty() || image < best) {
      best = image;
      hits = 1;
    } else if (image == best) {
      ++hits;
    }
  }
  if (stabilizer) *stabilizer = hits;
  return best;
}

EnumerationStats for_each_triangulation_orbit(const ConfigPtr& config, SymmetryGroup group,
                                              const std::function<bool(const Triangulation&, const OrbitInfo&)>& visit) {
  const int words = config->words();
  const std::size_t group_order = config->edge_permutations(group).size();
  KeyStore prev(words), cur(words), next(words);
  EnumerationStats stats;
  auto seed = canonical_bits(*config, group, greedy_triangulation(config).bits());
  cur.insert(seed.data());
  EdgeBits bits(words);
  for (std::size_t level = 0; cur.size() > 0; ++level) {
    stats.levels = level + 1;
    for (std::size_t i = 0; i < cur.size(); ++i) {
      bits.assign(cur.key(i), cur.key(i) + words);
      Triangulation rep(config, bits);
      std::size_t stab = 0;
      canonical_bits(*config, group, bits, &stab);
      OrbitInfo info{group_order / stab, level};
      ++stats.orbits;
      stats.labeled += info.orbit_size;
      if (!visit(rep, info)) return stats;
      for_each_bit(bits.data(), words, [&](int id) {
        if (config->is_boundary_edge(id)) return;
        auto flipped = bistellar_flip(rep, id);
        if (!flipped) return;
        auto key = canonical_bits(*config, group, flipped->bits());
        if (prev.contains(key.data()) || cur.contains(key.data())) return;
        next.insert(key.data());
      });
    }
    stats.peak_stored = std::max(stats.peak_stored, prev.size() + cur.size() + next.size());
    std::swap(prev, cur);
    std::swap(cur, next);
    next.clear();
  }
  return stats;
}

std::vector<EdgeBits> placement_oracle(const PointConfiguration& config) {
  const int m = config.edge_count();
  std::vector<std::vector<int>> crossing(m);
  for (int e = 0; e < m; ++e)
    for (int f = 0; f < m; ++f)
      if (config.crosses(e, f)) crossing[e].push_back(f);
  std::vector<int> blocked(m, 0);
  EdgeBits chosen(config.words(), 0);
  std::vector<EdgeBits> out;
  auto rec = [&](auto&& self, int e) -> void {
    if (e == m) {
      for (int f = 0; f < m; ++f)
        if (blocked[f] == 0 && !((chosen[f >> 6] >> (f & 63)) & 1)) return;
      out.push_back(chosen);
      return;
    }
    if (blocked[e] == 0) {
      set_bit(chosen, e);
      for (int f : crossing[e]) ++blocked[f];
      self(self, e + 1);
      for (int f : crossing[e]) --blocked[f];
      clear_bit(chosen, e);
      // Leaving e out is only useful if a later segment can still cross it.
      bool coverable = std::any_of(crossing[e].begin(), crossing[e].end(), [&](int f) { return f > e && blocked[f] == 0; });
      if (coverable) self(self, e + 1);
    } else {
      self(self, e + 1);
    }
  };
  rec(rec, 0);
  std::sort(out.begin(), out.end());
  return out;
}

std::vector<Split> splits(const Triangulation& t) {
  const auto& cfg = t.config();
  const auto& poly = t.polygon();
  const auto& verts = poly.vertices();
  std::vector<Split> out;
  for (int id : t.edge_ids()) {
    if (cfg.is_boundary_edge(id)) continue;
    auto [ia, ib] = cfg.edge(id);
    LatticePoint a = cfg.points()[ia], b = cfg.points()[ib];
    if (poly.locate(a) != 0 || poly.locate(b) != 0) continue;
    bool same_edge = false;
    for (std::size_t i = 0; i < verts.size(); ++i) {
      LatticePoint u = verts[i], v = verts[(i + 1) % verts.size()];
      if (orient(u, v, a) == 0 && orient(u, v, b) == 0) same_edge = true;
    }
    if (same_edge) continue;
    std::vector<LatticePoint> left, right;
    for (const auto& p : cfg.points()) {
      std::int64_t o = orient(a, b, p);
      if (o >= 0) left.push_back(p);
      if (o <= 0) right.push_back(p);
    }
    Split s{a, b, LatticePolygon::hull(left), LatticePolygon::hull(right), false};
    s.nontrivial = s.left.genus() > 0 && s.right.genus() > 0;
    out.push_back(std::move(s));
  }
  return out;
}

std::string to_json(const Triangulation& t) {
  nlohmann::json j;
  j["polygon"] = nlohmann::json::parse(to_json(t.polygon()));
  j["triangles"] = nlohmann::json::array();
  for (const auto& tri : t.lattice_triangles()) {
    nlohmann::json jt = nlohmann::json::array();
    for (const auto& p : tri) jt.push_back({p.x, p.y});
    j["triangles"].push_back(jt);
  }
  return j.dump();
}

Triangulation triangulation_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  auto poly = polygon_from_json(j.at("polygon").dump());
  std::vector<std::array<LatticePoint, 3>> tris;
  for (const auto& jt : j.at("triangles")) {
    std::array<LatticePoint, 3> tri;
    for (int k = 0; k < 3; ++k) tri[k] = {jt.at(k).at(0).get<std::int64_t>(), jt.at(k).at(1).get<std::int64_t>()};
    tris.push_back(tri);
  }
  return Triangulation::from_triangles(make_configuration(poly), tris);
}

}  // namespace troplanar

namespace troplanar {

std::string to_dot(const Triangulation& t, const std::string& name) {
  std::ostringstream os;
  const auto& pts = t.config().points();
  os << "graph " << name << " {\n  node [shape=point];\n";
  for (std::size_t i = 0; i < pts.size(); ++i)
    os << "  " << i << " [pos=\"" << pts[i].x << "," << pts[i].y << "!\", xlabel=\"(" << pts[i].x << "," << pts[i].y
       << ")\"];\n";
  for (int id : t.edge_ids()) {
    auto [a, b] = t.config().edge(id);
    os << "  " << a << " -- " << b << ";\n";
  }
  os << "}\n";
  return os.str();
}

}  // namespace troplanar
