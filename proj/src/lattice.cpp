#include "troplanar/lattice.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>
#include <set>
#include <stdexcept>

#include <json.hpp>

namespace troplanar {

namespace {

std::int64_t floor_div(std::int64_t a, std::int64_t b) {
  std::int64_t q = a / b;
  if ((a % b != 0) && ((a < 0) != (b < 0))) --q;
  return q;
}

std::int64_t ceil_div(std::int64_t a, std::int64_t b) { return -floor_div(-a, b); }

// Extended gcd: returns (g, s, t) with s*a + t*b = g >= 0.
void ext_gcd(std::int64_t a, std::int64_t b, std::int64_t& g, std::int64_t& s, std::int64_t& t) {
  std::int64_t old_r = a, r = b, old_s = 1, s1 = 0, old_t = 0, t1 = 1;
  while (r != 0) {
    std::int64_t q = old_r / r;
    std::int64_t tmp = old_r - q * r;
    old_r = r;
    r = tmp;
    tmp = old_s - q * s1;
    old_s = s1;
    s1 = tmp;
    tmp = old_t - q * t1;
    old_t = t1;
    t1 = tmp;
  }
  if (old_r < 0) {
    old_r = -old_r;
    old_s = -old_s;
    old_t = -old_t;
  }
  g = old_r;
  s = old_s;
  t = old_t;
}

struct HalfPlane {
  LatticePoint n;  // outward normal
  std::int64_t c;  // <n, x> <= c
};

std::vector<HalfPlane> shifted_half_planes(const LatticePolygon& q) {
  std::vector<HalfPlane> planes;
  const auto& v = q.vertices();
  for (std::size_t i = 0; i < v.size(); ++i) {
    LatticePoint e = v[(i + 1) % v.size()] - v[i];
    std::int64_t k = std::gcd(e.x, e.y);
    LatticePoint n{e.y / k, -e.x / k};
    planes.push_back({n, dot(n, v[i]) + 1});
  }
  return planes;
}

// Rational vertices X/D (D > 0) of the intersection of the half-planes.
struct RationalPoint {
  std::int64_t x, y, d;
};

std::vector<RationalPoint> region_vertices(const std::vector<HalfPlane>& planes) {
  std::vector<RationalPoint> out;
  for (std::size_t i = 0; i < planes.size(); ++i) {
    for (std::size_t j = i + 1; j < planes.size(); ++j) {
      const auto& a = planes[i];
      const auto& b = planes[j];
      std::int64_t det = cross(a.n, b.n);
      if (det == 0) continue;
      std::int64_t x = a.c * b.n.y - b.c * a.n.y;
      std::int64_t y = a.n.x * b.c - b.n.x * a.c;
      if (det < 0) {
        det = -det;
        x = -x;
        y = -y;
      }
      bool feasible = true;
      for (const auto& h : planes) {
        if (h.n.x * x + h.n.y * y > h.c * det) {
          feasible = false;
          break;
        }
      }
      if (feasible) out.push_back({x, y, det});
    }
  }
  return out;
}

LatticePoint find_unimodular_corner(const LatticePolygon& p, LatticePoint& e1, LatticePoint& e2) {
  auto pts = p.lattice_points();
  LatticePoint a = p.vertices()[0], b = p.vertices()[1], c = p.vertices()[2];
  for (;;) {
    std::int64_t ar = std::abs(orient(a, b, c));
    if (ar == 1) break;
    bool improved = false;
    for (const auto& w : pts) {
      if (w == a || w == b || w == c) continue;
      std::int64_t o1 = orient(a, b, w), o2 = orient(b, c, w), o3 = orient(c, a, w);
      bool inside = (o1 >= 0 && o2 >= 0 && o3 >= 0) || (o1 <= 0 && o2 <= 0 && o3 <= 0);
      if (!inside) continue;
      // w splits abc into smaller lattice triangles; keep one of positive area.
      if (o1 != 0) {
        c = w;
      } else if (o2 != 0) {
        a = w;
      } else {
        b = w;
      }
      improved = true;
      break;
    }
    if (!improved) throw std::logic_error("lattice triangle without extra points has area2 > 1");
  }
  e1 = b - a;
  e2 = c - a;
  return a;
}

}  // namespace

std::int64_t lattice_length(LatticePoint a, LatticePoint b) {
  LatticePoint e = b - a;
  return std::gcd(e.x, e.y);
}

AffineMap AffineMap::inverse() const {
  std::int64_t dt = det();
  AffineMap r;
  r.a = d * dt;
  r.b = -b * dt;
  r.c = -c * dt;
  r.d = a * dt;
  r.tx = -(r.a * tx + r.b * ty);
  r.ty = -(r.c * tx + r.d * ty);
  return r;
}

AffineMap AffineMap::compose(const AffineMap& o) const {
  AffineMap r;
  r.a = a * o.a + b * o.c;
  r.b = a * o.b + b * o.d;
  r.c = c * o.a + d * o.c;
  r.d = c * o.b + d * o.d;
  r.tx = a * o.tx + b * o.ty + tx;
  r.ty = c * o.tx + d * o.ty + ty;
  return r;
}

LatticePolygon::LatticePolygon(std::vector<LatticePoint> vertices) : vertices_(std::move(vertices)) {
  const std::size_t n = vertices_.size();
  if (n < 3) throw std::invalid_argument("polygon needs at least three vertices");
  std::int64_t shoelace = 0;
  for (std::size_t i = 0; i < n; ++i) shoelace += cross(vertices_[i], vertices_[(i + 1) % n]);
  if (shoelace == 0) throw std::invalid_argument("degenerate polygon");
  if (shoelace < 0) {
    std::reverse(vertices_.begin(), vertices_.end());
    shoelace = -shoelace;
  }
  for (std::size_t i = 0; i < n; ++i) {
    if (orient(vertices_[i], vertices_[(i + 1) % n], vertices_[(i + 2) % n]) <= 0)
      throw std::invalid_argument("vertices are not strictly convex");
  }
  area2_ = shoelace;
  boundary_ = 0;
  for (std::size_t i = 0; i < n; ++i) boundary_ += lattice_length(vertices_[i], vertices_[(i + 1) % n]);
  // Star-shaped orders turn left everywhere too; count windings.
  int windings = 0;
  for (std::size_t i = 0; i < n; ++i) {
    LatticePoint e1 = vertices_[(i + 1) % n] - vertices_[i];
    LatticePoint e2 = vertices_[(i + 2) % n] - vertices_[(i + 1) % n];
    if (e1.y < 0 && e2.y >= 0) ++windings;
  }
  if (windings > 1) throw std::invalid_argument("vertex order winds more than once");
  genus_ = (area2_ - boundary_ + 2) / 2;
  if (area2_ != boundary_ + 2 * genus_ - 2) throw std::logic_error("Pick identity violated");
}

LatticePolygon LatticePolygon::hull(std::span<const LatticePoint> points) {
  std::vector<LatticePoint> pts(points.begin(), points.end());
  std::sort(pts.begin(), pts.end());
  pts.erase(std::unique(pts.begin(), pts.end()), pts.end());
  if (pts.size() < 3) throw std::invalid_argument("hull of fewer than three points");
  std::vector<LatticePoint> h(2 * pts.size());
  std::size_t k = 0;
  for (const auto& p : pts) {
    while (k >= 2 && orient(h[k - 2], h[k - 1], p) <= 0) --k;
    h[k++] = p;
  }
  for (std::size_t i = pts.size() - 1, t = k + 1; i-- > 0;) {
    while (k >= t && orient(h[k - 2], h[k - 1], pts[i]) <= 0) --k;
    h[k++] = pts[i];
  }
  h.resize(k - 1);
  if (h.size() < 3) throw std::invalid_argument("points are collinear");
  return LatticePolygon(std::move(h));
}

int LatticePolygon::locate(LatticePoint p) const {
  bool on_edge = false;
  const std::size_t n = vertices_.size();
  for (std::size_t i = 0; i < n; ++i) {
    std::int64_t o = orient(vertices_[i], vertices_[(i + 1) % n], p);
    if (o < 0) return -1;
    if (o == 0) on_edge = true;
  }
  return on_edge ? 0 : 1;
}

std::vector<LatticePoint> LatticePolygon::lattice_points() const {
  std::int64_t x0 = vertices_[0].x, x1 = x0, y0 = vertices_[0].y, y1 = y0;
  for (const auto& v : vertices_) {
    x0 = std::min(x0, v.x);
    x1 = std::max(x1, v.x);
    y0 = std::min(y0, v.y);
    y1 = std::max(y1, v.y);
  }
  std::vector<LatticePoint> out;
  for (std::int64_t x = x0; x <= x1; ++x)
    for (std::int64_t y = y0; y <= y1; ++y)
      if (contains({x, y})) out.push_back({x, y});
  return out;
}

std::vector<LatticePoint> LatticePolygon::interior_points() const {
  std::vector<LatticePoint> out;
  for (const auto& p : lattice_points())
    if (locate(p) == 1) out.push_back(p);
  return out;
}

std::vector<LatticePoint> LatticePolygon::boundary_points() const {
  std::vector<LatticePoint> out;
  for (const auto& p : lattice_points())
    if (locate(p) == 0) out.push_back(p);
  return out;
}

LatticePolygon LatticePolygon::transformed(const AffineMap& m) const {
  std::vector<LatticePoint> v;
  v.reserve(vertices_.size());
  for (const auto& p : vertices_) v.push_back(m(p));
  return LatticePolygon(std::move(v));
}

std::int64_t area2(const LatticePolygon& p) { return p.area2(); }

std::int64_t width_in_direction(const LatticePolygon& p, LatticePoint d) {
  std::int64_t lo = dot(d, p.vertices()[0]), hi = lo;
  for (const auto& v : p.vertices()) {
    lo = std::min(lo, dot(d, v));
    hi = std::max(hi, dot(d, v));
  }
  return hi - lo;
}

std::int64_t lattice_width(const LatticePolygon& p) {
  // With e1, e2 spanning a unimodular triangle inside p, the width in
  // direction d is at least max(|<d,e1>|, |<d,e2>|), and (<d,e1>, <d,e2>)
  // ranges over all of Z^2 as d does. Scan those coordinates by shells.
  LatticePoint e1, e2;
  find_unimodular_corner(p, e1, e2);
  std::int64_t det = cross(e1, e2);  // +-1
  std::int64_t best = std::min(width_in_direction(p, {1, 0}), width_in_direction(p, {0, 1}));
  for (std::int64_t s = 1; s <= best; ++s) {
    for (std::int64_t m = -s; m <= s; ++m) {
      for (std::int64_t n = -s; n <= s; ++n) {
        if (std::max(std::abs(m), std::abs(n)) != s) continue;
        // Solve <d,e1> = m, <d,e2> = n.
        LatticePoint d{(m * e2.y - n * e1.y) * det, (n * e1.x - m * e2.x) * det};
        if (std::gcd(d.x, d.y) != 1) continue;
        best = std::min(best, width_in_direction(p, d));
      }
    }
  }
  return best;
}

std::vector<AffineMap> canonical_placements(const LatticePolygon& p) {
  const auto& v = p.vertices();
  const std::size_t n = v.size();
  std::vector<LatticePoint> best;
  std::vector<AffineMap> maps;
  std::vector<LatticePoint> cand(n);
  for (std::size_t i = 0; i < n; ++i) {
    for (int orientation : {1, -1}) {
      auto at = [&](std::size_t k) -> const LatticePoint& {
        std::size_t idx = orientation > 0 ? (i + k) % n : (i + n - k % n) % n;
        return v[idx];
      };
      LatticePoint e = at(1) - at(0);
      std::int64_t len = std::gcd(e.x, e.y);
      LatticePoint u{e.x / len, e.y / len};
      std::int64_t g, s, t;
      ext_gcd(u.x, u.y, g, s, t);
      AffineMap m{s, t, -u.y, u.x, 0, 0};
      if (orientation < 0) {
        m.c = -m.c;
        m.d = -m.d;
      }
      LatticePoint w = m(at(2) - at(0));
      std::int64_t shift = floor_div(w.x, w.y);
      // Shear x -> x - shift*y puts the third vertex at 0 <= x < y.
      AffineMap shear{1, -shift, 0, 1, 0, 0};
      m = shear.compose(m);
      LatticePoint o = m(at(0));
      m.tx = -o.x;
      m.ty = -o.y;
      for (std::size_t k = 0; k < n; ++k) cand[k] = m(at(k));
      if (best.empty() || cand < best) {
        best = cand;
        maps.assign(1, m);
      } else if (cand == best) {
        maps.push_back(m);
      }
    }
  }
  return maps;
}

LatticePolygon canonical_form(const LatticePolygon& p) {
  auto maps = canonical_placements(p);
  const auto& m = maps.front();
  const auto& v = p.vertices();
  // Recover the traversal order by starting at the vertex sent to the origin.
  std::vector<LatticePoint> image;
  for (const auto& q : v) image.push_back(m(q));
  if (m.det() < 0) std::reverse(image.begin(), image.end());
  auto it = std::find(image.begin(), image.end(), LatticePoint{0, 0});
  std::rotate(image.begin(), it, image.end());
  return LatticePolygon(std::move(image));
}

std::vector<AffineMap> automorphisms(const LatticePolygon& p) {
  auto maps = canonical_placements(p);
  AffineMap inv = maps.front().inverse();
  std::vector<AffineMap> out;
  out.reserve(maps.size());
  for (const auto& m : maps) out.push_back(inv.compose(m));
  return out;
}

InteriorPolygon interior_polygon(const LatticePolygon& p) {
  InteriorPolygon r;
  r.points = p.interior_points();
  if (r.points.empty()) {
    r.kind = InteriorPolygon::Kind::Empty;
  } else if (r.points.size() == 1) {
    r.kind = InteriorPolygon::Kind::Point;
  } else {
    bool collinear = true;
    for (const auto& q : r.points)
      if (orient(r.points[0], r.points[1], q) != 0) collinear = false;
    if (collinear) {
      r.kind = InteriorPolygon::Kind::Segment;
    } else {
      r.kind = InteriorPolygon::Kind::TwoDimensional;
      r.polygon = LatticePolygon::hull(r.points);
    }
  }
  return r;
}

std::optional<LatticePolygon> move_out(const LatticePolygon& sigma) {
  if (sigma.area2() <= 0) throw std::invalid_argument("move_out needs a two-dimensional polygon");
  auto verts = region_vertices(shifted_half_planes(sigma));
  std::vector<LatticePoint> pts;
  for (const auto& rp : verts) {
    if (rp.x % rp.d != 0 || rp.y % rp.d != 0) return std::nullopt;
    pts.push_back({rp.x / rp.d, rp.y / rp.d});
  }
  LatticePolygon result = LatticePolygon::hull(pts);
  if (result.interior_points() != sigma.lattice_points()) return std::nullopt;
  return result;
}

std::vector<LatticePoint> moved_out_lattice_points(const LatticePolygon& q) {
  auto planes = shifted_half_planes(q);
  auto verts = region_vertices(planes);
  std::int64_t x0 = floor_div(verts[0].x, verts[0].d), x1 = ceil_div(verts[0].x, verts[0].d);
  std::int64_t y0 = floor_div(verts[0].y, verts[0].d), y1 = ceil_div(verts[0].y, verts[0].d);
  for (const auto& rp : verts) {
    x0 = std::min(x0, floor_div(rp.x, rp.d));
    x1 = std::max(x1, ceil_div(rp.x, rp.d));
    y0 = std::min(y0, floor_div(rp.y, rp.d));
    y1 = std::max(y1, ceil_div(rp.y, rp.d));
  }
  std::vector<LatticePoint> out;
  for (std::int64_t x = x0; x <= x1; ++x) {
    for (std::int64_t y = y0; y <= y1; ++y) {
      bool ok = true;
      for (const auto& h : planes)
        if (h.n.x * x + h.n.y * y > h.c) {
          ok = false;
          break;
        }
      if (ok) out.push_back({x, y});
    }
  }
  return out;
}

namespace {

void check_enumerated(const LatticePolygon& p) {
  if (p.area2() != p.boundary_count() + 2 * p.genus() - 2) throw std::logic_error("Pick identity violated");
  std::int64_t lw = lattice_width(p);
  if (3 * lw * lw > 4 * p.area2()) throw std::logic_error("lattice width exceeds the area bound");
}

}  // namespace

std::vector<LatticePolygon> enumerate_polygons_by_point_count(int n) {
  if (n < 3) return {};
  auto less = [](const LatticePolygon& a, const LatticePolygon& b) { return a.vertices() < b.vertices(); };
  std::vector<LatticePolygon> level{canonical_form(LatticePolygon({{0, 0}, {1, 0}, {0, 1}}))};
  for (int k = 4; k <= n; ++k) {
    std::set<std::vector<LatticePoint>> seen;
    std::vector<LatticePolygon> next;
    auto add = [&](const LatticePolygon& p) {
      LatticePolygon c = canonical_form(p);
      if (seen.insert(c.vertices()).second) {
        check_enumerated(c);
        next.push_back(std::move(c));
      }
    };
    add(LatticePolygon({{0, 0}, {k - 2, 0}, {0, 1}}));
    for (const auto& q : level) {
      auto inside = q.lattice_points();
      for (const auto& v : moved_out_lattice_points(q)) {
        if (std::binary_search(inside.begin(), inside.end(), v)) continue;
        std::vector<LatticePoint> pts = q.vertices();
        pts.push_back(v);
        LatticePolygon h = LatticePolygon::hull(pts);
        if (h.lattice_point_count() == k) add(h);
      }
    }
    std::sort(next.begin(), next.end(), less);
    level = std::move(next);
  }
  return level;
}

std::vector<LatticePolygon> enumerate_maximal_nonhyperelliptic(int g) {
  if (g < 2) throw std::invalid_argument("genus must be at least 2");
  std::set<std::vector<LatticePoint>> seen;
  std::vector<LatticePolygon> out;
  for (const auto& sigma : enumerate_polygons_by_point_count(g)) {
    auto big = move_out(sigma);
    if (!big) continue;
    LatticePolygon c = canonical_form(*big);
    if (c.genus() != g) throw std::logic_error("moved-out polygon has the wrong genus");
    if (c.boundary_count() > bound_r(g, lattice_width(c))) throw std::logic_error("boundary bound violated");
    check_enumerated(c);
    if (seen.insert(c.vertices()).second) out.push_back(std::move(c));
  }
  std::sort(out.begin(), out.end(), [](const auto& a, const auto& b) { return a.vertices() < b.vertices(); });
  return out;
}

LatticePolygon scale_double(const LatticePolygon& p) {
  std::vector<LatticePoint> v;
  for (const auto& q : p.vertices()) v.push_back({2 * q.x, 2 * q.y});
  LatticePolygon r(std::move(v));
  if (r.genus() != 4 * p.genus() + p.boundary_count() - 3) throw std::logic_error("doubling genus identity violated");
  if (p.genus() >= 1 && r.genus() > 6 * p.genus() + 4) throw std::logic_error("doubling genus bound violated");
  return r;
}

std::int64_t bound_r(std::int64_t g, std::int64_t lw) {
  if (g < 1) throw std::invalid_argument("bound_r needs genus >= 1");
  std::int64_t r = std::min(2 * g + 7, g + 9);
  if (lw >= 4) {
    // Largest k with k <= 2g/l + 2 + 4 sqrt(g + 8/3), evaluated exactly.
    std::int64_t l = lw - 1;
    auto fits = [&](std::int64_t k) {
      std::int64_t t = (k - 2) * l - 2 * g;
      return t <= 0 || 3 * t * t <= 16 * l * l * (3 * g + 8);
    };
    std::int64_t k = 2;
    while (fits(k + 1)) ++k;
    r = std::min(r, k);
  }
  return r;
}

std::string to_json(const LatticePolygon& p) {
  nlohmann::json j;
  j["vertices"] = nlohmann::json::array();
  for (const auto& v : p.vertices()) j["vertices"].push_back({v.x, v.y});
  return j.dump();
}

LatticePolygon polygon_from_json(const std::string& text) {
  auto j = nlohmann::json::parse(text);
  std::vector<LatticePoint> v;
  for (const auto& q : j.at("vertices")) v.push_back({q.at(0).get<std::int64_t>(), q.at(1).get<std::int64_t>()});
  return LatticePolygon(std::move(v));
}

}  // namespace troplanar
