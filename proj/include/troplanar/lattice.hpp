#pragma once

#include <compare>
#include <cstdint>
#include <optional>
#include <span>
#include <string>
#include <vector>

namespace troplanar {

struct LatticePoint {
  std::int64_t x = 0;
  std::int64_t y = 0;

  friend auto operator<=>(const LatticePoint&, const LatticePoint&) = default;
};

inline LatticePoint operator+(LatticePoint a, LatticePoint b) { return {a.x + b.x, a.y + b.y}; }
inline LatticePoint operator-(LatticePoint a, LatticePoint b) { return {a.x - b.x, a.y - b.y}; }
inline std::int64_t cross(LatticePoint a, LatticePoint b) { return a.x * b.y - a.y * b.x; }
inline std::int64_t dot(LatticePoint a, LatticePoint b) { return a.x * b.x + a.y * b.y; }
inline std::int64_t orient(LatticePoint a, LatticePoint b, LatticePoint c) { return cross(b - a, c - a); }

std::int64_t lattice_length(LatticePoint a, LatticePoint b);

// x -> M x + t with M integral and det M = +-1.
struct AffineMap {
  std::int64_t a = 1, b = 0, c = 0, d = 1;
  std::int64_t tx = 0, ty = 0;

  LatticePoint operator()(LatticePoint p) const { return {a * p.x + b * p.y + tx, c * p.x + d * p.y + ty}; }
  std::int64_t det() const { return a * d - b * c; }
  AffineMap inverse() const;
  // (*this)(other(p))
  AffineMap compose(const AffineMap& other) const;

  friend bool operator==(const AffineMap&, const AffineMap&) = default;
};

/// Convex lattice polygon, vertices counterclockwise and strictly convex.
///
/// The constructor validates convexity and caches twice the area, the number
/// of boundary lattice points and the number of interior lattice points. Pick's
/// identity area2 == r + 2g - 2 is checked on every construction.
class LatticePolygon {
 public:
  LatticePolygon() = default;
  explicit LatticePolygon(std::vector<LatticePoint> vertices);

  // Convex hull of arbitrary points (collinear points dropped). Throws
  // std::invalid_argument when the points do not span a two-dimensional hull.
  static LatticePolygon hull(std::span<const LatticePoint> points);

  const std::vector<LatticePoint>& vertices() const { return vertices_; }
  std::size_t vertex_count() const { return vertices_.size(); }
  std::int64_t area2() const { return area2_; }
  std::int64_t boundary_count() const { return boundary_; }
  std::int64_t genus() const { return genus_; }
  std::int64_t lattice_point_count() const { return boundary_ + genus_; }

  // -1 outside, 0 on boundary, 1 strictly inside.
  int locate(LatticePoint p) const;
  bool contains(LatticePoint p) const { return locate(p) >= 0; }

  // All lattice points (sorted lexicographically).
  std::vector<LatticePoint> lattice_points() const;
  std::vector<LatticePoint> interior_points() const;
  std::vector<LatticePoint> boundary_points() const;

  LatticePolygon transformed(const AffineMap& m) const;

  friend bool operator==(const LatticePolygon& a, const LatticePolygon& b) { return a.vertices_ == b.vertices_; }

 private:
  std::vector<LatticePoint> vertices_;
  std::int64_t area2_ = 0;
  std::int64_t boundary_ = 0;
  std::int64_t genus_ = 0;
};

std::int64_t area2(const LatticePolygon& p);

std::int64_t lattice_width(const LatticePolygon& p);

// Width of p in the integer direction d: max <d,v> - min <d,v>.
std::int64_t width_in_direction(const LatticePolygon& p, LatticePoint d);

/// Normal form under affine unimodular maps (det +-1 and translations).
///
/// Each edge in each orientation is mapped onto the positive x-axis starting at
/// the origin with the polygon above it; the remaining shear freedom is fixed
/// by putting the third vertex at 0 <= x < y. The lexicographically least
/// vertex list over all placements is the canonical form.
LatticePolygon canonical_form(const LatticePolygon& p);

// Maps T with T(p) == canonical_form(p).
std::vector<AffineMap> canonical_placements(const LatticePolygon& p);

// Affine unimodular maps sending p onto itself (the identity included).
std::vector<AffineMap> automorphisms(const LatticePolygon& p);

struct InteriorPolygon {
  enum class Kind { Empty, Point, Segment, TwoDimensional };

  Kind kind = Kind::Empty;
  std::vector<LatticePoint> points;       // interior lattice points, sorted
  std::optional<LatticePolygon> polygon;  // set iff kind == TwoDimensional
};

InteriorPolygon interior_polygon(const LatticePolygon& p);

inline bool is_hyperelliptic(const LatticePolygon& p) {
  return interior_polygon(p).kind != InteriorPolygon::Kind::TwoDimensional;
}

// Pushes every edge of sigma out by lattice distance one. Returns the result
// when it is a lattice polygon whose interior lattice points are exactly the
// lattice points of sigma.
std::optional<LatticePolygon> move_out(const LatticePolygon& sigma);

// Lattice points of the region {x : <n_e, x> <= c_e + 1} for the edges of q
// (the region move_out would produce, integral or not).
std::vector<LatticePoint> moved_out_lattice_points(const LatticePolygon& q);

// All two-dimensional lattice polygons with exactly n lattice points, up to
// equivalence, as canonical forms sorted by vertex list.
std::vector<LatticePolygon> enumerate_polygons_by_point_count(int n);

std::vector<LatticePolygon> enumerate_maximal_nonhyperelliptic(int g);

LatticePolygon scale_double(const LatticePolygon& p);

// Upper bound on the boundary point count of a nonhyperelliptic polygon of
// genus g with lattice width lw (pass lw <= 3 for the generic bound).
std::int64_t bound_r(std::int64_t g, std::int64_t lw);

std::string to_json(const LatticePolygon& p);
LatticePolygon polygon_from_json(const std::string& text);

}  // namespace troplanar
