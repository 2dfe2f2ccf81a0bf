#pragma once

#include <optional>
#include <vector>

#include <gmpxx.h>

#include "troplanar/lattice.hpp"
#include "troplanar/triangulation.hpp"

namespace troplanar {

struct HeightFunction {
  std::vector<LatticePoint> points;  // sorted
  std::vector<mpq_class> heights;

  const mpq_class& at(LatticePoint p) const;
};

// Cells of the regular subdivision induced by lifting the lattice points of p,
// each returned as the convex hull of the points on its lower face.
std::vector<LatticePolygon> induce_subdivision(const LatticePolygon& p, const HeightFunction& h);

struct RegularityResult {
  bool regular = false;
  std::optional<HeightFunction> witness;
  bool used_exact_solver = false;
};

// Local convexity across every interior edge, decided by maximizing the
// smallest fold subject to 0 <= h <= 1. Floating-point answers are only
// accepted after exact verification (an integral witness or an exact Farkas
// combination); otherwise the exact rational simplex decides.
RegularityResult is_regular(const Triangulation& t);

struct RegularityCounters {
  std::size_t calls = 0;
  std::size_t exact_fallbacks = 0;
};
RegularityCounters regularity_counters();

// All labeled unimodular triangulations of p, optionally only the regular ones.
std::vector<Triangulation> enumerate_unimodular_triangulations(const LatticePolygon& p, bool regular_only);

// Triangles of t as lattice polygons in the same form induce_subdivision uses.
std::vector<LatticePolygon> cells_of(const Triangulation& t);

}  // namespace troplanar
