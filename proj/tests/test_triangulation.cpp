#include <doctest.h>

#include <algorithm>
#include <set>

#include "troplanar/lattice.hpp"
#include "troplanar/triangulation.hpp"

using namespace troplanar;

namespace {

std::size_t count_labeled(const LatticePolygon& p) {
  std::size_t n = 0;
  for_each_triangulation_orbit(make_configuration(p), SymmetryGroup::Trivial, [&](const Triangulation&, const OrbitInfo&) {
    ++n;
    return true;
  });
  return n;
}

std::uint64_t binomial(int n, int k) {
  std::uint64_t r = 1;
  for (int i = 1; i <= k; ++i) r = r * (n - k + i) / i;
  return r;
}

}  // namespace

TEST_CASE("unit square has two triangulations") {
  LatticePolygon sq({{0, 0}, {1, 0}, {1, 1}, {0, 1}});
  CHECK(count_labeled(sq) == 2);
  auto cfg = make_configuration(sq);
  CHECK(placement_oracle(*cfg).size() == 2);
}

TEST_CASE("two-row trapezoids match the binomial count") {
  for (int a = 1; a <= 9; ++a)
    for (int b = 1; a + b <= 10; ++b) {
      LatticePolygon p({{0, 0}, {a, 0}, {b, 1}, {0, 1}});
      CHECK(count_labeled(p) == binomial(a + b, a));
    }
}

TEST_CASE("grid counts") {
  CHECK(count_labeled(LatticePolygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}})) == 64);
  CHECK(count_labeled(LatticePolygon({{0, 0}, {3, 0}, {3, 3}, {0, 3}})) == 46456);
}

TEST_CASE("flip graph traversal agrees with the placement oracle up to twelve points") {
  for (int n = 3; n <= 12; ++n) {
    for (const auto& p : enumerate_polygons_by_point_count(n)) {
      auto cfg = make_configuration(p);
      std::set<EdgeBits> bfs;
      for_each_triangulation_orbit(cfg, SymmetryGroup::Trivial, [&](const Triangulation& t, const OrbitInfo&) {
        bfs.insert(t.bits());
        return true;
      });
      auto oracle = placement_oracle(*cfg);
      std::set<EdgeBits> os(oracle.begin(), oracle.end());
      CHECK(oracle.size() == os.size());
      CHECK(bfs == os);
    }
  }
}

TEST_CASE("orbit sizes sum to the labeled count") {
  for (const auto& p : {LatticePolygon({{0, 0}, {4, 0}, {0, 4}}), LatticePolygon({{0, 0}, {3, 0}, {3, 2}, {0, 2}}),
                        LatticePolygon({{0, 0}, {2, 0}, {2, 1}, {1, 2}, {0, 2}})}) {
    std::size_t labeled = count_labeled(p);
    for (auto group : {SymmetryGroup::Rotations, SymmetryGroup::Full}) {
      std::size_t sum = 0;
      auto stats = for_each_triangulation_orbit(make_configuration(p), group, [&](const Triangulation&, const OrbitInfo& o) {
        sum += o.orbit_size;
        return true;
      });
      CHECK(sum == labeled);
      CHECK(stats.labeled == labeled);
    }
  }
  CHECK(count_labeled(LatticePolygon({{0, 0}, {4, 0}, {0, 4}})) == 7424);
}

TEST_CASE("canonical representatives are invariant under the group") {
  auto cfg = make_configuration(LatticePolygon({{0, 0}, {3, 0}, {0, 3}}));
  const auto& perms = cfg->edge_permutations(SymmetryGroup::Full);
  CHECK(perms.size() == 6);
  for_each_triangulation_orbit(cfg, SymmetryGroup::Trivial, [&](const Triangulation& t, const OrbitInfo&) {
    auto c = canonical_bits(*cfg, SymmetryGroup::Full, t.bits());
    for (const auto& perm : perms) CHECK(canonical_bits(*cfg, SymmetryGroup::Full, t.transformed_by(perm).bits()) == c);
    return true;
  });
}

TEST_CASE("bistellar flips are involutions and respect convexity") {
  auto cfg = make_configuration(LatticePolygon({{0, 0}, {3, 0}, {0, 3}}));
  auto start = greedy_triangulation(cfg);
  start.validate();
  std::size_t flipped = 0, refused = 0;
  for_each_triangulation_orbit(cfg, SymmetryGroup::Trivial, [&](const Triangulation& t, const OrbitInfo&) {
    for (int e : t.edge_ids()) {
      auto f = bistellar_flip(t, e);
      if (cfg->is_boundary_edge(e)) {
        CHECK_FALSE(f.has_value());
        continue;
      }
      if (!f) {
        ++refused;
        continue;
      }
      ++flipped;
      f->validate();
      CHECK_FALSE(f->has_edge(e));
      auto [a, b] = cfg->edge(e);
      auto [c, d] = std::pair{t.apex(e, 0), t.apex(e, 1)};
      auto back = bistellar_flip(*f, cfg->edge_id(std::min(c, d), std::max(c, d)));
      REQUIRE(back.has_value());
      CHECK(*back == t);
      CHECK(back->has_edge(cfg->edge_id(a, b)));
    }
    return true;
  });
  CHECK(flipped > 0);
  CHECK(refused > 0);
}

TEST_CASE("triangulation identifiers and json round trip") {
  auto cfg = make_configuration(LatticePolygon({{0, 0}, {2, 0}, {2, 2}, {0, 2}}));
  for_each_triangulation_orbit(cfg, SymmetryGroup::Trivial, [&](const Triangulation& t, const OrbitInfo&) {
    CHECK(Triangulation::from_id(cfg, t.id()) == t);
    auto back = triangulation_from_json(to_json(t));
    CHECK(back.lattice_triangles() == t.lattice_triangles());
    auto tris = t.lattice_triangles();
    CHECK(Triangulation::from_triangles(cfg, tris) == t);
    CHECK(tris.size() == 8);
    return true;
  });
}

TEST_CASE("splits") {
  LatticePolygon p({{0, 0}, {6, 0}, {0, 3}});
  REQUIRE(p.genus() == 4);
  auto cfg = make_configuration(p);
  bool found = false;
  for_each_triangulation_orbit(cfg, SymmetryGroup::Full, [&](const Triangulation& t, const OrbitInfo&) {
    for (const auto& s : splits(t)) {
      CHECK(p.locate(s.a) == 0);
      CHECK(p.locate(s.b) == 0);
      CHECK(s.left.area2() + s.right.area2() == p.area2());
      CHECK(s.left.genus() + s.right.genus() == p.genus());
      if (s.nontrivial) found = true;
    }
    return !found;
  });
  CHECK(found);
}
