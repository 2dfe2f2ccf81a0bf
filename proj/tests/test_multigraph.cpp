#include <doctest.h>

#include <algorithm>
#include <numeric>
#include <random>
#include <set>

#include "troplanar/multigraph.hpp"

using namespace troplanar;

namespace {

// Brute-force invariant: least sorted edge list over all relabelings.
std::vector<std::pair<int, int>> permutation_oracle(const Multigraph& g) {
  std::vector<int> perm(g.vertex_count());
  std::iota(perm.begin(), perm.end(), 0);
  std::vector<std::pair<int, int>> best;
  bool first = true;
  do {
    auto e = g.relabeled(perm).edges();
    std::sort(e.begin(), e.end());
    if (first || e < best) best = e;
    first = false;
  } while (std::next_permutation(perm.begin(), perm.end()));
  return best;
}

std::vector<int> random_perm(int n, std::mt19937& rng) {
  std::vector<int> p(n);
  std::iota(p.begin(), p.end(), 0);
  std::shuffle(p.begin(), p.end(), rng);
  return p;
}

Multigraph shuffled(const Multigraph& g, std::mt19937& rng) {
  auto h = g.relabeled(random_perm(g.vertex_count(), rng));
  auto e = h.edges();
  std::shuffle(e.begin(), e.end(), rng);
  return Multigraph(h.vertex_count(), e);
}

}  // namespace

TEST_CASE("text round trip and basic counts") {
  auto g = Multigraph::from_text("3 4 : 0-1 1-2 2-0 2-2");
  CHECK(g.vertex_count() == 3);
  CHECK(g.edge_count() == 4);
  CHECK(g.degree(2) == 4);
  CHECK(g.genus() == 2);
  CHECK(Multigraph::from_text(g.to_text()) == g);
  CHECK_THROWS(Multigraph::from_text("2 1 : 0-5"));
  CHECK_THROWS(Multigraph::from_text("2 2 : 0-1"));
  CHECK_THROWS(Multigraph::from_text("2 1 0-1"));
}

TEST_CASE("certificates separate exactly the isomorphism classes") {
  for (int g = 2; g <= 5; ++g) {
    auto certs = enumerate_trivalent(g);
    std::set<std::vector<std::pair<int, int>>> oracle;
    for (const auto& c : certs) {
      auto gr = graph_from_certificate(c);
      CHECK(gr.is_trivalent());
      CHECK(gr.connected());
      CHECK(gr.genus() == g);
      CHECK(certificate(gr) == c);
      oracle.insert(permutation_oracle(gr));
    }
    CHECK(oracle.size() == certs.size());
  }
}

TEST_CASE("certificates are invariant under relabeling") {
  std::mt19937 rng(11);
  for (const auto& c : enumerate_trivalent(6)) {
    auto g = graph_from_certificate(c);
    for (int k = 0; k < 3; ++k) CHECK(certificate(shuffled(g, rng)) == c);
  }
  CHECK(certificate(theta_graph()) != certificate(dumbbell_graph()));
}

TEST_CASE("trivalent graph counts") {
  const std::size_t expected[] = {2, 5, 17, 71, 388};
  for (int g = 2; g <= 6; ++g) CHECK(enumerate_trivalent(g).size() == expected[g - 2]);
}

TEST_CASE("canonical labeling realizes the certificate") {
  std::mt19937 rng(3);
  for (const auto& c : enumerate_trivalent(4)) {
    auto g = shuffled(graph_from_certificate(c), rng);
    auto perm = canonical_labeling(g, std::vector<int>(g.vertex_count(), 0));
    auto e1 = g.relabeled(perm).edges();
    auto e2 = graph_from_certificate(c).edges();
    std::sort(e1.begin(), e1.end());
    std::sort(e2.begin(), e2.end());
    CHECK(e1 == e2);
  }
}

TEST_CASE("marked certificates see the marks") {
  MarkedGraph a{theta_graph(), 0, 1};
  MarkedGraph b{theta_graph(), 1, 0};
  MarkedGraph c{theta_graph(), 0, 0};
  CHECK(marked_certificate(a) == marked_certificate(b));
  CHECK(marked_certificate(a) != marked_certificate(c));
  MarkedGraph d{dumbbell_graph(), 0, 1};
  MarkedGraph e{dumbbell_graph(), 0, 0};
  CHECK(marked_certificate(d) != marked_certificate(e));
  CHECK(marked_certificate(a) != certificate(theta_graph()));
  std::mt19937 rng(5);
  auto g = graph_from_certificate(enumerate_trivalent(4)[7]);
  for (int k = 0; k < 20; ++k) {
    auto p = random_perm(g.vertex_count(), rng);
    MarkedGraph m{g, 0, 3};
    MarkedGraph m2{g.relabeled(p), p[0], p[3]};
    CHECK(marked_certificate(m) == marked_certificate(m2));
  }
}

TEST_CASE("chains") {
  CHECK(certificate(chain("0")) == certificate(theta_graph()));
  CHECK(certificate(chain("1")) == certificate(dumbbell_graph()));
  CHECK(certificate(chain("01")) == certificate(chain("10")));
  CHECK(certificate(chain("011")) == certificate(chain("110")));
  for (int g = 2; g <= 12; ++g) {
    auto strings = chain_strings(g);
    CHECK(strings.size() == chain_count_formula(g));
    if (g <= 8) {
      std::set<Certificate> certs;
      for (const auto& s : strings) {
        auto c = chain(s);
        CHECK(c.is_trivalent());
        CHECK(c.genus() == g);
        certs.insert(certificate(c));
      }
      CHECK(certs.size() == strings.size());
    }
  }
  CHECK_THROWS(chain("02"));
}

TEST_CASE("bridges and two-edge-connected components") {
  CHECK(bridges_and_components(theta_graph()).bridges.empty());
  auto d = bridges_and_components(dumbbell_graph());
  CHECK(d.bridges.size() == 1);
  CHECK(d.component_count == 2);
  CHECK(bridges_and_components(chain("0101")).bridges.size() == 2);
  CHECK(bridges_and_components(chain("111")).bridges.size() == 3);
  CHECK(bridges_and_components(loop_graph()).bridges.empty());
}

TEST_CASE("smoothing") {
  // A path with a pendant triangle smooths to a single loop.
  Multigraph g(5, {{0, 1}, {1, 2}, {2, 3}, {3, 1}, {3, 4}});
  auto s = prune_and_smooth(g);
  CHECK(s.vertex_count() == 1);
  CHECK(s.edge_count() == 1);
  Multigraph cyc(4, {{0, 1}, {1, 2}, {2, 3}, {3, 0}});
  CHECK(certificate(prune_and_smooth(cyc)) == certificate(loop_graph()));
  Multigraph sub(4, {{0, 2}, {2, 1}, {0, 3}, {3, 1}, {0, 1}});
  CHECK(certificate(prune_and_smooth(sub)) == certificate(theta_graph()));
  auto traced = prune_and_smooth_traced(sub);
  CHECK(traced.graph.vertex_count() == 2);
  std::size_t interior = 0;
  for (const auto& path : traced.edge_paths) interior += path.size();
  CHECK(interior >= 2);
}

TEST_CASE("dot output is deterministic") {
  auto text = to_dot(theta_graph(), "T");
  CHECK(text == to_dot(theta_graph(), "T"));
  CHECK(text.rfind("graph T {", 0) == 0);
  CHECK(std::count(text.begin(), text.end(), '-') == 6);
}
