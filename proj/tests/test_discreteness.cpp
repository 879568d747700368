#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "builders.hpp"
#include "doctest.h"
#include "lgr/discreteness.hpp"
#include "lgr/util.hpp"

using namespace lgr;

namespace {

// Independent recount of N3(s,S): triangles on the identity-to-s edge of the
// Cayley carrier. Common neighbors sit at distance <= 1, so radius 2 is exact.
int triangle_oracle(const GroupOracle& G, const GenSet& S, const Elem& s) {
  CayleyBall b = cayley_ball(G, S, 2, 5'000'000);
  int vs = -1;
  for (int v = 0; v < b.ball.carrier.n; ++v)
    if (G.eq(b.element_of[v], G.canon(s))) vs = v;
  REQUIRE(vs >= 0);
  return edge_triangle_count(b.ball.carrier, b.ball.root, vs);
}

std::set<Elem> shorts_of(const GroupOracle& G, const GenSet& S) {
  std::set<Elem> out{G.canon(G.identity())};
  for (const Elem& s : S.elems) out.insert(s);
  for (const Elem& s : S.elems)
    for (const Elem& t : S.elems) out.insert(G.canon(G.mul(s, t)));
  return out;
}

// Checks the accounting of one accepted augmentation against the oracle: the
// per-generator increment equals |delta ∩ s·delta|, delta is symmetric, avoids
// squares of the old set, and sits outside the 2-ball of the word metric.
void check_augmentation(const GroupOracle& G, const GenSet& S, const AugmentResult& res) {
  REQUIRE(res.ok);
  std::set<Elem> delta(res.step.delta.begin(), res.step.delta.end());
  for (const Elem& d : delta) CHECK(delta.count(G.canon(G.inv(d))) == 1);
  std::set<Elem> shorts = shorts_of(G, S);
  for (const Elem& d : delta) {
    CHECK(shorts.count(d) == 0);
    for (const Elem& s : S.elems) CHECK_FALSE(G.eq(d, G.canon(G.mul(s, s))));
  }
  for (const Elem& s : S.elems) {
    int diff = triangle_oracle(G, res.after, s) - triangle_oracle(G, S, s);
    std::set<Elem> shifted;
    for (const Elem& d : delta) shifted.insert(G.canon(G.mul(s, d)));
    int overlap = 0;
    for (const Elem& d : delta)
      if (shifted.count(d)) ++overlap;
    CHECK(diff == overlap);
  }
  for (const Elem& d : delta) CHECK(triangle_oracle(G, res.after, d) <= 6);
}

}  // namespace

TEST_CASE("triangle profile matches the edge triangle oracle") {
  auto Z = GroupOracle::zd(1);
  auto S1 = make_genset(Z, {{1}, {-1}});
  auto p1 = n3_profile(Z, S1);
  CHECK(p1.of(Z, {1}) == 0);
  CHECK(p1.of(Z, {-1}) == 0);
  CHECK(p1.of(Z, {5}) == 0);  // outside the set counts zero by convention

  auto S2 = make_genset(Z, {{1}, {-1}, {2}, {-2}});
  auto p2 = n3_profile(Z, S2);
  CHECK(p2.of(Z, {1}) == 2);
  CHECK(p2.of(Z, {-1}) == 2);
  CHECK(p2.of(Z, {2}) == 1);
  CHECK(p2.of(Z, {-2}) == 1);
  for (const Elem& s : S2.elems) CHECK(p2.of(Z, s) == triangle_oracle(Z, S2, s));

  auto C5 = GroupOracle::cyclic(5);
  auto SC = make_genset(C5, {{1}, {2}, {3}, {4}});
  auto pc = n3_profile(C5, SC);
  for (int c : pc.counts) CHECK(c == 3);  // the carrier is K5

  std::mt19937 rng(20817);
  for (int trial = 0; trial < 10; ++trial) {
    long long m = 5 + (long long)(rng() % 30);
    auto Cm = GroupOracle::cyclic(m);
    std::set<Elem> elems;
    int picks = 1 + (int)(rng() % 3);
    for (int i = 0; i < picks; ++i) {
      long long v = 1 + (long long)(rng() % (m - 1));
      elems.insert({v});
      elems.insert({m - v});
    }
    auto S = make_genset(Cm, std::vector<Elem>(elems.begin(), elems.end()));
    auto prof = n3_profile(Cm, S);
    for (size_t i = 0; i < S.elems.size(); ++i) {
      CHECK(prof.counts[i] == triangle_oracle(Cm, S, S.elems[i]));
      CHECK(prof.counts[i] == prof.of(Cm, Cm.canon(Cm.inv(S.elems[i]))));
    }
  }
}

TEST_CASE("augmentation picks the smallest admissible exponent") {
  auto Z = GroupOracle::zd(1);
  auto S = make_genset(Z, {{1}, {-1}});
  auto res = augment_genset(Z, S, {1}, {1}, 64);
  REQUIRE(res.ok);
  CHECK(res.step.n == 4);
  CHECK(res.step.delta == std::vector<Elem>{{-4}, {-3}, {3}, {4}});
  CHECK(res.achieved == std::pair<int, int>{2, 0});
  CHECK(res.after.elems == std::vector<Elem>{{-4}, {-3}, {-1}, {1}, {3}, {4}});
  REQUIRE(res.rejections.size() == 3);
  for (int i = 0; i < 3; ++i) {
    CHECK(res.rejections[i].first == i + 1);
    CHECK(res.rejections[i].second.find("word length below 3") != std::string::npos);
  }
  check_augmentation(Z, S, res);

  auto tight = augment_genset(Z, S, {1}, {1}, 3);
  CHECK_FALSE(tight.ok);
  CHECK(tight.reason == "no admissible exponent within the search bound");
  CHECK(tight.rejections.size() == 3);

  CHECK_THROWS_AS(augment_genset(Z, S, {2}, {1}, 8), std::invalid_argument);
  CHECK_THROWS_WITH_AS(augment_genset(Z, S, {1}, {0}, 8),
                       doctest::Contains("no infinite-order element"), std::invalid_argument);
  auto C5 = GroupOracle::cyclic(5);
  auto SC = make_genset(C5, {{1}, {4}});
  CHECK_THROWS_AS(augment_genset(C5, SC, {1}, {1}, 8), std::invalid_argument);
}

TEST_CASE("increments land in the order table and equal the overlap count") {
  // Infinite order: handled above with pair (2,0). Order 2: the involution
  // direction of Z x Z/2 picks up both halves of delta at once.
  auto G2 = GroupOracle::product(GroupOracle::zd(1), GroupOracle::cyclic(2));
  auto S2 = make_genset(G2, {{1, 0}, {-1, 0}, {0, 1}});
  auto r2 = augment_genset(G2, S2, {0, 1}, {1, 0}, 64);
  REQUIRE(r2.ok);
  CHECK(r2.step.n == 3);
  CHECK(r2.achieved == std::pair<int, int>{4, 0});
  check_augmentation(G2, S2, r2);

  auto G5 = GroupOracle::product(GroupOracle::zd(1), GroupOracle::cyclic(5));
  auto S5 = make_genset(G5, {{1, 0}, {-1, 0}, {0, 1}, {0, 4}});
  auto r5 = augment_genset(G5, S5, {0, 1}, {1, 0}, 64);
  REQUIRE(r5.ok);
  CHECK(r5.step.n == 3);
  CHECK(r5.achieved == std::pair<int, int>{2, 0});
  check_augmentation(G5, S5, r5);
}

TEST_CASE("discrete genset builder separates the seed classes over Z") {
  auto Z = GroupOracle::zd(1);
  auto built = build_discrete_genset(Z, make_genset(Z, {{1}, {-1}}), {1});
  REQUIRE(built.ok);
  CHECK(built.genset.elems ==
        std::vector<Elem>{{-22}, {-21}, {-16}, {-15}, {-10}, {-9}, {-4}, {-3}, {-1},
                          {1},   {3},   {4},   {9},   {10},  {15}, {16}, {21}, {22}});
  REQUIRE(built.steps.size() == 4);
  std::vector<int> ns;
  for (const auto& st : built.steps) ns.push_back(st.n);
  CHECK(ns == std::vector<int>{3, 9, 15, 21});  // s0 = -1, so delta is {±n, ±(n+1)}
  CHECK(built.added.size() == 16);
  CHECK(built.certificate.of(Z, {1}) == 8);
  CHECK(built.certificate.of(Z, {-1}) == 8);
  for (const Elem& a : built.added) CHECK(built.certificate.of(Z, a) == 2);
  for (size_t i = 0; i < built.genset.elems.size(); ++i)
    CHECK(built.certificate.counts[i] == triangle_oracle(Z, built.genset, built.genset.elems[i]));
}

TEST_CASE("discrete genset builder separates two classes over the plane") {
  auto Z2 = GroupOracle::zd(2);
  auto seed = make_genset(Z2, {{1, 0}, {-1, 0}, {0, 1}, {0, -1}});
  auto built = build_discrete_genset(Z2, seed, {1, 0});
  REQUIRE(built.ok);
  CHECK(built.genset.elems.size() == 40);
  CHECK(built.added.size() == 36);
  std::vector<int> ns;
  for (const auto& st : built.steps) ns.push_back(st.n);
  CHECK(ns == std::vector<int>{3, 9, 15, 21, 27, 29, 34, 40, 46});
  int c1 = built.certificate.of(Z2, {1, 0});
  int c2 = built.certificate.of(Z2, {0, 1});
  CHECK(c1 == 8);
  CHECK(c2 == 10);
  CHECK(built.certificate.of(Z2, {-1, 0}) == c1);
  CHECK(built.certificate.of(Z2, {0, -1}) == c2);
  for (const Elem& a : built.added) CHECK(built.certificate.of(Z2, a) <= 6);
  // Separation: a count collision with a seed generator forces the same class.
  for (const Elem& s : seed.elems)
    for (size_t i = 0; i < built.genset.elems.size(); ++i) {
      bool same_class = Z2.eq(built.genset.elems[i], s) ||
                        Z2.eq(built.genset.elems[i], Z2.canon(Z2.inv(s)));
      CHECK(same_class == (built.certificate.counts[i] == built.certificate.of(Z2, s)));
    }

  auto again = build_discrete_genset(Z2, seed, {1, 0});
  CHECK(again.genset.elems == built.genset.elems);
  CHECK(again.certificate.counts == built.certificate.counts);

  auto V8 = GroupOracle::product(GroupOracle::product(GroupOracle::cyclic(2), GroupOracle::cyclic(2)),
                                 GroupOracle::cyclic(2));
  auto torsion_seed = make_genset(V8, {{1, 0, 0}, {0, 1, 0}, {1, 1, 1}});
  CHECK_THROWS_WITH_AS(build_discrete_genset(V8, torsion_seed, {1, 1, 1}),
                       doctest::Contains("no infinite-order element"), std::invalid_argument);

  GenSet lopsided;  // bypasses make_genset on purpose
  lopsided.elems = {{1}};
  CHECK_THROWS_WITH_AS(build_discrete_genset(GroupOracle::zd(1), lopsided, {1}),
                       doctest::Contains("not symmetric"), std::invalid_argument);
}

TEST_CASE("separated counts force label-preserving stabilizers") {
  auto Z = GroupOracle::zd(1);
  auto built = build_discrete_genset(Z, make_genset(Z, {{1}, {-1}}), {1});
  REQUIRE(built.ok);
  auto mb = marked_cayley_ball(Z, built.genset, 3, 50'000'000);
  CHECK(mb.ball.carrier.n == 121);
  for (int v = 0; v < mb.ball.carrier.n; ++v) {
    if (mb.ball.root_dist[v] > 1) continue;
    auto labeled = pointwise_stabilizer_order(mb.ball.carrier, {v}, true);
    auto unlabeled = pointwise_stabilizer_order(mb.ball.carrier, {v}, false);
    CHECK(labeled == unlabeled);
    CHECK(labeled == (v == mb.ball.root ? 2u : 1u));  // root keeps the flip
  }
}

TEST_CASE("padded genset wraps a finite group by coprime cyclic fibers") {
  auto C5 = GroupOracle::cyclic(5);
  auto S = make_genset(C5, {{1}, {2}, {3}, {4}});
  auto padded = build_padded_genset(C5, S, 200'000'000);
  CHECK(padded.clique_number == 5);  // the base carrier is K5
  CHECK(padded.primes == std::vector<long long>{7, 11});
  REQUIRE(padded.classes.size() == 2);
  CHECK(padded.classes[0] == std::vector<Elem>{{1}, {4}});
  CHECK(padded.classes[1] == std::vector<Elem>{{2}, {3}});
  CHECK(padded.fiber_size == 77);
  CHECK(padded.genset.elems.size() == 112);
  CHECK(padded.graph.graph.n == 385);
  for (int v = 0; v < padded.graph.graph.n; ++v)
    CHECK(padded.graph.graph.adj[v].size() == 112);
  CHECK(padded.fibers_are_cliques);
  CHECK(padded.cross_clique_bound == 55);
  CHECK(padded.cross_clique_bound < padded.fiber_size);
  CHECK(padded.fiber_edge_counts == std::vector<long long>{539, 847});  // p_i * |F|

  // Exhaustive cross-check: the only 77-cliques are the five fibers.
  auto mc = max_clique(padded.graph.graph, 400'000'000);
  CHECK(mc.exact);
  CHECK(mc.best == 77);
  auto cliques = cliques_of_size(padded.graph.graph, 77, 400'000'000);
  REQUIRE(cliques.size() == 5);
  std::map<Elem, std::vector<int>> fibers;
  for (int v = 0; v < padded.graph.graph.n; ++v)
    fibers[{padded.graph.elements[v][0]}].push_back(v);
  std::set<std::vector<int>> fiber_sets;
  for (auto& [g, verts] : fibers) {
    std::sort(verts.begin(), verts.end());
    fiber_sets.insert(verts);
  }
  for (const auto& cl : cliques) CHECK(fiber_sets.count(cl) == 1);

  auto C4 = GroupOracle::cyclic(4);
  CHECK_THROWS_WITH_AS(build_padded_genset(C4, make_genset(C4, {{1}, {2}, {3}})),
                       doctest::Contains("companion property fails"), std::invalid_argument);
  CHECK_THROWS_WITH_AS(build_padded_genset(C5, make_genset(C5, {{1}, {4}})),
                       doctest::Contains("at least 3 generators"), std::invalid_argument);
  CHECK_THROWS_AS(build_padded_genset(C5, S, 10), budget_error);
}

TEST_CASE("discreteness certificate finds the scale or reports an obstruction") {
  auto Z = GroupOracle::zd(1);
  auto built = build_discrete_genset(Z, make_genset(Z, {{1}, {-1}}), {1});
  auto ball = cayley_ball(Z, built.genset, 4, 50'000'000);
  CHECK(ball.ball.carrier.n == 171);
  auto cert = discreteness_certificate(ball, 2);
  CHECK(cert.found);
  CHECK(cert.radius == 1);
  CHECK(cert.failing_vertex == -1);
  CHECK_THROWS_WITH_AS(discreteness_certificate(ball, 5),
                       doctest::Contains("probe radius exceeds the ball radius"),
                       std::invalid_argument);

  // Biinvariant padding around a finite subgroup: swapping any coset of the
  // Z/2 factor outside the probed ball is an automorphism, so no radius works.
  auto G = GroupOracle::product(GroupOracle::cyclic(2), GroupOracle::cyclic(12));
  auto fsf = make_genset(G, {{1, 0}, {0, 1}, {0, 11}, {1, 1}, {1, 11}});
  auto cg = cayley_graph(G, fsf);
  auto blocked = discreteness_certificate(cg.graph, 3);
  CHECK_FALSE(blocked.found);
  CHECK(blocked.radius == -1);
  CHECK(blocked.stabilizer_order == 32);  // 2^5: five cosets clear of B(v,3)

  SimpleGraph tree;  // trivalent tree ball of depth 3
  tree.n = 22;
  tree.adj.assign(22, {});
  int next = 1;
  std::vector<int> frontier = {0};
  for (int depth = 0; depth < 3; ++depth) {
    std::vector<int> grown;
    for (int u : frontier)
      for (int k = 0; k < (depth == 0 ? 3 : 2); ++k) {
        tree.adj[u].push_back(next);
        tree.adj[next].push_back(u);
        tree.edges.push_back({u, next});
        grown.push_back(next++);
      }
    frontier = grown;
  }
  auto floppy = discreteness_certificate(tree, 2);
  CHECK_FALSE(floppy.found);
  CHECK(floppy.stabilizer_order == 64);  // six leaf pairs swap freely

  auto grid = discreteness_certificate(torus_graph(6), 2);
  CHECK(grid.found);
  CHECK(grid.radius == 1);
}
