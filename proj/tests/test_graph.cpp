#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <doctest.h>

#include <set>

#include "builders.hpp"
#include "lgr/graph.hpp"

using namespace lgr;

TEST_CASE("ball of a 6-cycle at radius 2 is a 5-path") {
  auto c6 = cycle_graph(6);
  for (int v = 0; v < 6; ++v) {
    auto b = ball(c6, v, 2);
    CHECK(b.carrier.n == 5);
    CHECK(b.carrier.edge_count() == 4);
    CHECK(diameter(b.carrier) == 4);
    CHECK(b.root_dist[b.root] == 0);
  }
  auto b0 = ball(c6, 0, 2);
  CHECK(b0.orig == std::vector<int>{0, 1, 2, 4, 5});
}

TEST_CASE("ball of the lattice chunk at radius 1 is a 4-star") {
  int center = -1;
  auto chunk = diamond_chunk(3, &center);
  CHECK(chunk.n == 25);
  auto b = ball(chunk, center, 1);
  CHECK(b.carrier.n == 5);
  CHECK(b.carrier.edge_count() == 4);
  // Distinct neighbors of the root meet only through the root inside the ball.
  for (int u = 0; u < 5; ++u)
    for (int v = u + 1; v < 5; ++v)
      if (u != b.root && v != b.root) CHECK(bfs_dist(b.carrier, u)[v] == 2);
}

TEST_CASE("ball of a complete graph at radius 1 is the whole graph") {
  auto k4 = complete_graph(4);
  auto b = ball(k4, 2, 1);
  CHECK(b.carrier.n == 4);
  CHECK(b.carrier.edge_count() == 6);
  CHECK(diameter(b.carrier) == 1);
}

TEST_CASE("ball membership matches distance and intrinsic dominates ambient") {
  auto t = torus_graph(8);
  for (int v : {0, 9, 27}) {
    for (int R : {0, 1, 2, 3}) {
      auto b = ball(t, v, R);
      auto d = bfs_dist(t, v);
      std::set<int> expect;
      for (int u = 0; u < t.n; ++u)
        if (d[u] <= R) expect.insert(u);
      CHECK(std::set<int>(b.orig.begin(), b.orig.end()) == expect);
      for (int i = 0; i < b.carrier.n; ++i) {
        CHECK(b.root_dist[i] >= d[b.orig[i]]);
        CHECK(b.root_dist[i] <= R);  // root geodesics stay inside the ball
      }
    }
  }
}

TEST_CASE("rooted ball isometries: cycles and small mismatches") {
  auto c6 = cycle_graph(6);
  auto c4 = cycle_graph(4);
  auto b60 = ball(c6, 0, 2), b63 = ball(c6, 3, 2);
  auto m = ball_isometric(b60, b63);
  REQUIRE(m.has_value());
  CHECK(m->vertex_map[b60.root] == b63.root);
  for (int i = 0; i < b60.carrier.n; ++i) CHECK(b60.root_dist[i] == b63.root_dist[m->vertex_map[i]]);

  CHECK(ball_isometric(ball(c4, 0, 1), ball(c6, 0, 1)).has_value());
  CHECK_FALSE(ball_isometric(ball(c4, 0, 2), ball(c6, 0, 2)).has_value());
}

TEST_CASE("rooted ball isometry is reflexive, symmetric, and composable") {
  auto c6 = cycle_graph(6);
  auto b0 = ball(c6, 0, 2), b2 = ball(c6, 2, 2), b4 = ball(c6, 4, 2);
  auto self = ball_isometric(b0, b0);
  REQUIRE(self.has_value());
  auto f = ball_isometric(b0, b2), g = ball_isometric(b2, b4), h = ball_isometric(b0, b4);
  REQUIRE(f.has_value());
  REQUIRE(g.has_value());
  REQUIRE(h.has_value());
  // Inverse of f is an isometry b2 -> b0.
  std::vector<int> inv(b2.carrier.n);
  for (int i = 0; i < b0.carrier.n; ++i) inv[f->vertex_map[i]] = i;
  CHECK(inv[b2.root] == b0.root);
  for (auto [u, v] : b2.carrier.edges) CHECK(b0.carrier.has_edge(inv[u], inv[v]));
  // Composite g∘f is an isometry b0 -> b4.
  for (auto [u, v] : b0.carrier.edges)
    CHECK(b4.carrier.has_edge(g->vertex_map[f->vertex_map[u]], g->vertex_map[f->vertex_map[v]]));
}

TEST_CASE("local model matching on tori, triangles, and self") {
  int center = -1;
  auto chunk = diamond_chunk(3, &center);
  std::vector<BallView> model = {ball(chunk, center, 2)};
  auto rep = is_r_locally(torus_graph(8), model, 2);
  CHECK(rep.verdict);
  for (int m : rep.matched_model) CHECK(m == 0);

  // A triangle is not locally a line.
  auto zline = path_graph(7);
  std::vector<BallView> line_model = {ball(zline, 3, 1)};
  auto bad = is_r_locally(cycle_graph(3), line_model, 1);
  CHECK_FALSE(bad.verdict);
  CHECK(bad.failing_vertex == 0);

  // Every vertex-transitive graph is locally itself.
  for (auto& g : {cycle_graph(6), torus_graph(4), complete_graph(5), petersen_graph()}) {
    std::vector<BallView> self_model = {ball(g, 0, 1)};
    CHECK(is_r_locally(g, self_model, 1).verdict);
  }
}

TEST_CASE("local model matching is thread-count independent") {
  int center = -1;
  auto chunk = diamond_chunk(3, &center);
  std::vector<BallView> model = {ball(chunk, center, 2)};
  auto seq = is_r_locally(torus_graph(8), model, 2, 1);
  auto par = is_r_locally(torus_graph(8), model, 2, 4);
  CHECK(seq.verdict == par.verdict);
  CHECK(seq.matched_model == par.matched_model);
}

TEST_CASE("automorphism orders of standard graphs") {
  CHECK(automorphism_group(cycle_graph(4)).order == 8);
  CHECK(automorphism_group(cycle_graph(6)).order == 12);
  CHECK(automorphism_group(complete_graph(4)).order == 24);
  CHECK(automorphism_group(petersen_graph()).order == 120);
  auto t = automorphism_group(torus_graph(8));
  CHECK(t.order % 64 == 0);  // translations act freely
  CHECK(t.vertex_orbit_count == 1);
}

TEST_CASE("automorphism orders match brute-force enumeration on small graphs") {
  std::vector<SimpleGraph> gs = {path_graph(3),   path_graph(5),     cycle_graph(4),
                                 cycle_graph(6),  cycle_graph(8),    complete_graph(4),
                                 complete_graph(5), torus_graph(2)};
  // One irregular graph: a triangle with a pendant edge.
  SimpleGraph pend(4);
  pend.add_edge(0, 1);
  pend.add_edge(1, 2);
  pend.add_edge(2, 0);
  pend.add_edge(2, 3);
  gs.push_back(pend);
  for (auto& g : gs) {
    CHECK(automorphism_group(g).order == static_cast<unsigned long long>(brute_force_aut_order(g)));
  }
}

TEST_CASE("generator closure reproduces the automorphism order") {
  for (auto& g : {cycle_graph(6), complete_graph(4), petersen_graph()}) {
    auto a = automorphism_group(g);
    auto all = closure_of_permutations(a.generators, g.n, 2 * static_cast<long long>(a.order));
    CHECK(all.size() == a.order);
    for (auto& p : all)
      for (auto [u, v] : g.edges) CHECK(g.has_edge(p[u], p[v]));
  }
}

TEST_CASE("label-respecting automorphisms of the marked complete graph on 7 vertices") {
  auto g = marked_k7();
  auto a = automorphism_group(g, true);
  CHECK(a.order == static_cast<unsigned long long>(brute_force_aut_order(g, true)));
  CHECK(a.order == 14);
  CHECK(pointwise_stabilizer_order(g, {0}, true) == 2);
  // Ignoring labels the graph is complete, so the full symmetric group acts.
  CHECK(automorphism_group(g, false).order == 5040);
}

TEST_CASE("pointwise ball stabilizers") {
  CHECK(local_stabilizer_probe(complete_graph(4), 0, 0) == 6);
  CHECK(local_stabilizer_probe(cycle_graph(6), 0, 1) == 1);
  auto t = torus_graph(8);
  CHECK(local_stabilizer_probe(t, 0, 0) > 1);
  for (int v : {0, 19}) CHECK(local_stabilizer_probe(t, v, 1) == 1);
}

TEST_CASE("triangle counts per edge") {
  auto c6 = cycle_graph(6);
  for (auto [u, v] : c6.edges) CHECK(edge_triangle_count(c6, u, v) == 0);
  auto k4 = complete_graph(4);
  for (auto [u, v] : k4.edges) CHECK(edge_triangle_count(k4, u, v) == 2);
  auto k5 = complete_graph(5);  // Cayley graph of Z/5 with all four nonzero steps
  for (auto [u, v] : k5.edges) CHECK(edge_triangle_count(k5, u, v) == 3);
  CHECK_THROWS_AS(edge_triangle_count(c6, 0, 3), std::invalid_argument);
}

TEST_CASE("triangle counts are symmetric and automorphism-invariant") {
  for (auto& g : {cycle_graph(6), complete_graph(4), petersen_graph()}) {
    auto a = automorphism_group(g);
    for (auto [u, v] : g.edges) {
      CHECK(edge_triangle_count(g, u, v) == edge_triangle_count(g, v, u));
      for (auto& p : a.generators)
        CHECK(edge_triangle_count(g, p[u], p[v]) == edge_triangle_count(g, u, v));
    }
  }
}

TEST_CASE("maximum cliques") {
  CHECK(max_clique(cycle_graph(6)).best == 2);
  CHECK(max_clique(cycle_graph(6)).exact);
  CHECK(max_clique(complete_graph(5)).best == 5);
  CHECK(max_clique(petersen_graph()).best == 2);
  auto k4 = complete_graph(4);
  auto r = max_clique(k4);
  CHECK(r.witness == std::vector<int>{0, 1, 2, 3});
  // Exhausted budget yields a bracket, not a wrong answer.
  auto tight = max_clique(complete_graph(12), 3);
  CHECK_FALSE(tight.exact);
  CHECK(tight.best <= 12);
  CHECK(tight.upper >= 12);
}

TEST_CASE("clique enumeration by size") {
  CHECK(cliques_of_size(cycle_graph(6), 2).size() == 6);
  CHECK(cliques_of_size(complete_graph(5), 3).size() == 10);
  CHECK(cliques_of_size(petersen_graph(), 3).empty());
}

TEST_CASE("graph construction guards") {
  SimpleGraph g(3);
  CHECK_THROWS_AS(g.add_edge(0, 0), std::invalid_argument);
  CHECK_THROWS_AS(g.add_edge(0, 5), std::invalid_argument);
  g.add_edge(0, 1);
  g.add_edge(0, 1);  // duplicate ignored
  CHECK(g.edge_count() == 1);
  CHECK_THROWS_AS(ball(g, 0, -1), std::invalid_argument);
}

TEST_CASE("isomorphism search respects explicit target restrictions") {
  auto c4 = cycle_graph(4);
  IsoConstraints c;
  c.allowed.assign(4, {});
  for (int v = 0; v < 4; ++v) c.allowed[v] = {v};  // identity only
  BudgetCounter b(100000);
  int count = 0;
  enumerate_isomorphisms(c4, c4, c, b, [&](const std::vector<int>&) {
    ++count;
    return true;
  });
  CHECK(count == 1);
}
