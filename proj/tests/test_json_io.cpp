// Round-trip checks for the JSON exchange formats: parse(print(x)) must
// reproduce x, and print(parse(print(x))) must be byte-identical so the
// command-line tool's output feeds back into its own inputs.

#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <cstdio>
#include <fstream>

#include "doctest.h"
#include "lgr/extensions.hpp"
#include "lgr/fox.hpp"
#include "lgr/gluing.hpp"
#include "lgr/json_io.hpp"

using namespace lgr;
using json = nlohmann::json;

namespace {

SimpleGraph cycle(int n) {
  SimpleGraph g(n);
  for (int i = 0; i < n; ++i) g.add_edge(std::min(i, (i + 1) % n), std::max(i, (i + 1) % n));
  return g;
}

GenSet z12_full(const GroupOracle& h) {
  return make_genset(h, {{1}, {11}, {2}, {10}, {5}, {7}});
}

PresentationData f2xf2() {
  PresentationData p;
  p.generators = {"a", "b", "c", "d"};
  for (const char* w : {"acAC", "adAD", "bcBC", "bdBD"})
    p.relators.push_back(relator_from_word(w, p.generators));
  p.u = {1, 1, 1, 1};
  return p;
}

}  // namespace

TEST_CASE("graph JSON round-trips, labels included") {
  SimpleGraph g(5);
  g.add_labeled_edge(0, 1, 3);
  g.add_labeled_edge(1, 2, 3);
  g.add_labeled_edge(0, 4, 7);
  g.vertex_labels = {0, 1, 0, 1, 0};
  json j = graph_to_json(g);
  SimpleGraph back = graph_from_json(j);
  CHECK(back.n == g.n);
  CHECK(back.edges == g.edges);
  CHECK(back.edge_labels == g.edge_labels);
  CHECK(back.vertex_labels == g.vertex_labels);
  CHECK(graph_to_json(back).dump() == j.dump());

  // unlabeled graphs omit the optional fields entirely
  json plain = graph_to_json(cycle(4));
  CHECK(!plain.contains("edge_labels"));
  CHECK(!plain.contains("vertex_labels"));
  CHECK(graph_to_json(graph_from_json(plain)).dump() == plain.dump());
}

TEST_CASE("graph JSON rejects malformed input") {
  CHECK_THROWS_WITH_AS(graph_from_json(json::parse(R"({"edges":[]})")),
                       "missing integer field 'vertices'", std::invalid_argument);
  CHECK_THROWS_WITH_AS(graph_from_json(json::parse(R"({"vertices":-1,"edges":[]})")),
                       "vertex count must be nonnegative", std::invalid_argument);
  CHECK_THROWS_WITH_AS(graph_from_json(json::parse(R"({"vertices":3})")),
                       "missing edge list", std::invalid_argument);
  CHECK_THROWS_WITH_AS(graph_from_json(json::parse(R"({"vertices":3,"edges":[[1,1]]})")),
                       "loop edges are rejected", std::invalid_argument);
  CHECK_THROWS_WITH_AS(graph_from_json(json::parse(R"({"vertices":3,"edges":[[0,3]]})")),
                       "edge endpoint out of range", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      graph_from_json(json::parse(R"({"vertices":3,"edges":[[0,1],[1,0]]})")),
      "duplicate edges are rejected", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      graph_from_json(json::parse(R"({"vertices":3,"edges":[[0,1]],"edge_labels":[1,2]})")),
      "edge_labels must align with edges", std::invalid_argument);
  CHECK_THROWS_WITH_AS(
      graph_from_json(json::parse(R"({"vertices":3,"edges":[[0,1]],"vertex_labels":[1]})")),
      "vertex_labels must cover every vertex", std::invalid_argument);
}

TEST_CASE("group specs round-trip for every serializable kind") {
  std::vector<GroupOracle> groups;
  groups.push_back(GroupOracle::cyclic(8));
  groups.push_back(GroupOracle::zd(2));
  groups.push_back(GroupOracle::lattice_quotient(2, {{8, 0}, {0, 8}}));
  groups.push_back(GroupOracle::perm_group(3, {{1, 2, 0}, {1, 0, 2}}));
  groups.push_back(GroupOracle::free_group(2, 6));
  groups.push_back(GroupOracle::product(GroupOracle::cyclic(4), GroupOracle::cyclic(2)));
  groups.push_back(central_extension(carry_cocycle(4)));

  for (const auto& g : groups) {
    CAPTURE(g.describe());
    json j = group_to_json(g);
    GroupOracle back = group_from_json(j);
    CHECK(back.describe() == g.describe());
    CHECK(group_to_json(back).dump() == j.dump());
    if (g.enumerable()) {
      auto a = g.enumerate(), b = back.enumerate();
      CHECK(a == b);
    }
  }
}

TEST_CASE("group specs reject malformed input") {
  CHECK_THROWS_WITH_AS(group_from_json(json::parse(R"({"n":4})")),
                       "group spec needs a 'kind' string", std::invalid_argument);
  CHECK_THROWS_WITH_AS(group_from_json(json::parse(R"({"kind":"rings"})")),
                       "unknown group kind: rings", std::invalid_argument);
  CHECK_THROWS_WITH_AS(group_from_json(json::parse(R"({"kind":"cyclic"})")),
                       "missing integer field 'n'", std::invalid_argument);
  CHECK_THROWS_WITH_AS(group_from_json(json::parse(R"({"kind":"lattice_quotient","d":2})")),
                       "lattice_quotient needs a basis", std::invalid_argument);
  CHECK_THROWS_WITH_AS(group_from_json(json::parse(R"({"kind":"product","left":{"kind":"zd","d":1}})")),
                       "product group needs left and right", std::invalid_argument);
}

TEST_CASE("elements and generating sets round-trip") {
  GroupOracle h = GroupOracle::cyclic(12);
  Elem e{5};
  CHECK(elem_from_json(elem_to_json(e)) == e);
  CHECK_THROWS_WITH_AS(elem_from_json(json(3)), "group elements are arrays of integers",
                       std::invalid_argument);

  GenSet s = z12_full(h);
  json j = genset_to_json(s);
  GenSet back = genset_from_json(h, j);
  CHECK(back.elems == s.elems);
  CHECK(genset_to_json(back).dump() == j.dump());
  CHECK_THROWS_WITH_AS(genset_from_json(h, json::parse(R"({"elems":[]})")),
                       "generating sets are arrays of elements", std::invalid_argument);
}

TEST_CASE("cocycles round-trip through sparse entries") {
  Cocycle2 carry = carry_cocycle(4);
  json j = cocycle_to_json(carry);
  CHECK(!j.contains("domain"));  // standard enumeration order stays implicit
  Cocycle2 back = cocycle_from_json(j);
  CHECK(back.elements == carry.elements);
  CHECK(back.table == carry.table);
  CHECK(cocycle_to_json(back).dump() == j.dump());

  // a dense table parses to the same cocycle
  json dense{{"group", {{"kind", "cyclic"}, {"n", 4}}},
             {"table", json::array({{0, 0, 0, 0}, {0, 0, 0, 1}, {0, 0, 1, 1}, {0, 1, 1, 1}})}};
  Cocycle2 tbl = cocycle_from_json(dense);
  CHECK(tbl.table == carry.table);
}

TEST_CASE("cocycles with a custom domain keep their ordering") {
  GroupOracle h = GroupOracle::cyclic(4);
  // a strict subset of the group, deliberately not in enumeration order
  std::vector<Elem> domain{{2}, {0}, {1}};
  std::vector<std::vector<std::uint8_t>> table(3, std::vector<std::uint8_t>(3, 0));
  table[0][0] = 1;  // phi(2, 2) = 1
  Cocycle2 phi = make_cocycle(h, domain, table);
  json j = cocycle_to_json(phi);
  REQUIRE(j.contains("domain"));
  Cocycle2 back = cocycle_from_json(j);
  CHECK(back.elements == phi.elements);
  CHECK(back.table == phi.table);
  CHECK(cocycle_to_json(back).dump() == j.dump());

  json stray = j;
  stray["entries"].push_back(json::array({json::array({3}), json::array({0}), 1}));
  CHECK_THROWS_WITH_AS(cocycle_from_json(stray), "cocycle entry outside the declared domain",
                       std::invalid_argument);
}

TEST_CASE("coverings round-trip and validate their map") {
  CoveringMap c = trivial_double_cover(cycle(4));
  json j = covering_to_json(c);
  CoveringMap back = covering_from_json(j);
  CHECK(back.source.edges == c.source.edges);
  CHECK(back.target.edges == c.target.edges);
  CHECK(back.vertex_map == c.vertex_map);
  CHECK(back.fiber_size == c.fiber_size);
  CHECK(covering_to_json(back).dump() == j.dump());

  json short_map = j;
  short_map["vertex_map"] = std::vector<int>{0, 1};
  CHECK_THROWS_WITH_AS(covering_from_json(short_map), "vertex_map must cover every source vertex",
                       std::invalid_argument);
  json bad_image = j;
  bad_image["vertex_map"][0] = 99;
  CHECK_THROWS_WITH_AS(covering_from_json(bad_image), "vertex_map image out of range",
                       std::invalid_argument);
  json missing = j;
  missing.erase("fiber_size");
  CHECK(covering_from_json(missing).fiber_size == -1);
}

TEST_CASE("glued graphs round-trip with a faithful base reconstruction") {
  GroupOracle h = GroupOracle::cyclic(12);
  GenSet t = z12_full(h);
  auto in_g = [](const Elem& e) { return e[0] % 2 == 0; };
  GluedGraph x0 = build_X0(h, t, in_g, 1'000'000);

  json j = glued_to_json(x0);
  GluedGraph back = glued_from_json(j);
  CHECK(back.carrier.edges == x0.carrier.edges);
  CHECK(back.edge_kinds == x0.edge_kinds);
  CHECK(back.projection == x0.projection);
  CHECK(back.fibers == x0.fibers);
  CHECK(back.base.n == x0.base.n);
  auto sorted_edges = [](SimpleGraph g) {
    std::sort(g.edges.begin(), g.edges.end());
    return g.edges;
  };
  CHECK(sorted_edges(back.base) == sorted_edges(x0.base));
  CHECK(glued_to_json(back).dump() == j.dump());

  json torn = j;
  std::size_t crossing = 0;  // any non-vertical edge joins two fibers
  while (x0.edge_kinds[crossing] == EdgeKind::vertical) ++crossing;
  torn["edge_kinds"][crossing] = "vertical";
  CHECK_THROWS_WITH_AS(glued_from_json(torn), "vertical edge crosses fibers",
                       std::invalid_argument);
  json merged = j;
  for (auto& k : merged["edge_kinds"])
    if (k == "vertical") k = "inner";
  CHECK_THROWS_WITH_AS(glued_from_json(merged), "non-vertical edge stays inside a fiber",
                       std::invalid_argument);
  json wrong_fibers = j;
  std::swap(wrong_fibers["fibers"][0], wrong_fibers["fibers"][1]);
  CHECK_THROWS_WITH_AS(glued_from_json(wrong_fibers), "fibers do not match the projection",
                       std::invalid_argument);

  // integer edge kinds are accepted as an alternative encoding
  json ints = j;
  for (std::size_t e = 0; e < x0.edge_kinds.size(); ++e)
    ints["edge_kinds"][e] = static_cast<int>(x0.edge_kinds[e]);
  CHECK(glued_from_json(ints).edge_kinds == x0.edge_kinds);
}

TEST_CASE("Laurent entries and matrices round-trip") {
  LaurentGF2 l = add(add(laurent_term(-2), laurent_term(0)), laurent_term(5));
  json j = laurent_to_json(l);
  CHECK(j.dump() == "[-2,0,5]");
  CHECK(laurent_from_json(j) == l);
  CHECK(laurent_from_json(json::parse("[3,3]")) == laurent_zero());  // XOR semantics

  FoxMatrices fm = fox_matrix(f2xf2());
  json mj = matrix_to_json(fm.d2);
  LaurentMatrixGF2 back = matrix_from_json(mj);
  CHECK(back.rows == fm.d2.rows);
  CHECK(back.cols == fm.d2.cols);
  CHECK(back.at == fm.d2.at);
  CHECK(matrix_to_json(back).dump() == mj.dump());
  CHECK(rank_over_fraction_field(back) == 3);

  // raw row arrays parse to the same matrix as the framed form
  LaurentMatrixGF2 raw = matrix_from_json(mj.at("entries"));
  CHECK(raw.at == fm.d2.at);
  json torn = mj;
  torn["entries"][0] = json::array({json::array({0})});
  CHECK_THROWS_WITH_AS(matrix_from_json(torn), "matrix entries do not match the declared shape",
                       std::invalid_argument);
}

TEST_CASE("presentations round-trip and rebuild identical boundary matrices") {
  PresentationData p = f2xf2();
  json j = presentation_to_json(p);
  PresentationData back = presentation_from_json(j);
  CHECK(back.generators == p.generators);
  CHECK(back.relators == p.relators);
  CHECK(back.u == p.u);
  CHECK(presentation_to_json(back).dump() == j.dump());
  CHECK(fox_matrix(back).d2.at == fox_matrix(p).d2.at);

  // word relators and explicit letter lists may be mixed
  json mixed = json::parse(
      R"({"generators":["a","b"],"relators":["abAB",[1,2,-1,-2]],"u":{"a":1,"b":1}})");
  PresentationData m = presentation_from_json(mixed);
  CHECK(m.relators[0] == m.relators[1]);

  json no_u = j;
  no_u["u"].erase("c");
  CHECK_THROWS_WITH_AS(presentation_from_json(no_u),
                       "u must assign an exponent to every generator", std::invalid_argument);
}

TEST_CASE("read_json resolves literals and files") {
  json inline_form = read_json(R"({"vertices":3,"edges":[[0,1]]})");
  CHECK(inline_form.at("vertices") == 3);

  std::string path = "test_json_io_scratch.json";
  {
    std::ofstream out(path);
    out << R"({ "vertices" : 3, "edges" : [[0, 1]] })";
  }
  CHECK(read_json(path).dump() == inline_form.dump());
  std::remove(path.c_str());
  CHECK_THROWS_WITH_AS(read_json("no_such_file.json"),
                       "cannot open input file: no_such_file.json", std::invalid_argument);
  CHECK_THROWS_AS(read_json("{not json"), json::parse_error);
}
