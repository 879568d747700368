#include "lgr/json_io.hpp"

#include <algorithm>
#include <fstream>
#include <iostream>
#include <set>
#include <sstream>
#include <stdexcept>

namespace lgr {

using nlohmann::json;

namespace {

json parse_text(const std::string& text) {
  return json::parse(text);  // throws nlohmann's parse_error on bad input
}

long long require_int(const json& j, const char* key) {
  if (!j.contains(key) || !j.at(key).is_number_integer())
    throw std::invalid_argument(std::string("missing integer field '") + key + "'");
  return j.at(key).get<long long>();
}

}  // namespace

json read_json(const std::string& path_or_literal) {
  if (!path_or_literal.empty() && (path_or_literal[0] == '{' || path_or_literal[0] == '['))
    return parse_text(path_or_literal);
  if (path_or_literal == "-") {
    std::stringstream buf;
    buf << std::cin.rdbuf();
    return parse_text(buf.str());
  }
  std::ifstream in(path_or_literal);
  if (!in) throw std::invalid_argument("cannot open input file: " + path_or_literal);
  std::stringstream buf;
  buf << in.rdbuf();
  return parse_text(buf.str());
}

json graph_to_json(const SimpleGraph& g) {
  json j;
  j["vertices"] = g.n;
  json edges = json::array();
  for (const auto& [u, v] : g.edges) edges.push_back(json::array({u, v}));
  j["edges"] = std::move(edges);
  if (g.labeled()) j["edge_labels"] = g.edge_labels;
  if (!g.vertex_labels.empty()) j["vertex_labels"] = g.vertex_labels;
  return j;
}

SimpleGraph graph_from_json(const json& j) {
  long long n = require_int(j, "vertices");
  if (n < 0) throw std::invalid_argument("vertex count must be nonnegative");
  SimpleGraph g(static_cast<int>(n));
  if (!j.contains("edges") || !j.at("edges").is_array())
    throw std::invalid_argument("missing edge list");
  const json& edges = j.at("edges");
  std::vector<int> labels;
  if (j.contains("edge_labels")) {
    labels = j.at("edge_labels").get<std::vector<int>>();
    if (labels.size() != edges.size())
      throw std::invalid_argument("edge_labels must align with edges");
  }
  std::size_t idx = 0;
  for (const auto& e : edges) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("edges must be [u, v] pairs");
    int u = e[0].get<int>(), v = e[1].get<int>();
    if (u == v) throw std::invalid_argument("loop edges are rejected");
    if (u < 0 || v < 0 || u >= g.n || v >= g.n)
      throw std::invalid_argument("edge endpoint out of range");
    if (g.has_edge(u, v)) throw std::invalid_argument("duplicate edges are rejected");
    if (labels.empty()) g.add_edge(std::min(u, v), std::max(u, v));
    else g.add_labeled_edge(std::min(u, v), std::max(u, v), labels[idx]);
    ++idx;
  }
  if (j.contains("vertex_labels")) {
    g.vertex_labels = j.at("vertex_labels").get<std::vector<int>>();
    if (g.vertex_labels.size() != static_cast<std::size_t>(g.n))
      throw std::invalid_argument("vertex_labels must cover every vertex");
  }
  return g;
}

json group_to_json(const GroupOracle& g) {
  json j;
  switch (g.kind) {
    case GroupOracle::cyclic_k:
      j["kind"] = "cyclic";
      j["n"] = g.n;
      break;
    case GroupOracle::zd_k:
      j["kind"] = "zd";
      j["d"] = g.d;
      break;
    case GroupOracle::lattice_quotient_k:
      j["kind"] = "lattice_quotient";
      j["d"] = g.d;
      j["basis"] = g.basis;
      break;
    case GroupOracle::perm_k:
      j["kind"] = "perm";
      j["degree"] = g.degree;
      j["gens"] = g.perm_gens;
      break;
    case GroupOracle::free_k:
      j["kind"] = "free";
      j["rank"] = g.rank;
      j["trunc"] = g.trunc;
      break;
    case GroupOracle::product_k:
      j["kind"] = "product";
      j["left"] = group_to_json(*g.left);
      j["right"] = group_to_json(*g.right);
      break;
    case GroupOracle::central_ext_k:
      j["kind"] = "central_ext";
      j["base"] = group_to_json(*g.base);
      j["cocycle"] = json{{"table", g.cocycle}};
      break;
    default:
      throw std::invalid_argument("group kind has no JSON spec");
  }
  return j;
}

namespace {

std::vector<std::vector<std::uint8_t>> cocycle_table_from_json(const GroupOracle& base,
                                                               const json& spec) {
  json body = spec;
  if (body.is_string()) body = read_json(body.get<std::string>());
  if (body.is_object() && body.contains("table")) body = body.at("table");
  if (body.is_array() && !body.empty() && body[0].is_array() && !body[0].empty() &&
      body[0][0].is_number()) {
    // dense table over the enumeration order
    std::vector<std::vector<std::uint8_t>> table;
    for (const auto& row : body) table.push_back(row.get<std::vector<std::uint8_t>>());
    return table;
  }
  if (body.is_object() && body.contains("entries")) {
    auto elems = base.enumerate();
    std::size_t n = elems.size();
    std::vector<std::vector<std::uint8_t>> table(n, std::vector<std::uint8_t>(n, 0));
    for (const auto& entry : body.at("entries")) {
      if (!entry.is_array() || entry.size() != 3)
        throw std::invalid_argument("cocycle entries must be [g1, g2, bit] triples");
      int i = base.index_of(base.canon(elem_from_json(entry[0])));
      int k = base.index_of(base.canon(elem_from_json(entry[1])));
      int bit = entry[2].get<int>();
      if (bit != 0 && bit != 1) throw std::invalid_argument("cocycle bits must be 0 or 1");
      table[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          static_cast<std::uint8_t>(bit);
    }
    return table;
  }
  throw std::invalid_argument("cocycle table must be dense rows or an entries list");
}

}  // namespace

GroupOracle group_from_json(const json& j) {
  if (!j.is_object() || !j.contains("kind") || !j.at("kind").is_string())
    throw std::invalid_argument("group spec needs a 'kind' string");
  std::string kind = j.at("kind").get<std::string>();
  if (kind == "cyclic") return GroupOracle::cyclic(require_int(j, "n"));
  if (kind == "zd") return GroupOracle::zd(static_cast<int>(require_int(j, "d")));
  if (kind == "lattice_quotient") {
    if (!j.contains("basis")) throw std::invalid_argument("lattice_quotient needs a basis");
    return GroupOracle::lattice_quotient(
        static_cast<int>(require_int(j, "d")),
        j.at("basis").get<std::vector<std::vector<long long>>>());
  }
  if (kind == "perm") {
    if (!j.contains("gens")) throw std::invalid_argument("perm group needs gens");
    return GroupOracle::perm_group(static_cast<int>(require_int(j, "degree")),
                                   j.at("gens").get<std::vector<std::vector<int>>>());
  }
  if (kind == "free")
    return GroupOracle::free_group(static_cast<int>(require_int(j, "rank")),
                                   static_cast<int>(require_int(j, "trunc")));
  if (kind == "product") {
    if (!j.contains("left") || !j.contains("right"))
      throw std::invalid_argument("product group needs left and right");
    return GroupOracle::product(group_from_json(j.at("left")), group_from_json(j.at("right")));
  }
  if (kind == "central_ext") {
    if (!j.contains("base") || !j.contains("cocycle"))
      throw std::invalid_argument("central_ext needs base and cocycle");
    GroupOracle base = group_from_json(j.at("base"));
    auto table = cocycle_table_from_json(base, j.at("cocycle"));
    std::vector<std::vector<int>> as_int;
    for (const auto& row : table) as_int.emplace_back(row.begin(), row.end());
    return GroupOracle::central_ext_z2(std::move(base), std::move(as_int));
  }
  throw std::invalid_argument("unknown group kind: " + kind);
}

json elem_to_json(const Elem& e) { return json(e); }

Elem elem_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("group elements are arrays of integers");
  return j.get<Elem>();
}

json genset_to_json(const GenSet& s) {
  json out = json::array();
  for (const auto& e : s.elems) out.push_back(elem_to_json(e));
  return out;
}

GenSet genset_from_json(const GroupOracle& g, const json& j) {
  if (!j.is_array()) throw std::invalid_argument("generating sets are arrays of elements");
  std::vector<Elem> elems;
  for (const auto& e : j) elems.push_back(elem_from_json(e));
  return make_genset(g, std::move(elems));
}

json cocycle_to_json(const Cocycle2& phi) {
  json j;
  j["group"] = group_to_json(phi.base);
  bool standard_domain =
      phi.base.enumerable() && phi.elements == phi.base.enumerate();
  if (!standard_domain) {
    json domain = json::array();
    for (const auto& e : phi.elements) domain.push_back(elem_to_json(e));
    j["domain"] = std::move(domain);
  }
  json entries = json::array();
  for (std::size_t a = 0; a < phi.elements.size(); ++a)
    for (std::size_t b = 0; b < phi.elements.size(); ++b)
      if (phi.table[a][b])
        entries.push_back(json::array(
            {elem_to_json(phi.elements[a]), elem_to_json(phi.elements[b]), 1}));
  j["entries"] = std::move(entries);
  return j;
}

Cocycle2 cocycle_from_json(const json& j) {
  if (!j.is_object() || !j.contains("group"))
    throw std::invalid_argument("cocycle JSON needs a group spec");
  GroupOracle base = group_from_json(j.at("group"));
  if (j.contains("domain")) {
    std::vector<Elem> domain;
    for (const auto& e : j.at("domain")) domain.push_back(base.canon(elem_from_json(e)));
    std::size_t n = domain.size();
    std::vector<std::vector<std::uint8_t>> table(n, std::vector<std::uint8_t>(n, 0));
    std::map<Elem, int> index;
    for (std::size_t i = 0; i < n; ++i) index[domain[i]] = static_cast<int>(i);
    if (j.contains("entries"))
      for (const auto& entry : j.at("entries")) {
        if (!entry.is_array() || entry.size() != 3)
          throw std::invalid_argument("cocycle entries must be [g1, g2, bit] triples");
        auto a = index.find(base.canon(elem_from_json(entry[0])));
        auto b = index.find(base.canon(elem_from_json(entry[1])));
        if (a == index.end() || b == index.end())
          throw std::invalid_argument("cocycle entry outside the declared domain");
        table[static_cast<std::size_t>(a->second)][static_cast<std::size_t>(b->second)] =
            static_cast<std::uint8_t>(entry[2].get<int>());
      }
    return make_cocycle(base, std::move(domain), std::move(table));
  }
  json spec = j.contains("entries") ? json{{"entries", j.at("entries")}}
                                    : json{{"table", j.at("table")}};
  auto table = cocycle_table_from_json(base, spec);
  return make_cocycle(base, std::move(table));
}

json covering_to_json(const CoveringMap& c) {
  json j;
  j["source"] = graph_to_json(c.source);
  j["target"] = graph_to_json(c.target);
  j["vertex_map"] = c.vertex_map;
  j["fiber_size"] = c.fiber_size;
  return j;
}

CoveringMap covering_from_json(const json& j) {
  if (!j.is_object() || !j.contains("source") || !j.contains("target") ||
      !j.contains("vertex_map"))
    throw std::invalid_argument("covering JSON needs source, target, vertex_map");
  CoveringMap c;
  c.source = graph_from_json(j.at("source"));
  c.target = graph_from_json(j.at("target"));
  c.vertex_map = j.at("vertex_map").get<std::vector<int>>();
  if (c.vertex_map.size() != static_cast<std::size_t>(c.source.n))
    throw std::invalid_argument("vertex_map must cover every source vertex");
  for (int y : c.vertex_map)
    if (y < 0 || y >= c.target.n) throw std::invalid_argument("vertex_map image out of range");
  c.fiber_size = j.contains("fiber_size") ? j.at("fiber_size").get<int>() : -1;
  return c;
}

namespace {

const char* kind_name(EdgeKind k) {
  switch (k) {
    case EdgeKind::inner: return "inner";
    case EdgeKind::outer: return "outer";
    default: return "vertical";
  }
}

EdgeKind kind_of(const json& j) {
  if (j.is_number_integer()) {
    int v = j.get<int>();
    if (v < 0 || v > 2) throw std::invalid_argument("edge kind out of range");
    return static_cast<EdgeKind>(v);
  }
  std::string s = j.get<std::string>();
  if (s == "inner") return EdgeKind::inner;
  if (s == "outer") return EdgeKind::outer;
  if (s == "vertical") return EdgeKind::vertical;
  throw std::invalid_argument("unknown edge kind: " + s);
}

}  // namespace

json glued_to_json(const GluedGraph& g) {
  json j = graph_to_json(g.carrier);
  json kinds = json::array();
  for (EdgeKind k : g.edge_kinds) kinds.push_back(kind_name(k));
  j["edge_kinds"] = std::move(kinds);
  j["projection"] = g.projection;
  j["fibers"] = g.fibers;
  return j;
}

GluedGraph glued_from_json(const json& j) {
  GluedGraph g;
  g.carrier = graph_from_json(j);
  if (!j.contains("edge_kinds") || !j.contains("projection"))
    throw std::invalid_argument("glued graph JSON needs edge_kinds and projection");
  for (const auto& k : j.at("edge_kinds")) g.edge_kinds.push_back(kind_of(k));
  if (g.edge_kinds.size() != g.carrier.edges.size())
    throw std::invalid_argument("edge_kinds must align with edges");
  g.projection = j.at("projection").get<std::vector<int>>();
  if (g.projection.size() != static_cast<std::size_t>(g.carrier.n))
    throw std::invalid_argument("projection must cover every carrier vertex");
  int nb = 0;
  for (int b : g.projection) {
    if (b < 0) throw std::invalid_argument("projection image out of range");
    nb = std::max(nb, b + 1);
  }
  // rebuild the base from the projected non-vertical edges
  g.base = SimpleGraph(nb);
  for (std::size_t e = 0; e < g.carrier.edges.size(); ++e) {
    auto [u, v] = g.carrier.edges[e];
    int pu = g.projection[static_cast<std::size_t>(u)];
    int pv = g.projection[static_cast<std::size_t>(v)];
    if (g.edge_kinds[e] == EdgeKind::vertical) {
      if (pu != pv) throw std::invalid_argument("vertical edge crosses fibers");
      continue;
    }
    if (pu == pv) throw std::invalid_argument("non-vertical edge stays inside a fiber");
    if (!g.base.has_edge(pu, pv)) g.base.add_edge(std::min(pu, pv), std::max(pu, pv));
  }
  g.fibers.assign(static_cast<std::size_t>(nb), {});
  for (int x = 0; x < g.carrier.n; ++x)
    g.fibers[static_cast<std::size_t>(g.projection[static_cast<std::size_t>(x)])].push_back(x);
  if (j.contains("fibers") &&
      j.at("fibers").get<std::vector<std::vector<int>>>() != g.fibers)
    throw std::invalid_argument("fibers do not match the projection");
  return g;
}

json laurent_to_json(const LaurentGF2& l) {
  json out = json::array();
  for (long long e = l.low; e <= l.high(); ++e)
    if (l.coeff(e)) out.push_back(e);
  return out;
}

LaurentGF2 laurent_from_json(const json& j) {
  if (!j.is_array()) throw std::invalid_argument("Laurent entries are arrays of exponents");
  LaurentGF2 out = laurent_zero();
  for (const auto& e : j) out = add(out, laurent_term(e.get<long long>()));
  return out;
}

json matrix_to_json(const LaurentMatrixGF2& m) {
  json j;
  j["rows"] = m.rows;
  j["cols"] = m.cols;
  json entries = json::array();
  for (const auto& row : m.at) {
    json r = json::array();
    for (const auto& e : row) r.push_back(laurent_to_json(e));
    entries.push_back(std::move(r));
  }
  j["entries"] = std::move(entries);
  return j;
}

LaurentMatrixGF2 matrix_from_json(const json& j) {
  int rows, cols;
  const json* entries;
  if (j.is_array()) {
    rows = static_cast<int>(j.size());
    cols = rows > 0 ? static_cast<int>(j[0].size()) : 0;
    entries = &j;
  } else {
    rows = static_cast<int>(require_int(j, "rows"));
    cols = static_cast<int>(require_int(j, "cols"));
    if (!j.contains("entries")) throw std::invalid_argument("matrix JSON needs entries");
    entries = &j.at("entries");
  }
  LaurentMatrixGF2 m = laurent_matrix(rows, cols);
  if (entries->size() != static_cast<std::size_t>(rows))
    throw std::invalid_argument("matrix entries do not match the declared shape");
  for (int i = 0; i < rows; ++i) {
    const json& row = (*entries)[static_cast<std::size_t>(i)];
    if (row.size() != static_cast<std::size_t>(cols))
      throw std::invalid_argument("matrix entries do not match the declared shape");
    for (int k = 0; k < cols; ++k)
      m.at[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)] =
          laurent_from_json(row[static_cast<std::size_t>(k)]);
  }
  return m;
}

json presentation_to_json(const PresentationData& p) {
  json j;
  j["generators"] = p.generators;
  j["relators"] = p.relators;
  json u = json::object();
  for (std::size_t i = 0; i < p.generators.size(); ++i) u[p.generators[i]] = p.u[i];
  j["u"] = std::move(u);
  j["r3"] = p.three_cells;
  if (p.d3.has_value()) j["d3"] = matrix_to_json(*p.d3);
  return j;
}

PresentationData presentation_from_json(const json& j) {
  PresentationData p;
  if (!j.is_object() || !j.contains("generators") || !j.contains("u"))
    throw std::invalid_argument("presentation JSON needs generators and u");
  p.generators = j.at("generators").get<std::vector<std::string>>();
  if (j.contains("relators"))
    for (const auto& rel : j.at("relators")) {
      if (rel.is_string())
        p.relators.push_back(relator_from_word(rel.get<std::string>(), p.generators));
      else
        p.relators.push_back(rel.get<std::vector<int>>());
    }
  const json& u = j.at("u");
  for (const auto& name : p.generators) {
    if (!u.contains(name))
      throw std::invalid_argument("u must assign an exponent to every generator");
    p.u.push_back(u.at(name).get<long long>());
  }
  p.three_cells = j.contains("r3") ? static_cast<int>(require_int(j, "r3")) : 0;
  if (j.contains("d3")) p.d3 = matrix_from_json(j.at("d3"));
  return p;
}

}  // namespace lgr
