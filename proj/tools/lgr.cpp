// lgr: every library operation as a subcommand over the JSON exchange
// formats. Exit codes: 0 = positive verdict / object constructed, 1 =
// negative verdict / certified obstruction, 2 = usage error or exhausted
// budget. With --json-out the run writes a machine-readable report; all
// report fields except timing_ms are deterministic given inputs and --seed.

#include <chrono>
#include <cstdint>
#include <fstream>
#include <iostream>
#include <memory>
#include <set>
#include <string>
#include <thread>
#include <vector>

#include "CLI11.hpp"
#include "lgr/cayley.hpp"
#include "lgr/complexes.hpp"
#include "lgr/discreteness.hpp"
#include "lgr/extensions.hpp"
#include "lgr/fox.hpp"
#include "lgr/gluing.hpp"
#include "lgr/graph.hpp"
#include "lgr/group.hpp"
#include "lgr/json_io.hpp"
#include "lgr/rigidity.hpp"
#include "lgr/util.hpp"

using json = nlohmann::json;
using namespace lgr;

namespace {

struct Ctx {
  long long budget = 0;  // 0 = per-operation default
  unsigned long long seed = 0;
  std::string json_out;
  bool quiet = false;
  int threads = 0;  // 0 = hardware concurrency

  std::string subcommand;
  std::vector<std::string> inputs;  // canonical payloads for the digest
  json result = json::object();
  std::string summary;

  long long budget_or(long long fallback) const { return budget > 0 ? budget : fallback; }
  int thread_count() const {
    if (threads > 0) return threads;
    unsigned hw = std::thread::hardware_concurrency();
    return hw > 0 ? static_cast<int>(hw) : 1;
  }
  json input(const std::string& raw) {
    json j = read_json(raw);
    inputs.push_back(j.dump());
    return j;
  }
  void param(const std::string& name, long long value) {
    inputs.push_back(name + "=" + std::to_string(value));
  }
};

std::uint64_t fnv1a(const std::string& s, std::uint64_t h) {
  for (unsigned char c : s) {
    h ^= c;
    h *= 1099511628211ull;
  }
  return h;
}

std::string digest_of(const Ctx& ctx) {
  std::uint64_t h = fnv1a(ctx.subcommand, 14695981039346656037ull);
  for (const auto& in : ctx.inputs) h = fnv1a("\x1f" + in, h);
  h = fnv1a("\x1f" + std::to_string(ctx.seed), h);
  char buf[17];
  std::snprintf(buf, sizeof buf, "%016llx", static_cast<unsigned long long>(h));
  return buf;
}

std::uint64_t splitmix64(std::uint64_t x) {
  x += 0x9E3779B97F4A7C15ull;
  x = (x ^ (x >> 30)) * 0xBF58476D1CE4E5B9ull;
  x = (x ^ (x >> 27)) * 0x94D049BB133111EBull;
  return x ^ (x >> 31);
}

void finish(const Ctx& ctx, int rc, double ms) {
  const char* verdict = rc == 0 ? "positive" : rc == 1 ? "negative" : "error";
  if (!ctx.quiet) {
    std::cout << ctx.subcommand << ": " << verdict;
    if (!ctx.summary.empty()) std::cout << " (" << ctx.summary << ")";
    std::cout << "\n";
    if (!ctx.result.empty()) std::cout << ctx.result.dump(2) << "\n";
  }
  if (!ctx.json_out.empty()) {
    json report{{"subcommand", ctx.subcommand}, {"inputs_digest", digest_of(ctx)},
                {"seed", ctx.seed},             {"verdict", verdict},
                {"exit_code", rc},              {"result", ctx.result},
                {"timing_ms", ms}};
    std::ofstream out(ctx.json_out);
    if (!out) throw std::invalid_argument("cannot write report file: " + ctx.json_out);
    out << report.dump(2) << "\n";
  }
}

// Subgroup membership as closure of a symmetric generating list, staying
// inside the carrier (multiplications past a truncation boundary count as
// escapes, not members).
Membership membership_from_gens(const GroupOracle& H, const GenSet& gens, long long budget) {
  auto seen = std::make_shared<std::set<Elem>>();
  seen->insert(H.identity());
  std::vector<Elem> frontier{H.identity()};
  BudgetCounter bc(budget);
  while (!frontier.empty()) {
    std::vector<Elem> next;
    for (const auto& g : frontier)
      for (const auto& s : gens.elems) {
        bc.tick("subgroup closure");
        Elem h;
        try {
          h = H.canon(H.mul(g, s));
        } catch (const budget_error&) {
          continue;  // escaped a truncated carrier
        }
        if (seen->insert(h).second) next.push_back(h);
      }
    frontier = std::move(next);
  }
  GroupOracle oracle = H;
  return [seen, oracle](const Elem& e) { return seen->count(oracle.canon(e)) > 0; };
}

std::map<int, int> seedmap_from_json(const json& j) {
  std::map<int, int> out;
  if (j.is_object()) {
    for (const auto& [k, v] : j.items()) out[std::stoi(k)] = v.get<int>();
    return out;
  }
  if (!j.is_array()) throw std::invalid_argument("seed map must be pairs or an object");
  for (const auto& e : j) {
    if (!e.is_array() || e.size() != 2)
      throw std::invalid_argument("seed map must be pairs or an object");
    out[e[0].get<int>()] = e[1].get<int>();
  }
  return out;
}

json pairs_to_json(const std::vector<std::pair<int, int>>& v) {
  json out = json::array();
  for (const auto& [a, b] : v) out.push_back(json::array({a, b}));
  return out;
}

json elems_to_json(const std::vector<Elem>& v) {
  json out = json::array();
  for (const auto& e : v) out.push_back(elem_to_json(e));
  return out;
}

// ---- runners ----------------------------------------------------------------

int run_ball(Ctx& ctx, const std::string& graph_in, int center, int radius) {
  SimpleGraph g = graph_from_json(ctx.input(graph_in));
  ctx.param("center", center);
  ctx.param("radius", radius);
  BallView b = ball(g, center, radius);
  ctx.result = {{"ball", graph_to_json(b.carrier)},
                {"root", b.root},
                {"radius", b.radius},
                {"orig", b.orig},
                {"root_dist", b.root_dist}};
  ctx.summary = std::to_string(b.carrier.n) + " vertices";
  return 0;
}

int run_is_r_locally(Ctx& ctx, const std::string& graph_in, const std::string& model_in, int r) {
  SimpleGraph y = graph_from_json(ctx.input(graph_in));
  SimpleGraph x = graph_from_json(ctx.input(model_in));
  ctx.param("radius", r);
  std::vector<BallView> balls;
  for (int v = 0; v < x.n; ++v) balls.push_back(ball(x, v, r));
  RLocalReport rep = is_r_locally(y, balls, r, ctx.thread_count(), ctx.budget_or(20'000'000));
  ctx.result = {{"r_locally", rep.verdict},
                {"failing_vertex", rep.failing_vertex},
                {"matched_model", rep.matched_model}};
  ctx.summary = rep.verdict ? "every ball matches the model"
                            : "vertex " + std::to_string(rep.failing_vertex) + " fails";
  return rep.verdict ? 0 : 1;
}

int run_aut(Ctx& ctx, const std::string& graph_in, bool respect_labels) {
  SimpleGraph g = graph_from_json(ctx.input(graph_in));
  ctx.param("respect_labels", respect_labels ? 1 : 0);
  AutGroup a = automorphism_group(g, respect_labels, ctx.budget_or(50'000'000));
  ctx.result = {{"order", a.order},
                {"vertex_orbit_count", a.vertex_orbit_count},
                {"generators", a.generators}};
  ctx.summary = "order " + std::to_string(a.order) + ", " +
                std::to_string(a.vertex_orbit_count) + " orbit(s)";
  return 0;
}

int run_k_cover(Ctx& ctx, const std::string& graph_in, int base, int k, int radius) {
  SimpleGraph g = graph_from_json(ctx.input(graph_in));
  ctx.param("base", base);
  ctx.param("k", k);
  ctx.param("radius", radius);
  CoverBall cb = k_universal_cover_ball(g, base, k, radius, ctx.budget_or(2'000'000));
  bool exact = cb.status == CoverBall::exact;
  ctx.result = {{"ball", graph_to_json(cb.ball.carrier)},
                {"root", cb.ball.root},
                {"root_dist", cb.ball.root_dist},
                {"projection", cb.projection},
                {"status", exact ? "exact" : "fuel_exhausted"}};
  ctx.summary = std::to_string(cb.ball.carrier.n) + " cover vertices, " +
                (exact ? "exact" : "fuel exhausted");
  return exact ? 0 : 2;
}

int run_k_simply_connected(Ctx& ctx, const std::string& graph_in, int k) {
  SimpleGraph g = graph_from_json(ctx.input(graph_in));
  ctx.param("k", k);
  SimplyConnectedReport rep = is_k_simply_connected(g, k, ctx.budget_or(2'000'000));
  const char* v = rep.verdict == Verdict3::yes ? "yes"
                  : rep.verdict == Verdict3::no ? "no"
                                                : "unknown";
  ctx.result = {{"verdict", v},
                {"radius", rep.radius},
                {"cover_count", rep.cover_count},
                {"ball_count", rep.ball_count},
                {"exact", rep.exact}};
  ctx.summary = v;
  return rep.verdict == Verdict3::yes ? 0 : rep.verdict == Verdict3::no ? 1 : 2;
}

int run_fill_radius(Ctx& ctx, const std::string& graph_in, int k, int r1) {
  SimpleGraph g = graph_from_json(ctx.input(graph_in));
  ctx.param("k", k);
  ctx.param("r1", r1);
  FillRadiusResult r = fill_radius(g, k, r1, ctx.budget_or(2'000'000));
  ctx.result = {{"found", r.found}, {"r2", r.r2}, {"decided", r.decided}};
  ctx.summary = r.found ? "fills within radius " + std::to_string(r.r2)
                        : r.decided ? "no filling radius up to the diameter" : "undecided";
  return r.found ? 0 : r.decided ? 1 : 2;
}

int run_verify_covering(Ctx& ctx, const std::string& covering_in) {
  CoveringMap c = covering_from_json(ctx.input(covering_in));
  CoveringCheck chk = verify_covering(c.source, c.target, c.vertex_map, {},
                                      ctx.budget_or(20'000'000));
  ctx.result = {{"ok", chk.ok},
                {"reason", chk.reason},
                {"failing_vertex", chk.failing_vertex},
                {"injectivity_radius", chk.injectivity_radius},
                {"fiber_size", chk.map.fiber_size}};
  ctx.summary = chk.ok ? "covering with fiber " + std::to_string(chk.map.fiber_size) : chk.reason;
  return chk.ok ? 0 : 1;
}

int run_extension_radius(Ctx& ctx, const std::string& graph_in, int r) {
  SimpleGraph g = graph_from_json(ctx.input(graph_in));
  ctx.param("r", r);
  ExtensionRadiusResult er = extension_radius(g, r, ctx.budget_or(50'000'000));
  ctx.result = {{"found", er.found}, {"r2", er.r2}};
  ctx.summary = er.found ? "r2 = " + std::to_string(er.r2) : "no extension radius";
  return er.found ? 0 : 1;
}

int run_propagate(Ctx& ctx, const std::string& model_in, const std::string& target_in,
                  const std::string& seed_in, int x0, PropagationParams params) {
  SimpleGraph x = graph_from_json(ctx.input(model_in));
  SimpleGraph y = graph_from_json(ctx.input(target_in));
  std::map<int, int> seed = seedmap_from_json(ctx.input(seed_in));
  ctx.param("x0", x0);
  ctx.param("k", params.k);
  params.budget = ctx.budget_or(params.budget);
  PropagationResult res = propagate_covering(x, y, seed, x0, params);
  if (res.ok) {
    ctx.result = {{"covering", covering_to_json(res.cover)},
                  {"domain_vertices", res.domain_vertices}};
    ctx.summary = "fiber " + std::to_string(res.cover.fiber_size);
    return 0;
  }
  ctx.result = {{"reason", res.reason}, {"obstruction_loop", res.obstruction_loop}};
  ctx.summary = res.reason;
  return 1;
}

int run_deck(Ctx& ctx, const std::string& covering_in) {
  CoveringMap c = covering_from_json(ctx.input(covering_in));
  DeckResult d = deck_quotient(c, ctx.budget_or(100'000'000));
  ctx.result = {{"order", d.order},
                {"free", d.free},
                {"quotient_match", d.quotient_match},
                {"quotient", graph_to_json(d.quotient)},
                {"quotient_iso", d.quotient_iso},
                {"reason", d.reason}};
  if (d.order <= 64) ctx.result["elements"] = d.elements;
  ctx.summary = "order " + std::to_string(d.order) + (d.free ? ", free" : ", not free") +
                (d.quotient_match ? ", quotient matches" : ", quotient mismatch");
  return d.free && d.quotient_match ? 0 : 1;
}

int run_rf_probe(Ctx& ctx, const std::string& group_in, const std::string& genset_in,
                 const std::string& target_in, int n, const std::string& elements_in, int k) {
  GroupOracle g = group_from_json(ctx.input(group_in));
  GenSet s = genset_from_json(g, ctx.input(genset_in));
  SimpleGraph y = graph_from_json(ctx.input(target_in));
  json felems = ctx.input(elements_in);
  std::vector<Elem> f;
  for (const auto& e : felems) f.push_back(elem_from_json(e));
  ctx.param("n", n);
  ctx.param("k", k);
  RfProbeResult r = residual_finiteness_probe(g, s, y, n, f, k, ctx.budget_or(400'000'000));
  ctx.result = {{"ok", r.ok},
                {"reason", r.reason},
                {"free_elements", elems_to_json(r.free_elements)},
                {"fixed_elements", elems_to_json(r.fixed_elements)},
                {"identity_skipped", r.identity_skipped}};
  bool all_free = r.ok && r.fixed_elements.empty();
  ctx.summary = all_free ? std::to_string(r.free_elements.size()) + " element(s) act freely"
                         : (r.ok ? "some elements have fixed points" : r.reason);
  return all_free ? 0 : 1;
}

int run_tree_extend(Ctx& ctx, const std::string& graph_in, const std::string& decomp_in,
                    const std::string& target_in, const std::string& seed_in, int x0, int r,
                    int r2) {
  SimpleGraph x = graph_from_json(ctx.input(graph_in));
  json dj = ctx.input(decomp_in);
  TreeDecomposition d;
  d.tree = graph_from_json(dj.at("tree"));
  d.pieces = dj.at("pieces").get<std::vector<std::vector<int>>>();
  d.r1 = dj.contains("r1") ? dj.at("r1").get<int>() : 0;
  SimpleGraph y = graph_from_json(ctx.input(target_in));
  std::map<int, int> seed = seedmap_from_json(ctx.input(seed_in));
  ctx.param("x0", x0);
  ctx.param("r", r);
  ctx.param("r2", r2);
  TreeExtendResult res = extend_cover_along_tree(x, d, y, seed, x0, r, r2,
                                                 ctx.budget_or(200'000'000));
  if (res.ok) {
    ctx.result = {{"covering", covering_to_json(res.cover)}};
    ctx.summary = "extended across " + std::to_string(d.pieces.size()) + " pieces";
    return 0;
  }
  ctx.result = {{"reason", res.reason}, {"edge", json::array({res.edge_u, res.edge_v})}};
  ctx.summary = res.reason;
  return 1;
}

int run_n3(Ctx& ctx, const std::string& group_in, const std::string& genset_in) {
  GroupOracle g = group_from_json(ctx.input(group_in));
  GenSet s = genset_from_json(g, ctx.input(genset_in));
  TriangleProfile p = n3_profile(g, s);
  ctx.result = {{"genset", genset_to_json(p.genset)}, {"counts", p.counts}};
  ctx.summary = std::to_string(s.elems.size()) + " generators";
  return 0;
}

int run_augment(Ctx& ctx, const std::string& group_in, const std::string& genset_in,
                const std::string& s0_in, const std::string& gamma_in, int search_bound) {
  GroupOracle g = group_from_json(ctx.input(group_in));
  GenSet s = genset_from_json(g, ctx.input(genset_in));
  Elem s0 = elem_from_json(ctx.input(s0_in));
  Elem gamma = elem_from_json(ctx.input(gamma_in));
  ctx.param("search_bound", search_bound);
  AugmentResult a = augment_genset(g, s, s0, gamma, search_bound);
  json rejections = json::array();
  for (const auto& [n, why] : a.rejections) rejections.push_back(json::array({n, why}));
  if (a.ok) {
    ctx.result = {{"after", genset_to_json(a.after)},
                  {"n", a.step.n},
                  {"delta", elems_to_json(a.step.delta)},
                  {"achieved", json::array({a.achieved.first, a.achieved.second})},
                  {"rejections", rejections}};
    ctx.summary = "n = " + std::to_string(a.step.n);
    return 0;
  }
  ctx.result = {{"reason", a.reason}, {"rejections", rejections}};
  ctx.summary = a.reason;
  return 1;
}

int run_discrete_genset(Ctx& ctx, const std::string& group_in, const std::string& genset_in,
                        const std::string& gamma_in, int search_bound, int max_augmentations) {
  GroupOracle g = group_from_json(ctx.input(group_in));
  GenSet s = genset_from_json(g, ctx.input(genset_in));
  Elem gamma = elem_from_json(ctx.input(gamma_in));
  ctx.param("search_bound", search_bound);
  ctx.param("max_augmentations", max_augmentations);
  DiscreteGensetResult r = build_discrete_genset(g, s, gamma, search_bound, max_augmentations);
  if (r.ok) {
    ctx.result = {{"genset", genset_to_json(r.genset)},
                  {"added", elems_to_json(r.added)},
                  {"counts", r.certificate.counts},
                  {"augmentations", r.steps.size()}};
    ctx.summary = std::to_string(r.steps.size()) + " augmentation(s), " +
                  std::to_string(r.genset.elems.size()) + " generators";
    return 0;
  }
  ctx.result = {{"reason", r.reason}};
  ctx.summary = r.reason;
  return 1;
}

int run_padded_genset(Ctx& ctx, const std::string& group_in, const std::string& genset_in) {
  GroupOracle g = group_from_json(ctx.input(group_in));
  GenSet s = genset_from_json(g, ctx.input(genset_in));
  PaddedGensetResult r = build_padded_genset(g, s, ctx.budget_or(50'000'000));
  ctx.result = {{"primes", r.primes},
                {"clique_number", r.clique_number},
                {"fiber_size", r.fiber_size},
                {"fibers_are_cliques", r.fibers_are_cliques},
                {"cross_clique_bound", r.cross_clique_bound},
                {"fiber_edge_counts", r.fiber_edge_counts},
                {"genset", genset_to_json(r.genset)},
                {"product", r.product.describe()}};
  ctx.summary = "|F| = " + std::to_string(r.fiber_size);
  return r.fibers_are_cliques ? 0 : 1;
}

int run_cocycle_validate(Ctx& ctx, const std::string& cocycle_in) {
  Cocycle2 phi = cocycle_from_json(ctx.input(cocycle_in));
  CocycleCheck chk = validate_cocycle(phi);
  ctx.result = {{"ok", chk.ok}, {"reason", chk.reason}};
  if (!chk.ok)
    ctx.result["violating_triple"] = json::array(
        {elem_to_json(chk.g1), elem_to_json(chk.g2), elem_to_json(chk.g3)});
  ctx.summary = chk.ok ? "cocycle identity holds" : chk.reason;
  return chk.ok ? 0 : 1;
}

int run_coboundary(Ctx& ctx, const std::string& cocycle_in) {
  Cocycle2 phi = cocycle_from_json(ctx.input(cocycle_in));
  CoboundaryResult r = is_coboundary(phi);
  ctx.result = {{"coboundary", r.yes}};
  if (r.yes) ctx.result["psi"] = r.psi;
  else ctx.result["certificate"] = pairs_to_json(r.certificate);
  ctx.summary = r.yes ? "trivial class" : "certified non-coboundary";
  return r.yes ? 0 : 1;
}

int run_central_ext(Ctx& ctx, const std::string& cocycle_in) {
  Cocycle2 phi = cocycle_from_json(ctx.input(cocycle_in));
  GroupOracle e = central_extension(phi);
  ctx.result = {{"group", group_to_json(e)},
                {"describe", e.describe()},
                {"order", e.enumerate().size()}};
  ctx.summary = e.describe();
  return 0;
}

int run_two_cover(Ctx& ctx, const std::string& cocycle_in, const std::string& genset_in) {
  Cocycle2 phi = cocycle_from_json(ctx.input(cocycle_in));
  GenSet s = genset_from_json(phi.base, ctx.input(genset_in));
  TwoCoverResult t = two_covering_from_cocycle(phi, s, ctx.budget_or(1'000'000));
  CoveringMap cover{t.total.graph, t.base_graph.graph, t.vertex_map, 2};
  ctx.result = {{"covering", covering_to_json(cover)},
                {"connected", t.connected},
                {"lifted", genset_to_json(t.lifted)},
                {"check_ok", t.check.ok},
                {"reason", t.check.reason}};
  ctx.summary = t.check.ok
                    ? std::string("double cover, ") + (t.connected ? "connected" : "two sheets")
                    : t.check.reason;
  return t.check.ok ? 0 : 1;
}

int run_vanishing_search(Ctx& ctx, const std::string& group_in, const std::string& genset_in,
                         int n) {
  GroupOracle g = group_from_json(ctx.input(group_in));
  GenSet s = genset_from_json(g, ctx.input(genset_in));
  ctx.param("n", n);
  VanishingSearch v = short_vanishing_cocycle_search(g, s, n);
  ctx.result = {{"found", v.found},
                {"solution_dim", v.solution_dim},
                {"constrained", pairs_to_json(v.constrained)}};
  if (v.found) {
    ctx.result["cocycle"] = cocycle_to_json(v.cocycle);
    ctx.result["certificate"] = pairs_to_json(v.certificate);
    ctx.summary = "non-coboundary vanishing below length " + std::to_string(n);
    return 0;
  }
  ctx.summary = "every constrained cocycle is a coboundary";
  return 1;
}

int run_build_x0(Ctx& ctx, const std::string& group_in, const std::string& t_in,
                 const std::string& subgroup_in) {
  GroupOracle h = group_from_json(ctx.input(group_in));
  GenSet t = genset_from_json(h, ctx.input(t_in));
  GenSet sub = genset_from_json(h, ctx.input(subgroup_in));
  long long budget = ctx.budget_or(1'000'000);
  Membership in_g = membership_from_gens(h, sub, budget);
  GluedGraph g = build_X0(h, t, in_g, budget);
  ctx.result = {{"glued", glued_to_json(g)}};
  ctx.summary = std::to_string(g.carrier.n) + " vertices, " +
                std::to_string(g.carrier.edge_count()) + " edges";
  return 0;
}

int run_build_xq(Ctx& ctx, const std::string& group_in, const std::string& t_in,
                 const std::string& subgroup_in, const std::string& covering_in) {
  GroupOracle h = group_from_json(ctx.input(group_in));
  GenSet t = genset_from_json(h, ctx.input(t_in));
  GenSet sub = genset_from_json(h, ctx.input(subgroup_in));
  CoveringMap q = covering_from_json(ctx.input(covering_in));
  long long budget = ctx.budget_or(1'000'000);
  Membership in_g = membership_from_gens(h, sub, budget);
  GluedGraph g = build_Xq(h, t, in_g, q, budget);
  ctx.result = {{"glued", glued_to_json(g)}};
  ctx.summary = std::to_string(g.carrier.n) + " vertices, " +
                std::to_string(g.carrier.edge_count()) + " edges";
  return 0;
}

int run_build_xtilde(Ctx& ctx, const std::string& base_in, const std::string& covering_in) {
  json bj = ctx.input(base_in);
  PartitionedBase base;
  base.X = graph_from_json(bj.at("x"));
  base.Y = graph_from_json(bj.at("y"));
  base.pieces = bj.at("pieces").get<std::vector<std::vector<int>>>();
  base.piece_isos = bj.at("piece_isos").get<std::vector<std::vector<int>>>();
  CoveringMap q = covering_from_json(ctx.input(covering_in));
  GluedGraph g = build_Xtilde(base, q);
  ctx.result = {{"glued", glued_to_json(g)}};
  ctx.summary = std::to_string(g.carrier.n) + " vertices, " +
                std::to_string(g.carrier.edge_count()) + " edges";
  return 0;
}

int run_triangle_condition(Ctx& ctx, const std::string& group_in, const std::string& t_in,
                           const std::string& s_in, const std::string& x_in,
                           const std::string& y_in) {
  TriangleCondition c;
  if (!group_in.empty()) {
    if (t_in.empty() || s_in.empty())
      throw std::invalid_argument("group form needs --t and --s");
    GroupOracle h = group_from_json(ctx.input(group_in));
    GenSet t = genset_from_json(h, ctx.input(t_in));
    GenSet s = genset_from_json(h, ctx.input(s_in));
    c = check_cayley_triangle_condition(h, t, s);
  } else if (!x_in.empty() && !y_in.empty()) {
    SimpleGraph x = graph_from_json(ctx.input(x_in));
    SimpleGraph y = graph_from_json(ctx.input(y_in));
    c = check_triangle_condition(x, y);
  } else {
    throw std::invalid_argument("pass either --group with --t/--s, or --x with --y");
  }
  ctx.result = {{"holds", c.holds}, {"lhs", c.lhs}, {"rhs", c.rhs}, {"margin", c.margin}};
  ctx.summary = "lhs " + std::to_string(c.lhs) + " vs rhs " + std::to_string(c.rhs);
  return c.holds ? 0 : 1;
}

int run_marking_genset(Ctx& ctx, const std::string& group_in, const std::string& subgroup_in,
                       const std::string& t1_in) {
  GroupOracle h = group_from_json(ctx.input(group_in));
  GenSet sub = genset_from_json(h, ctx.input(subgroup_in));
  GenSet t1 = genset_from_json(h, ctx.input(t1_in));
  long long budget = ctx.budget_or(1'000'000);
  Membership in_g = membership_from_gens(h, sub, budget);
  try {
    MarkingGensetResult r = choose_marking_genset(h, in_g, t1, budget);
    json profile = json::array();
    for (const auto& [e, count] : r.profile)
      profile.push_back(json::array({elem_to_json(e), count}));
    ctx.result = {{"t", genset_to_json(r.T)},
                  {"adjoined", elems_to_json(r.adjoined)},
                  {"max_n3", r.max_n3},
                  {"outside", r.outside},
                  {"profile", profile}};
    ctx.summary = "max N3 " + std::to_string(r.max_n3) + " < outside " +
                  std::to_string(r.outside);
    return 0;
  } catch (const budget_error&) {
    throw;
  } catch (const std::runtime_error& e) {
    ctx.result = {{"reason", e.what()}};
    ctx.summary = e.what();
    return 1;
  }
}

int run_detect_fibers(Ctx& ctx, const std::string& graph_in) {
  json j = ctx.input(graph_in);
  SimpleGraph g = graph_from_json(j);  // glued JSON is a superset of graph JSON
  VerticalDetection d = detect_vertical_relation(g);
  if (d.ok) {
    ctx.result = {{"fibers", d.fibers},
                  {"fiber_of", d.fiber_of},
                  {"vertical_edges", d.vertical_edges},
                  {"low_range", json::array({d.low_min, d.low_max})},
                  {"high_range", json::array({d.high_min, d.high_max})},
                  {"carrier_components", d.carrier_components}};
    ctx.summary = std::to_string(d.fibers.size()) + " fibers of size " +
                  std::to_string(d.fibers.empty() ? 0 : d.fibers[0].size());
    return 0;
  }
  ctx.result = {{"reason", d.reason},
                {"low_range", json::array({d.low_min, d.low_max})},
                {"high_range", json::array({d.high_min, d.high_max})}};
  ctx.summary = d.reason;
  return 1;
}

int run_admissible(Ctx& ctx, const std::string& glued_in) {
  GluedGraph g = glued_from_json(ctx.input(glued_in));
  AdmissibleAnalysis a = admissible_edge_analysis(g, ctx.budget_or(20'000'000));
  ctx.result = {{"found", a.found},
                {"none_certified", a.none_certified},
                {"edges", pairs_to_json(a.edges)},
                {"forced_components", a.forced_components},
                {"set_components", a.set_components},
                {"carrier_components", a.carrier_components},
                {"reason", a.reason}};
  ctx.summary = a.found ? "disconnecting admissible set, " +
                              std::to_string(a.set_components) + " components"
                        : a.reason;
  return a.found ? 0 : 1;
}

int run_bilipschitz(Ctx& ctx, const std::string& first_in, const std::string& second_in) {
  GluedGraph g1 = glued_from_json(ctx.input(first_in));
  GluedGraph g2 = glued_from_json(ctx.input(second_in));
  BilipschitzReport b = bilipschitz_compare(g1, g2);
  ctx.result = {{"forward", b.forward},
                {"backward", b.backward},
                {"constant", b.constant},
                {"within_two", b.within_two},
                {"map", b.map}};
  ctx.summary = "constants " + std::to_string(b.forward) + " and " + std::to_string(b.backward);
  return b.within_two ? 0 : 1;
}

int run_fox(Ctx& ctx, const std::string& pres_in) {
  PresentationData p = presentation_from_json(ctx.input(pres_in));
  FoxMatrices fm = fox_matrix(p);
  ctx.result = {{"d1", matrix_to_json(fm.d1)}, {"d2", matrix_to_json(fm.d2)}};
  if (fm.d3.has_value()) ctx.result["d3"] = matrix_to_json(*fm.d3);
  ctx.summary = "D2 is " + std::to_string(fm.d2.rows) + " x " + std::to_string(fm.d2.cols);
  return 0;
}

int run_rank(Ctx& ctx, const std::string& matrix_in, int trials) {
  LaurentMatrixGF2 m = matrix_from_json(ctx.input(matrix_in));
  ctx.param("trials", trials);
  int symbolic = rank_over_fraction_field(m);
  ctx.result = {{"rank", symbolic}};
  if (trials > 0) {
    std::vector<std::pair<std::uint16_t, int>> evaluated(static_cast<std::size_t>(trials));
    parallel_for(trials, ctx.thread_count(), [&](int i) {
      std::uint16_t t0 = static_cast<std::uint16_t>(
          2 + splitmix64(ctx.seed * 4096 + static_cast<std::uint64_t>(i)) % 65534);
      evaluated[static_cast<std::size_t>(i)] = {t0, rank_at_specialization(m, t0)};
    });
    int agreements = 0;
    json spec = json::array();
    for (const auto& [t0, r] : evaluated) {
      if (r > symbolic) throw std::logic_error("specialization exceeded the symbolic rank");
      if (r == symbolic) ++agreements;
      spec.push_back(json::array({t0, r}));
    }
    ctx.result["specializations"] = std::move(spec);
    ctx.result["agreements"] = agreements;
  }
  ctx.summary = "rank " + std::to_string(symbolic);
  return 0;
}

int run_betti_bound(Ctx& ctx, const std::string& pres_in) {
  PresentationData p = presentation_from_json(ctx.input(pres_in));
  BettiBound b = betti_bound(p);
  ctx.result = {{"n", b.n},
                {"bound", b.bound},
                {"certificate", b.infinite_h2_certificate},
                {"satisfied", b.satisfied},
                {"rank_d2", b.rank_d2},
                {"rank_d3", b.rank_d3}};
  ctx.summary = "n = " + std::to_string(b.n) + ", bound = " + std::to_string(b.bound);
  return b.infinite_h2_certificate ? 0 : 1;
}

int run_product_counts(Ctx& ctx, const std::vector<long long>& type_counts,
                       const std::vector<long long>& genus) {
  if (type_counts.empty() && genus.empty())
    throw std::invalid_argument("pass --type p1 q1 p2 q2 and/or --genus g1 g2");
  if (!type_counts.empty()) {
    if (type_counts.size() != 4) throw std::invalid_argument("--type needs p1 q1 p2 q2");
    for (std::size_t i = 0; i < 4; ++i) ctx.param("type" + std::to_string(i), type_counts[i]);
    ProductTypeCounts c =
        product_presentation_counts(type_counts[0], type_counts[1], type_counts[2], type_counts[3]);
    ctx.result["product"] = {{"p", c.p},
                             {"q", c.q},
                             {"r", c.r},
                             {"margin", c.margin},
                             {"formula_margin", c.formula_margin},
                             {"formula_matches", c.formula_matches}};
    ctx.summary = "(" + std::to_string(c.p) + ", " + std::to_string(c.q) + ", " +
                  std::to_string(c.r) + ")";
  }
  if (!genus.empty()) {
    if (genus.size() != 2) throw std::invalid_argument("--genus needs g1 g2");
    ctx.param("g1", genus[0]);
    ctx.param("g2", genus[1]);
    SurfaceProductCounts s = surface_product_counts(genus[0], genus[1]);
    ctx.result["surface"] = {{"p", s.p}, {"q", s.q}, {"r", s.r}, {"margin", s.margin}};
    if (!ctx.summary.empty()) ctx.summary += "; ";
    ctx.summary += "surface margin " + std::to_string(s.margin);
  }
  return 0;
}

}  // namespace

int main(int argc, char** argv) {
  CLI::App app{"local-to-global graph comparison toolkit: balls and local "
               "models, k-cell covers, covering propagation, triangle-profile "
               "generating sets, Z/2 cocycle double covers, glued carriers, "
               "and Fox-calculus homology bounds"};
  app.require_subcommand(1);

  Ctx ctx;
  app.add_option("--budget", ctx.budget, "search budget override (0 = per-operation default)");
  app.add_option("--seed", ctx.seed, "seed for randomized diagnostics");
  app.add_option("--json-out", ctx.json_out, "write a machine-readable run report here");
  app.add_flag("--quiet", ctx.quiet, "suppress the human summary");
  app.add_option("--threads", ctx.threads, "worker threads (0 = hardware concurrency)");

  std::function<int()> pending;
  auto sub = [&](const char* name, const char* desc) {
    CLI::App* s = app.add_subcommand(name, desc);
    s->fallthrough();
    return s;
  };
  auto arm = [&](CLI::App* s, std::function<int()> fn) {
    s->callback([&pending, fn, &ctx, s] {
      ctx.subcommand = s->get_name();
      pending = fn;
    });
  };

  {
    auto o = std::make_shared<std::tuple<std::string, int, int>>("", 0, 0);
    auto* s = sub("ball", "radius ball of a graph around a center vertex");
    s->add_option("--graph", std::get<0>(*o), "graph JSON (inline, file, or -)")->required();
    s->add_option("--center", std::get<1>(*o), "center vertex")->required();
    s->add_option("--radius", std::get<2>(*o), "ball radius")->required();
    arm(s, [&ctx, o] { return run_ball(ctx, std::get<0>(*o), std::get<1>(*o), std::get<2>(*o)); });
  }
  {
    auto o = std::make_shared<std::tuple<std::string, std::string, int>>("", "", 0);
    auto* s = sub("is-r-locally", "do all balls of a graph match balls of a model graph");
    s->add_option("--graph", std::get<0>(*o), "graph JSON to test")->required();
    s->add_option("--model", std::get<1>(*o), "model graph JSON")->required();
    s->add_option("--radius", std::get<2>(*o), "comparison radius")->required();
    arm(s, [&ctx, o] {
      return run_is_r_locally(ctx, std::get<0>(*o), std::get<1>(*o), std::get<2>(*o));
    });
  }
  {
    auto o = std::make_shared<std::pair<std::string, bool>>("", false);
    auto* s = sub("aut", "automorphism group order, orbits, and generators");
    s->add_option("--graph", o->first, "graph JSON")->required();
    s->add_flag("--respect-labels", o->second, "restrict to label-preserving maps");
    arm(s, [&ctx, o] { return run_aut(ctx, o->first, o->second); });
  }
  {
    auto o = std::make_shared<std::tuple<std::string, int, int, int>>("", 0, 0, 0);
    auto* s = sub("k-cover", "ball of the universal cover of the k-cell complex");
    s->add_option("--graph", std::get<0>(*o), "graph JSON")->required();
    s->add_option("--base", std::get<1>(*o), "base vertex")->required();
    s->add_option("--k", std::get<2>(*o), "cell length bound")->required();
    s->add_option("--radius", std::get<3>(*o), "cover ball radius")->required();
    arm(s, [&ctx, o] {
      return run_k_cover(ctx, std::get<0>(*o), std::get<1>(*o), std::get<2>(*o), std::get<3>(*o));
    });
  }
  {
    auto o = std::make_shared<std::pair<std::string, int>>("", 0);
    auto* s = sub("k-simply-connected", "does the k-cell cover fold back onto the graph");
    s->add_option("--graph", o->first, "graph JSON")->required();
    s->add_option("--k", o->second, "cell length bound")->required();
    arm(s, [&ctx, o] { return run_k_simply_connected(ctx, o->first, o->second); });
  }
  {
    auto o = std::make_shared<std::tuple<std::string, int, int>>("", 0, 0);
    auto* s = sub("fill-radius", "least radius filling all short loops through k-cells");
    s->add_option("--graph", std::get<0>(*o), "graph JSON")->required();
    s->add_option("--k", std::get<1>(*o), "cell length bound")->required();
    s->add_option("--r1", std::get<2>(*o), "loop radius")->required();
    arm(s, [&ctx, o] {
      return run_fill_radius(ctx, std::get<0>(*o), std::get<1>(*o), std::get<2>(*o));
    });
  }
  {
    auto o = std::make_shared<std::string>();
    auto* s = sub("verify-covering", "star-bijectivity check of a vertex map");
    s->add_option("--covering", *o, "covering JSON")->required();
    arm(s, [&ctx, o] { return run_verify_covering(ctx, *o); });
  }
  {
    auto o = std::make_shared<std::pair<std::string, int>>("", 0);
    auto* s = sub("extension-radius", "radius at which ball isometries extend to automorphisms");
    s->add_option("--graph", o->first, "graph JSON")->required();
    s->add_option("--r", o->second, "inner radius")->required();
    arm(s, [&ctx, o] { return run_extension_radius(ctx, o->first, o->second); });
  }
  {
    struct PropOpts {
      std::string model, target, seed;
      int x0 = 0;
      PropagationParams params;
    };
    auto o = std::make_shared<PropOpts>();
    auto* s = sub("propagate", "extend a seed ball isometry to a covering by germ transport");
    s->add_option("--model", o->model, "model graph JSON (the cover side)")->required();
    s->add_option("--target", o->target, "target graph JSON")->required();
    s->add_option("--seed-map", o->seed, "seed vertex map JSON (pairs or object)")->required();
    s->add_option("--x0", o->x0, "seed center")->required();
    s->add_option("--k", o->params.k, "cell length bound (default 4)");
    s->add_option("--rc", o->params.rc, "agreement radius (-1 = derive)");
    s->add_option("--r1", o->params.r1, "germ radius (-1 = derive)");
    s->add_option("--r2", o->params.r2, "witness radius (-1 = derive)");
    s->add_flag("--assume-simply-connected", o->params.assume_simply_connected,
                "skip the simple-connectivity gate");
    arm(s, [&ctx, o] {
      return run_propagate(ctx, o->model, o->target, o->seed, o->x0, o->params);
    });
  }
  {
    auto o = std::make_shared<std::string>();
    auto* s = sub("deck", "deck transformations, freeness, and the quotient of a covering");
    s->add_option("--covering", *o, "covering JSON")->required();
    arm(s, [&ctx, o] { return run_deck(ctx, *o); });
  }
  {
    struct RfOpts {
      std::string group, genset, target, elements;
      int n = 0, k = 4;
    };
    auto o = std::make_shared<RfOpts>();
    auto* s = sub("rf-probe", "transport right translations through a propagated covering");
    s->add_option("--group", o->group, "group spec JSON")->required();
    s->add_option("--genset", o->genset, "generating set JSON")->required();
    s->add_option("--target", o->target, "target graph JSON")->required();
    s->add_option("--n", o->n, "Cayley ball radius")->required();
    s->add_option("--elements", o->elements, "elements JSON to probe")->required();
    s->add_option("--k", o->k, "cell length bound (default 4)");
    arm(s, [&ctx, o] {
      return run_rf_probe(ctx, o->group, o->genset, o->target, o->n, o->elements, o->k);
    });
  }
  {
    struct TreeOpts {
      std::string graph, decomp, target, seed;
      int x0 = 0, r = 0, r2 = 0;
    };
    auto o = std::make_shared<TreeOpts>();
    auto* s = sub("tree-extend", "extend a seed covering along a tree decomposition");
    s->add_option("--graph", o->graph, "graph JSON")->required();
    s->add_option("--decomposition", o->decomp, "{tree, pieces, r1} JSON")->required();
    s->add_option("--target", o->target, "target graph JSON")->required();
    s->add_option("--seed-map", o->seed, "seed vertex map JSON")->required();
    s->add_option("--x0", o->x0, "seed center")->required();
    s->add_option("--r", o->r, "piece radius")->required();
    s->add_option("--r2", o->r2, "witness radius")->required();
    arm(s, [&ctx, o] {
      return run_tree_extend(ctx, o->graph, o->decomp, o->target, o->seed, o->x0, o->r, o->r2);
    });
  }
  {
    auto o = std::make_shared<std::pair<std::string, std::string>>();
    auto* s = sub("n3", "per-generator triangle counts of a Cayley graph");
    s->add_option("--group", o->first, "group spec JSON")->required();
    s->add_option("--genset", o->second, "generating set JSON")->required();
    arm(s, [&ctx, o] { return run_n3(ctx, o->first, o->second); });
  }
  {
    struct AugOpts {
      std::string group, genset, s0, gamma;
      int bound = 512;
    };
    auto o = std::make_shared<AugOpts>();
    auto* s = sub("augment", "one triangle-profile augmentation step");
    s->add_option("--group", o->group, "group spec JSON")->required();
    s->add_option("--genset", o->genset, "generating set JSON")->required();
    s->add_option("--s0", o->s0, "generator to single out (element JSON)")->required();
    s->add_option("--gamma", o->gamma, "infinite-order element JSON")->required();
    s->add_option("--search-bound", o->bound, "largest exponent tried (default 512)");
    arm(s, [&ctx, o] {
      return run_augment(ctx, o->group, o->genset, o->s0, o->gamma, o->bound);
    });
  }
  {
    struct DgOpts {
      std::string group, genset, gamma;
      int bound = 512, max_aug = 500;
    };
    auto o = std::make_shared<DgOpts>();
    auto* s = sub("discrete-genset", "augment until triangle counts separate the seed pairs");
    s->add_option("--group", o->group, "group spec JSON")->required();
    s->add_option("--genset", o->genset, "seed generating set JSON")->required();
    s->add_option("--gamma", o->gamma, "infinite-order element JSON")->required();
    s->add_option("--search-bound", o->bound, "per-step exponent bound (default 512)");
    s->add_option("--max-augmentations", o->max_aug, "step cap (default 500)");
    arm(s, [&ctx, o] {
      return run_discrete_genset(ctx, o->group, o->genset, o->gamma, o->bound, o->max_aug);
    });
  }
  {
    auto o = std::make_shared<std::pair<std::string, std::string>>();
    auto* s = sub("padded-genset", "pad by coprime cyclic factors until fibers are max cliques");
    s->add_option("--group", o->first, "group spec JSON")->required();
    s->add_option("--genset", o->second, "generating set JSON")->required();
    arm(s, [&ctx, o] { return run_padded_genset(ctx, o->first, o->second); });
  }
  {
    auto o = std::make_shared<std::string>();
    auto* s = sub("cocycle-validate", "exhaustive 2-cocycle identity check");
    s->add_option("--cocycle", *o, "cocycle JSON")->required();
    arm(s, [&ctx, o] { return run_cocycle_validate(ctx, *o); });
  }
  {
    auto o = std::make_shared<std::string>();
    auto* s = sub("coboundary", "is the cocycle a coboundary (GF(2) solve)");
    s->add_option("--cocycle", *o, "cocycle JSON")->required();
    arm(s, [&ctx, o] { return run_coboundary(ctx, *o); });
  }
  {
    auto o = std::make_shared<std::string>();
    auto* s = sub("central-ext", "central extension by Z/2 along the cocycle");
    s->add_option("--cocycle", *o, "cocycle JSON")->required();
    arm(s, [&ctx, o] { return run_central_ext(ctx, *o); });
  }
  {
    auto o = std::make_shared<std::pair<std::string, std::string>>();
    auto* s = sub("two-cover", "double cover of a Cayley graph from a Z/2 cocycle");
    s->add_option("--cocycle", o->first, "cocycle JSON")->required();
    s->add_option("--genset", o->second, "generating set JSON")->required();
    arm(s, [&ctx, o] { return run_two_cover(ctx, o->first, o->second); });
  }
  {
    auto o = std::make_shared<std::tuple<std::string, std::string, int>>("", "", 0);
    auto* s = sub("vanishing-search", "non-coboundary cocycle vanishing on short pairs");
    s->add_option("--group", std::get<0>(*o), "group spec JSON")->required();
    s->add_option("--genset", std::get<1>(*o), "generating set JSON")->required();
    s->add_option("--n", std::get<2>(*o), "length threshold")->required();
    arm(s, [&ctx, o] {
      return run_vanishing_search(ctx, std::get<0>(*o), std::get<1>(*o), std::get<2>(*o));
    });
  }
  {
    auto o = std::make_shared<std::tuple<std::string, std::string, std::string>>();
    auto* s = sub("build-x0", "trivial-gluing carrier over a Cayley graph");
    s->add_option("--group", std::get<0>(*o), "carrier group spec JSON")->required();
    s->add_option("--t", std::get<1>(*o), "full generating set JSON")->required();
    s->add_option("--subgroup-gens", std::get<2>(*o), "generators of the membership subgroup")
        ->required();
    arm(s, [&ctx, o] {
      return run_build_x0(ctx, std::get<0>(*o), std::get<1>(*o), std::get<2>(*o));
    });
  }
  {
    auto o = std::make_shared<std::tuple<std::string, std::string, std::string, std::string>>();
    auto* s = sub("build-xq", "glued carrier twisted by a double cover of the piece graph");
    s->add_option("--group", std::get<0>(*o), "carrier group spec JSON")->required();
    s->add_option("--t", std::get<1>(*o), "full generating set JSON")->required();
    s->add_option("--subgroup-gens", std::get<2>(*o), "generators of the membership subgroup")
        ->required();
    s->add_option("--covering", std::get<3>(*o), "double cover JSON of the piece graph")
        ->required();
    arm(s, [&ctx, o] {
      return run_build_xq(ctx, std::get<0>(*o), std::get<1>(*o), std::get<2>(*o),
                          std::get<3>(*o));
    });
  }
  {
    auto o = std::make_shared<std::pair<std::string, std::string>>();
    auto* s = sub("build-xtilde", "glued carrier over an explicitly partitioned base");
    s->add_option("--base", o->first, "{x, y, pieces, piece_isos} JSON")->required();
    s->add_option("--covering", o->second, "double cover JSON of the piece model")->required();
    arm(s, [&ctx, o] { return run_build_xtilde(ctx, o->first, o->second); });
  }
  {
    struct TcOpts {
      std::string group, t, s, x, y;
    };
    auto o = std::make_shared<TcOpts>();
    auto* s = sub("triangle-condition", "edge-triangle bound that separates the vertical class");
    s->add_option("--group", o->group, "carrier group spec JSON (with --t and --s)");
    s->add_option("--t", o->t, "full generating set JSON");
    s->add_option("--s", o->s, "piece generating set JSON");
    s->add_option("--x", o->x, "carrier graph JSON (with --y)");
    s->add_option("--y", o->y, "piece graph JSON");
    arm(s, [&ctx, o] {
      return run_triangle_condition(ctx, o->group, o->t, o->s, o->x, o->y);
    });
  }
  {
    auto o = std::make_shared<std::tuple<std::string, std::string, std::string>>();
    auto* s = sub("marking-genset", "enlarge a generating set until outside degree marks it");
    s->add_option("--group", std::get<0>(*o), "carrier group spec JSON")->required();
    s->add_option("--subgroup-gens", std::get<1>(*o), "generators of the membership subgroup")
        ->required();
    s->add_option("--t1", std::get<2>(*o), "seed generating set JSON")->required();
    arm(s, [&ctx, o] {
      return run_marking_genset(ctx, std::get<0>(*o), std::get<1>(*o), std::get<2>(*o));
    });
  }
  {
    auto o = std::make_shared<std::string>();
    auto* s = sub("detect-fibers", "blind fiber detection from edge triangle counts");
    s->add_option("--graph", *o, "graph or glued-graph JSON")->required();
    arm(s, [&ctx, o] { return run_detect_fibers(ctx, *o); });
  }
  {
    auto o = std::make_shared<std::string>();
    auto* s = sub("admissible", "disconnecting admissible edge set, or a certificate of none");
    s->add_option("--glued", *o, "glued graph JSON")->required();
    arm(s, [&ctx, o] { return run_admissible(ctx, *o); });
  }
  {
    auto o = std::make_shared<std::pair<std::string, std::string>>();
    auto* s = sub("bilipschitz", "fiber-respecting bilipschitz constants of two glued graphs");
    s->add_option("--first", o->first, "glued graph JSON")->required();
    s->add_option("--second", o->second, "glued graph JSON")->required();
    arm(s, [&ctx, o] { return run_bilipschitz(ctx, o->first, o->second); });
  }
  {
    auto o = std::make_shared<std::string>();
    auto* s = sub("fox", "specialized Fox boundary matrices of a presentation");
    s->add_option("--presentation", *o, "presentation JSON")->required();
    arm(s, [&ctx, o] { return run_fox(ctx, *o); });
  }
  {
    auto o = std::make_shared<std::pair<std::string, int>>("", 0);
    auto* s = sub("rank", "exact rank over GF(2)(t), with GF(2^16) spot checks");
    s->add_option("--matrix", o->first, "Laurent matrix JSON")->required();
    s->add_option("--trials", o->second, "specialization trial count (default 0)");
    arm(s, [&ctx, o] { return run_rank(ctx, o->first, o->second); });
  }
  {
    auto o = std::make_shared<std::string>();
    auto* s = sub("betti-bound", "kernel H2 lower bound from the Fox matrices");
    s->add_option("--presentation", *o, "presentation JSON")->required();
    arm(s, [&ctx, o] { return run_betti_bound(ctx, *o); });
  }
  {
    auto o = std::make_shared<std::pair<std::vector<long long>, std::vector<long long>>>();
    auto* s = sub("product-counts", "cell counts and margins of product complexes");
    s->add_option("--type", o->first, "p1 q1 p2 q2 of the two presentation complexes")
        ->expected(4);
    s->add_option("--genus", o->second, "g1 g2 of two closed surfaces")->expected(2);
    arm(s, [&ctx, o] { return run_product_counts(ctx, o->first, o->second); });
  }

  try {
    app.parse(argc, argv);
  } catch (const CLI::CallForHelp& e) {
    return app.exit(e);
  } catch (const CLI::ParseError& e) {
    app.exit(e);
    return 2;
  }

  auto start = std::chrono::steady_clock::now();
  int rc;
  try {
    rc = pending();
  } catch (const budget_error& e) {
    std::cerr << "budget: " << e.what() << "\n";
    ctx.result = {{"error", e.what()}};
    ctx.summary = e.what();
    rc = 2;
  } catch (const std::exception& e) {
    std::cerr << "error: " << e.what() << "\n";
    ctx.result = {{"error", e.what()}};
    ctx.summary = e.what();
    rc = 2;
  }
  double ms = std::chrono::duration<double, std::milli>(std::chrono::steady_clock::now() - start)
                  .count();
  finish(ctx, rc, ms);
  return rc;
}
