#include "lgr/rigidity.hpp"

#include <algorithm>
#include <map>
#include <queue>
#include <set>

#include "lgr/complexes.hpp"

namespace lgr {

// --- covering verification ----------------------------------------------------

CoveringCheck verify_covering(const SimpleGraph& source, const SimpleGraph& target,
                              const std::vector<int>& vertex_map,
                              const std::vector<int>& interior, long long budget) {
  if (static_cast<int>(vertex_map.size()) != source.n)
    throw std::invalid_argument("verify_covering: map size mismatch");
  for (int v : vertex_map) target.check_vertex(v);
  BudgetCounter bc(budget);

  CoveringCheck out;
  std::vector<char> check_star(source.n, interior.empty() ? 1 : 0);
  for (int v : interior) {
    source.check_vertex(v);
    check_star[v] = 1;
  }

  for (int z = 0; z < source.n; ++z) {
    bc.tick("covering check");
    std::set<int> images;
    for (int w : source.adj[z]) {
      if (vertex_map[z] == vertex_map[w] || !target.has_edge(vertex_map[z], vertex_map[w])) {
        out.failing_vertex = z;
        out.reason = "edge image is not an edge";
        return out;
      }
      images.insert(vertex_map[w]);
    }
    if (!check_star[z]) continue;
    if (static_cast<int>(images.size()) != source.degree(z)) {
      out.failing_vertex = z;
      out.reason = "star is not injective";
      return out;
    }
    if (static_cast<int>(images.size()) != target.degree(vertex_map[z])) {
      out.failing_vertex = z;
      out.reason = "star does not cover the image star";
      return out;
    }
  }

  // Injectivity radius: smallest ball containing two vertices with the same
  // image, minus one; the diameter when the map is globally injective.
  int diam = diameter(source);
  int inj = diam;
  for (int z = 0; z < source.n; ++z) {
    std::vector<int> d = bfs_dist(source, z);
    std::vector<std::pair<int, int>> by_dist;
    for (int v = 0; v < source.n; ++v)
      if (d[v] >= 0) by_dist.push_back({d[v], v});
    std::sort(by_dist.begin(), by_dist.end());
    std::set<int> seen;
    for (auto [dist, v] : by_dist) {
      bc.tick("injectivity radius");
      if (dist > inj) break;  // a larger collision radius cannot lower the minimum
      if (!seen.insert(vertex_map[v]).second) {
        inj = std::min(inj, dist - 1);
        break;
      }
    }
  }

  out.ok = true;
  out.injectivity_radius = inj;
  out.map.source = source;
  out.map.target = target;
  out.map.vertex_map = vertex_map;
  std::vector<int> fiber(target.n, 0);
  for (int z = 0; z < source.n; ++z) ++fiber[vertex_map[z]];
  if (std::count(fiber.begin(), fiber.end(), fiber[0]) == target.n) out.map.fiber_size = fiber[0];
  return out;
}

// --- extension radius -----------------------------------------------------------

namespace {

// All automorphisms as explicit vertex maps; throws budget_error when the
// group is too large to enumerate.
std::vector<std::vector<int>> all_automorphisms(const SimpleGraph& X, long long budget) {
  AutGroup a = automorphism_group(X, false, budget);
  return closure_of_permutations(a.generators, X.n, 2'000'000);
}

}  // namespace

ExtensionRadiusResult extension_radius(const SimpleGraph& X, int r, long long budget) {
  if (r < 0) throw std::invalid_argument("negative radius");
  BudgetCounter bc(budget);
  std::vector<std::vector<int>> autos = all_automorphisms(X, budget);
  int diam = diameter(X);

  for (int r2 = r; r2 <= diam; ++r2) {
    std::vector<BallView> balls;
    balls.reserve(X.n);
    for (int v = 0; v < X.n; ++v) balls.push_back(ball(X, v, r2));
    bool works = true;
    for (int x = 0; x < X.n && works; ++x) {
      BallView inner = ball(X, x, r);
      // Signatures of automorphism restrictions to B(x,r).
      std::set<std::vector<int>> extendable;
      for (const auto& a : autos) {
        std::vector<int> sig;
        sig.reserve(inner.orig.size());
        for (int v : inner.orig) sig.push_back(a[v]);
        extendable.insert(std::move(sig));
      }
      std::vector<int> carrier_id(X.n, -1);
      for (int i = 0; i < balls[x].carrier.n; ++i) carrier_id[balls[x].orig[i]] = i;
      for (int y = 0; y < X.n && works; ++y) {
        if (balls[y].carrier.n != balls[x].carrier.n) continue;
        IsoConstraints c;
        c.pins = {{balls[x].root, balls[y].root}};
        enumerate_isomorphisms(balls[x].carrier, balls[y].carrier, c, bc,
                               [&](const std::vector<int>& m) {
                                 std::vector<int> sig;
                                 sig.reserve(inner.orig.size());
                                 for (int v : inner.orig)
                                   sig.push_back(balls[y].orig[m[carrier_id[v]]]);
                                 if (!extendable.count(sig)) {
                                   works = false;
                                   return false;
                                 }
                                 return true;
                               });
      }
    }
    if (works) return {true, r2};
  }
  return {false, -1};
}

int stabilizer_radius(const SimpleGraph& X, long long budget) {
  int diam = diameter(X);
  try {
    std::vector<std::vector<int>> autos = all_automorphisms(X, budget);
    for (int r = 0; r <= diam; ++r) {
      bool trivial = true;
      for (int v = 0; v < X.n && trivial; ++v) {
        BallView b = ball(X, v, r);
        for (const auto& a : autos) {
          bool fixes_ball = true;
          for (int u : b.orig)
            if (a[u] != u) {
              fixes_ball = false;
              break;
            }
          if (!fixes_ball) continue;
          bool is_id = true;
          for (int u = 0; u < X.n; ++u)
            if (a[u] != u) {
              is_id = false;
              break;
            }
          if (!is_id) {
            trivial = false;
            break;
          }
        }
      }
      if (trivial) return r;
    }
  } catch (const budget_error&) {
    // Group too large to enumerate: fall back to per-vertex stabilizer probes.
    for (int r = 0; r <= diam; ++r) {
      bool trivial = true;
      for (int v = 0; v < X.n && trivial; ++v)
        if (local_stabilizer_probe(X, v, r, false, budget) != 1) trivial = false;
      if (trivial) return r;
    }
  }
  return -1;
}

// --- germs ---------------------------------------------------------------------

int Germ::image_of(int x) const {
  auto it = std::lower_bound(map.begin(), map.end(), std::make_pair(x, -1));
  if (it == map.end() || it->first != x)
    throw std::invalid_argument("vertex outside the germ radius");
  return it->second;
}

namespace {

// All germs at x whose center maps to y, via rooted isometries of r2-balls.
std::vector<Germ> germs_between(const SimpleGraph& X, const SimpleGraph& Y, int x, int y,
                                int r1, int r2, BudgetCounter& bc) {
  BallView A = ball(X, x, r2);
  BallView B = ball(Y, y, r2);
  std::vector<Germ> out;
  if (A.carrier.n != B.carrier.n) return out;
  std::set<std::vector<std::pair<int, int>>> seen;
  IsoConstraints c;
  c.pins = {{A.root, B.root}};
  enumerate_isomorphisms(A.carrier, B.carrier, c, bc, [&](const std::vector<int>& m) {
    Germ g;
    g.center = x;
    g.r1 = r1;
    g.r2 = r2;
    for (int i = 0; i < A.carrier.n; ++i) {
      g.witness.push_back({A.orig[i], B.orig[m[i]]});
      if (A.root_dist[i] <= r1) g.map.push_back({A.orig[i], B.orig[m[i]]});
    }
    std::sort(g.map.begin(), g.map.end());
    std::sort(g.witness.begin(), g.witness.end());
    if (seen.insert(g.map).second) out.push_back(std::move(g));
    return true;
  });
  return out;
}

TransportResult transport_impl(const SimpleGraph& X, const SimpleGraph& Y, const Germ& g,
                               int xp, int rc, BudgetCounter& bc) {
  if (rc > g.r1) throw std::invalid_argument("transport agreement radius exceeds germ radius");
  int y = g.image_of(xp);  // throws when xp is farther than r1 from the center
  BallView small = ball(X, xp, rc);
  TransportResult res;
  for (Germ& cand : germs_between(X, Y, xp, y, g.r1, g.r2, bc)) {
    bool agrees = true;
    for (int v : small.orig)
      if (g.image_of(v) != cand.image_of(v)) {
        agrees = false;
        break;
      }
    if (agrees) {
      ++res.candidates;
      if (res.candidates == 1) res.germ = std::move(cand);
    }
  }
  res.ok = res.candidates == 1;
  return res;
}

}  // namespace

std::vector<Germ> germ_set(const SimpleGraph& X, const SimpleGraph& Y, int x, int r1, int r2,
                           long long budget) {
  if (r1 > r2 || r1 < 0) throw std::invalid_argument("germ radii must satisfy 0 <= r1 <= r2");
  X.check_vertex(x);
  BudgetCounter bc(budget);
  std::vector<Germ> out;
  for (int y = 0; y < Y.n; ++y)
    for (Germ& g : germs_between(X, Y, x, y, r1, r2, bc)) out.push_back(std::move(g));
  return out;
}

TransportResult transport_germ(const SimpleGraph& X, const SimpleGraph& Y, const Germ& g,
                               int xp, int rc, long long budget) {
  BudgetCounter bc(budget);
  return transport_impl(X, Y, g, xp, rc, bc);
}

// --- propagation -----------------------------------------------------------------

namespace {

// Checks the seed covers B(x0, needed) and restricts there to a rooted ball
// isometry. Extra keys beyond the needed radius are permitted and unused;
// they need not stay injective (the target may be smaller at larger scales).
std::string validate_seed(const SimpleGraph& X, const SimpleGraph& Y,
                          const std::map<int, int>& seed, int x0, int needed) {
  if (!seed.count(x0)) return "seed does not contain its own center";
  for (auto [v, y] : seed) {
    if (v < 0 || v >= X.n) return "seed key is not a vertex";
    Y.check_vertex(y);
  }
  BallView A = ball(X, x0, needed);
  for (int v : A.orig)
    if (!seed.count(v)) return "seed does not cover the needed ball";

  BallView B = ball(Y, seed.at(x0), needed);
  if (A.carrier.n != B.carrier.n) return "seed is not a rooted ball isometry";
  std::map<int, int> b_id;
  for (int i = 0; i < B.carrier.n; ++i) b_id[B.orig[i]] = i;
  std::vector<int> m(A.carrier.n, -1);
  std::vector<char> hit(B.carrier.n, 0);
  for (int i = 0; i < A.carrier.n; ++i) {
    auto it = b_id.find(seed.at(A.orig[i]));
    if (it == b_id.end() || hit[it->second]) return "seed is not a rooted ball isometry";
    hit[it->second] = 1;
    m[i] = it->second;
  }
  int mapped_edges = 0;
  for (auto [u, v] : A.carrier.edges) {
    if (!B.carrier.has_edge(m[u], m[v])) return "seed is not a rooted ball isometry";
    ++mapped_edges;
  }
  if (mapped_edges != B.carrier.edge_count()) return "seed is not a rooted ball isometry";
  return "";
}

}  // namespace

PropagationResult propagate_covering(const SimpleGraph& X, const SimpleGraph& Y,
                                     const std::map<int, int>& seed, int x0,
                                     const PropagationParams& params) {
  X.check_vertex(x0);
  PropagationResult res;
  if (params.k < 1) {
    res.reason = "cell length bound must be at least 1";
    return res;
  }
  BudgetCounter bc(params.budget);

  int t = std::max(1, (params.k + 1) / 2);
  int rc = params.rc >= 0 ? params.rc : stabilizer_radius(X, params.budget);
  if (rc < 0) {
    res.reason = "no radius with trivial pointwise ball stabilizers";
    return res;
  }
  int r1 = params.r1 >= 0 ? params.r1 : rc + t;
  int r2 = params.r2 >= 0 ? params.r2 : r1;
  if (r1 < rc || r2 < r1) {
    res.reason = "radii must satisfy rc <= r1 <= r2";
    return res;
  }

  if (!params.assume_simply_connected) {
    SimplyConnectedReport rep = is_k_simply_connected(X, params.k, params.budget);
    if (rep.verdict != Verdict3::yes) {
      res.reason = rep.verdict == Verdict3::no
                       ? "X is not k-simply connected for this k"
                       : "could not certify that X is k-simply connected";
      return res;
    }
  }

  std::vector<int> domain = params.domain;
  if (domain.empty()) {
    domain.resize(X.n);
    for (int v = 0; v < X.n; ++v) domain[v] = v;
  } else {
    std::sort(domain.begin(), domain.end());
    domain.erase(std::unique(domain.begin(), domain.end()), domain.end());
    for (int v : domain) X.check_vertex(v);
  }
  std::vector<char> in_domain(X.n, 0);
  for (int v : domain) in_domain[v] = 1;
  if (!in_domain[x0]) {
    res.reason = "domain does not contain the seed center";
    return res;
  }

  std::string err = validate_seed(X, Y, seed, x0, r2);
  if (!err.empty()) {
    res.reason = err;
    return res;
  }

  // Seed germ at x0: the seed restricted to the germ and witness balls.
  std::vector<Germ> phi(X.n);
  {
    Germ g;
    g.center = x0;
    g.r1 = r1;
    g.r2 = r2;
    for (int v : ball(X, x0, r1).orig) g.map.push_back({v, seed.at(v)});
    for (int v : ball(X, x0, r2).orig) g.witness.push_back({v, seed.at(v)});
    phi[x0] = std::move(g);
  }

  // Germ transport along a BFS tree of the domain.
  std::vector<int> parent(X.n, -2);
  parent[x0] = -1;
  std::vector<int> order = {x0};
  std::queue<int> q;
  q.push(x0);
  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : X.adj[u]) {
      if (!in_domain[v] || parent[v] != -2) continue;
      parent[v] = u;
      order.push_back(v);
      q.push(v);
      TransportResult tr = transport_impl(X, Y, phi[u], v, rc, bc);
      if (!tr.ok) {
        res.reason = "germ transport failed at vertex " + std::to_string(v) + " (" +
                     std::to_string(tr.candidates) + " candidates)";
        return res;
      }
      phi[v] = std::move(tr.germ);
    }
  }
  for (int v : domain)
    if (parent[v] == -2) {
      res.reason = "domain is not connected";
      return res;
    }

  // Every non-tree edge must close: transporting across it reproduces the
  // germ found along the tree.
  auto path_to_root = [&](int v) {
    std::vector<int> p;
    for (int u = v; u >= 0; u = parent[u]) p.push_back(u);
    return p;  // v .. x0
  };
  for (int u : order) {
    for (int v : X.adj[u]) {
      if (!in_domain[v] || v == parent[u] || u == parent[v] || v < u) continue;
      TransportResult tr = transport_impl(X, Y, phi[u], v, rc, bc);
      if (tr.ok && tr.germ == phi[v]) continue;
      std::vector<int> up = path_to_root(u);
      std::reverse(up.begin(), up.end());
      std::vector<int> down = path_to_root(v);
      res.obstruction_loop = up;
      for (int w : down) res.obstruction_loop.push_back(w);
      res.reason = "germ transport around a loop is inconsistent";
      return res;
    }
  }

  // Assemble pi(x) = phi_x(x) on the induced domain graph and verify.
  SimpleGraph sub = induced_subgraph(X, domain);
  std::vector<int> pi(domain.size());
  for (size_t i = 0; i < domain.size(); ++i) pi[i] = phi[domain[i]].image_of(domain[i]);
  std::vector<int> interior;
  for (size_t i = 0; i < domain.size(); ++i) {
    bool full = true;
    for (int w : X.adj[domain[i]])
      if (!in_domain[w]) {
        full = false;
        break;
      }
    if (full) interior.push_back(static_cast<int>(i));
  }
  CoveringCheck check =
      verify_covering(sub, Y, pi,
                      static_cast<int>(interior.size()) == sub.n ? std::vector<int>{} : interior,
                      params.budget);
  if (!check.ok) {
    res.reason = "propagated map is not a covering: " + check.reason + " at vertex " +
                 std::to_string(domain[check.failing_vertex]);
    return res;
  }
  res.ok = true;
  res.cover = std::move(check.map);
  res.domain_vertices = std::move(domain);
  return res;
}

// --- deck group -------------------------------------------------------------------

DeckResult deck_quotient(const CoveringMap& p, long long budget) {
  DeckResult out;
  std::vector<std::vector<int>> autos = all_automorphisms(p.source, budget);
  for (const auto& h : autos) {
    bool commutes = true;
    for (int z = 0; z < p.source.n && commutes; ++z)
      if (p.vertex_map[h[z]] != p.vertex_map[z]) commutes = false;
    if (commutes) out.elements.push_back(h);
  }
  std::sort(out.elements.begin(), out.elements.end());
  out.order = out.elements.size();

  out.free = true;
  for (const auto& h : out.elements) {
    bool is_id = true, has_fix = false;
    for (int z = 0; z < p.source.n; ++z) {
      if (h[z] != z) is_id = false;
      if (h[z] == z) has_fix = true;
    }
    if (!is_id && has_fix) out.free = false;
  }
  if (!out.free) {
    out.reason = "deck group does not act freely";
    return out;
  }

  // Quotient by the orbit partition.
  std::vector<int> rep(p.source.n);
  for (int v = 0; v < p.source.n; ++v) rep[v] = v;
  for (const auto& h : out.elements)
    for (int v = 0; v < p.source.n; ++v) {
      int a = rep[v], b = rep[h[v]];
      while (rep[a] != a) a = rep[a];
      while (rep[b] != b) b = rep[b];
      if (a != b) rep[std::max(a, b)] = std::min(a, b);
    }
  for (int v = 0; v < p.source.n; ++v)
    while (rep[rep[v]] != rep[v]) rep[v] = rep[rep[v]];
  std::map<int, int> orbit_id;
  for (int v = 0; v < p.source.n; ++v)
    if (rep[v] == v) {
      int id = static_cast<int>(orbit_id.size());
      orbit_id[v] = id;
    }
  out.quotient = SimpleGraph(static_cast<int>(orbit_id.size()));
  for (auto [u, v] : p.source.edges) {
    int a = orbit_id[rep[u]], b = orbit_id[rep[v]];
    if (a == b) {
      out.reason = "quotient collapses an edge";
      out.free = false;
      return out;
    }
    if (!out.quotient.has_edge(a, b)) out.quotient.add_edge(a, b);
  }

  BudgetCounter bc(budget);
  auto iso = find_isomorphism(out.quotient, p.target, {}, bc);
  if (iso) {
    out.quotient_match = true;
    out.quotient_iso = *iso;
  } else {
    out.reason = "quotient is not isomorphic to the target";
  }
  return out;
}

// --- residual-finiteness probe ------------------------------------------------------

RfProbeResult residual_finiteness_probe(const GroupOracle& G, const GenSet& S,
                                        const SimpleGraph& Y, int n,
                                        const std::vector<Elem>& F, int k, long long budget) {
  RfProbeResult out;
  if (n < 1) throw std::invalid_argument("probe radius must be positive");
  if (Y.n == 0 || !is_connected(Y)) {
    out.reason = "target graph must be nonempty and connected";
    return out;
  }

  CayleyBall model = cayley_ball(G, S, n, budget);
  RLocalReport local = is_r_locally(Y, {model.ball}, n, 1, budget);
  if (!local.verdict) {
    out.reason = "Y is not n-locally the Cayley ball (fails at vertex " +
                 std::to_string(local.failing_vertex) + ")";
    return out;
  }

  // Carrier ball large enough to define the action on all of Y and on words
  // of length 2n.
  int r_dom = std::max(2 * n, diameter(Y)) + 1;
  int t = std::max(1, (k + 1) / 2);

  // Agreement radius from the closed target: least rc such that every
  // self-isometry of an (rc+t)-ball of Y fixing the rc-ball pointwise is the
  // identity. The carrier is the wrong graph to ask: its boundary tips have
  // tiny balls whose pointwise stabilizers never become trivial.
  int rc = -1;
  {
    BudgetCounter rb(budget);
    int diam_y = diameter(Y);
    for (int r = 1; r <= diam_y && rc < 0; ++r) {
      bool trivial = true;
      for (int y = 0; y < Y.n && trivial; ++y) {
        BallView by = ball(Y, y, r + t);
        IsoConstraints c;
        for (int i = 0; i < by.carrier.n; ++i)
          if (by.root_dist[i] <= r) c.pins.push_back({i, i});
        enumerate_isomorphisms(by.carrier, by.carrier, c, rb,
                               [&](const std::vector<int>& m) {
                                 for (int i = 0; i < by.carrier.n; ++i)
                                   if (m[i] != i) {
                                     trivial = false;
                                     return false;
                                   }
                                 return true;
                               });
      }
      if (trivial) rc = r;
    }
  }
  if (rc < 0) {
    out.reason = "no agreement radius with rigid balls on the target";
    return out;
  }
  CayleyBall big = cayley_ball(G, S, r_dom + rc + t, budget);
  int r2 = rc + t;

  std::vector<int> domain;
  for (int v = 0; v < big.ball.carrier.n; ++v)
    if (big.ball.root_dist[v] <= r_dom) domain.push_back(v);

  // Seed: any rooted isometry from the witness ball at the center onto a
  // ball of Y; the first found is deterministic.
  BallView A = ball(big.ball.carrier, big.ball.root, r2);
  BallView B = ball(Y, 0, r2);
  BudgetCounter bc(budget);
  IsoConstraints c;
  c.pins = {{A.root, B.root}};
  auto iso = find_isomorphism(A.carrier, B.carrier, c, bc);
  if (!iso) {
    out.reason = "no seed isometry from the carrier ball into Y";
    return out;
  }
  std::map<int, int> seed;
  for (int i = 0; i < A.carrier.n; ++i) seed[A.orig[i]] = B.orig[(*iso)[i]];

  PropagationParams params;
  params.k = k;
  params.rc = rc;
  params.assume_simply_connected = true;  // Cayley balls of the modeled group
  params.domain = domain;
  params.budget = budget;
  PropagationResult prop =
      propagate_covering(big.ball.carrier, Y, seed, big.ball.root, params);
  if (!prop.ok) {
    out.reason = "propagation failed: " + prop.reason;
    return out;
  }

  // pi as a map on carrier vertex ids.
  std::vector<int> pi(big.ball.carrier.n, -1);
  for (size_t i = 0; i < prop.domain_vertices.size(); ++i)
    pi[prop.domain_vertices[i]] = prop.cover.vertex_map[i];
  std::set<int> image(prop.cover.vertex_map.begin(), prop.cover.vertex_map.end());
  if (static_cast<int>(image.size()) != Y.n) {
    out.reason = "covering does not reach every vertex of Y";
    return out;
  }

  std::map<Elem, int> index;
  for (int v = 0; v < big.ball.carrier.n; ++v) index[big.element_of[v]] = v;

  // Right multiplication by each generator, transported through pi.
  out.gen_action.assign(S.elems.size(), std::vector<int>(Y.n, -1));
  for (size_t si = 0; si < S.elems.size(); ++si) {
    for (int x = 0; x < big.ball.carrier.n; ++x) {
      if (big.ball.root_dist[x] > r_dom - 1) continue;
      auto it = index.find(G.mul(big.element_of[x], S.elems[si]));
      if (it == index.end() || pi[it->second] < 0) continue;
      int& slot = out.gen_action[si][pi[x]];
      if (slot >= 0 && slot != pi[it->second]) {
        out.reason = "action of generator " + std::to_string(si) + " is ill-defined";
        return out;
      }
      slot = pi[it->second];
    }
    std::set<int> hit;
    for (int y = 0; y < Y.n; ++y) {
      if (out.gen_action[si][y] < 0) {
        out.reason = "action of generator " + std::to_string(si) + " is partial";
        return out;
      }
      hit.insert(out.gen_action[si][y]);
    }
    if (static_cast<int>(hit.size()) != Y.n) {
      out.reason = "action of generator " + std::to_string(si) + " is not a permutation";
      return out;
    }
  }

  // Decompose each F element into a word in S by BFS, then act.
  for (const Elem& f_raw : F) {
    Elem f = G.canon(f_raw);
    if (G.is_identity(f)) {
      out.identity_skipped = true;
      continue;
    }
    std::map<Elem, std::pair<Elem, int>> parent;  // element -> (previous, generator)
    std::vector<Elem> frontier = {G.identity()};
    parent[G.identity()] = {G.identity(), -1};
    bool found = G.eq(f, G.identity());
    for (int layer = 0; layer < 2 * n && !found; ++layer) {
      std::vector<Elem> next;
      for (const Elem& e : frontier) {
        for (size_t si = 0; si < S.elems.size(); ++si) {
          Elem g = G.mul(e, S.elems[si]);
          if (parent.count(g)) continue;
          parent[g] = {e, static_cast<int>(si)};
          next.push_back(g);
          if (G.eq(g, f)) {
            found = true;
          }
        }
      }
      frontier = std::move(next);
    }
    if (!found) {
      out.reason = "element of F is outside the ball of radius 2n";
      return out;
    }
    std::vector<int> word;  // generator indices, applied left to right
    for (Elem e = f; !G.is_identity(e); e = parent[e].first) word.push_back(parent[e].second);
    std::reverse(word.begin(), word.end());
    bool fixed = false;
    for (int y = 0; y < Y.n; ++y) {
      int z = y;
      for (int si : word) z = out.gen_action[si][z];
      if (z == y) {
        fixed = true;
        break;
      }
    }
    (fixed ? out.fixed_elements : out.free_elements).push_back(f);
  }
  out.ok = true;
  return out;
}

// --- tree decompositions -------------------------------------------------------------

TreeDecompCheck validate_tree_decomposition(const SimpleGraph& X, const TreeDecomposition& D) {
  TreeDecompCheck out;
  if (D.tree.n == 0 || D.tree.edge_count() != D.tree.n - 1 || !is_connected(D.tree)) {
    out.reason = "decomposition tree is not a tree";
    return out;
  }
  if (static_cast<int>(D.pieces.size()) != D.tree.n) {
    out.reason = "piece count differs from tree order";
    return out;
  }
  std::vector<std::set<int>> pieces;
  std::vector<char> covered(X.n, 0);
  for (int u = 0; u < D.tree.n; ++u) {
    if (D.pieces[u].empty()) {
      out.reason = "empty piece";
      out.u = u;
      return out;
    }
    for (int v : D.pieces[u]) {
      X.check_vertex(v);
      covered[v] = 1;
    }
    pieces.push_back(std::set<int>(D.pieces[u].begin(), D.pieces[u].end()));
  }
  for (int v = 0; v < X.n; ++v)
    if (!covered[v]) {
      out.reason = "pieces do not cover X";
      out.v = v;
      return out;
    }
  for (int u = 0; u < D.tree.n; ++u) {
    for (int a : pieces[u]) {
      std::vector<int> d = bfs_dist(X, a);
      for (int b : pieces[u])
        if (d[b] < 0 || d[b] > D.r1) {
          out.reason = "piece diameter exceeds the bound";
          out.u = u;
          return out;
        }
    }
  }
  for (int u = 0; u < D.tree.n; ++u)
    for (int v = u + 1; v < D.tree.n; ++v) {
      bool meets = false;
      for (int a : pieces[u])
        if (pieces[v].count(a)) {
          meets = true;
          break;
        }
      if (meets != D.tree.has_edge(u, v)) {
        out.reason = meets ? "pieces overlap without a tree edge" : "tree edge with empty overlap";
        out.u = u;
        out.v = v;
        return out;
      }
    }
  out.ok = true;
  return out;
}

TreeExtendResult extend_cover_along_tree(const SimpleGraph& X, const TreeDecomposition& D,
                                         const SimpleGraph& Y, const std::map<int, int>& seed,
                                         int x0, int r, int r2, long long budget) {
  TreeExtendResult out;
  TreeDecompCheck valid = validate_tree_decomposition(X, D);
  if (!valid.ok) {
    out.reason = "invalid decomposition: " + valid.reason;
    return out;
  }
  if (r < D.r1) {
    out.reason = "window radius below the piece diameter bound";
    return out;
  }
  std::string err = validate_seed(X, Y, seed, x0, r + r2);
  if (!err.empty()) {
    out.reason = err;
    return out;
  }
  BudgetCounter bc(budget);

  std::map<int, int> phi = seed;
  std::vector<char> done(D.tree.n, 0);
  std::queue<int> q;
  for (int u = 0; u < D.tree.n; ++u) {
    bool inside = true;
    for (int v : D.pieces[u])
      if (!phi.count(v)) {
        inside = false;
        break;
      }
    if (inside) {
      done[u] = 1;
      q.push(u);
    }
  }
  if (q.empty()) {
    out.reason = "seed covers no piece";
    return out;
  }

  while (!q.empty()) {
    int u = q.front();
    q.pop();
    for (int v : D.tree.adj[u]) {
      if (done[v]) continue;
      done[v] = 1;
      q.push(v);
      // Extend phi over piece v from the overlap with what is defined.
      std::vector<int> overlap;
      for (int a : D.pieces[v])
        if (phi.count(a)) overlap.push_back(a);
      if (overlap.empty()) {
        out.reason = "piece has no defined overlap";
        out.edge_u = u;
        out.edge_v = v;
        return out;
      }
      int w = *std::min_element(overlap.begin(), overlap.end());
      BallView A = ball(X, w, r + r2);
      BallView B = ball(Y, phi.at(w), r + r2);
      std::vector<int> a_id(X.n, -1);
      for (int i = 0; i < A.carrier.n; ++i) a_id[A.orig[i]] = i;
      std::map<int, int> b_id;
      for (int i = 0; i < B.carrier.n; ++i) b_id[B.orig[i]] = i;
      IsoConstraints c;  // pins below include the root, since phi covers w
      bool bad_pin = false;
      for (int i = 0; i < A.carrier.n; ++i) {
        auto it = phi.find(A.orig[i]);
        if (it == phi.end()) continue;
        auto bit = b_id.find(it->second);
        if (bit == b_id.end()) {
          bad_pin = true;
          break;
        }
        c.pins.push_back({i, bit->second});
      }
      std::optional<std::vector<int>> ext;
      if (!bad_pin) ext = find_isomorphism(A.carrier, B.carrier, c, bc);
      if (!ext) {
        out.reason = "no extension agrees on the overlap";
        out.edge_u = u;
        out.edge_v = v;
        return out;
      }
      for (int a : D.pieces[v]) {
        if (phi.count(a)) continue;
        if (a_id[a] < 0) {
          out.reason = "piece leaves the extension window";
          out.edge_u = u;
          out.edge_v = v;
          return out;
        }
        phi[a] = B.orig[(*ext)[a_id[a]]];
      }
    }
  }

  std::vector<int> vmap(X.n, -1);
  for (auto [v, y] : phi) vmap[v] = y;
  for (int v = 0; v < X.n; ++v)
    if (vmap[v] < 0) {
      out.reason = "extension left vertices unmapped";
      return out;
    }
  CoveringCheck check = verify_covering(X, Y, vmap, {}, budget);
  if (!check.ok) {
    out.reason = "glued map is not a covering: " + check.reason + " at vertex " +
                 std::to_string(check.failing_vertex);
    return out;
  }
  out.ok = true;
  out.cover = std::move(check.map);
  return out;
}

}  // namespace lgr
