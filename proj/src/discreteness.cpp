#include "lgr/discreteness.hpp"

#include <algorithm>
#include <map>
#include <set>
#include <stdexcept>
#include <string>
#include <utility>

#include "lgr/util.hpp"

namespace lgr {

namespace {

std::set<Elem> elem_set(const GenSet& S) {
  return std::set<Elem>(S.elems.begin(), S.elems.end());
}

int n3_of(const GroupOracle& G, const std::set<Elem>& sset, const Elem& s) {
  Elem si = G.canon(G.inv(s));
  int c = 0;
  for (const Elem& t : sset)
    if (sset.count(G.canon(G.mul(si, t)))) ++c;
  return c;
}

std::map<Elem, int> profile_map(const GroupOracle& G, const GenSet& S) {
  std::set<Elem> sset = elem_set(S);
  std::map<Elem, int> out;
  for (const Elem& s : S.elems) out[s] = n3_of(G, sset, s);
  return out;
}

int map_count(const std::map<Elem, int>& m, const Elem& s) {
  auto it = m.find(s);
  return it == m.end() ? 0 : it->second;
}

// Elements of word length <= 2: identity, generators, pairwise products.
std::set<Elem> short_elements(const GroupOracle& G, const GenSet& S) {
  std::set<Elem> out;
  out.insert(G.canon(G.identity()));
  for (const Elem& s : S.elems) out.insert(s);
  for (const Elem& s : S.elems)
    for (const Elem& t : S.elems) out.insert(G.canon(G.mul(s, t)));
  return out;
}

bool pair_in_order_table(const OrderResult& os, std::pair<int, int> a) {
  auto any = [&](std::initializer_list<std::pair<int, int>> table) {
    for (const auto& p : table)
      if (p == a) return true;
    return false;
  };
  if (os.kind == OrderResult::finite) {
    if (os.n == 2) return any({{2, 0}, {4, 0}});
    if (os.n == 3) return any({{1, 1}, {2, 2}, {3, 3}});
    if (os.n == 4) return any({{1, 0}, {2, 0}, {2, 2}});
  }
  return any({{1, 0}, {2, 0}, {2, 1}});
}

bool is_prime(long long p) {
  if (p < 2) return false;
  for (long long d = 2; d * d <= p; ++d)
    if (p % d == 0) return false;
  return true;
}

Elem concat(const Elem& a, const Elem& b) {
  Elem out = a;
  out.insert(out.end(), b.begin(), b.end());
  return out;
}

}  // namespace

int TriangleProfile::of(const GroupOracle& G, const Elem& s) const {
  Elem c = G.canon(s);
  for (size_t i = 0; i < genset.elems.size(); ++i)
    if (G.eq(genset.elems[i], c)) return counts[i];
  return 0;
}

TriangleProfile n3_profile(const GroupOracle& G, const GenSet& S) {
  TriangleProfile out;
  out.genset = S;
  std::set<Elem> sset = elem_set(S);
  for (const Elem& s : S.elems) out.counts.push_back(n3_of(G, sset, s));
  return out;
}

AugmentResult augment_genset(const GroupOracle& G, const GenSet& S, const Elem& s0,
                             const Elem& gamma, int search_bound) {
  if (search_bound < 1) throw std::invalid_argument("search bound must be at least 1");
  Elem s0c = G.canon(s0);
  if (!genset_contains(S, s0c))
    throw std::invalid_argument("target generator must belong to the generating set");
  Elem gc = G.canon(gamma);
  OrderResult og = G.order_of(gc);
  if (og.kind != OrderResult::infinite)
    throw std::invalid_argument(
        "no infinite-order element: gamma must have confirmed infinite order");

  AugmentResult out;
  std::set<Elem> sset = elem_set(S);
  std::set<Elem> shorts = short_elements(G, S);
  std::map<Elem, int> before = profile_map(G, S);
  Elem s0inv = G.canon(G.inv(s0c));
  Elem s0sq = G.canon(G.mul(s0c, s0c));
  Elem s0sqinv = G.canon(G.inv(s0sq));
  OrderResult os = G.order_of(s0c);

  Elem gpow = G.canon(G.identity());
  for (int n = 1; n <= search_bound; ++n) {
    gpow = G.canon(G.mul(gpow, gc));
    Elem gneg = G.canon(G.inv(gpow));
    Elem d3 = G.canon(G.mul(s0inv, gpow));
    Elem d4 = G.canon(G.inv(d3));
    auto reject = [&](const std::string& why) { out.rejections.push_back({n, why}); };

    // gamma^n = gamma^-n s0 (equivalently s0 = gamma^2n) collapses the set.
    if (G.eq(gpow, d4)) {
      reject("gamma^2n collides with the target generator");
      continue;
    }
    std::vector<Elem> delta = {gpow, gneg, d3};
    if (!G.eq(d3, d4)) delta.push_back(d4);
    std::sort(delta.begin(), delta.end());
    bool short_word = false;
    for (const Elem& d : delta)
      if (shorts.count(d)) short_word = true;
    if (short_word) {
      reject("an added element has word length below 3");
      continue;
    }

    GenSet after = S;
    for (const Elem& d : delta) after.elems.push_back(d);
    after = make_genset(G, after.elems);
    std::map<Elem, int> now = profile_map(G, after);

    bool heavy = false;
    for (const Elem& d : delta)
      if (map_count(now, d) > 6) heavy = true;
    if (heavy) {
      reject("an added generator carries more than 6 triangles");
      continue;
    }
    bool disturbed = false;
    for (const Elem& s : S.elems) {
      if (G.eq(s, s0c) || G.eq(s, s0inv) || G.eq(s, s0sq) || G.eq(s, s0sqinv)) continue;
      if (map_count(now, s) != map_count(before, s)) disturbed = true;
    }
    if (disturbed) {
      reject("a count changed away from the target generator and its square");
      continue;
    }
    std::pair<int, int> achieved = {map_count(now, s0c) - map_count(before, s0c),
                                    map_count(now, s0sq) - map_count(before, s0sq)};
    if (!pair_in_order_table(os, achieved)) {
      reject("increment pair (" + std::to_string(achieved.first) + "," +
             std::to_string(achieved.second) + ") falls outside the order table");
      continue;
    }

    out.ok = true;
    out.after = after;
    out.step = {s0c, gc, n, delta};
    out.achieved = achieved;
    return out;
  }
  out.reason = "no admissible exponent within the search bound";
  return out;
}

DiscreteGensetResult build_discrete_genset(const GroupOracle& G, const GenSet& S0,
                                           const Elem& gamma, int search_bound,
                                           int max_augmentations) {
  if (S0.elems.empty()) throw std::invalid_argument("seed generating set is empty");
  for (const Elem& s : S0.elems) {
    if (G.is_identity(s)) throw std::invalid_argument("seed generating set contains the identity");
    if (!genset_contains(S0, G.canon(G.inv(s))))
      throw std::invalid_argument("seed generating set is not symmetric");
  }
  Elem gc = G.canon(gamma);
  OrderResult og = G.order_of(gc);
  if (og.kind != OrderResult::infinite)
    throw std::invalid_argument(
        "no infinite-order element: gamma must have confirmed infinite order");

  // Chain of symmetric subsets closed under square roots: adding a generator
  // pulls in every still-missing generator whose square just became covered,
  // so a later augmentation never disturbs the counts of an earlier class.
  std::set<Elem> all = elem_set(S0);
  std::set<Elem> covered;
  std::vector<std::vector<Elem>> chain;
  while (covered.size() < all.size()) {
    Elem t;
    for (const Elem& s : all)
      if (!covered.count(s)) {
        t = s;
        break;
      }
    std::set<Elem> step = {t, G.canon(G.inv(t))};
    bool grew = true;
    while (grew) {
      grew = false;
      for (const Elem& u : all) {
        if (covered.count(u) || step.count(u)) continue;
        Elem usq = G.canon(G.mul(u, u));
        if (covered.count(usq) || step.count(usq)) {
          step.insert(u);
          step.insert(G.canon(G.inv(u)));
          grew = true;
        }
      }
    }
    chain.push_back(std::vector<Elem>(step.begin(), step.end()));
    covered.insert(step.begin(), step.end());
  }

  DiscreteGensetResult out;
  GenSet S = make_genset(G, S0.elems);
  std::vector<Elem> scope_reps;  // class representatives processed so far
  int spent = 0;
  for (const std::vector<Elem>& step : chain) {
    auto step_classes = inversion_classes(G, make_genset(G, step));
    std::vector<Elem> current;
    for (const auto& c : step_classes) current.push_back(c.front());
    size_t first_current = scope_reps.size();
    scope_reps.insert(scope_reps.end(), current.begin(), current.end());
    while (true) {
      std::map<Elem, int> prof = profile_map(G, S);
      std::vector<int> vals;
      for (const Elem& r : scope_reps) vals.push_back(map_count(prof, r));
      // A representative needs work if its class count is below 7 or ties a
      // different class; only current-step classes may still be augmented.
      int target = -1;
      for (size_t i = first_current; i < scope_reps.size(); ++i) {
        bool bad = vals[i] < 7;
        for (size_t j = 0; j < scope_reps.size() && !bad; ++j)
          if (j != i && vals[j] == vals[i]) bad = true;
        if (bad && (target < 0 || vals[i] < vals[target])) target = (int)i;
      }
      if (target < 0) break;
      if (++spent > max_augmentations) {
        out.reason = "could not separate triangle counts within the augmentation bound";
        out.genset = S;
        return out;
      }
      AugmentResult aug = augment_genset(G, S, scope_reps[target], gc, search_bound);
      if (!aug.ok) {
        out.reason = "augmentation failed for generator " + G.show(scope_reps[target]) +
                     ": " + aug.reason;
        out.genset = S;
        return out;
      }
      S = aug.after;
      out.steps.push_back(aug.step);
    }
  }

  // Defensive re-verification of the separation contract.
  std::set<Elem> seed = elem_set(S0);
  TriangleProfile prof = n3_profile(G, S);
  for (size_t i = 0; i < S.elems.size(); ++i) {
    bool in_seed = seed.count(S.elems[i]) > 0;
    if (in_seed && prof.counts[i] < 7) {
      out.reason = "separation failed: a seed generator kept fewer than 7 triangles";
      out.genset = S;
      return out;
    }
    if (!in_seed && prof.counts[i] > 6) {
      out.reason = "separation failed: an added generator exceeds 6 triangles";
      out.genset = S;
      return out;
    }
  }
  for (const Elem& s : S0.elems) {
    Elem sinv = G.canon(G.inv(s));
    for (size_t i = 0; i < S.elems.size(); ++i) {
      bool same_class = G.eq(S.elems[i], s) || G.eq(S.elems[i], sinv);
      bool same_count = prof.of(G, s) == prof.counts[i];
      if (same_class != same_count) {
        out.reason = "separation failed: a foreign generator shares a seed count";
        out.genset = S;
        return out;
      }
    }
  }
  out.ok = true;
  out.genset = S;
  out.certificate = prof;
  for (const Elem& s : S.elems)
    if (!seed.count(s)) out.added.push_back(s);
  return out;
}

PaddedGensetResult build_padded_genset(const GroupOracle& Gamma, const GenSet& S,
                                       long long budget) {
  if (S.elems.size() < 3)
    throw std::invalid_argument("padding needs at least 3 generators");
  for (const Elem& s : S.elems) {
    if (Gamma.is_identity(s))
      throw std::invalid_argument("padding generators must avoid the identity");
    if (!genset_contains(S, Gamma.canon(Gamma.inv(s))))
      throw std::invalid_argument("padding generating set is not symmetric");
  }
  // Every generator needs a companion whose product stays inside S while
  // avoiding {s', s'^-1, s s', (s s')^-1}; without one the fiber cliques of
  // the padded graph would not determine the generator classes.
  for (const Elem& s : S.elems) {
    bool found = false;
    for (const Elem& sp : S.elems) {
      Elem prod = Gamma.canon(Gamma.mul(s, sp));
      if (!genset_contains(S, prod)) continue;
      if (Gamma.eq(s, sp) || Gamma.eq(s, Gamma.canon(Gamma.inv(sp))) || Gamma.eq(s, prod) ||
          Gamma.eq(s, Gamma.canon(Gamma.inv(prod))))
        continue;
      found = true;
      break;
    }
    if (!found)
      throw std::invalid_argument("padding companion property fails for generator " +
                                  Gamma.show(s));
  }

  PaddedGensetResult out;
  CayleyGraph base = cayley_graph(Gamma, S, budget);
  CliqueResult cr = max_clique(base.graph, budget);
  if (!cr.exact) throw budget_error("clique search exhausted its budget");
  out.clique_number = cr.best;

  auto cls = inversion_classes(Gamma, S);
  for (const auto& c : cls)
    if (c.size() == 1) out.classes.push_back(c);
  for (const auto& c : cls)
    if (c.size() == 2) out.classes.push_back(c);
  int n = (int)out.classes.size();
  long long p = out.clique_number;
  while ((int)out.primes.size() < n) {
    ++p;
    if (is_prime(p)) out.primes.push_back(p);
  }

  out.padding = GroupOracle::cyclic(out.primes[0]);
  for (int i = 1; i < n; ++i)
    out.padding = GroupOracle::product(out.padding, GroupOracle::cyclic(out.primes[i]));
  out.product = GroupOracle::product(Gamma, out.padding);
  out.fiber_size = 1;
  for (long long q : out.primes) out.fiber_size *= q;

  Elem gamma_id = Gamma.canon(Gamma.identity());
  std::vector<Elem> gens;
  for (int i = 0; i < n; ++i) {
    for (const Elem& rep : out.classes[i]) {
      for (long long x = 0; x < out.primes[i]; ++x) {
        Elem f(n, 0);
        f[i] = x;
        gens.push_back(concat(rep, f));
      }
    }
  }
  for (const Elem& f : out.padding.enumerate())
    if (!out.padding.is_identity(f)) gens.push_back(concat(gamma_id, f));
  out.genset = make_genset(out.product, gens);
  out.graph = cayley_graph(out.product, out.genset, budget);

  // Fiber-clique certificate: group vertices by their Gamma part, check each
  // fiber is complete, and record the numeric bound showing a clique meeting
  // two fibers can never reach |F| vertices.
  size_t gd = gamma_id.size();
  std::map<Elem, std::vector<int>> fibers;
  for (int v = 0; v < out.graph.graph.n; ++v) {
    Elem g(out.graph.elements[v].begin(), out.graph.elements[v].begin() + gd);
    fibers[g].push_back(v);
  }
  std::vector<std::set<int>> nbr(out.graph.graph.n);
  for (int v = 0; v < out.graph.graph.n; ++v)
    nbr[v] = std::set<int>(out.graph.graph.adj[v].begin(), out.graph.graph.adj[v].end());
  out.fibers_are_cliques = true;
  for (const auto& [g, verts] : fibers) {
    if ((long long)verts.size() != out.fiber_size) out.fibers_are_cliques = false;
    for (size_t i = 0; i < verts.size() && out.fibers_are_cliques; ++i)
      for (size_t j = i + 1; j < verts.size(); ++j)
        if (!nbr[verts[i]].count(verts[j])) {
          out.fibers_are_cliques = false;
          break;
        }
  }
  out.cross_clique_bound = out.clique_number * out.primes.back();

  for (int i = 0; i < n; ++i) {
    const Elem& rep = out.classes[i].front();
    const auto& from = fibers.at(gamma_id);
    const auto& to = fibers.at(rep);
    long long edges = 0;
    for (int u : from)
      for (int v : to)
        if (nbr[u].count(v)) ++edges;
    out.fiber_edge_counts.push_back(edges);
  }
  return out;
}

namespace {

DiscretenessCertificate probe_carrier(const SimpleGraph& g, int probe_radius,
                                      const std::vector<int>* root_dist, int ball_radius,
                                      bool respect_labels, long long budget) {
  if (probe_radius < 0) throw std::invalid_argument("probe radius must be nonnegative");
  DiscretenessCertificate out;
  for (int r = 0; r <= probe_radius; ++r) {
    bool all_trivial = true;
    for (int v = 0; v < g.n; ++v) {
      if (root_dist && (*root_dist)[v] + r > ball_radius) continue;
      unsigned long long ord = local_stabilizer_probe(g, v, r, respect_labels, budget);
      if (ord != 1) {
        all_trivial = false;
        out.failing_vertex = v;
        out.stabilizer_order = ord;
        break;
      }
    }
    if (all_trivial) {
      out.found = true;
      out.radius = r;
      out.failing_vertex = -1;
      out.stabilizer_order = 0;
      return out;
    }
  }
  return out;
}

}  // namespace

DiscretenessCertificate discreteness_certificate(const SimpleGraph& g, int probe_radius,
                                                 bool respect_labels, long long budget) {
  return probe_carrier(g, probe_radius, nullptr, 0, respect_labels, budget);
}

DiscretenessCertificate discreteness_certificate(const CayleyBall& b, int probe_radius,
                                                 bool respect_labels, long long budget) {
  if (probe_radius > b.ball.radius)
    throw std::invalid_argument("probe radius exceeds the ball radius");
  return probe_carrier(b.ball.carrier, probe_radius, &b.ball.root_dist, b.ball.radius,
                       respect_labels, budget);
}

}  // namespace lgr
