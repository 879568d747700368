#include "lgr/cayley.hpp"

#include <algorithm>
#include <map>
#include <set>

namespace lgr {

namespace {

// Breadth-first word-length layers over <S> from the identity. Returns the
// elements in id order (layer by layer, canonical order inside a layer) plus
// per-element distance. Stops after `radius` layers (-1 = until saturation or
// until `stop` says enough); ticks `bc` once per discovered element.
struct LayerSet {
  std::vector<Elem> elems;
  std::vector<int> dist;
  std::map<Elem, int> index;
  bool saturated = false;
};

LayerSet expand_layers(const GroupOracle& G, const GenSet& S, int radius, BudgetCounter& bc,
                       const std::function<bool(const LayerSet&)>& stop = nullptr) {
  LayerSet ls;
  Elem e = G.identity();
  ls.elems.push_back(e);
  ls.dist.push_back(0);
  ls.index[e] = 0;
  bc.tick("ball enumeration");
  int layer_begin = 0;
  for (int L = 1; radius < 0 || L <= radius; ++L) {
    int layer_end = static_cast<int>(ls.elems.size());
    std::set<Elem> next;
    for (int i = layer_begin; i < layer_end; ++i)
      for (auto& s : S.elems) {
        Elem g = G.mul(ls.elems[i], s);
        if (!ls.index.count(g)) next.insert(g);
      }
    if (next.empty()) {
      ls.saturated = true;
      break;
    }
    for (auto& g : next) {
      bc.tick("ball enumeration");
      ls.index[g] = static_cast<int>(ls.elems.size());
      ls.elems.push_back(g);
      ls.dist.push_back(L);
    }
    layer_begin = layer_end;
    if (stop && stop(ls)) break;
  }
  return ls;
}

SimpleGraph graph_on_elements(const GroupOracle& G, const GenSet& S,
                              const std::vector<Elem>& elems, const std::map<Elem, int>& index,
                              const std::vector<std::vector<Elem>>& classes, bool marked) {
  SimpleGraph g(static_cast<int>(elems.size()));
  for (int i = 0; i < g.n; ++i)
    for (auto& s : S.elems) {
      Elem h = G.mul(elems[i], s);
      auto it = index.find(h);
      if (it == index.end() || it->second <= i) continue;
      if (marked)
        g.add_labeled_edge(i, it->second, inversion_class_of(G, classes, s));
      else
        g.add_edge(i, it->second);
    }
  return g;
}

}  // namespace

CayleyBall cayley_ball(const GroupOracle& G, const GenSet& S, int R, long long budget,
                       bool marked) {
  if (R < 0) throw std::invalid_argument("cayley_ball: negative radius");
  BudgetCounter bc(budget);
  LayerSet ls = expand_layers(G, S, R, bc);
  CayleyBall out;
  if (marked) out.label_classes = inversion_classes(G, S);
  out.center = G.identity();
  out.element_of = ls.elems;
  out.ball.carrier = graph_on_elements(G, S, ls.elems, ls.index, out.label_classes, marked);
  out.ball.radius = R;
  out.ball.root = 0;
  out.ball.orig.resize(out.ball.carrier.n);
  for (int i = 0; i < out.ball.carrier.n; ++i) out.ball.orig[i] = i;
  out.ball.root_dist = bfs_dist(out.ball.carrier, 0);
  return out;
}

CayleyBall marked_cayley_ball(const GroupOracle& G, const GenSet& S, int R, long long budget) {
  return cayley_ball(G, S, R, budget, true);
}

int CayleyGraph::index_of(const GroupOracle& G, const Elem& e) const {
  Elem c = G.canon(e);
  auto it = std::lower_bound(elements.begin(), elements.end(), c);
  if (it == elements.end() || *it != c) throw std::invalid_argument("element not in graph");
  return static_cast<int>(it - elements.begin());
}

CayleyGraph cayley_graph(const GroupOracle& G, const GenSet& S, long long budget, bool marked) {
  CayleyGraph out;
  out.elements = G.enumerate(budget);
  if (marked) out.label_classes = inversion_classes(G, S);
  std::map<Elem, int> index;
  for (int i = 0; i < static_cast<int>(out.elements.size()); ++i) index[out.elements[i]] = i;
  out.graph = graph_on_elements(G, S, out.elements, index, out.label_classes, marked);
  return out;
}

CayleyGraph marked_cayley_graph(const GroupOracle& G, const GenSet& S, long long budget) {
  return cayley_graph(G, S, budget, true);
}

WordLengthResult word_length(const GroupOracle& G, const GenSet& S, const Elem& g,
                             long long budget) {
  Elem target = G.canon(g);
  BudgetCounter bc(budget);
  WordLengthResult res;
  try {
    LayerSet ls = expand_layers(G, S, -1, bc, [&](const LayerSet& cur) {
      return cur.index.count(target) > 0;
    });
    auto it = ls.index.find(target);
    if (it != ls.index.end()) return {WordLengthResult::found, ls.dist[it->second]};
    if (ls.saturated) return {WordLengthResult::absent, -1};
    return {WordLengthResult::budget_out, -1};
  } catch (const budget_error&) {
    return {WordLengthResult::budget_out, -1};
  }
}

DistortionResult distortion_rho(const GroupOracle& H, const GenSet& S, const GenSet& T, int R,
                                long long budget) {
  for (auto& s : S.elems)
    if (!genset_contains(T, s))
      throw std::invalid_argument("distortion_rho: S must be contained in T");
  BudgetCounter bc(budget);
  LayerSet bt = expand_layers(H, T, R, bc);
  DistortionResult res;
  long long covered = 1;  // the identity
  bool saturated = false, all_covered = bt.elems.size() == 1;
  // Expand the S-ball layer by layer, tracking which B_T(R) elements appear.
  // <S>-membership of the rest is semi-decidable, so expansion gives up after
  // a stall window with no new coverage and reports them unresolved.
  std::set<Elem> frontier = {H.identity()}, seen = {H.identity()};
  int stall = 0, stall_window = std::max(16, 4 * R);
  try {
    for (int L = 1; !frontier.empty() && !all_covered && stall < stall_window; ++L) {
      std::set<Elem> next;
      for (auto& g : frontier)
        for (auto& s : S.elems) {
          Elem h = H.mul(g, s);
          if (seen.insert(h).second) {
            bc.tick("subgroup ball enumeration");
            next.insert(h);
          }
        }
      bool progress = false;
      for (auto& h : next)
        if (bt.index.count(h)) {
          ++covered;
          res.rho = std::max(res.rho, L);
          progress = true;
        }
      stall = progress ? 0 : stall + 1;
      all_covered = covered == static_cast<long long>(bt.elems.size());
      saturated = next.empty();
      frontier.swap(next);
    }
    res.exact = saturated || all_covered;
    res.unresolved = res.exact ? 0 : static_cast<long long>(bt.elems.size()) - covered;
  } catch (const budget_error&) {
    res.exact = false;
    res.unresolved = static_cast<long long>(bt.elems.size()) - covered;
  }
  return res;
}

GenSet build_S_N(const GroupOracle& G, const GenSet& S1, int N, long long budget) {
  if (N <= static_cast<int>(S1.elems.size()))
    throw std::invalid_argument("build_S_N: N must exceed |S1|");
  BudgetCounter bc(budget);
  LayerSet ls = expand_layers(G, S1, N, bc);
  std::vector<Elem> out;
  for (size_t i = 1; i < ls.elems.size(); ++i) out.push_back(ls.elems[i]);
  return make_genset(G, std::move(out));
}

}  // namespace lgr
