#include "lgr/graph.hpp"

#include <algorithm>
#include <atomic>
#include <queue>
#include <set>

namespace lgr {

SimpleGraph::SimpleGraph(int vertices) : n(vertices), adj(vertices) {
  if (vertices < 0) throw std::invalid_argument("negative vertex count");
}

void SimpleGraph::check_vertex(int v) const {
  if (v < 0 || v >= n) throw std::invalid_argument("vertex id out of range");
}

void SimpleGraph::add_edge(int u, int v) {
  check_vertex(u);
  check_vertex(v);
  if (u == v) throw std::invalid_argument("loops not allowed in a simple graph");
  if (u > v) std::swap(u, v);
  long long key = static_cast<long long>(u) * n + v;
  if (edge_idx_.count(key)) return;
  edge_idx_[key] = static_cast<int>(edges.size());
  edges.push_back({u, v});
  if (!edge_labels.empty()) edge_labels.push_back(-1);
  adj[u].insert(std::lower_bound(adj[u].begin(), adj[u].end(), v), v);
  adj[v].insert(std::lower_bound(adj[v].begin(), adj[v].end(), u), u);
}

void SimpleGraph::add_labeled_edge(int u, int v, int label) {
  edge_labels.resize(edges.size(), -1);  // backfill any unlabeled prefix
  int before = edge_count();
  add_edge(u, v);
  if (edge_count() > before) {
    edge_labels.resize(edges.size(), -1);
    edge_labels.back() = label;
  }
}

bool SimpleGraph::has_edge(int u, int v) const { return edge_index(u, v) >= 0; }

int SimpleGraph::edge_index(int u, int v) const {
  if (u == v) return -1;
  if (u > v) std::swap(u, v);
  auto it = edge_idx_.find(static_cast<long long>(u) * n + v);
  return it == edge_idx_.end() ? -1 : it->second;
}

int SimpleGraph::label_of(int u, int v) const {
  int e = edge_index(u, v);
  if (e < 0) throw std::invalid_argument("label_of: no such edge");
  return edge_labels.empty() ? -1 : edge_labels[e];
}

std::vector<int> bfs_dist(const SimpleGraph& g, int src) {
  g.check_vertex(src);
  std::vector<int> dist(g.n, -1);
  std::queue<int> q;
  dist[src] = 0;
  q.push(src);
  while (!q.empty()) {
    int v = q.front();
    q.pop();
    for (int w : g.adj[v])
      if (dist[w] < 0) {
        dist[w] = dist[v] + 1;
        q.push(w);
      }
  }
  return dist;
}

bool is_connected(const SimpleGraph& g) {
  if (g.n == 0) return true;
  auto d = bfs_dist(g, 0);
  return std::find(d.begin(), d.end(), -1) == d.end();
}

std::vector<int> components(const SimpleGraph& g, int* count) {
  std::vector<int> comp(g.n, -1);
  int c = 0;
  for (int s = 0; s < g.n; ++s) {
    if (comp[s] >= 0) continue;
    std::queue<int> q;
    comp[s] = c;
    q.push(s);
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      for (int w : g.adj[v])
        if (comp[w] < 0) {
          comp[w] = c;
          q.push(w);
        }
    }
    ++c;
  }
  if (count) *count = c;
  return comp;
}

int diameter(const SimpleGraph& g) {
  int best = 0;
  for (int v = 0; v < g.n; ++v) {
    auto d = bfs_dist(g, v);
    for (int x : d) best = std::max(best, x);
  }
  return best;
}

SimpleGraph induced_subgraph(const SimpleGraph& g, const std::vector<int>& verts) {
  SimpleGraph h(static_cast<int>(verts.size()));
  std::unordered_map<int, int> local;
  local.reserve(verts.size() * 2);
  for (int i = 0; i < h.n; ++i) {
    g.check_vertex(verts[i]);
    if (!local.emplace(verts[i], i).second)
      throw std::invalid_argument("induced_subgraph: duplicate vertex");
  }
  if (!g.vertex_labels.empty()) {
    h.vertex_labels.resize(h.n);
    for (int i = 0; i < h.n; ++i) h.vertex_labels[i] = g.vertex_labels[verts[i]];
  }
  for (int i = 0; i < h.n; ++i) {
    for (int w : g.adj[verts[i]]) {
      auto it = local.find(w);
      if (it == local.end() || it->second <= i) continue;
      if (g.labeled())
        h.add_labeled_edge(i, it->second, g.label_of(verts[i], w));
      else
        h.add_edge(i, it->second);
    }
  }
  return h;
}

BallView ball(const SimpleGraph& g, int v, int R) {
  g.check_vertex(v);
  if (R < 0) throw std::invalid_argument("ball: negative radius");
  auto d = bfs_dist(g, v);
  BallView b;
  for (int u = 0; u < g.n; ++u)
    if (d[u] >= 0 && d[u] <= R) b.orig.push_back(u);
  b.carrier = induced_subgraph(g, b.orig);
  b.radius = R;
  b.root = static_cast<int>(std::lower_bound(b.orig.begin(), b.orig.end(), v) - b.orig.begin());
  b.root_dist = bfs_dist(b.carrier, b.root);
  return b;
}

// --- color refinement + backtracking isomorphism search ----------------------

namespace {

using Key = std::pair<int, std::vector<std::pair<int, int>>>;

// Jointly refines vertex colors of A and B with a shared dictionary so colors
// are comparable across the two graphs. Returns false when the color class
// sizes differ, which proves no pin-respecting isomorphism exists.
bool refine_colors(const SimpleGraph& A, const SimpleGraph& B,
                   const std::vector<std::pair<int, int>>& pins, bool respect_labels,
                   std::vector<int>& colA, std::vector<int>& colB) {
  colA.assign(A.n, 0);
  colB.assign(B.n, 0);
  {
    std::vector<int> pinA(A.n, -1), pinB(B.n, -1);
    for (int i = 0; i < static_cast<int>(pins.size()); ++i) {
      pinA[pins[i].first] = i;
      pinB[pins[i].second] = i;
    }
    std::map<std::tuple<int, int, int>, int> dict;
    auto init = [&](const SimpleGraph& G, const std::vector<int>& pin, std::vector<int>& col) {
      for (int v = 0; v < G.n; ++v) {
        int vl = (respect_labels && !G.vertex_labels.empty()) ? G.vertex_labels[v] : 0;
        auto key = std::make_tuple(pin[v], G.degree(v), vl);
        auto it = dict.emplace(key, static_cast<int>(dict.size()));
        col[v] = it.first->second;
      }
    };
    init(A, pinA, colA);
    init(B, pinB, colB);
  }

  auto classes_match = [&]() {
    std::map<int, int> ca, cb;
    for (int c : colA) ++ca[c];
    for (int c : colB) ++cb[c];
    return ca == cb;
  };
  if (!classes_match()) return false;

  int colors = 0;
  for (int c : colA) colors = std::max(colors, c + 1);
  for (int round = 0; round <= A.n + 1; ++round) {
    std::map<Key, int> dict;
    auto signature = [&](const SimpleGraph& G, const std::vector<int>& col, int v) {
      Key k;
      k.first = col[v];
      for (int w : G.adj[v]) {
        int el = (respect_labels && G.labeled()) ? G.label_of(v, w) : 0;
        k.second.push_back({el, col[w]});
      }
      std::sort(k.second.begin(), k.second.end());
      return k;
    };
    std::vector<int> na(A.n), nb(B.n);
    for (int v = 0; v < A.n; ++v) {
      auto it = dict.emplace(signature(A, colA, v), static_cast<int>(dict.size()));
      na[v] = it.first->second;
    }
    for (int v = 0; v < B.n; ++v) {
      auto it = dict.emplace(signature(B, colB, v), static_cast<int>(dict.size()));
      nb[v] = it.first->second;
    }
    colA.swap(na);
    colB.swap(nb);
    if (!classes_match()) return false;
    int nc = static_cast<int>(dict.size());
    if (nc == colors) break;
    colors = nc;
  }
  return true;
}

struct IsoSearch {
  const SimpleGraph& A;
  const SimpleGraph& B;
  const IsoConstraints& cons;
  BudgetCounter& budget;
  const std::function<bool(const std::vector<int>&)>& cb;
  std::vector<int> colA, colB;
  std::vector<int> order;  // static source order: BFS from pins, then by id
  std::vector<int> map_ab, map_ba;
  bool keep_going = true;

  IsoSearch(const SimpleGraph& a, const SimpleGraph& b, const IsoConstraints& c,
            BudgetCounter& bud, const std::function<bool(const std::vector<int>&)>& f)
      : A(a), B(b), cons(c), budget(bud), cb(f) {}

  void build_order() {
    std::vector<int> seen(A.n, 0);
    std::queue<int> q;
    auto push = [&](int v) {
      if (!seen[v]) {
        seen[v] = 1;
        q.push(v);
      }
    };
    for (auto& p : cons.pins) push(p.first);
    if (q.empty() && A.n > 0) {
      // Start from the smallest vertex in the smallest color class.
      std::map<int, int> size;
      for (int c : colA) ++size[c];
      int best = 0;
      for (int v = 1; v < A.n; ++v) {
        auto better = std::make_pair(size[colA[v]], v);
        if (better < std::make_pair(size[colA[best]], best)) best = v;
      }
      push(best);
    }
    while (!q.empty()) {
      int v = q.front();
      q.pop();
      order.push_back(v);
      for (int w : A.adj[v]) push(w);
      if (q.empty())  // next component: smallest unseen id
        for (int v2 = 0; v2 < A.n; ++v2)
          if (!seen[v2]) {
            push(v2);
            break;
          }
    }
  }

  bool feasible(int v, int t) const {
    if (colA[v] != colB[t]) return false;
    if (map_ba[t] >= 0) return false;
    if (!cons.allowed.empty()) {
      const auto& al = cons.allowed[v];
      if (!std::binary_search(al.begin(), al.end(), t)) return false;
    }
    for (int u = 0; u < A.n; ++u) {
      int w = map_ab[u];
      if (w < 0) continue;
      bool ea = A.has_edge(v, u), eb = B.has_edge(t, w);
      if (ea != eb) return false;
      if (ea && cons.respect_labels && A.labeled() != B.labeled()) return false;
      if (ea && cons.respect_labels && A.labeled() && A.label_of(v, u) != B.label_of(t, w))
        return false;
    }
    return true;
  }

  // Returns false when the whole enumeration should stop (callback said so).
  bool rec(int depth) {
    budget.tick("isomorphism search");
    if (depth == static_cast<int>(order.size())) {
      keep_going = cb(map_ab);
      return keep_going;
    }
    int v = order[depth];
    if (map_ab[v] >= 0) return rec(depth + 1);  // pinned
    for (int t = 0; t < B.n; ++t) {
      if (!feasible(v, t)) continue;
      map_ab[v] = t;
      map_ba[t] = v;
      if (!rec(depth + 1)) {
        map_ab[v] = -1;
        map_ba[t] = -1;
        return false;
      }
      map_ab[v] = -1;
      map_ba[t] = -1;
    }
    return true;
  }

  bool run() {
    if (A.n != B.n || A.edge_count() != B.edge_count()) return true;  // no iso
    if (!cons.allowed.empty() && static_cast<int>(cons.allowed.size()) != A.n)
      throw std::invalid_argument("allowed list size must equal source vertex count");
    for (auto& p : cons.pins) {
      A.check_vertex(p.first);
      B.check_vertex(p.second);
    }
    if (!refine_colors(A, B, cons.pins, cons.respect_labels, colA, colB)) return true;
    map_ab.assign(A.n, -1);
    map_ba.assign(B.n, -1);
    for (auto& p : cons.pins) {
      if (map_ab[p.first] >= 0 || map_ba[p.second] >= 0)
        throw std::invalid_argument("conflicting pins");
      map_ab[p.first] = p.second;
      map_ba[p.second] = p.first;
    }
    // Pins must already be mutually consistent.
    for (auto& p : cons.pins) {
      map_ab[p.first] = -1;
      map_ba[p.second] = -1;
      if (!feasible(p.first, p.second)) return true;
      map_ab[p.first] = p.second;
      map_ba[p.second] = p.first;
    }
    build_order();
    return rec(0);
  }
};

}  // namespace

bool enumerate_isomorphisms(const SimpleGraph& A, const SimpleGraph& B, const IsoConstraints& c,
                            BudgetCounter& budget,
                            const std::function<bool(const std::vector<int>&)>& callback) {
  IsoSearch s(A, B, c, budget, callback);
  s.run();
  return s.keep_going;
}

std::optional<std::vector<int>> find_isomorphism(const SimpleGraph& A, const SimpleGraph& B,
                                                 const IsoConstraints& c, BudgetCounter& budget) {
  std::optional<std::vector<int>> out;
  enumerate_isomorphisms(A, B, c, budget, [&](const std::vector<int>& m) {
    out = m;
    return false;
  });
  return out;
}

std::optional<RootedIsometry> ball_isometric(const BallView& b1, const BallView& b2,
                                             long long budget, bool respect_labels) {
  if (b1.radius != b2.radius) return std::nullopt;
  if (b1.carrier.n != b2.carrier.n || b1.carrier.edge_count() != b2.carrier.edge_count())
    return std::nullopt;
  // Sphere sizes must agree level by level.
  std::map<int, int> s1, s2;
  for (int d : b1.root_dist) ++s1[d];
  for (int d : b2.root_dist) ++s2[d];
  if (s1 != s2) return std::nullopt;
  IsoConstraints c;
  c.pins = {{b1.root, b2.root}};
  c.respect_labels = respect_labels;
  BudgetCounter bc(budget);
  auto m = find_isomorphism(b1.carrier, b2.carrier, c, bc);
  if (!m) return std::nullopt;
  return RootedIsometry{*m};
}

RLocalReport is_r_locally(const SimpleGraph& Y, const std::vector<BallView>& X_balls, int R,
                          int threads, long long budget) {
  if (X_balls.empty()) throw std::invalid_argument("is_r_locally: empty model ball list");
  for (auto& b : X_balls)
    if (b.radius != R) throw std::invalid_argument("is_r_locally: model ball of wrong radius");
  RLocalReport rep;
  rep.matched_model.assign(Y.n, -1);
  parallel_for(Y.n, threads, [&](int y) {
    BallView by = ball(Y, y, R);
    for (int i = 0; i < static_cast<int>(X_balls.size()); ++i) {
      if (ball_isometric(by, X_balls[i], budget)) {
        rep.matched_model[y] = i;
        break;
      }
    }
  });
  rep.verdict = true;
  for (int y = 0; y < Y.n; ++y)
    if (rep.matched_model[y] < 0) {
      rep.verdict = false;
      rep.failing_vertex = y;
      break;
    }
  return rep;
}

// --- automorphism groups ------------------------------------------------------

namespace {

// Orbit of `b` under the permutations in `gens` (all of them together).
std::vector<char> orbit_reach(const std::vector<std::vector<int>>& gens, int n, int b) {
  std::vector<char> in(n, 0);
  std::vector<int> stack = {b};
  in[b] = 1;
  while (!stack.empty()) {
    int v = stack.back();
    stack.pop_back();
    for (auto& g : gens) {
      if (!in[g[v]]) {
        in[g[v]] = 1;
        stack.push_back(g[v]);
      }
    }
  }
  return in;
}

struct AutCore {
  std::vector<std::vector<int>> gens;
  unsigned long long order = 1;
};

// Orbit-stabilizer along the base b = 0,1,...,n-1 starting from `pins`
// (each pin (f,f) fixes f). Exact order; gens generate the full group of
// pin-respecting automorphisms.
AutCore aut_with_pins(const SimpleGraph& g, std::vector<std::pair<int, int>> pins,
                      bool respect_labels, BudgetCounter& budget) {
  AutCore out;
  std::vector<char> pinned(g.n, 0);
  for (auto& p : pins) {
    if (p.first != p.second)
      throw std::invalid_argument("stabilizer pins must fix vertices");
    pinned[p.first] = 1;
  }
  for (int b = 0; b < g.n; ++b) {
    if (pinned[b]) continue;
    std::vector<int> colA, colB;
    if (!refine_colors(g, g, pins, respect_labels, colA, colB))
      throw std::logic_error("self-refinement failed");
    std::vector<std::vector<int>> level_gens;
    unsigned long long orbit = 1;
    std::vector<char> reach(g.n, 0);
    reach[b] = 1;
    for (int t = 0; t < g.n; ++t) {
      if (t == b || colB[t] != colA[b]) continue;
      if (reach[t]) {
        ++orbit;
        continue;
      }
      IsoConstraints c;
      c.pins = pins;
      c.pins.push_back({b, t});
      c.respect_labels = respect_labels;
      auto m = find_isomorphism(g, g, c, budget);
      if (m) {
        ++orbit;
        level_gens.push_back(*m);
        out.gens.push_back(*m);
        reach = orbit_reach(level_gens, g.n, b);
      }
    }
    out.order *= orbit;
    pins.push_back({b, b});
    pinned[b] = 1;
  }
  return out;
}

}  // namespace

AutGroup automorphism_group(const SimpleGraph& g, bool respect_labels, long long budget) {
  BudgetCounter bc(budget);
  auto core = aut_with_pins(g, {}, respect_labels, bc);
  AutGroup out;
  out.generators = core.gens;
  out.order = core.order;
  orbits_of_generators(out.generators, g.n, &out.vertex_orbit_count);
  return out;
}

unsigned long long pointwise_stabilizer_order(const SimpleGraph& g, const std::vector<int>& fixed,
                                              bool respect_labels, long long budget) {
  std::vector<std::pair<int, int>> pins;
  std::set<int> dedup(fixed.begin(), fixed.end());
  for (int f : dedup) {
    g.check_vertex(f);
    pins.push_back({f, f});
  }
  BudgetCounter bc(budget);
  return aut_with_pins(g, pins, respect_labels, bc).order;
}

unsigned long long local_stabilizer_probe(const SimpleGraph& g, int v, int r, bool respect_labels,
                                          long long budget) {
  BallView b = ball(g, v, r);
  return pointwise_stabilizer_order(g, b.orig, respect_labels, budget);
}

std::vector<std::vector<int>> closure_of_permutations(const std::vector<std::vector<int>>& gens,
                                                      int n, long long cap) {
  for (auto& g : gens)
    if (static_cast<int>(g.size()) != n)
      throw std::invalid_argument("permutation of wrong degree");
  std::vector<int> id(n);
  for (int i = 0; i < n; ++i) id[i] = i;
  std::set<std::vector<int>> seen = {id};
  std::vector<std::vector<int>> queue = {id}, out = {id};
  while (!queue.empty()) {
    auto p = queue.back();
    queue.pop_back();
    for (auto& g : gens) {
      std::vector<int> q(n);
      for (int i = 0; i < n; ++i) q[i] = g[p[i]];
      if (seen.insert(q).second) {
        if (static_cast<long long>(seen.size()) > cap)
          throw budget_error("permutation closure exceeded cap");
        out.push_back(q);
        queue.push_back(q);
      }
    }
  }
  return out;
}

std::vector<int> orbits_of_generators(const std::vector<std::vector<int>>& gens, int n,
                                      int* orbit_count) {
  std::vector<int> parent(n);
  for (int i = 0; i < n; ++i) parent[i] = i;
  std::function<int(int)> find = [&](int x) {
    while (parent[x] != x) x = parent[x] = parent[parent[x]];
    return x;
  };
  for (auto& g : gens)
    for (int v = 0; v < n; ++v) {
      int a = find(v), b = find(g[v]);
      if (a != b) parent[std::max(a, b)] = std::min(a, b);
    }
  std::vector<int> label(n, -1);
  int c = 0;
  for (int v = 0; v < n; ++v) {
    int r = find(v);
    if (label[r] < 0) label[r] = c++;
    label[v] = label[r];
  }
  if (orbit_count) *orbit_count = c;
  return label;
}

// --- triangle / clique statistics --------------------------------------------

int edge_triangle_count(const SimpleGraph& g, int u, int v) {
  if (!g.has_edge(u, v)) throw std::invalid_argument("edge_triangle_count: no such edge");
  const auto &a = g.adj[u], &b = g.adj[v];
  int i = 0, j = 0, count = 0;
  while (i < static_cast<int>(a.size()) && j < static_cast<int>(b.size())) {
    if (a[i] < b[j])
      ++i;
    else if (a[i] > b[j])
      ++j;
    else {
      ++count;
      ++i;
      ++j;
    }
  }
  return count;
}

namespace {

// Greedy coloring bound used by the branch and bound: colors candidates and
// orders them so vertices with high color (weak bound) are tried first.
void color_sort(const SimpleGraph& g, const std::vector<int>& cand, std::vector<int>& ordered,
                std::vector<int>& bound) {
  std::vector<std::vector<int>> classes;
  for (int v : cand) {
    size_t k = 0;
    for (; k < classes.size(); ++k) {
      bool clash = false;
      for (int u : classes[k])
        if (g.has_edge(u, v)) {
          clash = true;
          break;
        }
      if (!clash) break;
    }
    if (k == classes.size()) classes.push_back({});
    classes[k].push_back(v);
  }
  ordered.clear();
  bound.clear();
  for (size_t k = 0; k < classes.size(); ++k)
    for (int v : classes[k]) {
      ordered.push_back(v);
      bound.push_back(static_cast<int>(k) + 1);
    }
}

struct CliqueSearch {
  const SimpleGraph& g;
  BudgetCounter& budget;
  std::vector<int> current, best;

  void expand(const std::vector<int>& cand) {
    budget.tick("max clique search");
    std::vector<int> ordered, bound;
    color_sort(g, cand, ordered, bound);
    for (int i = static_cast<int>(ordered.size()) - 1; i >= 0; --i) {
      if (static_cast<int>(current.size()) + bound[i] <= static_cast<int>(best.size())) return;
      int v = ordered[i];
      current.push_back(v);
      std::vector<int> next;
      for (int j = 0; j < i; ++j)
        if (g.has_edge(ordered[j], v)) next.push_back(ordered[j]);
      if (current.size() > best.size()) best = current;
      if (!next.empty()) expand(next);
      current.pop_back();
    }
  }
};

}  // namespace

CliqueResult max_clique(const SimpleGraph& g, long long budget) {
  CliqueResult res;
  if (g.n == 0) return res;
  std::vector<int> all(g.n);
  for (int i = 0; i < g.n; ++i) all[i] = i;
  std::vector<int> ordered, bound;
  color_sort(g, all, ordered, bound);
  int root_bound = bound.empty() ? 0 : *std::max_element(bound.begin(), bound.end());
  BudgetCounter bc(budget);
  CliqueSearch s{g, bc, {}, {}};
  try {
    s.expand(all);
    res.exact = true;
    res.upper = static_cast<int>(s.best.size());
  } catch (const budget_error&) {
    res.exact = false;
    res.upper = std::max(root_bound, static_cast<int>(s.best.size()));
  }
  res.best = static_cast<int>(s.best.size());
  res.witness = s.best;
  std::sort(res.witness.begin(), res.witness.end());
  return res;
}

namespace {

void cliques_rec(const SimpleGraph& g, int k, std::vector<int>& cur, const std::vector<int>& cand,
                 BudgetCounter& budget, std::vector<std::vector<int>>& out) {
  budget.tick("clique enumeration");
  if (static_cast<int>(cur.size()) == k) {
    out.push_back(cur);
    return;
  }
  int need = k - static_cast<int>(cur.size());
  for (int i = 0; i < static_cast<int>(cand.size()); ++i) {
    if (static_cast<int>(cand.size()) - i < need) return;
    int v = cand[i];
    cur.push_back(v);
    std::vector<int> next;
    for (int j = i + 1; j < static_cast<int>(cand.size()); ++j)
      if (g.has_edge(v, cand[j])) next.push_back(cand[j]);
    cliques_rec(g, k, cur, next, budget, out);
    cur.pop_back();
  }
}

}  // namespace

std::vector<std::vector<int>> cliques_of_size(const SimpleGraph& g, int k, long long budget) {
  if (k < 1) throw std::invalid_argument("cliques_of_size: k must be positive");
  std::vector<std::vector<int>> out;
  std::vector<int> cur, all(g.n);
  for (int i = 0; i < g.n; ++i) all[i] = i;
  BudgetCounter bc(budget);
  cliques_rec(g, k, cur, all, bc, out);
  return out;
}

}  // namespace lgr
