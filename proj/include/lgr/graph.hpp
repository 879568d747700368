#pragma once
// Finite simple graphs with the geodesic metric: balls with intrinsic
// distances, rooted-ball isometry search, automorphism groups via partition
// refinement + orbit-stabilizer, triangle and clique statistics.

#include <cstdint>
#include <map>
#include <optional>
#include <string>
#include <unordered_map>
#include <vector>

#include "lgr/util.hpp"

namespace lgr {

struct SimpleGraph {
  int n = 0;
  std::vector<std::vector<int>> adj;       // sorted neighbor lists
  std::vector<std::pair<int, int>> edges;  // u < v, insertion order
  std::vector<int> edge_labels;            // aligned with edges; empty = unlabeled
  std::vector<int> vertex_labels;          // empty = unlabeled

  SimpleGraph() = default;
  explicit SimpleGraph(int vertices);

  void add_edge(int u, int v);
  void add_labeled_edge(int u, int v, int label);
  bool has_edge(int u, int v) const;
  int edge_index(int u, int v) const;  // -1 if absent
  int label_of(int u, int v) const;    // -1 if unlabeled graph
  int degree(int v) const { return static_cast<int>(adj[v].size()); }
  int edge_count() const { return static_cast<int>(edges.size()); }
  bool labeled() const { return !edge_labels.empty(); }
  void check_vertex(int v) const;

 private:
  std::unordered_map<long long, int> edge_idx_;  // key u*n+v (u<v)
};

std::vector<int> bfs_dist(const SimpleGraph& g, int src);
bool is_connected(const SimpleGraph& g);
// Component id per vertex, ids dense in discovery order from vertex 0.
std::vector<int> components(const SimpleGraph& g, int* count = nullptr);
int diameter(const SimpleGraph& g);  // max finite distance over components

// Induced subgraph on `verts` (ambient ids, any order); keeps labels.
SimpleGraph induced_subgraph(const SimpleGraph& g, const std::vector<int>& verts);

struct BallView {
  SimpleGraph carrier;         // induced subgraph on the ambient ball
  int root = 0;                // carrier id
  int radius = 0;
  std::vector<int> orig;       // carrier id -> ambient id
  std::vector<int> root_dist;  // intrinsic distance from root inside carrier
};

BallView ball(const SimpleGraph& g, int v, int R);

struct RootedIsometry {
  std::vector<int> vertex_map;  // source carrier id -> target carrier id
};

// --- isomorphism engine -----------------------------------------------------
//
// Enumerates isomorphisms A -> B extending `pins`, pruned by iterated color
// refinement (degree, labels, pinned vertices). `allowed`, when nonempty,
// restricts candidate targets per source vertex. Callback returns false to
// stop the enumeration. Deterministic: branches by smallest vertex id.
struct IsoConstraints {
  std::vector<std::pair<int, int>> pins;         // (source vertex, target vertex)
  std::vector<std::vector<int>> allowed;         // per source vertex; empty = all
  bool respect_labels = false;
};
bool enumerate_isomorphisms(const SimpleGraph& A, const SimpleGraph& B,
                            const IsoConstraints& c, BudgetCounter& budget,
                            const std::function<bool(const std::vector<int>&)>& callback);
std::optional<std::vector<int>> find_isomorphism(const SimpleGraph& A, const SimpleGraph& B,
                                                 const IsoConstraints& c, BudgetCounter& budget);

// Rooted isometry of balls = carrier isomorphism fixing roots (the metric
// determines the graph, so the distance tables serve only as pruning).
std::optional<RootedIsometry> ball_isometric(const BallView& b1, const BallView& b2,
                                             long long budget = 20'000'000,
                                             bool respect_labels = false);

struct RLocalReport {
  bool verdict = false;
  std::vector<int> matched_model;  // per vertex: model-ball index, -1 once failed
  int failing_vertex = -1;
};
RLocalReport is_r_locally(const SimpleGraph& Y, const std::vector<BallView>& X_balls, int R,
                          int threads = 1, long long budget = 20'000'000);

// --- automorphisms ----------------------------------------------------------

struct AutGroup {
  std::vector<std::vector<int>> generators;  // vertex permutations
  unsigned long long order = 1;
  int vertex_orbit_count = 0;
};

AutGroup automorphism_group(const SimpleGraph& g, bool respect_labels = false,
                            long long budget = 50'000'000);

// Order of the subgroup of Aut(g) fixing `fixed` pointwise.
unsigned long long pointwise_stabilizer_order(const SimpleGraph& g, const std::vector<int>& fixed,
                                              bool respect_labels = false,
                                              long long budget = 50'000'000);

// Order of {phi in Aut(g) : phi fixes B(v,r) pointwise}.
unsigned long long local_stabilizer_probe(const SimpleGraph& g, int v, int r,
                                          bool respect_labels = false,
                                          long long budget = 50'000'000);

// All elements of the group generated by perms; throws budget_error past cap.
std::vector<std::vector<int>> closure_of_permutations(const std::vector<std::vector<int>>& gens,
                                                      int n, long long cap);

std::vector<int> orbits_of_generators(const std::vector<std::vector<int>>& gens, int n,
                                      int* orbit_count = nullptr);

// --- triangle / clique statistics -------------------------------------------

int edge_triangle_count(const SimpleGraph& g, int u, int v);

struct CliqueResult {
  int best = 0;        // size of the best clique found
  int upper = 0;       // proven upper bound
  bool exact = false;  // best == optimum
  std::vector<int> witness;
};
CliqueResult max_clique(const SimpleGraph& g, long long budget = 50'000'000);

// Enumerates all cliques of exactly k vertices (as sorted vertex lists).
std::vector<std::vector<int>> cliques_of_size(const SimpleGraph& g, int k,
                                              long long budget = 50'000'000);

}  // namespace lgr
