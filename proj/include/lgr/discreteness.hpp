#pragma once
// Triangle statistics of Cayley graphs and the constructions that make an
// isometry group act discretely: augmenting a generating set so that every
// seed generator pair {s, s^-1} is singled out by its triangle count, padding
// a finite generating set by coprime cyclic factors so that fibers become the
// unique maximum cliques, and an empirical certificate wrapping pointwise
// ball-stabilizer probes.

#include <string>
#include <utility>
#include <vector>

#include "lgr/cayley.hpp"
#include "lgr/graph.hpp"
#include "lgr/group.hpp"

namespace lgr {

// Per-generator triangle counts N3(s,S) = |{t in S : s^-1 t in S}|, the number
// of triangles of the Cayley graph on the edge (e, s). Entry i counts for
// genset.elems[i]; elements outside the set count 0 by convention.
struct TriangleProfile {
  GenSet genset;
  std::vector<int> counts;
  int of(const GroupOracle& G, const Elem& s) const;
};

TriangleProfile n3_profile(const GroupOracle& G, const GenSet& S);

// One augmentation S -> S u delta with delta drawn from powers of an
// infinite-order element gamma: delta = {gamma^n, gamma^-n, s0^-1 gamma^n,
// gamma^-n s0} (a symmetric set of 4, or 3 when the last two coincide).
struct AugmentationStep {
  Elem s0;
  Elem gamma;
  int n = -1;
  std::vector<Elem> delta;
};

struct AugmentResult {
  bool ok = false;
  GenSet after;
  AugmentationStep step;
  std::pair<int, int> achieved{0, 0};  // (increment of N3(s0), of N3(s0^2))
  std::vector<std::pair<int, std::string>> rejections;  // per rejected n
  std::string reason;                                   // set when !ok
};

// Smallest n <= search_bound whose delta avoids squares of S, has all elements
// of S-word-length >= 3, leaves counts off {s0^±1, s0^±2} unchanged, keeps
// every new generator at <= 6 triangles, and lands the increment pair in the
// order-dependent table: order 2 -> {(2,0),(4,0)}, order 3 -> {(1,1),(2,2),
// (3,3)}, order 4 -> {(1,0),(2,0),(2,2)}, order >= 5 or infinite ->
// {(1,0),(2,0),(2,1)}. Every condition is re-verified by recomputing the full
// profile on the candidate S'.
AugmentResult augment_genset(const GroupOracle& G, const GenSet& S, const Elem& s0,
                             const Elem& gamma, int search_bound);

struct DiscreteGensetResult {
  bool ok = false;
  std::string reason;  // set when !ok
  GenSet genset;
  TriangleProfile certificate;
  std::vector<AugmentationStep> steps;
  std::vector<Elem> added;  // genset minus the seed, canonical order
};

// Repeated augmentation along a chain of symmetric subsets of S0 closed under
// square roots, until for all s in S0 and s' in the output S we have
// N3(s,S) = N3(s',S) iff s' in {s, s^-1}, with N3 >= 7 on S0 and <= 6 on the
// added generators. The certificate is the full final profile.
DiscreteGensetResult build_discrete_genset(const GroupOracle& G, const GenSet& S0,
                                           const Elem& gamma, int search_bound = 512,
                                           int max_augmentations = 500);

struct PaddedGensetResult {
  GroupOracle padding;  // F, the direct product of the cyclic factors
  GroupOracle product;  // Gamma x F
  GenSet genset;        // padded generating set of Gamma x F
  int clique_number = 0;
  std::vector<long long> primes;            // one per inversion class, ascending
  std::vector<std::vector<Elem>> classes;   // involutions first, then pairs
  CayleyGraph graph;                        // Cayley graph of (Gamma x F, genset)
  long long fiber_size = 0;                 // |F|
  bool fibers_are_cliques = false;
  long long cross_clique_bound = 0;         // clique_number * max prime, < |F|
  std::vector<long long> fiber_edge_counts;  // edges between adjacent fibers, per class
};

// Pads a generating set S of a finite group Gamma by F = prod Z/p_i, one
// distinct prime p_i > clique number of (Gamma, S) per inversion class of S:
// the padded set joins {s_i, s_i^-1} x Z/p_i across classes and makes each
// fiber {g} x F a clique via {e} x (F \ {0}). Fibers are then the unique
// cliques of |F| vertices (any clique meeting two fibers has at most
// clique_number * max(p_i) < |F| vertices) and the edge count p_i * |F|
// between adjacent fibers recovers the class of the connecting generator.
// Requires |S| >= 3 and, for every s in S, some companion s' in S with
// s s' in S and s outside {s', s'^-1, s s', (s s')^-1}.
PaddedGensetResult build_padded_genset(const GroupOracle& Gamma, const GenSet& S,
                                       long long budget = 50'000'000);

struct DiscretenessCertificate {
  bool found = false;
  int radius = -1;          // least radius with all-trivial pointwise stabilizers
  int failing_vertex = -1;  // witness at the largest probed radius when !found
  unsigned long long stabilizer_order = 0;  // stabilizer order at that witness
};

// Least r <= probe_radius such that every vertex (every vertex whose r-ball
// stays honest, for the ball overload) has trivial pointwise B(v,r)
// stabilizer in Aut of the carrier.
DiscretenessCertificate discreteness_certificate(const SimpleGraph& g, int probe_radius,
                                                 bool respect_labels = false,
                                                 long long budget = 50'000'000);
DiscretenessCertificate discreteness_certificate(const CayleyBall& b, int probe_radius,
                                                 bool respect_labels = false,
                                                 long long budget = 50'000'000);

}  // namespace lgr
