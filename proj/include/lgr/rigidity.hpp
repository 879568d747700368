#pragma once

#include <map>
#include <optional>
#include <string>
#include <vector>

#include "lgr/cayley.hpp"
#include "lgr/graph.hpp"
#include "lgr/group.hpp"

namespace lgr {

// --- covering maps ----------------------------------------------------------

struct CoveringMap {
  SimpleGraph source;
  SimpleGraph target;
  std::vector<int> vertex_map;  // source vertex -> target vertex
  int fiber_size = -1;          // set when all fibers have equal size
};

struct CoveringCheck {
  bool ok = false;
  int failing_vertex = -1;
  std::string reason;
  int injectivity_radius = -1;  // max R with the map injective on every B(z,R)
  CoveringMap map;
};

// Verifies edge preservation plus star bijectivity at every vertex of
// `interior` (all vertices when empty; boundary vertices of chunk carriers
// have clipped stars and are excluded by the caller).
CoveringCheck verify_covering(const SimpleGraph& source, const SimpleGraph& target,
                              const std::vector<int>& vertex_map,
                              const std::vector<int>& interior = {},
                              long long budget = 20'000'000);

// --- partial-isometry extension scale ----------------------------------------

struct ExtensionRadiusResult {
  bool found = false;
  int r2 = -1;  // least radius at which every ball isometry matches a global
                // automorphism on the inner radius-r ball
};

ExtensionRadiusResult extension_radius(const SimpleGraph& X, int r,
                                       long long budget = 50'000'000);

// Least r such that only the identity automorphism fixes some B(v,r)
// pointwise, for every v; -1 if no such radius up to the diameter.
int stabilizer_radius(const SimpleGraph& X, long long budget = 50'000'000);

// --- germs and transport ------------------------------------------------------

// A local isometry B_X(center, r1) -> Y remembered together with one witness
// extension to B_X(center, r2). Maps are sorted (X vertex, Y vertex) pairs.
struct Germ {
  int center = -1;
  int r1 = 0;
  int r2 = 0;
  std::vector<std::pair<int, int>> map;
  std::vector<std::pair<int, int>> witness;

  int image_of(int x) const;
  bool operator==(const Germ& o) const { return center == o.center && map == o.map; }
};

// All germs at x, grouped over every possible image vertex of Y, sorted by
// (image of x, map). Empty when Y is not locally modeled on X at x.
std::vector<Germ> germ_set(const SimpleGraph& X, const SimpleGraph& Y, int x, int r1, int r2,
                           long long budget = 50'000'000);

struct TransportResult {
  bool ok = false;
  int candidates = 0;  // germs at the target center agreeing on the rc-ball
  Germ germ;
};

// The unique germ at xp agreeing with `g` on B(xp, rc); candidates != 1 is a
// structural failure (rc too small or local stabilizer nontrivial).
TransportResult transport_germ(const SimpleGraph& X, const SimpleGraph& Y, const Germ& g,
                               int xp, int rc, long long budget = 50'000'000);

// --- covering propagation -----------------------------------------------------

struct PropagationParams {
  int k = 4;           // cell length bound used for the step t = ceil(k/2)
  int rc = -1;         // agreement radius; -1 = stabilizer_radius(X)
  int r1 = -1;         // germ radius; -1 = rc + ceil(k/2)
  int r2 = -1;         // witness radius; -1 = r1
  bool assume_simply_connected = false;  // skip the is_k_simply_connected gate
  std::vector<int> domain;               // propagate only here; empty = all of X
  long long budget = 200'000'000;
};

struct PropagationResult {
  bool ok = false;
  CoveringMap cover;                  // on the induced domain graph
  std::vector<int> domain_vertices;   // X ids of the cover's source vertices
  std::vector<int> obstruction_loop;  // X vertex cycle witnessing failure
  std::string reason;
};

// Builds x -> phi_x(x) by germ transport along a BFS tree from x0, then
// checks every non-tree edge closes and the result is a covering. The seed
// is a rooted isometry defined on B(x0, R) with R >= r2, given as an X->Y
// vertex map.
PropagationResult propagate_covering(const SimpleGraph& X, const SimpleGraph& Y,
                                     const std::map<int, int>& seed, int x0,
                                     const PropagationParams& params);

// --- deck transformations -------------------------------------------------------

struct DeckResult {
  unsigned long long order = 0;
  std::vector<std::vector<int>> elements;  // vertex permutations of the source
  bool free = false;                       // no non-identity element fixes a vertex
  bool quotient_match = false;
  SimpleGraph quotient;
  std::vector<int> quotient_iso;  // quotient vertex -> target vertex
  std::string reason;
};

// H = {h in Aut(source) : p o h = p}, its freeness, and the quotient graph
// H\source matched against the target.
DeckResult deck_quotient(const CoveringMap& p, long long budget = 100'000'000);

// --- residual-finiteness probe ---------------------------------------------------

struct RfProbeResult {
  bool ok = false;
  std::string reason;
  std::vector<std::vector<int>> gen_action;  // per S element: permutation of V(Y)
  std::vector<Elem> free_elements;           // F elements acting without fixed points
  std::vector<Elem> fixed_elements;          // F elements with a fixed point
  bool identity_skipped = false;
};

// Transports right multiplication by F through a propagated covering of a
// Cayley ball onto Y and reports which elements act freely. Elements of F
// must have word length <= 2n.
RfProbeResult residual_finiteness_probe(const GroupOracle& G, const GenSet& S,
                                        const SimpleGraph& Y, int n,
                                        const std::vector<Elem>& F, int k = 4,
                                        long long budget = 400'000'000);

// --- tree decompositions -----------------------------------------------------------

struct TreeDecomposition {
  SimpleGraph tree;
  std::vector<std::vector<int>> pieces;  // tree vertex -> X vertex subset
  int r1 = 0;                            // piece diameter bound
};

struct TreeDecompCheck {
  bool ok = false;
  std::string reason;
  int u = -1, v = -1;  // offending tree vertices when applicable
};

TreeDecompCheck validate_tree_decomposition(const SimpleGraph& X, const TreeDecomposition& D);

struct TreeExtendResult {
  bool ok = false;
  CoveringMap cover;
  std::string reason;
  int edge_u = -1, edge_v = -1;  // tree edge at fault on gluing conflicts
};

// Extends a seed B(x0, r + r2) -> Y piece by piece along the decomposition
// tree, choosing at each step the extension that agrees on the overlap.
TreeExtendResult extend_cover_along_tree(const SimpleGraph& X, const TreeDecomposition& D,
                                         const SimpleGraph& Y, const std::map<int, int>& seed,
                                         int x0, int r, int r2,
                                         long long budget = 200'000'000);

}  // namespace lgr
