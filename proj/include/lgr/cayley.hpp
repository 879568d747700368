#pragma once
// Cayley balls and graphs over group oracles, word metrics, distortion of a
// sub-generating-set inside a larger one, and word-length layer sets.

#include <optional>

#include "lgr/graph.hpp"
#include "lgr/group.hpp"

namespace lgr {

// A Cayley ball: carrier graph over the elements of word length <= R in the
// subgroup generated by S, rooted at the identity. element_of maps carrier
// vertex ids to group elements; vertices are added layer by layer, each layer
// in canonical element order, so ids are deterministic.
struct CayleyBall {
  BallView ball;
  std::vector<Elem> element_of;
  Elem center;
  std::vector<std::vector<Elem>> label_classes;  // nonempty iff marked
};

CayleyBall cayley_ball(const GroupOracle& G, const GenSet& S, int R,
                       long long budget = 1'000'000, bool marked = false);
CayleyBall marked_cayley_ball(const GroupOracle& G, const GenSet& S, int R,
                              long long budget = 1'000'000);

// Full Cayley graph of a finite group; may be disconnected when S does not
// generate. Vertex ids follow the oracle's enumeration order.
struct CayleyGraph {
  SimpleGraph graph;
  std::vector<Elem> elements;
  std::vector<std::vector<Elem>> label_classes;  // nonempty iff marked
  int index_of(const GroupOracle& G, const Elem& e) const;
};

CayleyGraph cayley_graph(const GroupOracle& G, const GenSet& S, long long budget = 1'000'000,
                         bool marked = false);
CayleyGraph marked_cayley_graph(const GroupOracle& G, const GenSet& S,
                                long long budget = 1'000'000);

struct WordLengthResult {
  enum Status { found, absent, budget_out } status = budget_out;
  int length = -1;  // set when found
};
// |g|_S by breadth-first layers from the identity; `absent` means the ball of
// <S> saturated without meeting g.
WordLengthResult word_length(const GroupOracle& G, const GenSet& S, const Elem& g,
                             long long budget = 1'000'000);

struct DistortionResult {
  int rho = 0;             // max |g|_S over elements of B_T(R) resolved in <S>
  long long unresolved = 0;  // B_T(R) elements with undecided <S>-membership
  bool exact = false;        // true when nothing is left unresolved
};
// rho(R) = max { |g|_S : g in <S>, |g|_T <= R }. Membership of a B_T(R)
// element in <S> is only semi-decidable; expansion of the S-ball stops when
// everything is resolved, <S> is exhausted, or the budget runs out.
DistortionResult distortion_rho(const GroupOracle& H, const GenSet& S, const GenSet& T, int R,
                                long long budget = 1'000'000);

// All elements of word length 1..N with respect to S1, as a GenSet.
GenSet build_S_N(const GroupOracle& G, const GenSet& S1, int N, long long budget = 1'000'000);

}  // namespace lgr
