#pragma once

#include <cstdint>
#include <string>
#include <utility>
#include <vector>

#include "lgr/cayley.hpp"
#include "lgr/graph.hpp"
#include "lgr/group.hpp"
#include "lgr/rigidity.hpp"

namespace lgr {

// --- Z/2-valued 2-cocycles ----------------------------------------------------

// Dense table phi(g1, g2) over a stored element domain. For a finite group the
// domain is the full enumeration; for a truncated oracle it is whatever slice
// the caller supplies, and queries outside the domain are refused.
struct Cocycle2 {
  GroupOracle base;
  std::vector<Elem> elements;                    // canonical, aligned with table
  std::vector<std::vector<std::uint8_t>> table;  // table[i][j] = phi(elements[i], elements[j])
  bool normalized = false;                       // phi(e,g) = phi(g,e) = 0 declared

  int index_of(const Elem& g) const;  // -1 when outside the domain
  std::uint8_t at(const Elem& g1, const Elem& g2) const;
};

// Full-enumeration domain in the oracle's order.
Cocycle2 make_cocycle(const GroupOracle& base, std::vector<std::vector<std::uint8_t>> table);
// Explicit domain (for ball-truncated oracles).
Cocycle2 make_cocycle(const GroupOracle& base, std::vector<Elem> domain,
                      std::vector<std::vector<std::uint8_t>> table);
Cocycle2 zero_cocycle(const GroupOracle& base);
// On Z/q: the wraparound bit of addition, phi(a,b) = [a+b >= q].
Cocycle2 carry_cocycle(int q);
// d(psi)(g1,g2) = psi(g1) + psi(g2) + psi(g1 g2); psi aligned with the enumeration.
Cocycle2 coboundary_of(const GroupOracle& base, const std::vector<std::uint8_t>& psi);
// Shifts by the constant phi(e,e), which zeroes the identity row and column of
// any table satisfying the cocycle identity.
Cocycle2 normalized_cocycle(const Cocycle2& phi);

struct CocycleCheck {
  bool ok = false;
  Elem g1, g2, g3;  // violating triple when !ok
  std::string reason;
};

// Exhaustive check of phi(g1, g2 g3) + phi(g2, g3) = phi(g1 g2, g3) + phi(g1, g2)
// over all domain triples whose products stay inside the domain.
CocycleCheck validate_cocycle(const Cocycle2& phi);

struct CoboundaryResult {
  bool yes = false;
  std::vector<std::uint8_t> psi;  // d(psi) = phi when yes, aligned with the domain
  // When phi is not a coboundary: domain index pairs (i, j) such that summing
  // the table over them gives 1 on phi but 0 on d(psi) for every psi, i.e. a
  // GF(2) functional separating phi from the coboundary subspace.
  std::vector<std::pair<int, int>> certificate;
};

// GF(2) solve of psi(g1) + psi(g2) + psi(g1 g2) = phi(g1, g2); the certificate
// is the row combination of a failed elimination.
CoboundaryResult is_coboundary(const Cocycle2& phi);

// --- central extensions --------------------------------------------------------

// The group of pairs (a, g), a in Z/2, with (a, g1)(b, g2) = (a+b+phi(g1,g2), g1 g2),
// as a flat-element oracle {a, g...}. The table is normalized first, so the
// result only depends on the class of phi.
GroupOracle central_extension(const Cocycle2& phi);

struct SectionLift {
  GroupOracle extension;
  std::vector<Elem> elems;  // (0, s) for s in S, canonical
  bool symmetric = false;   // closed under the extension inverse
  Elem failing;             // first lift whose inverse is missing, when not symmetric
  GenSet genset;            // valid only when symmetric
};

// Plain lift s -> (0, s). (0,s)^-1 = (0, s^-1) exactly when phi(s, s^-1) = 0;
// otherwise the inverse lands in the other sheet and the lift is reported
// asymmetric.
SectionLift section_lift(const Cocycle2& phi, const GenSet& S);

// --- 2-coverings ----------------------------------------------------------------

struct TwoCoverResult {
  GroupOracle base;
  GroupOracle extension;
  GenSet lifted;           // one section lift per inversion class plus its inverse
  CayleyGraph total;            // Cayley graph of (extension, lifted)
  CayleyGraph base_graph;       // Cayley graph of (base, S)
  std::vector<int> vertex_map;  // q by vertex ids: total -> base_graph
  CoveringCheck check;          // star-bijective with fiber 2 when ok
  bool connected = false;       // of the total graph; equals "phi is not a coboundary"
};

// Builds q: Cay(E, S_tau) -> Cay(G, S) with q((a, g)) = g. When phi(s, s^-1) = 1
// the plain lift of an inverse pair is asymmetric, so the lift takes (0, s) and
// its extension inverse instead. An involution s with phi(s, s) = 1 lifts to an
// element of order four and admits no symmetric two-sheet lift at all.
TwoCoverResult two_covering_from_cocycle(const Cocycle2& phi, const GenSet& S,
                                         long long budget = 1'000'000);

struct PreimageReport {
  std::vector<int> base_ball;  // base-graph vertex ids within the ball
  int components = 0;          // of the preimage subgraph in the total graph
  bool disconnected = false;
};

// Component count of q^-1(B(center, radius)) in the total graph.
PreimageReport cover_ball_preimage(const TwoCoverResult& cover, const Elem& center, int radius);

// --- short vanishing cocycles ----------------------------------------------------

struct VanishingSearch {
  bool found = false;
  Cocycle2 cocycle;  // non-coboundary witness when found
  std::vector<std::pair<int, int>> certificate;  // functional separating it from coboundaries
  std::vector<std::pair<int, int>> constrained;  // domain index pairs forced to zero
  int solution_dim = 0;  // GF(2) dimension of the constrained cocycle space
};

// Looks for a 2-cocycle on finite G that vanishes on every pair with
// |g1|_S + |g2|_S < n and on every inverse pair (s, s^-1) of generators, yet is
// not a coboundary. The inverse-pair constraint keeps the lifted generating set
// of the induced double cover symmetric, and together the two constraint
// families make every edge of the cover over B(e, n-1) stay inside one sheet.
// Returns a witness with its certificate, or certifies that every constrained
// cocycle is a coboundary.
VanishingSearch short_vanishing_cocycle_search(const GroupOracle& G, const GenSet& S, int n);

}  // namespace lgr
