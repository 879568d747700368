#pragma once
// Glued graphs: a base graph partitioned into isomorphic pieces plus a
// 2-covering of the piece model, assembled with inner / outer / vertical
// edges. Covers the Cayley specializations (the X0 double-sheet graph and
// the X_q graph that replaces the identity-coset sheets by a chosen cover),
// the triangle-count condition that makes the vertical class recognizable,
// blind fiber detection, admissible-edge analysis, and exact Lipschitz
// comparison of two gluings over the same base.

#include <cstdint>
#include <functional>
#include <string>
#include <vector>

#include "lgr/cayley.hpp"
#include "lgr/graph.hpp"
#include "lgr/group.hpp"
#include "lgr/rigidity.hpp"
#include "lgr/util.hpp"

namespace lgr {

enum class EdgeKind : std::uint8_t { inner = 0, outer = 1, vertical = 2 };

// Membership predicate for a subgroup; always called on canonical elements.
using Membership = std::function<bool(const Elem&)>;

// A base graph X partitioned into pieces Y_i, each isomorphic to a model Y
// through an explicit isomorphism f_i.
struct PartitionedBase {
  SimpleGraph X;
  SimpleGraph Y;
  std::vector<std::vector<int>> pieces;      // pieces[i] = X vertices of Y_i
  std::vector<std::vector<int>> piece_isos;  // piece_isos[i][y] = X vertex
};

// Throws std::invalid_argument("malformed partition: ...") when the pieces do
// not partition V(X) or some f_i is not an isomorphism onto the induced Y_i.
void validate_partitioned_base(const PartitionedBase& base);

struct GluedGraph {
  SimpleGraph carrier;
  std::vector<EdgeKind> edge_kinds;      // aligned with carrier.edges
  SimpleGraph base;                      // the graph X projected onto
  std::vector<int> projection;           // carrier vertex -> base vertex
  std::vector<std::vector<int>> fibers;  // fibers[b], ascending carrier ids
  std::vector<int> piece;                // carrier vertex -> piece index
  int piece_count = 0;
};

// The trivial 2-covering of Y: two disjoint copies stacked sheet-major
// (source vertex = sheet * |Y| + y), mapped down by forgetting the sheet.
CoveringMap trivial_double_cover(const SimpleGraph& Y);

// Left-coset partition of the Cayley graph (H, T) into copies of (G, S) where
// G is the membership class and S = T n G: piece i is rep_i * G and
// f_i(y) = rep_i * y. Coset representatives default to first-seen enumeration
// order; pass `reps` (one per coset, starting with a G element) to fix the
// section, and set `homomorphic_section` to verify rep_i * rep_j = rep_{ij}
// on all pairs (throws when the claim fails).
PartitionedBase cayley_partitioned_base(const GroupOracle& H, const GenSet& T,
                                        const Membership& in_G,
                                        const std::vector<Elem>& reps = {},
                                        bool homomorphic_section = false,
                                        long long budget = 1'000'000);

// Cayley graph of H x Z/2 for the generating set
//   T' = {(e,1)}  u  (T n G) x {0}  u  (T \ G) x {0,1},
// built directly from the clauses; vertex 2k + sheet sits over the k-th
// element of H. Vertical edges join the two sheets of one element, inner
// edges are same-sheet S-steps, outer edges are T\S-steps on both sheet
// combinations. Throws std::invalid_argument("malformed T: ...") when
// S = T n G fails to generate the membership class.
GluedGraph build_X0(const GroupOracle& H, const GenSet& T, const Membership& in_G,
                    long long budget = 1'000'000);

// Replaces the two sheets over the identity coset of build_X0 by the given
// 2-covering q of (G, S): vertices are V(q.source) followed by (h, sheet) for
// h outside G; edges follow the three clauses (see build_X0 for the outside
// part; cover edges are inner, equal-image pairs vertical, cross edges outer).
// Throws std::invalid_argument("q not a covering of the right base") unless
// q is a verified 2-covering whose target equals the Cayley graph of (G, S)
// on the membership class in enumeration order.
GluedGraph build_Xq(const GroupOracle& H, const GenSet& T, const Membership& in_G,
                    const CoveringMap& q, long long budget = 1'000'000);

// General gluing: vertices V(q.source) x I with piece-major ids i*|source|+y;
// inner edges copy q.source inside each piece, outer edges join (y, i), (y',
// j) for i != j whenever f_i(q(y)) ~ f_j(q(y')) in X, vertical edges join
// distinct same-piece vertices with equal q-images. q must be a verified
// 2-covering with target equal to base.Y.
GluedGraph build_Xtilde(const PartitionedBase& base, const CoveringMap& q);

// Every edge of X in strictly fewer than min_deg(X) - max_deg(Y) - 1
// triangles; margin = rhs - lhs - 1 (>= 0 exactly when the condition holds).
struct TriangleCondition {
  bool holds = false;
  long long lhs = 0;  // max triangles over an edge of X (Cayley: max |tT n T|)
  long long rhs = 0;  // min_deg(X) - max_deg(Y) - 1  (Cayley: |T| - |S| - 1)
  long long margin = 0;
};

TriangleCondition check_triangle_condition(const SimpleGraph& X, const SimpleGraph& Y);
// Cayley form: lhs = max over t in T of |tT n T|, rhs = |T| - |S| - 1.
// Products escaping a truncated carrier count as outside T. S must be a
// subset of T.
TriangleCondition check_cayley_triangle_condition(const GroupOracle& H, const GenSet& T,
                                                  const GenSet& S);

struct MarkingGensetResult {
  GenSet T;
  std::vector<std::pair<Elem, long long>> profile;  // N3(t, T) per element
  long long max_n3 = 0;                             // over T
  long long outside = 0;                            // |T \ G|
  std::vector<Elem> adjoined;                       // elements added, in order
};

// Enlarges T1 by pairs {h, h^-1} with h outside G and |h|_{T1-so-far} > 3
// (first such element in enumeration order) until
//   max_{t in T} N3(t, T) + 1 < |T \ G|,
// recomputing the full profile each round. Requires T1 n G to generate the
// membership class. Throws std::runtime_error("carrier exhausted before the
// marking inequality holds") when no admissible element remains.
MarkingGensetResult choose_marking_genset(const GroupOracle& H, const Membership& in_G,
                                          const GenSet& T1, long long budget = 1'000'000);

// Blind fiber detection on a presumed glued graph: classifies edges by
// triangle count, splitting at a gap of size >= 2 in the count spectrum
// (vertical edges carry >= 2(m_X - M_Y) triangles, inner/outer at most
// 2(m_X - M_Y - 1), so a valid gluing always shows such a gap). Candidate
// splits are scanned from the top of the spectrum down; a split is accepted
// when the components of the vertical subgraph have uniform size and
// diameter <= 1. Those components are the fibers.
struct VerticalDetection {
  bool ok = false;
  std::vector<char> vertical_edges;      // aligned with edges, 1 = vertical
  std::vector<std::vector<int>> fibers;  // ascending vertex ids per fiber
  std::vector<int> fiber_of;             // vertex -> fiber index
  long long low_min = 0, low_max = 0;    // observed inner/outer count range
  long long high_min = 0, high_max = 0;  // observed vertical count range
  int carrier_components = 0;            // diagnostics run per component
  std::string reason;                    // set when !ok
};

VerticalDetection detect_vertical_relation(const SimpleGraph& g);

// An edge set E is admissible when every base neighbor w of p(x) is reached
// from x through an edge of E landing in the fiber over w. Edges that are
// the unique carrier edge from x into the fiber over w are forced into every
// admissible set; a disconnecting admissible set exists iff the forced edges
// never join the two sheets of one fiber (tracked by a parity-aware closure
// when all fibers have size <= 2; larger fibers fall back to a budget-guarded
// branch over the optional edges).
struct AdmissibleAnalysis {
  bool found = false;                        // disconnecting admissible set found
  std::vector<std::pair<int, int>> edges;    // the set E when found
  bool none_certified = false;               // no admissible set disconnects
  int forced_components = 0;                 // components of (V, forced edges)
  int set_components = 0;                    // components of (V, E) when found
  int carrier_components = 0;
  std::string reason;
};

AdmissibleAnalysis admissible_edge_analysis(const GluedGraph& g, long long budget = 20'000'000);

// Pairs the fibers of g1 and g2 over each base vertex in ascending id order
// and measures the exact Lipschitz constant of that bijection in both
// directions (max over edges of the image distance; -1 when an image pair is
// disconnected). Any projection-commuting bijection of gluings over the same
// base is 2-Lipschitz both ways. Throws on base or fiber-size mismatch.
struct BilipschitzReport {
  long long forward = 0;   // Lipschitz constant of the map g1 -> g2
  long long backward = 0;  // of the inverse
  long long constant = 0;  // max of the two
  bool within_two = false;
  std::vector<int> map;  // g1 carrier vertex -> g2 carrier vertex
};

BilipschitzReport bilipschitz_compare(const GluedGraph& g1, const GluedGraph& g2);

}  // namespace lgr
