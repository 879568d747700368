#pragma once
// The polygonal complex on a graph whose 2-cells are its short simple cycles:
// cell enumeration, the k-universal cover built by breadth-first tiling with
// union-find folding, a budgeted simple-connectivity test, and the filling
// radius of short loops.

#include "lgr/graph.hpp"

namespace lgr {

struct CellSet {
  int k = 0;
  // Each cell is a simple cycle (x0..x_{m-1}), 3 <= m <= k, stored once up to
  // rotation and reflection (canonical form: smallest vertex first, smaller
  // neighbor second).
  std::vector<std::vector<int>> cells;
};

CellSet short_cycle_cells(const SimpleGraph& g, int k, long long budget = 5'000'000);

struct CoverBall {
  enum Status { exact, fuel_exhausted };
  BallView ball;                // radius-R ball of the cover, rooted at the lift of base
  std::vector<int> projection;  // cover vertex -> base vertex
  Status status = fuel_exhausted;
};

// Radius-R ball of the 1-skeleton of the universal cover of the k-cell
// complex, rooted over `base`. Vertices are path classes built breadth-first
// to radius R + k and folded across cell relations until fixpoint; the status
// degrades unless every incomplete cell instance stays clear of the reported
// ball.
CoverBall k_universal_cover_ball(const SimpleGraph& g, int base, int k, int R,
                                 long long fuel = 2'000'000);

enum class Verdict3 { yes, no, unknown };

struct SimplyConnectedReport {
  Verdict3 verdict = Verdict3::unknown;
  int radius = 0;       // radius at which the comparison was decided
  int cover_count = 0;  // cover-ball vertex count at that radius
  int ball_count = 0;   // base-ball vertex count at that radius
  bool exact = false;   // the deciding cover ball carried an exactness certificate
};

// Semi-decision: yes when the cover folds onto the graph bijectively, no when
// an exact cover ball strictly exceeds the base ball, unknown on fuel
// exhaustion.
SimplyConnectedReport is_k_simply_connected(const SimpleGraph& g, int k,
                                            long long budget = 2'000'000);

struct FillRadiusResult {
  bool found = false;    // false: no R2 <= diameter works (or undecided)
  int r2 = -1;           // set when found
  bool decided = false;  // false only when a budget ran out mid-search
};

// Least R2 such that every loop based at any x and contained in B(x,R1)
// contracts through cells of size <= k using only vertices of B(x,R2).
FillRadiusResult fill_radius(const SimpleGraph& g, int k, int R1, long long budget = 2'000'000);

}  // namespace lgr
