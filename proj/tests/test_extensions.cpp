#define DOCTEST_CONFIG_IMPLEMENT_WITH_MAIN
#include <algorithm>
#include <map>
#include <random>
#include <set>
#include <vector>

#include "builders.hpp"
#include "doctest.h"
#include "lgr/extensions.hpp"
#include "lgr/util.hpp"

using namespace lgr;

namespace {

// Table positions carrying a 1, as sorted index pairs.
std::vector<std::pair<int, int>> ones_of(const Cocycle2& phi) {
  std::vector<std::pair<int, int>> out;
  int n = static_cast<int>(phi.table.size());
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j)
      if (phi.table[i][j]) out.push_back({i, j});
  return out;
}

std::map<long long, int> order_profile(const GroupOracle& G) {
  std::map<long long, int> prof;
  for (const Elem& g : G.enumerate()) ++prof[G.order_of(g).n];
  return prof;
}

int functional_on(const std::vector<std::pair<int, int>>& cert, const Cocycle2& phi) {
  int s = 0;
  for (auto [i, j] : cert) s ^= phi.table[i][j];
  return s;
}

// All 2^|G| coboundary tables of a small group, for exhaustive cross-checks.
std::vector<Cocycle2> all_coboundaries(const GroupOracle& G) {
  int n = static_cast<int>(G.enumerate().size());
  std::vector<Cocycle2> out;
  for (int m = 0; m < (1 << n); ++m) {
    std::vector<std::uint8_t> psi(n);
    for (int b = 0; b < n; ++b) psi[b] = (m >> b) & 1;
    out.push_back(coboundary_of(G, psi));
  }
  return out;
}

GenSet pm_one(const GroupOracle& G, int q) { return make_genset(G, {{1}, {q - 1}}); }

// phi(x, y) = x2 * y1 on (Z/2)^2: a bilinear non-coboundary vanishing on the
// squares of both standard generators.
Cocycle2 bilinear_cocycle() {
  GroupOracle k4 = GroupOracle::lattice_quotient(2, {{2, 0}, {0, 2}});
  auto elems = k4.enumerate();
  int n = static_cast<int>(elems.size());
  std::vector<std::vector<std::uint8_t>> t(n, std::vector<std::uint8_t>(n, 0));
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) t[i][j] = static_cast<std::uint8_t>((elems[i][1] * elems[j][0]) & 1);
  return make_cocycle(k4, elems, t);
}

}  // namespace

TEST_CASE("cocycle tables validate the associativity identity") {
  CHECK(validate_cocycle(zero_cocycle(GroupOracle::cyclic(4))).ok);
  CHECK(validate_cocycle(zero_cocycle(GroupOracle::cyclic(6))).ok);

  Cocycle2 carry = carry_cocycle(4);
  CHECK(carry.normalized);
  CHECK(ones_of(carry) ==
        std::vector<std::pair<int, int>>{{1, 3}, {2, 2}, {2, 3}, {3, 1}, {3, 2}, {3, 3}});
  CHECK(validate_cocycle(carry).ok);
  // Independent arithmetic recheck of all 64 triples: the identity for the
  // carry bit is the associativity of integer addition split into digits.
  for (int a = 0; a < 4; ++a)
    for (int b = 0; b < 4; ++b)
      for (int c = 0; c < 4; ++c) {
        int lhs = (a + (b + c) % 4 >= 4 ? 1 : 0) ^ (b + c >= 4 ? 1 : 0);
        int rhs = ((a + b) % 4 + c >= 4 ? 1 : 0) ^ (a + b >= 4 ? 1 : 0);
        CHECK(lhs == rhs);
        CHECK((carry.at({a}, {(b + c) % 4}) ^ carry.at({b}, {c})) ==
              (carry.at({(a + b) % 4}, {c}) ^ carry.at({a}, {b})));
      }

  GroupOracle z3 = GroupOracle::cyclic(3);
  Cocycle2 bad = make_cocycle(z3, {{0, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  CocycleCheck bv = validate_cocycle(bad);
  REQUIRE_FALSE(bv.ok);
  CHECK(bv.reason == "cocycle identity fails");
  CHECK(bv.g1 == Elem{1});
  CHECK(bv.g2 == Elem{1});
  CHECK(bv.g3 == Elem{2});
  // the reported triple genuinely violates: lhs phi(1,0)+phi(1,2)=0, rhs phi(2,2)+phi(1,1)=1
  CHECK((bad.at({1}, {0}) ^ bad.at({1}, {2})) != (bad.at({2}, {2}) ^ bad.at({1}, {1})));

  CHECK_THROWS_WITH_AS(make_cocycle(z3, {{0, 0}, {0, 0}}), "cocycle table shape mismatch",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_cocycle(z3, {{0, 0, 0}, {0, 2, 0}, {0, 0, 0}}),
                       "cocycle entries must be 0 or 1", std::invalid_argument);
  CHECK_THROWS_WITH_AS(make_cocycle(z3, {{0}, {1}, {1}}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}}),
                       "cocycle domain repeats an element", std::invalid_argument);
  CHECK_THROWS_WITH_AS(carry_cocycle(1), "carry cocycle needs modulus at least 2",
                       std::invalid_argument);

  // Truncated domain: triples whose products leave the slice are skipped, and
  // queries outside the slice are refused.
  GroupOracle z5 = GroupOracle::cyclic(5);
  Cocycle2 part = make_cocycle(z5, {{0}, {1}, {4}}, {{0, 0, 0}, {0, 0, 0}, {0, 0, 0}});
  CHECK(validate_cocycle(part).ok);
  CHECK(part.index_of({2}) == -1);
  CHECK(part.at({1}, {4}) == 0);
  CHECK_THROWS_WITH_AS(part.at({1}, {2}), "cocycle query outside the stored domain",
                       std::invalid_argument);
}

TEST_CASE("coboundary solver returns psi or a separating functional") {
  GroupOracle z4 = GroupOracle::cyclic(4);
  CoboundaryResult zres = is_coboundary(zero_cocycle(z4));
  REQUIRE(zres.yes);
  CHECK(zres.psi == std::vector<std::uint8_t>{0, 0, 0, 0});

  Cocycle2 carry = carry_cocycle(4);
  CoboundaryResult cres = is_coboundary(carry);
  REQUIRE_FALSE(cres.yes);
  CHECK(cres.certificate ==
        std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {1, 2}, {1, 3}});
  CHECK(functional_on(cres.certificate, carry) == 1);
  // the functional kills every coboundary, and none of the 16 psi reproduce carry
  for (const Cocycle2& d : all_coboundaries(z4)) {
    CHECK(functional_on(cres.certificate, d) == 0);
    CHECK(d.table != carry.table);
  }

  // odd moduli have trivial carry classes: the solver recovers a psi
  for (int q : {3, 5}) {
    Cocycle2 cq = carry_cocycle(q);
    CoboundaryResult r = is_coboundary(cq);
    REQUIRE(r.yes);
    CHECK(coboundary_of(cq.base, r.psi).table == cq.table);
  }

  // round trip on Z/6, including psi with psi(e) = 1
  GroupOracle z6 = GroupOracle::cyclic(6);
  std::mt19937 rng(40618);
  for (int t = 0; t < 100; ++t) {
    std::vector<std::uint8_t> psi(6);
    for (auto& x : psi) x = rng() & 1;
    Cocycle2 d = coboundary_of(z6, psi);
    CHECK(d.normalized == (psi[0] == 0));
    CoboundaryResult r = is_coboundary(d);
    REQUIRE(r.yes);
    CHECK(coboundary_of(z6, r.psi).table == d.table);
  }

  CHECK_FALSE(is_coboundary(bilinear_cocycle()).yes);
  CHECK_THROWS_WITH_AS(coboundary_of(z6, {0, 1, 0}), "psi length must match the group order",
                       std::invalid_argument);

  // deterministic: repeated runs agree bit for bit
  CoboundaryResult again = is_coboundary(carry);
  CHECK(again.certificate == cres.certificate);
}

TEST_CASE("central extensions realize the carry classes") {
  Cocycle2 carry = carry_cocycle(4);
  GroupOracle e_carry = central_extension(carry);
  CHECK(e_carry.order_of({0, 1}).n == 8);
  CHECK(order_profile(e_carry) == std::map<long long, int>{{1, 1}, {2, 1}, {4, 2}, {8, 4}});

  GroupOracle e_zero = central_extension(zero_cocycle(GroupOracle::cyclic(4)));
  CHECK(order_profile(e_zero) == std::map<long long, int>{{1, 1}, {2, 3}, {4, 4}});

  Cocycle2 z2phi = make_cocycle(GroupOracle::cyclic(2), {{0, 0}, {0, 1}});
  GroupOracle e_z2 = central_extension(z2phi);
  CHECK(e_z2.order_of({0, 1}).n == 4);
  CHECK(order_profile(e_z2) == std::map<long long, int>{{1, 1}, {2, 1}, {4, 2}});

  CHECK(central_extension(carry_cocycle(6)).order_of({0, 1}).n == 12);

  // shifting by the constant coboundary normalizes without changing the class
  Cocycle2 flipped = carry;
  for (auto& row : flipped.table)
    for (auto& x : row) x ^= 1;
  flipped.normalized = false;
  CHECK(validate_cocycle(flipped).ok);  // a constant shift is still a cocycle
  Cocycle2 renorm = normalized_cocycle(flipped);
  CHECK(renorm.table == carry.table);
  CHECK(order_profile(central_extension(flipped)) == order_profile(e_carry));

  // (1, e) is central and squares to the identity
  Elem sheet = {1, 0};
  for (const Elem& x : e_carry.enumerate())
    CHECK(e_carry.eq(e_carry.mul(sheet, x), e_carry.mul(x, sheet)));
  CHECK(e_carry.eq(e_carry.mul(sheet, sheet), e_carry.identity()));

  // the section recovers the cocycle: phi(g1,g2) = sheet bit of s(g1)s(g2)s(g1g2)^-1
  auto elems = carry.base.enumerate();
  for (const Elem& g1 : elems)
    for (const Elem& g2 : elems) {
      auto lift = [](const Elem& g) {
        Elem l = {0};
        l.insert(l.end(), g.begin(), g.end());
        return l;
      };
      Elem w = e_carry.mul(e_carry.mul(lift(g1), lift(g2)),
                           e_carry.inv(lift(carry.base.mul(g1, g2))));
      CHECK(w[0] == carry.at(g1, g2));
    }

  // group axioms, exhaustively at this scale
  auto all = e_carry.enumerate();
  for (const Elem& a : all) {
    CHECK(e_carry.eq(e_carry.mul(a, e_carry.identity()), a));
    CHECK(e_carry.eq(e_carry.mul(a, e_carry.inv(a)), e_carry.identity()));
    for (const Elem& b : all)
      for (const Elem& c : all)
        CHECK(e_carry.eq(e_carry.mul(e_carry.mul(a, b), c), e_carry.mul(a, e_carry.mul(b, c))));
  }

  Cocycle2 orphan = make_cocycle(GroupOracle::cyclic(3), {{1}, {2}},
                                 {{0, 0}, {0, 0}});
  CHECK_THROWS_WITH_AS(normalized_cocycle(orphan), "cocycle domain does not contain the identity",
                       std::invalid_argument);
}

TEST_CASE("section lifts are symmetric exactly when the inverse pairs vanish") {
  GroupOracle z4 = GroupOracle::cyclic(4);
  GenSet s4 = pm_one(z4, 4);

  SectionLift lz = section_lift(zero_cocycle(z4), s4);
  CHECK(lz.symmetric);
  CHECK(lz.genset.elems == std::vector<Elem>{{0, 1}, {0, 3}});

  SectionLift lc = section_lift(carry_cocycle(4), s4);
  CHECK_FALSE(lc.symmetric);
  CHECK(lc.failing == Elem{0, 1});  // its inverse (1,3) lies in the other sheet

  Cocycle2 bil = bilinear_cocycle();
  GenSet sk = make_genset(bil.base, {{1, 0}, {0, 1}});
  SectionLift lb = section_lift(bil, sk);
  CHECK(lb.symmetric);
  CHECK(lb.genset.elems == std::vector<Elem>{{0, 0, 1}, {0, 1, 0}});
}

TEST_CASE("double covers glue two sheets along the cocycle") {
  GroupOracle z4 = GroupOracle::cyclic(4);
  GenSet s4 = pm_one(z4, 4);

  TwoCoverResult tc = two_covering_from_cocycle(carry_cocycle(4), s4);
  REQUIRE(tc.check.ok);
  CHECK(tc.check.map.fiber_size == 2);
  CHECK(tc.check.injectivity_radius == 1);
  CHECK(tc.connected);
  CHECK(tc.lifted.elems == std::vector<Elem>{{0, 1}, {1, 3}});
  CHECK(tc.total.graph.n == 8);
  for (int v = 0; v < tc.total.graph.n; ++v) {
    CHECK(tc.total.graph.degree(v) == 2);
    // q strips the sheet bit
    Elem g(tc.total.elements[v].begin() + 1, tc.total.elements[v].end());
    CHECK(tc.base_graph.elements[tc.vertex_map[v]] == g);
  }
  IsoConstraints none;
  BudgetCounter bc(5'000'000);
  CHECK(find_isomorphism(tc.total.graph, cycle_graph(8), none, bc).has_value());
  CHECK(cover_ball_preimage(tc, {0}, 1).components == 2);
  CHECK(cover_ball_preimage(tc, {0}, 1).disconnected);
  CHECK(cover_ball_preimage(tc, {0}, 2).components == 1);

  TwoCoverResult tz = two_covering_from_cocycle(zero_cocycle(z4), s4);
  REQUIRE(tz.check.ok);
  CHECK(tz.check.map.fiber_size == 2);
  CHECK_FALSE(tz.connected);
  PreimageReport whole = cover_ball_preimage(tz, {0}, 2);
  CHECK(static_cast<int>(whole.base_ball.size()) == 4);
  CHECK(whole.components == 2);  // two disjoint copies of the base cycle

  Cocycle2 bil = bilinear_cocycle();
  GenSet sk = make_genset(bil.base, {{1, 0}, {0, 1}});
  TwoCoverResult tb = two_covering_from_cocycle(bil, sk);
  REQUIRE(tb.check.ok);
  CHECK(tb.check.map.fiber_size == 2);
  CHECK(tb.connected);
  CHECK(order_profile(tb.extension) == std::map<long long, int>{{1, 1}, {2, 5}, {4, 2}});

  // connectivity of the total graph reproduces the coboundary test
  for (const Cocycle2& phi : {carry_cocycle(4), zero_cocycle(z4)})
    CHECK(two_covering_from_cocycle(phi, s4).connected == !is_coboundary(phi).yes);
  CHECK(tb.connected == !is_coboundary(bil).yes);

  // an involution whose square entry is 1 lifts to an order-4 element
  GroupOracle k4 = bil.base;
  auto elems = k4.enumerate();
  int nk = static_cast<int>(elems.size());
  std::vector<std::vector<std::uint8_t>> qt(nk, std::vector<std::uint8_t>(nk, 0));
  for (int i = 0; i < nk; ++i)
    for (int j = 0; j < nk; ++j)
      qt[i][j] = static_cast<std::uint8_t>((elems[i][0] * elems[j][0]) & 1);
  Cocycle2 quat = make_cocycle(k4, elems, qt);
  REQUIRE(validate_cocycle(quat).ok);
  CHECK_THROWS_WITH_AS(two_covering_from_cocycle(quat, sk),
                       "involution lift has order four: (1,0)", std::invalid_argument);

  Cocycle2 bad = make_cocycle(GroupOracle::cyclic(3), {{0, 0, 0}, {0, 1, 0}, {0, 0, 0}});
  GenSet s3 = make_genset(GroupOracle::cyclic(3), {{1}, {2}});
  CHECK_THROWS_WITH_AS(two_covering_from_cocycle(bad, s3), "cocycle identity fails",
                       std::invalid_argument);
  CHECK_THROWS_WITH_AS(cover_ball_preimage(tc, {0}, -1), "radius must be nonnegative",
                       std::invalid_argument);
}

TEST_CASE("short vanishing search separates flat classes from coboundaries") {
  GroupOracle z4 = GroupOracle::cyclic(4);
  GenSet s4 = pm_one(z4, 4);

  VanishingSearch vs = short_vanishing_cocycle_search(z4, s4, 2);
  REQUIRE(vs.found);
  CHECK(vs.solution_dim == 2);
  // identity pairs of combined length <= 1 plus the generator inverse pairs
  CHECK(vs.constrained == std::vector<std::pair<int, int>>{{0, 0}, {0, 1}, {0, 3}, {1, 0},
                                                           {1, 3}, {3, 0}, {3, 1}});
  CHECK(ones_of(vs.cocycle) ==
        std::vector<std::pair<int, int>>{{1, 1}, {2, 2}, {2, 3}, {3, 2}});
  CHECK(vs.cocycle.normalized);
  CHECK(validate_cocycle(vs.cocycle).ok);
  CHECK(vs.certificate == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}, {1, 2}, {1, 3}});
  CHECK(functional_on(vs.certificate, vs.cocycle) == 1);
  for (const Cocycle2& d : all_coboundaries(z4)) {
    CHECK(functional_on(vs.certificate, d) == 0);
    CHECK(d.table != vs.cocycle.table);  // not a coboundary, exhaustively
  }

  // the witness cover splits over the unit ball and only there
  TwoCoverResult cover = two_covering_from_cocycle(vs.cocycle, s4);
  REQUIRE(cover.check.ok);
  CHECK(cover.check.map.fiber_size == 2);
  CHECK(cover.connected);
  CHECK(cover_ball_preimage(cover, {0}, 1).disconnected);
  CHECK_FALSE(cover_ball_preimage(cover, {0}, 2).disconnected);

  CHECK_FALSE(short_vanishing_cocycle_search(z4, s4, 3).found);
  CHECK_FALSE(short_vanishing_cocycle_search(z4, s4, 4).found);

  // Z/2: the lone nontrivial class needs phi(1,1) = 1, but (1,1) is the inverse
  // pair of the only generator, so nothing flat survives at any n.
  GroupOracle z2 = GroupOracle::cyclic(2);
  GenSet s2 = make_genset(z2, {{1}});
  VanishingSearch v21 = short_vanishing_cocycle_search(z2, s2, 1);
  CHECK_FALSE(v21.found);
  CHECK(v21.constrained == std::vector<std::pair<int, int>>{{0, 0}, {1, 1}});
  CHECK_FALSE(short_vanishing_cocycle_search(z2, s2, 2).found);
  // exhaustive cross-check: every 2x2 table meeting the constraints that is a
  // cocycle at all is one of the 4 coboundary tables
  {
    std::set<std::vector<std::vector<std::uint8_t>>> cob;
    for (const Cocycle2& d : all_coboundaries(z2)) cob.insert(d.table);
    for (int m = 0; m < 16; ++m) {
      std::vector<std::vector<std::uint8_t>> t = {
          {static_cast<std::uint8_t>(m & 1), static_cast<std::uint8_t>((m >> 1) & 1)},
          {static_cast<std::uint8_t>((m >> 2) & 1), static_cast<std::uint8_t>((m >> 3) & 1)}};
      if (t[0][0] || t[1][1]) continue;  // constrained entries
      Cocycle2 cand = make_cocycle(z2, t);
      if (!validate_cocycle(cand).ok) continue;
      CHECK(cob.count(cand.table) == 1);
    }
  }

  // (Z/2)^2 at n=2: a bilinear witness, certified by the asymmetry functional
  Cocycle2 bil = bilinear_cocycle();
  GenSet sk = make_genset(bil.base, {{1, 0}, {0, 1}});
  VanishingSearch vk = short_vanishing_cocycle_search(bil.base, sk, 2);
  REQUIRE(vk.found);
  CHECK(vk.solution_dim == 2);
  CHECK(ones_of(vk.cocycle) ==
        std::vector<std::pair<int, int>>{{2, 1}, {2, 3}, {3, 1}, {3, 3}});
  CHECK(vk.certificate == std::vector<std::pair<int, int>>{{1, 2}, {2, 1}});
  TwoCoverResult ck = two_covering_from_cocycle(vk.cocycle, sk);
  REQUIRE(ck.check.ok);
  CHECK(ck.connected);
  CHECK(cover_ball_preimage(ck, {0, 0}, 1).disconnected);
  CHECK_FALSE(cover_ball_preimage(ck, {0, 0}, 2).disconnected);

  // Z/8 at n=3: the flat radius exceeds the guaranteed n-1
  GroupOracle z8 = GroupOracle::cyclic(8);
  GenSet s8 = pm_one(z8, 8);
  VanishingSearch v8 = short_vanishing_cocycle_search(z8, s8, 3);
  REQUIRE(v8.found);
  CHECK(validate_cocycle(v8.cocycle).ok);
  CHECK_FALSE(is_coboundary(v8.cocycle).yes);
  TwoCoverResult c8 = two_covering_from_cocycle(v8.cocycle, s8);
  REQUIRE(c8.check.ok);
  CHECK(c8.connected);
  int largest_split = -1;
  for (int r = 0; r <= 4; ++r)
    if (cover_ball_preimage(c8, {0}, r).disconnected) largest_split = r;
  CHECK(largest_split == 3);  // >= n-1 = 2

  CHECK_THROWS_WITH_AS(short_vanishing_cocycle_search(z4, s4, 0), "n must be at least 1",
                       std::invalid_argument);

  VanishingSearch again = short_vanishing_cocycle_search(z4, s4, 2);
  CHECK(again.cocycle.table == vs.cocycle.table);
  CHECK(again.certificate == vs.certificate);
}

TEST_CASE("cohomologous cocycles give matching covers") {
  GroupOracle z4 = GroupOracle::cyclic(4);
  GenSet s4 = pm_one(z4, 4);
  Cocycle2 carry = carry_cocycle(4);
  Cocycle2 shift = coboundary_of(z4, {0, 1, 0, 0});
  Cocycle2 moved = carry;
  for (size_t i = 0; i < moved.table.size(); ++i)
    for (size_t j = 0; j < moved.table.size(); ++j) moved.table[i][j] ^= shift.table[i][j];
  REQUIRE(validate_cocycle(moved).ok);
  CHECK_FALSE(is_coboundary(moved).yes);

  TwoCoverResult a = two_covering_from_cocycle(carry, s4);
  TwoCoverResult b = two_covering_from_cocycle(moved, s4);
  REQUIRE(a.check.ok);
  REQUIRE(b.check.ok);
  CHECK(order_profile(a.extension) == order_profile(b.extension));

  // some isomorphism of the total graphs carries fibers to fibers
  bool matched = false;
  IsoConstraints none;
  BudgetCounter bc(5'000'000);
  enumerate_isomorphisms(a.total.graph, b.total.graph, none, bc,
                         [&](const std::vector<int>& iso) {
                           std::vector<int> sigma(a.base_graph.graph.n, -1);
                           bool good = true;
                           for (int v = 0; v < a.total.graph.n && good; ++v) {
                             int from = a.vertex_map[v], to = b.vertex_map[iso[v]];
                             if (sigma[from] < 0) sigma[from] = to;
                             good = sigma[from] == to;
                           }
                           matched = good;
                           return !good;  // stop at the first fiber-respecting one
                         });
  CHECK(matched);
}
