#pragma once
// Group oracles: a tagged value type covering the group realizations the
// library needs (cyclic, Z^d, lattice quotients, permutation groups,
// truncated free groups, direct and semidirect products, central extensions
// by Z/2). Elements are canonical vectors of integers; all operations are
// pure and validate their inputs.

#include <map>
#include <memory>
#include <string>
#include <vector>

#include "lgr/util.hpp"

namespace lgr {

using Elem = std::vector<long long>;

struct OrderResult {
  enum Kind { finite, infinite, unknown } kind = unknown;
  long long n = 0;  // set when finite
};

struct GroupOracle {
  enum Kind {
    cyclic_k,
    zd_k,
    lattice_quotient_k,
    perm_k,
    free_k,
    product_k,
    semidirect_k,
    central_ext_k
  };
  Kind kind = cyclic_k;

  long long n = 0;                               // cyclic
  int d = 0;                                     // zd / lattice_quotient
  std::vector<std::vector<long long>> basis;     // lattice_quotient: sublattice rows
  std::vector<std::vector<long long>> hnf;       // derived: upper triangular form
  int degree = 0;                                // perm
  std::vector<std::vector<int>> perm_gens;       // perm: one-line images
  int rank = 0;                                  // free
  int trunc = 0;                                 // free: hard word-length cap
  std::shared_ptr<const GroupOracle> left;       // product / semidirect (normal part)
  std::shared_ptr<const GroupOracle> right;      // product / semidirect (acting part)
  std::vector<std::vector<int>> action;          // semidirect: [k index][n index] -> n index
  std::shared_ptr<const GroupOracle> base;       // central_ext
  std::vector<std::vector<int>> cocycle;         // central_ext: GF(2) table over base indices

  // Enumeration caches for kinds that need element indexing.
  std::vector<Elem> cached_elems;
  std::map<Elem, int> cached_index;

  static GroupOracle cyclic(long long n);
  static GroupOracle zd(int d);
  static GroupOracle lattice_quotient(int d, std::vector<std::vector<long long>> basis);
  static GroupOracle perm_group(int degree, std::vector<std::vector<int>> gens);
  static GroupOracle free_group(int rank, int trunc);
  static GroupOracle product(GroupOracle l, GroupOracle r);
  // N ⋊ K; action[k][i] = index of alpha_k(n_i) in N's enumeration.
  static GroupOracle semidirect(GroupOracle n_part, GroupOracle k_part,
                                std::vector<std::vector<int>> action);
  // Central extension of `base` by Z/2 along a normalized 2-cocycle
  // (phi(e,g) = phi(g,e) = 0); elements are [bit | base element].
  static GroupOracle central_ext_z2(GroupOracle base, std::vector<std::vector<int>> cocycle);

  Elem identity() const;
  Elem canon(const Elem& a) const;  // canonical form; throws on malformed input
  Elem mul(const Elem& a, const Elem& b) const;
  Elem inv(const Elem& a) const;
  bool eq(const Elem& a, const Elem& b) const { return canon(a) == canon(b); }
  bool is_identity(const Elem& a) const { return canon(a) == identity(); }
  OrderResult order_of(const Elem& a) const;

  bool enumerable() const;
  // All elements in canonical sorted order; throws budget_error past cap.
  std::vector<Elem> enumerate(long long cap = 1'000'000) const;

  int flat_size() const;  // fixed element width, -1 for variable (free groups)
  std::string describe() const;
  std::string show(const Elem& a) const;  // human-readable element

  int index_of(const Elem& a) const;  // index in enumerate() order; cached
};

// A symmetric, identity-free set of canonical elements (sorted, deduped).
struct GenSet {
  std::vector<Elem> elems;
};

GenSet make_genset(const GroupOracle& G, std::vector<Elem> elems);
bool genset_contains(const GenSet& s, const Elem& canonical);
// Unordered pairs {s, s^-1} (singletons when s is an involution), sorted by
// their minimal representative; the index of a class is its edge label.
std::vector<std::vector<Elem>> inversion_classes(const GroupOracle& G, const GenSet& S);
int inversion_class_of(const GroupOracle& G, const std::vector<std::vector<Elem>>& classes,
                       const Elem& s);

}  // namespace lgr
