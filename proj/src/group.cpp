#include "lgr/group.hpp"

#include <algorithm>
#include <numeric>
#include <set>
#include <sstream>

namespace lgr {

namespace {

long long floordiv(long long a, long long b) {
  long long q = a / b, r = a % b;
  if (r != 0 && ((r < 0) != (b < 0))) --q;
  return q;
}

long long gcd_ll(long long a, long long b) { return std::gcd(a, b); }

// Row-style Hermite normal form: upper triangular, positive diagonal,
// entries above a pivot reduced into [0, pivot). Throws if singular.
std::vector<std::vector<long long>> hermite_form(std::vector<std::vector<long long>> m, int d) {
  for (int c = 0; c < d; ++c) {
    // Euclid on column c over rows >= c.
    while (true) {
      int pivot = -1;
      for (int r = c; r < d; ++r)
        if (m[r][c] != 0 && (pivot < 0 || std::abs(m[r][c]) < std::abs(m[pivot][c]))) pivot = r;
      if (pivot < 0) throw std::invalid_argument("sublattice basis is not full rank");
      std::swap(m[c], m[pivot]);
      bool clean = true;
      for (int r = c + 1; r < d; ++r) {
        if (m[r][c] == 0) continue;
        long long q = floordiv(m[r][c], m[c][c]);
        for (int j = 0; j < d; ++j) m[r][j] -= q * m[c][j];
        if (m[r][c] != 0) clean = false;
      }
      if (clean) break;
    }
    if (m[c][c] < 0)
      for (int j = 0; j < d; ++j) m[c][j] = -m[c][j];
    for (int r = 0; r < c; ++r) {
      long long q = floordiv(m[r][c], m[c][c]);
      for (int j = 0; j < d; ++j) m[r][j] -= q * m[c][j];
    }
  }
  return m;
}

std::vector<int> compose_perm(const std::vector<int>& a, const std::vector<int>& b) {
  std::vector<int> r(a.size());
  for (size_t i = 0; i < a.size(); ++i) r[i] = a[b[i]];
  return r;
}

void reduce_word(Elem& w) {
  Elem out;
  for (long long x : w) {
    if (!out.empty() && out.back() == -x)
      out.pop_back();
    else
      out.push_back(x);
  }
  w.swap(out);
}

}  // namespace

GroupOracle GroupOracle::cyclic(long long n) {
  if (n <= 0) throw std::invalid_argument("cyclic group needs n > 0");
  GroupOracle g;
  g.kind = cyclic_k;
  g.n = n;
  return g;
}

GroupOracle GroupOracle::zd(int d) {
  if (d <= 0) throw std::invalid_argument("free abelian group needs d > 0");
  GroupOracle g;
  g.kind = zd_k;
  g.d = d;
  return g;
}

GroupOracle GroupOracle::lattice_quotient(int d, std::vector<std::vector<long long>> basis) {
  if (d <= 0) throw std::invalid_argument("lattice quotient needs d > 0");
  if (static_cast<int>(basis.size()) != d)
    throw std::invalid_argument("lattice quotient needs d basis rows");
  for (auto& row : basis)
    if (static_cast<int>(row.size()) != d)
      throw std::invalid_argument("lattice basis row of wrong width");
  GroupOracle g;
  g.kind = lattice_quotient_k;
  g.d = d;
  g.basis = basis;
  g.hnf = hermite_form(std::move(basis), d);
  return g;
}

GroupOracle GroupOracle::perm_group(int degree, std::vector<std::vector<int>> gens) {
  if (degree <= 0) throw std::invalid_argument("permutation group needs degree > 0");
  for (auto& p : gens) {
    if (static_cast<int>(p.size()) != degree)
      throw std::invalid_argument("generator of wrong degree");
    std::vector<char> seen(degree, 0);
    for (int x : p) {
      if (x < 0 || x >= degree || seen[x]) throw std::invalid_argument("not a permutation");
      seen[x] = 1;
    }
  }
  GroupOracle g;
  g.kind = perm_k;
  g.degree = degree;
  g.perm_gens = std::move(gens);
  return g;
}

GroupOracle GroupOracle::free_group(int rank, int trunc) {
  if (rank <= 0 || trunc <= 0) throw std::invalid_argument("free group needs rank, trunc > 0");
  GroupOracle g;
  g.kind = free_k;
  g.rank = rank;
  g.trunc = trunc;
  return g;
}

GroupOracle GroupOracle::product(GroupOracle l, GroupOracle r) {
  if (l.flat_size() < 0 || r.flat_size() < 0)
    throw std::invalid_argument("product factors must have fixed element width");
  GroupOracle g;
  g.kind = product_k;
  g.left = std::make_shared<const GroupOracle>(std::move(l));
  g.right = std::make_shared<const GroupOracle>(std::move(r));
  return g;
}

namespace {

void fill_cache(GroupOracle& g) {
  g.cached_elems = g.enumerate();
  for (int i = 0; i < static_cast<int>(g.cached_elems.size()); ++i)
    g.cached_index[g.cached_elems[i]] = i;
}

}  // namespace

GroupOracle GroupOracle::semidirect(GroupOracle n_part, GroupOracle k_part,
                                    std::vector<std::vector<int>> action) {
  if (n_part.flat_size() < 0 || k_part.flat_size() < 0)
    throw std::invalid_argument("semidirect factors must have fixed element width");
  if (!n_part.enumerable() || !k_part.enumerable())
    throw std::invalid_argument("semidirect factors must be finite");
  fill_cache(n_part);
  fill_cache(k_part);
  size_t nn = n_part.cached_elems.size(), nk = k_part.cached_elems.size();
  if (action.size() != nk) throw std::invalid_argument("action table needs one row per acting element");
  for (auto& row : action) {
    if (row.size() != nn) throw std::invalid_argument("action row of wrong width");
    std::vector<char> seen(nn, 0);
    for (int x : row) {
      if (x < 0 || x >= static_cast<int>(nn) || seen[x])
        throw std::invalid_argument("action row is not a permutation");
      seen[x] = 1;
    }
  }
  // Each row must be an automorphism of the normal part.
  for (size_t k = 0; k < nk; ++k)
    for (size_t i = 0; i < nn; ++i)
      for (size_t j = 0; j < nn; ++j) {
        Elem lhs = n_part.cached_elems[action[k][n_part.cached_index.at(
            n_part.mul(n_part.cached_elems[i], n_part.cached_elems[j]))]];
        Elem rhs = n_part.mul(n_part.cached_elems[action[k][i]], n_part.cached_elems[action[k][j]]);
        if (lhs != rhs) throw std::invalid_argument("action row is not an automorphism");
      }
  // And k -> alpha_k must be a homomorphism.
  for (size_t k1 = 0; k1 < nk; ++k1)
    for (size_t k2 = 0; k2 < nk; ++k2) {
      int kk = k_part.cached_index.at(
          k_part.mul(k_part.cached_elems[k1], k_part.cached_elems[k2]));
      for (size_t i = 0; i < nn; ++i)
        if (action[kk][i] != action[k1][action[k2][i]])
          throw std::invalid_argument("action is not a homomorphism");
    }
  GroupOracle g;
  g.kind = semidirect_k;
  g.left = std::make_shared<const GroupOracle>(std::move(n_part));
  g.right = std::make_shared<const GroupOracle>(std::move(k_part));
  g.action = std::move(action);
  return g;
}

GroupOracle GroupOracle::central_ext_z2(GroupOracle base, std::vector<std::vector<int>> cocycle) {
  if (base.flat_size() < 0) throw std::invalid_argument("extension base must have fixed width");
  if (!base.enumerable()) throw std::invalid_argument("extension base must be finite");
  fill_cache(base);
  size_t nb = base.cached_elems.size();
  if (nb > 300) throw std::invalid_argument("extension base too large for full cocycle validation");
  if (cocycle.size() != nb) throw std::invalid_argument("cocycle table needs one row per element");
  for (auto& row : cocycle) {
    if (row.size() != nb) throw std::invalid_argument("cocycle row of wrong width");
    for (int x : row)
      if (x != 0 && x != 1) throw std::invalid_argument("cocycle entries must be 0 or 1");
  }
  int e = base.cached_index.at(base.identity());
  for (size_t i = 0; i < nb; ++i)
    if (cocycle[e][i] != 0 || cocycle[i][e] != 0)
      throw std::invalid_argument("cocycle must be normalized (vanish on identity pairs)");
  auto idx = [&](const Elem& a) { return base.cached_index.at(a); };
  for (size_t i = 0; i < nb; ++i)
    for (size_t j = 0; j < nb; ++j)
      for (size_t k = 0; k < nb; ++k) {
        const Elem &g1 = base.cached_elems[i], &g2 = base.cached_elems[j],
                   &g3 = base.cached_elems[k];
        int lhs = cocycle[i][idx(base.mul(g2, g3))] ^ cocycle[j][k];
        int rhs = cocycle[idx(base.mul(g1, g2))][k] ^ cocycle[i][j];
        if (lhs != rhs) throw std::invalid_argument("table violates the cocycle identity");
      }
  GroupOracle g;
  g.kind = central_ext_k;
  g.base = std::make_shared<const GroupOracle>(std::move(base));
  g.cocycle = std::move(cocycle);
  return g;
}

int GroupOracle::flat_size() const {
  switch (kind) {
    case cyclic_k:
      return 1;
    case zd_k:
    case lattice_quotient_k:
      return d;
    case perm_k:
      return degree;
    case free_k:
      return -1;
    case product_k:
    case semidirect_k:
      return left->flat_size() + right->flat_size();
    case central_ext_k:
      return 1 + base->flat_size();
  }
  return -1;
}

Elem GroupOracle::identity() const {
  switch (kind) {
    case cyclic_k:
      return {0};
    case zd_k:
    case lattice_quotient_k:
      return Elem(d, 0);
    case perm_k: {
      Elem e(degree);
      for (int i = 0; i < degree; ++i) e[i] = i;
      return e;
    }
    case free_k:
      return {};
    case product_k:
    case semidirect_k: {
      Elem e = left->identity();
      Elem r = right->identity();
      e.insert(e.end(), r.begin(), r.end());
      return e;
    }
    case central_ext_k: {
      Elem e = {0};
      Elem b = base->identity();
      e.insert(e.end(), b.begin(), b.end());
      return e;
    }
  }
  return {};
}

namespace {

std::pair<Elem, Elem> split2(const Elem& a, int lw) {
  return {Elem(a.begin(), a.begin() + lw), Elem(a.begin() + lw, a.end())};
}

}  // namespace

Elem GroupOracle::canon(const Elem& a) const {
  switch (kind) {
    case cyclic_k:
      if (a.size() != 1) throw std::invalid_argument("cyclic element has one coordinate");
      return {((a[0] % n) + n) % n};
    case zd_k:
      if (static_cast<int>(a.size()) != d) throw std::invalid_argument("element of wrong width");
      return a;
    case lattice_quotient_k: {
      if (static_cast<int>(a.size()) != d) throw std::invalid_argument("element of wrong width");
      Elem x = a;
      for (int i = 0; i < d; ++i) {
        long long q = floordiv(x[i], hnf[i][i]);
        for (int j = i; j < d; ++j) x[j] -= q * hnf[i][j];
      }
      return x;
    }
    case perm_k: {
      if (static_cast<int>(a.size()) != degree) throw std::invalid_argument("element of wrong width");
      std::vector<char> seen(degree, 0);
      for (long long x : a) {
        if (x < 0 || x >= degree || seen[x]) throw std::invalid_argument("not a permutation");
        seen[x] = 1;
      }
      return a;
    }
    case free_k: {
      Elem w = a;
      for (long long x : w)
        if (x == 0 || std::abs(x) > rank) throw std::invalid_argument("letter out of range");
      reduce_word(w);
      if (static_cast<int>(w.size()) > trunc)
        throw budget_error("free-group word exceeds the truncation radius");
      return w;
    }
    case product_k:
    case semidirect_k: {
      if (static_cast<int>(a.size()) != flat_size())
        throw std::invalid_argument("element of wrong width");
      auto [l, r] = split2(a, left->flat_size());
      Elem cl = left->canon(l), cr = right->canon(r);
      cl.insert(cl.end(), cr.begin(), cr.end());
      return cl;
    }
    case central_ext_k: {
      if (static_cast<int>(a.size()) != flat_size())
        throw std::invalid_argument("element of wrong width");
      Elem out = {((a[0] % 2) + 2) % 2};
      Elem b = base->canon(Elem(a.begin() + 1, a.end()));
      out.insert(out.end(), b.begin(), b.end());
      return out;
    }
  }
  return a;
}

Elem GroupOracle::mul(const Elem& a0, const Elem& b0) const {
  Elem a = canon(a0), b = canon(b0);
  switch (kind) {
    case cyclic_k:
      return {(a[0] + b[0]) % n};
    case zd_k: {
      Elem r(d);
      for (int i = 0; i < d; ++i) r[i] = a[i] + b[i];
      return r;
    }
    case lattice_quotient_k: {
      Elem r(d);
      for (int i = 0; i < d; ++i) r[i] = a[i] + b[i];
      return canon(r);
    }
    case perm_k: {
      Elem r(degree);
      for (int i = 0; i < degree; ++i) r[i] = a[b[i]];
      return r;
    }
    case free_k: {
      Elem r = a;
      r.insert(r.end(), b.begin(), b.end());
      return canon(r);
    }
    case product_k: {
      auto [al, ar] = split2(a, left->flat_size());
      auto [bl, br] = split2(b, left->flat_size());
      Elem l = left->mul(al, bl), r = right->mul(ar, br);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case semidirect_k: {
      auto [an, ak] = split2(a, left->flat_size());
      auto [bn, bk] = split2(b, left->flat_size());
      int ki = right->cached_index.at(right->canon(ak));
      const Elem& twisted = left->cached_elems[action[ki][left->cached_index.at(left->canon(bn))]];
      Elem l = left->mul(an, twisted);
      Elem r = right->mul(ak, bk);
      l.insert(l.end(), r.begin(), r.end());
      return l;
    }
    case central_ext_k: {
      Elem ga(a.begin() + 1, a.end()), gb(b.begin() + 1, b.end());
      int phi = cocycle[base->cached_index.at(ga)][base->cached_index.at(gb)];
      Elem out = {(a[0] ^ b[0]) ^ phi};
      Elem prod = base->mul(ga, gb);
      out.insert(out.end(), prod.begin(), prod.end());
      return out;
    }
  }
  return a;
}

Elem GroupOracle::inv(const Elem& a0) const {
  Elem a = canon(a0);
  switch (kind) {
    case cyclic_k:
      return {(n - a[0]) % n};
    case zd_k: {
      Elem r(d);
      for (int i = 0; i < d; ++i) r[i] = -a[i];
      return r;
    }
    case lattice_quotient_k: {
      Elem r(d);
      for (int i = 0; i < d; ++i) r[i] = -a[i];
      return canon(r);
    }
    case perm_k: {
      Elem r(degree);
      for (int i = 0; i < degree; ++i) r[a[i]] = i;
      return r;
    }
    case free_k: {
      Elem r(a.rbegin(), a.rend());
      for (auto& x : r) x = -x;
      return r;
    }
    case product_k: {
      auto [l, r] = split2(a, left->flat_size());
      Elem il = left->inv(l), ir = right->inv(r);
      il.insert(il.end(), ir.begin(), ir.end());
      return il;
    }
    case semidirect_k: {
      auto [an, ak] = split2(a, left->flat_size());
      Elem ik = right->inv(ak);
      int ki = right->cached_index.at(ik);
      Elem in = left->inv(an);
      const Elem& twisted = left->cached_elems[action[ki][left->cached_index.at(in)]];
      Elem out = twisted;
      out.insert(out.end(), ik.begin(), ik.end());
      return out;
    }
    case central_ext_k: {
      Elem g(a.begin() + 1, a.end());
      Elem ig = base->inv(g);
      int phi = cocycle[base->cached_index.at(g)][base->cached_index.at(ig)];
      Elem out = {a[0] ^ phi};
      out.insert(out.end(), ig.begin(), ig.end());
      return out;
    }
  }
  return a;
}

OrderResult GroupOracle::order_of(const Elem& a0) const {
  Elem a = canon(a0);
  if (a == identity()) return {OrderResult::finite, 1};
  switch (kind) {
    case cyclic_k:
      return {OrderResult::finite, n / gcd_ll(a[0], n)};
    case zd_k:
    case free_k:
      return {OrderResult::infinite, 0};
    case perm_k: {
      std::vector<char> seen(degree, 0);
      long long ord = 1;
      for (int i = 0; i < degree; ++i) {
        if (seen[i]) continue;
        int len = 0, j = i;
        while (!seen[j]) {
          seen[j] = 1;
          j = static_cast<int>(a[j]);
          ++len;
        }
        ord = std::lcm(ord, static_cast<long long>(len));
      }
      return {OrderResult::finite, ord};
    }
    case product_k: {
      auto [l, r] = split2(a, left->flat_size());
      OrderResult ol = left->order_of(l), orr = right->order_of(r);
      if (ol.kind == OrderResult::infinite || orr.kind == OrderResult::infinite)
        return {OrderResult::infinite, 0};
      if (ol.kind == OrderResult::unknown || orr.kind == OrderResult::unknown)
        return {OrderResult::unknown, 0};
      return {OrderResult::finite, std::lcm(ol.n, orr.n)};
    }
    default: {
      // Repeated multiplication with a hard cap; never silently wrong.
      Elem p = a;
      for (long long k = 2; k <= 10000; ++k) {
        p = mul(p, a);
        if (p == identity()) return {OrderResult::finite, k};
      }
      return {OrderResult::unknown, 0};
    }
  }
}

bool GroupOracle::enumerable() const {
  switch (kind) {
    case cyclic_k:
    case lattice_quotient_k:
    case perm_k:
      return true;
    case zd_k:
    case free_k:
      return false;
    case product_k:
    case semidirect_k:
      return left->enumerable() && right->enumerable();
    case central_ext_k:
      return base->enumerable();
  }
  return false;
}

std::vector<Elem> GroupOracle::enumerate(long long cap) const {
  if (!enumerable()) throw std::invalid_argument(describe() + " is not enumerable");
  switch (kind) {
    case cyclic_k: {
      if (n > cap) throw budget_error("enumeration exceeds cap");
      std::vector<Elem> out;
      for (long long i = 0; i < n; ++i) out.push_back({i});
      return out;
    }
    case lattice_quotient_k: {
      long long total = 1;
      for (int i = 0; i < d; ++i) {
        total *= hnf[i][i];
        if (total > cap) throw budget_error("enumeration exceeds cap");
      }
      std::vector<Elem> out;
      Elem x(d, 0);
      while (true) {
        out.push_back(x);
        int i = d - 1;
        while (i >= 0 && x[i] + 1 >= hnf[i][i]) x[i--] = 0;
        if (i < 0) break;
        ++x[i];
      }
      return out;
    }
    case perm_k: {
      std::vector<Elem> gens;
      for (auto& p : perm_gens) gens.push_back(Elem(p.begin(), p.end()));
      std::set<Elem> seen = {identity()};
      std::vector<Elem> queue = {identity()};
      while (!queue.empty()) {
        Elem p = queue.back();
        queue.pop_back();
        for (auto& g : gens) {
          Elem q = mul(p, g);
          if (seen.insert(q).second) {
            if (static_cast<long long>(seen.size()) > cap)
              throw budget_error("enumeration exceeds cap");
            queue.push_back(q);
          }
        }
      }
      return std::vector<Elem>(seen.begin(), seen.end());
    }
    case product_k:
    case semidirect_k: {
      auto ls = left->enumerate(cap), rs = right->enumerate(cap);
      if (static_cast<long long>(ls.size()) * static_cast<long long>(rs.size()) > cap)
        throw budget_error("enumeration exceeds cap");
      std::vector<Elem> out;
      for (auto& l : ls)
        for (auto& r : rs) {
          Elem e = l;
          e.insert(e.end(), r.begin(), r.end());
          out.push_back(e);
        }
      return out;
    }
    case central_ext_k: {
      auto bs = base->enumerate(cap);
      if (2 * static_cast<long long>(bs.size()) > cap)
        throw budget_error("enumeration exceeds cap");
      std::vector<Elem> out;
      for (long long bit : {0LL, 1LL})
        for (auto& b : bs) {
          Elem e = {bit};
          e.insert(e.end(), b.begin(), b.end());
          out.push_back(e);
        }
      return out;
    }
    default:
      throw std::invalid_argument("unreachable");
  }
}

int GroupOracle::index_of(const Elem& a) const {
  Elem c = canon(a);
  if (!cached_index.empty()) {
    auto it = cached_index.find(c);
    if (it == cached_index.end()) throw std::invalid_argument("element not in group");
    return it->second;
  }
  auto all = enumerate();
  auto it = std::lower_bound(all.begin(), all.end(), c);
  if (it == all.end() || *it != c) throw std::invalid_argument("element not in group");
  return static_cast<int>(it - all.begin());
}

std::string GroupOracle::describe() const {
  std::ostringstream os;
  switch (kind) {
    case cyclic_k:
      os << "Z/" << n;
      break;
    case zd_k:
      os << "Z^" << d;
      break;
    case lattice_quotient_k:
      os << "Z^" << d << "/L";
      break;
    case perm_k:
      os << "perm(" << degree << ")";
      break;
    case free_k:
      os << "F_" << rank << "(trunc " << trunc << ")";
      break;
    case product_k:
      os << left->describe() << " x " << right->describe();
      break;
    case semidirect_k:
      os << left->describe() << " : " << right->describe();
      break;
    case central_ext_k:
      os << "Z/2 . " << base->describe();
      break;
  }
  return os.str();
}

std::string GroupOracle::show(const Elem& a) const {
  Elem c = canon(a);
  std::ostringstream os;
  os << "(";
  for (size_t i = 0; i < c.size(); ++i) os << (i ? "," : "") << c[i];
  os << ")";
  return os.str();
}

GenSet make_genset(const GroupOracle& G, std::vector<Elem> elems) {
  for (auto& e : elems) e = G.canon(e);
  std::sort(elems.begin(), elems.end());
  elems.erase(std::unique(elems.begin(), elems.end()), elems.end());
  GenSet s;
  s.elems = std::move(elems);
  for (auto& e : s.elems) {
    if (G.is_identity(e))
      throw std::invalid_argument("generating set contains the identity");
    if (!genset_contains(s, G.inv(e)))
      throw std::invalid_argument("generating set is not closed under inversion");
  }
  return s;
}

bool genset_contains(const GenSet& s, const Elem& canonical) {
  return std::binary_search(s.elems.begin(), s.elems.end(), canonical);
}

std::vector<std::vector<Elem>> inversion_classes(const GroupOracle& G, const GenSet& S) {
  std::vector<std::vector<Elem>> classes;
  std::set<Elem> seen;
  for (auto& s : S.elems) {
    if (seen.count(s)) continue;
    Elem i = G.inv(s);
    seen.insert(s);
    if (i == s) {
      classes.push_back({s});
    } else {
      seen.insert(i);
      classes.push_back({s, i});
    }
  }
  return classes;
}

int inversion_class_of(const GroupOracle& G, const std::vector<std::vector<Elem>>& classes,
                       const Elem& s) {
  Elem c = G.canon(s);
  for (int i = 0; i < static_cast<int>(classes.size()); ++i)
    for (auto& e : classes[i])
      if (e == c) return i;
  throw std::invalid_argument("element is in no inversion class");
}

}  // namespace lgr
