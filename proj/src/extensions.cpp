#include "lgr/extensions.hpp"

#include <algorithm>
#include <cstdint>
#include <map>
#include <set>
#include <stdexcept>

namespace lgr {

namespace {

// GF(2) row as packed words; column `width` is reserved for an optional rhs bit.
using BitRow = std::vector<std::uint64_t>;

BitRow zero_row(int bits) { return BitRow((bits + 63) / 64, 0); }

bool get_bit(const BitRow& r, int i) { return (r[i / 64] >> (i % 64)) & 1; }

void flip_bit(BitRow& r, int i) { r[i / 64] ^= (std::uint64_t{1} << (i % 64)); }

void xor_rows(BitRow& a, const BitRow& b) {
  for (size_t i = 0; i < a.size(); ++i) a[i] ^= b[i];
}

bool coeffs_zero(const BitRow& r, int ncols) {
  for (int i = 0; i < ncols; ++i)
    if (get_bit(r, i)) return false;
  return true;
}

// Symmetric difference of sorted pair lists: the GF(2) sum of row provenances.
std::vector<std::pair<int, int>> xor_pairs(const std::vector<std::pair<int, int>>& a,
                                           const std::vector<std::pair<int, int>>& b) {
  std::vector<std::pair<int, int>> out;
  std::set_symmetric_difference(a.begin(), a.end(), b.begin(), b.end(), std::back_inserter(out));
  return out;
}

void check_table_shape(const std::vector<Elem>& elements,
                       const std::vector<std::vector<std::uint8_t>>& table) {
  size_t n = elements.size();
  if (table.size() != n) throw std::invalid_argument("cocycle table shape mismatch");
  for (auto& row : table) {
    if (row.size() != n) throw std::invalid_argument("cocycle table shape mismatch");
    for (std::uint8_t x : row)
      if (x != 0 && x != 1) throw std::invalid_argument("cocycle entries must be 0 or 1");
  }
}

bool identity_pairs_vanish(const Cocycle2& phi) {
  int e = phi.index_of(phi.base.identity());
  if (e < 0) return false;
  for (size_t i = 0; i < phi.elements.size(); ++i)
    if (phi.table[e][i] != 0 || phi.table[i][e] != 0) return false;
  return true;
}

int count_components(const SimpleGraph& g, const std::vector<int>& verts) {
  std::set<int> inside(verts.begin(), verts.end());
  std::set<int> seen;
  int components = 0;
  for (int root : verts) {
    if (seen.count(root)) continue;
    ++components;
    std::vector<int> stack = {root};
    seen.insert(root);
    while (!stack.empty()) {
      int v = stack.back();
      stack.pop_back();
      for (int w : g.adj[v])
        if (inside.count(w) && seen.insert(w).second) stack.push_back(w);
    }
  }
  return components;
}

}  // namespace

// --- Cocycle2 -------------------------------------------------------------------

int Cocycle2::index_of(const Elem& g) const {
  Elem c = base.canon(g);
  for (size_t i = 0; i < elements.size(); ++i)
    if (elements[i] == c) return static_cast<int>(i);
  return -1;
}

std::uint8_t Cocycle2::at(const Elem& g1, const Elem& g2) const {
  int i = index_of(g1), j = index_of(g2);
  if (i < 0 || j < 0) throw std::invalid_argument("cocycle query outside the stored domain");
  return table[i][j];
}

Cocycle2 make_cocycle(const GroupOracle& base, std::vector<std::vector<std::uint8_t>> table) {
  return make_cocycle(base, base.enumerate(), std::move(table));
}

Cocycle2 make_cocycle(const GroupOracle& base, std::vector<Elem> domain,
                      std::vector<std::vector<std::uint8_t>> table) {
  Cocycle2 phi;
  phi.base = base;
  for (Elem& g : domain) g = base.canon(g);
  for (size_t i = 0; i < domain.size(); ++i)
    for (size_t j = i + 1; j < domain.size(); ++j)
      if (domain[i] == domain[j]) throw std::invalid_argument("cocycle domain repeats an element");
  phi.elements = std::move(domain);
  check_table_shape(phi.elements, table);
  phi.table = std::move(table);
  phi.normalized = identity_pairs_vanish(phi);
  return phi;
}

Cocycle2 zero_cocycle(const GroupOracle& base) {
  auto elems = base.enumerate();
  std::vector<std::vector<std::uint8_t>> table(elems.size(),
                                               std::vector<std::uint8_t>(elems.size(), 0));
  return make_cocycle(base, std::move(elems), std::move(table));
}

Cocycle2 carry_cocycle(int q) {
  if (q < 2) throw std::invalid_argument("carry cocycle needs modulus at least 2");
  GroupOracle base = GroupOracle::cyclic(q);
  auto elems = base.enumerate();
  size_t n = elems.size();
  std::vector<std::vector<std::uint8_t>> table(n, std::vector<std::uint8_t>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j)
      table[i][j] = (elems[i][0] + elems[j][0] >= q) ? 1 : 0;
  return make_cocycle(base, std::move(elems), std::move(table));
}

Cocycle2 coboundary_of(const GroupOracle& base, const std::vector<std::uint8_t>& psi) {
  auto elems = base.enumerate();
  size_t n = elems.size();
  if (psi.size() != n) throw std::invalid_argument("psi length must match the group order");
  for (std::uint8_t x : psi)
    if (x != 0 && x != 1) throw std::invalid_argument("psi entries must be 0 or 1");
  std::map<Elem, int> idx;
  for (size_t i = 0; i < n; ++i) idx[elems[i]] = static_cast<int>(i);
  std::vector<std::vector<std::uint8_t>> table(n, std::vector<std::uint8_t>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int k = idx.at(base.canon(base.mul(elems[i], elems[j])));
      table[i][j] = psi[i] ^ psi[j] ^ psi[k];
    }
  return make_cocycle(base, std::move(elems), std::move(table));
}

Cocycle2 normalized_cocycle(const Cocycle2& phi) {
  int e = phi.index_of(phi.base.identity());
  if (e < 0) throw std::invalid_argument("cocycle domain does not contain the identity");
  Cocycle2 out = phi;
  if (phi.table[e][e]) {
    for (auto& row : out.table)
      for (auto& x : row) x ^= 1;
  }
  out.normalized = identity_pairs_vanish(out);
  return out;
}

CocycleCheck validate_cocycle(const Cocycle2& phi) {
  check_table_shape(phi.elements, phi.table);
  size_t n = phi.elements.size();
  std::map<Elem, int> idx;
  for (size_t i = 0; i < n; ++i) idx[phi.elements[i]] = static_cast<int>(i);
  auto find = [&](const Elem& g) {
    auto it = idx.find(phi.base.canon(g));
    return it == idx.end() ? -1 : it->second;
  };
  CocycleCheck out;
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) {
      int ij = find(phi.base.mul(phi.elements[i], phi.elements[j]));
      for (size_t k = 0; k < n; ++k) {
        int jk = find(phi.base.mul(phi.elements[j], phi.elements[k]));
        if (ij < 0 || jk < 0) continue;  // product leaves a truncated domain
        int lhs = phi.table[i][jk] ^ phi.table[j][k];
        int rhs = phi.table[ij][k] ^ phi.table[i][j];
        if (lhs != rhs) {
          out.ok = false;
          out.g1 = phi.elements[i];
          out.g2 = phi.elements[j];
          out.g3 = phi.elements[k];
          out.reason = "cocycle identity fails";
          return out;
        }
      }
    }
  out.ok = true;
  return out;
}

CoboundaryResult is_coboundary(const Cocycle2& phi) {
  check_table_shape(phi.elements, phi.table);
  int n = static_cast<int>(phi.elements.size());
  std::map<Elem, int> idx;
  for (int i = 0; i < n; ++i) idx[phi.elements[i]] = i;

  // One equation psi_i + psi_j + psi_{ij} = phi(i,j) per pair whose product
  // stays in the domain; column n holds the right-hand side.
  std::vector<BitRow> rows;
  std::vector<std::vector<std::pair<int, int>>> prov;
  for (int i = 0; i < n; ++i)
    for (int j = 0; j < n; ++j) {
      auto it = idx.find(phi.base.canon(phi.base.mul(phi.elements[i], phi.elements[j])));
      if (it == idx.end()) continue;
      BitRow r = zero_row(n + 1);
      flip_bit(r, i);
      flip_bit(r, j);
      flip_bit(r, it->second);  // cancels a repeated unknown mod 2
      if (phi.table[i][j]) flip_bit(r, n);
      rows.push_back(std::move(r));
      prov.push_back({{i, j}});
    }

  std::vector<int> pivot_row(n, -1);
  std::vector<char> used(rows.size(), 0);
  for (int col = 0; col < n; ++col) {
    int p = -1;
    for (size_t r = 0; r < rows.size(); ++r)
      if (!used[r] && get_bit(rows[r], col)) {
        p = static_cast<int>(r);
        break;
      }
    if (p < 0) continue;
    used[p] = 1;
    pivot_row[col] = p;
    for (size_t r = 0; r < rows.size(); ++r)
      if (static_cast<int>(r) != p && get_bit(rows[r], col)) {
        xor_rows(rows[r], rows[p]);
        prov[r] = xor_pairs(prov[r], prov[p]);
      }
  }

  CoboundaryResult out;
  for (size_t r = 0; r < rows.size(); ++r)
    if (!used[r] && get_bit(rows[r], n) && coeffs_zero(rows[r], n)) {
      out.yes = false;
      out.certificate = prov[r];
      return out;
    }
  out.yes = true;
  out.psi.assign(n, 0);
  for (int col = 0; col < n; ++col)
    if (pivot_row[col] >= 0 && get_bit(rows[pivot_row[col]], n)) out.psi[col] = 1;
  return out;
}

// --- central extensions -----------------------------------------------------------

GroupOracle central_extension(const Cocycle2& phi) {
  Cocycle2 norm = normalized_cocycle(phi);
  auto elems = phi.base.enumerate();
  size_t n = elems.size();
  std::vector<std::vector<int>> table(n, std::vector<int>(n, 0));
  for (size_t i = 0; i < n; ++i)
    for (size_t j = 0; j < n; ++j) table[i][j] = norm.at(elems[i], elems[j]);
  return GroupOracle::central_ext_z2(phi.base, std::move(table));
}

SectionLift section_lift(const Cocycle2& phi, const GenSet& S) {
  SectionLift out;
  out.extension = central_extension(phi);
  std::set<Elem> lifts;
  for (const Elem& s : S.elems) {
    Elem lift = {0};
    lift.insert(lift.end(), s.begin(), s.end());
    out.elems.push_back(out.extension.canon(lift));
    lifts.insert(out.elems.back());
  }
  out.symmetric = true;
  for (const Elem& lift : out.elems) {
    if (!lifts.count(out.extension.canon(out.extension.inv(lift)))) {
      out.symmetric = false;
      out.failing = lift;
      break;
    }
  }
  if (out.symmetric) out.genset = make_genset(out.extension, out.elems);
  return out;
}

// --- 2-coverings --------------------------------------------------------------------

TwoCoverResult two_covering_from_cocycle(const Cocycle2& phi, const GenSet& S,
                                         long long budget) {
  CocycleCheck vc = validate_cocycle(phi);
  if (!vc.ok) throw std::invalid_argument("cocycle identity fails");
  Cocycle2 norm = normalized_cocycle(phi);

  TwoCoverResult out;
  out.base = phi.base;
  out.extension = central_extension(norm);

  std::vector<Elem> lifted;
  for (const auto& cls : inversion_classes(out.base, S)) {
    const Elem& s = cls.front();
    Elem lift = {0};
    lift.insert(lift.end(), s.begin(), s.end());
    lift = out.extension.canon(lift);
    if (cls.size() == 1) {
      if (norm.at(s, s) != 0)
        throw std::invalid_argument("involution lift has order four: " + out.base.show(s));
      lifted.push_back(lift);
    } else {
      lifted.push_back(lift);
      lifted.push_back(out.extension.canon(out.extension.inv(lift)));
    }
  }
  out.lifted = make_genset(out.extension, lifted);

  out.total = cayley_graph(out.extension, out.lifted, budget);
  out.base_graph = cayley_graph(out.base, S, budget);
  out.vertex_map.resize(out.total.graph.n);
  for (int v = 0; v < out.total.graph.n; ++v) {
    const Elem& ev = out.total.elements[v];
    Elem g(ev.begin() + 1, ev.end());
    out.vertex_map[v] = out.base_graph.index_of(out.base, g);
  }
  out.check = verify_covering(out.total.graph, out.base_graph.graph, out.vertex_map);
  out.connected = is_connected(out.total.graph);
  return out;
}

PreimageReport cover_ball_preimage(const TwoCoverResult& cover, const Elem& center, int radius) {
  if (radius < 0) throw std::invalid_argument("radius must be nonnegative");
  int c = cover.base_graph.index_of(cover.base, center);
  std::vector<int> dist = bfs_dist(cover.base_graph.graph, c);
  PreimageReport out;
  std::vector<char> in_ball(cover.base_graph.graph.n, 0);
  for (int u = 0; u < cover.base_graph.graph.n; ++u)
    if (dist[u] >= 0 && dist[u] <= radius) {
      in_ball[u] = 1;
      out.base_ball.push_back(u);
    }
  std::vector<int> preimage;
  for (int v = 0; v < cover.total.graph.n; ++v)
    if (in_ball[cover.vertex_map[v]]) preimage.push_back(v);
  out.components = count_components(cover.total.graph, preimage);
  out.disconnected = out.components > 1;
  return out;
}

// --- short vanishing cocycles ---------------------------------------------------------

VanishingSearch short_vanishing_cocycle_search(const GroupOracle& G, const GenSet& S, int n) {
  if (n < 1) throw std::invalid_argument("n must be at least 1");
  auto elems = G.enumerate();
  int N = static_cast<int>(elems.size());
  std::map<Elem, int> idx;
  for (int i = 0; i < N; ++i) idx[elems[i]] = i;

  CayleyGraph cg = cayley_graph(G, S);
  std::vector<int> len = bfs_dist(cg.graph, cg.index_of(G, G.identity()));

  // Pairs forced to zero: short pairs plus the generator inverse pairs.
  std::set<std::pair<int, int>> constrained;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j)
      if (len[i] >= 0 && len[j] >= 0 && len[i] + len[j] <= n - 1) constrained.insert({i, j});
  for (const Elem& s : S.elems)
    constrained.insert({idx.at(G.canon(s)), idx.at(G.canon(G.inv(s)))});

  // Homogeneous GF(2) system over the N^2 table unknowns: the cocycle identity
  // on every triple plus one vanishing row per constrained pair.
  int M = N * N;
  auto cell = [N](int i, int j) { return i * N + j; };
  std::vector<BitRow> rows;
  for (int i = 0; i < N; ++i)
    for (int j = 0; j < N; ++j) {
      int ij = idx.at(G.canon(G.mul(elems[i], elems[j])));
      for (int k = 0; k < N; ++k) {
        int jk = idx.at(G.canon(G.mul(elems[j], elems[k])));
        BitRow r = zero_row(M);
        flip_bit(r, cell(i, jk));
        flip_bit(r, cell(j, k));
        flip_bit(r, cell(ij, k));
        flip_bit(r, cell(i, j));
        rows.push_back(std::move(r));
      }
    }
  for (auto [i, j] : constrained) {
    BitRow r = zero_row(M);
    flip_bit(r, cell(i, j));
    rows.push_back(std::move(r));
  }

  std::vector<int> pivot_row(M, -1);
  std::vector<char> used(rows.size(), 0);
  for (int col = 0; col < M; ++col) {
    int p = -1;
    for (size_t r = 0; r < rows.size(); ++r)
      if (!used[r] && get_bit(rows[r], col)) {
        p = static_cast<int>(r);
        break;
      }
    if (p < 0) continue;
    used[p] = 1;
    pivot_row[col] = p;
    for (size_t r = 0; r < rows.size(); ++r)
      if (static_cast<int>(r) != p && get_bit(rows[r], col)) xor_rows(rows[r], rows[p]);
  }

  VanishingSearch out;
  out.constrained.assign(constrained.begin(), constrained.end());
  for (int col = 0; col < M; ++col)
    if (pivot_row[col] < 0) ++out.solution_dim;

  // Nullspace basis vector per free column; the first basis cocycle outside the
  // coboundary subspace is the witness. If all basis vectors are coboundaries
  // the whole solution space is, and absence is certified.
  for (int f = 0; f < M; ++f) {
    if (pivot_row[f] >= 0) continue;
    std::vector<std::vector<std::uint8_t>> table(N, std::vector<std::uint8_t>(N, 0));
    table[f / N][f % N] = 1;
    for (int col = 0; col < M; ++col)
      if (pivot_row[col] >= 0 && get_bit(rows[pivot_row[col]], f)) table[col / N][col % N] = 1;
    Cocycle2 cand = make_cocycle(G, elems, std::move(table));
    CoboundaryResult cb = is_coboundary(cand);
    if (!cb.yes) {
      out.found = true;
      out.cocycle = std::move(cand);
      out.certificate = std::move(cb.certificate);
      return out;
    }
  }
  out.found = false;
  return out;
}

}  // namespace lgr
