#include "lgr/fox.hpp"

#include <algorithm>
#include <cctype>
#include <set>
#include <stdexcept>

namespace lgr {

namespace {

LaurentGF2 normalized(long long low, std::vector<std::uint8_t> bits) {
  while (!bits.empty() && bits.back() == 0) bits.pop_back();
  std::size_t lead = 0;
  while (lead < bits.size() && bits[lead] == 0) ++lead;
  if (lead > 0) {
    bits.erase(bits.begin(), bits.begin() + static_cast<long>(lead));
    low += static_cast<long long>(lead);
  }
  if (bits.empty()) low = 0;
  return LaurentGF2{low, std::move(bits)};
}

// dense polynomial form: poly[e] = coefficient of t^e, e >= 0
std::vector<std::uint8_t> to_poly(const LaurentGF2& a) {
  std::vector<std::uint8_t> p(static_cast<std::size_t>(a.low) + a.bits.size(), 0);
  for (std::size_t k = 0; k < a.bits.size(); ++k)
    p[static_cast<std::size_t>(a.low) + k] = a.bits[k];
  return p;
}

int poly_deg(const std::vector<std::uint8_t>& p) {
  for (int e = static_cast<int>(p.size()) - 1; e >= 0; --e)
    if (p[static_cast<std::size_t>(e)]) return e;
  return -1;
}

// remainder of a mod b, b != 0 (quotient discarded; GF(2) long division)
std::vector<std::uint8_t> poly_mod(std::vector<std::uint8_t> a, const std::vector<std::uint8_t>& b) {
  int db = poly_deg(b);
  for (int e = poly_deg(a); e >= db; e = poly_deg(a))
    for (int k = 0; k <= db; ++k) a[static_cast<std::size_t>(e - db + k)] ^= b[static_cast<std::size_t>(k)];
  return a;
}

std::vector<std::uint8_t> poly_div_exact(std::vector<std::uint8_t> a, const std::vector<std::uint8_t>& b) {
  int db = poly_deg(b);
  std::vector<std::uint8_t> q(a.size(), 0);
  for (int e = poly_deg(a); e >= db; e = poly_deg(a)) {
    q[static_cast<std::size_t>(e - db)] = 1;
    for (int k = 0; k <= db; ++k) a[static_cast<std::size_t>(e - db + k)] ^= b[static_cast<std::size_t>(k)];
  }
  if (poly_deg(a) >= 0) throw std::logic_error("polynomial division was not exact");
  return q;
}

std::vector<std::uint8_t> poly_gcd(std::vector<std::uint8_t> a, std::vector<std::uint8_t> b) {
  while (poly_deg(b) >= 0) {
    auto r = poly_mod(a, b);
    a = std::move(b);
    b = std::move(r);
  }
  return a;
}

LaurentGF2 from_poly(const std::vector<std::uint8_t>& p) { return normalized(0, p); }

}  // namespace

std::uint8_t LaurentGF2::coeff(long long e) const {
  if (e < low || e > high()) return 0;
  return bits[static_cast<std::size_t>(e - low)];
}

LaurentGF2 laurent_zero() { return LaurentGF2{}; }

LaurentGF2 laurent_one() { return LaurentGF2{0, {1}}; }

LaurentGF2 laurent_term(long long e) { return LaurentGF2{e, {1}}; }

LaurentGF2 laurent_of(long long low, std::vector<std::uint8_t> bits) {
  for (auto b : bits)
    if (b > 1) throw std::invalid_argument("coefficients must be 0 or 1");
  return normalized(low, std::move(bits));
}

LaurentGF2 add(const LaurentGF2& a, const LaurentGF2& b) {
  if (a.is_zero()) return b;
  if (b.is_zero()) return a;
  long long low = std::min(a.low, b.low);
  long long high = std::max(a.high(), b.high());
  std::vector<std::uint8_t> bits(static_cast<std::size_t>(high - low + 1), 0);
  for (long long e = low; e <= high; ++e)
    bits[static_cast<std::size_t>(e - low)] = static_cast<std::uint8_t>(a.coeff(e) ^ b.coeff(e));
  return normalized(low, std::move(bits));
}

LaurentGF2 mul(const LaurentGF2& a, const LaurentGF2& b) {
  if (a.is_zero() || b.is_zero()) return laurent_zero();
  std::vector<std::uint8_t> bits(a.bits.size() + b.bits.size() - 1, 0);
  for (std::size_t i = 0; i < a.bits.size(); ++i) {
    if (!a.bits[i]) continue;
    for (std::size_t j = 0; j < b.bits.size(); ++j) bits[i + j] ^= b.bits[j];
  }
  return normalized(a.low + b.low, std::move(bits));
}

LaurentGF2 laurent_gcd(const LaurentGF2& a, const LaurentGF2& b) {
  // t is a unit of the Laurent ring, so only the polynomial parts matter
  auto g = poly_gcd(a.bits, b.bits);
  return from_poly(g);
}

std::string show(const LaurentGF2& a) {
  if (a.is_zero()) return "0";
  std::string out;
  for (long long e = a.high(); e >= a.low; --e) {
    if (!a.coeff(e)) continue;
    if (!out.empty()) out += " + ";
    if (e == 0) out += "1";
    else if (e == 1) out += "t";
    else out += "t^" + std::to_string(e);
  }
  return out;
}

RatFuncGF2 ratfunc(const LaurentGF2& value) { return ratfunc_of(value, laurent_one()); }

RatFuncGF2 ratfunc_of(const LaurentGF2& num, const LaurentGF2& den) {
  if (den.is_zero()) throw std::invalid_argument("rational function needs a nonzero denominator");
  if (num.is_zero()) return RatFuncGF2{};
  long long shift = std::min(num.low, den.low);
  LaurentGF2 n = num, d = den;
  n.low -= shift;
  d.low -= shift;
  auto pn = to_poly(n), pd = to_poly(d);
  auto g = poly_gcd(pn, pd);
  return RatFuncGF2{from_poly(poly_div_exact(pn, g)), from_poly(poly_div_exact(pd, g))};
}

RatFuncGF2 add(const RatFuncGF2& a, const RatFuncGF2& b) {
  return ratfunc_of(add(mul(a.num, b.den), mul(b.num, a.den)), mul(a.den, b.den));
}

RatFuncGF2 mul(const RatFuncGF2& a, const RatFuncGF2& b) {
  return ratfunc_of(mul(a.num, b.num), mul(a.den, b.den));
}

RatFuncGF2 inverse(const RatFuncGF2& a) {
  if (a.is_zero()) throw std::invalid_argument("cannot invert the zero rational function");
  return ratfunc_of(a.den, a.num);
}

std::string show(const RatFuncGF2& a) {
  if (a.den.is_one()) return show(a.num);
  return "(" + show(a.num) + ") / (" + show(a.den) + ")";
}

LaurentMatrixGF2 laurent_matrix(int rows, int cols) {
  if (rows < 0 || cols < 0) throw std::invalid_argument("matrix dimensions must be nonnegative");
  LaurentMatrixGF2 m{rows, cols, {}};
  m.at.assign(static_cast<std::size_t>(rows),
              std::vector<LaurentGF2>(static_cast<std::size_t>(cols)));
  return m;
}

LaurentMatrixGF2 mat_mul(const LaurentMatrixGF2& a, const LaurentMatrixGF2& b) {
  if (a.cols != b.rows) throw std::invalid_argument("matrix dimensions do not compose");
  LaurentMatrixGF2 out = laurent_matrix(a.rows, b.cols);
  for (int i = 0; i < a.rows; ++i)
    for (int j = 0; j < a.cols; ++j) {
      const LaurentGF2& aij = a.at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (aij.is_zero()) continue;
      for (int k = 0; k < b.cols; ++k) {
        auto& acc = out.at[static_cast<std::size_t>(i)][static_cast<std::size_t>(k)];
        acc = add(acc, mul(aij, b.at[static_cast<std::size_t>(j)][static_cast<std::size_t>(k)]));
      }
    }
  return out;
}

bool is_zero(const LaurentMatrixGF2& m) {
  for (const auto& row : m.at)
    for (const auto& e : row)
      if (!e.is_zero()) return false;
  return true;
}

std::vector<int> relator_from_word(const std::string& word,
                                   const std::vector<std::string>& generators) {
  std::vector<int> out;
  out.reserve(word.size());
  for (char c : word) {
    bool lower = std::islower(static_cast<unsigned char>(c)) != 0;
    char base = lower ? c : static_cast<char>(std::tolower(static_cast<unsigned char>(c)));
    int idx = -1;
    for (std::size_t i = 0; i < generators.size(); ++i)
      if (generators[i].size() == 1 && generators[i][0] == base) {
        idx = static_cast<int>(i) + 1;
        break;
      }
    if (idx < 0) throw std::invalid_argument("relator uses a letter outside the generator alphabet");
    out.push_back(lower ? idx : -idx);
  }
  return out;
}

long long exponent_sum(const std::vector<int>& word, const std::vector<long long>& u) {
  long long s = 0;
  for (int letter : word) {
    int idx = letter > 0 ? letter : -letter;
    if (idx < 1 || static_cast<std::size_t>(idx) > u.size())
      throw std::invalid_argument("relator uses a letter outside the generator alphabet");
    s += letter > 0 ? u[static_cast<std::size_t>(idx - 1)] : -u[static_cast<std::size_t>(idx - 1)];
  }
  return s;
}

LaurentGF2 fox_derivative(const std::vector<int>& word, int gen,
                          const std::vector<long long>& u) {
  if (gen < 1 || static_cast<std::size_t>(gen) > u.size())
    throw std::invalid_argument("generator index out of range");
  std::set<long long> support;
  auto toggle = [&support](long long e) {
    auto it = support.find(e);
    if (it == support.end()) support.insert(e);
    else support.erase(it);
  };
  long long exp = 0;  // u-image of the prefix read so far
  for (int letter : word) {
    int idx = letter > 0 ? letter : -letter;
    if (idx < 1 || static_cast<std::size_t>(idx) > u.size())
      throw std::invalid_argument("relator uses a letter outside the generator alphabet");
    long long step = u[static_cast<std::size_t>(idx - 1)];
    if (letter > 0) {
      if (idx == gen) toggle(exp);  // prefix * (dx/dx = 1)
      exp += step;
    } else {
      exp -= step;
      if (idx == gen) toggle(exp);  // prefix * x^-1, sign dropped over GF(2)
    }
  }
  LaurentGF2 out = laurent_zero();
  for (long long e : support) out = add(out, laurent_term(e));
  return out;
}

FoxMatrices fox_matrix(const PresentationData& pres) {
  const int p = static_cast<int>(pres.generators.size());
  const int q = static_cast<int>(pres.relators.size());
  if (p == 0) throw std::invalid_argument("presentation needs at least one generator");
  if (pres.u.size() != pres.generators.size())
    throw std::invalid_argument("u must assign an exponent to every generator");
  if (std::all_of(pres.u.begin(), pres.u.end(), [](long long v) { return v == 0; }))
    throw std::invalid_argument("u must be a nonzero homomorphism");
  if (pres.three_cells < 0) throw std::invalid_argument("three-cell count must be nonnegative");
  for (const auto& rel : pres.relators)
    if (exponent_sum(rel, pres.u) != 0)
      throw std::invalid_argument("u does not vanish on a relator");

  FoxMatrices out;
  out.d1 = laurent_matrix(p, 1);
  for (int i = 0; i < p; ++i)
    out.d1.at[static_cast<std::size_t>(i)][0] =
        add(laurent_term(pres.u[static_cast<std::size_t>(i)]), laurent_one());
  out.d2 = laurent_matrix(q, p);
  for (int j = 0; j < q; ++j)
    for (int i = 0; i < p; ++i)
      out.d2.at[static_cast<std::size_t>(j)][static_cast<std::size_t>(i)] =
          fox_derivative(pres.relators[static_cast<std::size_t>(j)], i + 1, pres.u);
  if (!is_zero(mat_mul(out.d2, out.d1)))
    throw std::logic_error("Fox identity violated: D2 D1 is not zero");
  if (pres.d3.has_value()) {
    if (pres.d3->rows != pres.three_cells || pres.d3->cols != q)
      throw std::invalid_argument("three-cell boundary matrix has the wrong shape");
    if (!is_zero(mat_mul(*pres.d3, out.d2)))
      throw std::invalid_argument("chain condition failed: D2 composed with D3 is not zero");
    out.d3 = pres.d3;
  }
  return out;
}

int rank_over_fraction_field(const LaurentMatrixGF2& m) {
  std::vector<std::vector<RatFuncGF2>> a(static_cast<std::size_t>(m.rows),
                                         std::vector<RatFuncGF2>(static_cast<std::size_t>(m.cols)));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j)
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] =
          ratfunc(m.at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)]);
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int pivot = -1;
    for (int i = rank; i < m.rows; ++i)
      if (!a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)].is_zero()) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[static_cast<std::size_t>(rank)], a[static_cast<std::size_t>(pivot)]);
    RatFuncGF2 inv = inverse(a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)]);
    for (int i = rank + 1; i < m.rows; ++i) {
      RatFuncGF2& lead = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (lead.is_zero()) continue;
      RatFuncGF2 factor = mul(lead, inv);
      for (int j = c; j < m.cols; ++j) {
        auto& e = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
        e = add(e, mul(factor, a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)]));
      }
    }
    ++rank;
  }
  return rank;
}

namespace {
// x^16 + x^12 + x^3 + x + 1, primitive over GF(2) (t = x generates the
// multiplicative group: its order is exactly 2^16 - 1)
constexpr std::uint32_t kGF16Poly = 0x1100B;
}  // namespace

std::uint16_t gf16_mul(std::uint16_t a, std::uint16_t b) {
  std::uint32_t acc = 0;
  for (int i = 0; i < 16; ++i)
    if (b & (1u << i)) acc ^= (static_cast<std::uint32_t>(a) << i);
  for (int i = 31; i >= 16; --i)
    if (acc & (1u << i)) acc ^= (kGF16Poly << (i - 16));
  return static_cast<std::uint16_t>(acc);
}

std::uint16_t gf16_inv(std::uint16_t a) {
  if (a == 0) throw std::invalid_argument("zero has no inverse in GF(2^16)");
  return gf16_pow(a, 65534);
}

std::uint16_t gf16_pow(std::uint16_t a, long long e) {
  if (e < 0) {
    a = gf16_inv(a);
    e = -e;
  }
  std::uint16_t r = 1;
  while (e > 0) {
    if (e & 1) r = gf16_mul(r, a);
    a = gf16_mul(a, a);
    e >>= 1;
  }
  return r;
}

int rank_at_specialization(const LaurentMatrixGF2& m, std::uint16_t t0) {
  if (t0 == 0 || t0 == 1)
    throw std::invalid_argument("specialization point must lie outside {0, 1}");
  std::vector<std::vector<std::uint16_t>> a(
      static_cast<std::size_t>(m.rows), std::vector<std::uint16_t>(static_cast<std::size_t>(m.cols), 0));
  for (int i = 0; i < m.rows; ++i)
    for (int j = 0; j < m.cols; ++j) {
      const LaurentGF2& e = m.at[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)];
      if (e.is_zero()) continue;
      std::uint16_t power = gf16_pow(t0, e.low);
      std::uint16_t val = 0;
      for (std::size_t k = 0; k < e.bits.size(); ++k) {
        if (e.bits[k]) val ^= power;
        power = gf16_mul(power, t0);
      }
      a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] = val;
    }
  int rank = 0;
  for (int c = 0; c < m.cols && rank < m.rows; ++c) {
    int pivot = -1;
    for (int i = rank; i < m.rows; ++i)
      if (a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)]) {
        pivot = i;
        break;
      }
    if (pivot < 0) continue;
    std::swap(a[static_cast<std::size_t>(rank)], a[static_cast<std::size_t>(pivot)]);
    std::uint16_t inv = gf16_inv(a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(c)]);
    for (int i = rank + 1; i < m.rows; ++i) {
      std::uint16_t lead = a[static_cast<std::size_t>(i)][static_cast<std::size_t>(c)];
      if (!lead) continue;
      std::uint16_t f = gf16_mul(lead, inv);
      for (int j = c; j < m.cols; ++j)
        a[static_cast<std::size_t>(i)][static_cast<std::size_t>(j)] ^=
            gf16_mul(f, a[static_cast<std::size_t>(rank)][static_cast<std::size_t>(j)]);
    }
    ++rank;
  }
  return rank;
}

BettiBound betti_bound(const PresentationData& pres) {
  FoxMatrices fox = fox_matrix(pres);
  if (pres.three_cells > 0 && !fox.d3.has_value())
    throw std::invalid_argument("three-cell count without an explicit boundary matrix");
  const long long p = static_cast<long long>(pres.generators.size());
  const long long q = static_cast<long long>(pres.relators.size());
  const long long r = pres.three_cells;
  BettiBound out;
  out.rank_d2 = rank_over_fraction_field(fox.d2);
  out.rank_d3 = fox.d3.has_value() ? rank_over_fraction_field(*fox.d3) : 0;
  out.n = (q - out.rank_d2) - out.rank_d3;
  out.bound = q + 1 - (p + r);
  out.satisfied = out.n >= out.bound;
  out.infinite_h2_certificate = out.n > 0;
  // rank D2 <= p - 1 because D2 D1 = 0 with D1 != 0, and rank D3 <= r, so the
  // bound always holds; a violation means the rank computation is broken.
  if (!out.satisfied) throw std::logic_error("betti bound violated; rank computation inconsistent");
  return out;
}

ProductTypeCounts product_presentation_counts(long long p1, long long q1, long long p2,
                                              long long q2) {
  if (p1 < 0 || q1 < 0 || p2 < 0 || q2 < 0)
    throw std::invalid_argument("cell counts must be nonnegative");
  ProductTypeCounts out;
  out.p = p1 + p2;
  out.q = p1 * p2 + q1 + q2;
  out.r = p1 * q2 + q1 * p2;
  out.margin = out.q - (out.p + out.r);
  out.formula_margin = (1 - p1 + q1) * (1 - p2 + q2) - 1;
  out.formula_matches = out.margin == out.formula_margin;
  return out;
}

SurfaceProductCounts surface_product_counts(long long g1, long long g2) {
  if (g1 < 1 || g2 < 1) throw std::invalid_argument("genus must be at least 1");
  SurfaceProductCounts out;
  out.p = 2 * g1 + 2 * g2;
  out.r = out.p;
  out.q = 4 * g1 * g2 + 2;
  out.margin = out.q - (out.p + out.r);
  return out;
}

}  // namespace lgr
