#pragma once
// Fox-calculus chain data of a finite presentation, specialized along a
// nonzero homomorphism u: G -> Z into Laurent polynomials over GF(2). Exact
// rank over the rational-function field GF(2)(t) drives the lower bound
// n >= q + 1 - (p + r) for the second Betti number of ker u, with GF(2^16)
// evaluation as an independent rank cross-check.

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

namespace lgr {

// Laurent polynomial over GF(2): bits[k] is the coefficient of t^(low + k).
// Normalized: zero has empty bits, otherwise bits.front() = bits.back() = 1.
struct LaurentGF2 {
  long long low = 0;
  std::vector<std::uint8_t> bits;

  bool is_zero() const { return bits.empty(); }
  bool is_one() const { return low == 0 && bits.size() == 1; }
  long long high() const { return low + static_cast<long long>(bits.size()) - 1; }
  std::uint8_t coeff(long long e) const;
  bool operator==(const LaurentGF2&) const = default;
};

LaurentGF2 laurent_zero();
LaurentGF2 laurent_one();
LaurentGF2 laurent_term(long long e);  // t^e
LaurentGF2 laurent_of(long long low, std::vector<std::uint8_t> bits);
LaurentGF2 add(const LaurentGF2& a, const LaurentGF2& b);  // XOR of supports
LaurentGF2 mul(const LaurentGF2& a, const LaurentGF2& b);
// gcd of the polynomial parts; defined up to the t-power units, returned with
// low = 0. gcd(0, 0) = 0.
LaurentGF2 laurent_gcd(const LaurentGF2& a, const LaurentGF2& b);
std::string show(const LaurentGF2& a);

// Rational function over GF(2): num / den in lowest terms, den != 0, both
// stored as true polynomials (low >= 0) not both divisible by t.
struct RatFuncGF2 {
  LaurentGF2 num = laurent_zero();
  LaurentGF2 den = laurent_one();

  bool is_zero() const { return num.is_zero(); }
  bool operator==(const RatFuncGF2&) const = default;
};

RatFuncGF2 ratfunc(const LaurentGF2& value);  // value / 1
RatFuncGF2 ratfunc_of(const LaurentGF2& num, const LaurentGF2& den);
RatFuncGF2 add(const RatFuncGF2& a, const RatFuncGF2& b);
RatFuncGF2 mul(const RatFuncGF2& a, const RatFuncGF2& b);
RatFuncGF2 inverse(const RatFuncGF2& a);
std::string show(const RatFuncGF2& a);

struct LaurentMatrixGF2 {
  int rows = 0, cols = 0;
  std::vector<std::vector<LaurentGF2>> at;  // at[row][col]
};

LaurentMatrixGF2 laurent_matrix(int rows, int cols);
// (a * b)[i][k] = sum_j a[i][j] b[j][k]; the chain maps compose this way with
// row vectors acting from the left.
LaurentMatrixGF2 mat_mul(const LaurentMatrixGF2& a, const LaurentMatrixGF2& b);
bool is_zero(const LaurentMatrixGF2& m);

// A presentation with p generators, q relators and r three-cells, together
// with the exponents u(x_i) of a homomorphism to Z. Relators are words of
// signed 1-based generator indices (-i encodes the inverse of generator i).
struct PresentationData {
  std::vector<std::string> generators;
  std::vector<std::vector<int>> relators;
  int three_cells = 0;                  // r
  std::optional<LaurentMatrixGF2> d3;   // r x q boundary matrix when known
  std::vector<long long> u;             // aligned with generators
};

// "aBc" -> {1, -2, 3}: lowercase letters name generators, uppercase their
// inverses. Requires single-letter generator names.
std::vector<int> relator_from_word(const std::string& word,
                                   const std::vector<std::string>& generators);

long long exponent_sum(const std::vector<int>& word, const std::vector<long long>& u);

// Fox derivative of the word by generator gen (1-based), specialized along u:
// the rules d(vw) = dv + v dw, dx/dx = 1, dx^-1/dx = -x^-1 with every group
// element v sent to t^{u(v)}.
LaurentGF2 fox_derivative(const std::vector<int>& word, int gen,
                          const std::vector<long long>& u);

struct FoxMatrices {
  LaurentMatrixGF2 d1;                 // p x 1, entries t^{u(x_i)} + 1
  LaurentMatrixGF2 d2;                 // q x p, specialized Fox derivatives
  std::optional<LaurentMatrixGF2> d3;  // passed through when supplied
};

// Validates the presentation (letters in range, u a nonzero homomorphism
// vanishing on every relator, d3 of shape r x q when present), builds the
// specialized boundary matrices, and checks the chain compositions.
FoxMatrices fox_matrix(const PresentationData& pres);

// Exact rank by Gaussian elimination over the fraction field GF(2)(t).
int rank_over_fraction_field(const LaurentMatrixGF2& m);

// --- GF(2^16) specialization ------------------------------------------------
// Polynomial basis modulo a fixed primitive degree-16 polynomial; t0 must lie
// outside {0, 1}. Evaluation can only lower the rank, and for all but
// finitely many t0 it preserves it.
std::uint16_t gf16_mul(std::uint16_t a, std::uint16_t b);
std::uint16_t gf16_inv(std::uint16_t a);
std::uint16_t gf16_pow(std::uint16_t a, long long e);  // negative e inverts
int rank_at_specialization(const LaurentMatrixGF2& m, std::uint16_t t0);

struct BettiBound {
  long long n = 0;      // (q - rank D2) - rank D3 over GF(2)(t)
  long long bound = 0;  // q + 1 - (p + r)
  bool satisfied = false;
  bool infinite_h2_certificate = false;  // n > 0
  long long rank_d2 = 0;
  long long rank_d3 = 0;
};

// Requires an explicit d3 whenever three_cells > 0. The inequality
// n >= bound is a theorem for nonzero u, so a violation throws.
BettiBound betti_bound(const PresentationData& pres);

// Cell counts of a product of two presentation complexes of types
// (p1, q1, 0) and (p2, q2, 0). The closed form (1-p1+q1)(1-p2+q2)-1 for
// q - (p + r) ignores the q1*q2 four-cells of the product, so it matches the
// direct count exactly when q1*q2 = 0; both values are reported.
struct ProductTypeCounts {
  long long p = 0, q = 0, r = 0;
  long long margin = 0;          // q - (p + r) from the counts
  long long formula_margin = 0;  // (1 - p1 + q1)(1 - p2 + q2) - 1
  bool formula_matches = false;
};

ProductTypeCounts product_presentation_counts(long long p1, long long q1, long long p2,
                                              long long q2);

// Cell counts of a product of two closed orientable surfaces of genus >= 1:
// p = r = 2 g1 + 2 g2, q = 4 g1 g2 + 2, margin = q - (p + r)
// = 4 (g1 - 1)(g2 - 1) - 2.
struct SurfaceProductCounts {
  long long p = 0, q = 0, r = 0;
  long long margin = 0;
};

SurfaceProductCounts surface_product_counts(long long g1, long long g2);

}  // namespace lgr
