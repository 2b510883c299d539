#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "lfk/formal.hpp"
#include "lfk/ntheory.hpp"

namespace lfk::expsums {

using std::int64_t;
using Complex = std::complex<double>;
using ntheory::DiscriminantDatum;

// Integer binary quadratic form a x^2 + b xy + c y^2.
struct QuadraticForm {
  int64_t a, b, c;
  int64_t discriminant() const;
};

// Exact value/numeric value pair for a finite exponential sum.
struct ExpSumValue {
  formal::FormalExpSum formal;
  Complex value;
};

// One solution of the (a, c, l) parametrization behind K_{N,n}(m, D):
// c > 0, c | n, N | c, q = n/c, l mod |D| with |D| | (q - l c),
// a = (q - l c)/|D| coprime to c, abar = a^{-1} mod c (0 when c = 1).
struct KTerm {
  int64_t c, q, ell, a, abar;
  int64_t b;    // |D| - 2 q abar reduced mod 2n
  int sym;      // Kronecker (D/l)
};

// All parametrization solutions for (N, n, D), including those with
// (l, D) > 1 (symbol 0). Requires N | n, gcd(D, N) = 1, D < 0, D = 0,1 (4).
std::vector<KTerm> k_terms(int64_t N, int64_t n, int64_t D);

// K_{N,n}(m, D) as an exact sum of 2n-th roots of unity and as a number.
ExpSumValue k_sum(int64_t N, int64_t n, int64_t m, int64_t D);
ExpSumValue k_sum(int64_t N, int64_t n, int64_t m, const DiscriminantDatum& D);
Complex k_sum_value(const std::vector<KTerm>& terms, int64_t n, int64_t m);

// H_{N,n}(D, r, D', r'): direct double loop over rho in (Z/n)^*, lambda mod n.
// Requires n >= 1, 4N | r^2 - D, 4N | r'^2 - D'.
Complex h_sum(int64_t N, int64_t n, int64_t D, int64_t r, int64_t Dp, int64_t rp);

// Same value, with the inner lambda sum evaluated by the closed form of the
// quadratic Gauss sum. O(phi(n) log n) instead of O(n phi(n)).
Complex h_sum_fast(int64_t N, int64_t n, int64_t D, int64_t r, int64_t Dp, int64_t rp);

namespace detail {
// sum_{l mod n} e_n(A l^2 + B l), evaluated in closed form.
Complex quad_gauss_sum(int64_t A, int64_t B, int64_t n);
}  // namespace detail

// Genus character of a form of discriminant D^2: the Kronecker symbol (D/v)
// of the first properly represented value v coprime to D found in the search
// box [0,|D|)^2; 0 if the box contains none.
int genus_char(int64_t D, const QuadraticForm& q);

// Exhaustive variant used by tests: scans the box scaled by box_scale and
// returns nullopt if two coprime represented values disagree.
std::optional<int> genus_char_checked(int64_t D, const QuadraticForm& q, int box_scale = 1);

// One term of S_{N,n}(m, D): b mod 2n with b^2 = D^2 (4n), b = D (2N).
struct STerm {
  int64_t b;
  int chi;  // genus character of [n, b, (b^2 - D^2)/(4n)]
};

std::vector<STerm> s_terms(int64_t N, int64_t n, int64_t D);

// S_{N,n}(m, D) per Proposition 4's finite sum.
ExpSumValue s_sum(int64_t N, int64_t n, int64_t m, int64_t D);
ExpSumValue s_sum(int64_t N, int64_t n, int64_t m, const DiscriminantDatum& D);
Complex s_sum_value(const std::vector<STerm>& terms, int64_t n, int64_t m);

// A(m) + (-1)^{k+1} A(-m).
Complex plus_minus_combine(Complex a_m, Complex a_neg_m, int64_t k);

// The representatives b mod 2n produced by the K parametrization.
std::vector<int64_t> representatives(int64_t N, int64_t n, int64_t D);
std::vector<int64_t> representatives(int64_t N, int64_t n, const DiscriminantDatum& D);

struct SkReport {
  bool exact_equal;       // FormalExpSum equality of K and S
  double numeric_diff;    // |K - S| numerically
  bool termwise_ok;       // every K term matches an S term with equal symbol
  bool representatives_ok;  // K-parametrization b's = direct enumeration b's
  int64_t term_count;
  Complex k_value, s_value;
};

SkReport verify_s_equals_k(int64_t N, int64_t n, int64_t m, int64_t D);
SkReport verify_s_equals_k(int64_t N, int64_t n, int64_t m, const DiscriminantDatum& D);

struct GkzReport {
  int64_t D;
  Complex lhs, rhs;
  double abs_diff;
};

// GKZ Lemma II.3: S_{N,Nn}(m,D) vs sum_{d | (m,n)} (D/d) (n/d)^{1/2} H_{N,n/d}(...).
// D := r^2 - 4 N nJ must be negative.
GkzReport verify_gkz_lemma(int64_t N, int64_t nJ, int64_t m, int64_t r);

}  // namespace lfk::expsums
