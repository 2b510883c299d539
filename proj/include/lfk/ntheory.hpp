#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <stdexcept>
#include <vector>

namespace lfk::ntheory {

using std::int64_t;

// Checked 64-bit arithmetic. All elementary routines reject inputs that
// would overflow instead of wrapping.
int64_t checked_add(int64_t a, int64_t b);
int64_t checked_mul(int64_t a, int64_t b);

int64_t gcd(int64_t a, int64_t b);
int64_t lcm(int64_t a, int64_t b);

// Extended gcd: returns g = gcd(a,b) and x,y with a*x + b*y = g.
struct ExtGcd {
  int64_t g, x, y;
};
ExtGcd ext_gcd(int64_t a, int64_t b);

// Least nonnegative inverse of a mod m (m >= 1). Throws if gcd(a,m) != 1.
int64_t inv_mod(int64_t a, int64_t m);

// Least nonnegative residue.
int64_t mod_floor(int64_t a, int64_t m);

// (a*b) mod m without overflow, m >= 1, results in [0, m).
int64_t mul_mod(int64_t a, int64_t b, int64_t m);

std::vector<int64_t> divisors(int64_t n);                    // positive n
std::vector<std::pair<int64_t, int>> factorize(int64_t n);   // positive n
int64_t euler_phi(int64_t n);
bool is_squarefree(int64_t n);

// Kronecker symbol (D/m), fully extended to all integers.
int kronecker(int64_t D, int64_t m);

// Fundamental-discriminant test, sign-agnostic: D = 1 (mod 4) squarefree,
// or D = 4m with m = 2,3 (mod 4) squarefree. D = 1 itself is excluded.
bool is_fundamental(int64_t D);

// Exact root of unity e(num/den) = exp(2*pi*i*num/den), stored reduced with
// 0 <= num < den. den == 0 encodes the zero value of a character.
struct Unity {
  int64_t num = 0;
  int64_t den = 1;

  static Unity zero() { return Unity{0, 0}; }
  static Unity one() { return Unity{0, 1}; }
  static Unity make(int64_t num, int64_t den);  // reduces, den >= 1

  bool is_zero() const { return den == 0; }
  Unity operator*(const Unity& o) const;
  Unity conj() const;
  Unity pow(int64_t e) const;
  std::complex<double> value() const;
  bool operator==(const Unity& o) const = default;
};

// Dirichlet character mod h with exact root-of-unity values.
class DirichletCharacter {
 public:
  // Trivial character mod h.
  static DirichletCharacter trivial(int64_t modulus);

  // All phi(modulus) characters, in the canonical order described in
  // all_characters_order() below.
  static std::vector<DirichletCharacter> all_characters(int64_t modulus);

  // The quadratic character (D/.) mod |D| for a fundamental D < 0.
  static DirichletCharacter kronecker_character(int64_t D);

  int64_t modulus() const { return modulus_; }
  int64_t conductor() const { return conductor_; }
  int parity() const { return parity_; }  // value at -1, so +1 or -1
  bool is_primitive() const { return conductor_ == modulus_; }
  bool is_trivial() const { return conductor_ == 1; }

  // Value at any integer (reduced mod the modulus).
  const Unity& value(int64_t n) const {
    return values_[static_cast<size_t>(mod_floor(n, modulus_))];
  }
  std::complex<double> operator()(int64_t n) const { return value(n).value(); }

  DirichletCharacter conj() const;

  // lcm of the orders of all nonzero values (the order of the character).
  int64_t order() const;

  // Numeric Gauss sum G(chi) = sum_{l mod h} chi(l) e(l/h).
  std::complex<double> gauss_sum() const;

  const std::vector<Unity>& values() const { return values_; }

 private:
  DirichletCharacter(int64_t modulus, std::vector<Unity> values);

  int64_t modulus_;
  std::vector<Unity> values_;
  int64_t conductor_;
  int parity_;
};

// (D, N, r) with D < 0 fundamental, gcd(D, N) = 1, r^2 = D (mod 4N).
struct DiscriminantDatum {
  int64_t D, N, r;
  DiscriminantDatum(int64_t D, int64_t N, int64_t r);
};

}  // namespace lfk::ntheory
