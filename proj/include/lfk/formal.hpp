#pragma once

#include <complex>
#include <cstdint>
#include <vector>

#include "lfk/ntheory.hpp"

namespace lfk::formal {

using std::int64_t;

// Integer combination of M-th roots of unity: coeffs[j] counts e(j/M).
// Immutable value type; all operations return new sums.
class FormalExpSum {
 public:
  explicit FormalExpSum(int64_t modulus);

  static constexpr int64_t kMaxModulus = 1'000'000;

  // c * e(j/M), j taken mod M.
  static FormalExpSum exp_term(int64_t modulus, int64_t j, int64_t c);

  int64_t modulus() const { return modulus_; }
  const std::vector<int64_t>& coeffs() const { return coeffs_; }

  FormalExpSum operator+(const FormalExpSum& o) const;
  FormalExpSum operator-(const FormalExpSum& o) const;
  FormalExpSum operator-() const;
  FormalExpSum scale(int64_t c) const;

  // Multiplication by e(j0/M): index rotation.
  FormalExpSum rotate(int64_t j0) const;

  // Complex conjugate: j -> -j.
  FormalExpSum conj() const;

  // Convolution product (both sums must share the modulus).
  FormalExpSum operator*(const FormalExpSum& o) const;

  // Same evaluation, modulus M' (requires M | M').
  FormalExpSum rescale_modulus(int64_t new_modulus) const;

  std::complex<double> eval() const;

  void add_term(int64_t j, int64_t c);  // builder-style accumulation

 private:
  int64_t modulus_;
  std::vector<int64_t> coeffs_;
};

// Exact equality: A - B lies in the ideal of vanishing root-of-unity sums,
// i.e. the M-th cyclotomic polynomial divides the difference.
bool equal_exact(const FormalExpSum& a, const FormalExpSum& b);
bool is_zero_exact(const FormalExpSum& a);

// Coefficients of the M-th cyclotomic polynomial (ascending degree).
std::vector<int64_t> cyclotomic_polynomial(int64_t m);

// Gauss sum of chi as an exact sum over modulus lcm(h, order(chi)).
FormalExpSum gauss_sum_formal(const ntheory::DirichletCharacter& chi);

}  // namespace lfk::formal
