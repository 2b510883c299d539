#pragma once

#include <complex>
#include <cstdint>

#include "lfk/kernel.hpp"
#include "lfk/ntheory.hpp"

namespace lfk::jacobi {

using std::int64_t;
using Complex = std::complex<double>;
using kernel::EvalResult;
using kernel::TruncationConfig;
using ntheory::DiscriminantDatum;

// Target index pair (D', r') of a Jacobi form coefficient, r'^2 = D' (mod 4N).
struct JacobiIndexPair {
  int64_t Dp, rp;
};

// (D', r')-th coefficient of the Jacobi Poincare series P^J_{k+1,N,(D,r)}:
// delta_N(D,r,D',r') + i^{k+1} pi sqrt(2) N^{-1/2} (D'/D)^{k/2-1/4}
//   sum_{n>=1} H_{N,n}(D,r,D',r') J_{k-1/2}(pi sqrt(D'D)/(Nn)).
EvalResult g_coeff(int64_t k, int64_t N, const DiscriminantDatum& base,
                   const JacobiIndexPair& target, const TruncationConfig& trunc);

// g(D',r') + (-1)^{k+1} g(D',-r').
EvalResult g_coeff_pm(int64_t k, int64_t N, const DiscriminantDatum& base,
                      const JacobiIndexPair& target, const TruncationConfig& trunc);

// m-th coefficient of S_{D,r}(P^J): sum_{d|m} (D/d) d^{k-1} g^pm(m^2 D/d^2, m r/d).
// The divisor sum is reorganized along n'' = d*nu so its truncation aligns
// index-for-index with lift_coeff_closed's series (the GKZ pairing).
EvalResult lift_coeff_via_g(int64_t k, int64_t N, const DiscriminantDatum& base, int64_t m,
                            const TruncationConfig& trunc);

// Same coefficient by the closed formula of Proposition 4 (S^pm series).
EvalResult lift_coeff_closed(int64_t k, int64_t N, const DiscriminantDatum& base, int64_t m,
                             const TruncationConfig& trunc);

struct WaldspurgerConstant {
  double constant;            // (k-1)! |D|^{k-1/2} / (2^{2k-1} pi^k N^{k-1})
  double elliptic_prefactor;  // Gamma(2k-1) / (4 pi)^{2k-1}
  double jacobi_prefactor;    // N^{k-1} Gamma(k-1/2) / (2 pi^{k-1/2} |D|^{k-1/2})
  double identity_rel_err;    // |elliptic/jacobi - constant| / constant
};

// The Theorem-3 constant together with the two Petersson prefactors; their
// quotient reproduces the constant through the Legendre duplication formula.
WaldspurgerConstant waldspurger_constant(int64_t k, int64_t N, int64_t D);

}  // namespace lfk::jacobi
