#pragma once

#include <complex>
#include <cstdint>

#include "lfk/expsums.hpp"
#include "lfk/ntheory.hpp"

namespace lfk::kernel {

using std::int64_t;
using Complex = std::complex<double>;
using ntheory::DirichletCharacter;
using ntheory::DiscriminantDatum;

struct TruncationConfig {
  int64_t n_start = 64;
  double growth = 2.0;
  double rel_tol = 1e-10;
  int64_t n_cap = 1 << 20;

  void validate() const;
};

// Result of a truncated series evaluation. error_estimate is
// |last block| plus a rigorous zeta-type tail majorant when one exists
// (rigorous_tail = true); in boundary mode only the stabilization residual
// is reported.
struct EvalResult {
  Complex value{0.0, 0.0};
  double error_estimate = 0.0;
  bool rigorous_tail = false;
  bool stabilized = false;
  bool boundary_mode = false;
  int64_t n_used = 0;
};

struct KernelSpec {
  int64_t k;                // weight, >= 3
  int64_t N;                // level
  DirichletCharacter psi;   // character mod N with psi(-1) = (-1)^k
  DirichletCharacter chi;   // primitive character mod h, gcd(h, N) = 1
  Complex s;                // 1 < Re(s) < k - 1
  TruncationConfig trunc;

  void validate() const;
};

// m-th Fourier coefficient of R_{k,N,psi}(tau, s, chi) per the general
// three-part formula: chibar(m) m^{s-1}, the N = 1 Gamma/Gauss-sum term, and
// the double sum over l mod h and coprime pairs (a, c), reorganized by
// n = (ha + lc)c and truncated by block stabilization.
EvalResult kernel_coeff_general(const KernelSpec& spec, int64_t m);

// m-th coefficient of R_{2k,N}(tau, k, (D/.)): leading term plus the
// Bessel series with K^{pm}_{N,n}(m, D). k2 is the (even) weight 2k.
EvalResult kernel_coeff_critical(int64_t k2, int64_t N, int64_t m,
                                 const DiscriminantDatum& D,
                                 const TruncationConfig& trunc);

namespace detail {

Complex i_power(int64_t e);  // i^e
Complex phase_fraction(int64_t num, int64_t den);  // e(num/den), den may be < 0

// Sum of the absolute values of every double-sum contribution with
// n <= n_max, outer prefactor magnitude included (but not the 1/m^{k/2-1}
// normalization). Used to check the nonvanishing bound is a real bound.
double correction_abs_sum(const KernelSpec& spec, int64_t m, int64_t n_max);

}  // namespace detail

}  // namespace lfk::kernel
