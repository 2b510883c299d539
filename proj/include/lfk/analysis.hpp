#pragma once

#include <complex>
#include <cstdint>
#include <optional>
#include <vector>

#include "lfk/kernel.hpp"

namespace lfk::analysis {

using std::int64_t;
using Complex = std::complex<double>;

// Both sides of the contradiction inequality at s0 = k/2 - delta - i t0,
// everything divided by m^{k/2-1} as in the derivation of the estimate.
struct EstimateBreakdown {
  double lhs = 0.0;             // m^{-delta}
  double summand1 = 0.0;        // N = 1 Gamma-ratio term
  double summand2_bound = 0.0;  // explicit rigorous bound on the double-sum term
  bool applicable = false;      // sigma = k/2 - delta > 1 and k - sigma > 1
  bool verdict = false;         // lhs > summand1 + summand2_bound
};

EstimateBreakdown estimate_breakdown(int64_t k, int64_t N, int64_t h, int64_t m,
                                     double delta, double t0);

struct Certificate {
  int64_t value;       // certified weight k or level N
  double worst_delta;  // grid delta with the smallest margin
  double worst_margin; // lhs - (summand1 + summand2) there
};

// Smallest k <= 10^4 whose verdict holds on the whole delta grid
// {eps + j (1/2 - eps)/(grid_points-1)}.
std::optional<Certificate> min_weight(double t0, double eps, int64_t N, int64_t m, int64_t h,
                                      int grid_points = 513);

// Mirror search over the level, k fixed; N with gcd(N, h) > 1 are skipped.
std::optional<Certificate> min_level(double t0, double eps, int64_t k, int64_t m, int64_t h,
                                     int grid_points = 513);

struct ScanPoint {
  double sigma;
  Complex coeff;
  double err;
  bool flagged;
};

// Evaluates the m-th kernel coefficient at s = sigma + i t0 on a grid and
// flags points with |coeff| < threshold + error estimate.
std::vector<ScanPoint> zero_scan(int64_t k, int64_t N,
                                 const ntheory::DirichletCharacter& psi,
                                 const ntheory::DirichletCharacter& chi, int64_t m, double t0,
                                 double sigma_lo, double sigma_hi, double step, double threshold,
                                 const kernel::TruncationConfig& trunc);

}  // namespace lfk::analysis
