#include "lfk/analysis.hpp"

#include <cmath>
#include <functional>
#include <numeric>
#include <stdexcept>

#include "lfk/special.hpp"

namespace lfk::analysis {

EstimateBreakdown estimate_breakdown(int64_t k, int64_t N, int64_t h, int64_t m,
                                     double delta, double t0) {
  if (k < 3) throw std::invalid_argument("estimate_breakdown: k must be >= 3");
  if (N < 1 || h < 1 || m < 1)
    throw std::invalid_argument("estimate_breakdown: N, h, m must be positive");
  if (!(delta > 0.0) || !(delta <= 0.5))
    throw std::invalid_argument("estimate_breakdown: delta must be in (0, 1/2]");

  EstimateBreakdown out;
  out.lhs = std::pow(static_cast<double>(m), -delta);

  const double kk = static_cast<double>(k);
  const double sigma = 0.5 * kk - delta;
  if (!(sigma > 1.0) || !(kk - sigma > 1.0)) return out;  // bound inapplicable
  out.applicable = true;

  if (N == 1) {
    out.summand1 = std::pow(2.0 * M_PI / static_cast<double>(h), 2.0 * delta) *
                   std::pow(static_cast<double>(m), delta) *
                   special::gamma_abs_ratio(Complex{0.5 * kk - delta, -t0},
                                            Complex{0.5 * kk + delta, t0});
  }

  // 2 h (2pi)^{k-sigma} m^{k/2} h^{sigma-1/2} B(sigma, k-sigma) / |Gamma(k-s0)|
  //   * zeta-bounds for sum over c (multiples of N) and q, in log space.
  double log_s2 = std::log(2.0) + std::log(std::cosh(0.5 * M_PI * t0)) +
                  std::log(static_cast<double>(h)) +
                  (kk - sigma) * std::log(2.0 * M_PI) + 0.5 * kk * std::log(static_cast<double>(m)) +
                  (sigma - 0.5) * std::log(static_cast<double>(h)) + std::lgamma(sigma) +
                  std::lgamma(kk - sigma) - std::lgamma(kk) -
                  special::lgamma_complex(Complex{0.5 * kk + delta, t0}).real() +
                  (sigma - kk) * std::log(static_cast<double>(N)) +
                  std::log(special::zeta_upper(kk - sigma, 1, 32)) +
                  std::log(special::zeta_upper(sigma, 1, 32));
  out.summand2_bound = std::exp(log_s2);
  out.verdict = out.lhs > out.summand1 + out.summand2_bound;
  return out;
}

namespace {

std::optional<Certificate> grid_search(double eps, int grid_points,
                                       std::function<EstimateBreakdown(int64_t, double)> eval,
                                       std::function<bool(int64_t)> admissible, int64_t lo,
                                       int64_t hi) {
  if (!(eps > 0.0) || !(eps < 0.5))
    throw std::invalid_argument("certificate search: eps must be in (0, 1/2)");
  if (grid_points < 2) throw std::invalid_argument("certificate search: grid too small");
  for (int64_t v = lo; v <= hi; ++v) {
    if (!admissible(v)) continue;
    bool all_ok = true;
    double worst_margin = 1e300, worst_delta = eps;
    for (int j = 0; j < grid_points; ++j) {
      double delta = eps + (0.5 - eps) * static_cast<double>(j) / (grid_points - 1);
      EstimateBreakdown b = eval(v, delta);
      if (!b.applicable || !b.verdict) { all_ok = false; break; }
      double margin = b.lhs - (b.summand1 + b.summand2_bound);
      if (margin < worst_margin) { worst_margin = margin; worst_delta = delta; }
    }
    if (all_ok) return Certificate{v, worst_delta, worst_margin};
  }
  return std::nullopt;
}

}  // namespace

std::optional<Certificate> min_weight(double t0, double eps, int64_t N, int64_t m, int64_t h,
                                      int grid_points) {
  if (std::gcd(m, h) != 1 || std::gcd(N, h) != 1)
    throw std::invalid_argument("min_weight: m and N must be coprime to h");
  return grid_search(
      eps, grid_points,
      [&](int64_t k, double delta) { return estimate_breakdown(k, N, h, m, delta, t0); },
      [](int64_t) { return true; }, 3, 10000);
}

std::optional<Certificate> min_level(double t0, double eps, int64_t k, int64_t m, int64_t h,
                                     int grid_points) {
  if (k < 3) throw std::invalid_argument("min_level: k must be >= 3");
  if (std::gcd(m, h) != 1) throw std::invalid_argument("min_level: m must be coprime to h");
  return grid_search(
      eps, grid_points,
      [&](int64_t N, double delta) { return estimate_breakdown(k, N, h, m, delta, t0); },
      [&](int64_t N) { return std::gcd(N, h) == 1; }, 1, 1000000);
}

std::vector<ScanPoint> zero_scan(int64_t k, int64_t N, const ntheory::DirichletCharacter& psi,
                                 const ntheory::DirichletCharacter& chi, int64_t m, double t0,
                                 double sigma_lo, double sigma_hi, double step, double threshold,
                                 const kernel::TruncationConfig& trunc) {
  if (!(step > 0.0)) throw std::invalid_argument("zero_scan: step must be positive");
  double strip_lo = (static_cast<double>(k) - 1.0) / 2.0;
  double strip_hi = (static_cast<double>(k) + 1.0) / 2.0;
  if (!(sigma_lo >= strip_lo) || !(sigma_hi <= strip_hi) || !(sigma_lo <= sigma_hi))
    throw std::invalid_argument("zero_scan: range must lie inside the critical strip");
  std::vector<ScanPoint> out;
  for (double sigma = sigma_lo; sigma <= sigma_hi + 1e-12; sigma += step) {
    kernel::KernelSpec spec{k, N, psi, chi, Complex{sigma, t0}, trunc};
    auto r = kernel::kernel_coeff_general(spec, m);
    ScanPoint p;
    p.sigma = sigma;
    p.coeff = r.value;
    p.err = r.error_estimate;
    p.flagged = std::abs(r.value) < threshold + r.error_estimate;
    out.push_back(p);
  }
  return out;
}

}  // namespace lfk::analysis
