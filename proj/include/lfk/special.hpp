#pragma once

#include <complex>
#include <cstdint>

namespace lfk::special {

using Complex = std::complex<double>;

// Principal log-Gamma via the Lanczos approximation, reflection for
// Re(z) < 0.5. Relative error of exp(lgamma) is ~1e-13 on the strip
// 0.5 <= Re z <= 50, |Im z| <= 50.
Complex lgamma_complex(Complex z);

// Gamma(z); throws std::domain_error within 1e-12 of a pole.
Complex gamma_complex(Complex z);

// |Gamma(z1)| / |Gamma(z2)| computed in log space.
double gamma_abs_ratio(Complex z1, Complex z2);

// Kummer's confluent hypergeometric M(a,b;z).
//
// Power series with cancellation-aware stopping (20 consecutive terms below
// 1e-17 of the running max partial sum). The Kummer transformation is applied
// for Re(z) < 0. When the series loses too many digits (large imaginary z)
// and 1 <= Re(a), 1 <= Re(b-a), the integral representation
// Gamma(b)/(Gamma(a)Gamma(b-a)) int_0^1 e^{zt} t^{a-1} (1-t)^{b-a-1} dt
// is used instead.
Complex kummer_1f1(Complex a, Complex b, Complex z);

namespace detail {
Complex kummer_series(Complex a, Complex b, Complex z, double* digits_lost = nullptr);
Complex kummer_integral(Complex a, Complex b, Complex z);
}  // namespace detail

// Rigorous upper bound for |1F1(alpha, beta; 2*pi*i*x)|, x real:
// |Gamma(beta)/(Gamma(alpha)Gamma(beta-alpha))| * B(Re alpha, beta - Re alpha).
// Requires Re(alpha) > 1 and beta - Re(alpha) > 1. Independent of x.
double one_f1_bound(Complex alpha, double beta, double x);

double beta_function(double p, double q);

// Bessel J of half-integer order nu = two_nu/2, x > 0. Upward recurrence
// from J_{1/2}, J_{3/2} for x >= nu, power series for x < nu.
double bessel_j_half(int two_nu, double x);

namespace detail {
double bessel_j_half_series(int two_nu, double x);
double bessel_j_half_recurrence(int two_nu, double x);
}  // namespace detail

// (x/2)^nu / Gamma(nu+1), a majorant of |J_nu(x)| valid for all x > 0.
double bessel_tail_majorant(int two_nu, double x);

// Rigorous upper bound for sum_{n >= start} n^{-s}, s > 1.
double zeta_upper(double s, std::int64_t start, int partial_terms = 4096);

}  // namespace lfk::special
