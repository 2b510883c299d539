#include "lfk/kernel.hpp"

#include <cassert>
#include <cmath>
#include <numeric>
#include <functional>
#include <stdexcept>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lfk/parallel.hpp"
#include "lfk/special.hpp"

namespace lfk::kernel {

using ntheory::inv_mod;
using ntheory::kronecker;
using ntheory::mod_floor;
using ntheory::mul_mod;

namespace detail {

Complex i_power(int64_t e) {
  switch (mod_floor(e, 4)) {
    case 0: return {1.0, 0.0};
    case 1: return {0.0, 1.0};
    case 2: return {-1.0, 0.0};
    default: return {0.0, -1.0};
  }
}

Complex phase_fraction(int64_t num, int64_t den) {
  if (den < 0) { num = -num; den = -den; }
  double t = 2.0 * M_PI * static_cast<double>(mod_floor(num, den)) / static_cast<double>(den);
  return {std::cos(t), std::sin(t)};
}

namespace {

// Sums term(n) for n = N, 2N, ... in geometric blocks until the last block
// is below rel_tol * |partial|. Terms inside a block may be computed in
// parallel; accumulation order is always ascending n.
struct BlockSeries {
  Complex partial{0.0, 0.0};
  double last_block = 0.0;
  bool stabilized = false;
  int64_t n_reached = 0;

  // scale_floor: natural magnitude of the full coefficient in series units;
  // keeps the stopping rule meaningful when the sum itself converges to 0.
  template <typename TermFn>
  void run(int64_t N, const TruncationConfig& t, double scale_floor, TermFn&& term) {
    if (t.n_cap == 0) { stabilized = true; return; }
    int64_t lo = 1;  // in units of N: n = j*N
    int64_t hi = std::max<int64_t>(t.n_start, 2);
    int64_t cap = std::max<int64_t>(t.n_cap / N, 1);
    while (true) {
      hi = std::min(hi, cap + 1);
      std::vector<Complex> vals(static_cast<size_t>(hi - lo));
      int64_t count = hi - lo;
#pragma omp parallel for schedule(dynamic, 16) if (lfk::parallel_enabled())
      for (int64_t idx = 0; idx < count; ++idx)
        vals[static_cast<size_t>(idx)] = term((lo + idx) * N);
      Complex block{0.0, 0.0};
      for (const auto& v : vals) block += v;
      partial += block;
      last_block = std::abs(block);
      n_reached = (hi - 1) * N;
      if (last_block <= t.rel_tol * std::max({std::abs(partial), scale_floor, 1e-300})) {
        stabilized = true;
        return;
      }
      if (hi > cap) return;  // cap reached without stabilization
      lo = hi;
      hi = static_cast<int64_t>(static_cast<double>(hi) * t.growth) + 1;
    }
  }
};

}  // namespace
}  // namespace detail

void TruncationConfig::validate() const {
  // n_cap = 0 suppresses the series entirely (forced truncation).
  if (n_start < 1 || n_cap < 0 || !(growth > 1.0) || !(rel_tol > 0.0) || !(rel_tol < 1.0))
    throw std::invalid_argument("TruncationConfig: invalid parameters");
}

void KernelSpec::validate() const {
  if (k < 3) throw std::invalid_argument("KernelSpec: weight must be >= 3");
  if (N < 1) throw std::invalid_argument("KernelSpec: level must be positive");
  if (psi.modulus() != N) throw std::invalid_argument("KernelSpec: psi must live mod N");
  if (!chi.is_primitive()) throw std::invalid_argument("KernelSpec: chi must be primitive");
  if (std::gcd(N, chi.modulus()) != 1)
    throw std::invalid_argument("KernelSpec: gcd(N, h) must be 1");
  int want = (k % 2 == 0) ? 1 : -1;
  if (psi.parity() != want)
    throw std::invalid_argument("KernelSpec: psi(-1) must equal (-1)^k");
  if (!(s.real() > 1.0) || !(s.real() < static_cast<double>(k) - 1.0))
    throw std::invalid_argument("KernelSpec: s outside the strip 1 < Re(s) < k-1");
  trunc.validate();
}

namespace {

double pow_int(double base, int64_t e) {
  return std::pow(base, static_cast<double>(e));
}

// Solutions l in [0, h) of l*c = q (mod h).
std::vector<int64_t> solve_lc(int64_t c, int64_t q, int64_t h) {
  if (h == 1) return {0};
  int64_t cm = mod_floor(c, h);
  int64_t g = (cm == 0) ? h : std::gcd(cm, h);
  if (mod_floor(q, g) != 0) return {};
  int64_t hg = h / g;
  int64_t base = 0;
  if (hg > 1) base = mul_mod(mod_floor(q, h) / g, inv_mod(cm / g, hg), hg);
  std::vector<int64_t> out;
  for (int64_t t = 0; t < g; ++t) out.push_back(base + t * hg);
  return out;
}

// Rigorous bound on the tail sum_{(c,q): cq > n0, N | c} c^{sigma-k} q^{-sigma}.
double general_tail(int64_t N, int64_t n0, double sigma, int64_t k) {
  double tail = 0.0;
  double kk = static_cast<double>(k);
  for (int64_t c = N; c <= n0; c += N) {
    int64_t q0 = n0 / c + 1;
    tail += std::pow(static_cast<double>(c), sigma - kk) *
            special::zeta_upper(sigma, q0, 32);
  }
  // c > n0, all q >= 1
  tail += special::zeta_upper(sigma, 1, 64) * std::pow(static_cast<double>(N), sigma - kk) *
          special::zeta_upper(kk - sigma, n0 / N + 1, 32);
  return tail;
}

// Enumerates the (a, c) solutions behind n = (ha + lc)c for both signs of c,
// skipping terms where chi or psi vanish. fn(c, q, ell, a, abar).
template <typename Fn>
void for_each_pair(int64_t n, int64_t N, int64_t h, const KernelSpec& spec, Fn&& fn) {
  for (int64_t c_abs : ntheory::divisors(n)) {
    if (c_abs % N != 0) continue;
    for (int sgn = 0; sgn < 2; ++sgn) {
      int64_t c = sgn == 0 ? c_abs : -c_abs;
      int64_t q = n / c;
      for (int64_t ell : solve_lc(c, q, h)) {
        if (spec.chi.value(ell).is_zero()) continue;
        int64_t num = q - ell * c;
        assert(num % h == 0);
        int64_t a = num / h;
        if (std::gcd(a < 0 ? -a : a, c_abs) != 1) continue;
        if (spec.psi.value(a).is_zero()) continue;
        int64_t abar = (c_abs == 1) ? 0 : inv_mod(mod_floor(a, c_abs), c_abs);
        fn(c, q, ell, a, abar);
      }
    }
  }
}

}  // namespace

namespace detail {

double correction_abs_sum(const KernelSpec& spec, int64_t m, int64_t n_max) {
  spec.validate();
  const int64_t k = spec.k, N = spec.N, h = spec.chi.modulus();
  const Complex s = spec.s;
  const double dm = static_cast<double>(m);
  const double ep = std::exp(0.5 * M_PI * s.imag());
  double acc = 0.0;
  for (int64_t n = N; n <= n_max; n += N) {
    double fm = std::abs(special::kummer_1f1(
        s, Complex(static_cast<double>(k), 0.0),
        Complex{0.0, -2.0 * M_PI * dm * h / static_cast<double>(n)}));
    double fp = fm;
    if (s.imag() != 0.0)
      fp = std::abs(special::kummer_1f1(
          s, Complex(static_cast<double>(k), 0.0),
          Complex{0.0, 2.0 * M_PI * dm * h / static_cast<double>(n)}));
    for_each_pair(n, N, h, spec, [&](int64_t c, int64_t q, int64_t, int64_t, int64_t) {
      double mag = std::pow(std::abs(static_cast<double>(c)), static_cast<double>(-k)) *
                   std::pow(static_cast<double>(c) / static_cast<double>(q), s.real());
      acc += mag * (fm / ep + fp * ep);
    });
  }
  double pref = 0.5 * std::pow(2.0 * M_PI, static_cast<double>(k) - s.real()) *
                std::exp((special::lgamma_complex(s) -
                          special::lgamma_complex(Complex(static_cast<double>(k), 0.0)))
                             .real()) *
                std::pow(dm, static_cast<double>(k - 1)) *
                std::pow(static_cast<double>(h), s.real()) / std::sqrt(static_cast<double>(h));
  return acc * pref;
}

}  // namespace detail

EvalResult kernel_coeff_general(const KernelSpec& spec, int64_t m) {
  spec.validate();
  if (m < 1) throw std::invalid_argument("kernel_coeff_general: m must be positive");
  const int64_t k = spec.k, N = spec.N;
  const int64_t h = spec.chi.modulus();
  const Complex s = spec.s;
  const double sigma = s.real();
  const double dm = static_cast<double>(m);

  Complex coeff = spec.chi.value(m).conj().value() * std::exp((s - 1.0) * std::log(dm));

  Complex gauss = spec.chi.gauss_sum();
  if (N == 1) {
    Complex gauss_bar = spec.chi.conj().gauss_sum();
    Complex gamma_ratio =
        std::exp(special::lgamma_complex(s) - special::lgamma_complex(Complex(static_cast<double>(k), 0.0) - s));
    Complex delta_term = static_cast<double>(spec.chi.parity()) * detail::i_power(-k) *
                         std::exp((2.0 * s - static_cast<double>(k)) * std::log(static_cast<double>(h))) *
                         std::exp((static_cast<double>(k) - 2.0 * s) * std::log(2.0 * M_PI)) *
                         gamma_ratio * (gauss_bar / gauss) * spec.chi(m) *
                         std::exp((static_cast<double>(k) - s - 1.0) * std::log(dm));
    coeff += delta_term;
  }

  const Complex eips = std::exp(Complex{0.0, M_PI / 2.0} * s);   // e^{i pi s / 2}
  const Complex emips = std::exp(Complex{0.0, -M_PI / 2.0} * s);
  const double psi_m1 = static_cast<double>(spec.psi.parity());
  const double chi_m1 = static_cast<double>(spec.chi.parity());

  auto term_of_n = [&](int64_t n) -> Complex {
    Complex fminus = special::kummer_1f1(s, Complex(static_cast<double>(k), 0.0),
                                         Complex{0.0, -2.0 * M_PI * dm * h / static_cast<double>(n)});
    Complex fplus = std::conj(fminus);
    if (s.imag() != 0.0)
      fplus = special::kummer_1f1(s, Complex(static_cast<double>(k), 0.0),
                                  Complex{0.0, 2.0 * M_PI * dm * h / static_cast<double>(n)});
    Complex acc{0.0, 0.0};
    for_each_pair(n, N, h, spec, [&](int64_t c, int64_t q, int64_t ell, int64_t a, int64_t abar) {
      const auto& chiv = spec.chi.value(ell);
      const auto& psiv = spec.psi.value(a);
      double ratio = static_cast<double>(c) / static_cast<double>(q);
      assert(ratio > 0.0);
      Complex weight = chiv.value() * psiv.value() * pow_int(static_cast<double>(c), -k) *
                       std::exp(s * std::log(ratio));
      Complex bracket = eips * detail::phase_fraction(m * abar, c) * fminus +
                        psi_m1 * chi_m1 * emips * detail::phase_fraction(-m * abar, c) * fplus;
      acc += weight * bracket;
    });
    return acc;
  };

  Complex pref = 0.5 * detail::i_power(-k) *
                 std::exp((static_cast<double>(k) - s) * std::log(2.0 * M_PI)) *
                 std::exp(special::lgamma_complex(s) - special::lgamma_complex(Complex(static_cast<double>(k), 0.0))) *
                 pow_int(dm, k - 1) * std::exp(s * std::log(static_cast<double>(h))) / gauss;

  detail::BlockSeries series;
  series.run(N, spec.trunc, std::pow(dm, sigma - 1.0) / std::abs(pref), term_of_n);

  bool boundary = (k <= 4);
  if (!series.stabilized && !boundary)
    throw std::runtime_error("kernel_coeff_general: series did not stabilize within n_cap");

  EvalResult res;
  res.value = coeff + pref * series.partial;
  res.boundary_mode = boundary && !series.stabilized;
  res.stabilized = series.stabilized;
  res.n_used = series.n_reached;

  double bnd = special::one_f1_bound(s, static_cast<double>(k), 0.0);
  double tail = 4.0 * std::cosh(0.5 * M_PI * s.imag()) * static_cast<double>(h) * bnd *
                general_tail(N, series.n_reached, sigma, k);
  res.error_estimate = std::abs(pref) * (series.last_block + tail);
  res.rigorous_tail = true;
  return res;
}

EvalResult kernel_coeff_critical(int64_t k2, int64_t N, int64_t m, const DiscriminantDatum& D,
                                 const TruncationConfig& trunc) {
  trunc.validate();
  if (k2 < 4 || k2 % 2 != 0)
    throw std::invalid_argument("kernel_coeff_critical: weight must be even and >= 4");
  if (m < 1) throw std::invalid_argument("kernel_coeff_critical: m must be positive");
  if (D.N != N) throw std::invalid_argument("kernel_coeff_critical: level mismatch");
  const int64_t k = k2 / 2;
  const int64_t h = -D.D;
  const double dm = static_cast<double>(m);
  const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
  const int two_nu = static_cast<int>(2 * k - 1);

  double lead = (1.0 + (N == 1 ? sign : 0.0)) * static_cast<double>(kronecker(D.D, m)) *
                pow_int(dm, k - 1);

  auto term_of_n = [&](int64_t n) -> Complex {
    auto terms = expsums::k_terms(N, n, D.D);
    if (terms.empty()) return {0.0, 0.0};
    Complex kp = expsums::k_sum_value(terms, n, m);
    Complex km = expsums::k_sum_value(terms, n, -m);
    Complex kpm = expsums::plus_minus_combine(kp, km, k);
    double x = M_PI * dm * static_cast<double>(h) / static_cast<double>(n);
    return kpm * special::bessel_j_half(two_nu, x) / std::sqrt(static_cast<double>(n));
  };

  Complex pref = detail::i_power(k + 1) * M_PI * std::sqrt(2.0) * std::pow(dm, static_cast<double>(k) - 0.5);

  detail::BlockSeries series;
  series.run(N, trunc, std::pow(dm, static_cast<double>(k - 1)) / std::abs(pref), term_of_n);

  bool boundary = (k <= 2);
  if (!series.stabilized && !boundary)
    throw std::runtime_error("kernel_coeff_critical: series did not stabilize within n_cap");

  EvalResult res;
  res.value = Complex{lead, 0.0} + pref * series.partial;
  res.stabilized = series.stabilized;
  res.boundary_mode = boundary && !series.stabilized;
  res.n_used = series.n_reached;

  // Tail: |K^pm| <= 2 h d(n) <= 4 h sqrt(n) and the Bessel majorant give
  // terms <= 4 h (pi m h / 2)^nu n^{-nu} / Gamma(nu+1), nu = k - 1/2.
  double nu = static_cast<double>(k) - 0.5;
  double tail = 4.0 * static_cast<double>(h) *
                std::exp(nu * std::log(M_PI * dm * static_cast<double>(h) / 2.0) - std::lgamma(nu + 1.0)) *
                std::pow(static_cast<double>(N), -nu) *
                special::zeta_upper(nu, series.n_reached / N + 1, 64);
  res.error_estimate = std::abs(pref) * (series.last_block + tail);
  res.rigorous_tail = true;  // the crude majorant converges for every k >= 2
  return res;
}

}  // namespace lfk::kernel
