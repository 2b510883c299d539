#include "lfk/jacobi.hpp"

#include <cmath>
#include <numeric>
#include <stdexcept>
#include <vector>

#include "lfk/expsums.hpp"
#include "lfk/parallel.hpp"
#include "lfk/special.hpp"

namespace lfk::jacobi {

using kernel::detail::i_power;
using ntheory::kronecker;
using ntheory::mod_floor;

namespace {

void validate_target(int64_t N, const JacobiIndexPair& t) {
  if (t.Dp >= 0) throw std::invalid_argument("jacobi: target discriminant must be negative");
  if (mod_floor(t.rp * t.rp - t.Dp, 4 * N) != 0)
    throw std::invalid_argument("jacobi: r'^2 != D' (mod 4N)");
}

double delta_term(int64_t N, const DiscriminantDatum& base, const JacobiIndexPair& t) {
  return (t.Dp == base.D && mod_floor(t.rp - base.r, 2 * N) == 0) ? 1.0 : 0.0;
}

// Block series over n = 1, 2, 3, ... (unit stride), ascending accumulation.
struct UnitBlockSeries {
  Complex partial{0.0, 0.0};
  double last_block = 0.0;
  bool stabilized = false;
  int64_t n_reached = 0;

  template <typename TermFn>
  void run(const TruncationConfig& t, double scale_floor, TermFn&& term) {
    if (t.n_cap == 0) { stabilized = true; return; }
    int64_t lo = 1;
    int64_t hi = std::max<int64_t>(t.n_start, 2);
    while (true) {
      hi = std::min(hi, t.n_cap + 1);
      int64_t count = hi - lo;
      std::vector<Complex> vals(static_cast<size_t>(count));
#pragma omp parallel for schedule(dynamic, 8) if (lfk::parallel_enabled())
      for (int64_t idx = 0; idx < count; ++idx)
        vals[static_cast<size_t>(idx)] = term(lo + idx);
      Complex block{0.0, 0.0};
      for (const auto& v : vals) block += v;
      partial += block;
      last_block = std::abs(block);
      n_reached = hi - 1;
      if (last_block <= t.rel_tol * std::max({std::abs(partial), scale_floor, 1e-300})) {
        stabilized = true;
        return;
      }
      if (hi > t.n_cap) return;
      lo = hi;
      hi = static_cast<int64_t>(static_cast<double>(hi) * t.growth) + 1;
    }
  }
};

// Tail of sum_{nu > nu0} nu^{1/2} (x0/(2 nu))^{k-1/2} / Gamma(k+1/2) from the
// crude |H_{N,nu}| <= nu^{1/2} bound. Divergent for k = 2 (boundary regime).
double g_tail(int64_t k, double x0, int64_t nu0) {
  double nu_ord = static_cast<double>(k) - 0.5;
  if (nu_ord - 0.5 <= 1.0) return -1.0;  // inconclusive
  return std::exp(nu_ord * std::log(0.5 * x0) - std::lgamma(nu_ord + 1.0)) *
         special::zeta_upper(nu_ord - 0.5, nu0 + 1, 64);
}

}  // namespace

EvalResult g_coeff(int64_t k, int64_t N, const DiscriminantDatum& base,
                   const JacobiIndexPair& target, const TruncationConfig& trunc) {
  trunc.validate();
  if (k < 2) throw std::invalid_argument("g_coeff: k must be >= 2");
  if (base.N != N) throw std::invalid_argument("g_coeff: level mismatch");
  validate_target(N, target);

  const int two_nu = static_cast<int>(2 * k - 1);
  const double cross = std::sqrt(static_cast<double>(target.Dp) * static_cast<double>(base.D));
  const double ratio_pow =
      std::exp((0.5 * static_cast<double>(k) - 0.25) *
               std::log(static_cast<double>(target.Dp) / static_cast<double>(base.D)));

  auto term = [&](int64_t n) -> Complex {
    Complex h = expsums::h_sum_fast(N, n, base.D, base.r, target.Dp, target.rp);
    double x = M_PI * cross / (static_cast<double>(N) * static_cast<double>(n));
    return h * special::bessel_j_half(two_nu, x);
  };

  Complex pref = i_power(k + 1) * M_PI * std::sqrt(2.0) /
                 std::sqrt(static_cast<double>(N)) * ratio_pow;

  UnitBlockSeries series;
  series.run(trunc, 1.0 / std::abs(pref), term);
  bool boundary = (k <= 2);
  if (!series.stabilized && !boundary)
    throw std::runtime_error("g_coeff: series did not stabilize within n_cap");

  EvalResult res;
  res.value = Complex{delta_term(N, base, target), 0.0} + pref * series.partial;
  res.stabilized = series.stabilized;
  res.boundary_mode = boundary && !series.stabilized;
  res.n_used = series.n_reached;
  double tail = g_tail(k, M_PI * cross / static_cast<double>(N), series.n_reached);
  if (tail >= 0.0) {
    res.error_estimate = std::abs(pref) * (series.last_block + tail);
    res.rigorous_tail = true;
  } else {
    res.error_estimate = std::abs(pref) * series.last_block;
    res.rigorous_tail = false;
  }
  return res;
}

EvalResult g_coeff_pm(int64_t k, int64_t N, const DiscriminantDatum& base,
                      const JacobiIndexPair& target, const TruncationConfig& trunc) {
  EvalResult a = g_coeff(k, N, base, target, trunc);
  EvalResult b = g_coeff(k, N, base, JacobiIndexPair{target.Dp, -target.rp}, trunc);
  double sign = (k % 2 == 0) ? -1.0 : 1.0;
  EvalResult res;
  res.value = a.value + sign * b.value;
  res.error_estimate = a.error_estimate + b.error_estimate;
  res.rigorous_tail = a.rigorous_tail && b.rigorous_tail;
  res.stabilized = a.stabilized && b.stabilized;
  res.boundary_mode = a.boundary_mode || b.boundary_mode;
  res.n_used = std::max(a.n_used, b.n_used);
  return res;
}

EvalResult lift_coeff_via_g(int64_t k, int64_t N, const DiscriminantDatum& base, int64_t m,
                            const TruncationConfig& trunc) {
  trunc.validate();
  if (k < 2) throw std::invalid_argument("lift_coeff_via_g: k must be >= 2");
  if (m < 1) throw std::invalid_argument("lift_coeff_via_g: m must be positive");
  if (base.N != N) throw std::invalid_argument("lift_coeff_via_g: level mismatch");

  const int two_nu = static_cast<int>(2 * k - 1);
  const double sign = (k % 2 == 0) ? -1.0 : 1.0;  // (-1)^{k+1}
  const double dm = static_cast<double>(m);

  // delta parts of the divisor sum: only d = m hits (D, r); the -r companion
  // contributes iff N | r, i.e. iff N = 1.
  double lead = (1.0 + (N == 1 ? sign : 0.0)) * static_cast<double>(kronecker(base.D, m)) *
                std::pow(dm, static_cast<double>(k - 1));

  auto divisors_m = ntheory::divisors(m);

  // Series indexed by n'' = d * nu so that the truncation matches
  // lift_coeff_closed term for term (GKZ Lemma II.3 pairing).
  auto term = [&](int64_t npp) -> Complex {
    Complex acc{0.0, 0.0};
    double x = M_PI * dm * static_cast<double>(-base.D) /
               (static_cast<double>(N) * static_cast<double>(npp));
    double bes = special::bessel_j_half(two_nu, x);
    for (int64_t d : divisors_m) {
      if (npp % d != 0) continue;
      int64_t nu = npp / d;
      int64_t md = m / d;
      int64_t Dp = md * md * base.D;
      int64_t rp = md * base.r;
      Complex h1 = expsums::h_sum_fast(N, nu, base.D, base.r, Dp, rp);
      Complex h2 = expsums::h_sum_fast(N, nu, base.D, base.r, Dp, -rp);
      Complex hpm = h1 + sign * h2;
      double ratio_pow = std::exp((0.5 * static_cast<double>(k) - 0.25) *
                                  std::log(static_cast<double>(md) * static_cast<double>(md)));
      acc += static_cast<double>(kronecker(base.D, d)) *
             std::pow(static_cast<double>(d), static_cast<double>(k - 1)) * ratio_pow * hpm * bes;
    }
    return acc;
  };

  Complex pref = i_power(k + 1) * M_PI * std::sqrt(2.0) / std::sqrt(static_cast<double>(N));

  UnitBlockSeries series;
  TruncationConfig tN = trunc;
  tN.n_cap = trunc.n_cap / N;  // n'' units, aligned with lift_coeff_closed
  series.run(tN, std::pow(dm, static_cast<double>(k - 1)) / std::abs(pref), term);
  bool boundary = (k <= 2);
  if (!series.stabilized && !boundary)
    throw std::runtime_error("lift_coeff_via_g: series did not stabilize within n_cap");

  EvalResult res;
  res.value = Complex{lead, 0.0} + pref * series.partial;
  res.stabilized = series.stabilized;
  res.boundary_mode = boundary && !series.stabilized;
  res.n_used = series.n_reached;

  // Tail: per divisor d, the g-series tail from nu > n_reached/d, weighted
  // by d^{k-1} (m/d)^{k-1/2}.
  double tail = 0.0;
  bool rigorous = true;
  for (int64_t d : divisors_m) {
    int64_t md = m / d;
    double x0 = M_PI * static_cast<double>(md) * static_cast<double>(-base.D) / static_cast<double>(N);
    double t = g_tail(k, x0, series.n_reached / d);
    if (t < 0.0) { rigorous = false; continue; }
    double w = std::pow(static_cast<double>(d), static_cast<double>(k - 1)) *
               std::exp((0.5 * static_cast<double>(k) - 0.25) *
                        std::log(static_cast<double>(md) * static_cast<double>(md)));
    tail += 2.0 * w * t;  // factor 2 for the +-r' pair
  }
  res.error_estimate = std::abs(pref) * (series.last_block + (rigorous ? tail : 0.0));
  res.rigorous_tail = rigorous;
  return res;
}

EvalResult lift_coeff_closed(int64_t k, int64_t N, const DiscriminantDatum& base, int64_t m,
                             const TruncationConfig& trunc) {
  trunc.validate();
  if (k < 2) throw std::invalid_argument("lift_coeff_closed: k must be >= 2");
  if (m < 1) throw std::invalid_argument("lift_coeff_closed: m must be positive");
  if (base.N != N) throw std::invalid_argument("lift_coeff_closed: level mismatch");

  const int two_nu = static_cast<int>(2 * k - 1);
  const double sign = (k % 2 == 0) ? -1.0 : 1.0;
  const int64_t h = -base.D;
  const double dm = static_cast<double>(m);

  double lead = (1.0 + (N == 1 ? sign : 0.0)) * static_cast<double>(kronecker(base.D, m)) *
                std::pow(dm, static_cast<double>(k - 1));

  auto term = [&](int64_t npp) -> Complex {
    int64_t n = npp * N;
    auto terms = expsums::s_terms(N, n, base.D);
    if (terms.empty()) return {0.0, 0.0};
    Complex sp = expsums::s_sum_value(terms, n, m);
    Complex sm = expsums::s_sum_value(terms, n, -m);
    Complex spm = sp + sign * sm;
    double x = M_PI * dm * static_cast<double>(h) / static_cast<double>(n);
    return spm * special::bessel_j_half(two_nu, x) / std::sqrt(static_cast<double>(n));
  };

  Complex pref = i_power(k + 1) * M_PI * std::sqrt(2.0) * std::pow(dm, static_cast<double>(k) - 0.5);

  UnitBlockSeries series;
  TruncationConfig tN = trunc;
  tN.n_cap = std::max<int64_t>(trunc.n_cap / N, 1);
  series.run(tN, std::pow(dm, static_cast<double>(k - 1)) / std::abs(pref), term);
  bool boundary = (k <= 2);
  if (!series.stabilized && !boundary)
    throw std::runtime_error("lift_coeff_closed: series did not stabilize within n_cap");

  EvalResult res;
  res.value = Complex{lead, 0.0} + pref * series.partial;
  res.stabilized = series.stabilized;
  res.boundary_mode = boundary && !series.stabilized;
  res.n_used = series.n_reached * N;

  // |S^pm| <= 4 h sqrt(n) via the representatives correspondence with K.
  double nu = static_cast<double>(k) - 0.5;
  double tail = 4.0 * static_cast<double>(h) *
                std::exp(nu * std::log(M_PI * dm * static_cast<double>(h) / 2.0) - std::lgamma(nu + 1.0)) *
                std::pow(static_cast<double>(N), -nu) *
                special::zeta_upper(nu, series.n_reached + 1, 64);
  res.error_estimate = std::abs(pref) * (series.last_block + tail);
  res.rigorous_tail = true;
  return res;
}

WaldspurgerConstant waldspurger_constant(int64_t k, int64_t N, int64_t D) {
  if (k < 2) throw std::invalid_argument("waldspurger_constant: k must be >= 2");
  if (N < 1) throw std::invalid_argument("waldspurger_constant: N must be positive");
  if (D >= 0) throw std::invalid_argument("waldspurger_constant: D must be negative");
  double kk = static_cast<double>(k);
  double absD = static_cast<double>(-D);
  double dn = static_cast<double>(N);

  WaldspurgerConstant w;
  w.constant = std::exp(std::lgamma(kk) - (2.0 * kk - 1.0) * std::log(2.0) -
                        kk * std::log(M_PI) - (kk - 1.0) * std::log(dn) +
                        (kk - 0.5) * std::log(absD));
  w.elliptic_prefactor = std::exp(std::lgamma(2.0 * kk - 1.0) - (2.0 * kk - 1.0) * std::log(4.0 * M_PI));
  w.jacobi_prefactor = std::exp((kk - 1.0) * std::log(dn) + std::lgamma(kk - 0.5) -
                                std::log(2.0) - (kk - 0.5) * std::log(M_PI) -
                                (kk - 0.5) * std::log(absD));
  w.identity_rel_err = std::abs(w.elliptic_prefactor / w.jacobi_prefactor - w.constant) / w.constant;
  return w;
}

}  // namespace lfk::jacobi
