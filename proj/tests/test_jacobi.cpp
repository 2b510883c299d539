#include <doctest.h>

#include <cmath>

#include "lfk/jacobi.hpp"

using namespace lfk;
using namespace lfk::jacobi;
using ntheory::DiscriminantDatum;
using C = Complex;

namespace {
kernel::TruncationConfig cfg(double tol, int64_t cap) {
  kernel::TruncationConfig t;
  t.rel_tol = tol;
  t.n_cap = cap;
  return t;
}
}  // namespace

TEST_CASE("g coefficient delta term") {
  auto t = cfg(1e-6, 1024);
  DiscriminantDatum base(-7, 2, 1);
  // target = base: delta contribution exactly 1 before the series
  auto with_delta = g_coeff(3, 2, base, {-7, 1}, cfg(1e-6, 0));
  CHECK(std::abs(with_delta.value - C{1, 0}) < 1e-15);
  // target = (D, -r) with N not dividing r: delta contribution 0
  auto no_delta = g_coeff(3, 2, base, {-7, -1}, cfg(1e-6, 0));
  CHECK(std::abs(no_delta.value) < 1e-15);
  (void)t;
}

TEST_CASE("g^pm combination is the termwise sum of the two series") {
  auto t = cfg(1e-4, 4096);
  DiscriminantDatum base(-3, 1, 1);
  JacobiIndexPair target{-12, 2};
  auto gp = g_coeff(3, 1, base, target, t);
  auto gm = g_coeff(3, 1, base, {target.Dp, -target.rp}, t);
  auto pm = g_coeff_pm(3, 1, base, target, t);
  CHECK(std::abs(pm.value - (gp.value + gm.value)) < 1e-10);  // k = 3 odd: plus
  auto pm4 = g_coeff_pm(4, 1, base, target, t);
  auto gp4 = g_coeff(4, 1, base, target, t);
  auto gm4 = g_coeff(4, 1, base, {target.Dp, -target.rp}, t);
  CHECK(std::abs(pm4.value - (gp4.value - gm4.value)) < 1e-10);
}

TEST_CASE("lift via g with m = 1 collapses to g^pm at the base") {
  auto t = cfg(1e-6, 2048);
  DiscriminantDatum base(-3, 1, 1);
  auto lift = lift_coeff_via_g(3, 1, base, 1, t);
  auto gpm = g_coeff_pm(3, 1, base, {-3, 1}, t);
  CHECK(std::abs(lift.value - gpm.value) <=
        lift.error_estimate + gpm.error_estimate + 1e-10);
}

TEST_CASE("lift via g: Kronecker zero kills the d = p term") {
  // m = p prime with (D/p) = 0: only the d = 1 term contributes beyond delta
  auto t = cfg(1e-5, 2048);
  DiscriminantDatum base(-3, 1, 1);
  auto lift = lift_coeff_via_g(3, 1, base, 3, t);   // (D/3) = 0
  // closed route agrees (matched truncation)
  auto closed = lift_coeff_closed(3, 1, base, 3, t);
  CHECK(std::abs(lift.value - closed.value) < 1e-8);
}

TEST_CASE("lift closed equals kernel critical coefficient (PoincareIdentity)") {
  auto t = cfg(1e-5, 4096);
  DiscriminantDatum base(-3, 1, 1);
  for (int64_t m = 1; m <= 4; ++m) {
    auto closed = lift_coeff_closed(3, 1, base, m, t);
    auto crit = kernel::kernel_coeff_critical(6, 1, m, base, t);
    CAPTURE(m);
    CHECK(std::abs(closed.value - crit.value) <= 1e-8);
  }
}

TEST_CASE("r-independence of the lift (inequivalent residues mod 2N)") {
  // N = 6, D = -23: r = 1 and r = 5 satisfy r^2 = D (mod 24) and are not
  // congruent to each other or to each other's negatives mod 12.
  auto t = cfg(1e-4, 6 * 4096);
  DiscriminantDatum b1(-23, 6, 1), b5(-23, 6, 5);
  for (int64_t m = 1; m <= 2; ++m) {
    auto l1 = lift_coeff_via_g(3, 6, b1, m, t);
    auto l5 = lift_coeff_via_g(3, 6, b5, m, t);
    CAPTURE(m);
    CHECK(std::abs(l1.value - l5.value) < 1e-10 * std::max(1.0, std::abs(l1.value)));
  }
}

TEST_CASE("g depends on r' only mod 2N") {
  auto t = cfg(1e-4, 2048);
  DiscriminantDatum base(-3, 1, 1);
  JacobiIndexPair t1{-12, 2}, t2{-12, 4};  // 4 = 2 + 2N at N = 1
  auto g1 = g_coeff(3, 1, base, t1, t);
  auto g2 = g_coeff(3, 1, base, t2, t);
  CHECK(std::abs(g1.value - g2.value) <= g1.error_estimate + g2.error_estimate + 1e-9);
}

TEST_CASE("waldspurger constant") {
  auto w = waldspurger_constant(2, 1, -3);
  double want = 1.0 * std::pow(3.0, 1.5) / (8.0 * M_PI * M_PI);
  CHECK(std::abs(w.constant - want) < 1e-12 * want);
  CHECK(w.identity_rel_err < 1e-12);
  for (int64_t k = 2; k <= 10; ++k) {
    auto wk = waldspurger_constant(k, 2, -7);
    CAPTURE(k);
    CHECK(wk.identity_rel_err < 1e-11);
    // N-scaling: constant(k, 2N) / constant(k, N) = 2^{1-k}
    auto w1 = waldspurger_constant(k, 3, -7);
    auto w2 = waldspurger_constant(k, 6, -7);
    CHECK(std::abs(w2.constant / w1.constant - std::pow(2.0, 1.0 - k)) < 1e-12);
  }
}
