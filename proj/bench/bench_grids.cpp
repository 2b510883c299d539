// Timing comparison of the serial and OpenMP grid drivers on the two
// heaviest workloads: the exact S = K verification grid and the
// kernel-vs-lift coefficient comparison.

#include <cstdio>
#include <vector>

#ifdef _OPENMP
#include <omp.h>
#endif

#include "lfk/expsums.hpp"
#include "lfk/jacobi.hpp"
#include "lfk/kernel.hpp"
#include "lfk/parallel.hpp"

using namespace lfk;

namespace {

double now() {
#ifdef _OPENMP
  return omp_get_wtime();
#else
  return 0.0;
#endif
}

struct SkInstance {
  int64_t N, n, m, D;
};

std::vector<SkInstance> sk_grid() {
  std::vector<SkInstance> g;
  const int64_t Ds[] = {-3, -4, -7, -8, -11, -15, -20};
  for (int64_t N = 1; N <= 6; ++N)
    for (int64_t D : Ds) {
      if (std::gcd(-D, N) != 1) continue;
      for (int64_t j = 1; j <= 40; ++j)
        for (int64_t m = 1; m <= 10; ++m) g.push_back({N, j * N, m, D});
    }
  return g;
}

int run_sk(const std::vector<SkInstance>& grid, bool parallel) {
  std::vector<char> ok(grid.size(), 0);
  int64_t count = static_cast<int64_t>(grid.size());
#pragma omp parallel for schedule(dynamic, 8) if (parallel)
  for (int64_t i = 0; i < count; ++i) {
    const auto& t = grid[static_cast<size_t>(i)];
    auto r = expsums::verify_s_equals_k(t.N, t.n, t.m, t.D);
    ok[static_cast<size_t>(i)] = r.exact_equal ? 1 : 0;
  }
  int fails = 0;
  for (char c : ok)
    if (!c) ++fails;
  return fails;
}

double run_lift(bool parallel) {
  kernel::TruncationConfig trunc;
  trunc.rel_tol = 1e-8;
  trunc.n_cap = 1024;
  ntheory::DiscriminantDatum dd(-7, 2, 1);
  double acc = 0.0;
  lfk::set_parallel(parallel);
  for (int64_t m = 1; m <= 4; ++m) {
    auto a = kernel::kernel_coeff_critical(6, 2, m, dd, trunc);
    auto b = jacobi::lift_coeff_closed(3, 2, dd, m, trunc);
    auto c = jacobi::lift_coeff_via_g(3, 2, dd, m, trunc);
    acc += std::abs(a.value) + std::abs(b.value) + std::abs(c.value);
  }
  return acc;
}

}  // namespace

int main() {
#ifdef _OPENMP
  std::printf("threads: %d\n", omp_get_max_threads());
#else
  std::printf("built without OpenMP\n");
#endif

  auto grid = sk_grid();
  std::printf("S=K grid: %zu instances\n", grid.size());

  double t0 = now();
  int f1 = run_sk(grid, false);
  double t1 = now();
  int f2 = run_sk(grid, true);
  double t2 = now();
  std::printf("  serial:   %8.2f ms  (%d failures)\n", 1e3 * (t1 - t0), f1);
  std::printf("  parallel: %8.2f ms  (%d failures)\n", 1e3 * (t2 - t1), f2);
  if (t2 > t1 && t1 > t0)
    std::printf("  speedup:  %.2fx\n", (t1 - t0) / (t2 - t1));

  std::printf("kernel/lift comparison (2k=6, N=2, D=-7, m<=4)\n");
  t0 = now();
  double a1 = run_lift(false);
  t1 = now();
  double a2 = run_lift(true);
  t2 = now();
  std::printf("  serial:   %8.2f ms  (checksum %.6f)\n", 1e3 * (t1 - t0), a1);
  std::printf("  parallel: %8.2f ms  (checksum %.6f)\n", 1e3 * (t2 - t1), a2);
  lfk::set_parallel(true);
  return 0;
}
