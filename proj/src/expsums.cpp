#include "lfk/expsums.hpp"

#include <algorithm>
#include <cassert>
#include <cmath>
#include <numeric>
#include <map>
#include <stdexcept>

namespace lfk::expsums {

using ntheory::checked_mul;
using ntheory::ext_gcd;
using ntheory::inv_mod;
using ntheory::kronecker;
using ntheory::mod_floor;
using ntheory::mul_mod;

namespace {

Complex unit_phase(int64_t num, int64_t den) {
  double t = 2.0 * M_PI * static_cast<double>(mod_floor(num, den)) / static_cast<double>(den);
  return {std::cos(t), std::sin(t)};
}

void require_kd(int64_t N, int64_t n, int64_t D, bool need_coprime) {
  // n need not be a multiple of N: the parametrization is then empty and the
  // sum is 0 (e.g. K_{2,1}(m, -7)).
  if (N < 1 || n < 1) throw std::invalid_argument("expsums: N, n must be positive");
  if (D >= 0) throw std::invalid_argument("expsums: D must be negative");
  int64_t m4 = mod_floor(D, 4);
  if (m4 != 0 && m4 != 1) throw std::invalid_argument("expsums: D must be 0 or 1 mod 4");
  if (need_coprime && std::gcd(-D, N) != 1)
    throw std::invalid_argument("expsums: gcd(D, N) must be 1");
}

}  // namespace

int64_t QuadraticForm::discriminant() const {
  return checked_mul(b, b) - 4 * checked_mul(a, c);
}

std::vector<KTerm> k_terms(int64_t N, int64_t n, int64_t D) {
  require_kd(N, n, D, true);
  int64_t absD = -D;
  std::vector<KTerm> out;
  for (int64_t c : ntheory::divisors(n)) {
    if (c % N != 0) continue;
    int64_t q = n / c;
    for (int64_t ell = 0; ell < absD; ++ell) {
      int64_t num = q - ell * c;
      if (mod_floor(num, absD) != 0) continue;
      int64_t a = num / absD;
      if (std::gcd(a < 0 ? -a : a, c) != 1) continue;
      int64_t abar = (c == 1) ? 0 : inv_mod(mod_floor(a, c), c);
      int64_t b = mod_floor(absD - 2 * q * abar, 2 * n);
      // Shifting abar by c moves the exponent by 2qc = 2n, so b is well
      // defined mod 2n; checked here.
      assert(mod_floor(absD - 2 * q * (abar + c), 2 * n) == b);
      out.push_back(KTerm{c, q, ell, a, abar, b, kronecker(D, ell)});
    }
  }
  return out;
}

Complex k_sum_value(const std::vector<KTerm>& terms, int64_t n, int64_t m) {
  Complex acc{0.0, 0.0};
  for (const auto& t : terms) {
    if (t.sym == 0) continue;
    acc += static_cast<double>(t.sym) * unit_phase(mul_mod(m, t.b, 2 * n), 2 * n);
  }
  return acc;
}

ExpSumValue k_sum(int64_t N, int64_t n, int64_t m, int64_t D) {
  auto terms = k_terms(N, n, D);
  formal::FormalExpSum f(2 * n);
  for (const auto& t : terms)
    if (t.sym != 0) f.add_term(mul_mod(m, t.b, 2 * n), t.sym);
  return {f, k_sum_value(terms, n, m)};
}

ExpSumValue k_sum(int64_t N, int64_t n, int64_t m, const DiscriminantDatum& D) {
  if (D.N != N) throw std::invalid_argument("k_sum: level mismatch");
  return k_sum(N, n, m, D.D);
}

Complex h_sum(int64_t N, int64_t n, int64_t D, int64_t r, int64_t Dp, int64_t rp) {
  if (N < 1 || n < 1) throw std::invalid_argument("h_sum: N, n must be positive");
  if (mod_floor(r * r - D, 4 * N) != 0)
    throw std::invalid_argument("h_sum: r^2 != D (mod 4N)");
  if (mod_floor(rp * rp - Dp, 4 * N) != 0)
    throw std::invalid_argument("h_sum: r'^2 != D' (mod 4N)");
  int64_t nj = (r * r - D) / (4 * N);
  int64_t njp = (rp * rp - Dp) / (4 * N);

  std::vector<Complex> table(static_cast<size_t>(n));
  for (int64_t j = 0; j < n; ++j) table[static_cast<size_t>(j)] = unit_phase(j, n);

  Complex acc{0.0, 0.0};
  for (int64_t rho = (n == 1 ? 0 : 1); rho < std::max<int64_t>(n, 1); ++rho) {
    if (n > 1 && std::gcd(rho, n) != 1) continue;
    int64_t rho_bar = (n == 1) ? 0 : inv_mod(rho, n);
    for (int64_t lam = 0; lam < n; ++lam) {
      int64_t quad = mod_floor(N * lam * lam + r * lam + nj, n);
      int64_t expo = mod_floor(mul_mod(quad, rho_bar, n) + mul_mod(njp, rho, n) +
                                   mul_mod(rp, lam, n),
                               n);
      acc += table[static_cast<size_t>(expo)];
    }
    if (n == 1) break;
  }
  return acc * unit_phase(mod_floor(mul_mod(r, rp, 2 * N * n), 2 * N * n), 2 * N * n) *
         std::pow(static_cast<double>(n), -1.5);
}

namespace detail {

namespace {

// sum_{l mod p^e} e_{p^e}(A l^2 + B l) with gcd(A, p) = 1.
Complex quad_gauss_pp_unit(int64_t p, int e, int64_t A, int64_t B) {
  int64_t pe = 1;
  for (int i = 0; i < e; ++i) pe = checked_mul(pe, p);
  if (p != 2) {
    // e_{pe}(-B^2 (4A)^{-1}) * (A/pe) * eps_{pe} * pe^{1/2}
    int64_t inv4a = inv_mod(mul_mod(4, A, pe), pe);
    int64_t shift = mod_floor(-mul_mod(mul_mod(B, B, pe), inv4a, pe), pe);
    Complex eps = (pe % 4 == 1) ? Complex{1.0, 0.0} : Complex{0.0, 1.0};
    double mag = std::sqrt(static_cast<double>(pe));
    return unit_phase(shift, pe) * static_cast<double>(kronecker(A, pe)) * eps * mag;
  }
  // p = 2, A odd
  if (e == 1) return (mod_floor(B, 2) == 1) ? Complex{2.0, 0.0} : Complex{0.0, 0.0};
  if (mod_floor(B, 2) == 1) return {0.0, 0.0};
  int64_t Bp = B / 2;
  int64_t Abar = inv_mod(A, pe);
  int64_t shift = mod_floor(-mul_mod(mul_mod(Bp, Bp, pe), Abar, pe), pe);
  int two_over_A = (mod_floor(A, 8) == 1 || mod_floor(A, 8) == 7) ? 1 : -1;
  double jac = (e % 2 == 0) ? 1.0 : static_cast<double>(two_over_A);
  Complex epsinv = (mod_floor(A, 4) == 1) ? Complex{1.0, 0.0} : Complex{0.0, -1.0};
  Complex s = Complex{1.0, 1.0} * jac * epsinv * std::sqrt(static_cast<double>(pe));
  return unit_phase(shift, pe) * s;
}

// Prime-power case with arbitrary A.
Complex quad_gauss_pp(int64_t p, int e, int64_t A, int64_t B) {
  int64_t pe = 1;
  for (int i = 0; i < e; ++i) pe = checked_mul(pe, p);
  A = mod_floor(A, pe);
  B = mod_floor(B, pe);
  if (e == 0) return {1.0, 0.0};
  int64_t g = std::gcd(A, pe);
  if (g == pe) {
    // purely linear
    return (B % pe == 0) ? Complex{static_cast<double>(pe), 0.0} : Complex{0.0, 0.0};
  }
  if (g > 1) {
    if (B % g != 0) return {0.0, 0.0};
    int vg = 0;
    int64_t gg = g;
    while (gg > 1) { gg /= p; ++vg; }
    return static_cast<double>(g) * quad_gauss_pp(p, e - vg, A / g, B / g);
  }
  return quad_gauss_pp_unit(p, e, A, B);
}

}  // namespace

Complex quad_gauss_sum(int64_t A, int64_t B, int64_t n) {
  if (n < 1) throw std::invalid_argument("quad_gauss_sum: n must be positive");
  if (n == 1) return {1.0, 0.0};
  A = mod_floor(A, n);
  B = mod_floor(B, n);
  Complex acc{1.0, 0.0};
  for (auto [p, e] : ntheory::factorize(n)) {
    int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe = checked_mul(pe, p);
    int64_t v = n / pe;
    acc *= quad_gauss_pp(p, e, mul_mod(A, v, pe), mod_floor(B, pe));
  }
  return acc;
}

// Factorization- and cofactor-hoisted form for tight loops over (A, B).
struct QuadGaussPlan {
  int64_t n;
  struct Part {
    int64_t p, pe, cof;  // cof = n / pe
    int e;
  };
  std::vector<Part> parts;

  explicit QuadGaussPlan(int64_t n_) : n(n_) {
    for (auto [p, e] : ntheory::factorize(n)) {
      int64_t pe = 1;
      for (int i = 0; i < e; ++i) pe = checked_mul(pe, p);
      parts.push_back({p, pe, n / pe, e});
    }
  }

  Complex eval(int64_t A, int64_t B) const {
    if (n == 1) return {1.0, 0.0};
    Complex acc{1.0, 0.0};
    for (const auto& part : parts) {
      acc *= quad_gauss_pp(part.p, part.e, mul_mod(A, part.cof, part.pe),
                           mod_floor(B, part.pe));
      if (acc == Complex{0.0, 0.0}) return acc;
    }
    return acc;
  }
};

}  // namespace detail

Complex h_sum_fast(int64_t N, int64_t n, int64_t D, int64_t r, int64_t Dp, int64_t rp) {
  if (N < 1 || n < 1) throw std::invalid_argument("h_sum: N, n must be positive");
  if (mod_floor(r * r - D, 4 * N) != 0)
    throw std::invalid_argument("h_sum: r^2 != D (mod 4N)");
  if (mod_floor(rp * rp - Dp, 4 * N) != 0)
    throw std::invalid_argument("h_sum: r'^2 != D' (mod 4N)");
  if (n == 1) return unit_phase(mod_floor(mul_mod(r, rp, 2 * N), 2 * N), 2 * N);
  int64_t nj = (r * r - D) / (4 * N);
  int64_t njp = (rp * rp - Dp) / (4 * N);

  std::vector<Complex> table(static_cast<size_t>(n));
  for (int64_t j = 0; j < n; ++j) table[static_cast<size_t>(j)] = unit_phase(j, n);
  detail::QuadGaussPlan plan(n);

  Complex acc{0.0, 0.0};
  for (int64_t rho = 1; rho < n; ++rho) {
    if (std::gcd(rho, n) != 1) continue;
    int64_t rho_bar = inv_mod(rho, n);
    // inner lambda sum: A = rho_bar*N, B = rho_bar*r + rp
    Complex inner = plan.eval(mul_mod(rho_bar, N, n),
                              mod_floor(mul_mod(rho_bar, r, n) + rp, n));
    int64_t lin = mod_floor(mul_mod(nj, rho_bar, n) + mul_mod(njp, rho, n), n);
    acc += table[static_cast<size_t>(lin)] * inner;
  }
  return acc * unit_phase(mod_floor(mul_mod(r, rp, 2 * N * n), 2 * N * n), 2 * N * n) *
         std::pow(static_cast<double>(n), -1.5);
}

int genus_char(int64_t D, const QuadraticForm& q) {
  if (D >= 0) throw std::invalid_argument("genus_char: D must be negative");
  if (q.discriminant() != checked_mul(D, D))
    throw std::invalid_argument("genus_char: form discriminant must be D^2");
  int64_t absD = -D;
  for (int64_t x = 0; x < absD; ++x) {
    for (int64_t y = 0; y < absD; ++y) {
      if (std::gcd(x, y) != 1) continue;
      int64_t v = checked_mul(q.a, x * x) + checked_mul(q.b, x * y) + checked_mul(q.c, y * y);
      if (v == 0) continue;
      if (std::gcd(v < 0 ? -v : v, absD) != 1) continue;
      return kronecker(D, v);
    }
  }
  return 0;
}

std::optional<int> genus_char_checked(int64_t D, const QuadraticForm& q, int box_scale) {
  if (D >= 0) throw std::invalid_argument("genus_char: D must be negative");
  int64_t absD = -D;
  int64_t bound = absD * box_scale;
  std::optional<int> seen;
  for (int64_t x = 0; x < bound; ++x) {
    for (int64_t y = 0; y < bound; ++y) {
      if (std::gcd(x, y) != 1) continue;
      int64_t v = checked_mul(q.a, x * x) + checked_mul(q.b, x * y) + checked_mul(q.c, y * y);
      if (v == 0) continue;
      if (std::gcd(v < 0 ? -v : v, absD) != 1) continue;
      int s = kronecker(D, v);
      if (!seen) seen = s;
      else if (*seen != s) return std::nullopt;
    }
  }
  return seen ? seen : std::optional<int>(0);
}

std::vector<STerm> s_terms(int64_t N, int64_t n, int64_t D) {
  require_kd(N, n, D, false);
  int64_t D2 = checked_mul(D, D);
  std::vector<STerm> out;
  for (int64_t b = 0; b < 2 * n; ++b) {
    if (mod_floor(checked_mul(b, b) - D2, 4 * n) != 0) continue;
    if (mod_floor(b - D, 2 * N) != 0) continue;
    int64_t cq = (checked_mul(b, b) - D2) / (4 * n);
    out.push_back(STerm{b, genus_char(D, QuadraticForm{n, b, cq})});
  }
  return out;
}

Complex s_sum_value(const std::vector<STerm>& terms, int64_t n, int64_t m) {
  Complex acc{0.0, 0.0};
  for (const auto& t : terms) {
    if (t.chi == 0) continue;
    acc += static_cast<double>(t.chi) * unit_phase(mul_mod(t.b, m, 2 * n), 2 * n);
  }
  return acc;
}

ExpSumValue s_sum(int64_t N, int64_t n, int64_t m, int64_t D) {
  auto terms = s_terms(N, n, D);
  formal::FormalExpSum f(2 * n);
  for (const auto& t : terms)
    if (t.chi != 0) f.add_term(mul_mod(t.b, m, 2 * n), t.chi);
  return {f, s_sum_value(terms, n, m)};
}

ExpSumValue s_sum(int64_t N, int64_t n, int64_t m, const DiscriminantDatum& D) {
  if (D.N != N) throw std::invalid_argument("s_sum: level mismatch");
  return s_sum(N, n, m, D.D);
}

Complex plus_minus_combine(Complex a_m, Complex a_neg_m, int64_t k) {
  double sign = (mod_floor(k + 1, 2) == 0) ? 1.0 : -1.0;
  return a_m + sign * a_neg_m;
}

std::vector<int64_t> representatives(int64_t N, int64_t n, int64_t D) {
  std::vector<int64_t> out;
  for (const auto& t : k_terms(N, n, D)) out.push_back(t.b);
  return out;
}

std::vector<int64_t> representatives(int64_t N, int64_t n, const DiscriminantDatum& D) {
  if (D.N != N) throw std::invalid_argument("representatives: level mismatch");
  return representatives(N, n, D.D);
}

SkReport verify_s_equals_k(int64_t N, int64_t n, int64_t m, int64_t D) {
  auto kt = k_terms(N, n, D);
  auto st = s_terms(N, n, D);

  formal::FormalExpSum fk(2 * n), fs(2 * n);
  for (const auto& t : kt)
    if (t.sym != 0) fk.add_term(mul_mod(m, t.b, 2 * n), t.sym);
  for (const auto& t : st)
    if (t.chi != 0) fs.add_term(mul_mod(t.b, m, 2 * n), t.chi);

  SkReport rep;
  rep.term_count = static_cast<int64_t>(kt.size());
  rep.k_value = k_sum_value(kt, n, m);
  rep.s_value = s_sum_value(st, n, m);
  rep.numeric_diff = std::abs(rep.k_value - rep.s_value);
  rep.exact_equal = formal::equal_exact(fk, fs);

  // Termwise correspondence: each K term's b is an S term with matching
  // symbol, and the parametrization hits each admissible b exactly once.
  std::map<int64_t, int> s_by_b;
  for (const auto& t : st) s_by_b[t.b] = t.chi;
  std::map<int64_t, int64_t> k_count;
  bool termwise = true;
  for (const auto& t : kt) {
    auto it = s_by_b.find(t.b);
    if (it == s_by_b.end() || it->second != t.sym) termwise = false;
    k_count[t.b] += 1;
  }
  bool reps_ok = k_count.size() == st.size() && kt.size() == st.size();
  for (const auto& [b, cnt] : k_count)
    if (cnt != 1 || !s_by_b.count(b)) reps_ok = false;
  rep.termwise_ok = termwise;
  rep.representatives_ok = reps_ok;
  return rep;
}

SkReport verify_s_equals_k(int64_t N, int64_t n, int64_t m, const DiscriminantDatum& D) {
  if (D.N != N) throw std::invalid_argument("verify_s_equals_k: level mismatch");
  return verify_s_equals_k(N, n, m, D.D);
}

GkzReport verify_gkz_lemma(int64_t N, int64_t nJ, int64_t m, int64_t r) {
  if (N < 1 || nJ < 1 || m < 1)
    throw std::invalid_argument("verify_gkz_lemma: N, nJ, m must be positive");
  int64_t D = r * r - 4 * N * nJ;
  if (D >= 0) throw std::invalid_argument("verify_gkz_lemma: r^2 - 4*N*nJ must be negative");

  GkzReport rep;
  rep.D = D;
  rep.lhs = s_sum(N, N * nJ, m, D).value;
  rep.rhs = {0.0, 0.0};
  int64_t g = std::gcd(m, nJ);
  for (int64_t d : ntheory::divisors(g)) {
    int64_t md = m / d;
    Complex h = h_sum(N, nJ / d, D, r, checked_mul(md * md, D), md * r);
    rep.rhs += static_cast<double>(kronecker(D, d)) *
               std::sqrt(static_cast<double>(nJ / d)) * h;
  }
  rep.abs_diff = std::abs(rep.lhs - rep.rhs);
  return rep;
}

}  // namespace lfk::expsums
