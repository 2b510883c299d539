#include "lfk/ntheory.hpp"

#include <algorithm>
#include <cmath>
#include <numeric>

namespace lfk::ntheory {

int64_t checked_add(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_add_overflow(a, b, &r)) throw std::overflow_error("int64 add overflow");
  return r;
}

int64_t checked_mul(int64_t a, int64_t b) {
  int64_t r;
  if (__builtin_mul_overflow(a, b, &r)) throw std::overflow_error("int64 mul overflow");
  return r;
}

int64_t gcd(int64_t a, int64_t b) { return std::gcd(a, b); }

int64_t lcm(int64_t a, int64_t b) {
  if (a == 0 || b == 0) return 0;
  return checked_mul(a / gcd(a, b), b < 0 ? -b : b);
}

ExtGcd ext_gcd(int64_t a, int64_t b) {
  int64_t old_r = a, r = b;
  int64_t old_s = 1, s = 0;
  int64_t old_t = 0, t = 1;
  while (r != 0) {
    int64_t q = old_r / r;
    int64_t tmp;
    tmp = old_r - q * r; old_r = r; r = tmp;
    tmp = old_s - q * s; old_s = s; s = tmp;
    tmp = old_t - q * t; old_t = t; t = tmp;
  }
  if (old_r < 0) { old_r = -old_r; old_s = -old_s; old_t = -old_t; }
  return {old_r, old_s, old_t};
}

int64_t inv_mod(int64_t a, int64_t m) {
  if (m < 1) throw std::invalid_argument("inv_mod: modulus must be positive");
  if (m == 1) return 0;
  auto [g, x, y] = ext_gcd(mod_floor(a, m), m);
  if (g != 1) throw std::invalid_argument("inv_mod: not invertible");
  return mod_floor(x, m);
}

int64_t mod_floor(int64_t a, int64_t m) {
  if (m < 1) throw std::invalid_argument("mod_floor: modulus must be positive");
  int64_t r = a % m;
  return r < 0 ? r + m : r;
}

int64_t mul_mod(int64_t a, int64_t b, int64_t m) {
  using I128 = __int128;
  I128 p = static_cast<I128>(mod_floor(a, m)) * static_cast<I128>(mod_floor(b, m));
  return static_cast<int64_t>(p % m);
}

std::vector<int64_t> divisors(int64_t n) {
  if (n < 1) throw std::invalid_argument("divisors: n must be positive");
  std::vector<int64_t> small, big;
  for (int64_t d = 1; d * d <= n; ++d) {
    if (n % d == 0) {
      small.push_back(d);
      if (d != n / d) big.push_back(n / d);
    }
  }
  small.insert(small.end(), big.rbegin(), big.rend());
  return small;
}

std::vector<std::pair<int64_t, int>> factorize(int64_t n) {
  if (n < 1) throw std::invalid_argument("factorize: n must be positive");
  std::vector<std::pair<int64_t, int>> fac;
  for (int64_t p = 2; p * p <= n; p += (p == 2 ? 1 : 2)) {
    if (n % p == 0) {
      int e = 0;
      while (n % p == 0) { n /= p; ++e; }
      fac.emplace_back(p, e);
    }
  }
  if (n > 1) fac.emplace_back(n, 1);
  return fac;
}

int64_t euler_phi(int64_t n) {
  int64_t phi = 1;
  for (auto [p, e] : factorize(n)) {
    int64_t pe = 1;
    for (int i = 1; i < e; ++i) pe = checked_mul(pe, p);
    phi = checked_mul(phi, pe * (p - 1));
  }
  return phi;
}

bool is_squarefree(int64_t n) {
  if (n < 0) n = -n;
  if (n == 0) return false;
  for (auto [p, e] : factorize(n))
    if (e > 1) return false;
  return true;
}

int kronecker(int64_t D, int64_t m) {
  int64_t a = D, n = m;
  // (a/0) and (a/-1) per the standard extension.
  if (n == 0) return (a == 1 || a == -1) ? 1 : 0;
  int sign = 1;
  if (n < 0) {
    n = -n;
    if (a < 0) sign = -sign;
  }
  // (a/2) factor: 0 for even a, else by a mod 8.
  int result = sign;
  while (n % 2 == 0) {
    n /= 2;
    if (a % 2 == 0) return 0;
    int64_t am8 = mod_floor(a, 8);
    if (am8 == 3 || am8 == 5) result = -result;
  }
  a = mod_floor(a, n);
  // Jacobi symbol (a/n) for odd n >= 1 by quadratic reciprocity.
  while (a != 0) {
    while (a % 2 == 0) {
      a /= 2;
      int64_t nm8 = n % 8;
      if (nm8 == 3 || nm8 == 5) result = -result;
    }
    std::swap(a, n);
    if (a % 4 == 3 && n % 4 == 3) result = -result;
    a %= n;
  }
  return n == 1 ? result : 0;
}

bool is_fundamental(int64_t D) {
  if (D == 0 || D == 1) return false;
  int64_t m4 = mod_floor(D, 4);
  if (m4 == 1) return is_squarefree(D);
  if (m4 == 0) {
    int64_t m = D / 4;
    int64_t mm4 = mod_floor(m, 4);
    return (mm4 == 2 || mm4 == 3) && is_squarefree(m);
  }
  return false;
}

Unity Unity::make(int64_t num, int64_t den) {
  if (den < 1) throw std::invalid_argument("Unity: den must be positive");
  num = mod_floor(num, den);
  int64_t g = std::gcd(num, den);
  return Unity{num / g, den / g};
}

Unity Unity::operator*(const Unity& o) const {
  if (is_zero() || o.is_zero()) return zero();
  int64_t d = lcm(den, o.den);
  return make(checked_add(checked_mul(num, d / den), checked_mul(o.num, d / o.den)), d);
}

Unity Unity::conj() const {
  if (is_zero()) return zero();
  return make(den - num, den);
}

Unity Unity::pow(int64_t e) const {
  if (is_zero()) return zero();
  return make(checked_mul(num, mod_floor(e, den)), den);
}

std::complex<double> Unity::value() const {
  if (is_zero()) return {0.0, 0.0};
  double t = 2.0 * M_PI * static_cast<double>(num) / static_cast<double>(den);
  return {std::cos(t), std::sin(t)};
}

namespace {

// Smallest generator of (Z/p^e)^* for odd prime p.
int64_t primitive_root(int64_t p, int e) {
  int64_t pe = 1;
  for (int i = 0; i < e; ++i) pe = checked_mul(pe, p);
  int64_t phi = pe / p * (p - 1);
  auto prime_divs = factorize(phi);
  for (int64_t g = 2; g < pe; ++g) {
    if (g % p == 0) continue;
    bool ok = true;
    for (auto [q, _] : prime_divs) {
      // g^(phi/q) mod pe
      int64_t ex = phi / q, base = g % pe, acc = 1;
      while (ex > 0) {
        if (ex & 1) acc = mul_mod(acc, base, pe);
        base = mul_mod(base, base, pe);
        ex >>= 1;
      }
      if (acc == 1) { ok = false; break; }
    }
    if (ok) return g;
  }
  throw std::logic_error("primitive_root: none found");
}

int64_t pow_mod(int64_t b, int64_t e, int64_t m) {
  int64_t acc = 1;
  b = mod_floor(b, m);
  while (e > 0) {
    if (e & 1) acc = mul_mod(acc, b, m);
    b = mul_mod(b, b, m);
    e >>= 1;
  }
  return acc;
}

// One cyclic factor of (Z/h)^*: generator g (mod h) of order ord.
struct CyclicFactor {
  int64_t gen;
  int64_t ord;
};

// Decomposition of (Z/h)^* into cyclic factors with generators lifted mod h.
// Order: for 2^e with e >= 3 the factors <-1>, <5>; for e == 2 the factor
// <-1>; then odd prime powers in ascending order of p.
std::vector<CyclicFactor> unit_group(int64_t h) {
  std::vector<CyclicFactor> out;
  auto fac = factorize(h);
  std::sort(fac.begin(), fac.end());
  for (auto [p, e] : fac) {
    int64_t pe = 1;
    for (int i = 0; i < e; ++i) pe = checked_mul(pe, p);
    int64_t rest = h / pe;
    // CRT lift: x = g mod pe, x = 1 mod rest.
    auto lift = [&](int64_t g) {
      if (rest == 1) return mod_floor(g, h);
      int64_t inv = inv_mod(rest % pe, pe);
      // 1 + rest * ((g-1) * inv mod pe)
      int64_t t = mul_mod(checked_add(mod_floor(g - 1, pe), 0), inv, pe);
      return mod_floor(checked_add(1, checked_mul(rest, t)), h);
    };
    if (p == 2) {
      if (e == 1) continue;
      out.push_back({lift(pe - 1), 2});  // -1 mod 2^e
      if (e >= 3) out.push_back({lift(5), pe / 4});
    } else {
      out.push_back({lift(primitive_root(p, e)), pe / p * (p - 1)});
    }
  }
  return out;
}

}  // namespace

DirichletCharacter::DirichletCharacter(int64_t modulus, std::vector<Unity> values)
    : modulus_(modulus), values_(std::move(values)) {
  // conductor: smallest f | h with chi trivial on units = 1 (mod f).
  conductor_ = modulus_;
  for (int64_t f : divisors(modulus_)) {
    bool ok = true;
    for (int64_t n = 1; n < modulus_ && ok; ++n) {
      if (std::gcd(n, modulus_) != 1) continue;
      if (mod_floor(n - 1, f) == 0 && !(values_[n] == Unity::one())) ok = false;
    }
    if (ok) { conductor_ = f; break; }
  }
  const Unity& at_minus1 = values_[static_cast<size_t>(mod_floor(-1, modulus_))];
  if (at_minus1 == Unity::one()) parity_ = 1;
  else if (at_minus1 == Unity::make(1, 2)) parity_ = -1;
  else throw std::logic_error("character value at -1 must be +-1");
}

DirichletCharacter DirichletCharacter::trivial(int64_t modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  std::vector<Unity> vals(static_cast<size_t>(modulus), Unity::zero());
  for (int64_t n = 0; n < modulus; ++n)
    if (std::gcd(n, modulus) == 1 || modulus == 1) vals[static_cast<size_t>(n)] = Unity::one();
  return DirichletCharacter(modulus, std::move(vals));
}

std::vector<DirichletCharacter> DirichletCharacter::all_characters(int64_t modulus) {
  if (modulus < 1) throw std::invalid_argument("modulus must be positive");
  if (modulus == 1) return {trivial(1)};
  auto gens = unit_group(modulus);
  size_t k = gens.size();

  // Precompute dlog table for every unit by walking the group once.
  std::vector<std::vector<int64_t>> dlog(static_cast<size_t>(modulus));
  {
    std::vector<int64_t> x(k, 0);
    int64_t total = 1;
    for (auto& g : gens) total = checked_mul(total, g.ord);
    for (int64_t step = 0; step < total; ++step) {
      int64_t val = 1;
      for (size_t j = 0; j < k; ++j) val = mul_mod(val, pow_mod(gens[j].gen, x[j], modulus), modulus);
      dlog[static_cast<size_t>(val)] = x;
      for (size_t i = k; i-- > 0;) {
        if (++x[i] < gens[i].ord) break;
        x[i] = 0;
      }
    }
  }

  // Enumerate character exponent tuples t lexicographically (first factor
  // slowest), matching the documented canonical order.
  std::vector<DirichletCharacter> out;
  std::vector<int64_t> t(k, 0);
  int64_t count = euler_phi(modulus);
  for (int64_t idx = 0; idx < count; ++idx) {
    std::vector<Unity> vals(static_cast<size_t>(modulus), Unity::zero());
    for (int64_t n = 0; n < modulus; ++n) {
      if (std::gcd(n, modulus) != 1) continue;
      const auto& x = dlog[static_cast<size_t>(n)];
      Unity v = Unity::one();
      for (size_t j = 0; j < k; ++j)
        v = v * Unity::make(checked_mul(t[j], x[j]), gens[j].ord);
      vals[static_cast<size_t>(n)] = v;
    }
    out.emplace_back(DirichletCharacter(modulus, std::move(vals)));
    for (size_t i = k; i-- > 0;) {
      if (++t[i] < gens[i].ord) break;
      t[i] = 0;
    }
  }
  return out;
}

DirichletCharacter DirichletCharacter::kronecker_character(int64_t D) {
  if (D >= 0 || !is_fundamental(D))
    throw std::invalid_argument("kronecker_character: D must be a negative fundamental discriminant");
  int64_t h = -D;
  std::vector<Unity> vals(static_cast<size_t>(h), Unity::zero());
  for (int64_t n = 0; n < h; ++n) {
    int s = kronecker(D, n);
    if (s == 1) vals[static_cast<size_t>(n)] = Unity::one();
    else if (s == -1) vals[static_cast<size_t>(n)] = Unity::make(1, 2);
  }
  return DirichletCharacter(h, std::move(vals));
}

DirichletCharacter DirichletCharacter::conj() const {
  std::vector<Unity> vals(values_.size());
  for (size_t i = 0; i < values_.size(); ++i) vals[i] = values_[i].conj();
  return DirichletCharacter(modulus_, std::move(vals));
}

int64_t DirichletCharacter::order() const {
  int64_t ord = 1;
  for (const auto& v : values_)
    if (!v.is_zero()) ord = lcm(ord, v.den);
  return ord;
}

std::complex<double> DirichletCharacter::gauss_sum() const {
  std::complex<double> g{0.0, 0.0};
  for (int64_t l = 0; l < modulus_; ++l) {
    const Unity& v = values_[static_cast<size_t>(l)];
    if (v.is_zero()) continue;
    double t = 2.0 * M_PI * static_cast<double>(l) / static_cast<double>(modulus_);
    g += v.value() * std::complex<double>{std::cos(t), std::sin(t)};
  }
  return g;
}

DiscriminantDatum::DiscriminantDatum(int64_t D_, int64_t N_, int64_t r_) : D(D_), N(N_), r(r_) {
  if (D >= 0 || !is_fundamental(D))
    throw std::invalid_argument("DiscriminantDatum: D must be a negative fundamental discriminant");
  if (N < 1) throw std::invalid_argument("DiscriminantDatum: N must be positive");
  if (std::gcd(D < 0 ? -D : D, N) != 1)
    throw std::invalid_argument("DiscriminantDatum: gcd(D, N) must be 1");
  if (mod_floor(r * r - D, 4 * N) != 0)
    throw std::invalid_argument("DiscriminantDatum: r^2 != D (mod 4N)");
}

}  // namespace lfk::ntheory
