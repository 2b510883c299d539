#include "lfk/formal.hpp"

#include <cmath>
#include <map>
#include <mutex>
#include <stdexcept>

namespace lfk::formal {

using ntheory::checked_add;
using ntheory::checked_mul;
using ntheory::mod_floor;

FormalExpSum::FormalExpSum(int64_t modulus) : modulus_(modulus) {
  if (modulus < 1) throw std::invalid_argument("FormalExpSum: modulus must be positive");
  if (modulus > kMaxModulus) throw std::invalid_argument("FormalExpSum: modulus too large");
  coeffs_.assign(static_cast<size_t>(modulus), 0);
}

FormalExpSum FormalExpSum::exp_term(int64_t modulus, int64_t j, int64_t c) {
  FormalExpSum s(modulus);
  s.add_term(j, c);
  return s;
}

void FormalExpSum::add_term(int64_t j, int64_t c) {
  size_t idx = static_cast<size_t>(mod_floor(j, modulus_));
  coeffs_[idx] = checked_add(coeffs_[idx], c);
}

FormalExpSum FormalExpSum::operator+(const FormalExpSum& o) const {
  if (modulus_ != o.modulus_) throw std::invalid_argument("FormalExpSum: modulus mismatch");
  FormalExpSum r(modulus_);
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = checked_add(coeffs_[i], o.coeffs_[i]);
  return r;
}

FormalExpSum FormalExpSum::operator-(const FormalExpSum& o) const { return *this + (-o); }

FormalExpSum FormalExpSum::operator-() const {
  FormalExpSum r(modulus_);
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = -coeffs_[i];
  return r;
}

FormalExpSum FormalExpSum::scale(int64_t c) const {
  FormalExpSum r(modulus_);
  for (size_t i = 0; i < coeffs_.size(); ++i) r.coeffs_[i] = checked_mul(coeffs_[i], c);
  return r;
}

FormalExpSum FormalExpSum::rotate(int64_t j0) const {
  FormalExpSum r(modulus_);
  int64_t shift = mod_floor(j0, modulus_);
  for (int64_t i = 0; i < modulus_; ++i)
    r.coeffs_[static_cast<size_t>((i + shift) % modulus_)] = coeffs_[static_cast<size_t>(i)];
  return r;
}

FormalExpSum FormalExpSum::conj() const {
  FormalExpSum r(modulus_);
  for (int64_t i = 0; i < modulus_; ++i)
    r.coeffs_[static_cast<size_t>(mod_floor(-i, modulus_))] = coeffs_[static_cast<size_t>(i)];
  return r;
}

FormalExpSum FormalExpSum::operator*(const FormalExpSum& o) const {
  if (modulus_ != o.modulus_) throw std::invalid_argument("FormalExpSum: modulus mismatch");
  FormalExpSum r(modulus_);
  for (int64_t i = 0; i < modulus_; ++i) {
    if (coeffs_[static_cast<size_t>(i)] == 0) continue;
    for (int64_t j = 0; j < modulus_; ++j) {
      if (o.coeffs_[static_cast<size_t>(j)] == 0) continue;
      size_t k = static_cast<size_t>((i + j) % modulus_);
      r.coeffs_[k] = checked_add(
          r.coeffs_[k], checked_mul(coeffs_[static_cast<size_t>(i)], o.coeffs_[static_cast<size_t>(j)]));
    }
  }
  return r;
}

FormalExpSum FormalExpSum::rescale_modulus(int64_t new_modulus) const {
  if (new_modulus % modulus_ != 0)
    throw std::invalid_argument("rescale_modulus: old modulus must divide new one");
  FormalExpSum r(new_modulus);
  int64_t f = new_modulus / modulus_;
  for (int64_t i = 0; i < modulus_; ++i)
    r.coeffs_[static_cast<size_t>(i * f)] = coeffs_[static_cast<size_t>(i)];
  return r;
}

std::complex<double> FormalExpSum::eval() const {
  std::complex<double> acc{0.0, 0.0};
  for (int64_t i = 0; i < modulus_; ++i) {
    int64_t c = coeffs_[static_cast<size_t>(i)];
    if (c == 0) continue;
    double t = 2.0 * M_PI * static_cast<double>(i) / static_cast<double>(modulus_);
    acc += static_cast<double>(c) * std::complex<double>{std::cos(t), std::sin(t)};
  }
  return acc;
}

namespace {

// x^m - 1 divided exactly by poly (monic), both with integer coefficients.
std::vector<int64_t> divide_xm1(int64_t m, const std::vector<int64_t>& poly) {
  std::vector<int64_t> num(static_cast<size_t>(m + 1), 0);
  num[0] = -1;
  num[static_cast<size_t>(m)] = 1;
  size_t dd = poly.size() - 1;
  std::vector<int64_t> quot(static_cast<size_t>(m + 1) - dd, 0);
  for (size_t i = num.size(); i-- > dd;) {
    int64_t c = num[i];
    if (c == 0) continue;
    quot[i - dd] = c;
    for (size_t j = 0; j <= dd; ++j)
      num[i - dd + j] = num[i - dd + j] - checked_mul(c, poly[j]);
  }
  for (size_t i = 0; i < dd; ++i)
    if (num[i] != 0) throw std::logic_error("cyclotomic division not exact");
  return quot;
}

std::map<int64_t, std::vector<int64_t>> g_cyclo_cache;
std::mutex g_cyclo_mutex;

}  // namespace

std::vector<int64_t> cyclotomic_polynomial(int64_t m) {
  if (m < 1) throw std::invalid_argument("cyclotomic_polynomial: m must be positive");
  {
    std::lock_guard<std::mutex> lock(g_cyclo_mutex);
    auto it = g_cyclo_cache.find(m);
    if (it != g_cyclo_cache.end()) return it->second;
  }
  std::vector<int64_t> poly;
  if (m == 1) {
    poly = {-1, 1};
  } else {
    // Phi_m = (x^m - 1) / prod_{d | m, d < m} Phi_d
    poly = {-1, 1};  // running product of Phi_d, starts with Phi_1
    for (int64_t d : ntheory::divisors(m)) {
      if (d == 1 || d == m) continue;
      auto phid = cyclotomic_polynomial(d);
      std::vector<int64_t> prod(poly.size() + phid.size() - 1, 0);
      for (size_t i = 0; i < poly.size(); ++i)
        for (size_t j = 0; j < phid.size(); ++j)
          prod[i + j] = checked_add(prod[i + j], checked_mul(poly[i], phid[j]));
      poly = std::move(prod);
    }
    poly = divide_xm1(m, poly);
  }
  std::lock_guard<std::mutex> lock(g_cyclo_mutex);
  g_cyclo_cache[m] = poly;
  return poly;
}

bool is_zero_exact(const FormalExpSum& a) {
  // Remainder of the coefficient polynomial mod Phi_M; zero iff the sum
  // evaluates to zero (Phi_M is monic, so the division stays integral).
  auto phi = cyclotomic_polynomial(a.modulus());
  size_t dd = phi.size() - 1;
  std::vector<int64_t> rem(a.coeffs());
  for (size_t i = rem.size(); i-- > dd;) {
    int64_t c = rem[i];
    if (c == 0) continue;
    for (size_t j = 0; j <= dd; ++j)
      rem[i - dd + j] = rem[i - dd + j] - checked_mul(c, phi[j]);
  }
  for (size_t i = 0; i < dd && i < rem.size(); ++i)
    if (rem[i] != 0) return false;
  return true;
}

bool equal_exact(const FormalExpSum& a, const FormalExpSum& b) {
  int64_t m = ntheory::lcm(a.modulus(), b.modulus());
  return is_zero_exact(a.rescale_modulus(m) - b.rescale_modulus(m));
}

FormalExpSum gauss_sum_formal(const ntheory::DirichletCharacter& chi) {
  int64_t h = chi.modulus();
  int64_t m = ntheory::lcm(h, chi.order());
  FormalExpSum g(m);
  for (int64_t l = 0; l < h; ++l) {
    const auto& v = chi.value(l);
    if (v.is_zero()) continue;
    // chi(l) * e(l/h) = e(v.num/v.den + l/h)
    int64_t j = checked_add(checked_mul(v.num, m / v.den), checked_mul(l, m / h));
    g.add_term(j, 1);
  }
  return g;
}

}  // namespace lfk::formal
