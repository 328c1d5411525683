#include "flagkneser/galois.hpp"

#include <algorithm>
#include <array>
#include <stdexcept>
#include <string>

namespace flagkneser {
namespace {

constexpr std::array<int, 10> kSupported = {2, 3, 4, 5, 7, 8, 9, 11, 13, 16};

struct ConwayEntry {
  int p;
  int e;
  std::array<int, 5> coeffs;  // constant term first, monic
};

// Conway polynomials C(p,e). For e = 1 the modulus only records the primitive
// root; arithmetic is plain integer arithmetic mod p.
constexpr std::array<ConwayEntry, 10> kConway = {{
    {2, 1, {1, 1, 0, 0, 0}},
    {3, 1, {1, 1, 0, 0, 0}},
    {5, 1, {3, 1, 0, 0, 0}},
    {7, 1, {4, 1, 0, 0, 0}},
    {11, 1, {9, 1, 0, 0, 0}},
    {13, 1, {11, 1, 0, 0, 0}},
    {2, 2, {1, 1, 1, 0, 0}},
    {2, 3, {1, 1, 0, 1, 0}},
    {3, 2, {2, 2, 1, 0, 0}},
    {2, 4, {1, 1, 0, 0, 1}},
}};

bool is_prime(int n) {
  if (n < 2) return false;
  for (int d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

// Returns {p, e} or {0, 0} if q is not a prime power.
std::pair<int, int> factor_prime_power(int q) {
  if (q < 2) return {0, 0};
  int p = 2;
  while (q % p != 0) ++p;
  int e = 0;
  int rest = q;
  while (rest % p == 0) {
    rest /= p;
    ++e;
  }
  if (rest != 1 || !is_prime(p)) return {0, 0};
  return {p, e};
}

std::vector<int> digits(int code, int p, int e) {
  std::vector<int> d(e);
  for (int i = 0; i < e; ++i) {
    d[i] = code % p;
    code /= p;
  }
  return d;
}

int from_digits(const std::vector<int>& d, int p) {
  int code = 0;
  for (int i = static_cast<int>(d.size()) - 1; i >= 0; --i) code = code * p + d[i];
  return code;
}

// Product of two residues modulo the monic modulus.
int poly_mul(int a, int b, int p, int e, const std::vector<int>& modulus) {
  auto da = digits(a, p, e);
  auto db = digits(b, p, e);
  std::vector<int> prod(2 * e - 1, 0);
  for (int i = 0; i < e; ++i)
    for (int j = 0; j < e; ++j) prod[i + j] = (prod[i + j] + da[i] * db[j]) % p;
  for (int k = 2 * e - 2; k >= e; --k) {
    int c = prod[k];
    if (c == 0) continue;
    // x^k = x^(k-e) * x^e and x^e = -sum modulus[i] x^i
    for (int i = 0; i < e; ++i) prod[k - e + i] = ((prod[k - e + i] - c * modulus[i]) % p + p) % p;
    prod[k] = 0;
  }
  prod.resize(e);
  return from_digits(prod, p);
}

}  // namespace

std::span<const int> supported_orders() noexcept { return kSupported; }

bool is_supported_order(int q) noexcept {
  return std::find(kSupported.begin(), kSupported.end(), q) != kSupported.end();
}

Element FieldTable::inv(Element a) const {
  if (a == 0 || a >= q_) throw std::domain_error("GF(" + std::to_string(q_) + "): code " + std::to_string(a) + " has no inverse");
  return inv_[a];
}

Element FieldTable::pow(Element a, unsigned k) const noexcept {
  Element r = 1;
  while (k--) r = mul(r, a);
  return r;
}

FieldTable build_field(int q) {
  auto [p, e] = factor_prime_power(q);
  if (p == 0) throw std::invalid_argument("field order " + std::to_string(q) + " is not a prime power");
  if (!is_supported_order(q))
    throw std::invalid_argument("field order " + std::to_string(q) + " is outside the supported range {2,3,4,5,7,8,9,11,13,16}");

  const auto entry = std::find_if(kConway.begin(), kConway.end(), [&](const ConwayEntry& c) { return c.p == p && c.e == e; });
  FieldTable f;
  f.q_ = q;
  f.p_ = p;
  f.e_ = e;
  f.modulus_.assign(entry->coeffs.begin(), entry->coeffs.begin() + e + 1);
  f.add_.resize(q * q);
  f.mul_.resize(q * q);
  f.neg_.resize(q);
  f.inv_.assign(q, 0);

  for (int a = 0; a < q; ++a) {
    auto da = digits(a, p, e);
    for (int b = 0; b < q; ++b) {
      auto db = digits(b, p, e);
      std::vector<int> sum(e);
      for (int i = 0; i < e; ++i) sum[i] = (da[i] + db[i]) % p;
      f.add_[a * q + b] = static_cast<Element>(from_digits(sum, p));
      f.mul_[a * q + b] = static_cast<Element>(e == 1 ? (a * b) % p : poly_mul(a, b, p, e, f.modulus_));
    }
  }
  for (int a = 0; a < q; ++a) {
    for (int b = 0; b < q; ++b) {
      if (f.add_[a * q + b] == 0) f.neg_[a] = static_cast<Element>(b);
      if (f.mul_[a * q + b] == 1) f.inv_[a] = static_cast<Element>(b);
    }
  }
  return f;
}

}  // namespace flagkneser
