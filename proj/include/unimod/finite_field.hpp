#pragma once

#include <cstdint>
#include <memory>
#include <span>
#include <stdexcept>
#include <string>
#include <vector>

#include "unimod/error.hpp"

namespace unimod {

inline constexpr std::uint32_t kDefaultFieldOrderCap = 343;

inline bool is_prime(std::uint64_t n) {
  if (n < 2) return false;
  for (std::uint64_t d = 2; d * d <= n; ++d)
    if (n % d == 0) return false;
  return true;
}

/// F_q with q = p^k, k ≤ 3, realized as F_p[x]/(modulus).
///
/// An element is the integer Σ c_i·p^i encoding its coefficient vector
/// (c_0, …, c_{k-1}); in particular 0..p-1 are the prime subfield. Addition
/// and multiplication are table lookups built once at construction; copies
/// share the tables and are safe to use from any number of threads.
class FiniteField {
 public:
  using Element = std::uint32_t;

  std::uint32_t characteristic() const noexcept { return t_->p; }
  std::uint32_t degree() const noexcept { return t_->k; }
  std::uint32_t order() const noexcept { return t_->q; }
  /// Monic, lowest coefficient first, length degree()+1.
  const std::vector<std::uint32_t>& modulus() const noexcept { return t_->modulus; }

  Element add(Element a, Element b) const { return t_->add[a * t_->q + b]; }
  Element mul(Element a, Element b) const { return t_->mul[a * t_->q + b]; }
  Element neg(Element a) const { return t_->neg[a]; }
  Element sub(Element a, Element b) const { return add(a, neg(b)); }
  Element inv(Element a) const {
    if (a == 0) throw std::domain_error("FiniteField: zero has no inverse");
    return t_->inv[a];
  }
  Element pow(Element a, std::uint64_t e) const {
    Element r = 1;
    while (e) {
      if (e & 1) r = mul(r, a);
      a = mul(a, a);
      e >>= 1;
    }
    return r;
  }
  Element frobenius(Element a) const { return pow(a, t_->p); }

  /// Image of an integer in the prime subfield.
  Element from_int(long long v) const {
    const long long p = t_->p;
    return static_cast<Element>(((v % p) + p) % p);
  }

  std::vector<std::uint32_t> coefficients(Element a) const {
    std::vector<std::uint32_t> c(t_->k);
    for (auto& x : c) {
      x = a % t_->p;
      a /= t_->p;
    }
    return c;
  }

  Element from_coefficients(std::span<const std::uint32_t> c) const {
    if (c.size() != t_->k) throw std::invalid_argument("from_coefficients: expected degree() coefficients");
    Element a = 0;
    for (std::size_t i = c.size(); i-- > 0;) {
      if (c[i] >= t_->p) throw std::invalid_argument("from_coefficients: coefficient out of range");
      a = a * t_->p + c[i];
    }
    return a;
  }

  friend bool operator==(const FiniteField& a, const FiniteField& b) {
    return a.t_->p == b.t_->p && a.t_->modulus == b.t_->modulus;
  }

 private:
  struct Tables {
    std::uint32_t p = 0, k = 0, q = 0;
    std::vector<std::uint32_t> modulus;
    std::vector<std::uint16_t> add, mul;
    std::vector<std::uint16_t> neg, inv;
  };

  explicit FiniteField(std::shared_ptr<const Tables> t) : t_(std::move(t)) {}
  friend FiniteField field_build(std::uint32_t, std::uint32_t, std::uint32_t);

  std::shared_ptr<const Tables> t_;
};

namespace detail {

// Polynomial product of two coefficient vectors reduced modulo a monic
// modulus of degree k, all over F_p.
inline std::vector<std::uint32_t> mulmod(const std::vector<std::uint32_t>& a,
                                         const std::vector<std::uint32_t>& b,
                                         const std::vector<std::uint32_t>& modulus, std::uint32_t p) {
  const std::size_t k = modulus.size() - 1;
  std::vector<std::uint64_t> prod(2 * k - 1, 0);
  for (std::size_t i = 0; i < k; ++i)
    for (std::size_t j = 0; j < k; ++j) prod[i + j] = (prod[i + j] + std::uint64_t{a[i]} * b[j]) % p;
  for (std::size_t d = prod.size(); d-- > k;) {
    const std::uint64_t lead = prod[d];
    if (lead == 0) continue;
    // x^d = x^(d-k)·x^k ≡ −x^(d-k)·Σ modulus_i x^i
    for (std::size_t i = 0; i < k; ++i)
      prod[d - k + i] = (prod[d - k + i] + (p - lead) * modulus[i]) % p;
    prod[d] = 0;
  }
  return {prod.begin(), prod.begin() + static_cast<std::ptrdiff_t>(k)};
}

// Monic polynomial of degree ≤ 3 over F_p is irreducible iff it has no root.
inline bool has_root(const std::vector<std::uint32_t>& poly, std::uint32_t p) {
  for (std::uint64_t x = 0; x < p; ++x) {
    std::uint64_t v = 0;
    for (std::size_t i = poly.size(); i-- > 0;) v = (v * x + poly[i]) % p;
    if (v == 0) return true;
  }
  return false;
}

}  // namespace detail

/// Builds F_{p^k}. The modulus is the first monic irreducible polynomial
/// when the candidates x^k + c_{k-1}x^{k-1} + ⋯ + c_0 are ordered
/// lexicographically by (c_{k-1}, …, c_0).
inline FiniteField field_build(std::uint32_t p, std::uint32_t k,
                               std::uint32_t order_cap = kDefaultFieldOrderCap) {
  if (!is_prime(p)) throw DomainError(ErrorCode::NotPrime, std::to_string(p) + " is not prime");
  if (k < 1 || k > 3)
    throw DomainError(ErrorCode::UnsupportedDegree,
                      "extension degree " + std::to_string(k) + " is outside 1..3");
  std::uint64_t q = 1;
  for (std::uint32_t i = 0; i < k; ++i) q *= p;
  // Tables store elements as 16-bit values.
  if (q > order_cap || q > 0xFFFF)
    throw DomainError(ErrorCode::FieldTooLarge, "field order " + std::to_string(q) +
                                                    " exceeds the configured cap " +
                                                    std::to_string(order_cap));

  auto t = std::make_shared<FiniteField::Tables>();
  t->p = p;
  t->k = k;
  t->q = static_cast<std::uint32_t>(q);
  if (k == 1) {
    t->modulus = {0, 1};
  } else {
    const std::uint64_t candidates = q;  // p^k choices of the lower coefficients
    for (std::uint64_t idx = 0; idx < candidates && t->modulus.empty(); ++idx) {
      std::vector<std::uint32_t> poly(k + 1);
      std::uint64_t v = idx;
      for (std::uint32_t i = 0; i < k; ++i) {
        poly[i] = static_cast<std::uint32_t>(v % p);
        v /= p;
      }
      poly[k] = 1;
      if (!detail::has_root(poly, p)) t->modulus = poly;
    }
  }

  auto coeffs = [&](std::uint32_t a) {
    std::vector<std::uint32_t> c(k);
    for (auto& x : c) {
      x = a % p;
      a /= p;
    }
    return c;
  };
  auto encode = [&](const std::vector<std::uint32_t>& c) {
    std::uint32_t a = 0;
    for (std::size_t i = c.size(); i-- > 0;) a = a * p + c[i];
    return a;
  };

  const std::uint32_t n = t->q;
  t->add.resize(std::size_t{n} * n);
  t->mul.resize(std::size_t{n} * n);
  t->neg.resize(n);
  t->inv.resize(n, 0);
  std::vector<std::vector<std::uint32_t>> cs(n);
  for (std::uint32_t a = 0; a < n; ++a) cs[a] = coeffs(a);
  for (std::uint32_t a = 0; a < n; ++a) {
    std::vector<std::uint32_t> neg(k);
    for (std::uint32_t i = 0; i < k; ++i) neg[i] = (p - cs[a][i]) % p;
    t->neg[a] = static_cast<std::uint16_t>(encode(neg));
    for (std::uint32_t b = 0; b < n; ++b) {
      std::vector<std::uint32_t> sum(k);
      for (std::uint32_t i = 0; i < k; ++i) sum[i] = (cs[a][i] + cs[b][i]) % p;
      t->add[std::size_t{a} * n + b] = static_cast<std::uint16_t>(encode(sum));
      const auto prod = k == 1 ? std::vector<std::uint32_t>{static_cast<std::uint32_t>(
                                     std::uint64_t{a} * b % p)}
                               : detail::mulmod(cs[a], cs[b], t->modulus, p);
      const std::uint32_t m = encode(prod);
      t->mul[std::size_t{a} * n + b] = static_cast<std::uint16_t>(m);
      if (m == 1) t->inv[a] = static_cast<std::uint16_t>(b);
    }
  }
  return FiniteField(std::move(t));
}

}  // namespace unimod
