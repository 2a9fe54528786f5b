#pragma once

// Exact linear algebra for integral symmetric bilinear forms.
//
// Everything here works over arbitrary-precision integers (and rationals for
// the congruence diagonalization). No floating point is used anywhere.

#include <algorithm>
#include <cstddef>
#include <cstdint>
#include <initializer_list>
#include <optional>
#include <random>
#include <stdexcept>
#include <string>
#include <utility>
#include <vector>

#include <boost/multiprecision/cpp_int.hpp>

namespace unimod {

using Integer = boost::multiprecision::cpp_int;
using Rational = boost::multiprecision::cpp_rational;

enum class Parity { Even, Odd };

inline const char* to_string(Parity p) noexcept {
  return p == Parity::Even ? "Even" : "Odd";
}

/// Dense square integer matrix, row-major. Used for basis changes, which are
/// not symmetric in general.
class IntMatrix {
 public:
  IntMatrix() = default;
  explicit IntMatrix(std::size_t n) : n_(n), entries_(n * n) {}
  IntMatrix(std::initializer_list<std::initializer_list<long long>> rows)
      : IntMatrix(rows.size()) {
    std::size_t i = 0;
    for (const auto& row : rows) {
      if (row.size() != n_) throw std::invalid_argument("IntMatrix: rows must have length n");
      std::size_t j = 0;
      for (long long v : row) (*this)(i, j++) = v;
      ++i;
    }
  }

  static IntMatrix identity(std::size_t n) {
    IntMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m(i, i) = 1;
    return m;
  }

  std::size_t size() const noexcept { return n_; }
  Integer& operator()(std::size_t i, std::size_t j) { return entries_[i * n_ + j]; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  IntMatrix transpose() const {
    IntMatrix t(n_);
    for (std::size_t i = 0; i < n_; ++i)
      for (std::size_t j = 0; j < n_; ++j) t(j, i) = (*this)(i, j);
    return t;
  }

  friend IntMatrix operator*(const IntMatrix& a, const IntMatrix& b) {
    if (a.n_ != b.n_) throw std::invalid_argument("IntMatrix: size mismatch");
    IntMatrix c(a.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t k = 0; k < a.n_; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < a.n_; ++j) c(i, j) += a(i, k) * b(k, j);
      }
    return c;
  }

  friend bool operator==(const IntMatrix&, const IntMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Integer> entries_;
};

/// Gram matrix of an integral symmetric bilinear form. Symmetry is enforced
/// at construction and preserved by every mutator.
class GramMatrix {
 public:
  GramMatrix() = default;
  explicit GramMatrix(std::size_t n) : n_(n), entries_(n * n) {}

  GramMatrix(std::initializer_list<std::initializer_list<long long>> rows) {
    std::vector<std::vector<Integer>> r;
    for (const auto& row : rows) r.emplace_back(row.begin(), row.end());
    *this = from_rows(r);
  }

  /// Throws std::invalid_argument unless `rows` is square and symmetric.
  static GramMatrix from_rows(const std::vector<std::vector<Integer>>& rows) {
    GramMatrix m(rows.size());
    for (std::size_t i = 0; i < m.n_; ++i) {
      if (rows[i].size() != m.n_)
        throw std::invalid_argument("Gram matrix row " + std::to_string(i) + " has length " +
                                    std::to_string(rows[i].size()) + ", expected " +
                                    std::to_string(m.n_));
      for (std::size_t j = 0; j < m.n_; ++j) m.entries_[i * m.n_ + j] = rows[i][j];
    }
    for (std::size_t i = 0; i < m.n_; ++i)
      for (std::size_t j = i + 1; j < m.n_; ++j)
        if (m(i, j) != m(j, i))
          throw std::invalid_argument("Gram matrix is not symmetric at (" + std::to_string(i) +
                                      ", " + std::to_string(j) + ")");
    return m;
  }

  /// Congruent image PᵀAP. Throws std::invalid_argument on size mismatch.
  static GramMatrix congruent(const GramMatrix& a, const IntMatrix& p) {
    if (a.n_ != p.size()) throw std::invalid_argument("congruent: size mismatch");
    const std::size_t n = a.n_;
    // ap = A·P, then result = Pᵀ·ap; only the upper triangle is computed.
    std::vector<Integer> ap(n * n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) {
        if (a(i, k) == 0) continue;
        for (std::size_t j = 0; j < n; ++j) ap[i * n + j] += a(i, k) * p(k, j);
      }
    GramMatrix out(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) {
        Integer s = 0;
        for (std::size_t k = 0; k < n; ++k) s += p(k, i) * ap[k * n + j];
        out.set(i, j, s);
      }
    return out;
  }

  static GramMatrix identity(std::size_t n) {
    GramMatrix m(n);
    for (std::size_t i = 0; i < n; ++i) m.set(i, i, 1);
    return m;
  }

  static GramMatrix diagonal(const std::vector<long long>& d) {
    GramMatrix m(d.size());
    for (std::size_t i = 0; i < d.size(); ++i) m.set(i, i, d[i]);
    return m;
  }

  std::size_t rank() const noexcept { return n_; }
  const Integer& operator()(std::size_t i, std::size_t j) const { return entries_[i * n_ + j]; }

  void set(std::size_t i, std::size_t j, const Integer& v) {
    entries_[i * n_ + j] = v;
    entries_[j * n_ + i] = v;
  }

  GramMatrix negated() const {
    GramMatrix m = *this;
    for (auto& e : m.entries_) e = -e;
    return m;
  }

  /// Block-diagonal sum.
  friend GramMatrix direct_sum(const GramMatrix& a, const GramMatrix& b) {
    GramMatrix m(a.n_ + b.n_);
    for (std::size_t i = 0; i < a.n_; ++i)
      for (std::size_t j = 0; j < a.n_; ++j) m.entries_[i * m.n_ + j] = a(i, j);
    for (std::size_t i = 0; i < b.n_; ++i)
      for (std::size_t j = 0; j < b.n_; ++j) m.entries_[(a.n_ + i) * m.n_ + a.n_ + j] = b(i, j);
    return m;
  }

  friend bool operator==(const GramMatrix&, const GramMatrix&) = default;

 private:
  std::size_t n_ = 0;
  std::vector<Integer> entries_;
};

struct FormInvariants {
  std::size_t rank = 0;
  std::int64_t b_plus = 0;
  std::int64_t b_minus = 0;
  std::int64_t signature = 0;
  Parity parity = Parity::Even;
  Integer determinant = 1;

  friend bool operator==(const FormInvariants&, const FormInvariants&) = default;
};

namespace detail {

// Bareiss fraction-free elimination with row pivoting. Every division is
// exact by Sylvester's identity.
inline Integer bareiss_determinant(std::size_t n, std::vector<Integer> a) {
  if (n == 0) return 1;
  auto at = [&](std::size_t i, std::size_t j) -> Integer& { return a[i * n + j]; };
  Integer prev = 1;
  int sign = 1;
  for (std::size_t k = 0; k + 1 < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t r = k + 1;
      while (r < n && at(r, k) == 0) ++r;
      if (r == n) return 0;
      for (std::size_t j = 0; j < n; ++j) std::swap(at(k, j), at(r, j));
      sign = -sign;
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      for (std::size_t j = k + 1; j < n; ++j)
        at(i, j) = (at(i, j) * at(k, k) - at(i, k) * at(k, j)) / prev;
      at(i, k) = 0;
    }
    prev = at(k, k);
  }
  return sign * at(n - 1, n - 1);
}

}  // namespace detail

/// Exact determinant. The empty form has determinant 1.
inline Integer determinant(const GramMatrix& m) {
  const std::size_t n = m.rank();
  std::vector<Integer> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  return detail::bareiss_determinant(n, std::move(a));
}

inline Integer determinant(const IntMatrix& m) {
  const std::size_t n = m.size();
  std::vector<Integer> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = m(i, j);
  return detail::bareiss_determinant(n, std::move(a));
}

/// Even iff every diagonal entry is even: off-diagonal terms enter Q(x,x)
/// twice, so the diagonal alone decides Q(x,x) mod 2.
inline Parity parity(const GramMatrix& m) {
  for (std::size_t i = 0; i < m.rank(); ++i)
    if (boost::multiprecision::bit_test(m(i, i), 0)) return Parity::Odd;
  return Parity::Even;
}

inline bool is_unimodular(const GramMatrix& m) {
  const Integer d = determinant(m);
  return d == 1 || d == -1;
}

/// Diagonal of a symmetric congruence diagonalization DᵀAD over ℚ. By
/// Sylvester's law of inertia the sign pattern is a congruence invariant.
inline std::vector<Rational> congruence_diagonal(const GramMatrix& m) {
  const std::size_t n = m.rank();
  std::vector<Rational> a(n * n);
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) a[i * n + j] = Rational(m(i, j));
  auto at = [&](std::size_t i, std::size_t j) -> Rational& { return a[i * n + j]; };

  // Adds s·(row/col j) into row/col k, keeping the matrix symmetric.
  auto add_into = [&](std::size_t k, std::size_t j, int s) {
    for (std::size_t c = 0; c < n; ++c) at(k, c) += s * at(j, c);
    for (std::size_t r = 0; r < n; ++r) at(r, k) += s * at(r, j);
  };

  std::vector<Rational> diag;
  diag.reserve(n);
  for (std::size_t k = 0; k < n; ++k) {
    if (at(k, k) == 0) {
      std::size_t j = k + 1;
      while (j < n && at(k, j) == 0) ++j;
      if (j < n) {
        // New pivot is A_jj ± 2A_kj; both signs cannot vanish since A_kj ≠ 0.
        add_into(k, j, 1);
        if (at(k, k) == 0) add_into(k, j, -2);
      }
    }
    const Rational pivot = at(k, k);
    diag.push_back(pivot);
    if (pivot == 0) continue;  // whole row is zero: radical direction
    // Schur complement; row k is read throughout, so it is cleared last.
    for (std::size_t i = k + 1; i < n; ++i) {
      if (at(i, k) == 0) continue;
      const Rational f = at(i, k) / pivot;
      for (std::size_t j = k + 1; j < n; ++j) at(i, j) -= f * at(k, j);
    }
    for (std::size_t i = k + 1; i < n; ++i) {
      at(i, k) = 0;
      at(k, i) = 0;
    }
  }
  return diag;
}

/// Rank, inertia, parity and determinant. Degenerate forms are accepted and
/// report b_plus + b_minus < rank.
inline FormInvariants invariants(const GramMatrix& m) {
  FormInvariants inv;
  inv.rank = m.rank();
  for (const Rational& d : congruence_diagonal(m)) {
    if (d > 0) ++inv.b_plus;
    else if (d < 0) ++inv.b_minus;
  }
  inv.signature = inv.b_plus - inv.b_minus;
  inv.parity = parity(m);
  inv.determinant = determinant(m);
  return inv;
}

inline constexpr long long kDefaultEntryCap = 1'000'000;

struct UnimodularTransform {
  GramMatrix result;  // PᵀmP
  IntMatrix basis;    // P, det P = ±1
};

/// Applies `steps` random elementary basis changes (b_i += ±b_j, swap,
/// negate) to m. A step that would push any entry of the Gram matrix or of P
/// beyond `entry_cap` in absolute value is skipped. Deterministic in `seed`
/// on every platform: only raw mt19937_64 output is consumed.
inline UnimodularTransform random_unimodular_congruence(const GramMatrix& m, std::uint64_t seed,
                                                        std::size_t steps,
                                                        long long entry_cap = kDefaultEntryCap) {
  const std::size_t n = m.rank();
  std::vector<std::vector<Integer>> g(n, std::vector<Integer>(n));
  for (std::size_t i = 0; i < n; ++i)
    for (std::size_t j = 0; j < n; ++j) g[i][j] = m(i, j);
  IntMatrix p = IntMatrix::identity(n);
  if (n == 0) return {m, p};

  std::mt19937_64 rng(seed);
  const Integer cap = entry_cap;
  auto within_cap = [&](const Integer& v) { return boost::multiprecision::abs(v) <= cap; };

  for (std::size_t step = 0; step < steps; ++step) {
    const std::uint64_t kind = n >= 2 ? rng() % 3 : 2;
    const std::size_t i = rng() % n;
    std::size_t j = n >= 2 ? rng() % (n - 1) : 0;
    if (j >= i) ++j;
    if (kind == 0) {
      const int s = (rng() & 1) ? 1 : -1;
      // b_i <- b_i + s·b_j: row i and column i pick up s·(row/col j).
      std::vector<Integer> row(n);
      for (std::size_t c = 0; c < n; ++c) row[c] = g[i][c] + s * g[j][c];
      row[i] = g[i][i] + 2 * s * g[i][j] + g[j][j];
      bool ok = std::all_of(row.begin(), row.end(), within_cap);
      for (std::size_t r = 0; ok && r < n; ++r) ok = within_cap(p(r, i) + s * p(r, j));
      if (!ok) continue;
      for (std::size_t c = 0; c < n; ++c) {
        g[i][c] = row[c];
        g[c][i] = row[c];
      }
      for (std::size_t r = 0; r < n; ++r) p(r, i) += s * p(r, j);
    } else if (kind == 1) {
      std::swap(g[i], g[j]);
      for (std::size_t r = 0; r < n; ++r) std::swap(g[r][i], g[r][j]);
      for (std::size_t r = 0; r < n; ++r) std::swap(p(r, i), p(r, j));
    } else {
      for (std::size_t c = 0; c < n; ++c) {
        if (c == i) continue;
        g[i][c] = -g[i][c];
        g[c][i] = -g[c][i];
      }
      for (std::size_t r = 0; r < n; ++r) p(r, i) = -p(r, i);
    }
  }
  return {GramMatrix::from_rows(g), std::move(p)};
}

inline GramMatrix random_unimodular_transform(const GramMatrix& m, std::uint64_t seed,
                                              std::size_t steps,
                                              long long entry_cap = kDefaultEntryCap) {
  return random_unimodular_congruence(m, seed, steps, entry_cap).result;
}

/// Exhaustive search for P with entries in [-bound, bound], PᵀaP = b and
/// det P = ±1. Candidates are visited in lexicographic order of P read
/// column by column, so the returned witness is the first one in that order.
/// Meant for rank ≤ 3; cost grows like (2·bound+1)^(rank²).
inline std::optional<IntMatrix> brute_force_isometry(const GramMatrix& a, const GramMatrix& b,
                                                     long long bound) {
  if (a.rank() != b.rank())
    throw std::invalid_argument("brute_force_isometry: rank mismatch (" +
                                std::to_string(a.rank()) + " vs " + std::to_string(b.rank()) + ")");
  if (bound < 0) throw std::invalid_argument("brute_force_isometry: bound must be >= 0");
  const std::size_t n = a.rank();
  if (n == 0) return IntMatrix{};

  struct Candidate {
    std::vector<Integer> v;
    std::vector<Integer> av;  // a·v
    Integer norm;             // vᵀ·a·v
  };
  std::vector<Candidate> cands;
  std::vector<Integer> v(n, -bound);
  for (;;) {
    Candidate c{v, std::vector<Integer>(n), 0};
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t k = 0; k < n; ++k) c.av[i] += a(i, k) * v[k];
    for (std::size_t i = 0; i < n; ++i) c.norm += v[i] * c.av[i];
    cands.push_back(std::move(c));
    std::size_t pos = n;
    while (pos > 0 && v[pos - 1] == bound) v[--pos] = -bound;
    if (pos == 0) break;
    ++v[pos - 1];
  }

  auto pair = [&](const Candidate& x, const Candidate& y) {
    Integer s = 0;
    for (std::size_t i = 0; i < n; ++i) s += x.v[i] * y.av[i];
    return s;
  };

  std::vector<const Candidate*> chosen(n, nullptr);
  std::optional<IntMatrix> found;
  auto search = [&](auto&& self, std::size_t col) -> bool {
    if (col == n) {
      IntMatrix p(n);
      for (std::size_t j = 0; j < n; ++j)
        for (std::size_t i = 0; i < n; ++i) p(i, j) = chosen[j]->v[i];
      const Integer d = determinant(p);
      if (d != 1 && d != -1) return false;
      found = std::move(p);
      return true;
    }
    for (const Candidate& c : cands) {
      if (c.norm != b(col, col)) continue;
      bool ok = true;
      for (std::size_t prev = 0; ok && prev < col; ++prev) ok = pair(*chosen[prev], c) == b(prev, col);
      if (!ok) continue;
      chosen[col] = &c;
      if (self(self, col + 1)) return true;
    }
    return false;
  };
  search(search, 0);
  return found;
}

}  // namespace unimod
