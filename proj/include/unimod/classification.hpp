#pragma once

// Canonical classes of nondegenerate unimodular forms.
//
// Indefinite forms are determined by rank, signature and parity (Serre), so
// they always classify. A definite form only classifies under the explicit
// hypothesis that it is the intersection form of a smooth closed
// simply-connected 4-manifold, where Donaldson forces ±(x₁² + ⋯ + x_r²).
// Abstract definite lattices (E8 and friends) are refused.

#include <cstdint>
#include <stdexcept>
#include <string>
#include <type_traits>
#include <utility>
#include <variant>
#include <vector>

#include "unimod/error.hpp"
#include "unimod/lattice.hpp"

namespace unimod {

enum class ClassificationMode { AbstractLattice, SmoothFourManifold };

inline const char* to_string(ClassificationMode m) noexcept {
  return m == ClassificationMode::AbstractLattice ? "AbstractLattice" : "SmoothFourManifold";
}

/// n_plus⟨1⟩ ⊕ n_minus⟨−1⟩
struct IndefiniteOdd {
  std::int64_t n_plus = 1;
  std::int64_t n_minus = 1;
  friend bool operator==(const IndefiniteOdd&, const IndefiniteOdd&) = default;
};

/// e8_signed_count·E8 ⊕ h_count·H, where a negative count means copies of −E8.
struct IndefiniteEven {
  std::int64_t e8_signed_count = 0;
  std::int64_t h_count = 1;
  friend bool operator==(const IndefiniteEven&, const IndefiniteEven&) = default;
};

/// sign·(x₁² + ⋯ + x_rank²)
struct DefiniteDiagonal {
  int sign = 1;
  std::int64_t rank = 1;
  friend bool operator==(const DefiniteDiagonal&, const DefiniteDiagonal&) = default;
};

using FormClass = std::variant<IndefiniteOdd, IndefiniteEven, DefiniteDiagonal>;

inline std::int64_t class_rank(const FormClass& c) {
  return std::visit(
      [](const auto& v) -> std::int64_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IndefiniteOdd>) return v.n_plus + v.n_minus;
        else if constexpr (std::is_same_v<T, IndefiniteEven>)
          return 8 * (v.e8_signed_count < 0 ? -v.e8_signed_count : v.e8_signed_count) + 2 * v.h_count;
        else return v.rank;
      },
      c);
}

inline std::int64_t class_signature(const FormClass& c) {
  return std::visit(
      [](const auto& v) -> std::int64_t {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IndefiniteOdd>) return v.n_plus - v.n_minus;
        else if constexpr (std::is_same_v<T, IndefiniteEven>) return 8 * v.e8_signed_count;
        else return v.sign * v.rank;
      },
      c);
}

/// Human-readable form such as "IndefiniteEven(-2, 3)".
inline std::string to_string(const FormClass& c) {
  return std::visit(
      [](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IndefiniteOdd>)
          return "IndefiniteOdd(" + std::to_string(v.n_plus) + ", " + std::to_string(v.n_minus) + ")";
        else if constexpr (std::is_same_v<T, IndefiniteEven>)
          return "IndefiniteEven(" + std::to_string(v.e8_signed_count) + ", " +
                 std::to_string(v.h_count) + ")";
        else
          return "DefiniteDiagonal(" + std::string(v.sign > 0 ? "+1" : "-1") + ", " +
                 std::to_string(v.rank) + ")";
      },
      c);
}

/// Direct-sum notation, e.g. "2(-E8) + 3H" or "<1> + <-1>".
inline std::string describe(const FormClass& c) {
  auto times = [](std::int64_t k, const std::string& block) {
    return k == 1 ? block : std::to_string(k) + block;
  };
  return std::visit(
      [&](const auto& v) -> std::string {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IndefiniteOdd>) {
          return times(v.n_plus, "<1>") + " + " + times(v.n_minus, "<-1>");
        } else if constexpr (std::is_same_v<T, IndefiniteEven>) {
          std::string s;
          if (v.e8_signed_count > 0) s = times(v.e8_signed_count, "E8") + " + ";
          if (v.e8_signed_count < 0) s = times(-v.e8_signed_count, "(-E8)") + " + ";
          return s + times(v.h_count, "H");
        } else {
          return times(v.rank, v.sign > 0 ? "<1>" : "<-1>");
        }
      },
      c);
}

/// Standard E8 Gram matrix (Cartan matrix of the E8 root system, Bourbaki
/// labelling: chain 1-3-4-5-6-7-8 with node 2 attached to node 4).
inline GramMatrix e8_gram() {
  GramMatrix m(8);
  for (std::size_t i = 0; i < 8; ++i) m.set(i, i, 2);
  const std::pair<std::size_t, std::size_t> edges[] = {{0, 2}, {2, 3}, {3, 4}, {4, 5},
                                                       {5, 6}, {6, 7}, {1, 3}};
  for (auto [i, j] : edges) m.set(i, j, -1);
  return m;
}

inline GramMatrix hyperbolic_plane() { return GramMatrix{{0, 1}, {1, 0}}; }

namespace detail {

[[noreturn]] inline void fail(ErrorCode code, const std::string& what) {
  throw DomainError(code, what);
}

}  // namespace detail

inline FormClass classify_form(const FormInvariants& inv, ClassificationMode mode) {
  using detail::fail;
  if (inv.determinant == 0) fail(ErrorCode::DegenerateForm, "form is degenerate (determinant 0)");
  if (inv.determinant != 1 && inv.determinant != -1)
    fail(ErrorCode::NotUnimodular, "determinant is " + inv.determinant.str() + ", expected +1 or -1");
  if (inv.rank == 0) fail(ErrorCode::EmptyForm, "rank-0 form has no class");

  const auto rank = static_cast<std::int64_t>(inv.rank);
  const std::int64_t sigma = inv.signature;
  if (inv.b_plus < 0 || inv.b_minus < 0 || inv.b_plus + inv.b_minus != rank ||
      inv.b_plus - inv.b_minus != sigma)
    fail(ErrorCode::InconsistentInvariants,
         "rank " + std::to_string(rank) + ", b+ " + std::to_string(inv.b_plus) + ", b- " +
             std::to_string(inv.b_minus) + ", signature " + std::to_string(sigma) +
             " do not fit together");

  if (inv.parity == Parity::Even && sigma % 8 != 0)
    fail(ErrorCode::InconsistentEvenSignature,
         "even unimodular form with signature " + std::to_string(sigma) + " (not divisible by 8)");

  const std::int64_t abs_sigma = sigma < 0 ? -sigma : sigma;
  if (abs_sigma != rank) {
    if (inv.parity == Parity::Odd) return IndefiniteOdd{(rank + sigma) / 2, (rank - sigma) / 2};
    return IndefiniteEven{sigma / 8, (rank - abs_sigma) / 2};
  }

  if (mode == ClassificationMode::AbstractLattice)
    fail(ErrorCode::DefiniteNotClassified,
         "definite form of rank " + std::to_string(rank) +
             " is not classified as an abstract lattice (pass the smooth 4-manifold hypothesis)");
  if (inv.parity == Parity::Even)
    fail(ErrorCode::DefiniteEvenUnrealizable,
         "even definite form of rank " + std::to_string(rank) +
             " is not the intersection form of a smooth closed simply-connected 4-manifold");
  return DefiniteDiagonal{sigma > 0 ? 1 : -1, rank};
}

inline FormClass classify_gram(const GramMatrix& m, ClassificationMode mode) {
  return classify_form(invariants(m), mode);
}

/// Block-diagonal realization: positive blocks (⟨1⟩ or E8) first, then
/// negative blocks (⟨−1⟩ or −E8), then hyperbolic planes.
inline GramMatrix canonical_gram(const FormClass& c) {
  return std::visit(
      [](const auto& v) -> GramMatrix {
        using T = std::decay_t<decltype(v)>;
        if constexpr (std::is_same_v<T, IndefiniteOdd>) {
          if (v.n_plus < 1 || v.n_minus < 1)
            throw std::invalid_argument("IndefiniteOdd needs n_plus, n_minus >= 1");
          std::vector<long long> d(static_cast<std::size_t>(v.n_plus), 1);
          d.insert(d.end(), static_cast<std::size_t>(v.n_minus), -1);
          return GramMatrix::diagonal(d);
        } else if constexpr (std::is_same_v<T, IndefiniteEven>) {
          if (v.h_count < 1) throw std::invalid_argument("IndefiniteEven needs h_count >= 1");
          const GramMatrix e8 = v.e8_signed_count > 0 ? e8_gram() : e8_gram().negated();
          GramMatrix m;
          const std::int64_t e8s = v.e8_signed_count < 0 ? -v.e8_signed_count : v.e8_signed_count;
          for (std::int64_t i = 0; i < e8s; ++i) m = direct_sum(m, e8);
          for (std::int64_t i = 0; i < v.h_count; ++i) m = direct_sum(m, hyperbolic_plane());
          return m;
        } else {
          if (v.rank < 1 || (v.sign != 1 && v.sign != -1))
            throw std::invalid_argument("DefiniteDiagonal needs sign ±1 and rank >= 1");
          return GramMatrix::diagonal(std::vector<long long>(static_cast<std::size_t>(v.rank), v.sign));
        }
      },
      c);
}

inline bool forms_isomorphic(const GramMatrix& a, const GramMatrix& b, ClassificationMode mode) {
  return classify_gram(a, mode) == classify_gram(b, mode);
}

}  // namespace unimod
