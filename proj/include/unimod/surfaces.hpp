#pragma once

// Simply-connected smooth projective surfaces described by the integers that
// survive specialization: c1², c2 and whether the canonical class is
// divisible by 2. From these, Hirzebruch and Noether give the full rank,
// signature and parity of the intersection form, and Freedman turns equality
// of those into oriented homeomorphism.

#include <cstdint>
#include <optional>
#include <stdexcept>
#include <string>
#include <string_view>
#include <tuple>
#include <vector>

#include "unimod/classification.hpp"
#include "unimod/error.hpp"

namespace unimod {

struct SurfaceData {
  std::string name;
  std::int64_t c1_sq = 0;
  std::int64_t c2 = 0;
  bool spin = false;

  friend bool operator==(const SurfaceData&, const SurfaceData&) = default;
};

struct SurfaceInvariants {
  std::int64_t b2 = 0;
  std::int64_t sigma = 0;
  Parity parity = Parity::Odd;
  std::int64_t b_plus = 0;
  std::int64_t b_minus = 0;
  std::int64_t chi_holo = 0;

  friend bool operator==(const SurfaceInvariants&, const SurfaceInvariants&) = default;
};

namespace detail {

inline std::int64_t floor_mod(std::int64_t a, std::int64_t m) {
  const std::int64_t r = a % m;
  return r < 0 ? r + m : r;
}

[[noreturn]] inline void invalid_surface(const SurfaceData& s, const std::string& why) {
  throw DomainError(ErrorCode::InvalidSurface,
                    "'" + s.name + "' (c1^2 " + std::to_string(s.c1_sq) + ", c2 " +
                        std::to_string(s.c2) + (s.spin ? ", spin" : ", non-spin") + "): " + why);
}

}  // namespace detail

/// Throws InvalidSurface with the first violated constraint.
inline SurfaceInvariants compute_invariants(const SurfaceData& s) {
  using detail::floor_mod;
  using detail::invalid_surface;
  if (floor_mod(s.c1_sq + s.c2, 12) != 0)
    invalid_surface(s, "c1^2 + c2 is not divisible by 12 (Noether)");
  if (s.c2 < 3) invalid_surface(s, "c2 < 3, so b2 < 1");
  if (floor_mod(s.c1_sq - 2 * s.c2, 3) != 0)
    invalid_surface(s, "c1^2 - 2 c2 is not divisible by 3 (signature)");

  SurfaceInvariants inv;
  inv.sigma = (s.c1_sq - 2 * s.c2) / 3;
  inv.b2 = s.c2 - 2;
  if (floor_mod(inv.b2 + inv.sigma, 2) != 0) invalid_surface(s, "b2 and signature differ in parity");
  inv.b_plus = (inv.b2 + inv.sigma) / 2;
  inv.b_minus = (inv.b2 - inv.sigma) / 2;
  if (inv.b_plus < 1) invalid_surface(s, "b+ < 1, but a projective surface has a hyperplane class");
  if (inv.b_minus < 0) invalid_surface(s, "b- < 0");
  inv.parity = s.spin ? Parity::Even : Parity::Odd;
  if (s.spin && floor_mod(inv.sigma, 8) != 0)
    invalid_surface(s, "spin but signature " + std::to_string(inv.sigma) + " is not divisible by 8");
  inv.chi_holo = (s.c1_sq + s.c2) / 12;
  return inv;
}

/// Invariants of the intersection pairing as a lattice. The pairing is
/// unimodular (Poincaré duality), so the determinant is (−1)^b⁻.
inline FormInvariants intersection_form_invariants(const SurfaceData& s) {
  const SurfaceInvariants si = compute_invariants(s);
  FormInvariants inv;
  inv.rank = static_cast<std::size_t>(si.b2);
  inv.b_plus = si.b_plus;
  inv.b_minus = si.b_minus;
  inv.signature = si.sigma;
  inv.parity = si.parity;
  inv.determinant = si.b_minus % 2 == 0 ? 1 : -1;
  return inv;
}

inline FormClass intersection_form_class(const SurfaceData& s) {
  return classify_form(intersection_form_invariants(s), ClassificationMode::SmoothFourManifold);
}

/// Oriented homeomorphism (for the complex orientations). All three inputs
/// are determined by the reduction of the surface modulo a good prime.
inline bool homeomorphic(const SurfaceData& x, const SurfaceData& y) {
  const SurfaceInvariants a = compute_invariants(x);
  const SurfaceInvariants b = compute_invariants(y);
  return std::tie(a.b2, a.sigma, a.parity) == std::tie(b.b2, b.sigma, b.parity);
}

/// Smooth degree-d surface in P3.
inline SurfaceData hypersurface(std::int64_t d) {
  if (d < 1) throw std::invalid_argument("hypersurface degree must be >= 1");
  return {"degree-" + std::to_string(d) + " surface in P3", d * (d - 4) * (d - 4),
          d * (d * d - 4 * d + 6), d % 2 == 0};
}

/// Blowup at k points. Each exceptional curve has self-intersection −1, so
/// k ≥ 1 always makes the form odd.
inline SurfaceData blow_up(const SurfaceData& s, std::int64_t k) {
  if (k < 0) throw std::invalid_argument("blow_up: k must be >= 0");
  if (k == 0) return s;
  const bool bare = s.name.find(' ') == std::string::npos;
  return {"Bl" + std::to_string(k) + (bare ? s.name : "(" + s.name + ")"), s.c1_sq - k, s.c2 + k,
          false};
}

inline SurfaceData projective_plane() { return {"P2", 9, 3, false}; }
inline SurfaceData p1_x_p1() { return {"P1xP1", 8, 4, true}; }

inline std::vector<SurfaceData> catalog() {
  std::vector<SurfaceData> out{projective_plane(), p1_x_p1()};
  for (std::int64_t k = 1; k <= 9; ++k) out.push_back(blow_up(projective_plane(), k));
  for (std::int64_t d = 1; d <= 6; ++d) out.push_back(hypersurface(d));
  return out;
}

/// Looks up a catalog entry by exact name or by a short alias: "BlP2"
/// (= Bl1P2), "X<d>" for the degree-d hypersurface, "quadric", "cubic",
/// "quartic" / "K3", "quintic", "sextic".
inline std::optional<SurfaceData> find_surface(std::string_view key) {
  std::string name(key);
  if (key == "BlP2") name = "Bl1P2";
  const std::pair<std::string_view, int> aliases[] = {
      {"plane", 1}, {"quadric", 2}, {"cubic", 3}, {"quartic", 4}, {"K3", 4}, {"quintic", 5}, {"sextic", 6}};
  for (auto [alias, d] : aliases)
    if (key == alias) name = hypersurface(d).name;
  if (key.size() >= 2 && key[0] == 'X' &&
      key.find_first_not_of("0123456789", 1) == std::string_view::npos && key.size() <= 3) {
    const auto d = std::stoll(std::string(key.substr(1)));
    if (d < 1) return std::nullopt;
    name = hypersurface(d).name;
  }
  for (auto& s : catalog())
    if (s.name == name) return s;
  return std::nullopt;
}

}  // namespace unimod
