#pragma once

// Point counts of explicit models of catalog surfaces over finite fields.
//
// Zeta functions are handled extensionally: a ZetaData is the sequence of
// counts over F_p, F_{p²}, F_{p³}. Every count is a plain enumeration of
// normalized projective representatives (first nonzero coordinate equal to
// 1); closed forms only ever appear in tests.

#include <algorithm>
#include <array>
#include <cstdint>
#include <functional>
#include <span>
#include <stdexcept>
#include <string>
#include <string_view>
#include <thread>
#include <vector>

#include "unimod/classification.hpp"
#include "unimod/error.hpp"
#include "unimod/finite_field.hpp"
#include "unimod/lattice.hpp"
#include "unimod/surfaces.hpp"

namespace unimod {

struct PointCount {
  std::string variety;
  std::uint64_t q = 0;
  std::uint64_t count = 0;
  friend bool operator==(const PointCount&, const PointCount&) = default;
};

struct ZetaData {
  std::string variety;
  std::uint32_t p = 0;
  std::vector<PointCount> counts;  // increasing q
};

using Element = FiniteField::Element;

/// Number of normalized representatives of Pⁿ(F_q), i.e. (q^(n+1) − 1)/(q − 1).
inline std::uint64_t projective_size(std::uint64_t q, std::size_t n) {
  std::uint64_t total = 0, block = 1;
  for (std::size_t i = 0; i <= n; ++i, block *= q) total += block;
  return total;
}

/// Writes the index-th normalized representative of Pⁿ(F_q) into `out`
/// (size n+1). Points with the leading 1 in position 0 come first; within a
/// block the free trailing coordinates run in base-q order.
inline void projective_point(std::uint64_t q, std::uint64_t index, std::span<Element> out) {
  const std::size_t n = out.size() - 1;
  std::size_t lead = 0;
  std::uint64_t block = 1;
  for (std::size_t i = 0; i < n; ++i) block *= q;
  while (index >= block) {
    index -= block;
    block /= q;
    ++lead;
  }
  for (std::size_t i = 0; i < lead; ++i) out[i] = 0;
  out[lead] = 1;
  for (std::size_t i = n; i > lead; --i) {
    out[i] = static_cast<Element>(index % q);
    index /= q;
  }
}

template <typename Fn>
void for_each_projective_point(std::uint64_t q, std::size_t n, Fn&& fn) {
  std::vector<Element> pt(n + 1);
  const std::uint64_t total = projective_size(q, n);
  for (std::uint64_t i = 0; i < total; ++i) {
    projective_point(q, i, pt);
    fn(std::span<const Element>(pt));
  }
}

inline PointCount count_p2(const FiniteField& f) {
  std::uint64_t n = 0;
  for_each_projective_point(f.order(), 2, [&](std::span<const Element>) { ++n; });
  return {"P2", f.order(), n};
}

inline PointCount count_p1xp1(const FiniteField& f) {
  std::uint64_t n = 0;
  for_each_projective_point(f.order(), 1, [&](std::span<const Element>) {
    for_each_projective_point(f.order(), 1, [&](std::span<const Element>) { ++n; });
  });
  return {"P1xP1", f.order(), n};
}

/// Blowup of P2 at [1:0:0] as the incidence variety
/// {([x0:x1:x2], [y0:y1]) : x1·y1 = x2·y0} ⊂ P2 × P1.
inline PointCount count_blowup_p2(const FiniteField& f) {
  std::uint64_t n = 0;
  for_each_projective_point(f.order(), 2, [&](std::span<const Element> x) {
    for_each_projective_point(f.order(), 1, [&](std::span<const Element> y) {
      if (f.mul(x[1], y[1]) == f.mul(x[2], y[0])) ++n;
    });
  });
  return {"Bl1P2", f.order(), n};
}

/// The first k points of P2(F_p) in enumeration order; these are the
/// centers used by count_blowup_p2_points for every extension of F_p.
inline std::vector<std::array<Element, 3>> blowup_centers(std::uint32_t p, std::size_t k) {
  if (k > projective_size(p, 2))
    throw DomainError(ErrorCode::UnsupportedModel,
                      "cannot blow up " + std::to_string(k) + " distinct F_" + std::to_string(p) +
                          "-rational points of P2");
  std::vector<std::array<Element, 3>> out(k);
  for (std::size_t i = 0; i < k; ++i) projective_point(p, i, out[i]);
  return out;
}

/// Blowup of P2 at k distinct F_p-rational points, as the fibre product of
/// the incidence varieties {(x, ℓ) : c_i ∈ ℓ, x ∈ ℓ} ⊂ P2 × P2ᵛ over P2.
/// For each x the fibre size is the product over the centers of the number
/// of lines through both c_i and x.
inline PointCount count_blowup_p2_points(const FiniteField& f, std::size_t k) {
  const auto centers = blowup_centers(f.characteristic(), k);
  std::vector<std::array<Element, 3>> lines;
  for_each_projective_point(f.order(), 2, [&](std::span<const Element> l) {
    lines.push_back({l[0], l[1], l[2]});
  });
  auto on = [&](const std::array<Element, 3>& l, std::span<const Element> x) {
    return f.add(f.add(f.mul(l[0], x[0]), f.mul(l[1], x[1])), f.mul(l[2], x[2])) == 0;
  };
  std::uint64_t n = 0;
  for_each_projective_point(f.order(), 2, [&](std::span<const Element> x) {
    std::uint64_t fibre = 1;
    for (const auto& c : centers) {
      std::uint64_t through = 0;
      for (const auto& l : lines)
        if (on(l, c) && on(l, x)) ++through;
      fibre *= through;
    }
    n += fibre;
  });
  return {"Bl" + std::to_string(k) + "P2", f.order(), n};
}

struct Monomial {
  Integer coefficient;
  std::array<unsigned, 4> exponents{};
};

/// Homogeneous polynomial in x0..x3 with integer coefficients.
class HomogeneousForm {
 public:
  explicit HomogeneousForm(std::vector<Monomial> terms) : terms_(std::move(terms)) {
    if (terms_.empty()) throw std::invalid_argument("HomogeneousForm: no terms");
    degree_ = total_degree(terms_.front());
    for (const auto& t : terms_)
      if (total_degree(t) != degree_)
        throw std::invalid_argument("HomogeneousForm: terms of different degrees");
  }

  /// x0^d + x1^d + x2^d + x3^d
  static HomogeneousForm fermat(unsigned d) {
    std::vector<Monomial> t(4);
    for (std::size_t i = 0; i < 4; ++i) {
      t[i].coefficient = 1;
      t[i].exponents[i] = d;
    }
    return HomogeneousForm(std::move(t));
  }

  unsigned degree() const noexcept { return degree_; }
  std::span<const Monomial> terms() const noexcept { return terms_; }

 private:
  static unsigned total_degree(const Monomial& m) {
    return m.exponents[0] + m.exponents[1] + m.exponents[2] + m.exponents[3];
  }
  std::vector<Monomial> terms_;
  unsigned degree_ = 0;
};

/// Zeros of `form` in P3(F_q). The representatives are split into contiguous
/// index ranges, one per worker; the partial counts are summed in range
/// order, so the result does not depend on `workers` (0 = hardware threads).
inline PointCount count_hypersurface_p3(const HomogeneousForm& form, const FiniteField& f,
                                        unsigned workers = 0, std::string variety = "hypersurface") {
  const std::uint32_t p = f.characteristic();
  struct Term {
    Element coefficient;
    std::array<unsigned, 4> exponents;
  };
  std::vector<Term> terms;
  for (const Monomial& m : form.terms()) {
    Integer r = m.coefficient % p;
    if (r < 0) r += p;
    if (r != 0) terms.push_back({static_cast<Element>(r), m.exponents});
  }
  if (terms.empty())
    throw DomainError(ErrorCode::ZeroForm, "form vanishes identically modulo " + std::to_string(p));

  const unsigned d = form.degree();
  const std::uint64_t q = f.order();
  const std::uint64_t total = projective_size(q, 3);

  auto count_range = [&](std::uint64_t begin, std::uint64_t end) {
    std::array<Element, 4> x{};
    std::vector<Element> powers(4 * (d + 1));
    std::uint64_t n = 0;
    for (std::uint64_t i = begin; i < end; ++i) {
      projective_point(q, i, x);
      for (std::size_t v = 0; v < 4; ++v) {
        powers[v * (d + 1)] = 1;
        for (unsigned e = 1; e <= d; ++e) powers[v * (d + 1) + e] = f.mul(powers[v * (d + 1) + e - 1], x[v]);
      }
      Element value = 0;
      for (const Term& t : terms) {
        Element m = t.coefficient;
        for (std::size_t v = 0; v < 4; ++v) m = f.mul(m, powers[v * (d + 1) + t.exponents[v]]);
        value = f.add(value, m);
      }
      if (value == 0) ++n;
    }
    return n;
  };

  if (workers == 0) workers = std::max(1u, std::thread::hardware_concurrency());
  workers = static_cast<unsigned>(std::min<std::uint64_t>(workers, total));
  std::vector<std::uint64_t> partial(workers, 0);
  {
    std::vector<std::jthread> pool;
    for (unsigned w = 1; w < workers; ++w)
      pool.emplace_back([&, w] { partial[w] = count_range(total * w / workers, total * (w + 1) / workers); });
    partial[0] = count_range(0, total / workers);
  }
  std::uint64_t n = 0;
  for (std::uint64_t c : partial) n += c;
  return {std::move(variety), q, n};
}

/// |N − 1 − q²| ≤ b2·q: Frobenius eigenvalues on H² have absolute value q,
/// H⁰ and H⁴ contribute 1 and q², and H¹ = H³ = 0.
inline bool weil_bound_check(const PointCount& c, std::int64_t b2) {
  const auto q = static_cast<std::int64_t>(c.q);
  const std::int64_t deviation = static_cast<std::int64_t>(c.count) - 1 - q * q;
  return (deviation < 0 ? -deviation : deviation) <= b2 * q;
}

/// Explicit model used for a catalog surface.
struct SurfaceModel {
  enum class Kind { ProjectivePlane, P1xP1, BlowupIncidence, BlowupPoints, FermatHypersurface };
  Kind kind;
  std::int64_t parameter = 0;  // number of points blown up, or the degree
};

inline SurfaceModel model_for(const SurfaceData& s) {
  using K = SurfaceModel::Kind;
  if (s.name == "P2") return {K::ProjectivePlane};
  if (s.name == "P1xP1") return {K::P1xP1};
  if (s.name == "Bl1P2") return {K::BlowupIncidence, 1};
  for (std::int64_t k = 2; k <= 9; ++k)
    if (s.name == "Bl" + std::to_string(k) + "P2") return {K::BlowupPoints, k};
  for (std::int64_t d = 1; d <= 6; ++d)
    if (s.name == hypersurface(d).name) return {K::FermatHypersurface, d};
  throw DomainError(ErrorCode::UnknownVariety, "no point-counting model for '" + s.name + "'");
}

/// Fermat models reduce badly exactly at primes dividing the degree; the
/// rational models are smooth over every prime.
inline bool has_good_reduction(const SurfaceModel& m, std::uint32_t p) {
  return m.kind != SurfaceModel::Kind::FermatHypersurface || m.parameter % p != 0;
}

/// True for the models whose H² is spanned by classes defined over F_p, so
/// that N = 1 + b2·q + q² holds exactly.
inline bool is_split_rational(const SurfaceModel& m) {
  return m.kind != SurfaceModel::Kind::FermatHypersurface;
}

inline PointCount count_variety(std::string_view id, const FiniteField& f, unsigned workers = 0) {
  const auto s = find_surface(id);
  if (!s) throw DomainError(ErrorCode::UnknownVariety, "unknown variety '" + std::string(id) + "'");
  const SurfaceModel m = model_for(*s);
  using K = SurfaceModel::Kind;
  PointCount c;
  switch (m.kind) {
    case K::ProjectivePlane: c = count_p2(f); break;
    case K::P1xP1: c = count_p1xp1(f); break;
    case K::BlowupIncidence: c = count_blowup_p2(f); break;
    case K::BlowupPoints: c = count_blowup_p2_points(f, static_cast<std::size_t>(m.parameter)); break;
    case K::FermatHypersurface:
      c = count_hypersurface_p3(HomogeneousForm::fermat(static_cast<unsigned>(m.parameter)), f, workers);
      break;
  }
  c.variety = s->name;
  return c;
}

inline ZetaData zeta_data(std::string_view id, std::uint32_t p, std::uint32_t max_degree) {
  ZetaData z;
  z.p = p;
  for (std::uint32_t k = 1; k <= max_degree; ++k) {
    z.counts.push_back(count_variety(id, field_build(p, k)));
    z.variety = z.counts.back().variety;
  }
  return z;
}

struct CounterexampleRow {
  std::uint32_t p = 0;
  std::uint32_t k = 0;
  std::uint64_t q = 0;
  std::uint64_t count_p1xp1 = 0;
  std::uint64_t count_blowup = 0;
};

struct CounterexampleReport {
  SurfaceData first = p1_x_p1();
  SurfaceData second = blow_up(projective_plane(), 1);
  std::vector<std::uint32_t> primes;
  std::vector<CounterexampleRow> rows;
  bool counts_equal = true;
  bool homeomorphic = false;
  FormClass first_class;
  FormClass second_class;
  std::string conclusion;
};

/// Counts P1×P1 and the one-point blowup of P2 over F_{p^k} for every listed
/// prime and k ≤ degrees, next to the homeomorphism verdict for the pair.
inline CounterexampleReport counterexample_report(std::span<const std::uint32_t> primes,
                                                  std::uint32_t degrees) {
  if (primes.empty()) throw std::invalid_argument("counterexample_report: no primes given");
  if (degrees < 1 || degrees > 3)
    throw DomainError(ErrorCode::UnsupportedDegree,
                      "extension degree " + std::to_string(degrees) + " is outside 1..3");
  CounterexampleReport r;
  r.primes.assign(primes.begin(), primes.end());
  for (std::uint32_t p : primes) {
    for (std::uint32_t k = 1; k <= degrees; ++k) {
      const FiniteField f = field_build(p, k);
      CounterexampleRow row{p, k, f.order(), count_p1xp1(f).count, count_blowup_p2(f).count};
      r.counts_equal = r.counts_equal && row.count_p1xp1 == row.count_blowup;
      r.rows.push_back(row);
    }
  }
  r.homeomorphic = homeomorphic(r.first, r.second);
  r.first_class = intersection_form_class(r.first);
  r.second_class = intersection_form_class(r.second);
  if (r.counts_equal && !r.homeomorphic)
    r.conclusion = "equal point counts over every field checked, but not homeomorphic: "
                   "the zeta function does not determine the homeomorphism type";
  else if (!r.counts_equal)
    r.conclusion = "point counts differ; no counterexample at the fields checked";
  else
    r.conclusion = "equal point counts and homeomorphic; no counterexample";
  return r;
}

}  // namespace unimod
