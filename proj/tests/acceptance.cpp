// Acceptance suite. One line per criterion; nonzero exit if any fails.

#include <array>
#include <chrono>
#include <cstdint>
#include <cstdio>
#include <cstdlib>
#include <exception>
#include <functional>
#include <random>
#include <sstream>
#include <string>
#include <vector>

#include "oracles.hpp"
#include "unimod/classification.hpp"
#include "unimod/error.hpp"
#include "unimod/io.hpp"
#include "unimod/lattice.hpp"
#include "unimod/surfaces.hpp"
#include "unimod/zeta.hpp"

using namespace unimod;

namespace {

class Check {
 public:
  void expect(bool ok, const std::string& what) {
    ++checks_;
    if (!ok && failures_.size() < 5) failures_.push_back(what);
    if (!ok) ++failed_;
  }
  std::size_t checks() const { return checks_; }
  std::size_t failed() const { return failed_; }
  const std::vector<std::string>& failures() const { return failures_; }

 private:
  std::size_t checks_ = 0, failed_ = 0;
  std::vector<std::string> failures_;
};

struct Criterion {
  const char* id;
  const char* title;
  double limit_seconds;
  std::function<void(Check&)> body;
};

template <typename T>
std::string str(const T& v) {
  std::ostringstream s;
  s << v;
  return s.str();
}

std::vector<FiniteField> fields_up_to(std::uint64_t max_q) {
  std::vector<FiniteField> out;
  for (std::uint32_t p = 2; p <= max_q; ++p) {
    if (!is_prime(p)) continue;
    std::uint64_t q = 1;
    for (std::uint32_t k = 1; k <= 3; ++k) {
      q *= p;
      if (q <= max_q) out.push_back(field_build(p, k));
    }
  }
  return out;
}

ErrorCode error_of(const std::function<void()>& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    return e.code();
  }
  return ErrorCode::MalformedInput;
}

void counterexample(Check& c) {
  const std::array<std::uint32_t, 4> primes{2, 3, 5, 7};
  const CounterexampleReport r = counterexample_report(primes, 2);
  c.expect(r.rows.size() == 8, "eight (p, k) rows");
  for (const auto& row : r.rows) {
    c.expect(row.count_p1xp1 == row.count_blowup,
             "q=" + str(row.q) + ": " + str(row.count_p1xp1) + " vs " + str(row.count_blowup));
    c.expect(row.count_p1xp1 == (row.q + 1) * (row.q + 1), "q=" + str(row.q) + " closed form");
    if (row.q == 2) c.expect(row.count_p1xp1 == 9, "9 points at q=2");
    if (row.q == 3) c.expect(row.count_p1xp1 == 16, "16 points at q=3");
    if (row.q == 9) c.expect(row.count_p1xp1 == 100, "100 points at q=9");
  }
  c.expect(r.counts_equal, "counts_equal");
  c.expect(!r.homeomorphic, "homeomorphic must be false");
  c.expect(!homeomorphic(p1_x_p1(), blow_up(projective_plane(), 1)), "homeomorphic(P1xP1, Bl1P2)");
  c.expect(r.first_class == FormClass(IndefiniteEven{0, 1}), "P1xP1 class " + to_string(r.first_class));
  c.expect(r.second_class == FormClass(IndefiniteOdd{1, 1}), "Bl1P2 class " + to_string(r.second_class));
}

void signature_formula(Check& c) {
  for (std::int64_t d = 1; d <= 12; ++d) {
    const SurfaceData s = hypersurface(d);
    const auto [c1_sq, c2] = oracle::hypersurface_chern_numbers(d);
    c.expect(s.c1_sq == c1_sq && s.c2 == c2, "Chern numbers d=" + str(d));
    const std::int64_t numerator = d * (2 - d) * (2 + d);
    c.expect(numerator % 3 == 0, "d(2-d)(2+d) divisible by 3 at d=" + str(d));
    c.expect(compute_invariants(s).sigma == numerator / 3, "sigma d=" + str(d));
  }
  const SurfaceInvariants k3 = compute_invariants(hypersurface(4));
  c.expect(k3.b2 == 22 && k3.sigma == -16 && k3.parity == Parity::Even, "K3 (b2, sigma, parity)");
  c.expect(intersection_form_class(hypersurface(4)) == FormClass(IndefiniteEven{-2, 3}), "K3 class");
}

GramMatrix random_nondegenerate(std::mt19937_64& rng, std::size_t n) {
  for (;;) {
    GramMatrix m = GramMatrix::identity(n);
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) m.set(i, j, static_cast<long>(rng() % 7) - 3);
    if (determinant(m) != 0) return m;
  }
}

void basis_invariance(Check& c) {
  std::mt19937_64 rng(20240601);
  const std::vector<GramMatrix> fixed{hyperbolic_plane(), GramMatrix::diagonal({1, -1, -1}),
                                      GramMatrix::diagonal({1, 1, 1, -1, 1}), GramMatrix::diagonal({2, -3})};
  for (int trial = 0; trial < 1000; ++trial) {
    const std::size_t n = 1 + rng() % 5;
    const GramMatrix m = trial % 4 == 0 ? fixed[static_cast<std::size_t>(trial / 4) % fixed.size()]
                                        : random_nondegenerate(rng, n);
    const std::size_t steps = 1 + rng() % 100;
    const UnimodularTransform t = random_unimodular_congruence(m, rng(), steps);
    const FormInvariants a = invariants(m), b = invariants(t.result);
    const std::string tag = "trial " + str(trial);
    c.expect(GramMatrix::congruent(m, t.basis) == t.result, tag + ": result = PᵀAP");
    c.expect(abs(determinant(t.basis)) == 1, tag + ": det P = ±1");
    c.expect(a.rank == b.rank, tag + ": rank");
    c.expect(a.b_plus == b.b_plus && a.b_minus == b.b_minus, tag + ": b±");
    c.expect(a.signature == b.signature, tag + ": signature");
    c.expect(a.parity == b.parity, tag + ": parity");
    c.expect(abs(a.determinant) == abs(b.determinant), tag + ": |det|");
  }
}

std::vector<FormClass> class_grid(std::int64_t max_rank) {
  std::vector<FormClass> grid;
  for (std::int64_t p = 1; p < max_rank; ++p)
    for (std::int64_t m = 1; p + m <= max_rank; ++m) grid.push_back(IndefiniteOdd{p, m});
  for (std::int64_t e = -3; e <= 3; ++e)
    for (std::int64_t h = 1; 8 * (e < 0 ? -e : e) + 2 * h <= max_rank; ++h) grid.push_back(IndefiniteEven{e, h});
  for (std::int64_t r = 1; r <= max_rank; ++r) {
    grid.push_back(DefiniteDiagonal{1, r});
    grid.push_back(DefiniteDiagonal{-1, r});
  }
  return grid;
}

void round_trip(Check& c) {
  const auto grid = class_grid(26);
  c.expect(grid.size() > 400, "grid size " + str(grid.size()));
  for (const FormClass& cls : grid) {
    const GramMatrix g = canonical_gram(cls);
    c.expect(static_cast<std::int64_t>(g.rank()) == class_rank(cls), to_string(cls) + ": rank");
    c.expect(classify_gram(g, ClassificationMode::SmoothFourManifold) == cls, to_string(cls) + " (smooth)");
    if (!std::holds_alternative<DefiniteDiagonal>(cls))
      c.expect(classify_gram(g, ClassificationMode::AbstractLattice) == cls, to_string(cls) + " (abstract)");
  }
}

void serre_consistency(Check& c) {
  std::vector<GramMatrix> forms;
  for (long a = -2; a <= 2; ++a)
    for (long b = -2; b <= 2; ++b)
      for (long d = -2; d <= 2; ++d)
        if (a * d - b * b == -1) forms.push_back(GramMatrix{{a, b}, {b, d}});
  c.expect(forms.size() == 20, "rank-2 indefinite unimodular forms: " + str(forms.size()));
  std::size_t witnessed = 0;
  for (const GramMatrix& x : forms)
    for (const GramMatrix& y : forms) {
      const auto p = brute_force_isometry(x, y, 6);
      if (!p) continue;
      ++witnessed;
      c.expect(GramMatrix::congruent(x, *p) == y, "witness is an isometry");
      c.expect(forms_isomorphic(x, y, ClassificationMode::AbstractLattice),
               "witnessed pair classified apart: " + gram_to_json(x) + " " + gram_to_json(y));
    }
  c.expect(witnessed >= forms.size(), "every form is witnessed isometric to itself");
}

void parity_corpus(Check& c) {
  std::vector<GramMatrix> corpus{e8_gram(), e8_gram().negated(), direct_sum(e8_gram(), e8_gram())};
  for (const FormClass& cls : class_grid(26))
    if (std::holds_alternative<IndefiniteEven>(cls)) corpus.push_back(canonical_gram(cls));
  std::mt19937_64 rng(8);
  const std::size_t canonical = corpus.size();
  for (std::size_t i = 0; i < canonical; ++i)
    corpus.push_back(random_unimodular_transform(corpus[i], rng(), 50));

  // Every even symmetric matrix of rank ≤ 3 with entries in [-2, 2] and
  // rank 4 with off-diagonal entries in [-1, 1].
  auto sweep = [&](std::size_t n, long lo, long hi) {
    std::vector<std::pair<std::size_t, std::size_t>> cells;
    for (std::size_t i = 0; i < n; ++i)
      for (std::size_t j = i; j < n; ++j) cells.emplace_back(i, j);
    std::vector<long> v(cells.size());
    std::function<void(std::size_t)> rec = [&](std::size_t idx) {
      if (idx == cells.size()) {
        GramMatrix m = GramMatrix::identity(n);
        for (std::size_t t = 0; t < cells.size(); ++t) m.set(cells[t].first, cells[t].second, v[t]);
        if (abs(oracle::cofactor_determinant(oracle::rows_of(m))) == 1) corpus.push_back(m);
        return;
      }
      const bool diag = cells[idx].first == cells[idx].second;
      for (long x = diag ? -2 : lo; x <= (diag ? 2 : hi); x += diag ? 2 : 1) {
        v[idx] = x;
        rec(idx + 1);
      }
    };
    rec(0);
  };
  for (std::size_t n = 1; n <= 3; ++n) sweep(n, -2, 2);
  sweep(4, -1, 1);

  std::size_t even = 0;
  for (const GramMatrix& m : corpus) {
    if (parity(m) != Parity::Even) continue;
    if (m.rank() <= 12) c.expect(oracle::even_by_enumeration(m), "parity agrees with enumeration");
    ++even;
    const FormInvariants inv = invariants(m);
    c.expect(inv.signature % 8 == 0, "even unimodular " + gram_to_json(m) + " sigma " + str(inv.signature));
  }
  c.expect(even > canonical, "corpus holds " + str(even) + " even unimodular matrices");

  FormInvariants synthetic;
  synthetic.rank = 10;
  synthetic.signature = 2;
  synthetic.b_plus = 6;
  synthetic.b_minus = 4;
  synthetic.parity = Parity::Even;
  synthetic.determinant = 1;
  for (auto mode : {ClassificationMode::AbstractLattice, ClassificationMode::SmoothFourManifold})
    c.expect(error_of([&] { classify_form(synthetic, mode); }) == ErrorCode::InconsistentEvenSignature,
             std::string("synthetic (10, 2, Even) rejected in ") + to_string(mode));
}

void weil_bounds(Check& c) {
  std::size_t counted = 0;
  for (const FiniteField& f : fields_up_to(27)) {
    const std::uint64_t q = f.order();
    for (const SurfaceData& s : catalog()) {
      const SurfaceModel m = model_for(s);
      if (!has_good_reduction(m, f.characteristic())) continue;
      if (m.kind == SurfaceModel::Kind::BlowupPoints &&
          static_cast<std::uint64_t>(m.parameter) > projective_size(f.characteristic(), 2))
        continue;  // not enough rational centres over F_p
      const PointCount n = count_variety(s.name, f);
      const std::int64_t b2 = compute_invariants(s).b2;
      ++counted;
      c.expect(weil_bound_check(n, b2), s.name + " q=" + str(q) + " N=" + str(n.count));
      if (is_split_rational(m))
        c.expect(n.count == 1 + static_cast<std::uint64_t>(b2) * q + q * q, s.name + " split count q=" + str(q));
    }
  }
  c.expect(counted > 150, "counted " + str(counted) + " (variety, q) pairs");

  const auto golden = load_golden_counts(UNIMOD_DATA_DIR "/golden.json");
  bool found = false;
  for (const PointCount& g : golden) {
    if (g.variety != hypersurface(4).name || g.q != 5) continue;
    found = true;
    const std::uint64_t n = count_variety("K3", field_build(5, 1)).count;
    c.expect(n == g.count, "Fermat quartic q=5: " + str(n) + " vs golden " + str(g.count));
    c.expect(oracle::fermat_count_naive(4, 5) == g.count, "golden agrees with naive enumeration");
  }
  c.expect(found, "golden value for the Fermat quartic at q=5 present");
}

void coincidences(Check& c) {
  const SurfaceData cubic = hypersurface(3), bl6 = blow_up(projective_plane(), 6);
  c.expect(homeomorphic(cubic, bl6), "cubic vs Bl6P2 homeomorphic");
  const SurfaceInvariants a = compute_invariants(hypersurface(2)), b = compute_invariants(p1_x_p1());
  c.expect(a.b2 == b.b2 && a.sigma == b.sigma && a.parity == b.parity, "quadric vs P1xP1 invariant triple");
  c.expect(homeomorphic(hypersurface(2), p1_x_p1()), "quadric vs P1xP1 homeomorphic");
}

}  // namespace

int main() {
  std::setvbuf(stdout, nullptr, _IOLBF, 0);
  const std::vector<Criterion> criteria{
      {"AC1", "equal point counts, P1xP1 vs Bl1P2, not homeomorphic", 5, counterexample},
      {"AC2", "signature of degree-d surfaces, K3 invariants", 1, signature_formula},
      {"AC3", "basis-change invariance, 1000 trials", 30, basis_invariance},
      {"AC4", "classification round trip, rank <= 26", 10, round_trip},
      {"AC5", "brute-force isometry implies same class, rank 2", 60, serre_consistency},
      {"AC6", "even unimodular forms have signature = 0 mod 8", 60, parity_corpus},
      {"AC7", "Weil bounds and split counts at q <= 27, golden quartic", 60, weil_bounds},
      {"AC8", "cubic ~ Bl6P2, quadric ~ P1xP1", 1, coincidences},
  };

  int failed = 0;
  for (const Criterion& cr : criteria) {
    Check check;
    std::string error;
    const auto start = std::chrono::steady_clock::now();
    try {
      cr.body(check);
    } catch (const std::exception& e) {
      error = e.what();
    }
    const double seconds = std::chrono::duration<double>(std::chrono::steady_clock::now() - start).count();
    const bool in_time = seconds < cr.limit_seconds;
    const bool pass = error.empty() && check.failed() == 0 && in_time;
    if (!pass) ++failed;
    std::printf("[%s] %s %s (%zu checks, %.3f s, limit %.0f s)\n", pass ? "PASS" : "FAIL", cr.id, cr.title,
                check.checks(), seconds, cr.limit_seconds);
    if (!error.empty()) std::printf("       exception: %s\n", error.c_str());
    if (!in_time) std::printf("       over the time limit\n");
    for (const auto& f : check.failures()) std::printf("       %s\n", f.c_str());
  }
  std::printf("%d of %zu criteria failed\n", failed, criteria.size());
  return failed == 0 ? EXIT_SUCCESS : EXIT_FAILURE;
}
