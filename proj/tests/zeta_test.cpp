#include <algorithm>
#include <array>
#include <cstdint>
#include <set>
#include <string>
#include <vector>

#include <gtest/gtest.h>

#include "oracles.hpp"
#include "unimod/error.hpp"
#include "unimod/io.hpp"
#include "unimod/surfaces.hpp"
#include "unimod/zeta.hpp"

namespace unimod {
namespace {

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

ErrorCode error_of(auto&& fn) {
  try {
    fn();
  } catch (const DomainError& e) {
    return e.code();
  }
  ADD_FAILURE() << "expected a DomainError";
  return ErrorCode::MalformedInput;
}

TEST(ProjectiveEnumeration, CountsAndNormalization) {
  for (const FiniteField& f : fields_up_to(27)) {
    const std::uint64_t q = f.order();
    for (std::size_t n = 0; n <= 3; ++n) {
      std::uint64_t count = 0, expected = 1;
      for (std::size_t i = 0; i <= n; ++i) expected *= q;
      expected = (expected - 1) / (q - 1);
      std::set<std::vector<Element>> seen;
      for_each_projective_point(q, n, [&](std::span<const Element> x) {
        ++count;
        std::size_t lead = 0;
        while (x[lead] == 0) ++lead;
        ASSERT_EQ(x[lead], 1u);
        if (q <= 9) seen.emplace(x.begin(), x.end());
      });
      EXPECT_EQ(count, expected) << "q=" << q << " n=" << n;
      EXPECT_EQ(projective_size(q, n), expected);
      if (q <= 9) { EXPECT_EQ(seen.size(), expected); }
    }
  }
}

TEST(CountP1xP1, Examples) {
  EXPECT_EQ(count_p1xp1(field_build(2, 1)).count, 9u);
  EXPECT_EQ(count_p1xp1(field_build(3, 1)).count, 16u);
  EXPECT_EQ(count_p1xp1(field_build(3, 2)).count, 100u);
}

TEST(CountP1xP1, ClosedForm) {
  for (const FiniteField& f : fields_up_to(343)) {
    const std::uint64_t q = f.order();
    EXPECT_EQ(count_p1xp1(f).count, (q + 1) * (q + 1)) << "q=" << q;
  }
}

TEST(CountBlowupP2, Examples) {
  EXPECT_EQ(count_blowup_p2(field_build(2, 1)).count, 9u);
  EXPECT_EQ(count_blowup_p2(field_build(3, 1)).count, 16u);
}

TEST(CountBlowupP2, AgreesWithP1xP1UpTo49) {
  for (const FiniteField& f : fields_up_to(49))
    EXPECT_EQ(count_blowup_p2(f).count, count_p1xp1(f).count) << "q=" << f.order();
}

TEST(CountBlowupP2Points, SplitRationalCounts) {
  for (const FiniteField& f : fields_up_to(9)) {
    const std::uint64_t q = f.order();
    EXPECT_EQ(count_blowup_p2_points(f, 1).count, count_blowup_p2(f).count);
    for (std::size_t k = 0; k <= 7; ++k)
      EXPECT_EQ(count_blowup_p2_points(f, k).count, q * q + q + 1 + k * q) << "q=" << q << " k=" << k;
  }
  EXPECT_EQ(error_of([] { count_blowup_p2_points(field_build(2, 2), 8); }), ErrorCode::UnsupportedModel);
}

TEST(CountHypersurface, Examples) {
  const HomogeneousForm x0(std::vector<Monomial>{{1, {1, 0, 0, 0}}});
  EXPECT_EQ(count_hypersurface_p3(x0, field_build(3, 1)).count, 13u);

  const auto golden = load_golden_counts(UNIMOD_DATA_DIR "/golden.json");
  const auto it = std::find_if(golden.begin(), golden.end(), [](const PointCount& c) {
    return c.variety == hypersurface(4).name && c.q == 5;
  });
  ASSERT_NE(it, golden.end());
  EXPECT_EQ(oracle::fermat_count_naive(4, 5), it->count);
  EXPECT_EQ(count_hypersurface_p3(HomogeneousForm::fermat(4), field_build(5, 1)).count, it->count);

  const FiniteField f3 = field_build(3, 1);
  EXPECT_EQ(count_hypersurface_p3(HomogeneousForm::fermat(2), f3).count, 16u);
  EXPECT_EQ(count_hypersurface_p3(HomogeneousForm::fermat(2), f3).count, count_p1xp1(f3).count);
}

TEST(CountHypersurface, GoldenValuesMatchOracleAndImplementation) {
  for (const PointCount& g : load_golden_counts(UNIMOD_DATA_DIR "/golden.json")) {
    unsigned d = 0;
    for (unsigned k = 1; k <= 6; ++k)
      if (hypersurface(k).name == g.variety) d = k;
    ASSERT_NE(d, 0u) << g.variety;
    EXPECT_EQ(oracle::fermat_count_naive(d, g.q), g.count) << g.variety << " q=" << g.q;
    EXPECT_EQ(count_hypersurface_p3(HomogeneousForm::fermat(d), field_build(static_cast<std::uint32_t>(g.q), 1)).count,
              g.count);
  }
}

TEST(CountHypersurface, PrimeFieldsAgreeWithNaiveOracle) {
  for (std::uint32_t p : {2u, 3u, 5u, 7u, 11u})
    for (unsigned d = 1; d <= 6; ++d)
      EXPECT_EQ(count_hypersurface_p3(HomogeneousForm::fermat(d), field_build(p, 1)).count,
                oracle::fermat_count_naive(d, p))
          << "d=" << d << " p=" << p;
}

TEST(CountHypersurface, HyperplaneOverExtensions) {
  const HomogeneousForm plane({{1, {1, 0, 0, 0}}, {1, {0, 1, 0, 0}}, {-1, {0, 0, 0, 1}}});
  for (const FiniteField& f : fields_up_to(27)) {
    const std::uint64_t q = f.order();
    EXPECT_EQ(count_hypersurface_p3(plane, f).count, q * q + q + 1);
  }
}

TEST(CountHypersurface, Errors) {
  const HomogeneousForm five_x0({{5, {1, 0, 0, 0}}, {10, {0, 1, 0, 0}}});
  EXPECT_EQ(error_of([&] { count_hypersurface_p3(five_x0, field_build(5, 1)); }), ErrorCode::ZeroForm);
  EXPECT_NO_THROW(count_hypersurface_p3(five_x0, field_build(3, 1)));
  EXPECT_THROW(HomogeneousForm({{1, {2, 0, 0, 0}}, {1, {1, 0, 0, 0}}}), std::invalid_argument);
}

TEST(CountHypersurface, IndependentOfWorkerCount) {
  const FiniteField f = field_build(3, 3);
  const HomogeneousForm quartic = HomogeneousForm::fermat(4);
  const std::uint64_t serial = count_hypersurface_p3(quartic, f, 1).count;
  for (unsigned w : {2u, 3u, 5u, 8u}) EXPECT_EQ(count_hypersurface_p3(quartic, f, w).count, serial);
}

TEST(WeilBound, Examples) {
  EXPECT_TRUE(weil_bound_check({"P1xP1", 3, 16}, 2));
  EXPECT_TRUE(weil_bound_check({"P2", 2, 7}, 1));
  EXPECT_TRUE(weil_bound_check({hypersurface(4).name, 5, oracle::fermat_count_naive(4, 5)}, 22));
  EXPECT_FALSE(weil_bound_check({"fake", 3, 17}, 2));
  EXPECT_FALSE(weil_bound_check({"fake", 3, 3}, 2));
}

TEST(CatalogModels, WeilBoundAtGoodPrimes) {
  for (const FiniteField& f : fields_up_to(9)) {
    for (const SurfaceData& s : catalog()) {
      const SurfaceModel m = model_for(s);
      if (!has_good_reduction(m, f.characteristic())) continue;
      if (m.kind == SurfaceModel::Kind::BlowupPoints &&
          static_cast<std::uint64_t>(m.parameter) > projective_size(f.characteristic(), 2))
        continue;
      const PointCount c = count_variety(s.name, f);
      const std::int64_t b2 = compute_invariants(s).b2;
      EXPECT_TRUE(weil_bound_check(c, b2)) << s.name << " q=" << f.order();
      const std::uint64_t q = f.order();
      if (is_split_rational(m)) { EXPECT_EQ(c.count, 1 + static_cast<std::uint64_t>(b2) * q + q * q) << s.name; }
    }
  }
}

TEST(CatalogModels, UnknownVariety) {
  EXPECT_EQ(error_of([] { count_variety("Enriques", field_build(3, 1)); }), ErrorCode::UnknownVariety);
  EXPECT_EQ(error_of([] { model_for({"custom", 8, 4, false}); }), ErrorCode::UnknownVariety);
}

TEST(ZetaData, CountsOverTheTower) {
  const ZetaData z = zeta_data("BlP2", 3, 3);
  EXPECT_EQ(z.variety, "Bl1P2");
  EXPECT_EQ(z.p, 3u);
  ASSERT_EQ(z.counts.size(), 3u);
  EXPECT_EQ(z.counts[0].q, 3u);
  EXPECT_EQ(z.counts[1].q, 9u);
  EXPECT_EQ(z.counts[2].q, 27u);
  EXPECT_EQ(z.counts[2].count, 28u * 28u);
  const ZetaData other = zeta_data("P1xP1", 3, 3);
  for (std::size_t i = 0; i < 3; ++i) EXPECT_EQ(z.counts[i].count, other.counts[i].count);
}

TEST(CounterexampleReport, Examples) {
  const std::array<std::uint32_t, 1> three{3};
  const CounterexampleReport r = counterexample_report(three, 2);
  ASSERT_EQ(r.rows.size(), 2u);
  EXPECT_EQ(r.rows[0].q, 3u);
  EXPECT_EQ(r.rows[0].count_p1xp1, 16u);
  EXPECT_EQ(r.rows[0].count_blowup, 16u);
  EXPECT_EQ(r.rows[1].q, 9u);
  EXPECT_EQ(r.rows[1].count_p1xp1, 100u);
  EXPECT_EQ(r.rows[1].count_blowup, 100u);
  EXPECT_TRUE(r.counts_equal);
  EXPECT_FALSE(r.homeomorphic);
  EXPECT_EQ(r.first_class, FormClass(IndefiniteEven{0, 1}));
  EXPECT_EQ(r.second_class, FormClass(IndefiniteOdd{1, 1}));
  EXPECT_NE(r.conclusion.find("does not determine"), std::string::npos);

  const std::array<std::uint32_t, 1> two{2};
  const CounterexampleReport r2 = counterexample_report(two, 1);
  ASSERT_EQ(r2.rows.size(), 1u);
  EXPECT_EQ(r2.rows[0].count_p1xp1, 9u);
  EXPECT_EQ(r2.rows[0].count_blowup, 9u);
  EXPECT_FALSE(r2.homeomorphic);
}

TEST(CounterexampleReport, Errors) {
  EXPECT_THROW(counterexample_report(std::span<const std::uint32_t>{}, 1), std::invalid_argument);
  const std::array<std::uint32_t, 1> four{4};
  EXPECT_EQ(error_of([&] { counterexample_report(four, 1); }), ErrorCode::NotPrime);
  const std::array<std::uint32_t, 1> three{3};
  EXPECT_EQ(error_of([&] { counterexample_report(three, 4); }), ErrorCode::UnsupportedDegree);
}

}  // namespace
}  // namespace unimod
