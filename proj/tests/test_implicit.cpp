#include <gtest/gtest.h>

#include "support/properties.hpp"
#include "x0n/arith.hpp"
#include "x0n/implicit.hpp"

using namespace x0n;

namespace {

HomogPoly3 poly(int d, std::initializer_list<std::pair<HomogPoly3::Exponents, long>> terms) {
  HomogPoly3::Terms t;
  for (const auto& [e, c] : terms) t.emplace(e, c);
  return HomogPoly3(d, std::move(t));
}

}  // namespace

TEST(HomogPoly3, NormalizeAndText) {
  auto p = poly(2, {{{0, 1, 1}, 4}, {{2, 0, 0}, -6}});
  EXPECT_FALSE(p.is_normalized());
  p.normalize();
  EXPECT_TRUE(p.is_normalized());
  EXPECT_EQ(p.coeff({2, 0, 0}), 3);
  EXPECT_EQ(p.coeff({0, 1, 1}), -2);
  EXPECT_EQ(p.to_text(), "2 0 0 3\n0 1 1 -2\n");
  EXPECT_THROW(poly(2, {{{1, 0, 0}, 1}}), std::invalid_argument);
}

TEST(HomogPoly3, PermuteAndEvaluate) {
  const auto p = poly(2, {{{2, 0, 0}, 1}, {{0, 1, 1}, -1}});
  const auto f = LaurentSeries::from_integers(0, {1, 2}, 5);
  const auto g = LaurentSeries::from_integers(0, {3}, 5);
  const auto h = LaurentSeries::from_integers(1, {1}, 5);
  const auto q = p.permuted({2, 0, 1});
  EXPECT_EQ(q.coeff({0, 2, 0}), 1);
  EXPECT_EQ(q.coeff({1, 0, 1}), -1);
  EXPECT_EQ(q.evaluate(h, f, g), p.evaluate(f, g, h));
}

TEST(Implicit, MonomialOrder) {
  const auto m = monomials_of_degree(2);
  ASSERT_EQ(m.size(), 6u);
  EXPECT_EQ(m.front(), (HomogPoly3::Exponents{2, 0, 0}));
  EXPECT_EQ(m.back(), (HomogPoly3::Exponents{0, 0, 2}));
  EXPECT_EQ(monomials_of_degree(6).size(), 28u);
}

TEST(Implicit, RequiredPrecision) {
  EXPECT_EQ(required_precision(2, 12, 3), 35);
  EXPECT_EQ(required_precision(3, 24, 6), 92);
  for (std::int64_t n = 2; n < 30; ++n) {
    EXPECT_EQ(required_precision(n, 12, 1), 3 + arith::psi(n) + 16);
  }
}

TEST(Implicit, DegreePrediction) {
  EXPECT_EQ(degree_prediction_family(5, ModelFamily::weight12_ab), 6);
  EXPECT_EQ(degree_prediction_family(2, ModelFamily::weight24_j), 4);
  EXPECT_EQ(degree_prediction_family(11, ModelFamily::weight12_ab), 12);
}

TEST(Implicit, DegenerateTripleHasLinearRelation) {
  const std::int64_t prec = required_precision(1, 12, 1);
  const auto d = delta(prec);
  const auto e = e4_cubed(prec);
  const auto space = vanishing_space(d, d, e, 1, prec);
  ASSERT_EQ(space.size(), 1u);
  EXPECT_EQ(space[0], poly(1, {{{1, 0, 0}, 1}, {{0, 1, 0}, -1}}));
  EXPECT_THROW(minimal_model(d, d, e, 3), std::invalid_argument);
}

TEST(Implicit, BelowMinimalDegreeIsEmpty) {
  const auto t = weight12_ab_triple(3, -1, -1, 4);
  for (int d = 1; d < 4; ++d) {
    EXPECT_TRUE(vanishing_space(t[0], t[1], t[2], d, required_precision(3, 12, d)).empty()) << d;
  }
  EXPECT_THROW(vanishing_space(t[0], t[1], t[2], 2, required_precision(3, 12, 2) - 1), std::invalid_argument);
}

TEST(Implicit, Weight12ModelLevelTwo) {
  const auto t = weight12_ab_triple(2, -1, -1, 3);
  const auto r = minimal_model(t[0], t[1], t[2], 3, {ModelFamily::weight12_ab, true});
  EXPECT_EQ(r.found_degree, 3);
  EXPECT_EQ(r.predicted_degree, 3);
  EXPECT_EQ(r.kernel_dim, 1u);
  EXPECT_TRUE(r.integral);
  EXPECT_TRUE(r.minimality_certified);
  EXPECT_TRUE(r.equation.is_normalized());
  EXPECT_TRUE(r.equation.evaluate(t[0].series, t[1].series, t[2].series).is_zero());
}

TEST(Implicit, ScreenDoesNotChangeTheAnswer) {
  const auto t = weight12_ab_triple(5, 1, 2, 6);
  const auto a = minimal_model(t[0], t[1], t[2], 6, {std::nullopt, true});
  const auto b = minimal_model(t[0], t[1], t[2], 6, {std::nullopt, false});
  EXPECT_EQ(a.found_degree, b.found_degree);
  EXPECT_EQ(a.equation, b.equation);
}

TEST(Implicit, Weight24ModelLevelTwo) {
  const auto t = weight24_j_triple(2, 4);
  const auto r = minimal_model(t[0], t[1], t[2], 4, {ModelFamily::weight24_j, true});
  EXPECT_EQ(r.found_degree, 4);
  EXPECT_EQ(r.predicted_degree, 4);
  EXPECT_EQ(r.kernel_dim, 1u);
}

TEST(Implicit, NoRelationBelowDMax) {
  const auto t = weight12_ab_triple(3, -1, -1, 4);
  EXPECT_THROW(minimal_model(t[0], t[1], t[2], 3), std::runtime_error);
}

TEST(Implicit, CandidateOrder) {
  const auto c = ab_candidates(1);
  ASSERT_EQ(c.size(), 8u);
  EXPECT_EQ(c.front(), (std::pair<long, long>{-1, -1}));
  EXPECT_EQ(ab_candidates(3).size(), 48u);
  EXPECT_TRUE(ab_candidates(0).empty());
  EXPECT_THROW(search_ab(2, 0), std::invalid_argument);
}

TEST(Implicit, SearchLevelsTwoAndThree) {
  for (std::int64_t n : {2, 3}) {
    const auto res = search_ab(n, 3, {0, 1, {}});
    ASSERT_FALSE(res.hits.empty()) << n;
    EXPECT_EQ(res.hits.size() + res.rejected.size(), 48u);
    for (const auto& h : res.hits) {
      EXPECT_EQ(h.report.found_degree, arith::psi(n));
      EXPECT_EQ(h.report.kernel_dim, 1u);
      EXPECT_TRUE(h.report.equation.is_normalized());
      EXPECT_TRUE(h.report.integral);
    }
  }
}

TEST(Implicit, SearchIsDeterministicAcrossJobCounts) {
  const auto a = search_ab(4, 2, {0, 1, {}});
  const auto b = search_ab(4, 2, {0, 3, {}});
  ASSERT_EQ(a.hits.size(), b.hits.size());
  for (std::size_t i = 0; i < a.hits.size(); ++i) {
    EXPECT_EQ(a.hits[i].alpha, b.hits[i].alpha);
    EXPECT_EQ(a.hits[i].beta, b.hits[i].beta);
    EXPECT_EQ(a.hits[i].report.equation, b.hits[i].report.equation);
  }
  EXPECT_EQ(to_json(a.hits.front().report).dump(), to_json(b.hits.front().report).dump());
}

TEST(Implicit, ReportJson) {
  const auto t = weight12_ab_triple(2, -1, -1, 3);
  const auto j = to_json(minimal_model(t[0], t[1], t[2], 3));
  EXPECT_EQ(j["schema_version"], kJsonSchemaVersion);
  EXPECT_EQ(j["found_degree"], 3);
  EXPECT_EQ(j["equation"]["degree"], 3);
}

TEST(ImplicitProperties, ScalingAndPermutation) {
  const auto r = props::model_invariances(1000);
  EXPECT_TRUE(r.ok()) << r.failures << " failures; " << r.first_failure;
}
