#include <gtest/gtest.h>

#include "support/properties.hpp"
#include "x0n/errors.hpp"
#include "x0n/forms.hpp"
#include "x0n/qseries.hpp"

using namespace x0n;

namespace {

LaurentSeries ints(std::int64_t start, std::vector<long> c, std::int64_t prec) {
  return LaurentSeries::from_integers(start, c, prec);
}

}  // namespace

TEST(Series, ZeroAndValuation) {
  const auto z = LaurentSeries::zero(5);
  EXPECT_TRUE(z.is_zero());
  EXPECT_EQ(z.valuation(), 5);
  EXPECT_EQ(z.precision(), 5);
  const auto s = ints(0, {0, 0, 3, 4}, 4);
  EXPECT_EQ(s.valuation(), 2);
  EXPECT_EQ(s.coeff(2), 3);
  EXPECT_EQ(s.coeff(-7), 0);
  EXPECT_THROW(s.coeff(4), PrecisionError);
}

TEST(Series, AdditionExamples) {
  const auto a = ints(1, {1, -24}, 3);
  const auto b = ints(2, {24}, 3);
  const auto sum = a + b;
  EXPECT_EQ(sum, ints(1, {1}, 3));
  EXPECT_EQ(sum.valuation(), 1);

  const auto x = ints(-1, {0, 1}, 5);
  EXPECT_EQ(LaurentSeries::zero(5) + x, x);
  EXPECT_EQ(ints(0, {1}, 5) + ints(-1, {1}, 5), ints(-1, {1, 1}, 5));

  const auto cancel = ints(0, {1, 2}, 2) - ints(0, {1, 2}, 2);
  EXPECT_TRUE(cancel.is_zero());
  EXPECT_EQ(cancel.precision(), 2);
}

TEST(Series, MultiplicationExamples) {
  const auto d = ints(1, {1, -24, 252}, 4);
  EXPECT_EQ(d * ints(0, {1}, 4), d);
  const auto p = ints(1, {1}, 4) * ints(-1, {1}, 2);
  EXPECT_EQ(p, ints(0, {1}, 3));

  // E4 = 1 + 240q + 2160q^2 + 6720q^3; the q^2 term of the cube is
  // 3*2160 + 3*240^2 and the q^3 term 3*6720 + 6*240*2160 + 240^3.
  const auto e4 = eisenstein_e4(4).series;
  EXPECT_EQ(e4, ints(0, {1, 240, 2160, 6720}, 4));
  EXPECT_EQ(e4 * e4 * e4, ints(0, {1, 720, 179280, 16954560}, 4));
}

TEST(Series, DivisionExamples) {
  const auto a = ints(0, {2, 3, 5}, 6);
  const auto one = a / a;
  EXPECT_EQ(one.coeff(0), 1);
  EXPECT_EQ(one.valuation(), 0);
  EXPECT_EQ(ints(2, {1}, 9) / ints(1, {1}, 9), ints(1, {1}, 8));
  EXPECT_THROW(a / LaurentSeries::zero(3), std::domain_error);

  // Long division by hand: 744 = 720 + 24, 196884 = 179280 + 24*744 - 252.
  const auto j = ints(0, {1, 720, 179280}, 3) / ints(1, {1, -24, 252}, 4);
  EXPECT_EQ(j, ints(-1, {1, 744, 196884}, 2));
}

TEST(Series, Dilate) {
  const auto d = ints(1, {1, -24, 252}, 4);
  const auto d2 = dilate(d, 2);
  EXPECT_EQ(d2.coeff(2), 1);
  EXPECT_EQ(d2.coeff(3), 0);
  EXPECT_EQ(d2.coeff(4), -24);
  EXPECT_EQ(d2.coeff(6), 252);
  EXPECT_EQ(d2.precision(), 7);
  EXPECT_EQ(dilate(d, 1), d);
  EXPECT_EQ(dilate(ints(0, {1, 720}, 2), 3), ints(0, {1, 0, 0, 720}, 4));
  EXPECT_THROW(dilate(d, 0), std::invalid_argument);
}

TEST(Series, Powers) {
  const auto a = ints(0, {1, 1}, 5);
  EXPECT_EQ(pow(a, 0), ints(0, {1}, 5));
  EXPECT_EQ(pow(a, 1), a);
  EXPECT_EQ(pow(a, 2), ints(0, {1, 2, 1}, 5));
}

TEST(Series, RationalCoefficientsAndText) {
  LaurentSeries s = LaurentSeries::from_coeffs(-1, {mpq_class(1, 2), 0, mpq_class(-3)}, 3);
  EXPECT_FALSE(s.is_integral());
  EXPECT_EQ(s.to_string(), "1/2*q^-1 - 3*q + O(q^3)");
  s *= 2;
  EXPECT_TRUE(s.is_integral());
  EXPECT_EQ(LaurentSeries::zero(4).to_string(), "O(q^4)");
}

TEST(Series, JsonRoundTrip) {
  const auto s = LaurentSeries::from_coeffs(-2, {mpq_class(7, 3), 0, 5}, 4);
  const auto j = to_json(s);
  EXPECT_EQ(j["val"], -2);
  EXPECT_EQ(j["prec"], 4);
  EXPECT_EQ(j["coeffs"][0], "7/3");
  EXPECT_EQ(series_from_json(j), s);
  EXPECT_EQ(series_from_json(to_json(LaurentSeries::zero(3))), LaurentSeries::zero(3));
}

TEST(Series, TruncationAndAgreement) {
  const auto s = ints(0, {1, 2, 3, 4}, 4);
  EXPECT_EQ(s.truncated(2), ints(0, {1, 2}, 2));
  EXPECT_TRUE(agree_to_precision(s, s.truncated(2)));
  EXPECT_FALSE(agree_to_precision(s, ints(0, {1, 3}, 2)));
  EXPECT_THROW(s.truncated(5), PrecisionError);
}

TEST(SeriesProperties, RingAxioms) {
  const auto r = props::series_ring_axioms(1000);
  EXPECT_TRUE(r.ok()) << r.failures << " failures; " << r.first_failure;
}

TEST(SeriesProperties, DilateIsAMorphism) {
  const auto r = props::dilate_morphism(1000);
  EXPECT_TRUE(r.ok()) << r.failures << " failures; " << r.first_failure;
}
