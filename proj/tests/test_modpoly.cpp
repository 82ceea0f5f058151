#include <gtest/gtest.h>

#include <fstream>
#include <sstream>

#include "x0n/arith.hpp"
#include "x0n/forms.hpp"
#include "x0n/implicit.hpp"
#include "x0n/modpoly.hpp"

using namespace x0n;

namespace {

std::string read_file(const std::string& path) {
  std::ifstream f(path);
  std::stringstream ss;
  ss << f.rdbuf();
  return ss.str();
}

// P(j, j(N.)) by summing every term c j^r j(N.)^s directly.
LaurentSeries substitute(const BivarPoly& p, std::int64_t n, std::int64_t prec) {
  const int d = std::max(p.deg_x(), p.deg_y());
  const std::int64_t extra = d + n * d + 2;
  const auto j = j_invariant(prec + extra).series;
  const auto jn = dilate(j_invariant(prec + extra).series, n);
  LaurentSeries acc = LaurentSeries::zero(prec);
  for (const auto& [e, c] : p.terms()) {
    acc += scale(pow(j, static_cast<unsigned>(e.first)) * pow(jn, static_cast<unsigned>(e.second)), mpq_class(c));
  }
  return acc.truncated(prec);
}

}  // namespace

TEST(BivarPoly, TextRoundTrip) {
  const auto p = BivarPoly::from_text("1 0 5\n0 1 -2\n");
  EXPECT_EQ(p.coeff(1, 0), 5);
  EXPECT_EQ(BivarPoly::from_text(p.to_text()), p);
  EXPECT_THROW(BivarPoly::from_text("1 x\n"), std::invalid_argument);
}

TEST(BivarPoly, Degrees) {
  const auto xy = BivarPoly::from_text("1 1 1\n");
  EXPECT_EQ(total_degree(xy), 2);
  EXPECT_EQ(diagonal_degree(xy), 2);
  const auto c = BivarPoly::from_text("0 0 7\n");
  EXPECT_EQ(total_degree(c), 0);
  EXPECT_EQ(diagonal_degree(c), 0);
  EXPECT_THROW(diagonal_degree(BivarPoly::from_text("1 0 1\n0 1 -1\n")), std::domain_error);
  EXPECT_THROW(total_degree(BivarPoly()), std::invalid_argument);
}

TEST(BivarPoly, Homogenize) {
  const auto h = homogenize(BivarPoly::from_text("1 0 1\n0 1 1\n"));
  EXPECT_EQ(h.degree(), 1);
  EXPECT_EQ(h.coeff({0, 1, 0}), 1);
  EXPECT_EQ(h.coeff({0, 0, 1}), 1);
  EXPECT_EQ(h.terms().size(), 2u);
  const auto c = homogenize(BivarPoly::from_text("0 0 -7\n"));
  EXPECT_EQ(c.degree(), 0);
  EXPECT_EQ(c.coeff({0, 0, 0}), 1);
}

TEST(Phi, LevelTwoGolden) {
  const auto r = compute_phi(2);
  EXPECT_EQ(r.poly.to_text(), read_file(std::string(X0N_GOLDEN_DIR) + "/phi_2.txt"));
  EXPECT_EQ(r.poly.coeff(2, 2), -1);
  EXPECT_EQ(r.poly.coeff(3, 0), 1);
  EXPECT_EQ(r.poly.coeff(0, 0), mpz_class("-157464000000000"));
  EXPECT_EQ(total_degree(r.poly), 4);
  EXPECT_EQ(diagonal_degree(r.poly), 4);
  EXPECT_TRUE(substitute(r.poly, 2, 60).is_zero());
}

TEST(Phi, LevelThree) {
  const auto p = phi(3);
  EXPECT_EQ(p.deg_x(), 4);
  EXPECT_EQ(p.deg_y(), 4);
  EXPECT_TRUE(p.is_symmetric());
  EXPECT_EQ(p.coeff(4, 0), 1);
  EXPECT_EQ(total_degree(p), 6);
  EXPECT_EQ(diagonal_degree(p), 6);
  EXPECT_TRUE(substitute(p, 3, 50).is_zero());
}

TEST(Phi, DegreeFormulasOnActualPolynomials) {
  for (std::int64_t n = 2; n <= 6; ++n) {
    const auto r = compute_phi(n);
    const auto& p = r.poly;
    const auto psi = arith::psi(n);
    EXPECT_EQ(p.deg_x(), psi) << n;
    EXPECT_EQ(p.deg_y(), psi) << n;
    EXPECT_TRUE(p.is_symmetric()) << n;
    EXPECT_EQ(p.coeff(static_cast<int>(psi), 0), 1) << n;
    EXPECT_EQ(total_degree(p), arith::total_degree_formula(n)) << n;
    EXPECT_EQ(diagonal_degree(p), arith::diag_degree(n)) << n;
    EXPECT_GE(r.residual_prec, 2 * psi * psi + 1) << n;
  }
}

TEST(Phi, KroneckerCongruence) {
  for (std::int64_t p : {2, 3, 5, 7}) EXPECT_TRUE(kronecker_congruence_holds(phi(p), p)) << p;
  EXPECT_FALSE(kronecker_congruence_holds(phi(2), 3));
}

TEST(Phi, RangeChecks) {
  EXPECT_THROW(compute_phi(1), std::invalid_argument);
  EXPECT_THROW(compute_phi(8), std::invalid_argument);
}

TEST(Phi, MatchesWeight24Model) {
  for (std::int64_t n : {2, 3}) {
    const int d = static_cast<int>(arith::total_degree_formula(n));
    const auto t = weight24_j_triple(n, d);
    const auto model = minimal_model(t[0], t[1], t[2], d);
    EXPECT_EQ(homogenize(phi(n)), model.equation) << n;
  }
}

TEST(Phi, SummaryJson) {
  const auto p = phi(2);
  const auto j = phi_summary_json(p, 2);
  EXPECT_EQ(j["N"], 2);
  EXPECT_EQ(j["psi"], 3);
  EXPECT_EQ(j["total_degree"], 4);
  EXPECT_EQ(j["diag_degree"], 4);
  EXPECT_EQ(j["sha256"], sha256_hex(p.to_text()));
  EXPECT_EQ(sha256_hex("abc"), "ba7816bf8f01cfea414140de5dae2223b00361a396177a9cb410ff61f20015ad");
}
