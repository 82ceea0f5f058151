// Acceptance runner: one PASS/FAIL line per criterion, exit status 1 if
// any criterion fails.

#include <chrono>
#include <cstdio>
#include <functional>
#include <iostream>
#include <sstream>
#include <string>
#include <vector>

#include "support/properties.hpp"
#include "x0n/arith.hpp"
#include "x0n/forms.hpp"
#include "x0n/implicit.hpp"
#include "x0n/modpoly.hpp"

using namespace x0n;

namespace {

struct Verdict {
  bool pass = true;
  std::string detail;

  void require(bool cond, const std::string& what) {
    if (cond) return;
    if (pass) detail = what;
    pass = false;
  }
};

bool series_starts_with(const LaurentSeries& s, std::int64_t start, const std::vector<long>& expect) {
  for (std::size_t i = 0; i < expect.size(); ++i) {
    if (s.coeff(start + static_cast<std::int64_t>(i)) != expect[i]) return false;
  }
  return true;
}

std::string coeffs_of(const LaurentSeries& s, std::int64_t from, std::int64_t to) {
  std::ostringstream os;
  for (auto e = from; e < to; ++e) os << (e == from ? "" : ", ") << s.coeff(e).get_str();
  return os.str();
}

Verdict qexpansion_fidelity() {
  Verdict v;
  const auto d = delta(4).series;
  v.require(d.valuation() == 1 && series_starts_with(d, 1, {1, -24, 252}),
            "Delta begins " + coeffs_of(d, 1, 4));
  const auto e = e4_cubed(4).series;
  v.require(series_starts_with(e, 0, {1, 720, 172800, 13824000}),
            "E4^3 begins " + coeffs_of(e, 0, 4) + ", expected 1, 720, 172800, 13824000");
  return v;
}

Verdict level_eleven_values() {
  Verdict v;
  const auto s4 = arith::dim_spaces(11, 4).cusp_forms;
  const auto s6 = arith::dim_spaces(11, 6).cusp_forms;
  const auto g = arith::genus(11);
  v.require(s4 == 2, "dim S_4(11) = " + std::to_string(s4));
  v.require(s6 == 4, "dim S_6(11) = " + std::to_string(s6));
  v.require(g == 1, "genus(11) = " + std::to_string(g));
  v.require(arith::nu_inf(11) == 2, "nu_inf(11) wrong");
  v.require(arith::psi(11) == 12, "psi(11) wrong");
  v.require(s6 + g - 1 == 4, "dim S_6 + g - 1 != 4");
  return v;
}

Verdict degree_formulas_agree() {
  Verdict v;
  for (std::int64_t n = 2; n <= 10000; ++n) {
    v.require(arith::total_degree_formula(n) == arith::diag_degree(n), "mismatch at N=" + std::to_string(n));
  }
  return v;
}

Verdict psi_identity() {
  Verdict v;
  for (std::int64_t n = 2; n <= 10000; ++n) {
    v.require(arith::psi_identity_check(n), "fails at N=" + std::to_string(n));
  }
  return v;
}

Verdict modular_polynomials() {
  Verdict v;
  for (std::int64_t n = 2; n <= 6; ++n) {
    const std::string at = " at N=" + std::to_string(n);
    const auto r = compute_phi(n);
    const auto& p = r.poly;
    const auto psi = arith::psi(n);
    v.require(p.deg_x() == psi && p.deg_y() == psi, "per-variable degree" + at);
    v.require(p.is_symmetric(), "symmetry" + at);
    v.require(p.coeff(static_cast<int>(psi), 0) == 1, "monicity" + at);
    const int t = total_degree(p);
    v.require(t == diagonal_degree(p), "total != diagonal" + at);
    v.require(t == arith::total_degree_formula(n) && t == arith::diag_degree(n), "closed forms" + at);
    v.require(evaluate_on_j(p, n, r.residual_prec).is_zero(), "residual" + at);
  }
  return v;
}

Verdict kronecker() {
  Verdict v;
  for (std::int64_t p : {2, 3, 5}) {
    v.require(kronecker_congruence_holds(phi(p), p), "fails at N=" + std::to_string(p));
  }
  return v;
}

Verdict ab_models() {
  Verdict v;
  for (std::int64_t n = 2; n <= 8; ++n) {
    const std::string at = " at N=" + std::to_string(n);
    const auto res = search_ab(n, 5, {1, 1, {}});
    v.require(!res.hits.empty(), "no pair found" + at);
    if (res.hits.empty()) continue;
    const auto& h = res.hits.front();
    const auto& r = h.report;
    v.require(r.found_degree == arith::psi(n), "degree" + at);
    v.require(r.kernel_dim == 1, "kernel dimension" + at);
    v.require(r.integral && r.equation.is_normalized(), "equation not integral and primitive" + at);
    const int d = static_cast<int>(arith::psi(n));
    const auto t = weight12_ab_triple(n, h.alpha, h.beta, d);
    v.require(r.equation.evaluate(t[0].series, t[1].series, t[2].series).is_zero(), "residual" + at);
  }
  return v;
}

Verdict cross_module() {
  Verdict v;
  for (std::int64_t n : {2, 3}) {
    const int d = static_cast<int>(arith::total_degree_formula(n));
    const auto t = weight24_j_triple(n, d);
    const auto model = minimal_model(t[0], t[1], t[2], d);
    v.require(homogenize(phi(n)) == model.equation, "mismatch at N=" + std::to_string(n));
  }
  return v;
}

Verdict divisor_suite() {
  Verdict v;
  for (std::int64_t n = 2; n <= 500; ++n) {
    const std::string at = " at N=" + std::to_string(n);
    const auto psi = arith::psi(n);
    v.require(divisor_delta(n).degree() == psi, "deg div(Delta)" + at);
    v.require(divisor_delta_dilated(n).degree() == psi, "deg div(Delta(N.))" + at);
    v.require(static_cast<std::int64_t>(cusps(n).size()) == arith::nu_inf(n), "cusp count" + at);
    const auto min_sum = min_sum_weight24_triple(n);
    v.require(min_sum_weight24_from_divisors(n) == min_sum, "min-sum routes disagree" + at);
    v.require(arith::dim_spaces(n, 24).cusp_forms + arith::genus(n) - 1 - min_sum == arith::total_degree_formula(n),
              "min-sum identity" + at);
  }
  return v;
}

Verdict property_suites() {
  Verdict v;
  constexpr std::size_t kCases = 1000;
  const std::pair<const char*, props::Outcome (*)(std::size_t)> suites[] = {
      {"series ring axioms", props::series_ring_axioms},
      {"dilate morphism", props::dilate_morphism},
      {"kernel exactness", props::kernel_exactness},
      {"kernel vs rational elimination", props::kernel_matches_oracle},
      {"model scaling/permutation", props::model_invariances},
  };
  for (const auto& [name, suite] : suites) {
    const auto r = suite(kCases);
    v.require(r.ok() && r.cases >= kCases, std::string(name) + ": " + std::to_string(r.failures) + "/" +
                                               std::to_string(r.cases) + " failed; " + r.first_failure);
  }
  return v;
}

}  // namespace

int main() {
  const std::vector<std::pair<const char*, std::function<Verdict()>>> criteria = {
      {"q-expansion fidelity", qexpansion_fidelity},
      {"level 11 dimension and genus values", level_eleven_values},
      {"total degree formula = diagonal degree, 2..10^4", degree_formulas_agree},
      {"psi identity, 2..10^4", psi_identity},
      {"modular polynomials N=2..6", modular_polynomials},
      {"Kronecker congruence N=2,3,5", kronecker},
      {"alpha/beta models of degree psi(N), N=2..8", ab_models},
      {"homogenized Phi_N = weight-24 model, N=2,3", cross_module},
      {"divisor suite, 2..500", divisor_suite},
      {"property suites", property_suites},
  };
  int failed = 0;
  for (std::size_t i = 0; i < criteria.size(); ++i) {
    const auto& [name, check] = criteria[i];
    const auto t0 = std::chrono::steady_clock::now();
    Verdict v;
    try {
      v = check();
    } catch (const std::exception& e) {
      v.pass = false;
      v.detail = std::string("exception: ") + e.what();
    }
    const double secs = std::chrono::duration<double>(std::chrono::steady_clock::now() - t0).count();
    char timing[32];
    std::snprintf(timing, sizeof timing, "%.2fs", secs);
    std::cout << (v.pass ? "PASS" : "FAIL") << " criterion " << i + 1 << ": " << name << " (" << timing << ")";
    if (!v.pass) std::cout << " -- " << v.detail;
    std::cout << std::endl;
    failed += !v.pass;
  }
  std::cout << (criteria.size() - static_cast<std::size_t>(failed)) << "/" << criteria.size() << " criteria passed\n";
  return failed == 0 ? 0 : 1;
}
