#pragma once

// Concrete modular forms for Gamma_0(N) as q-expansions, the cusps of
// Gamma_0(N), and the divisors of Delta, Delta(N.), E4^3 and E4^3(N.).

#include <gmpxx.h>

#include <cstdint>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "x0n/qseries.hpp"

namespace x0n {

struct ModularForm {
  LaurentSeries series;
  int weight = 0;
  std::int64_t level = 1;
  std::string label;
};

/// f*g: weights add, level is the lcm, labels are joined.
ModularForm product(const ModularForm& f, const ModularForm& g);

/// f(N z): level multiplied by N.
ModularForm dilate(const ModularForm& f, std::int64_t factor);

/// a f + b g for forms of equal weight; the level is the lcm.
ModularForm linear_combination(const mpq_class& a, const ModularForm& f, const mpq_class& b,
                               const ModularForm& g, std::string label = {});

ModularForm scale(const ModularForm& f, const mpq_class& c);

/// sigma_k(n) for 1 <= n < limit (entry 0 is 0).
std::vector<mpz_class> divisor_sigma_table(int k, std::int64_t limit);

/// E4 = 1 + 240 sum sigma_3(n) q^n, to O(q^prec).
ModularForm eisenstein_e4(std::int64_t prec);

/// E6 = 1 - 504 sum sigma_5(n) q^n, to O(q^prec).
ModularForm eisenstein_e6(std::int64_t prec);

/// E4^3 to O(q^prec).
ModularForm e4_cubed(std::int64_t prec);

/// Delta = (E4^3 - E6^2)/1728 to O(q^prec). Requires prec >= 2.
ModularForm delta(std::int64_t prec);

/// j = E4^3 / Delta = q^-1 + 744 + ... to O(q^prec).
ModularForm j_invariant(std::int64_t prec);

/// A cusp p/q of Gamma_0(N) with k = gcd(q, N) and width N/(k gcd(k, N/k)).
/// `class_size` is phi(gcd(k, N/k)), the number of cusps sharing k.
struct CuspRep {
  std::int64_t p = 0;
  std::int64_t q = 1;
  std::int64_t k = 1;
  std::int64_t width = 1;
  std::int64_t class_size = 1;

  std::string label() const { return std::to_string(p) + "/" + std::to_string(q); }
};

/// One representative per Gamma_0(N)-orbit of cusps, ordered by (k, p).
/// The class k = N is the orbit of infinity and is represented by 1/N.
std::vector<CuspRep> cusps(std::int64_t n);

/// A finitely supported Q-divisor on X_0(N). Points are identified by label.
/// A term may be an aggregate: a named set of points whose individual
/// multiplicities are not resolved, only their total.
class DivisorQ {
 public:
  struct Term {
    std::string label;
    mpq_class value;
    bool aggregate = false;
  };

  void add(const std::string& label, const mpq_class& value, bool aggregate = false);

  const std::vector<Term>& terms() const { return terms_; }
  mpq_class degree() const;
  /// Value at a point label; 0 when absent.
  mpq_class at(const std::string& label) const;
  bool contains(const std::string& label) const;
  bool is_integral() const;
  bool is_effective() const;

  /// Labels with nonzero value.
  std::vector<std::string> support() const;

  friend DivisorQ operator+(const DivisorQ& a, const DivisorQ& b);
  friend DivisorQ operator-(const DivisorQ& a, const DivisorQ& b);

 private:
  std::vector<Term> terms_;
};

/// div(Delta) on X_0(N): (N/k)/(k,N/k) at every cusp of class k.
DivisorQ divisor_delta(std::int64_t n);

/// div(Delta(N.)): k/(k,N/k) at every cusp of class k.
DivisorQ divisor_delta_dilated(std::int64_t n);

/// div(E4^3) on X_0(N): supported on the Gamma_0(N)-orbits inside the
/// SL2(Z)-orbit of rho = (1+sqrt(-3))/2, total degree psi(N). Stored as one
/// aggregate term; the individual multiplicities are not resolved.
DivisorQ divisor_e4_cubed(std::int64_t n);

/// div(E4^3(N.)): aggregate over the points (1/N) gamma.rho, degree psi(N).
DivisorQ divisor_e4_cubed_dilated(std::int64_t n);

inline const std::string kRhoOrbitLabel = "SL2Z.rho";
inline const std::string kRhoOrbitDilatedLabel = "(1/N)SL2Z.rho";

/// Fractional part of (m/2)(1 - 1/e): the correction carried by an elliptic
/// point of order e in div(f) for f of weight m.
mpq_class elliptic_correction(int weight, int order);

/// c'_f = div(f) minus the elliptic corrections. The families handled here
/// have weight divisible by 12, where every correction vanishes; any other
/// weight, or a nonzero correction, throws std::domain_error.
DivisorQ c_prime(const DivisorQ& div, int weight);

/// c_f = c'_f minus every cusp of X_0(N) with multiplicity one.
DivisorQ c_divisor(const DivisorQ& div, int weight, std::int64_t n);

/// sum over points of min(c_{Delta(N.)Delta}, c_{E4^3 Delta(N.)}, c_{E4^3(N.) Delta})
/// from the closed form sum_{k|N} phi((k,N/k)) min(k,N/k)/(k,N/k) - nu_inf(N).
std::int64_t min_sum_weight24_triple(std::int64_t n);

/// The same minimum sum computed pointwise from the three c-divisors.
mpq_class min_sum_weight24_from_divisors(std::int64_t n);

/// {"N", "cusps": [{p, q, k, width, count_class}], "divisor": [{label, num, den}]}
nlohmann::json cusp_table_json(std::int64_t n, const DivisorQ& div);

nlohmann::json to_json(const DivisorQ& d);

}  // namespace x0n
