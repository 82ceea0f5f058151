#pragma once

// The classical modular polynomial Phi_N(x, y), the minimal polynomial of
// j(Nz) over C(j), computed from the q-expansions of j(z) and j(Nz) by
// exact linear algebra.

#include <gmpxx.h>

#include <cstdint>
#include <map>
#include <string>
#include <utility>

#include <json.hpp>

#include "x0n/implicit.hpp"

namespace x0n {

class BivarPoly {
 public:
  using Exponents = std::pair<int, int>;
  using Terms = std::map<Exponents, mpz_class, std::greater<Exponents>>;

  BivarPoly() = default;
  explicit BivarPoly(Terms terms);

  const Terms& terms() const { return terms_; }
  mpz_class coeff(int r, int s) const;
  bool is_zero() const { return terms_.empty(); }
  int deg_x() const;
  int deg_y() const;
  bool is_symmetric() const;

  /// One line per term, "r s coefficient", sorted by (r, s) descending.
  std::string to_text() const;
  static BivarPoly from_text(const std::string& text);

  friend bool operator==(const BivarPoly& a, const BivarPoly& b) { return a.terms_ == b.terms_; }

 private:
  Terms terms_;
};

struct PhiOptions {
  /// Largest level computed without an explicit override.
  std::int64_t n_max = 7;
  /// Exponent up to which Phi_N(j, j(N.)) is re-checked after solving.
  /// Defaults to 2 psi(N)^2, beyond which vanishing forces Phi_N(j, j(N.)) = 0.
  std::optional<std::int64_t> residual_exponent;
};

struct PhiResult {
  BivarPoly poly;
  std::int64_t window_start = 0;   // lowest exponent in the linear system
  std::int64_t window_length = 0;  // number of equations
  std::size_t unknowns = 0;
  std::int64_t residual_prec = 0;  // Phi_N(j, j(N.)) = O(q^residual_prec)
};

/// Phi_N for 2 <= N <= opts.n_max. Throws std::invalid_argument outside
/// that range and InternalError if the kernel is not one-dimensional, the
/// normalized coefficients are not integral, or the residual check fails.
PhiResult compute_phi(std::int64_t n, const PhiOptions& opts = {});

inline BivarPoly phi(std::int64_t n, const PhiOptions& opts = {}) { return compute_phi(n, opts).poly; }

/// Phi(j, j(N.)) as a series to O(q^prec).
LaurentSeries evaluate_on_j(const BivarPoly& p, std::int64_t n, std::int64_t prec);

/// Max of r + s over nonzero terms. Throws std::invalid_argument on zero.
int total_degree(const BivarPoly& p);

/// Degree of P(x, x). Throws std::domain_error if P(x, x) vanishes.
int diagonal_degree(const BivarPoly& p);

/// x0^D P(x1/x0, x2/x0) with D = total_degree(P), normalized.
HomogPoly3 homogenize(const BivarPoly& p);

/// Phi_p = (x^p - y)(x - y^p) mod p, coefficientwise.
bool kronecker_congruence_holds(const BivarPoly& p, std::int64_t prime);

/// {schema_version, N, psi, total_degree, diag_degree, sha256} where sha256
/// is the hex digest of to_text().
nlohmann::json phi_summary_json(const BivarPoly& p, std::int64_t n);

std::string sha256_hex(const std::string& data);

}  // namespace x0n
