#pragma once

// Plane models of X_0(N): the minimal-degree homogeneous P with
// P(f, g, h) = 0 for modular forms f, g, h of a common weight, found by
// exact linear algebra on q-expansion coefficients.
//
// With prec > d*m*psi(N)/12 coefficients, vanishing to precision is the
// same as vanishing identically: a nonzero form of weight d*m on Gamma_0(N)
// cannot vanish at infinity to higher order than the degree of its divisor.

#include <gmpxx.h>

#include <array>
#include <cstdint>
#include <functional>
#include <map>
#include <optional>
#include <string>
#include <vector>

#include <json.hpp>

#include "x0n/forms.hpp"
#include "x0n/qseries.hpp"

namespace x0n {

inline constexpr int kJsonSchemaVersion = 1;

/// Homogeneous polynomial in x0, x1, x2 with integer coefficients.
/// Terms are ordered lexicographically descending by exponent triple.
class HomogPoly3 {
 public:
  using Exponents = std::array<int, 3>;
  using Terms = std::map<Exponents, mpz_class, std::greater<Exponents>>;

  HomogPoly3() = default;
  /// Throws std::invalid_argument if a term has the wrong total degree.
  HomogPoly3(int degree, Terms terms);

  int degree() const { return degree_; }
  const Terms& terms() const { return terms_; }
  mpz_class coeff(const Exponents& e) const;
  bool is_zero() const { return terms_.empty(); }

  /// Content 1 and leading (lex-greatest) coefficient positive.
  void normalize();
  bool is_normalized() const;

  /// Variable i of the result is variable perm[i] of this polynomial, so
  /// that P'(f_perm0, f_perm1, f_perm2) = P(f0, f1, f2).
  HomogPoly3 permuted(const std::array<int, 3>& perm) const;

  /// P(f, g, h) as a series.
  LaurentSeries evaluate(const LaurentSeries& f, const LaurentSeries& g, const LaurentSeries& h) const;

  /// One line per term, "i j k coefficient", lex-descending by (i, j, k).
  std::string to_text() const;

  friend bool operator==(const HomogPoly3& a, const HomogPoly3& b) {
    return a.degree_ == b.degree_ && a.terms_ == b.terms_;
  }

 private:
  int degree_ = 0;
  Terms terms_;
};

/// Exponent triples of degree d in the column order used for implicitization.
std::vector<HomogPoly3::Exponents> monomials_of_degree(int d);

/// (d+1)(d+2)/2 + ceil(d*m*psi(N)/12) + 16.
std::int64_t required_precision(std::int64_t level, int weight, int degree);

inline constexpr std::int64_t kPrecisionMargin = 16;

/// All degree-d P with P(f, g, h) = O(q^prec), as a primitive basis.
/// The forms must share their weight; the level used for the precision
/// policy is the lcm of their levels.
std::vector<HomogPoly3> vanishing_space(const ModularForm& f, const ModularForm& g,
                                        const ModularForm& h, int degree, std::int64_t prec);

enum class ModelFamily {
  weight12_ab,  // (Delta, E4^3, a Delta(N.) + b E4^3(N.))
  weight24_j,   // (Delta Delta(N.), E4^3 Delta(N.), E4^3(N.) Delta)
};

/// psi(N) for weight12_ab, the closed-form degree of Phi_N for weight24_j.
std::int64_t degree_prediction_family(std::int64_t level, ModelFamily family);

struct ModelReport {
  std::int64_t level = 0;
  int weight = 0;
  std::array<std::string, 3> labels;
  int found_degree = 0;
  std::int64_t predicted_degree = 0;
  std::size_t kernel_dim = 0;
  HomogPoly3 equation;
  std::int64_t residual_prec = 0;
  bool integral = false;
  /// The space at found_degree - 1 was checked and is empty.
  bool minimality_certified = false;
  /// kernel_dim > 1 at the first nontrivial degree.
  bool anomalous = false;
};

struct ModelOptions {
  std::optional<ModelFamily> family;
  /// Skip degrees whose system has full column rank mod a word prime.
  bool modular_screen = true;
};

/// Scans d = 1..d_max and stops at the first degree with a relation.
/// Throws std::invalid_argument if f, g, h are linearly dependent or their
/// series are too short for d_max, and std::runtime_error if no relation
/// exists up to d_max.
ModelReport minimal_model(const ModularForm& f, const ModularForm& g, const ModularForm& h,
                          int d_max, const ModelOptions& opts = {});

/// (Delta, E4^3, alpha Delta(N.) + beta E4^3(N.)) with enough precision for
/// models up to degree d_max.
std::array<ModularForm, 3> weight12_ab_triple(std::int64_t level, long alpha, long beta, int d_max);

/// (Delta Delta(N.), E4^3 Delta(N.), E4^3(N.) Delta) for models up to d_max.
std::array<ModularForm, 3> weight24_j_triple(std::int64_t level, int d_max);

struct SearchHit {
  long alpha;
  long beta;
  ModelReport report;
};

struct SearchRejection {
  long alpha;
  long beta;
  std::string reason;
};

struct SearchResult {
  std::vector<SearchHit> hits;
  std::vector<SearchRejection> rejected;
};

struct SearchOptions {
  /// Stop once this many hits are collected (0 = scan everything).
  std::size_t max_hits = 0;
  unsigned jobs = 1;
  std::function<void(long alpha, long beta, const std::string& status)> progress;
};

/// Candidate pairs in scan order: by max(|a|, |b|), then a, then b,
/// excluding (0, 0).
std::vector<std::pair<long, long>> ab_candidates(long bound);

/// Minimal models of (Delta, E4^3, a Delta(N.) + b E4^3(N.)) over
/// (a, b) in [-bound, bound]^2; a pair is a hit when its model has degree
/// psi(N) with a one-dimensional kernel.
SearchResult search_ab(std::int64_t level, long bound, const SearchOptions& opts = {});

nlohmann::json to_json(const HomogPoly3& p);
nlohmann::json to_json(const ModelReport& r);

}  // namespace x0n
